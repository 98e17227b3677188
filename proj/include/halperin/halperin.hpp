#pragma once

#include "halperin/integer.hpp"
#include "halperin/ntheory.hpp"
#include "halperin/kmatrix.hpp"
#include "halperin/constructors.hpp"
#include "halperin/enumerator.hpp"
