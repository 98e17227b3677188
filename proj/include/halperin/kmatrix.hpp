#pragma once

// Bilayer K-matrix domain types and the filling-fraction map
//
//   nu = (n t1^2 + m t2^2 - 2 l t1 t2) / (m n - l^2)
//
// for K = [[m, l], [l, n]] and charge vector t = (t1, t2).

#include "halperin/integer.hpp"
#include "halperin/ntheory.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace halperin {

/// Positive rational p/q, always stored in lowest terms.
class Filling {
 public:
  Filling(Int p, Int q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_ < 1 || q_ < 1)
      throw std::invalid_argument("filling fraction must be positive: " + p_.str() + "/" + q_.str());
    const Int g = ntheory::gcd(p_, q_);
    p_ /= g;
    q_ /= g;
  }
  explicit Filling(Int p) : Filling(std::move(p), Int(1)) {}

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  bool is_integer() const { return q_ == 1; }

  std::string str() const { return p_.str() + "/" + q_.str(); }

  friend bool operator==(const Filling& a, const Filling& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Filling& a, const Filling& b) {
    const Int lhs = a.p_ * b.q_;
    const Int rhs = b.p_ * a.q_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Int p_;
  Int q_;
};

/// Integer charge vector with nonnegative entries, not both zero.
class ChargeVector {
 public:
  ChargeVector(Int t1, Int t2) : t1_(std::move(t1)), t2_(std::move(t2)) {
    if (t1_ < 0 || t2_ < 0) throw std::invalid_argument("charge vector entries must be nonnegative");
    if (t1_ == 0 && t2_ == 0) throw std::invalid_argument("charge vector must not be (0, 0)");
  }

  const Int& t1() const { return t1_; }
  const Int& t2() const { return t2_; }
  ChargeVector swapped() const { return ChargeVector(t2_, t1_); }

  std::string str() const { return "(" + t1_.str() + ", " + t2_.str() + ")"; }

  friend bool operator==(const ChargeVector&, const ChargeVector&) = default;

 private:
  Int t1_;
  Int t2_;
};

/// Symmetric integer matrix [[m, l], [l, n]]. Any integers may be stored;
/// use is_valid_state() to check the physical constraints.
struct KMatrix {
  Int m;
  Int n;
  Int l;

  KMatrix swapped() const { return {n, m, l}; }
  KMatrix scaled(const Int& c) const { return {c * m, c * n, c * l}; }

  std::string str() const { return "(" + m.str() + ", " + n.str() + ", " + l.str() + ")"; }

  friend bool operator==(const KMatrix&, const KMatrix&) = default;
  friend bool operator<(const KMatrix& a, const KMatrix& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.n != b.n) return a.n < b.n;
    return a.l < b.l;
  }
};

enum class ParityClass { kBosonic, kFermionic, kMixed };

inline const char* to_string(ParityClass c) {
  switch (c) {
    case ParityClass::kBosonic: return "bosonic";
    case ParityClass::kFermionic: return "fermionic";
    case ParityClass::kMixed: return "mixed";
  }
  return "?";
}

/// Which construction produced a solution.
enum class Family {
  kT10,               // t = (1,0): [[m, pm-q], [pm-q, p(pm-q)]]
  kT10Amplified,      // (m, a^2 n, a l)
  kT11Residue,        // t = (1,1), -q a square mod p
  kT11NonResidue,     // t = (1,1), base l0 with u = p l0 - q
  kNu1T11,            // nu = 1, (m-1)(n-1) = (l-1)^2
  kIntegerGeneral,    // integer nu >= 2, general t
  kUnityGeneral,      // nu = 1, general t
  kScaledToRational,  // integer solution scaled by q
  kBosonic,           // even-entry construction
  kEnumerated,        // found by search
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kT10: return "t10";
    case Family::kT10Amplified: return "t10_amplified";
    case Family::kT11Residue: return "t11_residue";
    case Family::kT11NonResidue: return "t11_nonresidue";
    case Family::kNu1T11: return "nu1_t11";
    case Family::kIntegerGeneral: return "integer_general";
    case Family::kUnityGeneral: return "unity_general";
    case Family::kScaledToRational: return "scaled_to_rational";
    case Family::kBosonic: return "bosonic";
    case Family::kEnumerated: return "enumerated";
  }
  return "?";
}

/// Intermediate values recorded by a construction. Only the fields the
/// producing family uses are set.
struct ConstructionTrace {
  Family family = Family::kEnumerated;
  std::optional<Int> k, s, x, rho, a, b, t, u, l0, h, alpha, beta;
  std::optional<Int> scale;  // common factor applied after the base family
  bool charge_swapped = false;

  /// (name, value) pairs of the populated symbols, in a fixed order.
  std::vector<std::pair<std::string, Int>> fields() const {
    std::vector<std::pair<std::string, Int>> out;
    auto add = [&](const char* name, const std::optional<Int>& v) {
      if (v) out.emplace_back(name, *v);
    };
    add("k", k);
    add("s", s);
    add("x", x);
    add("rho", rho);
    add("a", a);
    add("b", b);
    add("t", t);
    add("u", u);
    add("l0", l0);
    add("h", h);
    add("alpha", alpha);
    add("beta", beta);
    add("scale", scale);
    return out;
  }
};

struct Solution {
  KMatrix kmatrix;
  Int det;
  Filling nu;
  ChargeVector charge;
  std::optional<ConstructionTrace> trace;

  /// "(m, n, l, det)"
  std::string str() const {
    return "(" + kmatrix.m.str() + ", " + kmatrix.n.str() + ", " + kmatrix.l.str() + ", " +
           det.str() + ")";
  }
};

inline Int determinant(const KMatrix& k) { return k.m * k.n - k.l * k.l; }

inline bool is_valid_state(const KMatrix& k) {
  return k.m >= 1 && k.n >= 1 && k.l >= 0 && determinant(k) >= 1;
}

/// n t1^2 + m t2^2 - 2 l t1 t2
inline Int filling_numerator(const KMatrix& k, const ChargeVector& t) {
  return k.n * t.t1() * t.t1() + k.m * t.t2() * t.t2() - 2 * k.l * t.t1() * t.t2();
}

inline Filling filling_fraction(const KMatrix& k, const ChargeVector& t) {
  if (!is_valid_state(k)) throw std::invalid_argument("not a valid state: " + k.str());
  Int num = filling_numerator(k, t);
  if (num < 1)
    throw std::invalid_argument("nonpositive filling numerator for " + k.str() + " at t=" + t.str());
  return Filling(std::move(num), determinant(k));
}

/// p (mn - l^2) - q (n t1^2 + m t2^2 - 2 l t1 t2); zero iff (k, t) yields nu.
inline Int diophantine_residual(const KMatrix& k, const ChargeVector& t, const Filling& nu) {
  return nu.p() * determinant(k) - nu.q() * filling_numerator(k, t);
}

/// Classification by diagonal parity; l is ignored.
inline ParityClass parity_class(const KMatrix& k) {
  const bool m_odd = is_odd(k.m);
  const bool n_odd = is_odd(k.n);
  if (!m_odd && !n_odd) return ParityClass::kBosonic;
  if (m_odd && n_odd) return ParityClass::kFermionic;
  return ParityClass::kMixed;
}

inline bool verify_solution(const Solution& s) {
  return is_valid_state(s.kmatrix) && determinant(s.kmatrix) == s.det &&
         diophantine_residual(s.kmatrix, s.charge, s.nu) == 0;
}

/// Bundles k with its determinant after checking it produces nu at t.
/// Throws std::logic_error if the pair does not verify.
inline Solution make_solution(KMatrix k, const Filling& nu, const ChargeVector& t,
                              std::optional<ConstructionTrace> trace = std::nullopt) {
  Solution s{k, determinant(k), nu, t, std::move(trace)};
  if (!verify_solution(s))
    throw std::logic_error("construction failed to verify: " + s.str() + " for nu=" + nu.str() +
                           " t=" + t.str());
  return s;
}

}  // namespace halperin
