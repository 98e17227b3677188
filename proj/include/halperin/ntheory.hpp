#pragma once

// Exact integer number theory: gcd, integer square roots, quadratic residues,
// Legendre symbols, Pythagorean triples and small modular obstruction scans.

#include "halperin/integer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace halperin::ntheory {

inline Int gcd(const Int& a, const Int& b) {
  Int x = abs(a);
  Int y = abs(b);
  while (y != 0) {
    Int r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// floor(sqrt(n)).
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input " + n.str());
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  const Int r = isqrt(n);
  return r * r == n;
}

/// Trial division. Meant for desk-scale values only.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order. |n| is factored; n = 0 is rejected.
inline std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  std::vector<std::pair<Int, unsigned>> out;
  Int rest = abs(n);
  auto strip = [&](const Int& d) {
    unsigned e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  };
  strip(2);
  for (Int d = 3; d * d <= rest; d += 2) strip(d);
  if (rest > 1) out.emplace_back(rest, 1u);
  return out;
}

/// All positive divisors of |n| in increasing order.
inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{1};
  for (const auto& [prime, exp] : factorize(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All positive divisors of base^2 in increasing order, from the
/// factorization of base.
inline std::vector<Int> divisors_of_square(const Int& base) {
  std::vector<Int> out{1};
  for (const auto& [prime, exp] : factorize(base)) {
    const std::size_t count = out.size();
    Int pk = 1;
    for (unsigned e = 1; e <= 2 * exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ResidueWitness {
  Int h;        // square root, 0 <= h < modulus
  Int modulus;
  Int target;   // reduced into [0, modulus)

  friend bool operator==(const ResidueWitness&, const ResidueWitness&) = default;
};

/// Smallest h in [0, modulus) with h^2 = target (mod modulus), found by
/// scanning every residue. The modulus need not be prime.
inline std::optional<ResidueWitness> quadratic_residue_witness(const Int& target,
                                                              const Int& modulus) {
  if (modulus < 1)
    throw std::invalid_argument("quadratic_residue_witness: modulus must be >= 1");
  const Int t = mod_floor(target, modulus);
  for (Int h = 0; h < modulus; ++h)
    if ((h * h) % modulus == t) return ResidueWitness{h, modulus, t};
  return std::nullopt;
}

/// Smallest h in [1, modulus] with h^2 = target (mod modulus). Used where the
/// root must be a positive integer (h = modulus stands in for the zero root).
inline std::optional<Int> smallest_positive_root(const Int& target, const Int& modulus) {
  const Int t = mod_floor(target, modulus);
  for (Int h = 1; h <= modulus; ++h)
    if ((h * h) % modulus == t) return h;
  return std::nullopt;
}

/// Legendre symbol (a | p) by Euler's criterion. p must be an odd prime.
inline int legendre_symbol(const Int& a, const Int& p) {
  if (p < 3 || !is_odd(p) || !is_prime(p))
    throw std::invalid_argument("legendre_symbol: modulus " + p.str() + " is not an odd prime");
  const Int r = mod_floor(a, p);
  if (r == 0) return 0;
  const Int e = boost::multiprecision::powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

struct PythTriple {
  Int a;
  Int b;
  Int c;
  bool primitive = false;

  friend bool operator==(const PythTriple&, const PythTriple&) = default;
};

/// Euclid's formula with scale: (k(m^2-n^2), 2kmn, k(m^2+n^2)).
inline PythTriple euclid_triple(const Int& m, const Int& n, const Int& k) {
  if (n < 1 || m <= n) throw std::invalid_argument("euclid_triple: requires m > n > 0");
  if (k < 1) throw std::invalid_argument("euclid_triple: requires k >= 1");
  PythTriple t;
  t.a = k * (m * m - n * n);
  t.b = 2 * k * m * n;
  t.c = k * (m * m + n * n);
  t.primitive = k == 1 && gcd(m, n) == 1 && !(is_odd(m) && is_odd(n));
  return t;
}

// ---------------------------------------------------------------------------
// Modular obstruction scans

enum class EquationShape {
  kSquare,   // c1 x^2 + c2 = y^2
  kCube,     // c1 x^2 + c2 = y^3
  kTernary,  // c1 x^2 + c2 y^2 + c3 z^2 = 0, not all residues zero
};

struct ObstructionEquation {
  EquationShape shape = EquationShape::kSquare;
  Int c1 = 0;
  Int c2 = 0;
  Int c3 = 0;

  std::string str() const {
    auto term = [](const Int& c, std::string_view var, bool first) {
      std::string s;
      if (c < 0)
        s += "-";
      else if (!first)
        s += "+";
      const Int mag = abs(c);
      if (var.empty() || mag != 1) s += mag.str();
      s += var;
      return s;
    };
    switch (shape) {
      case EquationShape::kSquare:
        return term(c1, "x^2", true) + term(c2, "", false) + "=y^2";
      case EquationShape::kCube:
        return term(c1, "x^2", true) + term(c2, "", false) + "=y^3";
      case EquationShape::kTernary:
        return term(c1, "x^2", true) + term(c2, "y^2", false) + term(c3, "z^2", false) + "=0";
    }
    return {};
  }
};

struct SolvabilityReport {
  bool solvable = false;
  std::vector<Int> witness;  // residues (x, y) or (x, y, z) when solvable
};

/// Does the residue tuple satisfy the congruence? Nontriviality is not checked.
inline bool satisfies(const ObstructionEquation& eq, const std::vector<Int>& v, const Int& modulus) {
  Int lhs;
  switch (eq.shape) {
    case EquationShape::kSquare:
      lhs = eq.c1 * v.at(0) * v.at(0) + eq.c2 - v.at(1) * v.at(1);
      break;
    case EquationShape::kCube:
      lhs = eq.c1 * v.at(0) * v.at(0) + eq.c2 - v.at(1) * v.at(1) * v.at(1);
      break;
    case EquationShape::kTernary:
      lhs = eq.c1 * v.at(0) * v.at(0) + eq.c2 * v.at(1) * v.at(1) + eq.c3 * v.at(2) * v.at(2);
      break;
  }
  return mod_floor(lhs, modulus) == 0;
}

/// Exhaustive scan over all residue tuples modulo `modulus`. The witness is
/// the lexicographically smallest satisfying tuple.
inline SolvabilityReport mod_solvable(const ObstructionEquation& eq, const Int& modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_solvable: modulus must be >= 2");
  SolvabilityReport rep;
  if (eq.shape == EquationShape::kTernary) {
    // First z reaching each value of c3 z^2, then pair against every (x, y).
    std::map<Int, Int> z_for;
    for (Int z = 0; z < modulus; ++z) z_for.try_emplace(mod_floor(eq.c3 * z * z, modulus), z);
    for (Int x = 0; x < modulus; ++x) {
      for (Int y = 0; y < modulus; ++y) {
        const Int need = mod_floor(-(eq.c1 * x * x + eq.c2 * y * y), modulus);
        // z = 0 is fine only when (x, y) is already nontrivial.
        if (x == 0 && y == 0) {
          for (Int z = 1; z < modulus; ++z) {
            if (mod_floor(eq.c3 * z * z, modulus) == need) {
              rep.solvable = true;
              rep.witness = {x, y, z};
              return rep;
            }
          }
          continue;
        }
        if (auto it = z_for.find(need); it != z_for.end()) {
          rep.solvable = true;
          rep.witness = {x, y, it->second};
          return rep;
        }
      }
    }
    return rep;
  }

  const bool cube = eq.shape == EquationShape::kCube;
  std::map<Int, Int> y_for;
  for (Int y = 0; y < modulus; ++y) {
    const Int power = cube ? y * y * y : y * y;
    y_for.try_emplace(mod_floor(power, modulus), y);
  }
  for (Int x = 0; x < modulus; ++x) {
    const Int lhs = mod_floor(eq.c1 * x * x + eq.c2, modulus);
    if (auto it = y_for.find(lhs); it != y_for.end()) {
      rep.solvable = true;
      rep.witness = {x, it->second};
      return rep;
    }
  }
  return rep;
}

namespace detail {

struct Term {
  Int coef;
  char var = 0;  // 0 for constant
  int power = 0;
};

// Parses a signed sum like "3x^2-7y^2+2". Whitespace must already be removed.
inline std::vector<Term> parse_terms(std::string_view s) {
  std::vector<Term> terms;
  std::size_t i = 0;
  auto fail = [&]() {
    return std::invalid_argument("cannot parse polynomial '" + std::string(s) + "'");
  };
  if (s.empty()) throw fail();
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!terms.empty()) {
      throw fail();
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    Term t;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'y' || s[i] == 'z')) {
      t.var = s[i++];
      t.power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
        t.power = s[i++] - '0';
      }
    } else if (digits.empty()) {
      throw fail();
    }
    t.coef = digits.empty() ? Int(1) : Int(digits);
    t.coef *= sign;
    terms.push_back(t);
  }
  return terms;
}

}  // namespace detail

/// Parses one of "c1x^2+c2=y^2", "c1x^2+c2=y^3", "c1x^2+c2y^2+c3z^2=0".
inline ObstructionEquation parse_obstruction_equation(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto eq_pos = s.find('=');
  if (eq_pos == std::string::npos || s.find('=', eq_pos + 1) != std::string::npos)
    throw std::invalid_argument("equation must contain exactly one '=': " + std::string(text));
  const std::string lhs = s.substr(0, eq_pos);
  const std::string rhs = s.substr(eq_pos + 1);
  const auto terms = detail::parse_terms(lhs);

  ObstructionEquation eq;
  auto unsupported = [&]() {
    return std::invalid_argument("unsupported equation shape: " + std::string(text));
  };
  if (rhs == "y^2" || rhs == "y^3") {
    eq.shape = rhs == "y^2" ? EquationShape::kSquare : EquationShape::kCube;
    for (const auto& t : terms) {
      if (t.var == 'x' && t.power == 2)
        eq.c1 += t.coef;
      else if (t.var == 0)
        eq.c2 += t.coef;
      else
        throw unsupported();
    }
  } else if (rhs == "0") {
    eq.shape = EquationShape::kTernary;
    for (const auto& t : terms) {
      if (t.power != 2) throw unsupported();
      if (t.var == 'x')
        eq.c1 += t.coef;
      else if (t.var == 'y')
        eq.c2 += t.coef;
      else if (t.var == 'z')
        eq.c3 += t.coef;
      else
        throw unsupported();
    }
  } else {
    throw unsupported();
  }
  return eq;
}

// ---------------------------------------------------------------------------
// Quadratic-residue lemma family

enum class LemmaBranch {
  kNegQResidue,  // -q is a square mod p: a - b = p
  kQResidue,     // q is a square mod p: a + b = p * step
};

/// (a, b, l) with p | (a^2 - b^2) and l*p - q = a*b.
struct LemmaTriple {
  Int a;
  Int b;
  Int l;
  LemmaBranch branch = LemmaBranch::kNegQResidue;
  Int h;   // residue root used
  Int l0;  // base value with p*l0 -/+ q = h^2
};

/// The j-th member of the lemma family, or nullopt when neither q nor -q is a
/// quadratic residue modulo p.
///
/// -q branch: h_j = h + j*p where h is the smallest positive root of
///   h^2 = -q (mod p); l0 = (h_j^2 + q)/p, a = h_j + p, b = h_j, l = l0 + h_j.
/// q branch: h is the smallest positive root of h^2 = q (mod p),
///   l0 = (h^2 - q)/p; with step s = s_min + j, a = p*s - h, b = h,
///   l = s*h - l0, where s_min is the least s making a and l positive.
/// In both branches l grows strictly with j.
inline std::optional<LemmaTriple> qr_lemma_family(const Int& p, const Int& q, const Int& index) {
  if (p < 1 || q < 1) throw std::invalid_argument("qr_lemma_family: p, q must be positive");
  if (index < 0) throw std::invalid_argument("qr_lemma_family: index must be >= 0");
  if (gcd(p, q) != 1) throw std::invalid_argument("qr_lemma_family: p and q must be coprime");

  if (quadratic_residue_witness(-q, p)) {
    const Int h = *smallest_positive_root(-q, p) + index * p;
    LemmaTriple out;
    out.branch = LemmaBranch::kNegQResidue;
    out.h = h;
    out.l0 = (h * h + q) / p;
    out.a = h + p;
    out.b = h;
    out.l = out.l0 + h;
    return out;
  }
  if (quadratic_residue_witness(q, p)) {
    const Int h = *smallest_positive_root(q, p);
    const Int l0 = (h * h - q) / p;
    // a = p*s - h > 0  <=>  s > h/p ;  l = s*h - l0 > 0  <=>  s > l0/h
    Int s = std::max(div_floor(h, p), div_floor(l0, h)) + 1;
    s += index;
    LemmaTriple out;
    out.branch = LemmaBranch::kQResidue;
    out.h = h;
    out.l0 = l0;
    out.a = p * s - h;
    out.b = h;
    out.l = s * h - l0;
    return out;
  }
  return std::nullopt;
}

}  // namespace halperin::ntheory
