#pragma once

// Closed-form K-matrix families. Every constructor returns a Solution that
// has already passed verify_solution(); a family that fails to verify is a
// bug and surfaces as std::logic_error.

#include "halperin/kmatrix.hpp"
#include "halperin/ntheory.hpp"

#include <stdexcept>
#include <utility>

namespace halperin {

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

/// Least beta >= 1 with coef * beta^2 > min_det (coef >= 1).
inline Int least_beta_exceeding(const Int& coef, const Int& min_det) {
  if (min_det < 0) return 1;
  return ntheory::isqrt(min_det / coef) + 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// t = (1, 0)

/// K = [[m, pm - q], [pm - q, p(pm - q)]], det = q(pm - q).
inline Solution construct_t10(const Filling& nu, const Int& m) {
  const Int u = nu.p() * m - nu.q();
  detail::require(m >= 1 && u >= 1, "construct_t10: requires p*m - q >= 1");
  ConstructionTrace tr;
  tr.family = Family::kT10;
  return make_solution({m, nu.p() * u, u}, nu, ChargeVector(1, 0), std::move(tr));
}

/// (m, n, l) -> (m, alpha^2 n, alpha l); same filling, det scaled by alpha^2.
inline Solution amplify_t10(const Solution& s, const Int& alpha) {
  detail::require(s.charge == ChargeVector(1, 0), "amplify_t10: charge must be (1, 0)");
  detail::require(alpha >= 1, "amplify_t10: alpha must be positive");
  detail::require(verify_solution(s), "amplify_t10: input does not verify");
  ConstructionTrace tr = s.trace.value_or(ConstructionTrace{});
  tr.family = Family::kT10Amplified;
  tr.alpha = tr.alpha ? *tr.alpha * alpha : alpha;
  const KMatrix& k = s.kmatrix;
  return make_solution({k.m, alpha * alpha * k.n, alpha * k.l}, s.nu, s.charge, std::move(tr));
}

// ---------------------------------------------------------------------------
// t = (1, 1)

/// Residue branch. Requires -q to be a square modulo p; b is its smallest
/// positive root, a = b + p t, and
///   l = (ab + q)/p,  m = t(b + pt) + l,  n = (b^2 + q)/p,  det = q t^2.
/// The trace carries the Pythagorean data s = t(a + b), x = a^2 + b^2, k = t^2.
inline std::optional<Solution> construct_t11_residue(const Filling& nu, const Int& t) {
  detail::require(t >= 1, "construct_t11: t_index must be >= 1");
  const Int& p = nu.p();
  const Int& q = nu.q();
  const auto root = ntheory::smallest_positive_root(-q, p);
  if (!root) return std::nullopt;
  const Int& b = *root;
  const Int a = b + p * t;
  const Int l = (a * b + q) / p;
  const Int m = t * (b + p * t) + l;
  const Int n = (b * b + q) / p;

  ConstructionTrace tr;
  tr.family = Family::kT11Residue;
  tr.a = a;
  tr.b = b;
  tr.t = t;
  tr.h = b;
  tr.k = t * t;
  tr.s = t * (a + b);
  tr.rho = tr.s;
  tr.x = a * a + b * b;
  return make_solution({m, n, l}, nu, ChargeVector(1, 1), std::move(tr));
}

/// Non-residue branch. l0 is the least positive integer with u = p l0 - q >= 1;
///   m = l0 + t u (p t + 2),  n = l0,  l = l0 + t u,  det = u q t^2.
/// Valid for every filling, whatever the residue status of -q.
inline Solution construct_t11_nonresidue(const Filling& nu, const Int& t) {
  detail::require(t >= 1, "construct_t11: t_index must be >= 1");
  const Int& p = nu.p();
  const Int& q = nu.q();
  const Int l0 = q / p + 1;
  const Int u = p * l0 - q;

  ConstructionTrace tr;
  tr.family = Family::kT11NonResidue;
  tr.l0 = l0;
  tr.u = u;
  tr.t = t;
  tr.a = 1 + p * t;
  tr.b = 1;
  return make_solution({l0 + t * u * (p * t + 2), l0, l0 + t * u}, nu, ChargeVector(1, 1),
                       std::move(tr));
}

/// Chooses the residue branch when -q is a quadratic residue mod p and the
/// non-residue branch otherwise.
inline Solution construct_t11(const Filling& nu, const Int& t_index) {
  if (auto s = construct_t11_residue(nu, t_index)) return std::move(*s);
  return construct_t11_nonresidue(nu, t_index);
}

/// nu = 1 at t = (1,1) from a factorization (m-1)(n-1) = (l-1)^2 = d1 d2.
inline Solution construct_nu1_t11(const Int& d1, const Int& d2) {
  detail::require(d1 >= 1 && d2 >= 1, "construct_nu1_t11: factors must be positive");
  const Int prod = d1 * d2;
  detail::require(ntheory::is_perfect_square(prod), "construct_nu1_t11: d1*d2 is not a perfect square");
  const KMatrix k{1 + d1, 1 + d2, 1 + ntheory::isqrt(prod)};
  detail::require(determinant(k) >= 1, "construct_nu1_t11: resulting determinant < 1");
  ConstructionTrace tr;
  tr.family = Family::kNu1T11;
  return make_solution(k, Filling(1), ChargeVector(1, 1), std::move(tr));
}

// ---------------------------------------------------------------------------
// General charge vectors

/// Integer filling p >= 2:
///   K = [[t1^2, (p-1) t1 beta + t1 t2],
///        [.,    (p-1) p beta^2 + 2 (p-1) t2 beta + t2^2]],   det = (p-1) t1^2 beta^2.
inline Solution construct_integer_general(const Int& p, const ChargeVector& t, const Int& beta) {
  detail::require(p >= 2, "construct_integer_general: requires p >= 2");
  detail::require(t.t1() >= 1, "construct_integer_general: requires t1 >= 1");
  detail::require(beta >= 1, "construct_integer_general: requires beta >= 1");
  const Int& t1 = t.t1();
  const Int& t2 = t.t2();
  const Int l = (p - 1) * t1 * beta + t1 * t2;
  const Int n = (p - 1) * p * beta * beta + 2 * (p - 1) * t2 * beta + t2 * t2;
  ConstructionTrace tr;
  tr.family = Family::kIntegerGeneral;
  tr.beta = beta;
  return make_solution({t1 * t1, n, l}, Filling(p), t, std::move(tr));
}

/// nu = 1:
///   K = [[2 t1^2, t1 beta + 2 t1 t2], [., beta^2 + 2 t2 beta + 2 t2^2]],   det = t1^2 beta^2.
inline Solution construct_unity_general(const ChargeVector& t, const Int& beta) {
  detail::require(t.t1() >= 1, "construct_unity_general: requires t1 >= 1");
  detail::require(beta >= 1, "construct_unity_general: requires beta >= 1");
  const Int& t1 = t.t1();
  const Int& t2 = t.t2();
  ConstructionTrace tr;
  tr.family = Family::kUnityGeneral;
  tr.beta = beta;
  return make_solution({2 * t1 * t1, beta * beta + 2 * t2 * beta + 2 * t2 * t2, t1 * beta + 2 * t1 * t2},
                       Filling(1), t, std::move(tr));
}

/// (m, n, l) with integer filling p -> (qm, qn, ql) with filling p/q.
inline Solution scale_to_rational(const Solution& s, const Int& q) {
  detail::require(s.nu.is_integer(), "scale_to_rational: input filling must be an integer");
  detail::require(q >= 1, "scale_to_rational: q must be positive");
  detail::require(verify_solution(s), "scale_to_rational: input does not verify");
  ConstructionTrace tr;
  if (s.trace) {
    tr = *s.trace;
  } else {
    tr.family = Family::kScaledToRational;
  }
  tr.scale = tr.scale ? *tr.scale * q : q;
  return make_solution(s.kmatrix.scaled(q), Filling(s.nu.p(), q), s.charge, std::move(tr));
}

/// A verified solution with det > min_det for any filling and charge vector.
/// t1 = 0 is handled through the symmetry (m <-> n, t1 <-> t2) of the filling
/// formula. The growth parameter beta is the least one clearing min_det, so
/// det = (p-1) t1^2 beta^2 q^2 for p >= 2 and t1^2 beta^2 q^2 for p = 1.
inline Solution construct(const Filling& nu, const ChargeVector& t, const Int& min_det) {
  const bool swap = t.t1() == 0;
  const ChargeVector tt = swap ? t.swapped() : t;
  const Int& p = nu.p();
  const Int& q = nu.q();
  const Int t1sq = tt.t1() * tt.t1();

  Solution base = [&] {
    if (p >= 2) {
      const Int beta = detail::least_beta_exceeding((p - 1) * t1sq * q * q, min_det);
      return construct_integer_general(p, tt, beta);
    }
    const Int beta = detail::least_beta_exceeding(t1sq * q * q, min_det);
    return construct_unity_general(tt, beta);
  }();
  Solution scaled = q == 1 ? std::move(base) : scale_to_rational(base, q);
  if (!swap) return scaled;

  ConstructionTrace tr = *scaled.trace;
  tr.charge_swapped = true;
  return make_solution(scaled.kmatrix.swapped(), nu, t, std::move(tr));
}

// ---------------------------------------------------------------------------
// Parity classes

/// All-even solution: the integer family at filling p*alpha, scaled by
/// q*alpha. det = (alpha q)^2 (p alpha - 1) t1^2 beta^2 (t1 after any swap).
inline Solution bosonic_family(const Filling& nu, const ChargeVector& t, const Int& alpha,
                               const Int& beta) {
  detail::require(alpha >= 2 && !is_odd(alpha), "bosonic_construct: alpha must be even and >= 2");
  const bool swap = t.t1() == 0;
  const ChargeVector tt = swap ? t.swapped() : t;
  const Solution inner = construct_integer_general(nu.p() * alpha, tt, beta);
  KMatrix k = inner.kmatrix.scaled(nu.q() * alpha);
  if (swap) k = k.swapped();

  ConstructionTrace tr;
  tr.family = Family::kBosonic;
  tr.alpha = alpha;
  tr.beta = beta;
  tr.scale = nu.q() * alpha;
  tr.charge_swapped = swap;
  return make_solution(k, nu, t, std::move(tr));
}

inline Solution bosonic_construct(const Filling& nu, const ChargeVector& t, const Int& min_det,
                                  const Int& alpha = 2) {
  detail::require(alpha >= 2 && !is_odd(alpha), "bosonic_construct: alpha must be even and >= 2");
  const Int t1 = t.t1() == 0 ? t.t2() : t.t1();
  const Int aq = alpha * nu.q();
  const Int coef = aq * aq * (nu.p() * alpha - 1) * t1 * t1;
  return bosonic_family(nu, t, alpha, detail::least_beta_exceeding(coef, min_det));
}

enum class Obstruction { kObstructed, kUnknown };

inline const char* to_string(Obstruction o) {
  return o == Obstruction::kObstructed ? "obstructed" : "unknown";
}

/// Parity obstruction for odd-diagonal K-matrices. At t = (1,0) the filling
/// is n/det, so an even p over odd q forces n even; no fermionic solution
/// exists. Other charge vectors are not decided.
inline Obstruction fermionic_obstruction(const Filling& nu, const ChargeVector& t) {
  const bool unit_axis = (t.t1() == 1 && t.t2() == 0) || (t.t1() == 0 && t.t2() == 1);
  if (unit_axis && !is_odd(nu.p()) && is_odd(nu.q())) return Obstruction::kObstructed;
  return Obstruction::kUnknown;
}

// ---------------------------------------------------------------------------

/// Checks the trace against the defining equations of its family.
inline bool verify_trace(const Solution& s) {
  if (!s.trace) return false;
  const ConstructionTrace& tr = *s.trace;
  const Int& p = s.nu.p();
  const Int& q = s.nu.q();
  const KMatrix& k = s.kmatrix;
  switch (tr.family) {
    case Family::kT10:
      return k.l == p * k.m - q && k.n == p * k.l;
    case Family::kT11Residue: {
      if (!(tr.a && tr.b && tr.t && tr.s && tr.x && tr.k)) return false;
      const Int& a = *tr.a;
      const Int& b = *tr.b;
      const Int& t = *tr.t;
      const Int lp_q = k.l * p - q;
      const bool key = -p * p * *tr.s * *tr.s - 4 * lp_q * lp_q + *tr.x * *tr.x == 0;
      return key && a - b == p * t && lp_q == a * b && *tr.s == t * (a + b) &&
             *tr.x == a * a + b * b && *tr.k == t * t && 2 * k.m == *tr.k * p + 2 * k.l + *tr.s &&
             k.n == 2 * k.l + p * *tr.k - k.m && s.det == q * t * t;
    }
    case Family::kT11NonResidue: {
      if (!(tr.u && tr.l0 && tr.t && tr.a && tr.b)) return false;
      const Int& t = *tr.t;
      return *tr.u == p * *tr.l0 - q && *tr.u >= 1 && *tr.a == 1 + p * t && *tr.b == 1 &&
             p * k.l - q == *tr.u * *tr.a * *tr.b && s.det == *tr.u * q * t * t;
    }
    case Family::kIntegerGeneral:
    case Family::kUnityGeneral: {
      if (!tr.beta) return false;
      const Int& t1 = tr.charge_swapped ? s.charge.t2() : s.charge.t1();
      const Int scale = tr.scale.value_or(1);
      // nu * scale is the integer filling of the unscaled matrix.
      if ((p * scale) % q != 0) return false;
      const Int base_p = p * scale / q;
      const Int base = tr.family == Family::kIntegerGeneral ? base_p - 1 : Int(1);
      if (tr.family == Family::kUnityGeneral && base_p != 1) return false;
      return s.det == base * t1 * t1 * *tr.beta * *tr.beta * scale * scale;
    }
    case Family::kBosonic: {
      if (!(tr.alpha && tr.beta)) return false;
      const Int& t1 = tr.charge_swapped ? s.charge.t2() : s.charge.t1();
      const Int aq = *tr.alpha * q;
      return parity_class(k) == ParityClass::kBosonic &&
             s.det == aq * aq * (p * *tr.alpha - 1) * t1 * t1 * *tr.beta * *tr.beta;
    }
    default:
      return verify_solution(s);
  }
}

}  // namespace halperin
