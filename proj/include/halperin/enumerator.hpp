#pragma once

// Complete searches: box enumeration, the exact fixed-l solver and the
// boundedness certificate for fixed off-diagonal entries.

#include "halperin/kmatrix.hpp"
#include "halperin/ntheory.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace halperin {

namespace detail {

// Solutions with m in [m_lo, m_hi], 1 <= n <= n_max, appended in (m, n, l)
// order. For fixed (m, n) the residual is a quadratic in l,
//   p l^2 - 2 q t1 t2 l - (p m n - q (n t1^2 + m t2^2)) = 0,
// so candidate l values come from one integer square root.
inline void enumerate_rows(const Filling& nu, const ChargeVector& t, const Int& m_lo,
                           const Int& m_hi, const Int& n_max, std::vector<Solution>& out) {
  const Int& p = nu.p();
  const Int& q = nu.q();
  const Int t1sq = t.t1() * t.t1();
  const Int t2sq = t.t2() * t.t2();
  const Int b = q * t.t1() * t.t2();
  const Int bsq = b * b;
  for (Int m = m_lo; m <= m_hi; ++m) {
    for (Int n = 1; n <= n_max; ++n) {
      const Int mn = m * n;
      const Int disc = bsq + p * (p * mn - q * (n * t1sq + m * t2sq));
      if (disc < 0) continue;
      const Int r = ntheory::isqrt(disc);
      if (r * r != disc) continue;
      // Smaller root first keeps l ascending.
      const int roots = r == 0 ? 1 : 2;
      for (int i = 0; i < roots; ++i) {
        const Int numer = i == 0 ? b - r : b + r;
        if (numer < 0 || numer % p != 0) continue;
        const Int l = numer / p;
        if (mn - l * l < 1) continue;
        KMatrix k{m, n, l};
        out.push_back(Solution{k, mn - l * l, nu, t, std::nullopt});
      }
    }
  }
}

}  // namespace detail

/// Every valid solution with 1 <= m <= m_max, 1 <= n <= n_max (l is
/// unrestricted beyond det >= 1), sorted by (m, n, l). The m-range is split
/// into contiguous blocks across `workers` threads; the output does not
/// depend on the worker count.
inline std::vector<Solution> enumerate(const Filling& nu, const ChargeVector& t, const Int& m_max,
                                       const Int& n_max, unsigned workers = 1) {
  if (m_max < 1 || n_max < 1) throw std::invalid_argument("enumerate: bounds must be >= 1");
  workers = std::max(1u, workers);
  if (Int(workers) > m_max) workers = static_cast<unsigned>(m_max);

  std::vector<std::vector<Solution>> parts(workers);
  const Int block = (m_max + workers - 1) / workers;
  auto run = [&](unsigned w) {
    const Int lo = Int(w) * block + 1;
    const Int hi = std::min<Int>(m_max, Int(w + 1) * block);
    if (lo <= hi) detail::enumerate_rows(nu, t, lo, hi, n_max, parts[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::vector<Solution> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

/// Box scan at a fixed off-diagonal l0, sorted by (m, n).
inline std::vector<Solution> enumerate_at_l(const Filling& nu, const ChargeVector& t, const Int& l0,
                                            const Int& m_max, const Int& n_max) {
  if (m_max < 1 || n_max < 1) throw std::invalid_argument("enumerate_at_l: bounds must be >= 1");
  if (l0 < 0) throw std::invalid_argument("enumerate_at_l: l0 must be >= 0");
  std::vector<Solution> out;
  const Int l0sq = l0 * l0;
  for (Int m = 1; m <= m_max; ++m) {
    // det >= 1 needs n > l0^2 / m.
    for (Int n = l0sq / m + 1; n <= n_max; ++n) {
      const KMatrix k{m, n, l0};
      if (diophantine_residual(k, t, nu) == 0) out.push_back(Solution{k, determinant(k), nu, t, std::nullopt});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-l solver

/// One-parameter family with a frozen diagonal entry:
/// (fixed, n, l0) for n >= free_min, or (m, fixed, l0) for m >= free_min.
struct FreeFamily {
  bool m_is_fixed = false;
  Int fixed;
  Int free_min;
  Int l0;

  std::string str() const {
    if (m_is_fixed)
      return "(" + fixed.str() + ", n, " + l0.str() + "), n >= " + free_min.str();
    return "(m, " + fixed.str() + ", " + l0.str() + "), m >= " + free_min.str();
  }
};

enum class FixedLKind { kFiniteList, kInfiniteFamily, kEmpty };

inline const char* to_string(FixedLKind k) {
  switch (k) {
    case FixedLKind::kFiniteList: return "finite_list";
    case FixedLKind::kInfiniteFamily: return "infinite_family";
    case FixedLKind::kEmpty: return "empty";
  }
  return "?";
}

struct FixedLOutcome {
  FixedLKind kind = FixedLKind::kEmpty;
  std::vector<Solution> solutions;  // kFiniteList
  std::vector<FreeFamily> families; // kInfiniteFamily

  std::string family_description() const {
    std::string s;
    for (const auto& f : families) {
      if (!s.empty()) s += "; ";
      s += f.str();
    }
    return s;
  }
};

/// Complete solution set at l = l0. With X = p m - q t1^2 and
/// Y = p n - q t2^2, the residual satisfies
///   p * residual = X Y - (p l0 - q t1 t2)^2,
/// so solutions correspond to factor pairs X Y = R of the square R. When
/// R = 0 a vanishing factor leaves the other diagonal entry free.
inline FixedLOutcome solve_fixed_l(const Filling& nu, const ChargeVector& t, const Int& l0) {
  if (l0 < 0) throw std::invalid_argument("solve_fixed_l: l0 must be >= 0");
  const Int& p = nu.p();
  const Int& q = nu.q();
  const Int c1 = q * t.t1() * t.t1();
  const Int c2 = q * t.t2() * t.t2();
  const Int base = p * l0 - q * t.t1() * t.t2();
  const Int l0sq = l0 * l0;

  FixedLOutcome out;
  if (base == 0) {
    // X = 0: m = c1/p fixed, n free with m n > l0^2.
    if (c1 % p == 0 && c1 / p >= 1) {
      const Int m = c1 / p;
      out.families.push_back({true, m, l0sq / m + 1, l0});
    }
    if (c2 % p == 0 && c2 / p >= 1) {
      const Int n = c2 / p;
      out.families.push_back({false, n, l0sq / n + 1, l0});
    }
    out.kind = out.families.empty() ? FixedLKind::kEmpty : FixedLKind::kInfiniteFamily;
    return out;
  }

  const Int rhs = base * base;
  for (const Int& d : ntheory::divisors_of_square(base)) {
    for (int sign : {1, -1}) {
      const Int x = sign * d;
      const Int y = rhs / x;
      if ((x + c1) % p != 0 || (y + c2) % p != 0) continue;
      const KMatrix k{(x + c1) / p, (y + c2) / p, l0};
      if (!is_valid_state(k)) continue;
      out.solutions.push_back(Solution{k, determinant(k), nu, t, std::nullopt});
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const Solution& a, const Solution& b) { return a.kmatrix < b.kmatrix; });
  out.kind = out.solutions.empty() ? FixedLKind::kEmpty : FixedLKind::kFiniteList;
  return out;
}

// ---------------------------------------------------------------------------
// Boundedness at fixed l0

struct BoundCertificate {
  Int l0;
  ChargeVector charge;
  Filling analytic_bound;                  // 2 t1^2 + 2 t2^2, valid where m n > 2 l0^2
  std::optional<Filling> finite_region_max;  // max over m n <= 2 l0^2, if nonempty
  Filling certified_upper_bound;
  Filling empirical_max;
  Int scan_m_max;
  Int scan_n_max;
};

namespace detail {

inline void keep_max(std::optional<Filling>& best, const Filling& v) {
  if (!best || v > *best) best = v;
}

}  // namespace detail

/// Upper bound on every filling reachable at l = l0. Outside the finite
/// region m n <= 2 l0^2 the filling is at most 2 t1^2 + 2 t2^2; inside it
/// the region is scanned exhaustively. The empirical maximum comes from a
/// full scan of 1 <= m, n <= 2 l0^2 + 2 and is not claimed to be the supremum.
inline BoundCertificate max_filling_fixed_l(const ChargeVector& t, const Int& l0) {
  if (l0 < 0) throw std::invalid_argument("max_filling_fixed_l: l0 must be >= 0");
  const Int l0sq = l0 * l0;
  const Int region = 2 * l0sq;

  std::optional<Filling> region_max;
  for (Int m = 1; m <= region; ++m) {
    for (Int n = l0sq / m + 1; m * n <= region; ++n) {
      const KMatrix k{m, n, l0};
      detail::keep_max(region_max, filling_fraction(k, t));
    }
  }

  const Int scan = region + 2;
  std::optional<Filling> empirical;
  for (Int m = 1; m <= scan; ++m)
    for (Int n = l0sq / m + 1; n <= scan; ++n) detail::keep_max(empirical, filling_fraction(KMatrix{m, n, l0}, t));

  const Filling analytic(2 * t.t1() * t.t1() + 2 * t.t2() * t.t2());
  Filling certified = analytic;
  if (region_max && *region_max > certified) certified = *region_max;
  // m = n = l0 + 1 lies in the scan box, so empirical is always set.
  return BoundCertificate{l0, t, analytic, region_max, certified, *empirical, scan, scan};
}

struct GapEntry {
  Filling nu;
  bool by_certificate = false;  // ruled out by the bound alone, no search
};

/// Candidates that no l in l_set can produce.
inline std::vector<GapEntry> union_gap_check(const ChargeVector& t, const std::vector<Int>& l_set,
                                             const std::vector<Filling>& candidates) {
  std::optional<Filling> max_bound;
  for (const Int& l : l_set) detail::keep_max(max_bound, max_filling_fixed_l(t, l).certified_upper_bound);

  std::vector<GapEntry> out;
  for (const Filling& nu : candidates) {
    if (max_bound && nu > *max_bound) {
      out.push_back({nu, true});
      continue;
    }
    const bool reachable = std::any_of(l_set.begin(), l_set.end(), [&](const Int& l) {
      return solve_fixed_l(nu, t, l).kind != FixedLKind::kEmpty;
    });
    if (!reachable) out.push_back({nu, false});
  }
  return out;
}

}  // namespace halperin
