#include "halperin/constructors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace halperin;

namespace {

const ChargeVector kT10(1, 0);
const ChargeVector kT11(1, 1);

void expect_k(const Solution& s, int m, int n, int l, int det) {
  EXPECT_EQ(s.kmatrix, (KMatrix{m, n, l})) << s.str();
  EXPECT_EQ(s.det, det) << s.str();
  EXPECT_TRUE(verify_solution(s)) << s.str();
}

}  // namespace

TEST(ConstructT10, Examples) {
  expect_k(construct_t10(Filling(1), 2), 2, 1, 1, 1);
  expect_k(construct_t10(Filling(2, 3), 2), 2, 2, 1, 3);
  EXPECT_THROW(construct_t10(Filling(2, 3), 1), std::invalid_argument);  // pm - q = -1
  EXPECT_TRUE(verify_trace(construct_t10(Filling(2, 3), 2)));
}

TEST(ConstructT10, DeterminantLaw) {
  for (int p = 1; p <= 12; ++p)
    for (int q = 1; q <= 12; ++q) {
      if (oracle::gcd(p, q) != 1) continue;
      for (int m = q / p + 1; m <= q / p + 15; ++m) {
        const auto s = construct_t10(Filling(p, q), m);
        EXPECT_EQ(s.det, Int(q) * (p * m - q));
        EXPECT_EQ(filling_fraction(s.kmatrix, kT10), Filling(p, q));
      }
    }
}

TEST(AmplifyT10, Examples) {
  const auto base = construct_t10(Filling(2, 3), 2);
  const auto s = amplify_t10(base, 2);
  expect_k(s, 2, 8, 2, 12);
  EXPECT_EQ(s.nu, Filling(2, 3));
  EXPECT_EQ(amplify_t10(base, 1).kmatrix, base.kmatrix);
  EXPECT_THROW(amplify_t10(construct_t11(Filling(3, 5), 1), 2), std::invalid_argument);
  EXPECT_THROW(amplify_t10(base, 0), std::invalid_argument);
}

TEST(AmplifyT10, DeterminantScalesBySquare) {
  for (int p = 1; p <= 8; ++p)
    for (int q = 1; q <= 8; ++q) {
      if (oracle::gcd(p, q) != 1) continue;
      const auto base = construct_t10(Filling(p, q), q / p + 2);
      for (int a = 1; a <= 20; ++a) EXPECT_EQ(amplify_t10(base, a).det, a * a * base.det);
    }
}

TEST(ConstructT11, ResidueExampleThreeFifths) {
  // Worked example a=4, b=1, t=1. The source prints (7, 3, 2); the
  // construction and the filling formula give (7, 2, 3).
  const auto s = construct_t11(Filling(3, 5), 1);
  expect_k(s, 7, 2, 3, 5);
  ASSERT_TRUE(s.trace);
  EXPECT_EQ(s.trace->family, Family::kT11Residue);
  EXPECT_EQ(*s.trace->a, 4);
  EXPECT_EQ(*s.trace->b, 1);
  EXPECT_EQ(*s.trace->t, 1);
  EXPECT_TRUE(verify_trace(s));
}

TEST(ConstructT11, NonResidueExampleFiveEighths) {
  const auto s1 = construct_t11(Filling(5, 8), 1);
  expect_k(s1, 16, 2, 4, 16);
  EXPECT_EQ(s1.trace->family, Family::kT11NonResidue);
  EXPECT_EQ(*s1.trace->u, 2);
  EXPECT_EQ(*s1.trace->l0, 2);
  // m = 2t(5t+2) + 2, n = 2, l = 2 + 2t at t = 2.
  const auto s2 = construct_t11(Filling(5, 8), 2);
  expect_k(s2, 50, 2, 6, 64);
  for (int t = 1; t <= 30; ++t) {
    const auto s = construct_t11(Filling(5, 8), t);
    EXPECT_EQ(s.kmatrix, (KMatrix{2 * t * (5 * t + 2) + 2, 2, 2 + 2 * t}));
    EXPECT_EQ(s.det, 16 * t * t);
  }
}

TEST(ConstructT11, SweepBothBranchesVerify) {
  for (int p = 1; p <= 50; ++p)
    for (int q = 1; q <= 50; ++q) {
      if (oracle::gcd(p, q) != 1) continue;
      const Filling nu(p, q);
      for (int t = 1; t <= 20; t += 3) {
        const auto s = construct_t11(nu, t);
        ASSERT_TRUE(verify_solution(s)) << nu.str() << " t=" << t;
        ASSERT_TRUE(verify_trace(s)) << nu.str() << " t=" << t;
        const bool residue = oracle::is_square_mod(-q, p);
        EXPECT_EQ(s.trace->family, residue ? Family::kT11Residue : Family::kT11NonResidue);
        if (residue) {
          EXPECT_EQ(s.det, q * t * t);
          // Pythagorean resolution: (ps)^2 + (2(lp - q))^2 = x^2.
          const Int ps = p * *s.trace->s;
          const Int two_ab = 2 * (s.kmatrix.l * p - q);
          EXPECT_EQ(ps * ps + two_ab * two_ab, *s.trace->x * *s.trace->x);
        }
        const auto nr = construct_t11_nonresidue(nu, t);
        ASSERT_TRUE(verify_solution(nr));
        ASSERT_TRUE(verify_trace(nr));
        EXPECT_EQ(nr.det, *nr.trace->u * q * t * t);
      }
    }
}

TEST(ConstructNu1T11, Examples) {
  EXPECT_THROW(construct_nu1_t11(1, 1), std::invalid_argument);  // det 0
  expect_k(construct_nu1_t11(1, 4), 2, 5, 3, 1);
  expect_k(construct_nu1_t11(4, 9), 5, 10, 7, 1);
  EXPECT_THROW(construct_nu1_t11(2, 3), std::invalid_argument);
  EXPECT_EQ(construct_nu1_t11(4, 9).nu, Filling(1));
}

TEST(ConstructIntegerGeneral, Examples) {
  expect_k(construct_integer_general(2, kT11, 1), 1, 5, 2, 1);
  expect_k(construct_integer_general(3, ChargeVector(2, 1), 2), 4, 33, 10, 32);
  EXPECT_EQ(construct_integer_general(3, ChargeVector(2, 1), 2).nu, Filling(3));
  EXPECT_THROW(construct_integer_general(1, kT11, 1), std::invalid_argument);
  EXPECT_THROW(construct_integer_general(2, ChargeVector(0, 1), 1), std::invalid_argument);
}

TEST(ConstructIntegerGeneral, DisplayedMatrixNotInlineVariant) {
  // n with a trailing 3 t2^2 instead of t2^2 does not produce p.
  const Int p = 3, t1 = 2, t2 = 1, beta = 2;
  const KMatrix variant{t1 * t1, (p - 1) * p * beta * beta + 2 * (p - 1) * t2 * beta + 3 * t2 * t2,
                        (p - 1) * t1 * beta + t1 * t2};
  EXPECT_NE(diophantine_residual(variant, ChargeVector(t1, t2), Filling(p)), 0);
}

TEST(ConstructIntegerGeneral, NuSevenAgainstDirectFamily) {
  for (int b = 1; b <= 20; ++b) {
    const auto s = construct_integer_general(7, kT11, b);
    EXPECT_EQ(s.det, 6 * b * b);
    // m = 1 + 6t(7t + 2), n = 1, l = 1 + 6t gives 7 as well, det 6 t^2.
    const KMatrix direct{1 + 6 * b * (7 * b + 2), 1, 1 + 6 * b};
    EXPECT_EQ(filling_fraction(direct, kT11), Filling(7));
    EXPECT_EQ(determinant(direct), s.det);
  }
}

TEST(ConstructUnityGeneral, Examples) {
  expect_k(construct_unity_general(kT11, 1), 2, 5, 3, 1);
  for (int b = 1; b <= 10; ++b) expect_k(construct_unity_general(kT10, b), 2, b * b, b, b * b);
  expect_k(construct_unity_general(ChargeVector(2, 1), 2), 8, 10, 8, 16);
  EXPECT_THROW(construct_unity_general(ChargeVector(0, 2), 1), std::invalid_argument);
}

TEST(ScaleToRational, Examples) {
  const auto s = scale_to_rational(construct_integer_general(2, kT11, 1), 3);
  expect_k(s, 3, 15, 6, 9);
  EXPECT_EQ(s.nu, Filling(2, 3));
  const auto base = construct_unity_general(kT11, 1);
  EXPECT_EQ(scale_to_rational(base, 1).kmatrix, base.kmatrix);
  const auto s7 = scale_to_rational(base, 7);
  expect_k(s7, 14, 35, 21, 49);
  EXPECT_EQ(s7.nu, Filling(1, 7));
  EXPECT_THROW(scale_to_rational(s7, 2), std::invalid_argument);
}

TEST(Construct, Examples) {
  const auto a = construct(Filling(2, 3), kT11, 0);
  expect_k(a, 3, 15, 6, 9);

  // Least beta with 12 * beta^2 * 17^2 > 10^6 is 17.
  const auto b = construct(Filling(13, 17), kT11, 1000000);
  EXPECT_TRUE(verify_solution(b));
  EXPECT_EQ(*b.trace->beta, 17);
  EXPECT_EQ(b.det, 1002252);
  EXPECT_LE(12 * 16 * 16 * 289, 1000000);

  expect_k(construct(Filling(1), ChargeVector(3, 2), 0), 18, 13, 15, 9);
}

TEST(Construct, ZeroFirstChargeUsesSwap) {
  const auto s = construct(Filling(3, 7), ChargeVector(0, 2), 50);
  EXPECT_TRUE(verify_solution(s));
  EXPECT_EQ(s.charge, ChargeVector(0, 2));
  EXPECT_TRUE(s.trace->charge_swapped);
  EXPECT_GT(s.det, 50);
  EXPECT_TRUE(verify_trace(s));
}

TEST(Construct, SweepVerifiesAndExceedsThreshold) {
  const std::vector<Int> thresholds = {0, 1, 999, 123456, Int(1000000000), Int("1000000000000000000000000")};
  for (int p = 1; p <= 50; p += 3)
    for (int q = 1; q <= 50; q += 2) {
      if (oracle::gcd(p, q) != 1) continue;
      for (int t1 = 0; t1 <= 5; ++t1)
        for (int t2 = 0; t2 <= 5; ++t2) {
          if (t1 == 0 && t2 == 0) continue;
          const ChargeVector t(t1, t2);
          for (const Int& c : thresholds) {
            const auto s = construct(Filling(p, q), t, c);
            ASSERT_TRUE(verify_solution(s)) << p << "/" << q << " " << t.str();
            ASSERT_TRUE(verify_trace(s));
            ASSERT_GT(s.det, c);
            // Minimality of beta: one less would not clear the threshold.
            const Int beta = *s.trace->beta;
            const Int t1e = t1 == 0 ? t2 : t1;
            const Int coef = (p >= 2 ? Int(p - 1) : Int(1)) * t1e * t1e * q * q;
            EXPECT_EQ(s.det, coef * beta * beta);
            if (beta > 1) EXPECT_LE(coef * (beta - 1) * (beta - 1), c);
          }
        }
    }
}

TEST(BosonicConstruct, Examples) {
  // m = 1 route: inner (1, 30, 5) at filling 6, scaled by alpha q = 10.
  const auto a = bosonic_family(Filling(3, 5), kT10, 2, 1);
  expect_k(a, 10, 300, 50, 500);
  EXPECT_EQ(parity_class(a.kmatrix), ParityClass::kBosonic);
  const KMatrix inner{1, 6 * (6 * 1 - 1), 6 * 1 - 1};
  EXPECT_EQ(a.kmatrix, inner.scaled(10));

  const auto b = bosonic_family(Filling(1), kT11, 2, 1);
  expect_k(b, 2, 10, 4, 4);
  EXPECT_EQ(parity_class(b.kmatrix), ParityClass::kBosonic);

  EXPECT_THROW(bosonic_construct(Filling(1), kT11, 0, 3), std::invalid_argument);
  EXPECT_THROW(bosonic_construct(Filling(1), kT11, 0, 0), std::invalid_argument);
}

TEST(BosonicConstruct, AllEvenAndMonotone) {
  for (int p = 1; p <= 15; ++p)
    for (int q = 1; q <= 15; ++q) {
      if (oracle::gcd(p, q) != 1) continue;
      for (const auto& t : {kT10, kT11, ChargeVector(2, 1), ChargeVector(0, 3)}) {
        Int prev = 0;
        for (int beta = 1; beta <= 6; ++beta) {
          const auto s = bosonic_family(Filling(p, q), t, 4, beta);
          ASSERT_TRUE(verify_solution(s));
          ASSERT_TRUE(verify_trace(s));
          EXPECT_EQ(s.kmatrix.m % 2, 0);
          EXPECT_EQ(s.kmatrix.n % 2, 0);
          EXPECT_EQ(s.kmatrix.l % 2, 0);
          EXPECT_GT(s.det, prev);
          prev = s.det;
        }
        const auto big = bosonic_construct(Filling(p, q), t, Int(1000000));
        EXPECT_GT(big.det, 1000000);
        EXPECT_EQ(parity_class(big.kmatrix), ParityClass::kBosonic);
      }
    }
}

TEST(FermionicObstruction, Examples) {
  EXPECT_EQ(fermionic_obstruction(Filling(2), kT10), Obstruction::kObstructed);
  EXPECT_EQ(fermionic_obstruction(Filling(2), ChargeVector(0, 1)), Obstruction::kObstructed);
  EXPECT_EQ(fermionic_obstruction(Filling(1, 2), kT10), Obstruction::kUnknown);
  EXPECT_EQ(fermionic_obstruction(Filling(2, 3), kT11), Obstruction::kUnknown);
}

TEST(FermionicObstruction, ObstructedCasesHaveNoOddDiagonalSolution) {
  for (int p = 2; p <= 8; p += 2)
    for (int q = 1; q <= 7; q += 2) {
      if (oracle::gcd(p, q) != 1) continue;
      ASSERT_EQ(fermionic_obstruction(Filling(p, q), kT10), Obstruction::kObstructed);
      for (int m = 1; m <= 41; m += 2)
        for (int n = 1; n <= 41; n += 2)
          for (int l = 0; l * l < m * n; ++l) EXPECT_FALSE(oracle::produces(m, n, l, 1, 0, p, q));
    }
}
