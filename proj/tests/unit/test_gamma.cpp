#include <gtest/gtest.h>

#include <algorithm>

#include "dwpf/combinatorics.hpp"
#include "dwpf/gamma.hpp"
#include "support.hpp"

using namespace dwpf;
using testing_support::distinct_rationals;
using testing_support::q;
using testing_support::qs;

namespace {

std::vector<Rational> random_nu(std::mt19937_64& rng, std::size_t omega) {
  std::vector<Rational> nu;
  for (std::size_t i = 0; i < omega; ++i) nu.push_back(random_rational(rng));
  return nu;
}

}  // namespace

TEST(LambdaDerivatives, SingleRapidity) {
  std::vector<Rational> nu{Rational(0)};
  auto t0 = lambda_derivatives<Rational>(nu, Rational(1), 0);
  EXPECT_EQ(t0.values, qs({"1"}));
  auto t1 = lambda_derivatives<Rational>(nu, Rational(1), 1);
  EXPECT_EQ(t1.values, qs({"1", "-1"}));
  EXPECT_EQ(t1.order, 1);
}

TEST(LambdaDerivatives, MatchesQuotientRuleOracle) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 5; ++rep) {
    auto nu = random_nu(rng, 5);
    Rational z = distinct_rationals(rng, 1, nu)[0];
    auto table = lambda_derivatives<Rational>(nu, z, 4);
    for (int a = 0; a <= 4; ++a)
      EXPECT_EQ(table[a], oracle::lambda_derivative(nu, z, a)) << "a=" << a;
  }
}

TEST(LambdaDerivatives, PoleIsReported) {
  auto nu = qs({"1/2", "3"});
  try {
    lambda_derivatives<Rational>(nu, q("3"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtEvaluationPoint);
  }
}

TEST(GammaRecursive, FirstTerms) {
  auto nu = qs({"2", "3", "5"});
  auto lam = lambda_derivatives<Rational>(nu, Rational(0), 2);
  EXPECT_EQ(gamma_recursive(lam, 0), qs({"-1"}));
  auto g1 = gamma_recursive(lam, 1);
  EXPECT_EQ(g1[1], -lam[0]);
}

TEST(GammaRecursive, MatchesPolynomialOracle) {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 5; ++rep) {
    auto nu = random_nu(rng, 3);
    Rational z = distinct_rationals(rng, 1, nu)[0];
    auto lam = lambda_derivatives<Rational>(nu, z, 3);
    auto gs = gamma_recursive(lam, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(gs[n], oracle::gamma(nu, z, n)) << n;
  }
}

TEST(GammaRecursive, NeedsEnoughDerivatives) {
  auto nu = qs({"2", "3"});
  auto lam = lambda_derivatives<Rational>(nu, Rational(0), 1);
  try {
    gamma_recursive(lam, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientDerivatives);
  }
  EXPECT_THROW(gamma_explicit(lam, 4), Error);
}

TEST(GammaPartitionCoefficient, Examples) {
  std::vector<unsigned> k1{1, 0};
  EXPECT_EQ(gamma_partition_coefficient(k1, 1), 1);
  std::vector<unsigned> k2a{2, 0, 0}, k2b{0, 1, 0};
  EXPECT_EQ(gamma_partition_coefficient(k2a, 2), 1);
  EXPECT_EQ(gamma_partition_coefficient(k2b, 2), 1);
  std::vector<unsigned> k3{1, 1, 0, 0};
  EXPECT_EQ(gamma_partition_coefficient(k3, 3), 3);
  std::vector<unsigned> off{1, 0, 0};
  EXPECT_EQ(gamma_partition_coefficient(off, 2), 0);
}

TEST(GammaPartitionCoefficient, ReproducesRecursionPolynomial) {
  // The recursion, expanded symbolically, must carry exactly -C^n_k on every
  // monomial and nothing else.
  for (unsigned n = 1; n <= 6; ++n) {
    TowerPolynomial p = gamma_polynomial(static_cast<int>(n));
    auto ks = weighted_partitions(n);
    EXPECT_EQ(p.terms().size(), ks.size()) << n;
    for (const auto& k : ks) {
      Rational expected = -gamma_partition_coefficient(k, n);
      EXPECT_EQ(Rational(p.coefficient(k)), expected) << "n=" << n;
    }
  }
}

TEST(GammaExplicit, LowOrders) {
  auto nu = qs({"2", "3", "5"});
  auto lam = lambda_derivatives<Rational>(nu, q("1/2"), 3);
  EXPECT_EQ(gamma_explicit(lam, 0), -1);
  EXPECT_EQ(gamma_explicit(lam, 1), -lam[0]);
  EXPECT_EQ(gamma_explicit(lam, 2), -lam[1] - lam[0] * lam[0]);
  EXPECT_EQ(gamma_explicit(lam, 3),
            -lam[2] - 3 * lam[0] * lam[1] - lam[0] * lam[0] * lam[0]);
}

TEST(GammaRoutes, ThreeWayAgreement) {
  std::mt19937_64 rng(23);
  for (std::size_t omega = 1; omega <= 10; omega += 3) {
    auto nu = random_nu(rng, omega);
    Rational z = distinct_rationals(rng, 1, nu)[0];
    auto lam = lambda_derivatives<Rational>(nu, z, 6);
    auto rec = gamma_recursive(lam, 6);
    for (int n = 0; n <= 6; ++n) {
      Rational poly = oracle::gamma(nu, z, n);
      EXPECT_EQ(rec[n], poly) << "omega=" << omega << " n=" << n;
      EXPECT_EQ(gamma_explicit(lam, n), poly) << "omega=" << omega << " n=" << n;
      EXPECT_EQ(gamma_at<Rational>(nu, z, n), poly);
    }
  }
}

TEST(GammaRoutes, FloatModeTracksExact) {
  auto nu = qs({"2", "-3/2", "5", "7/3"});
  std::vector<Complex> nu_f;
  for (const auto& v : nu) nu_f.push_back(v.get_d());
  for (int n = 0; n <= 4; ++n)
    EXPECT_TRUE(agrees(gamma_at<Complex>(nu_f, Complex(0.25), n),
                       Complex(oracle::gamma(nu, q("1/4"), n).get_d())));
}

TEST(GammaTable, SpinHalfSingleSite) {
  SpinSystem<Rational> sys(1, {Rational(0)});
  RapiditySet<Rational> nu{{Rational(2)}};
  auto table = build_gamma_table(sys, nu);
  EXPECT_EQ(table.gammas_at_eps1, qs({"-1", "1/2"}));
  EXPECT_TRUE(table.gamma1_at_others.empty());
}

TEST(GammaTable, MatchesOracleAndIsSymmetric) {
  std::mt19937_64 rng(24);
  SpinSystem<Rational> sys(2, qs({"0", "1"}));
  auto nu_v = distinct_rationals(rng, 3, {Rational(0), Rational(1)});
  RapiditySet<Rational> nu{nu_v};
  auto table = build_gamma_table(sys, nu);
  ASSERT_EQ(table.gammas_at_eps1.size(), 3u);
  for (int n = 0; n <= 2; ++n)
    EXPECT_EQ(table.gammas_at_eps1[n], oracle::gamma(nu_v, Rational(0), n));
  EXPECT_EQ(table.gamma1_at_others[0], oracle::gamma(nu_v, Rational(1), 1));
  auto lam = lambda_derivatives<Rational>(nu_v, Rational(1), 0);
  EXPECT_EQ(table.gamma1_at_others[0], -lam[0]);

  RapiditySet<Rational> shuffled{{nu_v[2], nu_v[0], nu_v[1]}};
  auto again = build_gamma_table(sys, shuffled);
  EXPECT_EQ(again.gammas_at_eps1, table.gammas_at_eps1);
  EXPECT_EQ(again.gamma1_at_others, table.gamma1_at_others);
}

TEST(GammaTable, Errors) {
  SpinSystem<Rational> sys(2, qs({"0", "1"}));
  try {
    build_gamma_table(sys, RapiditySet<Rational>{qs({"2", "3"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CardinalityMismatch);
  }
  try {
    build_gamma_table(sys, RapiditySet<Rational>{qs({"2", "1", "5"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtEvaluationPoint);
  }
}

TEST(PoleWeights, AreElementarySymmetricFunctions) {
  auto nu = qs({"2", "3", "5", "-1/2"});
  const Rational z = q("1/3");
  std::vector<Rational> gammas;
  for (int n = 0; n <= 4; ++n) gammas.push_back(oracle::gamma(nu, z, n));
  auto w = pole_weights<Rational>(gammas);
  std::vector<Rational> x;
  for (const auto& v : nu) x.push_back(1 / (v - z));
  // e_n of x by the product prod (1 + x_i t).
  std::vector<Rational> e{Rational(1)};
  for (const auto& xi : x) {
    e.push_back(Rational(0));
    for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += xi * e[k - 1];
  }
  EXPECT_EQ(w, e);
}
