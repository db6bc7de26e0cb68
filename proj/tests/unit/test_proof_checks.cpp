#include <gtest/gtest.h>

#include "dwpf/proof_checks.hpp"
#include "support.hpp"

using namespace dwpf;
using testing_support::q;
using testing_support::qs;

namespace {

struct Prefixed {
  SpinSystem<Rational> system;
  RapiditySet<Rational> prefix;
};

Prefixed prefixed(int two_S, std::size_t n, std::uint64_t trial) {
  auto rng = trial_engine(99, two_S, n, trial);
  Instance in = random_instance(two_S, n, rng);
  in.nu.values.pop_back();
  return {in.system, in.nu};
}

}  // namespace

TEST(ResidueEps1, SpinHalfBaseCase) {
  SpinSystem<Rational> sys(1, qs({"0", "1"}));
  RapiditySet<Rational> prefix{qs({"5/3"})};
  auto r = check_residue_eps1(sys, prefix);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.right, 1 / (q("5/3") - 1));
  EXPECT_EQ(r.mode, Mode::Exact);
  EXPECT_EQ(r.check, "residue_eps1");
}

TEST(ResidueEps1, SingleSpinHalfResidueIsOne) {
  SpinSystem<Rational> sys(1, qs({"2"}));
  auto r = check_residue_eps1(sys, RapiditySet<Rational>{});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.left, 1);
}

TEST(ResidueEps1, HigherSpins) {
  for (auto [two_S, n] : {std::pair{2, 2}, {3, 3}, {4, 2}, {2, 1}}) {
    auto p = prefixed(two_S, n, 0);
    auto r = check_residue_eps1(p.system, p.prefix);
    EXPECT_TRUE(r.holds) << two_S << " " << n;
    EXPECT_EQ(r.right, two_S * z_determinant(p.system.lowered(), p.prefix).value);
    EXPECT_EQ(r.metric("partial_fractions_consistent"), 1.0);
    EXPECT_GE(r.metric("probe_ratio_1"), 10.0);
    EXPECT_GE(r.metric("probe_ratio_2"), 10.0);
  }
}

TEST(ResidueEpsj, SpinHalfPair) {
  SpinSystem<Rational> sys(1, qs({"0", "1"}));
  RapiditySet<Rational> prefix{qs({"7/2"})};
  auto r = check_residue_epsj(sys, prefix, 1);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.right, 1 / q("7/2"));
  EXPECT_EQ(r.check, "residue_eps2");
}

TEST(ResidueEpsj, SpinOneThreeSites) {
  auto p = prefixed(2, 3, 1);
  for (std::size_t j : {1u, 2u}) {
    auto r = check_residue_epsj(p.system, p.prefix, j);
    EXPECT_TRUE(r.holds) << j;
    EXPECT_EQ(r.right, z_determinant(p.system.without_spin(j), p.prefix).value);
  }
}

TEST(ResidueChecks, Preconditions) {
  auto p = prefixed(2, 2, 0);
  RapiditySet<Rational> short_prefix = p.prefix;
  short_prefix.values.pop_back();
  try {
    check_residue_eps1(p.system, short_prefix);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CardinalityMismatch);
  }
  SpinSystem<Rational> lone(2, qs({"0"}));
  EXPECT_THROW(check_residue_epsj(lone, RapiditySet<Rational>{qs({"3"})}, 1), Error);
}

TEST(ResidueChecks, FloatModeReportsFloat) {
  auto p = prefixed(2, 2, 2);
  auto r = check_residue_eps1(convert_system<Complex>(p.system),
                              convert_rapidities<Complex>(p.prefix));
  EXPECT_EQ(r.mode, Mode::Float);
  EXPECT_TRUE(agrees(r.left, r.right, 1e-6));
}

TEST(InfinityLimit, SpinOneAndSpinHalf) {
  std::vector<Rational> scales{Rational(1000), Rational(1000000)};
  SpinSystem<Rational> one(2, qs({"0", "1"}));
  auto r = check_infinity_limit(one, RapiditySet<Rational>{qs({"2", "3", "5"})},
                                std::span<const Rational>(scales));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.left, 0);
  EXPECT_LT(r.metric("abs_z_2"), r.metric("abs_z_1"));
  EXPECT_GE(r.metric("decay_factor"), 100.0);

  SpinSystem<Rational> half(1, qs({"0", "1", "2"}));
  auto h = check_infinity_limit(half, RapiditySet<Rational>{qs({"-1/2", "7/3", "9"})},
                                std::span<const Rational>(scales));
  EXPECT_TRUE(h.holds);
}

TEST(InfinityLimit, ScalesMustIncrease) {
  std::vector<Rational> scales{Rational(1000), Rational(10)};
  SpinSystem<Rational> one(2, qs({"0", "1"}));
  EXPECT_THROW(check_infinity_limit(one, RapiditySet<Rational>{qs({"2", "3", "5"})},
                                    std::span<const Rational>(scales)),
               Error);
}

TEST(IdentitySweep, AllHoldAndAreOrdered) {
  SweepConfig c;
  c.grid = {{1, 3}, {2, 2}, {3, 2}};
  c.trials = 4;
  auto reports = identity_sweep<Rational>(c);
  ASSERT_EQ(reports.size(), 12u);
  EXPECT_TRUE(all_hold<Rational>(reports));
  EXPECT_EQ(reports[5].instance.two_S, 2);
  EXPECT_EQ(reports[5].instance.trial, 1u);
  EXPECT_EQ(reports[5].instance.seed, 42u);
}

TEST(IdentitySweep, ReproducibleAcrossThreadCounts) {
  SweepConfig c;
  c.grid = {{2, 3}, {4, 2}};
  c.trials = 5;
  c.seed = 1234;
  c.threads = 1;
  auto serial = identity_sweep<Rational>(c);
  c.threads = 4;
  auto parallel = identity_sweep<Rational>(c);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].left, parallel[i].left);
    EXPECT_EQ(serial[i].right, parallel[i].right);
    EXPECT_EQ(serial[i].instance.trial, parallel[i].instance.trial);
  }
  c.seed = 1235;
  auto other = identity_sweep<Rational>(c);
  EXPECT_NE(other[0].left, serial[0].left);
}

TEST(IdentitySweep, CostGuardBeforeWork) {
  SweepConfig c;
  c.grid = {{2, 2}, {10, 6}};
  try {
    identity_sweep<Rational>(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CostGuard);
  }
}

TEST(Suites, ResiduesLimitsBorchardtBoson) {
  SweepConfig c;
  c.grid = {{2, 3}, {3, 2}};
  c.trials = 2;
  auto res = residue_sweep<Rational>(c);
  EXPECT_EQ(res.size(), 2u * 3 + 2u * 2);
  EXPECT_TRUE(all_hold<Rational>(res));
  EXPECT_TRUE(all_hold<Rational>(limit_sweep<Rational>(c)));

  SweepConfig b;
  b.grid = {{0, 4}, {0, 6}};
  b.trials = 3;
  EXPECT_TRUE(all_hold<Rational>(borchardt_sweep<Rational>(b)));

  SweepConfig bo;
  bo.grid = {{2, 1}, {3, 2}};
  bo.trials = 3;
  auto boson = boson_sweep<Rational>(bo);
  EXPECT_TRUE(all_hold<Rational>(boson));
  EXPECT_EQ(boson.back().instance.extra, 2u);
}

TEST(CheckReport, MissingMetricIsNaN) {
  CheckReport<Rational> r;
  EXPECT_TRUE(std::isnan(r.metric("absent")));
}
