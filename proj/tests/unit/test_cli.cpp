#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "dwpf/partition.hpp"
#include "support.hpp"

using Json = nlohmann::json;
using testing_support::q;
using testing_support::qs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json doc() const { return Json::parse(out); }
};

Run rg_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = rg::run(args, out, err);
  return {code, out.str(), err.str()};
}

dwpf::Rational rational_of(const Json& j) {
  dwpf::Rational r(mpz_class(j.at("num").get<std::string>()),
                   mpz_class(j.at("den").get<std::string>()));
  r.canonicalize();
  return r;
}

}  // namespace

TEST(CliPf, DeterminantMatchesPermanentRoute) {
  auto det = rg_run({"pf", "--two-s", "2", "--eps", "0,1", "--nu", "2,3,5", "--method", "det",
                     "--mode", "exact"});
  ASSERT_EQ(det.code, 0) << det.out;
  auto d = det.doc();
  EXPECT_EQ(d["schema"], "rg-dwpf/1");
  EXPECT_EQ(d["method"], "determinant");
  dwpf::SpinSystem<dwpf::Rational> sys(2, qs({"0", "1"}));
  auto perm = dwpf::z_permanent(sys, dwpf::RapiditySet<dwpf::Rational>{qs({"2", "3", "5"})});
  EXPECT_EQ(rational_of(d["value"]), perm.value);

  auto both = rg_run({"pf", "--two-s", "2", "--eps", "0,1", "--nu", "2,3,5", "--method", "both"});
  ASSERT_EQ(both.code, 0);
  EXPECT_TRUE(both.doc()["agree"].get<bool>());
  EXPECT_EQ(both.doc()["permanent"], d["value"]);
}

TEST(CliPf, OutputIsByteIdenticalAndCanonical) {
  std::vector<std::string> args{"pf", "--two-s", "3", "--eps", "0.5,2/4,7",
                                "--nu", "1,2,3,4,5"};
  auto first = rg_run(args);
  // 0.5 and 2/4 are the same epsilon.
  EXPECT_EQ(first.code, 1);
  EXPECT_EQ(first.doc()["error"]["kind"], "DegenerateEpsilons");

  std::vector<std::string> ok{"pf", "--two-s", "3", "--eps", "0.5,-2/4,7", "--nu",
                              "-1,2,3,4,5"};
  auto a = rg_run(ok), b = rg_run(ok);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  auto v = a.doc()["value"];
  mpz_class num(v["num"].get<std::string>()), den(v["den"].get<std::string>());
  EXPECT_GT(den, 0);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  EXPECT_EQ(g, 1);
  EXPECT_EQ(a.doc()["job"],
            "pf --two-s=3 --eps=1/2,-1/2,7 --nu=-1,2,3,4,5 --method=det --mode=exact");
}

TEST(CliPf, FloatModeAcceptsComplex) {
  auto r = rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "1+1i", "--mode", "f64"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto v = r.doc()["value"];
  EXPECT_NEAR(v["re"].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(v["im"].get<double>(), -0.5, 1e-15);
}

TEST(CliVerify, IdentitySuiteCountsAndCsv) {
  auto r = rg_run({"verify", "--suite", "identity", "--two-s", "1", "--n", "4", "--trials",
                   "50", "--seed", "42"});
  ASSERT_EQ(r.code, 0);
  auto d = r.doc();
  EXPECT_EQ(d["passed"], 50);
  EXPECT_EQ(d["failed"], 0);
  EXPECT_EQ(d["reports"].size(), 50u);

  auto csv = rg_run({"verify", "--suite", "boson", "--n", "3", "--m", "2", "--trials", "3",
                     "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "check,two_s,n,trial,holds");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",true"), std::string::npos);
  }
  EXPECT_EQ(rows, 3);
}

TEST(CliVerify, OtherSuites) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"verify", "--suite", "residues", "--two-s", "2", "--n", "2",
                                 "--trials", "2"},
        {"verify", "--suite", "limit", "--two-s", "3", "--n", "2", "--trials", "2"},
        {"verify", "--suite", "borchardt", "--n", "5", "--trials", "2"}}) {
    auto r = rg_run(args);
    EXPECT_EQ(r.code, 0) << args[2];
    EXPECT_EQ(r.doc()["failed"], 0);
  }
  EXPECT_EQ(rg_run({"verify", "--suite", "identity", "--n", "3"}).code, 1);
  EXPECT_EQ(rg_run({"verify", "--suite", "boson", "--n", "3"}).code, 1);
  auto guard = rg_run({"verify", "--suite", "identity", "--two-s", "10", "--n", "6"});
  EXPECT_EQ(guard.code, 1);
  EXPECT_EQ(guard.doc()["error"]["kind"], "CostGuard");
}

TEST(CliGamma, MatchesOracle) {
  auto r = rg_run({"gamma", "--nu", "2,3,5", "--z", "0", "--order", "2", "--mode", "exact"});
  ASSERT_EQ(r.code, 0);
  auto d = r.doc();
  auto nu = qs({"2", "3", "5"});
  ASSERT_EQ(d["gammas"].size(), 3u);
  EXPECT_EQ(rational_of(d["gammas"][0]), -1);
  for (int n = 0; n <= 2; ++n) {
    EXPECT_EQ(rational_of(d["gammas"][n]), oracle::gamma(nu, dwpf::Rational(0), n));
    EXPECT_EQ(d["gammas_explicit"][n], d["gammas"][n]);
  }
  EXPECT_TRUE(d["routes_agree"].get<bool>());

  auto pole = rg_run({"gamma", "--nu", "2,3", "--z", "3", "--order", "1"});
  EXPECT_EQ(pole.code, 1);
  EXPECT_EQ(pole.doc()["error"]["kind"], "PoleAtEvaluationPoint");
}

TEST(CliCoeffs, SpinThreeHalvesList) {
  auto r = rg_run({"coeffs", "--two-s", "3", "--eps", "0,2,-1/3"});
  ASSERT_EQ(r.code, 0);
  auto d = r.doc();
  auto p = oracle::spin_three_halves(q("0"), q("2"), q("-1/3"));
  EXPECT_EQ(rational_of(d["c11"][0]), p.c0_11);
  EXPECT_EQ(rational_of(d["c11"][3]), p.c3_11);
  EXPECT_EQ(rational_of(d["c1j"]["2"][1]), p.c1_12);
  EXPECT_EQ(rational_of(d["c1j"]["3"][2]), p.c2_13);
  EXPECT_EQ(rational_of(d["c0_diag"]["3"]), p.c0_33);
  EXPECT_EQ(rational_of(d["c0_off"]["2,3"]), p.c0_23);
  EXPECT_EQ(rational_of(d["c0_off"]["3,1"]), p.c0_31);
}

TEST(CliBethe, SolveAndEvaluate) {
  auto r = rg_run({"bethe", "--eps", "0,1,2,3", "--g", "1", "--occupation", "1,1,0,0"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto d = r.doc();
  EXPECT_EQ(d["mode"], "f64");
  EXPECT_LT(d["quad_residual_max"].get<double>(), 1e-12);
  EXPECT_LT(d["route_gap"].get<double>(), 1e-8);
  double shift = d["dual_Lambda"][0]["re"].get<double>() - d["Lambda"][0]["re"].get<double>();
  EXPECT_NEAR(shift, -2.0, 1e-12);

  // 3 - 1/4 solves the single-level equation at g = 1/2 exactly.
  auto exact = rg_run({"bethe", "--eps", "3", "--g", "1/2", "--lambdas", "11/4", "--mode",
                       "exact"});
  ASSERT_EQ(exact.code, 0) << exact.out;
  EXPECT_EQ(rational_of(exact.doc()["richardson_residuals"][0]), 0);
  EXPECT_EQ(rational_of(exact.doc()["Lambda"][0]), 4);
  EXPECT_EQ(rational_of(exact.doc()["quad_residuals"][0]), 0);

  auto lam = rg_run({"bethe", "--eps", "0,1", "--g", "1", "--Lambda", "0,0", "--mode", "exact"});
  ASSERT_EQ(lam.code, 0);
  EXPECT_EQ(rational_of(lam.doc()["dual_Lambda"][1]), -2);
}

TEST(CliBethe, UsageErrors) {
  EXPECT_EQ(rg_run({"bethe", "--eps", "0,1", "--g", "1", "--occupation", "1,0", "--mode",
                    "exact"})
                .code,
            1);
  EXPECT_EQ(rg_run({"bethe", "--eps", "0,1", "--g", "1"}).code, 1);
  EXPECT_EQ(rg_run({"bethe", "--eps", "0,1", "--g", "1", "--occupation", "1,2"}).code, 1);
  EXPECT_EQ(rg_run({"bethe", "--eps", "0,1", "--g", "0", "--occupation", "1,0"}).code, 1);
}

TEST(CliErrors, StructuredAndExitCodes) {
  auto complex_exact = rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "1+2i"});
  EXPECT_EQ(complex_exact.code, 1);
  auto d = complex_exact.doc();
  EXPECT_EQ(d["error"]["kind"], "Usage");
  EXPECT_FALSE(d["error"]["detail"].get<std::string>().empty());
  EXPECT_FALSE(complex_exact.err.empty());

  EXPECT_EQ(rg_run({"frobnicate"}).code, 1);
  EXPECT_EQ(rg_run({}).code, 1);
  EXPECT_EQ(rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "abc"}).code, 1);
  EXPECT_EQ(rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "1,"}).code, 1);
  EXPECT_EQ(rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "1", "--mode", "f32"}).code, 1);
  EXPECT_EQ(rg_run({"pf", "--two-s", "2", "--eps", "0", "--nu", "1"}).doc()["error"]["kind"],
            "CardinalityMismatch");
  EXPECT_EQ(rg_run({"--help"}).code, 0);
}

TEST(CliErrors, NumericalFailureIsThree) {
  auto r = rg_run({"pf", "--two-s", "1", "--eps", "0", "--nu", "1e-320", "--mode", "f64"});
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(r.doc()["error"]["kind"], "NonFiniteEntry");
}

TEST(CliOut, WritesFile) {
  auto path = std::filesystem::temp_directory_path() / "rg_cli_test_out.json";
  std::filesystem::remove(path);
  auto r = rg_run({"coeffs", "--two-s", "1", "--eps", "0,1", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  Json d = Json::parse(in);
  EXPECT_EQ(d["command"], "coeffs");
  std::filesystem::remove(path);
}

TEST(JobSpec, RoundTripIsCanonical) {
  const std::vector<std::vector<std::string>> inputs = {
      {"pf", "--mode", "exact", "--nu", "2.50,-3,1e2", "--eps", "0, 1", "--two-s", "2"},
      {"verify", "--suite", "boson", "--n", "3", "--m", "1", "--two-s", "4", "--format", "csv"},
      {"gamma", "--nu", "6/4", "--z", "0.0", "--order", "3"},
      {"bethe", "--eps", "0,1", "--g", "0.5", "--occupation", "0,1", "--mode", "f64"},
      {"bethe", "--eps", "0,1", "--g", "1", "--lambdas", "-1+0.5i,-1-1/2i"},
      {"coeffs", "--two-s", "3", "--eps", "1,-2/6,3.25", "--out", "x.json"},
  };
  for (const auto& in : inputs) {
    rg::JobSpec once = rg::parse_job(in);
    auto canonical = rg::serialize(once);
    rg::JobSpec twice = rg::parse_job(canonical);
    EXPECT_EQ(once, twice) << canonical[0];
    EXPECT_EQ(rg::serialize(twice), canonical);
  }
  auto pf = rg::parse_job(inputs[0]);
  EXPECT_EQ(pf.nu, (std::vector<std::string>{"5/2", "-3", "100"}));
  EXPECT_EQ(pf.eps, (std::vector<std::string>{"0", "1"}));
  EXPECT_FALSE(rg::parse_job(inputs[1]).two_s.has_value());
  auto bethe = rg::parse_job(inputs[4]);
  EXPECT_EQ(bethe.lambdas, (std::vector<std::string>{"-1+1/2i", "-1-1/2i"}));
}

TEST(JobSpec, CanonicalNumbers) {
  EXPECT_EQ(rg::canonical_number("-0.750", true), "-3/4");
  EXPECT_EQ(rg::canonical_number("-6/3", false), "-2");
  EXPECT_THROW(rg::canonical_number("4/-2", false), rg::UsageError);
  EXPECT_EQ(rg::canonical_number("0+2i", false), "2i");
  EXPECT_EQ(rg::canonical_number("3-0i", false), "3");
  EXPECT_EQ(rg::canonical_number("-i", false), "-1i");
  EXPECT_THROW(rg::canonical_number("1i", true), rg::UsageError);
}
