#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>

#include "dwpf/bethe.hpp"
#include "dwpf/proof_checks.hpp"

namespace rg {
namespace {

using dwpf::Complex;
using dwpf::Rational;
using dwpf::Scalar;
using Json = nlohmann::ordered_json;

struct HelpRequested {
  std::string text;
};

std::vector<std::string> split_list(const std::string& s, const char* flag) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  if (s.back() == ',') throw UsageError(std::string(flag) + ": trailing comma");
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) throw UsageError(std::string(flag) + ": empty list entry");
    out.push_back(item);
  }
  return out;
}

std::vector<std::string> canonical_list(const std::string& s, const char* flag, bool exact) {
  auto items = split_list(s, flag);
  for (auto& x : items) x = canonical_number(x, exact);
  return items;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// Raw option storage shared by every subcommand.
struct Raw {
  std::string mode = "exact", eps, nu, method = "det", suite, z, g, occupation, lambdas,
              Lambda, format = "json", out;
  int two_s = 0, order = 0;
  std::size_t n = 0, m = 0, trials = 20;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

}  // namespace

std::string canonical_number(const std::string& text, bool exact) {
  dwpf::ExactComplex c;
  try {
    c = dwpf::parse_complex_exact(text);
  } catch (const dwpf::Error& e) {
    throw UsageError(e.what());
  }
  if (c.is_complex && exact)
    throw UsageError("exact mode takes real rationals only, got \"" + text + "\"");
  if (c.im == 0) return dwpf::format_rational(c.re);
  std::string im = dwpf::format_rational(Rational(abs(c.im))) + "i";
  const char* sign = c.im < 0 ? "-" : "+";
  if (c.re == 0) return (c.im < 0 ? "-" : "") + im;
  return dwpf::format_rational(c.re) + sign + im;
}

JobSpec parse_job(const std::vector<std::string>& args) {
  CLI::App app{"Domain-wall partition functions, their determinant form and Bethe solvers",
               "rg"};
  app.require_subcommand(1);
  Raw raw;
  auto mode = [&](CLI::App* s) {
    s->add_option("--mode", raw.mode, "exact | f64")->check(CLI::IsMember({"exact", "f64"}));
    s->add_option("--out", raw.out, "write the document to this file");
  };
  auto* pf = app.add_subcommand("pf", "partition function Z");
  pf->add_option("--two-s", raw.two_s, "twice the large spin")->required();
  pf->add_option("--eps", raw.eps, "comma-separated inhomogeneities")->required();
  pf->add_option("--nu", raw.nu, "comma-separated rapidities")->required();
  pf->add_option("--method", raw.method)->check(CLI::IsMember({"perm", "det", "both"}));
  mode(pf);

  auto* verify = app.add_subcommand("verify", "randomized identity sweeps");
  verify->add_option("--suite", raw.suite)
      ->required()
      ->check(CLI::IsMember({"identity", "residues", "limit", "borchardt", "boson"}));
  verify->add_option("--two-s", raw.two_s);
  verify->add_option("--n", raw.n, "number of spins (boson: N)")->required();
  verify->add_option("--m", raw.m, "boson suite: extra rapidities M");
  verify->add_option("--trials", raw.trials);
  verify->add_option("--seed", raw.seed);
  verify->add_option("--threads", raw.threads, "0 = all cores");
  verify->add_option("--format", raw.format)->check(CLI::IsMember({"json", "csv"}));
  mode(verify);

  auto* gamma = app.add_subcommand("gamma", "Gamma_n(z) table");
  gamma->add_option("--nu", raw.nu)->required();
  gamma->add_option("--z", raw.z)->required();
  gamma->add_option("--order", raw.order)->required()->check(CLI::NonNegativeNumber);
  mode(gamma);

  auto* bethe = app.add_subcommand("bethe", "Richardson / eigenvalue-based Bethe equations");
  bethe->add_option("--eps", raw.eps)->required();
  bethe->add_option("--g", raw.g)->required();
  bethe->add_option("--occupation", raw.occupation, "comma-separated 0/1 per level");
  bethe->add_option("--lambdas", raw.lambdas, "rapidities to evaluate");
  bethe->add_option("--Lambda", raw.Lambda, "eigenvalue-based variables to evaluate");
  mode(bethe);

  auto* coeffs = app.add_subcommand("coeffs", "structure coefficients of J^S");
  coeffs->add_option("--two-s", raw.two_s)->required();
  coeffs->add_option("--eps", raw.eps)->required();
  mode(coeffs);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  JobSpec job;
  job.command = sub->get_name();
  if (job.command == "bethe" && sub->count("--mode") == 0) raw.mode = "f64";
  job.mode = raw.mode;
  const bool exact = job.mode == "exact";
  auto given = [&](const char* flag) { return sub->get_option_no_throw(flag) && sub->count(flag) > 0; };

  if (given("--two-s")) job.two_s = raw.two_s;
  job.eps = canonical_list(raw.eps, "--eps", exact);
  job.nu = canonical_list(raw.nu, "--nu", exact);
  job.out = raw.out;

  if (job.command == "pf") {
    job.method = raw.method;
  } else if (job.command == "verify") {
    job.suite = raw.suite;
    job.n = raw.n;
    if (given("--m")) job.m = raw.m;
    job.trials = raw.trials;
    job.seed = raw.seed;
    job.threads = raw.threads;
    job.format = raw.format;
    const bool needs_spin = job.suite != "borchardt" && job.suite != "boson";
    if (needs_spin && !job.two_s) throw UsageError("--two-s is required for suite " + job.suite);
    if (job.suite == "boson" && !job.m) throw UsageError("--m is required for suite boson");
    if (!needs_spin) job.two_s.reset();
  } else if (job.command == "gamma") {
    job.z = canonical_number(raw.z, exact);
    job.order = raw.order;
  } else if (job.command == "bethe") {
    job.g = canonical_number(raw.g, exact);
    for (const auto& o : split_list(raw.occupation, "--occupation")) {
      if (o != "0" && o != "1") throw UsageError("--occupation entries must be 0 or 1");
      job.occupation.push_back(o == "1");
    }
    job.lambdas = canonical_list(raw.lambdas, "--lambdas", exact);
    job.Lambda = canonical_list(raw.Lambda, "--Lambda", exact);
    if (!job.lambdas.empty() && !job.Lambda.empty())
      throw UsageError("give --lambdas or --Lambda, not both");
    const bool evaluate = !job.lambdas.empty() || !job.Lambda.empty();
    if (!evaluate && exact)
      throw UsageError("the Bethe solvers run in f64 only; exact mode evaluates --lambdas or --Lambda");
    if (!evaluate && job.occupation.empty())
      throw UsageError("solving needs --occupation");
    if (!job.occupation.empty() && job.occupation.size() != job.eps.size())
      throw UsageError("--occupation needs one entry per level");
  }
  return job;
}

std::vector<std::string> serialize(const JobSpec& job) {
  std::vector<std::string> a{job.command};
  auto flag = [&](const char* name, const std::string& value) {
    a.push_back(std::string(name) + "=" + value);
  };
  auto list = [&](const char* name, const std::vector<std::string>& xs) {
    if (!xs.empty()) flag(name, join(xs, ","));
  };
  if (job.command == "verify") flag("--suite", job.suite);
  if (job.two_s) flag("--two-s", std::to_string(*job.two_s));
  list("--eps", job.eps);
  list("--nu", job.nu);
  if (job.command == "pf") flag("--method", job.method);
  if (job.command == "verify") {
    flag("--n", std::to_string(job.n.value_or(0)));
    if (job.m) flag("--m", std::to_string(*job.m));
    flag("--trials", std::to_string(job.trials));
    flag("--seed", std::to_string(job.seed));
    if (job.threads) flag("--threads", std::to_string(job.threads));
    if (job.format != "json") flag("--format", job.format);
  }
  if (job.z) flag("--z", *job.z);
  if (job.order) flag("--order", std::to_string(*job.order));
  if (job.g) flag("--g", *job.g);
  if (!job.occupation.empty()) {
    std::vector<std::string> occ;
    for (int o : job.occupation) occ.push_back(std::to_string(o));
    list("--occupation", occ);
  }
  list("--lambdas", job.lambdas);
  list("--Lambda", job.Lambda);
  flag("--mode", job.mode);
  if (!job.out.empty()) flag("--out", job.out);
  return a;
}

namespace {

struct Result {
  Json doc;
  int code = 0;
  std::string csv;
};

template <Scalar T>
T number(const std::string& s) {
  if constexpr (std::same_as<T, Rational>) return dwpf::parse_rational(s);
  else return dwpf::parse_complex(s);
}

template <Scalar T>
std::vector<T> numbers(const std::vector<std::string>& xs) {
  std::vector<T> out;
  for (const auto& x : xs) out.push_back(number<T>(x));
  return out;
}

Json encode(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}
Json encode(const Complex& c) { return {{"re", c.real()}, {"im", c.imag()}}; }

template <Scalar T>
Json encode_all(std::span<const T> xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(encode(x));
  return arr;
}

Json header(const JobSpec& job) {
  return {{"schema", kSchema},
          {"command", job.command},
          {"mode", job.mode},
          {"job", join(serialize(job), " ")}};
}

template <Scalar T>
Result do_pf(const JobSpec& job) {
  dwpf::SpinSystem<T> sys(job.two_s.value(), numbers<T>(job.eps));
  dwpf::RapiditySet<T> nu{numbers<T>(job.nu)};
  Result r{header(job), 0, {}};
  r.doc["two_s"] = sys.two_S();
  r.doc["omega"] = sys.omega();
  if (job.method == "det") {
    r.doc["method"] = "determinant";
    r.doc["value"] = encode(dwpf::z_determinant(sys, nu).value);
  } else if (job.method == "perm") {
    r.doc["method"] = "permanent";
    r.doc["value"] = encode(dwpf::z_permanent(sys, nu).value);
  } else {
    T det = dwpf::z_determinant(sys, nu).value;
    T perm = dwpf::z_permanent(sys, nu).value;
    const bool agree = dwpf::agrees(det, perm);
    r.doc["method"] = "both";
    r.doc["value"] = encode(det);
    r.doc["permanent"] = encode(perm);
    r.doc["agree"] = agree;
    r.code = agree ? 0 : 2;
  }
  return r;
}

template <Scalar T>
Result do_verify(const JobSpec& job) {
  dwpf::SweepConfig c;
  c.trials = job.trials;
  c.seed = job.seed;
  c.threads = job.threads;
  const std::size_t n = job.n.value();
  std::vector<dwpf::CheckReport<T>> reports;
  if (job.suite == "borchardt") {
    c.grid = {{0, n}};
    reports = dwpf::borchardt_sweep<T>(c);
  } else if (job.suite == "boson") {
    c.grid = {{static_cast<int>(n), job.m.value()}};
    reports = dwpf::boson_sweep<T>(c);
  } else {
    c.grid = {{job.two_s.value(), n}};
    if (job.suite == "identity") reports = dwpf::identity_sweep<T>(c);
    else if (job.suite == "residues") reports = dwpf::residue_sweep<T>(c);
    else reports = dwpf::limit_sweep<T>(c);
  }
  Result r{header(job), 0, {}};
  std::size_t passed = 0;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "check,two_s,n,trial,holds\n";
  for (const auto& rep : reports) {
    passed += rep.holds;
    rows.push_back({{"check", rep.check},
                    {"two_s", rep.instance.two_S},
                    {"n", rep.instance.n_spins},
                    {"trial", rep.instance.trial},
                    {"holds", rep.holds},
                    {"left", encode(rep.left)},
                    {"right", encode(rep.right)}});
    csv << rep.check << ',' << rep.instance.two_S << ',' << rep.instance.n_spins << ','
        << rep.instance.trial << ',' << (rep.holds ? "true" : "false") << '\n';
  }
  r.doc["suite"] = job.suite;
  r.doc["passed"] = passed;
  r.doc["failed"] = reports.size() - passed;
  r.doc["reports"] = std::move(rows);
  r.csv = csv.str();
  r.code = passed == reports.size() ? 0 : 2;
  return r;
}

template <Scalar T>
Result do_gamma(const JobSpec& job) {
  auto nu = numbers<T>(job.nu);
  const T z = number<T>(job.z.value());
  const int order = job.order.value();
  auto lam = dwpf::lambda_derivatives<T>(nu, z, order);
  auto rec = dwpf::gamma_recursive(lam, order);
  std::vector<T> expl;
  bool agree = true;
  for (int k = 0; k <= order; ++k) {
    expl.push_back(dwpf::gamma_explicit(lam, k));
    agree = agree && dwpf::agrees(expl.back(), rec[k]);
  }
  Result r{header(job), 0, {}};
  r.doc["lambda_derivatives"] = encode_all<T>(lam.values);
  r.doc["gammas"] = encode_all<T>(rec);
  r.doc["gammas_explicit"] = encode_all<T>(expl);
  r.doc["routes_agree"] = agree;
  r.code = agree ? 0 : 2;
  return r;
}

template <Scalar T>
Result do_coeffs(const JobSpec& job) {
  auto c = dwpf::structure_coefficients(dwpf::SpinSystem<T>(job.two_s.value(), numbers<T>(job.eps)));
  Result r{header(job), 0, {}};
  const std::size_t n = c.eps.size();
  r.doc["c11"] = encode_all<T>(c.c11);
  Json c1j = Json::object(), diag = Json::object(), off = Json::object();
  for (std::size_t j = 1; j < n; ++j) {
    const std::string key = std::to_string(j + 1);
    c1j[key] = encode_all<T>(c.c1j[j]);
    diag[key] = encode(c.c0_diag[j]);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) off[key + "," + std::to_string(k + 1)] = encode(c.c0_off(j, k));
  }
  r.doc["c1j"] = std::move(c1j);
  r.doc["c0_diag"] = std::move(diag);
  r.doc["c0_off"] = std::move(off);
  return r;
}

template <Scalar T>
Result do_bethe(const JobSpec& job) {
  using namespace dwpf;
  const auto eps = numbers<T>(job.eps);
  std::size_t m = job.lambdas.size();
  if (!job.occupation.empty())
    m = static_cast<std::size_t>(std::count(job.occupation.begin(), job.occupation.end(), 1));
  CouplingModel<T> model{number<T>(job.g.value()), eps, m};
  validate(model);
  Result r{header(job), 0, {}};
  r.doc["M"] = m;

  auto quad_part = [&](const LambdaVars<T>& lv) {
    r.doc["Lambda"] = encode_all<T>(lv.values);
    auto res = quad_residuals(lv, model);
    r.doc["quad_residuals"] = encode_all<T>(res);
    r.doc["quad_residual_max"] = max_abs<T>(res);
    r.doc["dual_Lambda"] = encode_all<T>(dual_transform(lv, model).values);
  };

  if (!job.lambdas.empty()) {
    RapidityState<T> state{numbers<T>(job.lambdas)};
    auto res = richardson_residuals(state, model);
    r.doc["lambdas"] = encode_all<T>(state.lambdas);
    r.doc["richardson_residuals"] = encode_all<T>(res);
    r.doc["richardson_residual_max"] = max_abs<T>(res);
    quad_part(lambdas_from_rapidities(state, std::span<const T>(eps)));
    return r;
  }
  if (!job.Lambda.empty()) {
    if (job.Lambda.size() != eps.size())
      throw UsageError("--Lambda needs one entry per level");
    quad_part(LambdaVars<T>{numbers<T>(job.Lambda)});
    return r;
  }
  if constexpr (std::same_as<T, Complex>) {
    const std::size_t n = eps.size();
    std::unique_ptr<bool[]> occ(new bool[n]);
    std::vector<std::size_t> levels;
    for (std::size_t i = 0; i < n; ++i) {
      occ[i] = job.occupation[i] == 1;
      if (occ[i]) levels.push_back(i);
    }
    auto lv = solve_quadratic_bethe(model, std::span<const bool>(occ.get(), n));
    auto rap = solve_richardson(model, levels);
    auto via = lambdas_from_rapidities(rap, std::span<const Complex>(eps));
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(lv.values[i] - via.values[i]));
    quad_part(lv);
    r.doc["lambdas"] = encode_all<Complex>(rap.lambdas);
    r.doc["richardson_residual_max"] = max_abs<Complex>(richardson_residuals(rap, model));
    r.doc["route_gap"] = gap;
    r.doc["routes_agree"] = gap < 1e-8;
    r.code = gap < 1e-8 ? 0 : 2;
    return r;
  } else {
    throw UsageError("exact mode cannot solve");
  }
}

template <Scalar T>
Result execute(const JobSpec& job) {
  if (job.command == "pf") return do_pf<T>(job);
  if (job.command == "verify") return do_verify<T>(job);
  if (job.command == "gamma") return do_gamma<T>(job);
  if (job.command == "coeffs") return do_coeffs<T>(job);
  return do_bethe<T>(job);
}

Json error_doc(const std::string& kind, const std::string& detail) {
  return {{"schema", kSchema}, {"error", {{"kind", kind}, {"detail", detail}}}};
}

int fail(std::ostream& out, std::ostream& err, const Json& doc, int code) {
  out << doc.dump(2) << '\n';
  err << "rg: " << doc["error"]["detail"].get<std::string>() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobSpec job;
  try {
    job = parse_job(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    return fail(out, err, error_doc("Usage", e.what()), 1);
  }

  Result r;
  try {
    r = job.mode == "exact" ? execute<Rational>(job) : execute<Complex>(job);
  } catch (const UsageError& e) {
    return fail(out, err, error_doc("Usage", e.what()), 1);
  } catch (const dwpf::NoConvergence& e) {
    Json doc = error_doc(std::string(dwpf::to_string(e.kind())), e.what());
    doc["error"]["g_reached"] = encode(Complex(e.g_reached()));
    return fail(out, err, doc, 3);
  } catch (const dwpf::Error& e) {
    const bool numerical = e.kind() == dwpf::ErrorKind::NonFiniteEntry ||
                           e.kind() == dwpf::ErrorKind::SingularMatrix;
    return fail(out, err, error_doc(std::string(dwpf::to_string(e.kind())), e.what()),
                numerical ? 3 : 1);
  }

  const std::string text = job.format == "csv" ? r.csv : r.doc.dump(2) + "\n";
  if (job.out.empty()) {
    out << text;
  } else {
    std::ofstream file(job.out, std::ios::binary);
    if (!(file << text))
      return fail(out, err, error_doc("Io", "cannot write " + job.out), 1);
  }
  return r.code;
}

}  // namespace rg
