// chaoskit: batch front end for the verification suites, the fourth-moment diagnostic and
// the complex OU drift experiments.
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage or I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaoskit/hermite.hpp"
#include "chaoskit/moments.hpp"
#include "chaoskit/process.hpp"
#include "chaoskit/suites.hpp"

using namespace chaoskit;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out;
  double tol = 1e-10;
  // hermite
  int m = 0, n = 0;
  // verify
  std::string suite;
  // fmt
  std::string sequence;
  std::size_t samples = 10000;
  // ou
  double lambda = 1.0, omega = 0.0, a = 1.0, hurst = 0.5, horizon = 100.0;
  int steps = 10000, replicas = 100;
};

std::uint64_t need_seed(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required for stochastic commands");
  return *o.seed;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  if (!f) throw UsageError("cannot write " + path);
}

Json report(const std::string& command, Json config, Json cases, Json failures, Json max_error, double wall) {
  Json j;
  j["command"] = command;
  j["config"] = std::move(config);
  j["cases"] = std::move(cases);
  j["failures"] = std::move(failures);
  j["max_error"] = std::move(max_error);
  j["wall_time"] = wall;
  return j;
}

int cmd_hermite(const Options& o) {
  if (o.m < 0 || o.n < 0) throw UsageError("--m and --n must be non-negative");
  try {
    std::cout << poly_J(o.m, o.n).text() << "\n";
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  return 0;
}

int cmd_verify(const Options& o, double& wall_start) {
  if (!is_suite(o.suite)) {
    std::string names;
    for (const auto& s : suite_names()) names += (names.empty() ? "" : "|") + s;
    throw UsageError("unknown suite '" + o.suite + "'; usage: chaoskit verify --suite {" + names + "} --seed S");
  }
  SuiteOptions so;
  so.seed = need_seed(o);
  so.workers = o.workers;
  so.tol = o.tol;
  const SuiteResult r = run_suite(o.suite, so);
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back(Json{{"name", c.name}, {"error", c.error}, {"bound", c.bound}, {"passed", c.passed()}});
  // The worker count is left out of the echo: reports must not depend on it.
  const Json config{{"suite", o.suite}, {"seed", so.seed}, {"tol", o.tol}};
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count() - wall_start;
  emit(o.out, report("verify", config, cases, r.failures(), r.max_error(), wall).dump(2) + "\n");
  for (const auto& f : r.failures()) std::cerr << "failed: " << f << "\n";
  return r.passed() ? 0 : 1;
}

std::vector<Kernel> read_sequence(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::vector<Kernel> seq;
  try {
    const auto j = nlohmann::json::parse(ss.str());
    const auto& arr = j.is_object() ? j.at("sequence") : j;
    for (const auto& k : arr) seq.push_back(kernel_from_json(k.dump()));
  } catch (const std::exception& e) {
    throw UsageError("bad sequence file " + path + ": " + e.what());
  }
  if (seq.empty()) throw UsageError("sequence file " + path + " holds no kernels");
  return seq;
}

int cmd_fmt(const Options& o, double& wall_start) {
  if (o.out.empty()) throw UsageError("fmt needs --out report.csv");
  const std::uint64_t seed = need_seed(o);
  const std::vector<Kernel> seq = read_sequence(o.sequence);
  std::vector<FmtRow> rows;
  try {
    rows = fmt_diagnostic(seq, o.samples, seed, o.workers);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << "k,d";
  for (const auto& c : rows.front().norms) csv << "," << c.label << "," << c.label << "~";
  csv << ",var_DF2,var_DbarF2,var_mixed,sigma2,square_mean_re,square_mean_im,fourth,gap,normality,normality_null\n";
  Json cases = Json::array();
  for (const auto& r : rows) {
    csv << r.k << "," << r.d;
    for (const auto& c : r.norms) csv << "," << fmt_double(c.plain) << "," << fmt_double(c.sym);
    for (double v : {r.variances.dd, r.variances.dbar, r.variances.mixed, r.sigma2, r.square_mean.real(),
                     r.square_mean.imag(), r.fourth, r.target, r.normality, r.normality_null})
      csv << "," << fmt_double(v);
    csv << "\n";
    cases.push_back(Json{{"k", r.k},
                         {"d", r.d},
                         {"gap", r.target},
                         {"max_contraction", r.max_plain},
                         {"max_sym_contraction", r.max_sym},
                         {"normality", r.normality},
                         {"normality_null", r.normality_null}});
  }
  emit(o.out, csv.str());
  const Json config{{"sequence", o.sequence}, {"samples", o.samples}, {"seed", seed}, {"out", o.out}};
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count() - wall_start;
  std::cout << report("fmt", config, cases, Json::array(), nullptr, wall).dump(2) << "\n";
  return 0;
}

int cmd_ou(const Options& o, double& wall_start) {
  if (o.out.empty()) throw UsageError("ou needs --out results.csv");
  const std::uint64_t seed = need_seed(o);
  std::optional<OUExperiment> ex;
  try {
    const OUModel model(o.lambda, o.omega, o.a, o.hurst);
    const GridSpec grid(o.horizon, o.steps);
    if (o.hurst != 0.5 && o.steps > kDenseI11Limit)
      throw std::invalid_argument("H > 1/2 uses the dense I_{1,1} route; --steps must be <= " +
                                  std::to_string(kDenseI11Limit));
    ex = run_ou_experiment(model, grid, o.replicas, seed, o.workers);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << "replica,gamma_hat_re,gamma_hat_im,sqrtT_error_re,sqrtT_error_im\n";
  for (std::size_t r = 0; r < ex->gamma_hat.size(); ++r)
    csv << r << "," << fmt_double(ex->gamma_hat[r].real()) << "," << fmt_double(ex->gamma_hat[r].imag()) << ","
        << fmt_double(ex->sqrt_t_error[r].real()) << "," << fmt_double(ex->sqrt_t_error[r].imag()) << "\n";
  emit(o.out, csv.str());
  const Json config{{"lambda", o.lambda}, {"omega", o.omega}, {"a", o.a},           {"hurst", o.hurst},
                    {"T", o.horizon},     {"steps", o.steps},   {"replicas", o.replicas}, {"seed", seed},
                    {"out", o.out}};
  const Json summary{{"mean_gamma_hat_re", ex->mean_gamma_hat.real()},
                     {"mean_gamma_hat_im", ex->mean_gamma_hat.imag()},
                     {"se_re", ex->se_re},
                     {"se_im", ex->se_im},
                     {"normality", ex->normality},
                     {"normality_null", ex->normality_null}};
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count() - wall_start;
  std::cout << report("ou", config, Json::array({summary}), Json::array(), nullptr, wall).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  double wall_start = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
  Options o;
  std::uint64_t seed_value = 0;

  CLI::App app{"chaoskit: complex Wiener chaos toolkit"};
  app.require_subcommand(1);
  // key=value lines; command line flags take precedence
  app.set_config("--config", "", "key=value configuration file");
  app.add_option("--seed", seed_value, "master seed (required for verify, fmt, ou)");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "output path");
  app.add_option("--tol", o.tol, "tolerance for floating identities")->check(CLI::PositiveNumber);
  app.add_option("--m", o.m, "holomorphic degree");
  app.add_option("--n", o.n, "antiholomorphic degree");
  app.add_option("--suite", o.suite, "verification suite");
  app.add_option("--sequence", o.sequence, "JSON file with a kernel sequence");
  app.add_option("--samples", o.samples, "Monte Carlo samples per kernel")->check(CLI::PositiveNumber);
  app.add_option("--lambda", o.lambda, "drift real part");
  app.add_option("--omega", o.omega, "rotation, gamma = lambda - i omega");
  app.add_option("--a", o.a, "noise intensity");
  app.add_option("--hurst", o.hurst, "Hurst index in [1/2, 3/4)");
  app.add_option("--T", o.horizon, "horizon");
  app.add_option("--steps", o.steps, "grid steps");
  app.add_option("--replicas", o.replicas, "replicas");

  auto* hermite = app.add_subcommand("hermite", "print J_{m,n}(z, rho)")->fallthrough();
  auto* verify = app.add_subcommand("verify", "run an invariant suite and write a JSON report")->fallthrough();
  auto* fmt = app.add_subcommand("fmt", "fourth-moment diagnostic over a kernel sequence")->fallthrough();
  auto* ou = app.add_subcommand("ou", "complex OU drift estimation experiment")->fallthrough();
  verify->final_callback([&] {
    if (o.suite.empty()) throw CLI::ValidationError("--suite", "verify needs --suite");
  });
  fmt->final_callback([&] {
    if (o.sequence.empty()) throw CLI::ValidationError("--sequence", "fmt needs --sequence");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (app.count("--seed") > 0) o.seed = seed_value;

  try {
    if (*hermite) return cmd_hermite(o);
    if (*verify) return cmd_verify(o, wall_start);
    if (*fmt) return cmd_fmt(o, wall_start);
    if (*ou) return cmd_ou(o, wall_start);
  } catch (const UsageError& e) {
    std::cerr << "chaoskit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "chaoskit: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
