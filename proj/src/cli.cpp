#include "qmc/cli.hpp"

#include "qmc/analytic.hpp"
#include "qmc/american.hpp"
#include "qmc/bench.hpp"
#include "qmc/mc_european.hpp"
#include "qmc/oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace qmc {

namespace {

OptionKind kind_from_name(const std::string& name) {
  return name == "put" ? OptionKind::Put : OptionKind::Call;
}

Method method_from_cli_name(const std::string& name) {
  if (name == "european-mc") return Method::EuropeanMC;
  if (name == "american-ub") return Method::AmericanUpperBound;
  return Method::ClosedForm;
}

// String staging for the enum-valued flags, so --help shows the names
// rather than enum integers.
struct FlagText {
  std::string kind = "call";
  std::string price_method = "closed-form";
  std::string bench_method = "american-ub";
  std::string format;
};

void add_contract_flags(CLI::App* cmd, RunConfig& cfg, FlagText& text) {
  cmd->add_option("--spot", cfg.spec.spot, "spot price S0 (> 0)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--strike", cfg.spec.strike, "strike price X (> 0)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rate", cfg.spec.rate,
                  "continuously compounded risk-free rate per year");
  cmd->add_option("--vol", cfg.spec.volatility, "annualized volatility (>= 0)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--maturity", cfg.spec.maturity, "time to expiry in years (>= 0)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--kind", text.kind, "option kind")
      ->transform(CLI::IsMember({"call", "put"}, CLI::ignore_case));
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg, FlagText& text) {
  cmd->add_option("--format", text.format,
                  "machine-readable output format (omit for a plain table)")
      ->transform(CLI::IsMember({"csv", "json"}, CLI::ignore_case))
      ->default_str("table");
  cmd->add_option("--out", cfg.out_path, "output file path (default stdout)");
}

void add_exec_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--threads", cfg.lanes,
                  "worker lanes (default: hardware thread count)")
      ->check(CLI::Range(1, 1024))
      ->default_str("auto");
  cmd->add_option("--chunk", cfg.chunk, "paths per work chunk")
      ->check(CLI::Range(Index{1}, Index{1} << 30));
}

double run_seconds(const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int run_price(const RunConfig& cfg, const ExecPolicy& exec) {
  PricingResult result;
  switch (cfg.method) {
    case Method::ClosedForm: {
      double price = 0.0;
      const double elapsed = run_seconds([&] { price = bs_price(cfg.spec); });
      result = PricingResult{price, 0.0, 1, elapsed, Method::ClosedForm, cfg.seed};
      break;
    }
    case Method::EuropeanMC:
      result = cfg.serial
                   ? serial_price(cfg.spec, cfg.method, cfg.m, cfg.n_paths, cfg.seed)
                   : mc_european_price(cfg.spec, cfg.n_paths, cfg.seed, exec);
      break;
    case Method::AmericanUpperBound:
      result = cfg.serial
                   ? serial_price(cfg.spec, cfg.method, cfg.m, cfg.n_paths, cfg.seed)
                   : price_american(cfg.spec, cfg.m, cfg.n_paths, cfg.seed, exec);
      break;
  }
  int lanes_label = exec.lanes;
  if (cfg.method == Method::ClosedForm) lanes_label = 1;
  else if (cfg.serial) lanes_label = 0;
  emit_results({to_record(result, cfg.m, lanes_label, exec.chunk)}, cfg.format,
               cfg.out_path);
  return 0;
}

int run_converge(const RunConfig& cfg, const ExecPolicy& exec) {
  const ConvergenceCurve curve =
      convergence_curve(cfg.spec, cfg.m_list, cfg.n_paths, cfg.seed, exec);
  emit_results(to_records(curve, cfg.n_paths, exec.lanes, exec.chunk, cfg.seed),
               cfg.format, cfg.out_path);
  return 0;
}

int run_bench(const RunConfig& cfg, const ExecPolicy& exec) {
  const BenchmarkReport report =
      run_benchmark(cfg.spec, cfg.method, cfg.m, cfg.path_list, cfg.thread_list,
                    cfg.seed, exec.chunk, cfg.serial);
  if (!report.records.empty()) {
    emit_results(report.records, cfg.format, cfg.out_path);
  }
  for (const std::string& err : report.errors) {
    std::cerr << "error: " << err << "\n";
  }
  return report.errors.empty() ? 0 : 1;
}

// ---- verify: oracle agreement table ----

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string scientific(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

CheckRow check_bs_vs_quadrature() {
  double worst = 0.0;
  for (const double spot : {80.0, 100.0, 120.0}) {
    for (const double vol : {0.1, 0.2, 0.4}) {
      for (const OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
        const OptionSpec spec{spot, 100.0, 0.05, vol, 1.0, kind};
        worst = std::max(worst, std::abs(bs_price(spec) - oracle::bs_quadrature(spec)));
      }
    }
  }
  return {"black-scholes vs quadrature", worst < 1e-5,
          "max |diff| = " + scientific(worst) + " (tol 1e-05)"};
}

CheckRow check_parity() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> spot(50.0, 150.0), strike(50.0, 150.0),
      rate(0.0, 0.10), vol(0.05, 0.5), mat(0.1, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    OptionSpec spec{spot(rng), strike(rng), rate(rng), vol(rng), mat(rng),
                    OptionKind::Call};
    const double call = bs_price(spec);
    spec.kind = OptionKind::Put;
    const double put = bs_price(spec);
    const double forward = spec.spot - spec.strike * std::exp(-spec.rate * spec.maturity);
    const double rel = std::abs(call - put - forward) /
                       std::max(1.0, spec.spot + spec.strike);
    worst = std::max(worst, rel);
  }
  return {"put-call parity (closed form)", worst < 1e-10,
          "max relative residual = " + scientific(worst) + " (tol 1e-10)"};
}

CheckRow check_moro_roundtrip() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = 0.001 + (0.998 * i) / 999.0;
    worst = std::max(worst, std::abs(cnd(moro_inv_cnd(u)) - u));
  }
  return {"moro/cnd roundtrip", worst < 1e-6,
          "max |cnd(inv(u)) - u| = " + scientific(worst) + " (tol 1e-06)"};
}

CheckRow check_crr_convergence() {
  const OptionSpec spec{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  const double reference = bs_price(spec);
  const double e16 = std::abs(oracle::crr_price({16, spec}, false) - reference);
  const double e128 = std::abs(oracle::crr_price({128, spec}, false) - reference);
  const double e2048 = std::abs(oracle::crr_price({2048, spec}, false) - reference);
  const bool pass = e2048 < e128 && e128 < e16 && e2048 < 2e-3;
  return {"crr european convergence", pass,
          "errors 16/128/2048 steps = " + scientific(e16) + "/" +
              scientific(e128) + "/" + scientific(e2048) + " (tol 2e-03 at 2048)"};
}

CheckRow check_crr_american() {
  const OptionSpec call{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  const OptionSpec put{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Put};
  const double am_call = oracle::crr_price({2048, call}, true);
  const double eu_call = oracle::crr_price({2048, call}, false);
  const double am_put = oracle::crr_price({2048, put}, true);
  const double eu_put = bs_price(put);
  const bool pass = am_call >= eu_call - 1e-12 &&
                    std::abs(am_call - eu_call) < 1e-6 && am_put > eu_put;
  std::ostringstream detail;
  detail << "call am-eu = " << scientific(am_call - eu_call)
         << ", put premium = " << scientific(am_put - eu_put);
  return {"crr american early-exercise", pass, detail.str()};
}

CheckRow check_quadrature_martingale() {
  const OptionSpec spec{100.0, 100.0, 0.05, 0.2, 1.0, OptionKind::Call};
  const double value =
      oracle::discounted_expectation(spec, [](double s) { return s; });
  const double err = std::abs(value - spec.spot);
  return {"quadrature martingale identity", err < 1e-6,
          "|E[disc S_T] - S0| = " + scientific(err) + " (tol 1e-06)"};
}

int run_verify() {
  const CheckRow rows[] = {
      check_bs_vs_quadrature(), check_parity(),          check_moro_roundtrip(),
      check_crr_convergence(),  check_crr_american(),    check_quadrature_martingale(),
  };
  int failed = 0;
  std::cout << std::left << std::setw(36) << "check" << std::setw(8) << "status"
            << "detail" << "\n";
  for (const CheckRow& row : rows) {
    if (!row.pass) ++failed;
    std::cout << std::left << std::setw(36) << row.name << std::setw(8)
              << (row.pass ? "PASS" : "FAIL") << row.detail << "\n";
  }
  std::cout << (failed == 0 ? "all checks passed\n"
                            : std::to_string(failed) + " check(s) failed\n");
  return failed == 0 ? 0 : 1;
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  FlagText text;
  CLI::App app{"Quasi-Monte Carlo option pricing engine and benchmark harness"};
  app.name("qmc_pricer");
  app.require_subcommand(1);

  CLI::App* price = app.add_subcommand("price", "Price one option");
  price->option_defaults()->always_capture_default();
  add_contract_flags(price, cfg, text);
  price->add_option("--method", text.price_method, "pricing method")
      ->transform(CLI::IsMember({"closed-form", "european-mc", "american-ub"},
                            CLI::ignore_case));
  price->add_option("--m", cfg.m, "early-exercise points (american-ub)")
      ->check(CLI::Range(Index{1}, Index{100000}));
  price->add_option("--paths", cfg.n_paths, "Monte Carlo paths (>= 2)")
      ->check(CLI::Range(Index{2}, Index{1} << 40));
  price->add_option("--seed", cfg.seed, "random stream seed");
  add_exec_flags(price, cfg);
  price->add_flag("--serial", cfg.serial, "use the straight-line serial runner");
  add_output_flags(price, cfg, text);

  CLI::App* converge = app.add_subcommand(
      "converge", "American value vs number of exercise points");
  converge->option_defaults()->always_capture_default();
  add_contract_flags(converge, cfg, text);
  converge->add_option("--m-list", cfg.m_list, "comma-separated exercise point counts")
      ->delimiter(',')
      ->check(CLI::Range(Index{1}, Index{100000}));
  converge->add_option("--paths", cfg.n_paths, "Monte Carlo paths per row (>= 2)")
      ->check(CLI::Range(Index{2}, Index{1} << 40));
  converge->add_option("--seed", cfg.seed, "random stream seed");
  add_exec_flags(converge, cfg);
  add_output_flags(converge, cfg, text);

  CLI::App* bench = app.add_subcommand(
      "bench", "Serial-vs-parallel scaling sweep over path and lane counts");
  bench->option_defaults()->always_capture_default();
  add_contract_flags(bench, cfg, text);
  bench->add_option("--method", text.bench_method, "pricing method (path-based)")
      ->transform(CLI::IsMember({"closed-form", "european-mc", "american-ub"},
                            CLI::ignore_case));
  bench->add_option("--m", cfg.m, "early-exercise points (american-ub)")
      ->check(CLI::Range(Index{1}, Index{100000}));
  bench->add_option("--path-list", cfg.path_list, "comma-separated path counts")
      ->delimiter(',')
      ->check(CLI::Range(Index{2}, Index{1} << 40));
  bench->add_option("--thread-list", cfg.thread_list, "comma-separated lane counts")
      ->delimiter(',')
      ->check(CLI::Range(1, 1024));
  bench->add_option("--seed", cfg.seed, "random stream seed");
  bench->add_option("--chunk", cfg.chunk, "paths per work chunk")
      ->check(CLI::Range(Index{1}, Index{1} << 30));
  bench->add_flag("--serial", cfg.serial,
                  "add a straight-line serial baseline row per path count");
  add_output_flags(bench, cfg, text);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the oracle-agreement suite and print a pass/fail table");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("qmc_pricer");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  const auto active_command = [&]() -> CLI::App* {
    for (CLI::App* sub : {price, converge, bench, verify}) {
      if (sub->parsed()) return sub;
    }
    return &app;
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw CliExit{0, active_command()->help()};
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    msg << "error: " << e.what() << "\n\n" << active_command()->help();
    const int code = e.get_exit_code();
    throw CliExit{code == 0 ? 1 : code, msg.str()};
  }

  for (CLI::App* sub : {price, converge, bench, verify}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  cfg.spec.kind = kind_from_name(text.kind);
  cfg.method = method_from_cli_name(bench->parsed() ? text.bench_method
                                                    : text.price_method);
  if (!text.format.empty()) {
    cfg.format = text.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  }
  return cfg;
}

int run_cli(const RunConfig& cfg) {
  ExecPolicy exec{cfg.lanes >= 1 ? cfg.lanes : default_lanes(), cfg.chunk};
  if (cfg.command == "price") return run_price(cfg, exec);
  if (cfg.command == "converge") return run_converge(cfg, exec);
  if (cfg.command == "bench") return run_bench(cfg, exec);
  if (cfg.command == "verify") return run_verify();
  throw std::invalid_argument("run_cli: unknown command '" + cfg.command + "'");
}

} // namespace qmc
