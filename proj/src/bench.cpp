#include "qmc/bench.hpp"

#include "qmc/analytic.hpp"
#include "qmc/mc_european.hpp"
#include "qmc/quasi_rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace qmc {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Method method_from_name(const std::string& name) {
  if (name == "closed-form") return Method::ClosedForm;
  if (name == "european-mc") return Method::EuropeanMC;
  if (name == "american-ub") return Method::AmericanUpperBound;
  throw std::runtime_error("parse_csv_records: unknown method '" + name + "'");
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

} // namespace

PricingResult serial_price(const OptionSpec& spec, Method method, Index m,
                           Index n_paths, std::uint64_t seed) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  const auto finish = [&](double price, double std_error, Index paths) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return PricingResult{price, std_error, paths, elapsed, method, seed};
  };

  if (method == Method::ClosedForm) {
    return finish(bs_price(spec), 0.0, 1);
  }
  if (n_paths < 2) throw std::invalid_argument("serial_price: n_paths must be >= 2");

  if (method == Method::EuropeanMC) {
    const double disc = std::exp(-spec.rate * spec.maturity);
    if (spec.volatility == 0.0 || spec.maturity == 0.0) {
      // Same degenerate branch as the engine.
      const double forward = spec.spot * std::exp(spec.rate * spec.maturity);
      return finish(disc * intrinsic_value(spec.kind, forward, spec.strike), 0.0,
                    n_paths);
    }
    QuasiStream stream(1, n_paths, seed);
    Vector values(n_paths);
    for (Index p = 0; p < n_paths; ++p) {
      const double s_t = gbm_step(spec.spot, spec.maturity, stream.normal_at(p, 0),
                                  spec.rate, spec.volatility);
      values[p] = disc * intrinsic_value(spec.kind, s_t, spec.strike);
    }
    const ReduceStats stats = reduce_stats(values, 1);
    return finish(stats.mean, stats.std_error, n_paths);
  }

  // American upper bound, straight-line: one pass per path through the grid,
  // sweep immediately, no batch matrix.
  if (spec.kind != OptionKind::Call) {
    throw std::invalid_argument(
        "serial_price: not implemented for puts; the foresight algorithm is call-only");
  }
  const ExerciseSchedule schedule = make_schedule(m, spec.maturity);
  const Index points = schedule.points();
  QuasiStream stream(points, n_paths, seed);
  RowVector row(points);
  Vector values(n_paths);
  for (Index p = 0; p < n_paths; ++p) {
    double s = spec.spot;
    for (Index k = 0; k < points; ++k) {
      s = gbm_step(s, schedule.dt, stream.normal_at(p, k), spec.rate, spec.volatility);
      row[k] = s;
    }
    values[p] = sweep_value(row, spec, schedule);
  }
  const ReduceStats stats = reduce_stats(values, 1);
  return finish(stats.mean, stats.std_error, n_paths);
}

BenchmarkReport run_benchmark(const OptionSpec& spec, Method method, Index m,
                              const std::vector<Index>& path_counts,
                              const std::vector<int>& lane_counts,
                              std::uint64_t seed, Index chunk,
                              bool include_serial) {
  validate(spec);
  if (method == Method::ClosedForm) {
    throw std::invalid_argument(
        "run_benchmark: closed-form has no path sweep; use european-mc or american-ub");
  }
  if (path_counts.empty()) {
    throw std::invalid_argument("run_benchmark: path_counts must be non-empty");
  }
  if (lane_counts.empty()) {
    throw std::invalid_argument("run_benchmark: lane_counts must be non-empty");
  }

  BenchmarkReport report;
  const auto timed_record = [&](int lanes_label,
                                const std::function<PricingResult()>& run) {
    run(); // warm-up, untimed
    std::array<double, 3> elapsed{};
    PricingResult result;
    for (auto& slot : elapsed) {
      const double t0 = now_seconds();
      result = run();
      slot = now_seconds() - t0;
    }
    std::sort(elapsed.begin(), elapsed.end());
    BenchmarkRecord record = to_record(result, m, lanes_label, chunk);
    record.elapsed_s = std::max(elapsed[1], 1e-9); // median of 3
    report.records.push_back(record);
  };

  for (const Index n : path_counts) {
    for (const int lanes : lane_counts) {
      try {
        const ExecPolicy exec{lanes, chunk};
        timed_record(lanes, [&] {
          return method == Method::EuropeanMC
                     ? mc_european_price(spec, n, seed, exec)
                     : price_american(spec, m, n, seed, exec);
        });
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "bench configuration n_paths=" << n << " lanes=" << lanes
            << " failed: " << e.what();
        report.errors.push_back(msg.str());
      }
    }
    if (include_serial) {
      try {
        timed_record(0, [&] { return serial_price(spec, method, m, n, seed); });
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "bench configuration n_paths=" << n
            << " serial failed: " << e.what();
        report.errors.push_back(msg.str());
      }
    }
  }
  return report;
}

BenchmarkRecord to_record(const PricingResult& result, Index m, int lanes,
                          Index chunk) {
  BenchmarkRecord record;
  record.method = result.method;
  record.n_paths = result.n_paths;
  record.m = result.method == Method::AmericanUpperBound ? m : 0;
  record.lanes = lanes;
  record.chunk = chunk;
  record.seed = result.seed;
  record.price = result.price;
  record.std_error = result.std_error;
  record.elapsed_s = std::max(result.elapsed_s, 1e-9);
  return record;
}

std::vector<BenchmarkRecord> to_records(const ConvergenceCurve& curve,
                                        Index n_paths, int lanes, Index chunk,
                                        std::uint64_t seed) {
  std::vector<BenchmarkRecord> records;
  records.reserve(curve.size());
  for (const ConvergencePoint& point : curve) {
    BenchmarkRecord record;
    record.method = Method::AmericanUpperBound;
    record.n_paths = n_paths;
    record.m = point.m;
    record.lanes = lanes;
    record.chunk = chunk;
    record.seed = seed;
    record.price = point.price;
    record.std_error = point.std_error;
    record.elapsed_s = std::max(point.elapsed_s, 1e-9);
    records.push_back(record);
  }
  return records;
}

void emit_records(const std::vector<BenchmarkRecord>& records,
                  OutputFormat format, std::ostream& os) {
  if (records.empty()) {
    throw std::invalid_argument("emit_records: records must be non-empty");
  }
  switch (format) {
    case OutputFormat::Csv: {
      os << kCsvHeader << "\n";
      for (const auto& r : records) {
        os << method_name(r.method) << ',' << r.n_paths << ',' << r.m << ','
           << r.lanes << ',' << r.chunk << ',' << r.seed << ','
           << format_g17(r.price) << ',' << format_g17(r.std_error) << ','
           << format_g17(r.elapsed_s) << "\n";
      }
      return;
    }
    case OutputFormat::Json: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& r : records) {
        out.push_back({{"method", method_name(r.method)},
                       {"n_paths", r.n_paths},
                       {"m", r.m},
                       {"lanes", r.lanes},
                       {"chunk", r.chunk},
                       {"seed", r.seed},
                       {"price", r.price},
                       {"std_error", r.std_error},
                       {"elapsed_s", r.elapsed_s}});
      }
      os << out.dump(2) << "\n";
      return;
    }
    case OutputFormat::Table: {
      os << std::left << std::setw(13) << "method" << std::right
         << std::setw(10) << "n_paths" << std::setw(5) << "m" << std::setw(7)
         << "lanes" << std::setw(7) << "chunk" << std::setw(12) << "seed"
         << std::setw(16) << "price" << std::setw(13) << "std_error"
         << std::setw(12) << "elapsed_s" << "\n";
      for (const auto& r : records) {
        std::ostringstream price, se, el;
        price << std::setprecision(10) << r.price;
        se << std::setprecision(4) << r.std_error;
        el << std::setprecision(4) << r.elapsed_s;
        os << std::left << std::setw(13) << method_name(r.method) << std::right
           << std::setw(10) << r.n_paths << std::setw(5) << r.m << std::setw(7)
           << r.lanes << std::setw(7) << r.chunk << std::setw(12) << r.seed
           << std::setw(16) << price.str() << std::setw(13) << se.str()
           << std::setw(12) << el.str() << "\n";
      }
      return;
    }
  }
}

void emit_results(const std::vector<BenchmarkRecord>& records,
                  OutputFormat format, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    emit_records(records, format, std::cout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("emit_results: cannot open '" + out_path +
                             "' for writing");
  }
  emit_records(records, format, file);
  if (!file.good()) {
    throw std::runtime_error("emit_results: write to '" + out_path + "' failed");
  }
}

std::vector<BenchmarkRecord> parse_csv_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("parse_csv_records: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::runtime_error("parse_csv_records: unrecognized header '" + line + "'");
  }
  std::vector<BenchmarkRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 9) {
      throw std::runtime_error("parse_csv_records: expected 9 fields, got line '" +
                               line + "'");
    }
    BenchmarkRecord r;
    r.method = method_from_name(fields[0]);
    r.n_paths = static_cast<Index>(std::stoll(fields[1]));
    r.m = static_cast<Index>(std::stoll(fields[2]));
    r.lanes = std::stoi(fields[3]);
    r.chunk = static_cast<Index>(std::stoll(fields[4]));
    r.seed = std::stoull(fields[5]);
    r.price = std::strtod(fields[6].c_str(), nullptr);
    r.std_error = std::strtod(fields[7].c_str(), nullptr);
    r.elapsed_s = std::strtod(fields[8].c_str(), nullptr);
    records.push_back(r);
  }
  return records;
}

} // namespace qmc
