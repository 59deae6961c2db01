// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mcxenc/simulator.hpp"

namespace mcxenc::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<double> sample_grid(int qubits, double lo, double hi, double (*f)(double)) {
  const std::size_t count = std::size_t{1} << qubits;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = lo + static_cast<double>(k) * (hi - lo) / static_cast<double>(count - 1);
    out[k] = f(x);
  }
  return out;
}

double gaussian(double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); }

double ricker(double x) {
  const double a = 2.0 / (std::sqrt(3.0) * std::pow(std::numbers::pi, 0.25));
  return a * (1 - x * x) * std::exp(-x * x / 2);
}

double sine(double x) { return std::sin(x); }
double cosine(double x) { return std::cos(x); }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

InputKind parse_input_kind(std::string_view text) {
  if (text == "random_normal") return InputKind::kRandomNormal;
  if (text == "gaussian") return InputKind::kGaussian;
  if (text == "ricker") return InputKind::kRicker;
  if (text == "sin") return InputKind::kSin;
  if (text == "cos") return InputKind::kCos;
  if (text == "file") return InputKind::kFile;
  throw std::invalid_argument("unknown input kind '" + std::string(text) +
                              "' (expected random_normal|gaussian|ricker|sin|cos|file)");
}

std::string_view to_string(InputKind kind) {
  switch (kind) {
    case InputKind::kRandomNormal: return "random_normal";
    case InputKind::kGaussian: return "gaussian";
    case InputKind::kRicker: return "ricker";
    case InputKind::kSin: return "sin";
    case InputKind::kCos: return "cos";
    case InputKind::kFile: return "file";
  }
  return "unknown";
}

InputSpec parse_input_spec(std::string_view text, int qubits, std::optional<std::uint64_t> seed) {
  InputSpec spec;
  spec.qubits = qubits;
  spec.seed = seed;
  if (text.starts_with("file:")) {
    spec.kind = InputKind::kFile;
    spec.path = std::string(text.substr(5));
    return spec;
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  try {
    spec.kind = parse_input_kind(head);
  } catch (const std::invalid_argument&) {
    if (std::filesystem::is_regular_file(std::string(text))) {
      spec.kind = InputKind::kFile;
      spec.path = std::string(text);
      return spec;
    }
    throw;
  }
  if (spec.kind == InputKind::kFile) throw std::invalid_argument("use file:<path>");
  if (colon != std::string_view::npos) {
    const std::string tail(text.substr(colon + 1));
    try {
      std::size_t used = 0;
      spec.seed = std::stoull(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid seed in input spec: '" + tail + "'");
    }
  }
  return spec;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = trim(buffer.str());

  std::vector<double> values;
  if (!text.empty() && text.front() == '[') {
    try {
      values = nlohmann::json::parse(text).get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("input file '" + path + "': " + e.what());
    }
    return values;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      if (used != line.size()) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw std::invalid_argument("input file '" + path + "' line " + std::to_string(lineno) +
                                  ": not a number");
    }
  }
  return values;
}

std::vector<double> generate(const InputSpec& spec) {
  if (spec.kind != InputKind::kFile && (spec.qubits < 1 || spec.qubits > kMaxQubits)) {
    throw std::invalid_argument("n must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  switch (spec.kind) {
    case InputKind::kRandomNormal: {
      std::mt19937_64 rng(spec.seed.value_or(1));
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<double> v(std::size_t{1} << spec.qubits);
      double norm2 = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        norm2 += x * x;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& x : v) x *= inv;
      return v;
    }
    case InputKind::kGaussian: return sample_grid(spec.qubits, -3.0, 3.0, gaussian);
    case InputKind::kRicker: return sample_grid(spec.qubits, -3.0, 3.0, ricker);
    case InputKind::kSin: return sample_grid(spec.qubits, 0.0, 2 * std::numbers::pi, sine);
    case InputKind::kCos: return sample_grid(spec.qubits, 0.0, 2 * std::numbers::pi, cosine);
    case InputKind::kFile: {
      if (!spec.path) throw std::invalid_argument("file input without a path");
      auto v = read_vector_file(*spec.path);
      validate_input(v);
      if (spec.qubits != 0 && v.size() != (std::size_t{1} << spec.qubits)) {
        throw std::invalid_argument("file holds " + std::to_string(v.size()) +
                                    " values but n = " + std::to_string(spec.qubits));
      }
      return v;
    }
  }
  throw std::logic_error("unhandled input kind");
}

PipelineResult run_pipeline(const std::vector<double>& input, const InputSpec& spec,
                            const PipelineOptions& options) {
  validate_input(input);
  const int n = std::countr_zero(input.size());

  PipelineResult result{.record = {},
                        .input = input,
                        .matrix = encode_input(input, options.precision),
                        .tour = {},
                        .identity = identity_tour(options.precision),
                        .core = {},
                        .postselection = std::nullopt};
  BenchRecord& rec = result.record;
  rec.input_kind = std::string(to_string(spec.kind));
  rec.n = n;
  rec.L = options.precision;
  rec.seed = spec.kind == InputKind::kRandomNormal ? std::optional(spec.seed.value_or(1))
                                                   : spec.seed;

  DecompositionCache cache;
  auto t0 = Clock::now();
  const PathMatrix path = build_path_matrix(result.matrix);
  const CostMatrix costs = edge_costs(path, unit_mcx_cost(cache));
  rec.wall_ms_decompose = elapsed_ms(t0);

  t0 = Clock::now();
  result.tour = solve_tsp(costs, options.order);
  rec.wall_ms_tsp = elapsed_ms(t0);
  result.identity.total_cost = tour_cost(costs, result.identity.sigma);

  OrderMode resolved = options.order;
  if (resolved == OrderMode::kAuto) {
    resolved = options.precision <= kExactTspLimit ? OrderMode::kExact : OrderMode::kHeuristic;
  }
  rec.tsp_mode = std::string(to_string(resolved));

  result.core = build_core(result.matrix, result.tour, &cache);
  rec.depth_core = depth(result.core);
  rec.mcx_total = result.core.mcx_count();

  rec.p_success = quantized_success_probability(result.matrix);
  rec.rho = density_rho(input);
  // Q = -U S0 U^dagger S_flag adds two copies of U plus three phase flips.
  const auto rounds = static_cast<std::size_t>(amplification_rounds(rec.p_success));
  rec.depth_full = rec.depth_core + rounds * (2 * rec.depth_core + 3);

  const bool simulate = options.simulate.value_or(n <= kMaxSimulatedSystemQubits);
  if (simulate) {
    t0 = Clock::now();
    const Statevector state = run(result.core);
    result.postselection = postselect_flag(state);
    rec.wall_ms_simulate = elapsed_ms(t0);
    rec.p_success = result.postselection->flag_probability;
    rec.infidelity = 1.0 - fidelity(*result.postselection, input);
  }
  rec.attempts_estimate = 1.0 / rec.p_success;
  return result;
}

PipelineResult run_pipeline(const InputSpec& spec, const PipelineOptions& options) {
  return run_pipeline(generate(spec), spec, options);
}

std::vector<BenchRecord> sweep_records(const SweepConfig& config) {
  if (config.n_min < 1 || config.n_max < config.n_min || config.repetitions < 1) {
    throw std::invalid_argument("invalid sweep range");
  }
  struct Cell {
    InputKind kind;
    int n;
    int rep;
  };
  std::vector<Cell> cells;
  for (const auto kind : config.kinds) {
    if (kind == InputKind::kFile) throw std::invalid_argument("sweeps take generator kinds only");
    for (int n = config.n_min; n <= config.n_max; ++n) {
      for (int rep = 0; rep < config.repetitions; ++rep) cells.push_back({kind, n, rep});
    }
  }

  std::vector<BenchRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        InputSpec spec{.kind = cells[k].kind,
                       .qubits = cells[k].n,
                       .seed = config.base_seed + static_cast<std::uint64_t>(cells[k].rep),
                       .path = std::nullopt};
        records[k] = run_pipeline(spec, config.pipeline).record;
        if (spec.kind != InputKind::kRandomNormal) records[k].seed = spec.seed;
        if (!config.record_timing) {
          records[k].wall_ms_decompose = 0;
          records[k].wall_ms_tsp = 0;
          records[k].wall_ms_simulate = 0;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned hw = config.threads ? config.threads : std::thread::hardware_concurrency();
  const std::size_t threads = std::clamp<std::size_t>(hw, 1, std::max<std::size_t>(cells.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::string csv_header() {
  return "input_kind,n,L,seed,depth_core,depth_full,mcx_total,p_success,rho,infidelity,"
         "attempts_estimate,tsp_mode,wall_ms_decompose,wall_ms_tsp,wall_ms_simulate";
}

std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream out;
  out << r.input_kind << ',' << r.n << ',' << r.L << ',';
  if (r.seed) out << *r.seed;
  out << ',' << r.depth_core << ',' << r.depth_full << ',' << r.mcx_total << ','
      << format_double(r.p_success) << ',' << format_double(r.rho) << ',';
  if (r.infidelity) out << format_double(*r.infidelity);
  out << ',' << format_double(r.attempts_estimate) << ',' << r.tsp_mode << ','
      << format_double(r.wall_ms_decompose) << ',' << format_double(r.wall_ms_tsp) << ','
      << format_double(r.wall_ms_simulate);
  return out.str();
}

namespace {

struct Moments {
  double sum = 0;
  double sum_sq = 0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  [[nodiscard]] std::string str() const {
    if (count == 0) return {};
    const double mean = sum / static_cast<double>(count);
    const double var = count > 1 ? std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(count - 1)) : 0.0;
    return format_double(mean) + "+-" + format_double(std::sqrt(var));
  }
};

}  // namespace

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';

  // Aggregates per (kind, n) in first-appearance order.
  std::vector<std::pair<std::string, int>> keys;
  std::map<std::pair<std::string, int>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.input_kind, r.n);
    if (!groups.contains(key)) keys.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : keys) {
    const auto& group = groups[key];
    Moments depth_core, depth_full, mcx, p, rho, infid, attempts, t_dec, t_tsp, t_sim;
    for (const auto* r : group) {
      depth_core.add(static_cast<double>(r->depth_core));
      depth_full.add(static_cast<double>(r->depth_full));
      mcx.add(static_cast<double>(r->mcx_total));
      p.add(r->p_success);
      rho.add(r->rho);
      if (r->infidelity) infid.add(*r->infidelity);
      attempts.add(r->attempts_estimate);
      t_dec.add(r->wall_ms_decompose);
      t_tsp.add(r->wall_ms_tsp);
      t_sim.add(r->wall_ms_simulate);
    }
    out << key.first << ',' << key.second << ',' << group.front()->L << ",aggregate,"
        << depth_core.str() << ',' << depth_full.str() << ',' << mcx.str() << ',' << p.str()
        << ',' << rho.str() << ',' << infid.str() << ',' << attempts.str() << ','
        << group.front()->tsp_mode << ',' << t_dec.str() << ',' << t_tsp.str() << ','
        << t_sim.str() << '\n';
  }
  return out.str();
}

std::string sweep(const SweepConfig& config) { return to_csv(sweep_records(config)); }

double loglog_slope(const std::vector<BenchRecord>& records) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double count = 0;
  for (const auto& r : records) {
    if (r.n < 1 || r.depth_core == 0) continue;
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(static_cast<double>(r.depth_core));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1;
  }
  const double denom = count * sxx - sx * sx;
  if (count < 2 || denom == 0.0) return 0.0;
  return (count * sxy - sx * sy) / denom;
}

std::string summary_json(const PipelineResult& result) {
  nlohmann::json j;
  j["n"] = result.record.n;
  j["L"] = result.record.L;
  j["order"] = result.tour.sigma;
  j["depth_core"] = result.record.depth_core;
  j["depth_full"] = result.record.depth_full;
  j["mcx_count"] = result.record.mcx_total;
  j["p_success"] = result.record.p_success;
  return j.dump();
}

}  // namespace mcxenc::bench
