// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

// mcxenc: compile, decompose, simulate and benchmark MCX amplitude encoders.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcxenc/bench.hpp"
#include "mcxenc/circuit.hpp"
#include "mcxenc/decomposer.hpp"
#include "mcxenc/simulator.hpp"

namespace {

using namespace mcxenc;

constexpr int kExitValidation = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct EncodeArgs {
  std::string input;
  int n = 0;
  int L = 5;
  std::string order = "auto";
  std::string qasm;
  std::string json;
  bool full = false;
  bool simulate = false;
  std::optional<std::uint64_t> seed;
};

int run_encode(const EncodeArgs& a) {
  const auto spec = bench::parse_input_spec(a.input, a.n, a.seed);
  bench::PipelineOptions opts;
  opts.precision = a.L;
  opts.order = parse_order_mode(a.order);
  opts.simulate = a.simulate;
  const auto result = bench::run_pipeline(spec, opts);
  const auto& r = result.record;

  std::printf("n=%d L=%d order=%s\n", r.n, r.L, r.tsp_mode.c_str());
  std::printf("sigma:");
  for (const int k : result.tour.sigma) std::printf(" %d", k);
  std::printf("\n");
  std::printf("mcx_total=%zu (identity order: %lld)\n", r.mcx_total,
              static_cast<long long>(result.identity.total_cost));
  std::printf("layer_mcx:");
  for (const auto m : result.core.layer_mcx) std::printf(" %zu", m);
  std::printf("\n");
  std::printf("depth_core=%zu depth_full=%zu\n", r.depth_core, r.depth_full);
  std::printf("p_success=%.10f rho=%.10f attempts=%.4f\n", r.p_success, r.rho,
              r.attempts_estimate);
  if (r.infidelity) std::printf("infidelity=%.6e\n", *r.infidelity);

  if (!a.qasm.empty() || !a.json.empty()) {
    DecompositionCache cache;
    const Circuit out = a.full ? build_full(result.matrix, result.tour, &cache) : result.core;
    if (!a.qasm.empty()) write_file(a.qasm, export_qasm(out));
    if (!a.json.empty()) write_file(a.json, circuit_to_json(out));
  }
  std::printf("%s\n", bench::summary_json(result).c_str());
  return 0;
}

struct DecomposeArgs {
  std::string bits;
  std::string hex;
  int n = 0;
};

int run_decompose(const DecomposeArgs& a) {
  if (a.bits.empty() == a.hex.empty()) {
    throw std::invalid_argument("give exactly one of --bits or --hex");
  }
  if (!a.hex.empty() && a.n == 0) throw std::invalid_argument("--hex needs --n");
  const BinaryVector b = a.bits.empty() ? BinaryVector::from_hex(a.hex, a.n)
                                        : BinaryVector::from_string(a.bits);
  const Decomposition d = decompose(b);
  for (const auto& c : d.controls) std::printf("%s\n", c.to_string().c_str());
  std::printf("M=%zu popcount=%llu\n", d.gate_count(),
              static_cast<unsigned long long>(b.popcount()));
  return 0;
}

struct SimulateArgs {
  std::string input;
  std::string circuit;
  int n = 0;
  int L = 5;
  std::optional<std::uint64_t> seed;
  bool amplitudes = false;
};

int run_simulate(const SimulateArgs& a) {
  if (a.input.empty() && a.circuit.empty()) {
    throw std::invalid_argument("give --input and/or --circuit");
  }
  std::optional<std::vector<double>> reference;
  Circuit circuit;
  if (!a.input.empty()) {
    reference = bench::generate(bench::parse_input_spec(a.input, a.n, a.seed));
  }
  if (!a.circuit.empty()) {
    circuit = circuit_from_json(read_file(a.circuit));
  } else {
    const EncodingMatrix b = encode_input(*reference, a.L);
    DecompositionCache cache;
    const Tour tour = solve_tsp(edge_costs(build_path_matrix(b), unit_mcx_cost(cache)));
    circuit = build_core(b, tour, &cache);
  }
  if (circuit.qubits > kMaxSimulatedSystemQubits) {
    throw std::invalid_argument("simulation limited to n <= " +
                                std::to_string(kMaxSimulatedSystemQubits));
  }

  const Statevector state = run(circuit);
  const PostSelection ps = postselect_flag(state);
  std::printf("gates=%zu norm_drift=%.3e\n", depth(circuit), std::abs(state.norm_squared() - 1.0));
  std::printf("flag_probability=%.10f\n", ps.flag_probability);
  if (reference) {
    if (reference->size() != ps.system_amplitudes.size()) {
      throw std::invalid_argument("input length does not match the circuit's SYSTEM register");
    }
    const double f = fidelity(ps, *reference);
    std::printf("fidelity=%.10f infidelity=%.6e\n", f, 1.0 - f);
  }
  if (a.amplitudes) {
    for (std::size_t i = 0; i < ps.system_amplitudes.size(); ++i) {
      std::printf("%zu %.12f\n", i, ps.system_amplitudes[i]);
    }
  }
  return 0;
}

struct BenchArgs {
  std::vector<std::string> kinds{"random_normal"};
  int n_min = 5;
  int n_max = 10;
  int L = 5;
  int reps = 1;
  std::uint64_t seed = 1;
  std::string order = "auto";
  std::string out;
  bool no_timing = false;
  bool no_simulate = false;
  unsigned threads = 0;
};

int run_bench(const BenchArgs& a) {
  bench::SweepConfig config;
  for (const auto& k : a.kinds) config.kinds.push_back(bench::parse_input_kind(k));
  config.n_min = a.n_min;
  config.n_max = a.n_max;
  config.repetitions = a.reps;
  config.base_seed = a.seed;
  config.pipeline.precision = a.L;
  config.pipeline.order = parse_order_mode(a.order);
  if (a.no_simulate) config.pipeline.simulate = false;
  config.record_timing = !a.no_timing;
  config.threads = a.threads;

  const auto records = bench::sweep_records(config);
  const std::string csv = bench::to_csv(records);
  if (a.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(a.out, csv);
    std::printf("wrote %zu rows to %s\n", records.size(), a.out.c_str());
  }
  for (const auto& k : a.kinds) {
    std::vector<bench::BenchRecord> subset;
    for (const auto& r : records) {
      if (r.input_kind == k) subset.push_back(r);
    }
    std::fprintf(a.out.empty() ? stderr : stdout, "%s: log-log slope of depth_core vs n = %.3f\n",
                 k.c_str(), bench::loglog_slope(subset));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MCX amplitude encoder compiler and verifier", "mcxenc"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Compile an input vector into an encoder circuit");
  encode->add_option("--input", enc.input, "random_normal[:seed] | gaussian | ricker | sin | cos | file:<path>")
      ->required();
  encode->add_option("--n", enc.n, "Qubit count (0 infers it from a file)");
  encode->add_option("--L", enc.L, "Bits of angle precision")->capture_default_str();
  encode->add_option("--order", enc.order, "auto | exact | heuristic | identity")->capture_default_str();
  encode->add_option("--qasm", enc.qasm, "Write OpenQASM 3 to this path");
  encode->add_option("--json", enc.json, "Write the circuit as JSON to this path");
  encode->add_flag("--full", enc.full, "Export the amplitude-amplified circuit");
  encode->add_flag("--simulate", enc.simulate, "Verify with the statevector simulator");
  encode->add_option("--seed", enc.seed, "Seed for random inputs");

  DecomposeArgs dec;
  auto* decomp = app.add_subcommand("decompose", "Decompose one binary vector into MCX gates");
  decomp->add_option("--bits", dec.bits, "Bit string, index 0 first");
  decomp->add_option("--hex", dec.hex, "Hex digits, 4 bits each, index 0 first");
  decomp->add_option("--n", dec.n, "Qubit count for --hex");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate an encoder and report its fidelity");
  simulate->add_option("--input", sim.input, "Input spec; also the fidelity reference");
  simulate->add_option("--circuit", sim.circuit, "Circuit JSON written by encode --json");
  simulate->add_option("--n", sim.n, "Qubit count");
  simulate->add_option("--L", sim.L, "Bits of angle precision")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Seed for random inputs");
  simulate->add_flag("--amplitudes", sim.amplitudes, "Print the post-selected amplitudes");

  BenchArgs bch;
  auto* benchmark = app.add_subcommand("bench", "Sweep input kinds and sizes, emit CSV");
  benchmark->add_option("--kinds", bch.kinds, "random_normal gaussian ricker sin cos")
      ->capture_default_str();
  benchmark->add_option("--n-min", bch.n_min)->capture_default_str();
  benchmark->add_option("--n-max", bch.n_max)->capture_default_str();
  benchmark->add_option("--L", bch.L)->capture_default_str();
  benchmark->add_option("--reps", bch.reps)->capture_default_str();
  benchmark->add_option("--seed", bch.seed, "Base seed; repetition r uses seed + r")
      ->capture_default_str();
  benchmark->add_option("--order", bch.order)->capture_default_str();
  benchmark->add_option("--out", bch.out, "CSV path (stdout if omitted)");
  benchmark->add_flag("--no-timing", bch.no_timing, "Zero the wall-time columns");
  benchmark->add_flag("--no-simulate", bch.no_simulate, "Skip statevector verification");
  benchmark->add_option("--threads", bch.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (*encode) return run_encode(enc);
    if (*decomp) return run_decompose(dec);
    if (*simulate) return run_simulate(sim);
    if (*benchmark) return run_bench(bch);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
