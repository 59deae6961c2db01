// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bench.hpp
 * @brief Input generators, the end-to-end encode pipeline, and CSV sweeps.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcxenc/circuit.hpp"
#include "mcxenc/pathopt.hpp"
#include "mcxenc/preprocess.hpp"
#include "mcxenc/simulator.hpp"

namespace mcxenc::bench {

enum class InputKind { kRandomNormal, kGaussian, kRicker, kSin, kCos, kFile };

[[nodiscard]] InputKind parse_input_kind(std::string_view text);
[[nodiscard]] std::string_view to_string(InputKind kind);

struct InputSpec {
  InputKind kind = InputKind::kRandomNormal;
  int qubits = 0;  ///< n; for files 0 means "infer from the file length"
  std::optional<std::uint64_t> seed;
  std::optional<std::string> path;
};

/// Parses "<kind>", "<kind>:<seed>", "file:<path>", or a bare path to an
/// existing file.
[[nodiscard]] InputSpec parse_input_spec(std::string_view text, int qubits,
                                         std::optional<std::uint64_t> seed = std::nullopt);

/// Reads one number per line ('#' comments allowed) or a JSON array.
[[nodiscard]] std::vector<double> read_vector_file(const std::string& path);

/// Samples N = 2^n points. Function kinds use the endpoint-inclusive grid
/// x_k = a + k (b - a) / (N - 1); random_normal is unit-normalized.
[[nodiscard]] std::vector<double> generate(const InputSpec& spec);

struct BenchRecord {
  std::string input_kind;
  int n = 0;
  int L = 0;
  std::optional<std::uint64_t> seed;
  std::size_t depth_core = 0;
  std::size_t depth_full = 0;
  std::size_t mcx_total = 0;
  double p_success = 0.0;
  double rho = 0.0;
  std::optional<double> infidelity;
  double attempts_estimate = 0.0;
  std::string tsp_mode;
  double wall_ms_decompose = 0.0;
  double wall_ms_tsp = 0.0;
  double wall_ms_simulate = 0.0;
};

struct PipelineOptions {
  int precision = 5;
  OrderMode order = OrderMode::kAuto;
  /// Simulate the core circuit; unset means "when n <= 14".
  std::optional<bool> simulate;
  bool build_full = true;
};

struct PipelineResult {
  BenchRecord record;
  std::vector<double> input;
  EncodingMatrix matrix;
  Tour tour;
  Tour identity;  ///< identity order with its cost, for comparison
  Circuit core;
  std::optional<PostSelection> postselection;
};

[[nodiscard]] PipelineResult run_pipeline(const std::vector<double>& input, const InputSpec& spec,
                                          const PipelineOptions& options);
[[nodiscard]] PipelineResult run_pipeline(const InputSpec& spec, const PipelineOptions& options);

struct SweepConfig {
  std::vector<InputKind> kinds;
  int n_min = 5;
  int n_max = 10;
  int repetitions = 1;
  std::uint64_t base_seed = 1;
  PipelineOptions pipeline;
  /// Zero the wall-time columns so identical configs give identical bytes.
  bool record_timing = true;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Data records ordered by kind (as listed), n, then repetition.
[[nodiscard]] std::vector<BenchRecord> sweep_records(const SweepConfig& config);

/// CSV header: the BenchRecord fields in declaration order.
[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string to_csv_row(const BenchRecord& r);

/// Header, one row per record, then per (kind, n) one aggregate row whose
/// seed column reads "aggregate" and whose numeric columns read "mean+-sd".
[[nodiscard]] std::string to_csv(const std::vector<BenchRecord>& records);

[[nodiscard]] std::string sweep(const SweepConfig& config);

/// Least-squares slope of log(depth_core) against log(n), per record set.
[[nodiscard]] double loglog_slope(const std::vector<BenchRecord>& records);

/// {n, L, order, depth_core, depth_full, mcx_count, p_success}.
[[nodiscard]] std::string summary_json(const PipelineResult& result);

}  // namespace mcxenc::bench
