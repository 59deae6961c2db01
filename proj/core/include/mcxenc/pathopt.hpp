// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pathopt.hpp
 * @brief Ordering of the encoding layers: the zero-padded path matrix, the
 * pairwise MCX-count edge costs, and a fixed-endpoint TSP over them.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcxenc/bitcore.hpp"
#include "mcxenc/decomposer.hpp"
#include "mcxenc/preprocess.hpp"

namespace mcxenc {

/// (0, B[:,0], ..., B[:,L-1], 0): L+2 columns.
struct PathMatrix {
  std::vector<BinaryVector> columns;

  [[nodiscard]] int precision() const noexcept { return static_cast<int>(columns.size()) - 2; }
  [[nodiscard]] int qubits() const { return columns.front().qubits(); }
};

[[nodiscard]] PathMatrix build_path_matrix(const EncodingMatrix& b);

/// Dense square matrix of integer edge costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size, 0) {}

  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] std::int64_t operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * size_ + j];
  }
  std::int64_t& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * size_ + j]; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  int size_ = 0;
  std::vector<std::int64_t> data_;
};

/// Cost of realizing the shift by a difference vector. The shipped model is
/// the unit MCX count; weighted models plug in here.
using EdgeCostFn = std::function<std::int64_t(const BinaryVector&)>;

/// Unit-cost model backed by a decomposition cache.
[[nodiscard]] EdgeCostFn unit_mcx_cost(DecompositionCache& cache);

/// Entry (i, j) = cost(P[:,i] ^ P[:,j]). Pairs are evaluated concurrently.
[[nodiscard]] CostMatrix edge_costs(const PathMatrix& p, const EdgeCostFn& cost_fn);
[[nodiscard]] CostMatrix edge_costs(const PathMatrix& p);

enum class OrderMode { kAuto, kExact, kHeuristic, kIdentity };

[[nodiscard]] OrderMode parse_order_mode(std::string_view text);
[[nodiscard]] std::string_view to_string(OrderMode mode);

/// Largest L solved exactly in kAuto mode.
inline constexpr int kExactTspLimit = 10;
/// Largest L accepted by the exact solver at all.
inline constexpr int kExactTspMaxNodes = 16;

/// sigma over {0..L+1} with sigma[0] = 0 and sigma[L+1] = L+1.
struct Tour {
  std::vector<int> sigma;
  std::int64_t total_cost = 0;

  friend bool operator==(const Tour&, const Tour&) = default;
};

[[nodiscard]] Tour identity_tour(int precision);

/// Sum of consecutive edge costs along sigma.
[[nodiscard]] std::int64_t tour_cost(const CostMatrix& costs, std::span<const int> sigma);

/// Throws std::invalid_argument on a malformed cost matrix (non-square,
/// fewer than 3 nodes, negative, asymmetric, nonzero diagonal).
void validate_costs(const CostMatrix& costs);

/// Held-Karp for L <= 10 (or kExact), nearest neighbour + 2-opt otherwise.
/// Ties go to the lexicographically smallest sigma.
[[nodiscard]] Tour solve_tsp(const CostMatrix& costs, OrderMode mode = OrderMode::kAuto);

/// The L+1 consecutive differences P[:,sigma(j)] ^ P[:,sigma(j+1)].
[[nodiscard]] std::vector<BinaryVector> deltas(const PathMatrix& p, const Tour& tour);

}  // namespace mcxenc
