// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/pathopt.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace mcxenc {

PathMatrix build_path_matrix(const EncodingMatrix& b) {
  PathMatrix p;
  p.columns.reserve(static_cast<std::size_t>(b.precision()) + 2);
  p.columns.emplace_back(b.qubits());
  for (const auto& col : b.columns()) p.columns.push_back(col);
  p.columns.emplace_back(b.qubits());
  return p;
}

EdgeCostFn unit_mcx_cost(DecompositionCache& cache) {
  return [&cache](const BinaryVector& delta) {
    return static_cast<std::int64_t>(cache.cost(delta));
  };
}

CostMatrix edge_costs(const PathMatrix& p, const EdgeCostFn& cost_fn) {
  const int size = static_cast<int>(p.columns.size());
  CostMatrix costs(size);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) pairs.emplace_back(i, j);
  }

  std::vector<std::int64_t> values(pairs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      const auto [i, j] = pairs[k];
      values[k] = cost_fn(p.columns[i] ^ p.columns[j]);
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, pairs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    costs(i, j) = values[k];
    costs(j, i) = values[k];
  }
  return costs;
}

CostMatrix edge_costs(const PathMatrix& p) {
  DecompositionCache cache;
  return edge_costs(p, unit_mcx_cost(cache));
}

OrderMode parse_order_mode(std::string_view text) {
  if (text == "auto") return OrderMode::kAuto;
  if (text == "exact") return OrderMode::kExact;
  if (text == "heuristic") return OrderMode::kHeuristic;
  if (text == "identity") return OrderMode::kIdentity;
  throw std::invalid_argument("unknown order mode '" + std::string(text) +
                              "' (expected auto|exact|heuristic|identity)");
}

std::string_view to_string(OrderMode mode) {
  switch (mode) {
    case OrderMode::kAuto: return "auto";
    case OrderMode::kExact: return "exact";
    case OrderMode::kHeuristic: return "heuristic";
    case OrderMode::kIdentity: return "identity";
  }
  return "unknown";
}

Tour identity_tour(int precision) {
  Tour t;
  t.sigma.resize(static_cast<std::size_t>(precision) + 2);
  std::iota(t.sigma.begin(), t.sigma.end(), 0);
  return t;
}

std::int64_t tour_cost(const CostMatrix& costs, std::span<const int> sigma) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j + 1 < sigma.size(); ++j) total += costs(sigma[j], sigma[j + 1]);
  return total;
}

void validate_costs(const CostMatrix& costs) {
  const int size = costs.size();
  if (size < 3) throw std::invalid_argument("malformed cost matrix: need at least 3 nodes");
  for (int i = 0; i < size; ++i) {
    if (costs(i, i) != 0) throw std::invalid_argument("malformed cost matrix: nonzero diagonal");
    for (int j = 0; j < size; ++j) {
      if (costs(i, j) < 0) throw std::invalid_argument("malformed cost matrix: negative entry");
      if (costs(i, j) != costs(j, i)) {
        throw std::invalid_argument("malformed cost matrix: not symmetric");
      }
    }
  }
}

namespace {

// Middle node k (1..L) is bit k-1 of the visited set.
Tour held_karp(const CostMatrix& costs) {
  const int last = costs.size() - 1;
  const int middle = last - 1;
  if (middle > kExactTspMaxNodes) {
    throw std::invalid_argument("exact TSP limited to L <= " + std::to_string(kExactTspMaxNodes));
  }
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::uint32_t all = (std::uint32_t{1} << middle) - 1;

  // to_end[S * middle + j]: cheapest completion from node j+1 once S is
  // visited (j in S), ending at the closing zero column.
  std::vector<std::int64_t> to_end((static_cast<std::size_t>(all) + 1) * middle, kInf);
  auto at = [&](std::uint32_t s, int j) -> std::int64_t& {
    return to_end[static_cast<std::size_t>(s) * middle + j];
  };
  for (int j = 0; j < middle; ++j) at(all, j) = costs(j + 1, last);
  for (std::uint32_t s = all; s-- > 0;) {
    for (int j = 0; j < middle; ++j) {
      if (!((s >> j) & 1u)) continue;
      std::int64_t best = kInf;
      for (int k = 0; k < middle; ++k) {
        if ((s >> k) & 1u) continue;
        best = std::min(best, costs(j + 1, k + 1) + at(s | (1u << k), k));
      }
      at(s, j) = best;
    }
  }

  std::int64_t optimum = kInf;
  for (int k = 0; k < middle; ++k) optimum = std::min(optimum, costs(0, k + 1) + at(1u << k, k));

  // Forward reconstruction, always taking the smallest feasible next node.
  Tour tour;
  tour.sigma.push_back(0);
  std::uint32_t visited = 0;
  int current = 0;
  std::int64_t remaining = optimum;
  while (visited != all) {
    for (int k = 0; k < middle; ++k) {
      if ((visited >> k) & 1u) continue;
      const std::uint32_t next_set = visited | (1u << k);
      const std::int64_t step = costs(current, k + 1);
      if (step + at(next_set, k) == remaining) {
        remaining -= step;
        visited = next_set;
        current = k + 1;
        tour.sigma.push_back(current);
        break;
      }
    }
  }
  tour.sigma.push_back(last);
  tour.total_cost = optimum;
  return tour;
}

std::vector<int> two_opt(const CostMatrix& costs, std::vector<int> sigma) {
  const int last = costs.size() - 1;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 1; i < last - 1; ++i) {
      for (int k = i + 1; k < last; ++k) {
        const std::int64_t before = costs(sigma[i - 1], sigma[i]) + costs(sigma[k], sigma[k + 1]);
        const std::int64_t after = costs(sigma[i - 1], sigma[k]) + costs(sigma[i], sigma[k + 1]);
        if (after < before) {
          std::reverse(sigma.begin() + i, sigma.begin() + k + 1);
          improved = true;
        }
      }
    }
  }
  return sigma;
}

// 2-opt from the nearest-neighbour tour and from the identity tour; the
// better result wins, so the heuristic never loses to the identity order.
Tour nearest_neighbour_two_opt(const CostMatrix& costs) {
  const int last = costs.size() - 1;
  std::vector<int> greedy{0};
  std::vector<bool> used(static_cast<std::size_t>(last) + 1, false);
  int current = 0;
  for (int step = 1; step < last; ++step) {
    int best = -1;
    for (int k = 1; k < last; ++k) {
      if (used[k]) continue;
      if (best < 0 || costs(current, k) < costs(current, best)) best = k;
    }
    used[best] = true;
    greedy.push_back(best);
    current = best;
  }
  greedy.push_back(last);

  Tour tour;
  for (auto start : {std::move(greedy), identity_tour(last - 1).sigma}) {
    auto sigma = two_opt(costs, std::move(start));
    const std::int64_t total = tour_cost(costs, sigma);
    if (tour.sigma.empty() || total < tour.total_cost ||
        (total == tour.total_cost && sigma < tour.sigma)) {
      tour.sigma = std::move(sigma);
      tour.total_cost = total;
    }
  }
  return tour;
}

}  // namespace

Tour solve_tsp(const CostMatrix& costs, OrderMode mode) {
  validate_costs(costs);
  const int precision = costs.size() - 2;
  if (mode == OrderMode::kAuto) {
    mode = precision <= kExactTspLimit ? OrderMode::kExact : OrderMode::kHeuristic;
  }
  switch (mode) {
    case OrderMode::kExact: return held_karp(costs);
    case OrderMode::kHeuristic: return nearest_neighbour_two_opt(costs);
    default: {
      Tour t = identity_tour(precision);
      t.total_cost = tour_cost(costs, t.sigma);
      return t;
    }
  }
}

std::vector<BinaryVector> deltas(const PathMatrix& p, const Tour& tour) {
  if (tour.sigma.size() != p.columns.size()) {
    throw std::invalid_argument("tour length does not match path matrix");
  }
  std::vector<BinaryVector> out;
  out.reserve(p.columns.size() - 1);
  for (std::size_t j = 0; j + 1 < tour.sigma.size(); ++j) {
    out.push_back(p.columns.at(tour.sigma[j]) ^ p.columns.at(tour.sigma[j + 1]));
  }
  return out;
}

}  // namespace mcxenc
