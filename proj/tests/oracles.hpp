// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

// Slow, independent reference implementations used only by tests. None of
// these share code with the library beyond its value types.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "mcxenc/bitcore.hpp"
#include "mcxenc/pathopt.hpp"

namespace mcxenc::oracle {

/// Bit nu of the subcube indicator, evaluated character by character.
inline std::vector<bool> expand_text(const std::string& control) {
  const int n = static_cast<int>(control.size());
  std::vector<bool> out(std::size_t{1} << n, false);
  for (std::uint64_t nu = 0; nu < out.size(); ++nu) {
    bool in = true;
    for (int q = 0; q < n; ++q) {
      const char bit = ((nu >> (n - 1 - q)) & 1u) ? '1' : '0';
      if (control[q] != 'I' && control[q] != bit) in = false;
    }
    out[nu] = in;
  }
  return out;
}

inline std::string bits_text(const std::vector<bool>& bits) {
  std::string s;
  for (const bool b : bits) s += b ? '1' : '0';
  return s;
}

/// All strings over {0,1,I}^n generated by counting in base 3.
inline std::vector<std::string> all_strings(int n) {
  std::vector<std::string> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::string s(n, '0');
    int x = code;
    for (int q = n - 1; q >= 0; --q) {
      s[q] = "01I"[x % 3];
      x /= 3;
    }
    out.push_back(s);
  }
  return out;
}

/// Exact minimum number of subcube indicators whose XOR equals each of the
/// 2^(2^n) vectors, by breadth-first search over F2^(2^n). n <= 4.
/// Vectors are encoded with index nu at bit nu.
inline std::vector<int> minimal_xor_cover_table(int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::uint32_t> generators;
  for (const auto& s : all_strings(n)) {
    const auto bits = expand_text(s);
    std::uint32_t word = 0;
    for (std::size_t nu = 0; nu < dim; ++nu) {
      if (bits[nu]) word |= 1u << nu;
    }
    generators.push_back(word);
  }
  std::vector<int> dist(std::size_t{1} << dim, -1);
  std::queue<std::uint32_t> frontier;
  dist[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const std::uint32_t x = frontier.front();
    frontier.pop();
    for (const auto g : generators) {
      const std::uint32_t y = x ^ g;
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        frontier.push(y);
      }
    }
  }
  return dist;
}

inline std::uint32_t to_word(const BinaryVector& b) {
  std::uint32_t w = 0;
  for (std::uint64_t nu = 0; nu < b.size(); ++nu) {
    if (b.test(nu)) w |= 1u << nu;
  }
  return w;
}

/// Minimum path cost from node 0 to node L+1 through all others, by
/// enumerating every permutation of the interior nodes.
inline std::int64_t brute_force_tsp(const CostMatrix& costs) {
  const int size = costs.size();
  std::vector<int> interior(static_cast<std::size_t>(size - 2));
  std::iota(interior.begin(), interior.end(), 1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t total = costs(0, interior.empty() ? size - 1 : interior.front());
    for (std::size_t k = 0; k + 1 < interior.size(); ++k) total += costs(interior[k], interior[k + 1]);
    if (!interior.empty()) total += costs(interior.back(), size - 1);
    best = std::min(best, total);
  } while (std::next_permutation(interior.begin(), interior.end()));
  return best;
}

/// Expected encoder output: (-1)^s sin(pi/2 * m / 2^(L-1)), normalized,
/// computed from the row strings alone.
inline std::vector<double> expected_amplitudes(const std::vector<std::string>& rows) {
  std::vector<double> w;
  double norm2 = 0;
  for (const auto& row : rows) {
    double theta = 0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] == '1') theta += std::ldexp(1.0, -static_cast<int>(j));
    }
    const double x = (row[0] == '1' ? -1.0 : 1.0) * std::sin(M_PI / 2 * theta);
    w.push_back(x);
    norm2 += x * x;
  }
  for (auto& x : w) x /= std::sqrt(norm2);
  return w;
}

inline BinaryVector random_vector(int n, std::mt19937_64& rng, double density = 0.5) {
  BinaryVector b(n);
  std::bernoulli_distribution coin(density);
  for (std::uint64_t i = 0; i < b.size(); ++i) b.set(i, coin(rng));
  return b;
}

inline ControlString random_control(int n, std::mt19937_64& rng) {
  std::string s(static_cast<std::size_t>(n), 'I');
  std::uniform_int_distribution<int> pick(0, 2);
  for (auto& ch : s) ch = "01I"[pick(rng)];
  return ControlString::from_string(s);
}

}  // namespace mcxenc::oracle
