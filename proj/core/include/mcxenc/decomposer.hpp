// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file decomposer.hpp
 * @brief Writes a binary vector as an XOR of subcube indicators, i.e. a
 * product of MCX gates that all target the same qubit.
 *
 * The search walks the control-string tree layer by layer (layer l holds the
 * strings with l controlled positions) and stops at the first layer that has
 * full nodes (fullness 1), semi-full nodes (fullness >= 3/4) or complementary
 * cuts, in that priority. A greedy pass then keeps a subset of the
 * candidates with pairwise-disjoint subcubes, XORs them into the residue, and
 * the loop repeats until the residue is zero. A final pass applies the join
 * rules to any two gates whose strings differ at one position.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcxenc/bitcore.hpp"

namespace mcxenc {

/// Largest n accepted by the decomposer (the count table holds 3^n entries).
inline constexpr int kMaxDecomposeQubits = 16;

enum class NodeKind { kFull, kSemiFull, kComplementary };

struct Candidate {
  ControlString control;
  Fraction fullness;
};

struct CandidateSet {
  int layer = 0;
  NodeKind kind = NodeKind::kFull;
  std::vector<Candidate> candidates;
  /// For complementary layers: the (c0, c1) bi-partitions found. The
  /// candidates are their c0 members.
  std::vector<std::pair<ControlString, ControlString>> cuts;
};

struct Decomposition {
  std::vector<ControlString> controls;

  [[nodiscard]] std::size_t gate_count() const noexcept { return controls.size(); }
  /// XOR of the expansions of all controls; equals the decomposed vector.
  [[nodiscard]] BinaryVector reassemble(int qubits) const;
};

/// Candidate strings from the first tree layer that contains a valid node.
/// Throws std::invalid_argument for b == 0.
[[nodiscard]] CandidateSet find_next_control_strings(const BinaryVector& b);

/// Greedy disjoint selection: candidates sorted by descending fullness, then
/// lexicographically ('0' < '1' < 'I'), each kept if its subcube misses all
/// kept ones.
[[nodiscard]] std::vector<ControlString> max_independent_set(const CandidateSet& cands,
                                                             const BinaryVector& b);

/// Repeatedly joins pairs of strings that differ at exactly one position and
/// cancels duplicates. The XOR of the expansions is unchanged; the result is
/// sorted lexicographically.
[[nodiscard]] std::vector<ControlString> join_reduce(std::vector<ControlString> controls);

/// Full decomposition. Deterministic; never uses more gates than popcount(b).
[[nodiscard]] Decomposition decompose(const BinaryVector& b);

/// The one-gate-per-set-bit construction.
[[nodiscard]] Decomposition naive_decomposition(const BinaryVector& b);

/// decompose(b).gate_count(), uncached.
[[nodiscard]] std::size_t cost(const BinaryVector& b);

/// Thread-safe memo of decompositions keyed by the packed bits.
class DecompositionCache {
 public:
  const Decomposition& get(const BinaryVector& b);
  std::size_t cost(const BinaryVector& b) { return get(b).gate_count(); }
  [[nodiscard]] std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<BinaryVector, Decomposition, BinaryVectorHash> entries_;
};

}  // namespace mcxenc
