// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/decomposer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace mcxenc {

namespace {

// Population counts of b over every subcube of the n-cube, indexed by the
// base-3 code of the control string: digit d belongs to index bit d and takes
// 0, 1, or 2 (= free). Lexicographic control-string order equals code order.
class SubcubeCounts {
 public:
  explicit SubcubeCounts(int qubits)
      : qubits_(qubits),
        full_(static_cast<std::uint32_t>((std::uint64_t{1} << qubits) - 1)),
        pow3_(static_cast<std::size_t>(qubits) + 1, 1),
        ternary_(std::size_t{1} << qubits, 0),
        masks_by_weight_(static_cast<std::size_t>(qubits) + 1) {
    for (int d = 1; d <= qubits; ++d) pow3_[d] = pow3_[d - 1] * 3;
    for (std::uint32_t x = 0; x <= full_; ++x) {
      std::uint32_t code = 0;
      for (int d = 0; d < qubits; ++d) {
        if ((x >> d) & 1u) code += pow3_[d];
      }
      ternary_[x] = code;
      masks_by_weight_[std::popcount(x)].push_back(x);
    }
    table_.assign(pow3_[qubits], 0);
  }

  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] std::uint32_t full_mask() const noexcept { return full_; }
  [[nodiscard]] const std::vector<std::uint32_t>& masks_with_weight(int w) const {
    return masks_by_weight_[w];
  }

  [[nodiscard]] std::uint32_t code(std::uint32_t care, std::uint32_t value) const {
    return 2 * ternary_[~care & full_] + ternary_[value];
  }
  [[nodiscard]] std::uint32_t count(std::uint32_t care, std::uint32_t value) const {
    return table_[code(care, value)];
  }

  void rebuild(const BinaryVector& b) {
    for (std::uint32_t nu = 0; nu <= full_; ++nu) table_[ternary_[nu]] = b.test(nu) ? 1 : 0;
    const std::size_t total = table_.size();
    for (int d = 0; d < qubits_; ++d) {
      const std::size_t stride = pow3_[d];
      const std::size_t block = 3 * stride;
      for (std::size_t base = 0; base < total; base += block) {
        std::uint32_t* lo = &table_[base];
        std::uint32_t* hi = lo + stride;
        std::uint32_t* both = hi + stride;
        for (std::size_t i = 0; i < stride; ++i) both[i] = lo[i] + hi[i];
      }
    }
  }

  // Adds `delta` to every subcube containing nu.
  void adjust(std::uint32_t nu, int delta) {
    std::uint32_t free = 0;
    do {
      table_[2 * ternary_[free] + ternary_[nu & ~free]] += static_cast<std::uint32_t>(delta);
      free = (free - full_) & full_;
    } while (free != 0);
  }

  // Incremental updates cost 2^n per flipped index; a rebuild costs about
  // n * 3^(n-1). Pick the cheaper one.
  [[nodiscard]] bool prefer_rebuild(std::uint64_t flips) const {
    const std::uint64_t incremental = flips << qubits_;
    const std::uint64_t rebuild = static_cast<std::uint64_t>(qubits_) * pow3_[qubits_] / 3;
    return incremental >= rebuild;
  }

 private:
  int qubits_;
  std::uint32_t full_;
  std::vector<std::uint32_t> pow3_;
  std::vector<std::uint32_t> ternary_;
  std::vector<std::vector<std::uint32_t>> masks_by_weight_;
  std::vector<std::uint32_t> table_;
};

void check_decomposable(const BinaryVector& b) {
  if (b.qubits() < 1 || b.qubits() > kMaxDecomposeQubits) {
    throw std::invalid_argument("decomposer supports 1 <= n <= " +
                                std::to_string(kMaxDecomposeQubits));
  }
}

bool halves_complementary(const BinaryVector& b, std::uint32_t care0, std::uint32_t value0,
                          std::uint32_t partner_bit, std::uint32_t full) {
  const std::uint32_t free = ~care0 & full;
  std::uint32_t sub = 0;
  do {
    const std::uint32_t nu = value0 | sub;
    if (b.test(nu) == b.test(nu | partner_bit)) return false;
    sub = (sub - free) & free;
  } while (sub != 0);
  return true;
}

// Requires `counts` to describe b.
CandidateSet find_candidates(const BinaryVector& b, const SubcubeCounts& counts) {
  const int n = counts.qubits();
  const std::uint32_t full = counts.full_mask();
  const std::uint64_t ones = b.popcount();

  CandidateSet out;
  for (int layer = 0; layer <= n; ++layer) {
    const std::uint64_t size = std::uint64_t{1} << (n - layer);
    // A semi-full node needs 3/4 of `size` ones and a complementary cut needs
    // `size` ones in its parent; both are impossible while 3*size > 4*ones.
    if (3 * size > 4 * ones) continue;

    std::vector<Candidate> full_nodes;
    std::vector<Candidate> semi_nodes;
    for (const std::uint32_t care : counts.masks_with_weight(layer)) {
      std::uint32_t value = 0;
      do {
        const std::uint64_t c = counts.count(care, value);
        if (c == size) {
          full_nodes.push_back({ControlString::from_masks(n, care, value),
                                Fraction(1)});
        } else if (full_nodes.empty() && 4 * c >= 3 * size) {
          semi_nodes.push_back({ControlString::from_masks(n, care, value),
                                Fraction(static_cast<std::int64_t>(c),
                                         static_cast<std::int64_t>(size))});
        }
        value = (value - care) & care;
      } while (value != 0);
    }
    out.layer = layer;
    if (!full_nodes.empty()) {
      out.kind = NodeKind::kFull;
      out.candidates = std::move(full_nodes);
      return out;
    }
    if (!semi_nodes.empty()) {
      out.kind = NodeKind::kSemiFull;
      out.candidates = std::move(semi_nodes);
      return out;
    }
    if (layer == 0) continue;

    // Complementary cuts: parents on layer-1 holding exactly half ones.
    std::vector<std::pair<ControlString, ControlString>> cuts;
    for (const std::uint32_t parent_care : counts.masks_with_weight(layer - 1)) {
      const std::uint32_t parent_free = ~parent_care & full;
      std::uint32_t value = 0;
      do {
        if (counts.count(parent_care, value) == size) {
          std::uint32_t split_bits = parent_free;
          while (split_bits) {
            const std::uint32_t bit = split_bits & (~split_bits + 1);
            split_bits &= split_bits - 1;
            if (halves_complementary(b, parent_care | bit, value, bit, full)) {
              cuts.emplace_back(ControlString::from_masks(n, parent_care | bit, value),
                                ControlString::from_masks(n, parent_care | bit, value | bit));
            }
          }
        }
        value = (value - parent_care) & parent_care;
      } while (value != 0);
    }
    if (!cuts.empty()) {
      out.kind = NodeKind::kComplementary;
      std::vector<ControlString> firsts;
      firsts.reserve(cuts.size());
      for (const auto& cut : cuts) firsts.push_back(cut.first);
      std::sort(firsts.begin(), firsts.end());
      firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
      for (const auto& c : firsts) {
        out.candidates.push_back(
            {c, Fraction(static_cast<std::int64_t>(counts.count(c.care_mask(), c.value_mask())),
                         static_cast<std::int64_t>(size))});
      }
      out.cuts = std::move(cuts);
      return out;
    }
  }
  // Unreachable for b != 0: every set bit is a full node on layer n.
  throw std::logic_error("no valid node found for nonzero vector");
}

bool subcube_hits(const BinaryVector& mask, const ControlString& c) {
  const std::uint32_t free = c.free_mask();
  std::uint32_t sub = 0;
  do {
    if (mask.test(c.value_mask() | sub)) return true;
    sub = (sub - free) & free;
  } while (sub != 0);
  return false;
}

}  // namespace

BinaryVector Decomposition::reassemble(int qubits) const {
  BinaryVector b(qubits);
  for (const auto& c : controls) c.for_each_index([&](std::uint64_t i) { b.flip(i); });
  return b;
}

CandidateSet find_next_control_strings(const BinaryVector& b) {
  check_decomposable(b);
  if (b.none()) throw std::invalid_argument("nothing to decompose: zero vector");
  SubcubeCounts counts(b.qubits());
  counts.rebuild(b);
  return find_candidates(b, counts);
}

std::vector<ControlString> max_independent_set(const CandidateSet& cands,
                                               const BinaryVector& b) {
  std::vector<const Candidate*> order;
  order.reserve(cands.candidates.size());
  for (const auto& c : cands.candidates) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Candidate* x, const Candidate* y) {
    if (x->fullness != y->fullness) return x->fullness > y->fullness;
    return x->control < y->control;
  });

  std::vector<ControlString> kept;
  BinaryVector covered(b.qubits());
  for (const Candidate* cand : order) {
    if (subcube_hits(covered, cand->control)) continue;
    cand->control.for_each_index([&](std::uint64_t i) { covered.set(i); });
    kept.push_back(cand->control);
  }
  return kept;
}

Decomposition naive_decomposition(const BinaryVector& b) {
  Decomposition d;
  for (const auto i : b.set_indices()) d.controls.push_back(ControlString::basis(b.qubits(), i));
  return d;
}

std::vector<ControlString> join_reduce(std::vector<ControlString> controls) {
  auto key = [](const ControlString& c) {
    return (std::uint64_t{c.care_mask()} << 32) | c.value_mask();
  };
  std::unordered_map<std::uint64_t, ControlString> live;
  // XOR semantics: a repeated string cancels.
  auto toggle = [&](const ControlString& c) {
    if (!live.erase(key(c))) live.emplace(key(c), c);
  };
  for (const auto& c : controls) toggle(c);

  constexpr Control kSymbols[] = {Control::kZero, Control::kOne, Control::kFree};
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<ControlString> snapshot;
    snapshot.reserve(live.size());
    for (const auto& [k, c] : live) snapshot.push_back(c);
    std::sort(snapshot.begin(), snapshot.end());
    for (const auto& c : snapshot) {
      bool merged = false;
      for (int q = 0; q < c.qubits() && !merged && live.contains(key(c)); ++q) {
        for (const Control s : kSymbols) {
          if (s == c.at(q)) continue;
          ControlString partner = c;
          partner.set(q, s);
          if (!live.contains(key(partner))) continue;
          live.erase(key(c));
          live.erase(key(partner));
          toggle(*try_join(c, partner));
          merged = changed = true;
          break;
        }
      }
    }
  }

  std::vector<ControlString> out;
  out.reserve(live.size());
  for (const auto& [k, c] : live) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

Decomposition decompose(const BinaryVector& b) {
  check_decomposable(b);
  Decomposition out;
  const std::uint64_t initial_ones = b.popcount();
  if (initial_ones == 0) return out;

  SubcubeCounts counts(b.qubits());
  counts.rebuild(b);
  BinaryVector residue = b;
  std::unordered_set<BinaryVector, BinaryVectorHash> seen;
  const std::uint64_t max_rounds = 4 * initial_ones + 4;
  for (std::uint64_t round = 0; residue.any(); ++round) {
    // Complementary cuts can oscillate; finish a revisited residue with minterms.
    if (!seen.insert(residue).second) {
      for (const auto i : residue.set_indices()) {
        out.controls.push_back(ControlString::basis(b.qubits(), i));
      }
      break;
    }
    if (round >= max_rounds) {
      throw std::logic_error("decompose made no progress after " + std::to_string(round) +
                             " rounds on " + b.to_hex());
    }
    const CandidateSet cands = find_candidates(residue, counts);
    const std::vector<ControlString> chosen = max_independent_set(cands, residue);

    std::uint64_t flips = 0;
    for (const auto& c : chosen) flips += c.subcube_size();
    const bool rebuild = counts.prefer_rebuild(flips);
    for (const auto& c : chosen) {
      c.for_each_index([&](std::uint64_t i) {
        const bool was = residue.test(i);
        residue.flip(i);
        if (!rebuild) counts.adjust(static_cast<std::uint32_t>(i), was ? -1 : 1);
      });
      out.controls.push_back(c);
    }
    if (rebuild) counts.rebuild(residue);
  }

  out.controls = join_reduce(std::move(out.controls));
  if (out.gate_count() > initial_ones) return naive_decomposition(b);
  return out;
}

std::size_t cost(const BinaryVector& b) { return decompose(b).gate_count(); }

const Decomposition& DecompositionCache::get(const BinaryVector& b) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(b); it != entries_.end()) return it->second;
  }
  Decomposition d = decompose(b);
  std::unique_lock lock(mutex_);
  return entries_.try_emplace(b, std::move(d)).first->second;
}

std::size_t DecompositionCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace mcxenc
