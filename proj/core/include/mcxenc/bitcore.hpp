// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bitcore.hpp
 * @brief Packed F2 vectors over the n-cube and {0,1,I}^n control strings.
 *
 * Index convention: basis index nu = sum_q nu_q * 2^(n-1-q), so qubit 0 is
 * the most significant bit of nu and the leftmost character of every
 * textual form.
 */

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace mcxenc {

/// Exact fraction used for fullness values.
using Fraction = boost::rational<std::int64_t>;

/// Largest register handled by BinaryVector (2^26 bits = 8 MiB).
inline constexpr int kMaxQubits = 26;

// ============================================================================
// BinaryVector
// ============================================================================

/// Length-2^n bit vector packed into 64-bit words, LSB-first within a word.
/// Padding bits past 2^n are kept at zero.
class BinaryVector {
 public:
  BinaryVector() = default;
  explicit BinaryVector(int qubits);

  static BinaryVector ones(int qubits);
  static BinaryVector from_string(std::string_view bits);
  static BinaryVector from_hex(std::string_view hex, int qubits);
  static BinaryVector from_indices(int qubits, std::span<const std::uint64_t> ones);

  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] std::uint64_t size() const noexcept { return std::uint64_t{1} << qubits_; }

  [[nodiscard]] bool test(std::uint64_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint64_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::uint64_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  [[nodiscard]] std::uint64_t popcount() const noexcept;
  [[nodiscard]] bool any() const noexcept;
  [[nodiscard]] bool none() const noexcept { return !any(); }
  [[nodiscard]] bool intersects(const BinaryVector& other) const;

  BinaryVector& operator^=(const BinaryVector& other);
  BinaryVector& operator&=(const BinaryVector& other);
  BinaryVector& operator|=(const BinaryVector& other);

  friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }
  friend BinaryVector operator&(BinaryVector a, const BinaryVector& b) { return a &= b; }
  friend BinaryVector operator|(BinaryVector a, const BinaryVector& b) { return a |= b; }
  [[nodiscard]] BinaryVector operator~() const;

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
  [[nodiscard]] std::vector<std::uint64_t> set_indices() const;

  /// '0'/'1' string of length 2^n, index 0 leftmost.
  [[nodiscard]] std::string to_string() const;
  /// Hex digits, each covering four consecutive indices MSB-first.
  [[nodiscard]] std::string to_hex() const;

  [[nodiscard]] std::size_t hash() const noexcept;

 private:
  void clear_padding() noexcept;
  void require_same_shape(const BinaryVector& other) const;

  int qubits_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

struct BinaryVectorHash {
  std::size_t operator()(const BinaryVector& b) const noexcept { return b.hash(); }
};

// ============================================================================
// ControlString
// ============================================================================

enum class Control : std::uint8_t { kZero = 0, kOne = 1, kFree = 2 };

/// Element of {0,1,I}^n. Stored as a care mask and a value mask over the bits
/// of the basis index, so qubit q lives at bit n-1-q.
class ControlString {
 public:
  static constexpr int kMaxQubits = 31;

  ControlString() = default;
  /// All-free string on `qubits` positions.
  explicit ControlString(int qubits);

  static ControlString from_string(std::string_view text);
  static ControlString from_masks(int qubits, std::uint32_t care, std::uint32_t value);
  /// The fully controlled string selecting exactly `index`.
  static ControlString basis(int qubits, std::uint64_t index);

  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] Control at(int q) const;
  void set(int q, Control c);

  [[nodiscard]] std::uint32_t care_mask() const noexcept { return care_; }
  [[nodiscard]] std::uint32_t value_mask() const noexcept { return value_; }
  [[nodiscard]] std::uint32_t free_mask() const noexcept {
    return ~care_ & full_mask();
  }
  [[nodiscard]] std::uint32_t full_mask() const noexcept {
    return qubits_ == 0 ? 0u : (~std::uint32_t{0} >> (32 - qubits_));
  }

  /// Number of controlled positions, i.e. the tree layer.
  [[nodiscard]] int controlled_count() const noexcept { return std::popcount(care_); }
  [[nodiscard]] int free_count() const noexcept { return qubits_ - controlled_count(); }
  [[nodiscard]] std::uint64_t subcube_size() const noexcept {
    return std::uint64_t{1} << free_count();
  }

  [[nodiscard]] bool contains(std::uint64_t index) const noexcept {
    return (static_cast<std::uint32_t>(index) & care_) == value_;
  }

  /// Calls f(index) for each basis index in the subcube, ascending.
  template <class F>
  void for_each_index(F&& f) const {
    const std::uint32_t free = free_mask();
    std::uint32_t sub = 0;
    do {
      f(static_cast<std::uint64_t>(value_ | sub));
      sub = (sub - free) & free;
    } while (sub != 0);
  }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ControlString&, const ControlString&) = default;
  /// Lexicographic by position with '0' < '1' < 'I'.
  friend std::strong_ordering operator<=>(const ControlString& a, const ControlString& b);

 private:
  int qubits_ = 0;
  std::uint32_t care_ = 0;
  std::uint32_t value_ = 0;
};

/// b_c: the indicator vector of the subcube selected by c.
[[nodiscard]] BinaryVector expand(const ControlString& c);

/// popcount(expand(c) & b) / popcount(expand(c)).
[[nodiscard]] Fraction fullness(const BinaryVector& b, const ControlString& c);

/// Number of ones of b inside the subcube of c.
[[nodiscard]] std::uint64_t count_in_subcube(const BinaryVector& b, const ControlString& c);

/// True iff every partner pair (nu, nu ^ bit_p) with nu in subcube(c0)
/// carries different bits of b. c0/c1 must be the 0/1 children of a common
/// parent at a single position p; anything else throws std::invalid_argument.
[[nodiscard]] bool is_complementary_cut(const BinaryVector& b, const ControlString& c0,
                                        const ControlString& c1);

/// Joins two strings that differ at exactly one position.
/// expand(result) == expand(a) ^ expand(b).
[[nodiscard]] std::optional<ControlString> try_join(const ControlString& a,
                                                    const ControlString& b);

/// All 3^n control strings in lexicographic order.
[[nodiscard]] std::vector<ControlString> all_control_strings(int qubits);

}  // namespace mcxenc
