// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/bitcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcxenc {

namespace {

std::size_t word_count(int qubits) {
  const std::uint64_t bits = std::uint64_t{1} << qubits;
  return static_cast<std::size_t>((bits + 63) / 64);
}

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range [1, " + std::to_string(kMaxQubits) +
                                "]: " + std::to_string(qubits));
  }
}

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

// ============================================================================
// BinaryVector
// ============================================================================

BinaryVector::BinaryVector(int qubits) : qubits_(qubits) {
  check_qubits(qubits);
  words_.assign(word_count(qubits), 0);
}

BinaryVector BinaryVector::ones(int qubits) {
  BinaryVector b(qubits);
  std::fill(b.words_.begin(), b.words_.end(), ~std::uint64_t{0});
  b.clear_padding();
  return b;
}

BinaryVector BinaryVector::from_string(std::string_view bits) {
  const std::size_t len = bits.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw std::invalid_argument("bit string length must be a power of two >= 2, got " +
                                std::to_string(len));
  }
  BinaryVector b(std::countr_zero(len));
  for (std::size_t i = 0; i < len; ++i) {
    if (bits[i] == '1') {
      b.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument(std::string("invalid bit character '") + bits[i] + "'");
    }
  }
  return b;
}

BinaryVector BinaryVector::from_hex(std::string_view hex, int qubits) {
  BinaryVector b(qubits);
  const std::uint64_t digits = (b.size() + 3) / 4;
  if (hex.size() != digits) {
    throw std::invalid_argument("hex string for n=" + std::to_string(qubits) + " needs " +
                                std::to_string(digits) + " digits");
  }
  for (std::uint64_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[d]);
    if (v < 0) throw std::invalid_argument(std::string("invalid hex digit '") + hex[d] + "'");
    for (int k = 0; k < 4; ++k) {
      const std::uint64_t idx = 4 * d + static_cast<std::uint64_t>(k);
      const bool bit = (v >> (3 - k)) & 1;
      if (idx >= b.size()) {
        if (bit) throw std::invalid_argument("hex string sets bits beyond 2^n");
        continue;
      }
      b.set(idx, bit);
    }
  }
  return b;
}

BinaryVector BinaryVector::from_indices(int qubits, std::span<const std::uint64_t> ones) {
  BinaryVector b(qubits);
  for (const auto i : ones) {
    if (i >= b.size()) throw std::invalid_argument("index out of range");
    b.set(i);
  }
  return b;
}

std::uint64_t BinaryVector::popcount() const noexcept {
  std::uint64_t total = 0;
  for (const auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool BinaryVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool BinaryVector::intersects(const BinaryVector& other) const {
  require_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

BinaryVector& BinaryVector::operator^=(const BinaryVector& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BinaryVector& BinaryVector::operator&=(const BinaryVector& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BinaryVector& BinaryVector::operator|=(const BinaryVector& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BinaryVector BinaryVector::operator~() const {
  BinaryVector out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_padding();
  return out;
}

std::vector<std::uint64_t> BinaryVector::set_indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(popcount()));
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      out.push_back(wi * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::string BinaryVector::to_string() const {
  std::string s(static_cast<std::size_t>(size()), '0');
  for (std::uint64_t i = 0; i < size(); ++i) {
    if (test(i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::string BinaryVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t digits = (size() + 3) / 4;
  std::string s;
  s.reserve(static_cast<std::size_t>(digits));
  for (std::uint64_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int k = 0; k < 4; ++k) {
      const std::uint64_t idx = 4 * d + static_cast<std::uint64_t>(k);
      v = (v << 1) | (idx < size() && test(idx) ? 1 : 0);
    }
    s.push_back(kDigits[v]);
  }
  return s;
}

std::size_t BinaryVector::hash() const noexcept {
  // splitmix64 fold
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(qubits_);
  for (const auto w : words_) {
    std::uint64_t z = h + w + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

void BinaryVector::clear_padding() noexcept {
  if (qubits_ < 6) {
    words_[0] &= (std::uint64_t{1} << size()) - 1;
  }
}

void BinaryVector::require_same_shape(const BinaryVector& other) const {
  if (qubits_ != other.qubits_) {
    throw std::invalid_argument("binary vectors of different length: n=" +
                                std::to_string(qubits_) + " vs n=" +
                                std::to_string(other.qubits_));
  }
}

// ============================================================================
// ControlString
// ============================================================================

ControlString::ControlString(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > kMaxQubits) {
    throw std::invalid_argument("control string length out of range: " +
                                std::to_string(qubits));
  }
}

ControlString ControlString::from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty control string");
  ControlString c(static_cast<int>(text.size()));
  for (int q = 0; q < c.qubits_; ++q) {
    switch (text[static_cast<std::size_t>(q)]) {
      case '0': c.set(q, Control::kZero); break;
      case '1': c.set(q, Control::kOne); break;
      case 'I': c.set(q, Control::kFree); break;
      default:
        throw std::invalid_argument(std::string("invalid control character '") +
                                    text[static_cast<std::size_t>(q)] + "'");
    }
  }
  return c;
}

ControlString ControlString::from_masks(int qubits, std::uint32_t care, std::uint32_t value) {
  ControlString c(qubits);
  if ((care & ~c.full_mask()) != 0 || (value & ~care) != 0) {
    throw std::invalid_argument("inconsistent control masks");
  }
  c.care_ = care;
  c.value_ = value;
  return c;
}

ControlString ControlString::basis(int qubits, std::uint64_t index) {
  ControlString c(qubits);
  if (index >> qubits) throw std::invalid_argument("basis index out of range");
  c.care_ = c.full_mask();
  c.value_ = static_cast<std::uint32_t>(index);
  return c;
}

Control ControlString::at(int q) const {
  if (q < 0 || q >= qubits_) throw std::out_of_range("control position out of range");
  const std::uint32_t bit = std::uint32_t{1} << (qubits_ - 1 - q);
  if (!(care_ & bit)) return Control::kFree;
  return (value_ & bit) ? Control::kOne : Control::kZero;
}

void ControlString::set(int q, Control c) {
  if (q < 0 || q >= qubits_) throw std::out_of_range("control position out of range");
  const std::uint32_t bit = std::uint32_t{1} << (qubits_ - 1 - q);
  care_ &= ~bit;
  value_ &= ~bit;
  if (c != Control::kFree) care_ |= bit;
  if (c == Control::kOne) value_ |= bit;
}

std::string ControlString::to_string() const {
  std::string s(static_cast<std::size_t>(qubits_), 'I');
  for (int q = 0; q < qubits_; ++q) {
    const Control c = at(q);
    if (c == Control::kZero) s[static_cast<std::size_t>(q)] = '0';
    if (c == Control::kOne) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const ControlString& a, const ControlString& b) {
  if (auto cmp = a.qubits_ <=> b.qubits_; cmp != 0) return cmp;
  for (int q = 0; q < a.qubits_; ++q) {
    const auto x = static_cast<int>(a.at(q));
    const auto y = static_cast<int>(b.at(q));
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

// ============================================================================
// Free functions
// ============================================================================

BinaryVector expand(const ControlString& c) {
  BinaryVector b(c.qubits());
  c.for_each_index([&](std::uint64_t i) { b.set(i); });
  return b;
}

std::uint64_t count_in_subcube(const BinaryVector& b, const ControlString& c) {
  if (b.qubits() != c.qubits()) throw std::invalid_argument("length mismatch");
  std::uint64_t count = 0;
  c.for_each_index([&](std::uint64_t i) { count += b.test(i) ? 1 : 0; });
  return count;
}

Fraction fullness(const BinaryVector& b, const ControlString& c) {
  return {static_cast<std::int64_t>(count_in_subcube(b, c)),
          static_cast<std::int64_t>(c.subcube_size())};
}

bool is_complementary_cut(const BinaryVector& b, const ControlString& c0,
                          const ControlString& c1) {
  if (c0.qubits() != c1.qubits() || c0.qubits() != b.qubits()) {
    throw std::invalid_argument("length mismatch");
  }
  const std::uint32_t diff_care = c0.care_mask() ^ c1.care_mask();
  const std::uint32_t diff_value = c0.value_mask() ^ c1.value_mask();
  const bool single_split = diff_care == 0 && std::popcount(diff_value) == 1 &&
                            (c1.value_mask() & diff_value) != 0;
  if (!single_split) {
    throw std::invalid_argument("not a 0/1 bi-partition at a single position: " +
                                c0.to_string() + " / " + c1.to_string());
  }
  bool complementary = true;
  const std::uint32_t free = c0.free_mask();
  std::uint32_t sub = 0;
  do {
    const std::uint64_t nu = c0.value_mask() | sub;
    if (b.test(nu) == b.test(nu ^ diff_value)) {
      complementary = false;
      break;
    }
    sub = (sub - free) & free;
  } while (sub != 0);
  return complementary;
}

std::optional<ControlString> try_join(const ControlString& a, const ControlString& b) {
  if (a.qubits() != b.qubits()) return std::nullopt;
  int diff_pos = -1;
  for (int q = 0; q < a.qubits(); ++q) {
    if (a.at(q) != b.at(q)) {
      if (diff_pos >= 0) return std::nullopt;
      diff_pos = q;
    }
  }
  if (diff_pos < 0) return std::nullopt;
  // {0,1} -> I, {0,I} -> 1, {1,I} -> 0: the symbol not present in the pair.
  const int sum = static_cast<int>(a.at(diff_pos)) + static_cast<int>(b.at(diff_pos));
  ControlString joined = a;
  joined.set(diff_pos, static_cast<Control>(3 - sum));
  return joined;
}

std::vector<ControlString> all_control_strings(int qubits) {
  if (qubits < 1 || qubits > 12) throw std::invalid_argument("enumeration limited to n <= 12");
  std::size_t total = 1;
  for (int q = 0; q < qubits; ++q) total *= 3;
  std::vector<ControlString> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    ControlString c(qubits);
    std::size_t rest = code;
    for (int q = qubits - 1; q >= 0; --q) {
      c.set(q, static_cast<Control>(rest % 3));
      rest /= 3;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace mcxenc
