// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file preprocess.hpp
 * @brief Real vector -> rescaled angles -> signed L-bit encoding matrix, and
 * the classical predictions (approximating vector, success probability) that
 * the simulator is checked against.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcxenc/bitcore.hpp"

namespace mcxenc {

/// N x L binary matrix. Column 0 holds sign bits, columns 1..L-1 the
/// magnitude bits most significant first. Stored column-wise because the
/// encoder consumes whole columns.
class EncodingMatrix {
 public:
  EncodingMatrix(int qubits, int precision);

  /// Rows given as '0'/'1' strings of equal length L; row count must be 2^n.
  static EncodingMatrix from_rows(std::span<const std::string> rows);

  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] int precision() const noexcept { return precision_; }
  [[nodiscard]] std::uint64_t rows() const noexcept { return std::uint64_t{1} << qubits_; }

  [[nodiscard]] bool bit(std::uint64_t row, int col) const { return columns_.at(col).test(row); }
  void set_bit(std::uint64_t row, int col, bool value) { columns_.at(col).set(row, value); }

  [[nodiscard]] const BinaryVector& column(int col) const { return columns_.at(col); }
  [[nodiscard]] std::span<const BinaryVector> columns() const noexcept { return columns_; }

  /// Integer magnitude m_i encoded by bits 1..L-1 of row i.
  [[nodiscard]] std::uint64_t magnitude(std::uint64_t row) const;
  [[nodiscard]] bool negative(std::uint64_t row) const { return bit(row, 0); }
  [[nodiscard]] std::string row_string(std::uint64_t row) const;

  friend bool operator==(const EncodingMatrix&, const EncodingMatrix&) = default;

 private:
  int qubits_;
  int precision_;
  std::vector<BinaryVector> columns_;
};

/// Throws std::invalid_argument unless the length is a power of two >= 2 and
/// the vector has at least one nonzero finite entry.
void validate_input(std::span<const double> v);

/// theta_i = asin(v_i / max|v|) / (pi/2), each in [-1, 1].
[[nodiscard]] std::vector<double> compute_angles(std::span<const double> v);

/// Signed truncating quantization to L bits; magnitudes clamp at 2^(L-1)-1.
[[nodiscard]] EncodingMatrix quantize(std::span<const double> thetas, int precision);

/// Convenience: quantize(compute_angles(v), precision).
[[nodiscard]] EncodingMatrix encode_input(std::span<const double> v, int precision);

/// Quantized angle of each row, (-1)^s * m / 2^(L-1).
[[nodiscard]] std::vector<double> quantized_angles(const EncodingMatrix& b);

/// (-1)^s * sin(pi/2 * m / 2^(L-1)) per row, before normalization.
[[nodiscard]] std::vector<double> quantized_sines(const EncodingMatrix& b);

/// Unit-norm approximating vector w. Throws on an all-zero matrix.
[[nodiscard]] std::vector<double> reconstruct(const EncodingMatrix& b);

/// rho = mean of (v_i / max|v|)^2.
[[nodiscard]] double density_rho(std::span<const double> v);

/// Post-selection probability the finite-L encoder actually achieves:
/// mean of the squared quantized sines.
[[nodiscard]] double quantized_success_probability(const EncodingMatrix& b);

}  // namespace mcxenc
