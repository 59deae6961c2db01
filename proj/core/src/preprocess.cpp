// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/preprocess.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcxenc {

namespace {

constexpr int kMaxPrecision = 31;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

EncodingMatrix::EncodingMatrix(int qubits, int precision)
    : qubits_(qubits), precision_(precision) {
  if (precision < 2 || precision > kMaxPrecision) {
    throw std::invalid_argument("precision L must be in [2, " + std::to_string(kMaxPrecision) +
                                "], got " + std::to_string(precision));
  }
  columns_.assign(static_cast<std::size_t>(precision), BinaryVector(qubits));
}

EncodingMatrix EncodingMatrix::from_rows(std::span<const std::string> rows) {
  if (rows.empty() || !std::has_single_bit(rows.size()) || rows.size() < 2) {
    throw std::invalid_argument("row count must be a power of two >= 2");
  }
  const int qubits = std::countr_zero(rows.size());
  EncodingMatrix b(qubits, static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const char ch = rows[i][j];
      if (ch != '0' && ch != '1') throw std::invalid_argument("row characters must be 0/1");
      b.set_bit(i, static_cast<int>(j), ch == '1');
    }
  }
  return b;
}

std::uint64_t EncodingMatrix::magnitude(std::uint64_t row) const {
  std::uint64_t m = 0;
  for (int j = 1; j < precision_; ++j) m = (m << 1) | (bit(row, j) ? 1u : 0u);
  return m;
}

std::string EncodingMatrix::row_string(std::uint64_t row) const {
  std::string s;
  for (int j = 0; j < precision_; ++j) s.push_back(bit(row, j) ? '1' : '0');
  return s;
}

void validate_input(std::span<const double> v) {
  if (v.size() < 2 || !std::has_single_bit(v.size())) {
    throw std::invalid_argument("input length must be a power of two >= 2, got " +
                                std::to_string(v.size()));
  }
  if (std::countr_zero(v.size()) > kMaxQubits) {
    throw std::invalid_argument("input too long");
  }
  for (const double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("input contains a non-finite value");
  }
  if (max_abs(v) == 0.0) throw std::invalid_argument("degenerate input: all entries are zero");
}

std::vector<double> compute_angles(std::span<const double> v) {
  validate_input(v);
  const double inf_norm = max_abs(v);
  std::vector<double> thetas(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double ratio = std::clamp(v[i] / inf_norm, -1.0, 1.0);
    thetas[i] = std::asin(ratio) / (std::numbers::pi / 2);
  }
  return thetas;
}

EncodingMatrix quantize(std::span<const double> thetas, int precision) {
  if (thetas.size() < 2 || !std::has_single_bit(thetas.size())) {
    throw std::invalid_argument("angle vector length must be a power of two >= 2");
  }
  EncodingMatrix b(std::countr_zero(thetas.size()), precision);
  const std::uint64_t scale = std::uint64_t{1} << (precision - 1);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theta = thetas[i];
    if (!(theta >= -1.0 && theta <= 1.0)) {
      throw std::invalid_argument("angle outside [-1, 1]");
    }
    b.set_bit(i, 0, theta < 0.0);
    const auto scaled = static_cast<std::uint64_t>(std::floor(std::abs(theta) * scale));
    const std::uint64_t m = std::min(scaled, scale - 1);
    for (int j = 1; j < precision; ++j) {
      b.set_bit(i, j, (m >> (precision - 1 - j)) & 1u);
    }
  }
  return b;
}

EncodingMatrix encode_input(std::span<const double> v, int precision) {
  const auto thetas = compute_angles(v);
  return quantize(thetas, precision);
}

std::vector<double> quantized_angles(const EncodingMatrix& b) {
  const double scale = std::ldexp(1.0, b.precision() - 1);
  std::vector<double> out(b.rows());
  for (std::uint64_t i = 0; i < b.rows(); ++i) {
    const double mag = static_cast<double>(b.magnitude(i)) / scale;
    out[i] = b.negative(i) ? -mag : mag;
  }
  return out;
}

std::vector<double> quantized_sines(const EncodingMatrix& b) {
  auto out = quantized_angles(b);
  for (auto& x : out) x = std::sin(std::numbers::pi / 2 * x);
  return out;
}

std::vector<double> reconstruct(const EncodingMatrix& b) {
  auto w = quantized_sines(b);
  double norm2 = 0.0;
  for (const double x : w) norm2 += x * x;
  if (norm2 == 0.0) {
    throw std::invalid_argument("encoding matrix has zero magnitude in every row");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : w) x *= inv;
  return w;
}

double density_rho(std::span<const double> v) {
  validate_input(v);
  const double inf_norm = max_abs(v);
  double sum = 0.0;
  for (const double x : v) sum += (x / inf_norm) * (x / inf_norm);
  return sum / static_cast<double>(v.size());
}

double quantized_success_probability(const EncodingMatrix& b) {
  double sum = 0.0;
  for (const double s : quantized_sines(b)) sum += s * s;
  return sum / static_cast<double>(b.rows());
}

}  // namespace mcxenc
