// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file simulator.hpp
 * @brief Dense statevector simulator used to certify encoder circuits.
 *
 * Amplitude index convention is big-endian over qubits: qubit q is bit
 * (total-1-q) of the index, so for the encoder layout the index of
 * |nu>_S |t>_T |f>_F is 4*nu + 2*t + f.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mcxenc/bitcore.hpp"
#include "mcxenc/circuit.hpp"
#include "mcxenc/decomposer.hpp"

namespace mcxenc {

/// Largest SYSTEM size the simulator accepts (n + 2 = 16 qubits in total).
inline constexpr int kMaxSimulatedSystemQubits = 14;

/// Per-amplitude equality tolerance.
inline constexpr double kAmplitudeTolerance = 1e-12;
/// Tolerance for aggregated probabilities.
inline constexpr double kProbabilityTolerance = 1e-10;

class Statevector {
 public:
  using Amplitude = std::complex<double>;

  /// |0...0> on `total_qubits` qubits; SYSTEM is total_qubits - 2.
  explicit Statevector(int total_qubits);

  [[nodiscard]] int total_qubits() const noexcept { return total_qubits_; }
  [[nodiscard]] int system_qubits() const noexcept { return total_qubits_ - 2; }
  [[nodiscard]] std::uint64_t dimension() const noexcept { return amps_.size(); }

  [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  [[nodiscard]] Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }
  [[nodiscard]] Amplitude amplitude(std::uint64_t system, int target, int flag) const {
    return amps_.at((system << 2) | (static_cast<std::uint64_t>(target) << 1) |
                    static_cast<std::uint64_t>(flag));
  }

  /// Squared 2-norm, summed in index order.
  [[nodiscard]] double norm_squared() const noexcept;

  void apply(const Gate& gate);

  /// Largest per-amplitude distance to `other`.
  [[nodiscard]] double max_distance(const Statevector& other) const;

 private:
  [[nodiscard]] std::uint64_t bit_of(int qubit) const;
  void apply_hadamard_layer();
  void apply_mcx(const Mcx& g);
  void apply_cry(const CRy& g);
  void apply_phase_flip(const PhaseFlip& g);
  void apply_x(int qubit);

  int total_qubits_;
  std::vector<Amplitude> amps_;
};

/// Functional form of Statevector::apply.
[[nodiscard]] Statevector apply_gate(Statevector s, const Gate& g);

/// Runs the circuit from |0...0>.
[[nodiscard]] Statevector run(const Circuit& c);

struct PostSelection {
  double flag_probability = 0.0;
  /// FLAG = 1, TARGET = 0 branch, renormalized and rotated to the real axis.
  std::vector<double> system_amplitudes;
};

/// Throws std::runtime_error if TARGET carries more than 1e-10 probability
/// or the kept branch is not real up to a global phase.
[[nodiscard]] PostSelection postselect_flag(const Statevector& s);

/// Checks that the MCX gates of `d` map the uniform superposition to
/// |Psi_b> = N^(-1/2) sum_i |i>|b_i>.
[[nodiscard]] bool verify_w(const BinaryVector& b, const Decomposition& d);

/// |<system_amplitudes, v/|v|_2>|^2.
[[nodiscard]] double fidelity(const PostSelection& ps, std::span<const double> v);

/// Number of core-circuit repetitions until the FLAG reads 1.
[[nodiscard]] std::uint64_t sample_attempts(double flag_probability, std::mt19937_64& rng);

}  // namespace mcxenc
