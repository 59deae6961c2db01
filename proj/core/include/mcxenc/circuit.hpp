// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file circuit.hpp
 * @brief Gate-level IR for the encoder over SYSTEM(n) + TARGET + FLAG and the
 * circuit builders (core encoder, amplitude-amplified variant).
 *
 * Qubit layout: SYSTEM qubits 0..n-1, TARGET = n, FLAG = n+1.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mcxenc/bitcore.hpp"
#include "mcxenc/decomposer.hpp"
#include "mcxenc/pathopt.hpp"
#include "mcxenc/preprocess.hpp"

namespace mcxenc {

/// H on every SYSTEM qubit.
struct HadamardLayer {
  friend bool operator==(const HadamardLayer&, const HadamardLayer&) = default;
};

/// X on `target`, conditioned on the SYSTEM register matching `controls`.
struct Mcx {
  ControlString controls;
  int target = 0;
  friend bool operator==(const Mcx&, const Mcx&) = default;
};

/// Ry(angle) on `target` when `control` is |1>.
struct CRy {
  double angle = 0.0;
  int control = 0;
  int target = 0;
  friend bool operator==(const CRy&, const CRy&) = default;
};

enum class PhaseCondition {
  kFlagOne,  ///< -1 on components with FLAG = 1
  kAllZero,  ///< -1 on |0...0> of the whole register
  kGlobal,   ///< -1 everywhere
};

struct PhaseFlip {
  PhaseCondition condition = PhaseCondition::kGlobal;
  friend bool operator==(const PhaseFlip&, const PhaseFlip&) = default;
};

struct PauliX {
  int qubit = 0;
  friend bool operator==(const PauliX&, const PauliX&) = default;
};

using Gate = std::variant<HadamardLayer, Mcx, CRy, PhaseFlip, PauliX>;

/// phi[0] = 2*pi, phi[l] = pi / 2^l.
struct AngleSchedule {
  std::vector<double> phi;

  /// (0, phi[0], ..., phi[L-1]): index k is the angle of path column k.
  [[nodiscard]] std::vector<double> padded() const;
};

[[nodiscard]] AngleSchedule phi_angles(int precision);

struct GateCensus {
  std::size_t hadamard_layers = 0;
  std::size_t mcx = 0;
  std::size_t cry = 0;
  std::size_t phase_flips = 0;
  std::size_t pauli_x = 0;

  [[nodiscard]] std::size_t total() const noexcept {
    return hadamard_layers + mcx + cry + phase_flips + pauli_x;
  }
};

struct Circuit {
  int qubits = 0;     ///< n, SYSTEM size
  int precision = 0;  ///< L
  std::vector<Gate> gates;
  std::vector<int> order;               ///< tour sigma used to build it
  std::vector<std::size_t> layer_mcx;   ///< MCX count of each shift block
  int amplification_rounds = 0;

  [[nodiscard]] int target_qubit() const noexcept { return qubits; }
  [[nodiscard]] int flag_qubit() const noexcept { return qubits + 1; }
  [[nodiscard]] int total_qubits() const noexcept { return qubits + 2; }

  [[nodiscard]] GateCensus census() const;
  [[nodiscard]] std::size_t mcx_count() const { return census().mcx; }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// The core encoder for B visited along `tour`. Shift blocks come from
/// `cache` when given.
[[nodiscard]] Circuit build_core(const EncodingMatrix& b, const Tour& tour,
                                 DecompositionCache* cache = nullptr);

/// Grover rounds for success probability p: max(0, round(pi/(4 asin sqrt p) - 1/2)).
/// Throws for p outside (0, 1].
[[nodiscard]] int amplification_rounds(double p);

/// Core encoder followed by amplification_rounds(p) applications of
/// Q = -U S0 U^dagger S_flag, with p the quantized success probability.
[[nodiscard]] Circuit build_full(const EncodingMatrix& b, const Tour& tour,
                                 DecompositionCache* cache = nullptr);

/// Adjoint: gates reversed, CRy angles negated.
[[nodiscard]] Circuit inverse(const Circuit& c);

/// Sequential gate count. Every encoder gate touches TARGET or FLAG, so no
/// two of them can run in parallel.
[[nodiscard]] std::size_t depth(const Circuit& c);

/// OpenQASM 3 text. Zero controls are realized by X conjugation.
[[nodiscard]] std::string export_qasm(const Circuit& c);

/// Lossless JSON form of the circuit (consumed by `mcxenc simulate --circuit`).
[[nodiscard]] std::string circuit_to_json(const Circuit& c);
[[nodiscard]] Circuit circuit_from_json(const std::string& text);

}  // namespace mcxenc
