// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mcxenc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Statevector::Statevector(int total_qubits) : total_qubits_(total_qubits) {
  if (total_qubits < 3 || total_qubits > kMaxSimulatedSystemQubits + 2) {
    throw std::invalid_argument("simulator supports 1 <= n <= " +
                                std::to_string(kMaxSimulatedSystemQubits) + " system qubits");
  }
  amps_.assign(std::size_t{1} << total_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

double Statevector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

double Statevector::max_distance(const Statevector& other) const {
  if (other.total_qubits_ != total_qubits_) throw std::invalid_argument("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
  return worst;
}

std::uint64_t Statevector::bit_of(int qubit) const {
  if (qubit < 0 || qubit >= total_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range");
  }
  return std::uint64_t{1} << (total_qubits_ - 1 - qubit);
}

void Statevector::apply(const Gate& gate) {
  std::visit(Overloaded{
                 [&](const HadamardLayer&) { apply_hadamard_layer(); },
                 [&](const Mcx& g) { apply_mcx(g); },
                 [&](const CRy& g) { apply_cry(g); },
                 [&](const PhaseFlip& g) { apply_phase_flip(g); },
                 [&](const PauliX& g) { apply_x(g.qubit); },
             },
             gate);
}

void Statevector::apply_hadamard_layer() {
  const double h = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < system_qubits(); ++q) {
    const std::uint64_t bit = bit_of(q);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const Amplitude a = amps_[i];
      const Amplitude b = amps_[i | bit];
      amps_[i] = h * (a + b);
      amps_[i | bit] = h * (a - b);
    }
  }
}

void Statevector::apply_mcx(const Mcx& g) {
  if (g.controls.qubits() != system_qubits()) {
    throw std::invalid_argument("MCX control string length differs from SYSTEM size");
  }
  const std::uint64_t target = bit_of(g.target);
  if (g.target < system_qubits()) {
    throw std::invalid_argument("MCX target must be outside the SYSTEM register");
  }
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & target) continue;
    if (!g.controls.contains(i >> 2)) continue;
    std::swap(amps_[i], amps_[i | target]);
  }
}

void Statevector::apply_cry(const CRy& g) {
  const std::uint64_t control = bit_of(g.control);
  const std::uint64_t target = bit_of(g.target);
  if (control == target) throw std::invalid_argument("CRy control equals target");
  const double c = std::cos(g.angle / 2);
  const double s = std::sin(g.angle / 2);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (!(i & control) || (i & target)) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | target];
    amps_[i] = c * a0 - s * a1;
    amps_[i | target] = s * a0 + c * a1;
  }
}

void Statevector::apply_phase_flip(const PhaseFlip& g) {
  switch (g.condition) {
    case PhaseCondition::kFlagOne: {
      const std::uint64_t flag = bit_of(total_qubits_ - 1);
      for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & flag) amps_[i] = -amps_[i];
      }
      break;
    }
    case PhaseCondition::kAllZero:
      amps_[0] = -amps_[0];
      break;
    case PhaseCondition::kGlobal:
      for (auto& a : amps_) a = -a;
      break;
  }
}

void Statevector::apply_x(int qubit) {
  const std::uint64_t bit = bit_of(qubit);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

Statevector apply_gate(Statevector s, const Gate& g) {
  s.apply(g);
  return s;
}

Statevector run(const Circuit& c) {
  Statevector s(c.total_qubits());
  for (const auto& g : c.gates) s.apply(g);
  return s;
}

PostSelection postselect_flag(const Statevector& s) {
  const std::uint64_t systems = s.dimension() >> 2;
  double target_mass = 0.0;
  PostSelection ps;
  std::vector<Statevector::Amplitude> kept(systems);
  for (std::uint64_t nu = 0; nu < systems; ++nu) {
    target_mass += std::norm(s.amplitude(nu, 1, 0)) + std::norm(s.amplitude(nu, 1, 1));
    kept[nu] = s.amplitude(nu, 0, 1);
    ps.flag_probability += std::norm(s.amplitude(nu, 0, 1)) + std::norm(s.amplitude(nu, 1, 1));
  }
  if (target_mass > kProbabilityTolerance) {
    throw std::runtime_error("TARGET not disentangled: probability " +
                             std::to_string(target_mass) + " on TARGET = 1");
  }
  if (ps.flag_probability <= 0.0) {
    ps.system_amplitudes.assign(systems, 0.0);
    return ps;
  }

  // Rotate the largest amplitude onto the real axis (modulo sign).
  const auto largest = *std::max_element(kept.begin(), kept.end(), [](auto a, auto b) {
    return std::abs(a) < std::abs(b);
  });
  const double phase = std::atan(largest.imag() / largest.real());
  const Statevector::Amplitude unrotate = std::polar(1.0, -(std::isfinite(phase) ? phase : 0.0));
  const double scale = 1.0 / std::sqrt(ps.flag_probability);
  ps.system_amplitudes.resize(systems);
  for (std::uint64_t nu = 0; nu < systems; ++nu) {
    const auto a = kept[nu] * unrotate * scale;
    if (std::abs(a.imag()) > 1e-9) {
      throw std::runtime_error("post-selected state is not real up to a global phase");
    }
    ps.system_amplitudes[nu] = a.real();
  }
  return ps;
}

bool verify_w(const BinaryVector& b, const Decomposition& d) {
  const int n = b.qubits();
  Statevector s(n + 2);
  s.apply(HadamardLayer{});
  for (const auto& c : d.controls) {
    if (c.qubits() != n) return false;
    s.apply(Mcx{c, n});
  }
  const double expected = 1.0 / std::sqrt(static_cast<double>(b.size()));
  for (std::uint64_t nu = 0; nu < b.size(); ++nu) {
    for (int t = 0; t < 2; ++t) {
      for (int f = 0; f < 2; ++f) {
        const bool on = f == 0 && t == (b.test(nu) ? 1 : 0);
        const double want = on ? expected : 0.0;
        if (std::abs(s.amplitude(nu, t, f) - want) > kAmplitudeTolerance) return false;
      }
    }
  }
  return true;
}

double fidelity(const PostSelection& ps, std::span<const double> v) {
  if (v.size() != ps.system_amplitudes.size()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  double norm2 = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    norm2 += v[i] * v[i];
    dot += ps.system_amplitudes[i] * v[i];
  }
  if (norm2 == 0.0) throw std::invalid_argument("fidelity: zero reference vector");
  return std::min(1.0, dot * dot / norm2);
}

std::uint64_t sample_attempts(double flag_probability, std::mt19937_64& rng) {
  if (!(flag_probability > 0.0 && flag_probability <= 1.0)) {
    throw std::invalid_argument("flag probability must be in (0, 1]");
  }
  std::bernoulli_distribution success(flag_probability);
  std::uint64_t attempts = 1;
  while (!success(rng)) ++attempts;
  return attempts;
}

}  // namespace mcxenc
