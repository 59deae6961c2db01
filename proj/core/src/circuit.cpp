// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mcxenc/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mcxenc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_angle(double angle) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

void validate_tour(const Tour& tour, int precision) {
  const auto size = static_cast<std::size_t>(precision) + 2;
  if (tour.sigma.size() != size) {
    throw std::invalid_argument("tour has " + std::to_string(tour.sigma.size()) +
                                " entries, expected L+2 = " + std::to_string(size));
  }
  if (tour.sigma.front() != 0 || tour.sigma.back() != precision + 1) {
    throw std::invalid_argument("tour endpoints must be the padding columns");
  }
  std::vector<bool> seen(size, false);
  for (const int k : tour.sigma) {
    if (k < 0 || static_cast<std::size_t>(k) >= size || seen[k]) {
      throw std::invalid_argument("tour is not a permutation");
    }
    seen[k] = true;
  }
}

void append_block(Circuit& c, const Decomposition& d) {
  for (const auto& control : d.controls) c.gates.emplace_back(Mcx{control, c.target_qubit()});
  c.layer_mcx.push_back(d.gate_count());
}

}  // namespace

std::vector<double> AngleSchedule::padded() const {
  std::vector<double> out{0.0};
  out.insert(out.end(), phi.begin(), phi.end());
  return out;
}

AngleSchedule phi_angles(int precision) {
  if (precision < 2) throw std::invalid_argument("precision L must be >= 2");
  AngleSchedule s;
  s.phi.push_back(2 * std::numbers::pi);
  for (int l = 1; l < precision; ++l) s.phi.push_back(std::ldexp(std::numbers::pi, -l));
  return s;
}

GateCensus Circuit::census() const {
  GateCensus g;
  for (const auto& gate : gates) {
    std::visit(Overloaded{
                   [&](const HadamardLayer&) { ++g.hadamard_layers; },
                   [&](const Mcx&) { ++g.mcx; },
                   [&](const CRy&) { ++g.cry; },
                   [&](const PhaseFlip&) { ++g.phase_flips; },
                   [&](const PauliX&) { ++g.pauli_x; },
               },
               gate);
  }
  return g;
}

Circuit build_core(const EncodingMatrix& b, const Tour& tour, DecompositionCache* cache) {
  validate_tour(tour, b.precision());
  const PathMatrix path = build_path_matrix(b);
  const std::vector<BinaryVector> steps = deltas(path, tour);
  const std::vector<double> angles = phi_angles(b.precision()).padded();

  Circuit c;
  c.qubits = b.qubits();
  c.precision = b.precision();
  c.order = tour.sigma;
  c.gates.emplace_back(HadamardLayer{});

  auto block_for = [&](const BinaryVector& delta) {
    return cache ? cache->get(delta) : decompose(delta);
  };
  for (int l = 0; l < b.precision(); ++l) {
    append_block(c, block_for(steps[l]));
    // The rotation belongs to the column just visited, not to the step.
    c.gates.emplace_back(CRy{angles[tour.sigma[l + 1]], c.target_qubit(), c.flag_qubit()});
  }
  append_block(c, block_for(steps[b.precision()]));
  return c;
}

int amplification_rounds(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("success probability must be in (0, 1], got " +
                                std::to_string(p));
  }
  const double theta = std::asin(std::sqrt(p));
  const double k = std::round(std::numbers::pi / (4 * theta) - 0.5);
  return k > 0 ? static_cast<int>(k) : 0;
}

Circuit inverse(const Circuit& c) {
  Circuit inv = c;
  inv.gates.assign(c.gates.rbegin(), c.gates.rend());
  for (auto& g : inv.gates) {
    if (auto* r = std::get_if<CRy>(&g)) r->angle = -r->angle;
  }
  return inv;
}

Circuit build_full(const EncodingMatrix& b, const Tour& tour, DecompositionCache* cache) {
  const double p = quantized_success_probability(b);
  if (p <= 0.0) throw std::invalid_argument("zero target state: success probability is 0");
  Circuit core = build_core(b, tour, cache);
  const int rounds = amplification_rounds(p);
  if (rounds == 0) return core;

  const Circuit core_dagger = inverse(core);
  Circuit full = core;
  full.amplification_rounds = rounds;
  for (int r = 0; r < rounds; ++r) {
    full.gates.emplace_back(PhaseFlip{PhaseCondition::kFlagOne});
    full.gates.insert(full.gates.end(), core_dagger.gates.begin(), core_dagger.gates.end());
    full.gates.emplace_back(PhaseFlip{PhaseCondition::kAllZero});
    full.gates.insert(full.gates.end(), core.gates.begin(), core.gates.end());
    full.gates.emplace_back(PhaseFlip{PhaseCondition::kGlobal});
  }
  return full;
}

std::size_t depth(const Circuit& c) { return c.gates.size(); }

std::string export_qasm(const Circuit& c) {
  std::ostringstream out;
  const int total = c.total_qubits();
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  out << "qubit[" << total << "] q;\n";

  auto controlled = [&](const std::string& op, const std::vector<int>& controls, int target) {
    if (controls.empty()) {
      out << op << " q[" << target << "];\n";
      return;
    }
    out << "ctrl";
    if (controls.size() > 1) out << "(" << controls.size() << ")";
    out << " @ " << op;
    for (const int q : controls) out << " q[" << q << "],";
    out << " q[" << target << "];\n";
  };

  for (const auto& gate : c.gates) {
    std::visit(
        Overloaded{
            [&](const HadamardLayer&) {
              for (int q = 0; q < c.qubits; ++q) out << "h q[" << q << "];\n";
            },
            [&](const Mcx& g) {
              std::vector<int> controls;
              std::vector<int> negated;
              for (int q = 0; q < g.controls.qubits(); ++q) {
                const Control ctl = g.controls.at(q);
                if (ctl == Control::kFree) continue;
                controls.push_back(q);
                if (ctl == Control::kZero) negated.push_back(q);
              }
              for (const int q : negated) out << "x q[" << q << "];\n";
              controlled("x", controls, g.target);
              for (const int q : negated) out << "x q[" << q << "];\n";
            },
            [&](const CRy& g) {
              controlled("ry(" + format_angle(g.angle) + ")", {g.control}, g.target);
            },
            [&](const PhaseFlip& g) {
              switch (g.condition) {
                case PhaseCondition::kFlagOne:
                  out << "z q[" << c.flag_qubit() << "];\n";
                  break;
                case PhaseCondition::kAllZero: {
                  std::vector<int> controls;
                  for (int q = 0; q < total; ++q) out << "x q[" << q << "];\n";
                  for (int q = 0; q + 1 < total; ++q) controls.push_back(q);
                  controlled("z", controls, total - 1);
                  for (int q = 0; q < total; ++q) out << "x q[" << q << "];\n";
                  break;
                }
                case PhaseCondition::kGlobal:
                  out << "gphase(" << format_angle(std::numbers::pi) << ");\n";
                  break;
              }
            },
            [&](const PauliX& g) { out << "x q[" << g.qubit << "];\n"; },
        },
        gate);
  }
  return out.str();
}

namespace {

std::string to_string(PhaseCondition cond) {
  switch (cond) {
    case PhaseCondition::kFlagOne: return "flag_one";
    case PhaseCondition::kAllZero: return "all_zero";
    case PhaseCondition::kGlobal: return "global";
  }
  return "global";
}

PhaseCondition phase_condition_from(const std::string& s) {
  if (s == "flag_one") return PhaseCondition::kFlagOne;
  if (s == "all_zero") return PhaseCondition::kAllZero;
  if (s == "global") return PhaseCondition::kGlobal;
  throw std::invalid_argument("unknown phase condition '" + s + "'");
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["n"] = c.qubits;
  j["L"] = c.precision;
  j["order"] = c.order;
  j["layer_mcx"] = c.layer_mcx;
  j["amplification_rounds"] = c.amplification_rounds;
  auto& gates = j["gates"] = nlohmann::json::array();
  for (const auto& gate : c.gates) {
    std::visit(Overloaded{
                   [&](const HadamardLayer&) { gates.push_back({{"op", "h"}}); },
                   [&](const Mcx& g) {
                     gates.push_back(
                         {{"op", "mcx"}, {"controls", g.controls.to_string()}, {"target", g.target}});
                   },
                   [&](const CRy& g) {
                     gates.push_back({{"op", "cry"},
                                      {"angle", g.angle},
                                      {"control", g.control},
                                      {"target", g.target}});
                   },
                   [&](const PhaseFlip& g) {
                     gates.push_back({{"op", "phase_flip"}, {"condition", to_string(g.condition)}});
                   },
                   [&](const PauliX& g) { gates.push_back({{"op", "x"}, {"qubit", g.qubit}}); },
               },
               gate);
  }
  return j.dump(1);
}

Circuit circuit_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
  }
  try {
    Circuit c;
    c.qubits = j.at("n").get<int>();
    c.precision = j.at("L").get<int>();
    c.order = j.value("order", std::vector<int>{});
    c.layer_mcx = j.value("layer_mcx", std::vector<std::size_t>{});
    c.amplification_rounds = j.value("amplification_rounds", 0);
    if (c.qubits < 1 || c.qubits > ControlString::kMaxQubits) {
      throw std::invalid_argument("circuit JSON: n out of range");
    }
    for (const auto& g : j.at("gates")) {
      const auto op = g.at("op").get<std::string>();
      if (op == "h") {
        c.gates.emplace_back(HadamardLayer{});
      } else if (op == "mcx") {
        auto controls = ControlString::from_string(g.at("controls").get<std::string>());
        if (controls.qubits() != c.qubits) {
          throw std::invalid_argument("circuit JSON: control string length != n");
        }
        c.gates.emplace_back(Mcx{controls, g.at("target").get<int>()});
      } else if (op == "cry") {
        c.gates.emplace_back(CRy{g.at("angle").get<double>(), g.at("control").get<int>(),
                                 g.at("target").get<int>()});
      } else if (op == "phase_flip") {
        c.gates.emplace_back(PhaseFlip{phase_condition_from(g.at("condition").get<std::string>())});
      } else if (op == "x") {
        c.gates.emplace_back(PauliX{g.at("qubit").get<int>()});
      } else {
        throw std::invalid_argument("circuit JSON: unknown op '" + op + "'");
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace mcxenc
