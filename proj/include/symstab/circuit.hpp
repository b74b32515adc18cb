// Copyright 2026 The symstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Gate-level SYM projection: the cascaded Fredkin network built from U_k
// preparations, and the operator-level ancilla algorithm that controls all
// R! permutations from a single R!-dimensional register.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symstab/symspace.hpp"
#include "symstab/tensor.hpp"

namespace symstab::circuit {

enum class GateKind { uk_seed, two_qubit_t, fredkin, cnot, toffoli, custom_unitary };

inline std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::uk_seed: return "single_qubit_rotation_Uk_seed";
    case GateKind::two_qubit_t: return "two_qubit_T";
    case GateKind::fredkin: return "fredkin";
    case GateKind::cnot: return "cnot";
    case GateKind::toffoli: return "toffoli";
    case GateKind::custom_unitary: return "custom_unitary";
  }
  return "unknown";
}

inline GateKind gate_kind_from_name(std::string_view name) {
  for (auto k : {GateKind::uk_seed, GateKind::two_qubit_t, GateKind::fredkin, GateKind::cnot,
                 GateKind::toffoli, GateKind::custom_unitary}) {
    if (gate_name(k) == name) return k;
  }
  throw PreconditionError("unknown gate name '" + std::string(name) + "'");
}

/// Controlled swap on (control, a, b): swaps a and b iff control is |1>.
inline MatrixXcd fredkin_matrix() {
  MatrixXcd m = MatrixXcd::Identity(8, 8);
  // |101> (5) <-> |110> (6)
  m(5, 5) = 0.0;
  m(6, 6) = 0.0;
  m(5, 6) = 1.0;
  m(6, 5) = 1.0;
  return m;
}

inline MatrixXcd cnot_matrix() {
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

inline MatrixXcd toffoli_matrix() {
  MatrixXcd m = MatrixXcd::Identity(8, 8);
  m(6, 6) = m(7, 7) = 0.0;
  m(6, 7) = m(7, 6) = 1.0;
  return m;
}

/// (1/sqrt(k+1)) [[1, -sqrt k], [sqrt k, 1]]: first gate of U_k.
inline MatrixXcd uk_seed_rotation(std::size_t k) {
  if (k < 1) throw PreconditionError("U_k seed rotation needs k >= 1");
  const double kk = static_cast<double>(k);
  const double s = 1.0 / std::sqrt(kk + 1.0);
  MatrixXcd m(2, 2);
  m << s, -s * std::sqrt(kk), s * std::sqrt(kk), s;
  return m;
}

/// T_{j,j+1} of the U_k chain in basis {|00>,|01>,|10>,|11>}, wire j first.
inline MatrixXcd t_gate(std::size_t k, std::size_t j) {
  if (j < 1 || j + 1 > k) {
    throw PreconditionError("T gate requires 1 <= j <= k-1 (k=" + std::to_string(k) +
                            ", j=" + std::to_string(j) + ")");
  }
  const double a = static_cast<double>(k - j + 1);
  const double b = std::sqrt(static_cast<double>(k - j));
  const double s = 1.0 / std::sqrt(a);
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = s;
  m(1, 2) = s * b;
  m(2, 1) = -s * b;
  m(2, 2) = s;
  m(3, 3) = 1.0;
  return m;
}

struct Gate {
  GateKind kind = GateKind::custom_unitary;
  /// uk_seed: {k, adjoint}; two_qubit_T: {k, j, adjoint}; others: {}.
  std::vector<double> params;
  /// Wire indices; for controlled gates the controls come first.
  std::vector<std::size_t> targets;
  /// Only for custom_unitary.
  std::optional<MatrixXcd> custom;

  static Gate seed(std::size_t k, std::size_t wire, bool adjoint = false) {
    return {GateKind::uk_seed, {double(k), adjoint ? 1.0 : 0.0}, {wire}, std::nullopt};
  }
  static Gate t(std::size_t k, std::size_t j, std::size_t w1, std::size_t w2,
                bool adjoint = false) {
    return {GateKind::two_qubit_t, {double(k), double(j), adjoint ? 1.0 : 0.0}, {w1, w2},
            std::nullopt};
  }
  static Gate fredkin(std::size_t control, std::size_t a, std::size_t b) {
    return {GateKind::fredkin, {}, {control, a, b}, std::nullopt};
  }
  static Gate cnot(std::size_t control, std::size_t target) {
    return {GateKind::cnot, {}, {control, target}, std::nullopt};
  }
  static Gate toffoli(std::size_t c1, std::size_t c2, std::size_t target) {
    return {GateKind::toffoli, {}, {c1, c2, target}, std::nullopt};
  }
  static Gate unitary(MatrixXcd m, std::vector<std::size_t> wires) {
    return {GateKind::custom_unitary, {}, std::move(wires), std::move(m)};
  }

  bool is_adjoint() const {
    if (kind == GateKind::uk_seed) return params.size() > 1 && params[1] != 0.0;
    if (kind == GateKind::two_qubit_t) return params.size() > 2 && params[2] != 0.0;
    return false;
  }

  std::size_t arity() const {
    switch (kind) {
      case GateKind::uk_seed: return 1;
      case GateKind::two_qubit_t: return 2;
      case GateKind::cnot: return 2;
      case GateKind::fredkin: return 3;
      case GateKind::toffoli: return 3;
      case GateKind::custom_unitary: return targets.size();
    }
    return 0;
  }

  MatrixXcd matrix() const {
    auto int_param = [&](std::size_t i) {
      if (i >= params.size() || params[i] < 0 || params[i] != std::floor(params[i])) {
        throw PreconditionError(std::string(gate_name(kind)) + ": bad integer parameter");
      }
      return static_cast<std::size_t>(params[i]);
    };
    MatrixXcd m;
    switch (kind) {
      case GateKind::uk_seed: m = uk_seed_rotation(int_param(0)); break;
      case GateKind::two_qubit_t: m = t_gate(int_param(0), int_param(1)); break;
      case GateKind::fredkin: m = fredkin_matrix(); break;
      case GateKind::cnot: m = cnot_matrix(); break;
      case GateKind::toffoli: m = toffoli_matrix(); break;
      case GateKind::custom_unitary:
        if (!custom) throw PreconditionError("custom_unitary gate without a matrix");
        m = *custom;
        break;
    }
    if (is_adjoint()) m = m.adjoint().eval();
    return m;
  }

  Gate adjoint() const {
    Gate g = *this;
    switch (kind) {
      case GateKind::uk_seed: g.params.resize(2, 0.0); g.params[1] = is_adjoint() ? 0.0 : 1.0; break;
      case GateKind::two_qubit_t: g.params.resize(3, 0.0); g.params[2] = is_adjoint() ? 0.0 : 1.0; break;
      case GateKind::custom_unitary: g.custom = custom->adjoint().eval(); break;
      default: break;  // self-inverse permutations
    }
    return g;
  }
};

/// Qubit wires, an ordered gate list and the ancilla wires whose all-zeros
/// outcome accepts the projection.
struct Circuit {
  HilbertLayout wires;
  std::vector<Gate> gates;
  std::vector<std::size_t> data_wires;
  std::vector<std::size_t> measured_wires;

  void validate() const {
    for (const auto& s : wires.subsystems()) {
      if (s.dimension != 2) throw DimensionError("circuit wire '" + s.label + "' is not a qubit");
    }
    for (const auto& g : gates) {
      if (g.targets.size() != g.arity()) {
        throw DimensionError(std::string(gate_name(g.kind)) + ": wrong number of targets");
      }
      for (auto t : g.targets) {
        if (t >= wires.size()) throw LabelError("gate targets a missing wire");
      }
      for (std::size_t a = 0; a < g.targets.size(); ++a)
        for (std::size_t b = a + 1; b < g.targets.size(); ++b)
          if (g.targets[a] == g.targets[b]) throw LabelError("gate targets a wire twice");
    }
    for (auto m : measured_wires) {
      if (m >= wires.size()) throw LabelError("measured wire out of range");
      if (std::find(data_wires.begin(), data_wires.end(), m) != data_wires.end()) {
        throw LabelError("measured wire '" + wires[m].label + "' is also a data wire");
      }
    }
  }

  std::size_t ancilla_count() const { return measured_wires.size(); }
};

/// U_k alone on k fresh wires c1..ck.
inline Circuit build_uk_circuit(std::size_t k) {
  if (k < 1) throw PreconditionError("U_k needs k >= 1");
  Circuit c;
  c.wires = HilbertLayout::qubits(k, "c");
  c.gates.push_back(Gate::seed(k, 0));
  for (std::size_t j = 1; j < k; ++j) c.gates.push_back(Gate::t(k, j, j - 1, j));
  return c;
}

inline constexpr std::size_t kMaxNetworkCopies = 6;

/// Wire index of control j (1-based) of stage k in the network for R copies.
inline std::size_t network_control_wire(std::size_t copies, std::size_t k, std::size_t j) {
  return copies + k * (k - 1) / 2 + (j - 1);
}

/// Gates contributed by stage k: k preparation, k Fredkin, k un-preparation.
inline std::size_t network_stage_gate_count(std::size_t k) { return 3 * k; }

/// Cascade over k = 1..R-1. Wires d1..dR carry the data; stage k owns fresh
/// controls a{k}_1..a{k}_k (R(R-1)/2 in total), all measured at the end.
inline Circuit build_symmetrisation_network(std::size_t copies) {
  if (copies < 2) throw PreconditionError("network needs R >= 2");
  if (copies > kMaxNetworkCopies) {
    throw SizeBudgetError("network simulation limited to R <= " +
                          std::to_string(kMaxNetworkCopies));
  }
  std::vector<Subsystem> wires;
  for (std::size_t i = 1; i <= copies; ++i) wires.push_back({"d" + std::to_string(i), 2});
  for (std::size_t k = 1; k < copies; ++k)
    for (std::size_t j = 1; j <= k; ++j)
      wires.push_back({"a" + std::to_string(k) + "_" + std::to_string(j), 2});
  Circuit c;
  c.wires = HilbertLayout(std::move(wires));
  for (std::size_t i = 0; i < copies; ++i) c.data_wires.push_back(i);
  for (std::size_t k = 1; k < copies; ++k) {
    auto ctrl = [&](std::size_t j) { return network_control_wire(copies, k, j); };
    std::vector<Gate> prep;
    prep.push_back(Gate::seed(k, ctrl(1)));
    for (std::size_t j = 1; j < k; ++j) prep.push_back(Gate::t(k, j, ctrl(j), ctrl(j + 1)));
    c.gates.insert(c.gates.end(), prep.begin(), prep.end());
    for (std::size_t j = 1; j <= k; ++j) c.gates.push_back(Gate::fredkin(ctrl(j), j - 1, k));
    for (auto it = prep.rbegin(); it != prep.rend(); ++it) c.gates.push_back(it->adjoint());
    for (std::size_t j = 1; j <= k; ++j) c.measured_wires.push_back(ctrl(j));
  }
  c.validate();
  return c;
}

/// Rewrites every Fredkin(c; a, b) as CNOT(b->a) Toffoli(c, a->b) CNOT(b->a).
inline Circuit lower_fredkin_to_cnot(const Circuit& circuit) {
  Circuit out = circuit;
  out.gates.clear();
  for (const auto& g : circuit.gates) {
    if (g.kind != GateKind::fredkin) {
      out.gates.push_back(g);
      continue;
    }
    const auto c = g.targets[0], a = g.targets[1], b = g.targets[2];
    out.gates.push_back(Gate::cnot(b, a));
    out.gates.push_back(Gate::toffoli(c, a, b));
    out.gates.push_back(Gate::cnot(b, a));
  }
  return out;
}

inline StateVector apply_gate(const Gate& gate, const StateVector& state) {
  return apply_operator(gate.matrix(), std::span<const std::size_t>(gate.targets), state);
}

/// Applies gates [first, last) of the circuit to a state on its wires.
inline StateVector simulate(const Circuit& circuit, StateVector state, std::size_t first = 0,
                            std::size_t last = std::size_t(-1)) {
  if (!(state.layout() == circuit.wires)) {
    throw DimensionError("state layout does not match circuit wires");
  }
  last = std::min(last, circuit.gates.size());
  const auto& layout = circuit.wires;
  VectorXcd v = state.amplitudes();
  for (std::size_t i = first; i < last; ++i) {
    const auto& g = circuit.gates[i];
    const auto split = detail::split_subsystems(layout, g.targets);
    detail::apply_left(g.matrix(), split, v);
  }
  return state.is_normalized() ? StateVector(layout, std::move(v), NumericPolicy{1e-10})
                               : StateVector::unnormalized(layout, std::move(v));
}

/// Total operator of the gate sequence (dense; small circuits only).
inline MatrixXcd circuit_unitary(const Circuit& circuit) {
  const std::size_t n = circuit.wires.total_dimension();
  if (n > 4096) throw SizeBudgetError("circuit too large for a dense unitary");
  MatrixXcd u = MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& g : circuit.gates) {
    const auto split = detail::split_subsystems(circuit.wires, g.targets);
    detail::apply_left(g.matrix(), split, u);
  }
  return u;
}

struct ProjectionOutcome {
  bool accepted = false;
  /// Accepted: the projected data state. Rejected: the renormalized failed
  /// branch, only when ProjectionOptions::keep_failed_branch is set.
  std::optional<StateVector> post_state;
  double exact_accept_probability = 0.0;
  std::vector<std::size_t> ancilla_outcome;
};

struct ProjectionOptions {
  bool keep_failed_branch = false;
};

namespace detail {

inline void check_data_state(const StateVector& data, std::size_t data_wires) {
  if (data.layout().size() != data_wires || !data.layout().is_uniform() ||
      data.layout().dimension(0) != 2) {
    throw DimensionError("data state must be " + std::to_string(data_wires) + " qubits");
  }
}

// Embeds the data amplitudes on the circuit's data wires with every other
// wire in |0>.
inline VectorXcd embed_data(const Circuit& circuit, const StateVector& data) {
  const auto& layout = circuit.wires;
  VectorXcd joint = VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dimension()));
  const auto offsets = symstab::detail::mixed_radix_offsets(layout, circuit.data_wires);
  for (std::size_t x = 0; x < offsets.size(); ++x) joint[offsets[x]] = data[x];
  return joint;
}

// Data-wire amplitudes of `joint` for a fixed outcome on the measured wires.
inline VectorXcd branch(const Circuit& circuit, const VectorXcd& joint,
                        std::size_t outcome_index) {
  const auto& layout = circuit.wires;
  const auto data_offsets = symstab::detail::mixed_radix_offsets(layout, circuit.data_wires);
  const auto meas_offsets = symstab::detail::mixed_radix_offsets(layout, circuit.measured_wires);
  VectorXcd out(static_cast<Eigen::Index>(data_offsets.size()));
  for (std::size_t x = 0; x < data_offsets.size(); ++x) {
    out[static_cast<Eigen::Index>(x)] = joint[data_offsets[x] + meas_offsets[outcome_index]];
  }
  return out;
}

inline void check_wire_partition(const Circuit& circuit) {
  if (circuit.data_wires.size() + circuit.measured_wires.size() != circuit.wires.size()) {
    throw DimensionError("projection circuits must consist of data and measured wires only");
  }
}

}  // namespace detail

/// Unnormalized data-wire component accompanying the all-zeros ancilla
/// outcome after running the full circuit. For the symmetrisation network
/// this is S|data>.
inline VectorXcd network_accept_branch(const Circuit& circuit, const StateVector& data) {
  circuit.validate();
  detail::check_wire_partition(circuit);
  detail::check_data_state(data, circuit.data_wires.size());
  const auto joint = simulate(circuit, StateVector::unnormalized(
                                           circuit.wires, detail::embed_data(circuit, data)));
  return detail::branch(circuit, joint.amplitudes(), 0);
}

/// Runs data (x) |0..0> through the network, measures the ancillas and
/// accepts iff every ancilla reads 0.
inline ProjectionOutcome run_projection_via_network(const Circuit& circuit,
                                                    const StateVector& data, Rng& rng,
                                                    ProjectionOptions options = {}) {
  circuit.validate();
  detail::check_wire_partition(circuit);
  detail::check_data_state(data, circuit.data_wires.size());
  if (!data.is_normalized()) throw PreconditionError("data state must be normalized");
  const StateVector joint =
      simulate(circuit, StateVector(circuit.wires, detail::embed_data(circuit, data)));
  const VectorXcd accept = detail::branch(circuit, joint.amplitudes(), 0);

  ProjectionOutcome out;
  out.exact_accept_probability = std::min(1.0, accept.squaredNorm());
  const auto m = measure_subsystems(joint, circuit.measured_wires, rng);
  out.ancilla_outcome = m.outcome;
  out.accepted = std::all_of(m.outcome.begin(), m.outcome.end(), [](auto d) { return d == 0; });
  if (out.accepted) {
    out.post_state = StateVector::normalize(data.layout(), accept);
  } else if (options.keep_failed_branch) {
    std::size_t idx = 0;
    for (auto d : m.outcome) idx = idx * 2 + d;
    out.post_state =
        StateVector::normalize(data.layout(), detail::branch(circuit, joint.amplitudes(), idx));
  }
  return out;
}

inline ProjectionOutcome run_projection_via_network(const Circuit& circuit,
                                                    const StateVector& data,
                                                    std::uint64_t seed,
                                                    ProjectionOptions options = {}) {
  Rng rng(seed);
  return run_projection_via_network(circuit, data, rng, options);
}

inline constexpr std::size_t kMaxPermutationAncillaCopies = 7;

/// Operator-level ancilla algorithm over an R!-dimensional register:
/// prepare the uniform superposition, apply permutation sigma_i when the
/// register holds i, undo the preparation, and measure (accept on 0).
///
/// The preparation is the Householder reflection taking |0> to the uniform
/// vector; it is its own inverse.
inline ProjectionOutcome run_projection_via_permutation_ancilla(const StateVector& data,
                                                                std::size_t copies, Rng& rng,
                                                                ProjectionOptions options = {}) {
  if (copies < 1 || copies > kMaxPermutationAncillaCopies) {
    throw SizeBudgetError("permutation-ancilla projection limited to 1 <= R <= " +
                          std::to_string(kMaxPermutationAncillaCopies));
  }
  const auto& dl = data.layout();
  if (dl.size() != copies || !dl.is_uniform()) {
    throw DimensionError("data state must consist of R equal subsystems");
  }
  if (!data.is_normalized()) throw PreconditionError("data state must be normalized");
  const std::size_t local_dim = dl.dimension(0);
  const auto perms = sym::permutations_lex(copies);
  const auto n_perm = static_cast<Eigen::Index>(perms.size());
  const auto n_data = static_cast<Eigen::Index>(data.dimension());

  HilbertLayout joint_layout = dl.concat(HilbertLayout({{"perm", perms.size()}}));

  // joint(x, i): amplitude of |x>|i>.
  MatrixXcd joint = MatrixXcd::Zero(n_data, n_perm);
  joint.col(0) = data.amplitudes();

  const VectorXcd uniform = VectorXcd::Constant(n_perm, 1.0 / std::sqrt(double(n_perm)));
  VectorXcd w = -uniform;
  w[0] += 1.0;
  const double wnorm2 = w.squaredNorm();
  auto reflect = [&](MatrixXcd& m) {
    if (wnorm2 == 0.0) return;  // R = 1: |0> is already uniform
    // Rows are ancilla vectors: m <- m (I - 2 w w^dagger / |w|^2)^T.
    const VectorXcd proj = m * w.conjugate();
    m.noalias() -= (2.0 / wnorm2) * proj * w.transpose();
  };

  reflect(joint);
  const HilbertLayout copies_layout = sym::copies_layout(copies, local_dim);
  for (Eigen::Index i = 0; i < n_perm; ++i) {
    VectorXcd permuted(n_data);
    for (Eigen::Index x = 0; x < n_data; ++x) {
      const auto digits = copies_layout.digits(static_cast<std::size_t>(x));
      permuted[static_cast<Eigen::Index>(sym::permuted_index(digits, perms[i], local_dim))] =
          joint(x, i);
    }
    joint.col(i) = permuted;
  }
  reflect(joint);

  VectorXcd flat(n_data * n_perm);
  for (Eigen::Index x = 0; x < n_data; ++x)
    for (Eigen::Index i = 0; i < n_perm; ++i) flat[x * n_perm + i] = joint(x, i);
  const StateVector joint_state(joint_layout, std::move(flat), NumericPolicy{1e-10});

  ProjectionOutcome out;
  out.exact_accept_probability = std::min(1.0, joint.col(0).squaredNorm());
  const std::size_t ancilla[] = {copies};
  const auto m = measure_subsystems(joint_state, ancilla, rng);
  out.ancilla_outcome = m.outcome;
  out.accepted = m.outcome[0] == 0;
  if (out.accepted || options.keep_failed_branch) {
    out.post_state = StateVector::normalize(
        dl, joint.col(static_cast<Eigen::Index>(m.outcome[0])));
  }
  return out;
}

inline ProjectionOutcome run_projection_via_permutation_ancilla(const StateVector& data,
                                                                std::size_t copies,
                                                                std::uint64_t seed,
                                                                ProjectionOptions options = {}) {
  Rng rng(seed);
  return run_projection_via_permutation_ancilla(data, copies, rng, options);
}

struct CostReport {
  std::map<std::string, std::size_t> gate_counts;  // by gate name
  std::size_t total_gates = 0;
  std::size_t data_wires = 0;
  std::size_t ancilla_wires = 0;
  std::size_t total_wires = 0;
  std::size_t depth = 0;  // greedy layering

  std::size_t count(GateKind kind) const {
    auto it = gate_counts.find(std::string(gate_name(kind)));
    return it == gate_counts.end() ? 0 : it->second;
  }
  /// U_k seed rotations and T gates, including inverses.
  std::size_t preparation_gates() const {
    return count(GateKind::uk_seed) + count(GateKind::two_qubit_t);
  }
};

inline CostReport gate_count_report(const Circuit& circuit) {
  CostReport r;
  r.data_wires = circuit.data_wires.size();
  r.ancilla_wires = circuit.measured_wires.size();
  r.total_wires = circuit.wires.size();
  r.total_gates = circuit.gates.size();
  std::vector<std::size_t> level(circuit.wires.size(), 0);
  for (const auto& g : circuit.gates) {
    ++r.gate_counts[std::string(gate_name(g.kind))];
    std::size_t layer = 0;
    for (auto t : g.targets) layer = std::max(layer, level.at(t));
    for (auto t : g.targets) level[t] = layer + 1;
    r.depth = std::max(r.depth, layer + 1);
  }
  return r;
}

/// Step-count scaling of the R!-ancilla algorithm for L qubits per copy:
/// ancilla of ceil(log2 R!) qubits and L R log R + (R log R)^2 elementary steps
/// (constants omitted, logs base 2).
struct AlgorithmCostEstimate {
  std::size_t ancilla_qubits = 0;
  double permutation_steps = 0.0;  // L R log R
  double fourier_steps = 0.0;      // (R log R)^2, preparation plus its inverse
  double total() const { return permutation_steps + fourier_steps; }
};

inline AlgorithmCostEstimate permutation_algorithm_cost(std::size_t qubits_per_copy,
                                                        std::size_t copies) {
  AlgorithmCostEstimate e;
  const double r = static_cast<double>(copies);
  const double rlogr = copies > 1 ? r * std::log2(r) : 0.0;
  double log_fact = 0.0;
  for (std::size_t i = 2; i <= copies; ++i) log_fact += std::log2(static_cast<double>(i));
  e.ancilla_qubits = static_cast<std::size_t>(std::ceil(log_fact - 1e-9));
  e.permutation_steps = static_cast<double>(qubits_per_copy) * rlogr;
  e.fourier_steps = rlogr * rlogr;
  return e;
}

/// One line per gate: index, name, parameters, wire labels.
inline std::string gate_listing(const Circuit& circuit) {
  std::ostringstream os;
  const auto report = gate_count_report(circuit);
  os << "# wires: " << report.total_wires << " (data " << report.data_wires << ", auxiliary "
     << report.ancilla_wires << ")\n";
  os << "# gates: " << report.total_gates << " (fredkin " << report.count(GateKind::fredkin)
     << ", preparation " << report.preparation_gates() << "), depth " << report.depth << "\n";
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const auto& g = circuit.gates[i];
    os << i << ' ' << gate_name(g.kind);
    if (g.kind == GateKind::uk_seed) {
      os << " k=" << g.params.at(0);
    } else if (g.kind == GateKind::two_qubit_t) {
      os << " k=" << g.params.at(0) << " j=" << g.params.at(1);
    }
    if (g.is_adjoint()) os << " adjoint";
    os << " :";
    for (auto t : g.targets) os << ' ' << circuit.wires[t].label;
    os << '\n';
  }
  os << "measure:";
  for (auto m : circuit.measured_wires) os << ' ' << circuit.wires[m].label;
  os << " accept=all_zeros\n";
  return os.str();
}

}  // namespace symstab::circuit
