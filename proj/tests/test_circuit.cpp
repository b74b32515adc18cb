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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "symstab/circuit.hpp"

namespace symstab::circuit {
namespace {

// Independent oracle: S as the average of explicit permutation matrices.
VectorXcd oracle_projection(const StateVector& data) {
  const std::size_t r = data.layout().size();
  VectorXcd out = VectorXcd::Zero(data.amplitudes().size());
  const auto perms = sym::permutations_lex(r);
  for (const auto& p : perms) out += sym::permutation_operator(p, 2) * data.amplitudes();
  return out / static_cast<double>(perms.size());
}

StateVector on_wires(const Circuit& c, const StateVector& data) {
  VectorXcd joint = VectorXcd::Zero(static_cast<Eigen::Index>(c.wires.total_dimension()));
  const auto offsets = symstab::detail::mixed_radix_offsets(c.wires, c.data_wires);
  for (std::size_t x = 0; x < offsets.size(); ++x) joint[offsets[x]] = data[x];
  return StateVector(c.wires, joint);
}

TEST(Fredkin, SwapsWhenControlSet) {
  const MatrixXcd f = fredkin_matrix();
  const auto in = StateVector::basis(HilbertLayout::qubits(3), 0b101);
  const std::size_t t[] = {0, 1, 2};
  const auto out = apply_operator(f, t, in);
  EXPECT_NEAR(std::abs(out[0b110] - 1.0), 0.0, 1e-15);
  for (std::size_t ab = 0; ab < 4; ++ab) {
    EXPECT_NEAR(std::abs(f(static_cast<Eigen::Index>(ab), static_cast<Eigen::Index>(ab)) - 1.0),
                0.0, 1e-15);
  }
  EXPECT_LE((f * f - MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(is_unitary(f));
}

TEST(SeedRotation, Examples) {
  const double h = 1.0 / std::sqrt(2.0);
  MatrixXcd u1(2, 2);
  u1 << h, -h, h, h;
  EXPECT_LE((uk_seed_rotation(1) - u1).cwiseAbs().maxCoeff(), 1e-15);
  const MatrixXcd u2 = uk_seed_rotation(2);
  EXPECT_NEAR(std::abs(u2(0, 0) - 1.0 / std::sqrt(3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u2(1, 0) - std::sqrt(2.0 / 3.0)), 0.0, 1e-15);
  for (std::size_t k = 1; k <= 10; ++k) {
    EXPECT_NEAR(std::abs(uk_seed_rotation(k).determinant() - 1.0), 0.0, 1e-12);
    EXPECT_TRUE(is_unitary(uk_seed_rotation(k)));
  }
  EXPECT_THROW(uk_seed_rotation(0), PreconditionError);
}

TEST(TGate, KTwoJOne) {
  const double r2 = std::sqrt(2.0);
  MatrixXcd expected(4, 4);
  expected << r2, 0, 0, 0, 0, 1, 1, 0, 0, -1, 1, 0, 0, 0, 0, r2;
  expected /= r2;
  EXPECT_LE((t_gate(2, 1) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TGate, FixesZeroZeroAndIsUnitary) {
  for (std::size_t k = 2; k <= 6; ++k) {
    for (std::size_t j = 1; j < k; ++j) {
      const MatrixXcd t = t_gate(k, j);
      EXPECT_TRUE(is_unitary(t));
      EXPECT_NEAR(std::abs(t(0, 0) - 1.0), 0.0, 1e-15);
      EXPECT_LE(t.col(0).tail(3).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  EXPECT_THROW(t_gate(3, 0), PreconditionError);
  EXPECT_THROW(t_gate(3, 3), PreconditionError);
}

void expect_one_hot_superposition(std::size_t k) {
  const auto c = build_uk_circuit(k);
  const auto out = simulate(c, StateVector::basis(c.wires, 0));
  const double amp = 1.0 / std::sqrt(static_cast<double>(k + 1));
  for (std::size_t x = 0; x < out.dimension(); ++x) {
    const bool one_hot = x == 0 || (x & (x - 1)) == 0;
    EXPECT_NEAR(std::abs(out[x] - (one_hot ? amp : 0.0)), 0.0, 1e-12) << "k=" << k << " x=" << x;
  }
}

TEST(UkCircuit, EqualOneHotSuperposition) {
  for (std::size_t k = 1; k <= 6; ++k) expect_one_hot_superposition(k);
}

TEST(UkCircuit, KTwoChain) {
  const auto c = build_uk_circuit(2);
  ASSERT_EQ(c.gates.size(), 2u);
  const auto out = simulate(c, StateVector::basis(c.wires, 0));
  const double a = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(out[0] - a), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[1] - a), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[2] - a), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[3]), 0.0, 1e-12);
}

TEST(Network, Structure) {
  for (std::size_t r = 2; r <= 6; ++r) {
    const auto c = build_symmetrisation_network(r);
    const auto report = gate_count_report(c);
    EXPECT_EQ(report.ancilla_wires, r * (r - 1) / 2);
    EXPECT_EQ(report.count(GateKind::fredkin), r * (r - 1) / 2);
    EXPECT_EQ(report.data_wires, r);
    EXPECT_EQ(report.preparation_gates(), r * (r - 1));
    std::size_t expected_gates = 0;
    for (std::size_t k = 1; k < r; ++k) expected_gates += network_stage_gate_count(k);
    EXPECT_EQ(report.total_gates, expected_gates);
  }
  EXPECT_EQ(gate_count_report(build_symmetrisation_network(4)).ancilla_wires, 6u);
  const auto r5 = gate_count_report(build_symmetrisation_network(5));
  EXPECT_EQ(r5.count(GateKind::fredkin), 10u);
  EXPECT_EQ(r5.preparation_gates(), 20u);
  EXPECT_THROW(build_symmetrisation_network(1), PreconditionError);
  EXPECT_THROW(build_symmetrisation_network(7), SizeBudgetError);
}

TEST(Network, TwoCopies) {
  const auto c = build_symmetrisation_network(2);
  ASSERT_EQ(c.gates.size(), 3u);
  EXPECT_EQ(c.gates[0].kind, GateKind::uk_seed);
  EXPECT_EQ(c.gates[1].kind, GateKind::fredkin);
  EXPECT_EQ(c.gates[2].kind, GateKind::uk_seed);
  EXPECT_TRUE(c.gates[2].is_adjoint());
  EXPECT_EQ(c.measured_wires, (std::vector<std::size_t>{2}));
}

TEST(Network, FredkinTargets) {
  // Stage k, control j swaps data wires j and k+1 (1-based).
  const auto c = build_symmetrisation_network(4);
  for (const auto& g : c.gates) {
    if (g.kind != GateKind::fredkin) continue;
    const std::string& ctrl = c.wires[g.targets[0]].label;  // a{k}_{j}
    const std::size_t k = std::stoul(ctrl.substr(1, ctrl.find('_') - 1));
    const std::size_t j = std::stoul(ctrl.substr(ctrl.find('_') + 1));
    EXPECT_EQ(g.targets[1], j - 1);
    EXPECT_EQ(g.targets[2], k);
  }
}

TEST(Network, IsUnitary) {
  for (std::size_t r = 2; r <= 4; ++r) {
    EXPECT_TRUE(is_unitary(circuit_unitary(build_symmetrisation_network(r)), 1e-10));
  }
}

TEST(Network, SymmetricInputAccepted) {
  const auto c = build_symmetrisation_network(3);
  const auto data = StateVector::basis(HilbertLayout::qubits(3), 0);
  const auto out = run_projection_via_network(c, data, std::uint64_t{1});
  EXPECT_TRUE(out.accepted);
  EXPECT_NEAR(out.exact_accept_probability, 1.0, 1e-12);
  EXPECT_LE((out.post_state->amplitudes() - data.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Network, ZeroOne) {
  const auto c = build_symmetrisation_network(2);
  const auto data = StateVector::basis(HilbertLayout::qubits(2), 1);
  EXPECT_NEAR(network_accept_branch(c, data).squaredNorm(), 0.5, 1e-12);
  // Find an accepting seed and check the post state.
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto out = run_projection_via_network(c, data, s);
    EXPECT_NEAR(out.exact_accept_probability, 0.5, 1e-12);
    if (!out.accepted) continue;
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs((*out.post_state)[1] - h), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((*out.post_state)[2] - h), 0.0, 1e-12);
    return;
  }
  FAIL() << "no accepting seed found";
}

TEST(Network, MatchesOracleOnRandomStates) {
  Rng rng(2718);
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto c = build_symmetrisation_network(r);
    for (int i = 0; i < 100; ++i) {
      const auto data = random_state(HilbertLayout::qubits(r), rng);
      const VectorXcd expected = oracle_projection(data);
      const VectorXcd got = network_accept_branch(c, data);
      EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-10);
      const auto pp = sym::project_pure(data);
      EXPECT_NEAR(got.squaredNorm(), pp.success_probability, 1e-10);
    }
  }
}

TEST(Network, RandomProductStateThreeCopies) {
  Rng rng(1);
  const auto c = build_symmetrisation_network(3);
  StateVector data = random_state(HilbertLayout({{"c1", 2}}), rng);
  data = tensor_product(data, random_state(HilbertLayout({{"c2", 2}}), rng));
  data = tensor_product(data, random_state(HilbertLayout({{"c3", 2}}), rng));
  const auto out = run_projection_via_network(c, data, rng);
  EXPECT_NEAR(out.exact_accept_probability, sym::project_pure(data).success_probability, 1e-10);
}

TEST(Network, FailedBranchKeptOnRequest) {
  const auto c = build_symmetrisation_network(2);
  const auto data = StateVector::basis(HilbertLayout::qubits(2), 1);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto out = run_projection_via_network(c, data, s, {true});
    if (out.accepted) continue;
    ASSERT_TRUE(out.post_state.has_value());
    // The rejected branch is the singlet.
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(std::abs((*out.post_state)[1]) - h), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((*out.post_state)[1] + (*out.post_state)[2]), 0.0, 1e-12);
    const auto plain = run_projection_via_network(c, data, s);
    EXPECT_FALSE(plain.post_state.has_value());
    return;
  }
  FAIL() << "no rejecting seed found";
}

TEST(Network, InductiveStages) {
  // After stage k with zero controls, the data equal the symmetrisation of
  // the first k+1 inputs.
  Rng rng(17);
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto c = build_symmetrisation_network(r);
    const auto data = random_state(HilbertLayout::qubits(r), rng);
    std::size_t gate_end = 0;
    for (std::size_t k = 1; k < r; ++k) {
      gate_end += network_stage_gate_count(k);
      const auto joint = simulate(c, on_wires(c, data), 0, gate_end);
      const auto zero_branch = detail::branch(c, joint.amplitudes(), 0);
      // Oracle: average over permutations of the first k+1 positions.
      std::vector<std::size_t> prefix(k + 1);
      std::iota(prefix.begin(), prefix.end(), 0u);
      VectorXcd expected = VectorXcd::Zero(data.amplitudes().size());
      std::size_t count = 0;
      do {
        std::vector<std::size_t> perm(r);
        std::iota(perm.begin(), perm.end(), 0u);
        std::copy(prefix.begin(), prefix.end(), perm.begin());
        expected += sym::permutation_operator(perm, 2) * data.amplitudes();
        ++count;
      } while (std::next_permutation(prefix.begin(), prefix.end()));
      expected /= static_cast<double>(count);
      EXPECT_LE((zero_branch - expected).cwiseAbs().maxCoeff(), 1e-10) << "R=" << r << " k=" << k;
    }
  }
}

TEST(Network, Linearity) {
  Rng rng(5);
  const auto c = build_symmetrisation_network(3);
  const auto a = random_state(HilbertLayout::qubits(3), rng);
  const auto b = random_state(HilbertLayout::qubits(3), rng);
  const cplx x(0.6, 0.1), y(-0.3, 0.5);
  const auto sum = StateVector::normalize(a.layout(), x * a.amplitudes() + y * b.amplitudes());
  const VectorXcd lhs = network_accept_branch(c, sum).normalized();
  const VectorXcd rhs =
      (x * network_accept_branch(c, a) + y * network_accept_branch(c, b)).normalized();
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Network, Idempotence) {
  Rng rng(6);
  const auto c = build_symmetrisation_network(3);
  for (int i = 0; i < 10; ++i) {
    const auto data = random_state(HilbertLayout::qubits(3), rng);
    const auto once = StateVector::normalize(data.layout(), network_accept_branch(c, data));
    EXPECT_NEAR(network_accept_branch(c, once).squaredNorm(), 1.0, 1e-10);
  }
}

TEST(Network, LayoutMismatch) {
  const auto c = build_symmetrisation_network(3);
  EXPECT_THROW(run_projection_via_network(c, StateVector::basis(HilbertLayout::qubits(2), 0),
                                          std::uint64_t{0}),
               DimensionError);
}

TEST(Lowering, EquivalentUnitary) {
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto c = build_symmetrisation_network(r);
    const auto lowered = lower_fredkin_to_cnot(c);
    const auto report = gate_count_report(lowered);
    EXPECT_EQ(report.count(GateKind::fredkin), 0u);
    EXPECT_EQ(report.count(GateKind::cnot), r * (r - 1));
    EXPECT_EQ(report.count(GateKind::toffoli), r * (r - 1) / 2);
    EXPECT_LE((circuit_unitary(c) - circuit_unitary(lowered)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PermutationAncilla, Examples) {
  const auto sym_in = StateVector::basis(HilbertLayout::qubits(3), 7);
  const auto a = run_projection_via_permutation_ancilla(sym_in, 3, std::uint64_t{0});
  EXPECT_TRUE(a.accepted);
  EXPECT_NEAR(a.exact_accept_probability, 1.0, 1e-12);
  EXPECT_LE((a.post_state->amplitudes() - sym_in.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);

  const auto b = run_projection_via_permutation_ancilla(
      StateVector::basis(HilbertLayout::qubits(2), 1), 2, std::uint64_t{0});
  EXPECT_NEAR(b.exact_accept_probability, 0.5, 1e-12);

  const auto e1 = sym::build_symmetric_basis(3, 2).vectors.col(1);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto c = run_projection_via_permutation_ancilla(
        StateVector::basis(HilbertLayout::qubits(3), 1), 3, s);
    EXPECT_NEAR(c.exact_accept_probability, 1.0 / 3.0, 1e-12);
    if (!c.accepted) continue;
    EXPECT_LE((c.post_state->amplitudes() - e1).cwiseAbs().maxCoeff(), 1e-12);
    return;
  }
  FAIL() << "no accepting seed found";
}

TEST(PermutationAncilla, MatchesNetwork) {
  Rng rng(8);
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto c = build_symmetrisation_network(r);
    for (int i = 0; i < 10; ++i) {
      const auto data = random_state(HilbertLayout::qubits(r), rng);
      const auto out = run_projection_via_permutation_ancilla(data, r, rng);
      EXPECT_NEAR(out.exact_accept_probability, network_accept_branch(c, data).squaredNorm(),
                  1e-10);
      if (out.accepted) {
        const VectorXcd expected = oracle_projection(data).normalized();
        EXPECT_LE((out.post_state->amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
}

TEST(PermutationAncilla, Budget) {
  EXPECT_THROW(run_projection_via_permutation_ancilla(
                   StateVector::basis(HilbertLayout::qubits(8), 0), 8, std::uint64_t{0}),
               SizeBudgetError);
}

TEST(PermutationAncilla, QutritCopies) {
  Rng rng(3);
  const auto data = random_state(sym::copies_layout(3, 3), rng);
  const auto out = run_projection_via_permutation_ancilla(data, 3, rng);
  EXPECT_NEAR(out.exact_accept_probability, sym::project_pure(data).success_probability, 1e-10);
}

TEST(CostEstimate, Scaling) {
  const auto e = permutation_algorithm_cost(10, 4);
  EXPECT_EQ(e.ancilla_qubits, 5u);  // 4! = 24 -> 5 qubits
  EXPECT_NEAR(e.permutation_steps, 10 * 4 * 2.0, 1e-12);
  EXPECT_NEAR(e.fourier_steps, 64.0, 1e-12);
}

TEST(Listing, ReportsCounts) {
  const auto text = gate_listing(build_symmetrisation_network(4));
  EXPECT_NE(text.find("# wires: 10 (data 4, auxiliary 6)"), std::string::npos);
  EXPECT_NE(text.find("fredkin 6"), std::string::npos);
  EXPECT_NE(text.find("accept=all_zeros"), std::string::npos);
}

TEST(GateNames, RoundTrip) {
  for (auto k : {GateKind::uk_seed, GateKind::two_qubit_t, GateKind::fredkin, GateKind::cnot,
                 GateKind::toffoli, GateKind::custom_unitary}) {
    EXPECT_EQ(gate_kind_from_name(gate_name(k)), k);
  }
  EXPECT_THROW(gate_kind_from_name("hadamard"), PreconditionError);
}

TEST(Gates, AllGeneratedMatricesUnitary) {
  for (std::size_t r = 2; r <= 6; ++r) {
    for (const auto& g : build_symmetrisation_network(r).gates) {
      EXPECT_TRUE(is_unitary(g.matrix(), 1e-12));
    }
  }
}

}  // namespace
}  // namespace symstab::circuit
