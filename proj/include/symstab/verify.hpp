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

// Named invariant checks behind `symstab verify`.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "symstab/circuit.hpp"
#include "symstab/drift.hpp"
#include "symstab/mixed.hpp"
#include "symstab/symspace.hpp"

namespace symstab::verify {

enum class Level { fast, full };

struct VerifyOptions {
  Level level = Level::fast;
  std::uint64_t seed = 20260101;
  /// Test-only fault injection: perturbs every projector handed to the checks.
  bool corrupt_projector = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

class Context {
 public:
  explicit Context(const VerifyOptions& o) : opts_(o) {}

  MatrixXcd projector(std::size_t r, std::size_t d) const {
    MatrixXcd s = sym::build_projector(r, d).matrix;
    if (opts_.corrupt_projector) s(0, s.cols() - 1) += 1e-3;
    return s;
  }

  Rng rng(std::uint64_t stream) const { return Rng(opts_.seed).split(stream); }

 private:
  VerifyOptions opts_;
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

inline CheckResult dimension_law(const Context&) {
  for (std::size_t r = 1; r <= 8; ++r) {
    for (std::size_t d = 1; d <= 4; ++d) {
      if (sym::symmetric_dimension(r, d) != sym::enumerate_multisets(r, d).size()) {
        return {"dimension_law", false, "mismatch at R=" + std::to_string(r)};
      }
    }
  }
  const bool ok = sym::symmetric_dimension(3, 2) == 4;
  return {"dimension_law", ok, "R<=8, d<=4"};
}

inline CheckResult projector_idempotent(const Context& ctx) {
  double worst = 0.0;
  for (std::size_t r = 2; r <= 4; ++r) {
    const MatrixXcd s = ctx.projector(r, 2);
    worst = std::max(worst, (s * s - s).cwiseAbs().maxCoeff());
    worst = std::max(worst, (s - s.adjoint()).cwiseAbs().maxCoeff());
  }
  return {"projector_idempotent_hermitian", worst <= 1e-10, "max deviation " + fmt(worst)};
}

inline CheckResult projector_basis_agreement(const Context& ctx) {
  double worst = 0.0;
  for (std::size_t r = 1; r <= 4; ++r) {
    for (std::size_t d = 2; d <= 3; ++d) {
      const auto b = sym::build_symmetric_basis(r, d);
      worst = std::max(worst, (ctx.projector(r, d) - sym::projector_from_basis(b)).cwiseAbs().maxCoeff());
    }
  }
  return {"projector_basis_agreement", worst <= 1e-10, "max deviation " + fmt(worst)};
}

inline CheckResult network_projector_equivalence(const Context& ctx) {
  double worst = 0.0;
  Rng rng = ctx.rng(1);
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto net = circuit::build_symmetrisation_network(r);
    const MatrixXcd s = ctx.projector(r, 2);
    for (int i = 0; i < 20; ++i) {
      const auto data = random_state(HilbertLayout::qubits(r), rng);
      const VectorXcd expected = s * data.amplitudes();
      worst = std::max(worst, (circuit::network_accept_branch(net, data) - expected).cwiseAbs().maxCoeff());
    }
  }
  return {"network_projector_equivalence", worst <= 1e-9, "max deviation " + fmt(worst)};
}

inline CheckResult network_structure(const Context&) {
  for (std::size_t r = 2; r <= 6; ++r) {
    const auto rep = circuit::gate_count_report(circuit::build_symmetrisation_network(r));
    if (rep.ancilla_wires != r * (r - 1) / 2 ||
        rep.count(circuit::GateKind::fredkin) != r * (r - 1) / 2) {
      return {"network_structure", false, "wrong counts at R=" + std::to_string(r)};
    }
  }
  return {"network_structure", true, "R(R-1)/2 auxiliary wires and Fredkin gates, R=2..6"};
}

inline CheckResult one_probability_law(const Context& ctx) {
  double worst = 0.0;
  Rng rng = ctx.rng(2);
  for (std::size_t r = 1; r <= 4; ++r) {
    const auto b = sym::build_symmetric_basis(r, 2);
    for (int i = 0; i < 20; ++i) {
      VectorXcd a(static_cast<Eigen::Index>(r + 1));
      for (Eigen::Index k = 0; k < a.size(); ++k) a[k] = rng.complex_normal();
      a.normalize();
      const StateVector psi(b.layout(), b.vectors * a);
      const double p = sym::single_qubit_one_probability(a, r);
      for (std::size_t q = 0; q < r; ++q) worst = std::max(worst, std::abs(qubit_one_probability(psi, q) - p));
    }
  }
  return {"single_qubit_one_probability", worst <= 1e-10, "max deviation " + fmt(worst)};
}

inline CheckResult two_copy_closed_form(const Context& ctx) {
  double worst = 0.0;
  Rng rng = ctx.rng(3);
  const MatrixXcd s = ctx.projector(2, 2);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(HilbertLayout::qubits(1), rng);
    const auto joint = tensor_product(rho, DensityOperator(HilbertLayout({{"c2", 2}}), rho.matrix()));
    const MatrixXcd projected = s * joint.matrix() * s;
    const auto red = partial_trace(DensityOperator::unnormalized(joint.layout(), projected),
                                   {"q1"});
    const MatrixXcd got = red.matrix() / projected.trace().real();
    worst = std::max(worst, (got - stabilize::two_copy_closed_form(rho).matrix()).cwiseAbs().maxCoeff());
  }
  return {"two_copy_closed_form", worst <= 1e-12, "max deviation " + fmt(worst)};
}

inline CheckResult purity_monotone(const Context& ctx) {
  Rng rng = ctx.rng(4);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(HilbertLayout::qubits(1), rng);
    for (std::size_t r = 2; r <= 4; ++r) {
      const auto out = stabilize::symmetrize_identical(rho, r);
      worst = std::max(worst, purity(rho) - purity(*out.reduced));
    }
  }
  return {"purity_nondecreasing", worst <= 1e-12, "largest drop " + fmt(std::max(0.0, worst))};
}

inline CheckResult trace_identity(const Context& ctx) {
  double worst = 0.0;
  for (std::size_t r = 2; r <= 4; ++r) {
    Rng rng = ctx.rng(10 + r);
    const auto s = stabilize::sample_perturbation_shapes(
        {0.04, 0, r, stabilize::GeneratorKind::random_traceless}, rng);
    worst = std::max(worst, std::abs(stabilize::first_order_coefficients(s.shapes).sum() - 1.0));
  }
  return {"first_order_trace_identity", worst <= 1e-6, "max |A+2B+C-1| " + fmt(worst)};
}

inline CheckResult suppression_ratio(const Context& ctx) {
  std::string detail;
  bool ok = true;
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto rep = stabilize::run_pure_stabilisation_experiment(
        {0.02, 0.1, ctx.rng(20 + r).seed(), r}, 1, 4000);
    const double rel = rep.suppression_ratio / static_cast<double>(r);
    ok = ok && std::abs(rel - 1.0) <= 0.25;
    detail += "R=" + std::to_string(r) + ":" + fmt(rep.suppression_ratio) + " ";
  }
  return {"suppression_ratio", ok, detail};
}

inline CheckResult watchdog_limit(const Context& ctx) {
  const std::size_t rates[] = {1, 2, 4, 8, 16, 32, 64};
  const auto curve = stabilize::watchdog_success_curve({1.0, 1.0, ctx.rng(30).seed(), 3}, rates, 500);
  const bool ok = curve.monotone_within(3.0) && curve.points.back().mean_all_accept > 0.99;
  return {"watchdog_limit", ok, "all-accept at n=64: " + fmt(curve.points.back().mean_all_accept)};
}

inline CheckResult decoherence_second_order(const Context& ctx) {
  bool ok = true;
  std::string detail;
  for (std::size_t r = 2; r <= 4; ++r) {
    const auto rep = stabilize::run_decoherence_experiment(
        {0.04, ctx.rng(40 + r).seed(), r, stabilize::GeneratorKind::random_traceless}, 10);
    for (double f : {rep.post_fidelity_shrink(), rep.pre_purity_shrink(), rep.post_purity_shrink()}) {
      ok = ok && f >= 3.0 && f <= 5.0;
    }
    detail += "R=" + std::to_string(r) + ":" + fmt(rep.post_fidelity_shrink()) + " ";
  }
  return {"first_order_residual_shrink", ok, detail};
}

}  // namespace detail

/// Fast: deterministic oracle checks with R <= 4. Full adds Monte Carlo suites.
inline std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const detail::Context ctx(options);
  using Check = std::function<CheckResult(const detail::Context&)>;
  std::vector<Check> checks{detail::dimension_law,        detail::projector_idempotent,
                            detail::projector_basis_agreement, detail::network_projector_equivalence,
                            detail::network_structure,    detail::one_probability_law,
                            detail::two_copy_closed_form, detail::purity_monotone,
                            detail::trace_identity};
  if (options.level == Level::full) {
    checks.push_back(detail::suppression_ratio);
    checks.push_back(detail::watchdog_limit);
    checks.push_back(detail::decoherence_second_order);
  }
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    try {
      out.push_back(c(ctx));
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace symstab::verify
