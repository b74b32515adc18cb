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
#include <vector>

#include "symstab/drift.hpp"

namespace symstab::stabilize {
namespace {

TEST(BoundedHamiltonian, ZeroEpsilonIsZero) {
  Rng rng(1);
  EXPECT_LE(sample_bounded_hamiltonian(0.0, rng).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BoundedHamiltonian, SpectrumAndCouplingBound) {
  Rng rng(2);
  const double eps = 0.3;
  const int n = 100000;
  double max_c = 0.0;
  cplx sum = 0.0;
  double sum_abs2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const MatrixXcd h = sample_bounded_hamiltonian(eps, rng);
    if (i < 1000) {
      EXPECT_TRUE(is_hermitian(h));
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
      EXPECT_LE(es.eigenvalues().cwiseAbs().maxCoeff(), eps + 1e-12);
    }
    const cplx c = h(1, 0);
    max_c = std::max(max_c, std::abs(c));
    sum += c;
    sum_abs2 += std::norm(c);
  }
  EXPECT_LE(max_c, 2.0 * eps);
  const cplx mean = sum / double(n);
  const double sigma = std::sqrt(sum_abs2 / n);
  EXPECT_LE(std::abs(mean.real()), 5.0 * sigma / std::sqrt(double(n)));
  EXPECT_LE(std::abs(mean.imag()), 5.0 * sigma / std::sqrt(double(n)));
}

TEST(BoundedHamiltonian, MeanCouplingSquared) {
  // Uniform eigenvalues and a Haar basis give E|c|^2 = eps^2 / 9.
  Rng rng(3);
  const double eps = 1.0;
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::norm(sample_bounded_hamiltonian(eps, rng)(1, 0));
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_LE(std::abs(mean - expected_coupling_squared(eps)), 4.0 * se);
  EXPECT_NEAR(expected_coupling_squared(eps) / bound_coupling_squared(eps), 1.0 / 36.0, 1e-15);
}

TEST(DriftStep, ZeroHamiltonianUnchanged) {
  Rng rng(4);
  const auto psi = random_state(HilbertLayout::qubits(3), rng);
  const std::vector<MatrixXcd> hs(3, MatrixXcd::Zero(2, 2));
  const auto out = drift_step(psi, hs, 0.7);
  EXPECT_LE((out.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DriftStep, PauliXRotation) {
  const double eps = 0.05, dt = 0.1;
  MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  const std::vector<MatrixXcd> hs{eps * x};
  const auto out = drift_step(StateVector::basis(HilbertLayout::qubits(1), 0), hs, dt);
  const double exact = std::pow(std::sin(eps * dt), 2);
  EXPECT_NEAR(unprotected_error_probability(out), exact, 1e-15);
  EXPECT_NEAR(exact / (eps * eps * dt * dt), 1.0, 1e-4);
}

TEST(DriftStep, PreservesNorm) {
  Rng rng(5);
  const auto psi = random_state(HilbertLayout::qubits(4), rng);
  DriftModel m{0.8, 0.3, 0, 4};
  const auto hs = sample_drift_hamiltonians(m, rng);
  EXPECT_NEAR(drift_step(psi, hs, 0.3).norm(), 1.0, 1e-12);
}

TEST(DriftUnitary, MatchesTaylorSeries) {
  Rng rng(6);
  const MatrixXcd h = sample_bounded_hamiltonian(1.0, rng);
  const double dt = 0.37;
  MatrixXcd term = MatrixXcd::Identity(2, 2), sum = term;
  for (int n = 1; n < 30; ++n) {
    term = term * (cplx(0, dt) * h) / double(n);
    sum += term;
  }
  EXPECT_LE((drift_unitary(h, dt) - sum).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(UnprotectedError, Examples) {
  const auto layout = HilbertLayout::qubits(3);
  EXPECT_EQ(unprotected_error_probability(StateVector::basis(layout, 0)), 0.0);
  EXPECT_NEAR(unprotected_error_probability(StateVector::basis(layout, 7)), 1.0, 1e-15);
}

TEST(UnprotectedError, FirstOrderCouplings) {
  Rng rng(7);
  const double dt = 1e-3;
  DriftModel m{0.5, dt, 0, 4};
  const auto hs = sample_drift_hamiltonians(m, rng);
  const auto out = drift_step(StateVector::basis(HilbertLayout::qubits(4), 0), hs, dt);
  double predicted = 0.0;
  for (const auto& h : hs) predicted += std::norm(h(1, 0)) * dt * dt;
  predicted /= 4.0;
  EXPECT_NEAR(unprotected_error_probability(out) / predicted, 1.0, 1e-5);
}

TEST(PureExperiment, NoiselessLimit) {
  DriftModel m{0.0, 0.1, 9, 3};
  const auto rep = run_pure_stabilisation_experiment(m, 5, 20);
  EXPECT_EQ(rep.completed_trials, 20u);
  EXPECT_EQ(rep.mean_protected_error, 0.0);
  EXPECT_EQ(rep.mean_unprotected_error, 0.0);
  EXPECT_DOUBLE_EQ(rep.mean_accept_probability, 1.0);
  for (const auto& row : rep.mean_trajectory) {
    EXPECT_DOUBLE_EQ(row.accept_probability, 1.0);
    EXPECT_EQ(row.accepted, 20u);
  }
}

TEST(PureExperiment, SingleCopyRatioIsOne) {
  DriftModel m{0.3, 0.1, 10, 1};
  const auto rep = run_pure_stabilisation_experiment(m, 3, 200);
  EXPECT_NEAR(rep.suppression_ratio, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rep.mean_accept_probability, 1.0);
}

TEST(PureExperiment, SuppressionNearR) {
  for (std::size_t r : {2u, 3u}) {
    DriftModel m{0.02, 0.1, 100 + r, r};
    const auto rep = run_pure_stabilisation_experiment(m, 1, 3000);
    EXPECT_NEAR(rep.suppression_ratio / static_cast<double>(r), 1.0, 0.25) << "R=" << r;
  }
}

TEST(PureExperiment, RoutesAgree) {
  DriftModel m{0.5, 0.2, 77, 3};
  PureExperimentOptions opt;
  opt.continue_on_failure = true;
  const auto a = run_pure_stabilisation_experiment(m, 4, 30, opt);
  opt.route = ProjectionRoute::network;
  const auto b = run_pure_stabilisation_experiment(m, 4, 30, opt);
  opt.route = ProjectionRoute::permutation_ancilla;
  const auto c = run_pure_stabilisation_experiment(m, 4, 30, opt);
  EXPECT_NEAR(a.mean_accept_probability, b.mean_accept_probability, 1e-10);
  EXPECT_NEAR(a.mean_accept_probability, c.mean_accept_probability, 1e-10);
  for (std::size_t s = 0; s < 4; ++s) {
    EXPECT_EQ(a.mean_trajectory[s].accepted, b.mean_trajectory[s].accepted);
    EXPECT_EQ(a.mean_trajectory[s].accepted, c.mean_trajectory[s].accepted);
  }
}

TEST(PureExperiment, AllTrialsAbortedIsReported) {
  DriftModel m{20.0, 1.0, 5, 2};
  const auto rep = run_pure_stabilisation_experiment(m, 200, 4);
  EXPECT_EQ(rep.completed_trials + rep.aborted_trials, 4u);
  EXPECT_TRUE(rep.all_aborted);
  EXPECT_TRUE(rep.mean_trajectory.empty());
  EXPECT_TRUE(std::isnan(rep.suppression_ratio));
}

TEST(PureExperiment, TrajectoryInvariants) {
  DriftModel m{0.5, 0.3, 8, 3};
  PureExperimentOptions opt;
  opt.keep_trajectories = true;
  const auto rep = run_pure_stabilisation_experiment(m, 6, 25, opt);
  ASSERT_EQ(rep.trajectories.size(), 25u);
  for (const auto& tr : rep.trajectories) {
    for (std::size_t i = 0; i < tr.entries.size(); ++i) {
      const auto& e = tr.entries[i];
      EXPECT_EQ(e.step, i + 1);
      for (double p : {e.pre_error, e.post_error, e.accept_probability, e.fidelity_pre,
                       e.fidelity_post}) {
        EXPECT_GE(p, -1e-12);
        EXPECT_LE(p, 1.0 + 1e-12);
      }
      EXPECT_GE(e.purity_pre, 0.5 - 1e-12);
      EXPECT_LE(e.purity_post, 1.0 + 1e-12);
    }
    EXPECT_EQ(tr.aborted, !tr.entries.back().accepted);
  }
}

TEST(PureExperiment, Deterministic) {
  DriftModel m{0.2, 0.1, 31, 3};
  const auto a = run_pure_stabilisation_experiment(m, 3, 50);
  const auto b = run_pure_stabilisation_experiment(m, 3, 50);
  EXPECT_EQ(a.mean_protected_error, b.mean_protected_error);
  EXPECT_EQ(a.mean_unprotected_error, b.mean_unprotected_error);
}

TEST(PureExperiment, InvalidModel) {
  EXPECT_THROW(run_pure_stabilisation_experiment({-1.0, 0.1, 0, 2}, 1, 1), PreconditionError);
  EXPECT_THROW(run_pure_stabilisation_experiment({0.1, 0.0, 0, 2}, 1, 1), PreconditionError);
}

TEST(Watchdog, NoiselessIsOne) {
  const std::size_t rates[] = {1, 4, 16};
  const auto curve = watchdog_success_curve({0.0, 1.0, 0, 3}, rates, 10);
  for (const auto& p : curve.points) EXPECT_DOUBLE_EQ(p.mean_all_accept, 1.0);
}

TEST(Watchdog, ApproachesOneMonotonically) {
  const std::size_t rates[] = {1, 2, 4, 8, 16, 32, 64};
  const auto curve = watchdog_success_curve({1.0, 1.0, 42, 3}, rates, 400);
  EXPECT_TRUE(curve.monotone_within(3.0));
  EXPECT_GT(curve.points.back().mean_all_accept, 0.99);
  EXPECT_LT(curve.points.front().mean_all_accept, curve.points.back().mean_all_accept);
}

TEST(Watchdog, CoefficientGrowsLinearly) {
  const std::size_t rs[] = {2, 3, 4, 5, 6};
  const auto fit = fit_watchdog_coefficients(1.0, 0.01, rs, 1000, 11);
  EXPECT_GT(fit.fit.slope, 0.0);
  EXPECT_GE(fit.fit.r_squared, 0.9);
  // First order: k = (R - 1) E|c|^2 from the symmetric start.
  for (const auto& c : fit.coefficients) {
    const double expected = static_cast<double>(c.copies - 1) * expected_coupling_squared(1.0);
    EXPECT_NEAR(c.k, expected, 4.0 * c.standard_error + 0.01 * expected) << "R=" << c.copies;
  }
}

TEST(Stats, LinearFitExact) {
  const double x[] = {1, 2, 3, 4};
  const double y[] = {3, 5, 7, 9};
  const auto f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
}

}  // namespace
}  // namespace symstab::stabilize
