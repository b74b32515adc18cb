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

// Random unitary drift of R stored qubits with periodic SYM projection, and
// the watchdog (Zeno) behaviour of repeated projection.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "symstab/circuit.hpp"
#include "symstab/stats.hpp"
#include "symstab/symspace.hpp"
#include "symstab/tensor.hpp"

namespace symstab::stabilize {

struct DriftModel {
  double epsilon = 0.02;  // eigenvalue bound of each H_j (inverse time)
  double delta_t = 0.1;   // projection interval
  std::uint64_t rng_seed = 0;
  std::size_t copies = 3;

  /// epsilon == 0 is accepted as the noiseless limit.
  void validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw PreconditionError("drift epsilon must be finite and non-negative");
    }
    if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
      throw PreconditionError("drift delta_t must be positive");
    }
    if (copies < 1) throw PreconditionError("drift model needs R >= 1");
  }
};

/// Hermitian 2x2 matrix with eigenvalues uniform on [-epsilon, epsilon] and a
/// Haar-random eigenbasis. Its off-diagonal c satisfies |c| <= 2 epsilon.
inline MatrixXcd sample_bounded_hamiltonian(double epsilon, Rng& rng) {
  const double l1 = rng.uniform(-epsilon, epsilon);
  const double l2 = rng.uniform(-epsilon, epsilon);
  const MatrixXcd v = haar_unitary(2, rng);
  Eigen::Vector2cd spectrum(l1, l2);
  MatrixXcd h = v * spectrum.asDiagonal() * v.adjoint();
  return 0.5 * (h + h.adjoint());
}

/// E|c|^2 under the uniform-eigenvalue / Haar-basis sampler: epsilon^2 / 9.
/// (E(l1-l2)^2 = 2 eps^2 / 3 times E|v00|^2 |v10|^2 = 1/6.)
inline double expected_coupling_squared(double epsilon) { return epsilon * epsilon / 9.0; }

/// |c|^2 when every coupling sits at the bound |c| = 2 epsilon.
inline double bound_coupling_squared(double epsilon) { return 4.0 * epsilon * epsilon; }

/// exp(i H dt) for Hermitian H, via its eigendecomposition.
inline MatrixXcd drift_unitary(const MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues() * dt).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline std::vector<MatrixXcd> sample_drift_hamiltonians(const DriftModel& model, Rng& rng) {
  std::vector<MatrixXcd> hs;
  hs.reserve(model.copies);
  for (std::size_t j = 0; j < model.copies; ++j) {
    hs.push_back(sample_bounded_hamiltonian(model.epsilon, rng));
  }
  return hs;
}

/// Applies exp(i H_j dt) to copy j of a joint R-qubit state.
inline StateVector drift_step(const StateVector& state, std::span<const MatrixXcd> hamiltonians,
                              double dt) {
  if (hamiltonians.size() != state.layout().size()) {
    throw DimensionError("one Hamiltonian per copy required");
  }
  VectorXcd v = state.amplitudes();
  for (std::size_t j = 0; j < hamiltonians.size(); ++j) {
    const std::size_t target[] = {j};
    const auto split = detail::split_subsystems(state.layout(), target);
    detail::apply_left(drift_unitary(hamiltonians[j], dt), split, v);
  }
  return StateVector(state.layout(), std::move(v), NumericPolicy{1e-10});
}

/// Same, with precomputed per-copy unitaries.
inline StateVector apply_local_unitaries(const StateVector& state,
                                         std::span<const MatrixXcd> unitaries) {
  VectorXcd v = state.amplitudes();
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    const std::size_t target[] = {j};
    const auto split = detail::split_subsystems(state.layout(), target);
    detail::apply_left(unitaries[j], split, v);
  }
  return StateVector(state.layout(), std::move(v), NumericPolicy{1e-10});
}

/// Mean over qubits of the probability of reading |1> (distance from |0..0>).
inline double unprotected_error_probability(const StateVector& state) {
  const std::size_t r = state.layout().size();
  double sum = 0.0;
  for (std::size_t q = 0; q < r; ++q) sum += qubit_one_probability(state, q);
  return sum / static_cast<double>(r);
}

/// Mean single-qubit purity over the copies.
inline double mean_single_copy_purity(const StateVector& state) {
  const std::size_t r = state.layout().size();
  double sum = 0.0;
  for (std::size_t q = 0; q < r; ++q) {
    const std::size_t keep[] = {q};
    sum += purity(reduced_density(state, keep));
  }
  return sum / static_cast<double>(r);
}

enum class ProjectionRoute { projector, network, permutation_ancilla };

/// One SYM projection attempt with three interchangeable realizations.
class Projector {
 public:
  Projector(std::size_t copies, ProjectionRoute route)
      : copies_(copies), route_(route), basis_(sym::build_symmetric_basis(copies, 2)) {
    if (route_ == ProjectionRoute::network && copies_ >= 2) {
      network_ = circuit::build_symmetrisation_network(copies_);
    }
  }

  struct Result {
    bool accepted = false;
    double accept_probability = 0.0;
    std::optional<StateVector> state;  // accepted state, or failed branch
  };

  Result project(const StateVector& psi, Rng& rng) const {
    if (route_ == ProjectionRoute::network && network_) {
      auto o = circuit::run_projection_via_network(*network_, psi, rng, {true});
      return {o.accepted, o.exact_accept_probability, std::move(o.post_state)};
    }
    if (route_ == ProjectionRoute::permutation_ancilla) {
      auto o = circuit::run_projection_via_permutation_ancilla(psi, copies_, rng, {true});
      return {o.accepted, o.exact_accept_probability, std::move(o.post_state)};
    }
    const VectorXcd coeffs = basis_.coefficients(psi.amplitudes());
    const VectorXcd inside = basis_.vectors * coeffs;
    const double p = std::min(1.0, coeffs.squaredNorm());
    Result r;
    r.accept_probability = p;
    r.accepted = rng.uniform() < p;
    const VectorXcd branch = r.accepted ? inside : VectorXcd(psi.amplitudes() - inside);
    if (branch.norm() >= kDefaultPolicy.zero_norm) {
      r.state = StateVector::normalize(psi.layout(), branch);
    }
    return r;
  }

  /// ||S psi||^2 and the renormalized projection (noiseless conditional path).
  std::pair<double, std::optional<StateVector>> condition(const StateVector& psi) const {
    auto pp = sym::project_pure(psi, basis_);
    return {pp.success_probability, std::move(pp.projected)};
  }

  const sym::SymBasis& basis() const { return basis_; }

 private:
  std::size_t copies_;
  ProjectionRoute route_;
  sym::SymBasis basis_;
  std::optional<circuit::Circuit> network_;
};

struct TrajectoryEntry {
  std::size_t step = 0;
  double pre_error = 0.0;
  double post_error = 0.0;
  double accept_probability = 0.0;
  bool accepted = false;
  double purity_pre = 0.0;
  double purity_post = 0.0;
  double fidelity_pre = 0.0;
  double fidelity_post = 0.0;
};

struct TrajectoryRecord {
  std::size_t trial = 0;
  bool aborted = false;
  std::vector<TrajectoryEntry> entries;
};

struct PureExperimentOptions {
  ProjectionRoute route = ProjectionRoute::projector;
  /// Keep evolving the failed branch instead of aborting the trial.
  bool continue_on_failure = false;
  bool keep_trajectories = false;
};

/// Per-step means over the trials that contributed to the statistics;
/// `accepted` in each row counts accepted projections at that step.
struct MeanTrajectoryEntry {
  std::size_t step = 0;
  double pre_error = 0.0;
  double post_error = 0.0;
  double accept_probability = 0.0;
  std::size_t accepted = 0;
  double purity_pre = 0.0;
  double purity_post = 0.0;
  double fidelity_pre = 0.0;
  double fidelity_post = 0.0;
};

struct PureExperimentReport {
  std::size_t copies = 0;
  std::size_t steps = 0;
  std::size_t trials = 0;
  std::size_t completed_trials = 0;
  std::size_t aborted_trials = 0;
  bool all_aborted = false;
  double mean_unprotected_error = 0.0;
  double unprotected_error_stderr = 0.0;
  double mean_protected_error = 0.0;
  double protected_error_stderr = 0.0;
  /// mean_unprotected_error / mean_protected_error (NaN when both vanish).
  double suppression_ratio = std::numeric_limits<double>::quiet_NaN();
  double mean_accept_probability = 1.0;
  /// First-order unprotected error after steps * delta_t, for |c| = 2 eps
  /// and for the uniform-eigenvalue sampler respectively.
  double predicted_unprotected_bound = 0.0;
  double predicted_unprotected_uniform = 0.0;
  std::vector<MeanTrajectoryEntry> mean_trajectory;
  std::vector<TrajectoryRecord> trajectories;
};

/// Alternates drift and SYM projection for `steps` intervals per trial.
/// Each trial samples fixed H_1..H_R from model.rng_seed split by trial index;
/// the unprotected reference evolves under the same H_j without projection.
inline PureExperimentReport run_pure_stabilisation_experiment(
    const DriftModel& model, std::size_t steps, std::size_t trials,
    const PureExperimentOptions& options = {}) {
  model.validate();
  if (steps < 1 || trials < 1) throw PreconditionError("steps and trials must be positive");
  const std::size_t r = model.copies;
  const Projector projector(r, options.route);
  const HilbertLayout layout = sym::copies_layout(r, 2);
  const Rng master(model.rng_seed);

  PureExperimentReport rep;
  rep.copies = r;
  rep.steps = steps;
  rep.trials = trials;
  const double horizon = static_cast<double>(steps) * model.delta_t;
  rep.predicted_unprotected_bound = bound_coupling_squared(model.epsilon) * horizon * horizon;
  rep.predicted_unprotected_uniform =
      expected_coupling_squared(model.epsilon) * horizon * horizon;

  RunningStats unprotected, protected_err, accept;
  std::vector<MeanTrajectoryEntry> sums(steps);
  for (std::size_t s = 0; s < steps; ++s) sums[s].step = s + 1;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = master.split(t);
    const auto hs = sample_drift_hamiltonians(model, rng);
    std::vector<MatrixXcd> us;
    for (const auto& h : hs) us.push_back(drift_unitary(h, model.delta_t));

    StateVector free_state = StateVector::basis(layout, 0);
    StateVector state = free_state;
    TrajectoryRecord record{t, false, {}};
    for (std::size_t s = 0; s < steps; ++s) {
      free_state = apply_local_unitaries(free_state, us);
      const StateVector drifted = apply_local_unitaries(state, us);
      TrajectoryEntry e;
      e.step = s + 1;
      e.pre_error = unprotected_error_probability(drifted);
      e.fidelity_pre = 1.0 - e.pre_error;
      e.purity_pre = mean_single_copy_purity(drifted);
      auto result = projector.project(drifted, rng);
      accept.add(result.accept_probability);
      e.accept_probability = result.accept_probability;
      e.accepted = result.accepted;
      const StateVector& after = result.state ? *result.state : drifted;
      e.post_error = unprotected_error_probability(after);
      e.fidelity_post = 1.0 - e.post_error;
      e.purity_post = mean_single_copy_purity(after);
      record.entries.push_back(e);
      if (!result.accepted && !options.continue_on_failure) {
        record.aborted = true;
        break;
      }
      state = after;
    }
    if (record.aborted) {
      ++rep.aborted_trials;
    } else {
      ++rep.completed_trials;
      unprotected.add(unprotected_error_probability(free_state));
      protected_err.add(record.entries.back().post_error);
      for (std::size_t s = 0; s < steps; ++s) {
        const auto& e = record.entries[s];
        auto& m = sums[s];
        m.pre_error += e.pre_error;
        m.post_error += e.post_error;
        m.accept_probability += e.accept_probability;
        m.accepted += e.accepted ? 1 : 0;
        m.purity_pre += e.purity_pre;
        m.purity_post += e.purity_post;
        m.fidelity_pre += e.fidelity_pre;
        m.fidelity_post += e.fidelity_post;
      }
    }
    if (options.keep_trajectories) rep.trajectories.push_back(std::move(record));
  }

  rep.all_aborted = rep.completed_trials == 0;
  rep.mean_accept_probability = accept.mean();
  if (!rep.all_aborted) {
    rep.mean_unprotected_error = unprotected.mean();
    rep.unprotected_error_stderr = unprotected.standard_error();
    rep.mean_protected_error = protected_err.mean();
    rep.protected_error_stderr = protected_err.standard_error();
    if (rep.mean_protected_error > 0.0) {
      rep.suppression_ratio = rep.mean_unprotected_error / rep.mean_protected_error;
    }
    const double n = static_cast<double>(rep.completed_trials);
    for (auto& m : sums) {
      m.pre_error /= n;
      m.post_error /= n;
      m.accept_probability /= n;
      m.purity_pre /= n;
      m.purity_post /= n;
      m.fidelity_pre /= n;
      m.fidelity_post /= n;
    }
    rep.mean_trajectory = std::move(sums);
  }
  return rep;
}

struct WatchdogPoint {
  std::size_t rate = 0;  // projections per unit interval
  double mean_all_accept = 0.0;
  double standard_error = 0.0;
  /// Standard error of the paired per-trial difference from the previous rate.
  double difference_stderr = 0.0;
};

struct WatchdogCurve {
  std::size_t copies = 0;
  double epsilon = 0.0;
  double interval = 1.0;
  std::vector<WatchdogPoint> points;

  /// Every point no lower than its predecessor by more than `sigmas`
  /// paired standard errors.
  bool monotone_within(double sigmas) const {
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double drop = points[i - 1].mean_all_accept - points[i].mean_all_accept;
      if (drop > sigmas * points[i].difference_stderr + 1e-15) return false;
    }
    return true;
  }
};

/// Probability that all n projections in one interval succeed, for each rate
/// n (delta_t = interval / n). Each trial fixes H_1..H_R and reuses them for
/// every rate; the per-trial value is the exact product of conditional accept
/// probabilities along the accepted branch.
inline WatchdogCurve watchdog_success_curve(const DriftModel& model,
                                            std::span<const std::size_t> rates,
                                            std::size_t trials, double interval = 1.0) {
  model.validate();
  if (trials < 1) throw PreconditionError("trials must be positive");
  const std::size_t r = model.copies;
  const Projector projector(r, ProjectionRoute::projector);
  const HilbertLayout layout = sym::copies_layout(r, 2);
  const Rng master(model.rng_seed);

  std::vector<RunningStats> stats(rates.size()), diffs(rates.size());
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = master.split(t);
    const auto hs = sample_drift_hamiltonians(model, rng);
    double prev = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
      const std::size_t n = rates[i];
      if (n < 1) throw PreconditionError("projection rate must be positive");
      const double dt = interval / static_cast<double>(n);
      std::vector<MatrixXcd> us;
      for (const auto& h : hs) us.push_back(drift_unitary(h, dt));
      StateVector psi = StateVector::basis(layout, 0);
      double all_accept = 1.0;
      for (std::size_t s = 0; s < n && all_accept > 0.0; ++s) {
        auto [p, projected] = projector.condition(apply_local_unitaries(psi, us));
        all_accept *= p;
        if (!projected) {
          all_accept = 0.0;
          break;
        }
        psi = std::move(*projected);
      }
      stats[i].add(all_accept);
      if (i > 0) diffs[i].add(all_accept - prev);
      prev = all_accept;
    }
  }
  WatchdogCurve curve{r, model.epsilon, interval, {}};
  for (std::size_t i = 0; i < rates.size(); ++i) {
    curve.points.push_back(
        {rates[i], stats[i].mean(), stats[i].standard_error(), diffs[i].standard_error()});
  }
  return curve;
}

struct WatchdogCoefficient {
  std::size_t copies = 0;
  double k = 0.0;  // single-step failure probability / delta_t^2
  double standard_error = 0.0;
};

struct WatchdogFit {
  std::vector<WatchdogCoefficient> coefficients;
  LinearFit fit;  // k versus R
};

/// Estimates k in the single-step failure probability k delta_t^2 from the
/// symmetric start |0..0>, for each R, and fits k linearly in R.
inline WatchdogFit fit_watchdog_coefficients(double epsilon, double delta_t,
                                             std::span<const std::size_t> copies_values,
                                             std::size_t trials, std::uint64_t seed) {
  WatchdogFit out;
  std::vector<double> xs, ys;
  for (std::size_t r : copies_values) {
    DriftModel model{epsilon, delta_t, seed, r};
    model.validate();
    const Projector projector(r, ProjectionRoute::projector);
    const HilbertLayout layout = sym::copies_layout(r, 2);
    const Rng master = Rng(seed).split(r);
    RunningStats k;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = master.split(t);
      const auto hs = sample_drift_hamiltonians(model, rng);
      const StateVector psi = drift_step(StateVector::basis(layout, 0), hs, delta_t);
      const double failure = 1.0 - projector.condition(psi).first;
      k.add(failure / (delta_t * delta_t));
    }
    out.coefficients.push_back({r, k.mean(), k.standard_error()});
    xs.push_back(static_cast<double>(r));
    ys.push_back(k.mean());
  }
  if (xs.size() >= 2) out.fit = linear_fit(xs, ys);
  return out;
}

}  // namespace symstab::stabilize
