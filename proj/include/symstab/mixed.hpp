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

// Symmetrisation of mixed product states and the perturbative decoherence
// model rho_i = rho_0 + sigma_i.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symstab/stats.hpp"
#include "symstab/symspace.hpp"
#include "symstab/tensor.hpp"

namespace symstab::stabilize {

namespace detail {

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

struct RawSymmetrisation {
  MatrixXcd reduced;  // Tr_{2..R} S rho S, unnormalized
  double accept_probability = 0.0;
  double copy_asymmetry = 0.0;  // max deviation between reduced states of different copies
};

/// S (rho_1 x ... x rho_R) S reduced to one copy. Inputs need not be
/// positive, which the first-order extraction relies on.
inline RawSymmetrisation symmetrize_raw(std::span<const MatrixXcd> rhos,
                                        sym::ProjectorRoute route) {
  if (rhos.empty()) throw PreconditionError("symmetrisation needs at least one copy");
  const std::size_t r = rhos.size();
  const auto d = static_cast<std::size_t>(rhos[0].rows());
  for (const auto& m : rhos) {
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != d) {
      throw DimensionError("all copies must share one square dimension");
    }
  }
  const HilbertLayout layout = sym::copies_layout(r, d);
  if (layout.total_dimension() > kMaxOperatorDimension) {
    throw SizeBudgetError("joint density operator exceeds dense budget (" +
                          std::to_string(layout.total_dimension()) + " > " +
                          std::to_string(kMaxOperatorDimension) + ")");
  }
  MatrixXcd joint = rhos[0];
  for (std::size_t i = 1; i < r; ++i) joint = kron(joint, rhos[i]);

  MatrixXcd projected;
  if (route == sym::ProjectorRoute::permutation_sum) {
    const MatrixXcd s = sym::projector_from_permutations(r, d);
    projected = s * joint * s;
  } else {
    const sym::SymBasis basis = sym::build_symmetric_basis(r, d);
    const MatrixXcd m = basis.vectors.adjoint() * joint * basis.vectors;
    projected = basis.vectors * m * basis.vectors.adjoint();
  }
  RawSymmetrisation out;
  out.accept_probability = projected.trace().real();
  const DensityOperator whole = DensityOperator::unnormalized(layout, projected);
  for (std::size_t q = 0; q < r; ++q) {
    const std::size_t keep[] = {q};
    MatrixXcd red = partial_trace(whole, keep).matrix();
    if (q == 0) {
      out.reduced = std::move(red);
    } else {
      out.copy_asymmetry = std::max(out.copy_asymmetry, (red - out.reduced).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

}  // namespace detail

struct MixedSymmetrisation {
  std::optional<DensityOperator> reduced;  // absent when accept probability vanishes
  double accept_probability = 0.0;
};

/// Symmetrises R copies and returns the normalized single-copy state.
/// `automatic` uses the basis route.
inline MixedSymmetrisation symmetrize_mixed(
    std::span<const DensityOperator> rhos,
    sym::ProjectorRoute route = sym::ProjectorRoute::automatic,
    const NumericPolicy& policy = kDefaultPolicy) {
  if (rhos.empty()) throw PreconditionError("symmetrize_mixed needs at least one copy");
  std::vector<MatrixXcd> mats;
  for (const auto& rho : rhos) {
    if (rho.layout().size() != 1) {
      throw DimensionError("symmetrize_mixed expects single-subsystem density operators");
    }
    mats.push_back(rho.matrix());
  }
  const auto raw = detail::symmetrize_raw(mats, route);
  if (raw.copy_asymmetry > 1e-10) {
    throw std::logic_error("reduced states of different copies disagree by " +
                           std::to_string(raw.copy_asymmetry));
  }
  MixedSymmetrisation out;
  out.accept_probability = raw.accept_probability;
  if (raw.accept_probability < policy.zero_norm) return out;
  MatrixXcd m = raw.reduced / raw.accept_probability;
  m = 0.5 * (m + m.adjoint());
  out.reduced = DensityOperator(rhos[0].layout(), std::move(m), NumericPolicy{1e-10});
  return out;
}

/// R identical copies of rho.
inline MixedSymmetrisation symmetrize_identical(const DensityOperator& rho, std::size_t copies,
                                                sym::ProjectorRoute route =
                                                    sym::ProjectorRoute::automatic) {
  const std::vector<DensityOperator> rhos(copies, rho);
  return symmetrize_mixed(rhos, route);
}

/// (rho + rho^2) / Tr(rho + rho^2), the two-copy result.
inline DensityOperator two_copy_closed_form(const DensityOperator& rho) {
  const MatrixXcd m = rho.matrix() + rho.matrix() * rho.matrix();
  return DensityOperator(rho.layout(), m / m.trace().real(), NumericPolicy{1e-10});
}

/// Projector onto the eigenspace of the largest eigenvalue (within psd_tol).
inline MatrixXcd dominant_eigenspace_projector(const DensityOperator& rho,
                                               const NumericPolicy& policy = kDefaultPolicy) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix());
  const auto& vals = es.eigenvalues();
  const double top = vals.maxCoeff();
  MatrixXcd p = MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (top - vals[i] <= policy.psd_tol) {
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  return p;
}

struct PurificationPoint {
  std::size_t copies = 0;
  double purity = 0.0;
  /// Tr(P rho_R) with P the dominant eigenspace projector.
  double fidelity = 0.0;
  double accept_probability = 0.0;
};

inline std::vector<PurificationPoint> purification_limit(const DensityOperator& rho,
                                                         std::span<const std::size_t> copies) {
  const MatrixXcd dominant = dominant_eigenspace_projector(rho);
  std::vector<PurificationPoint> curve;
  for (std::size_t r : copies) {
    if (r < 1) throw PreconditionError("purification_limit needs R >= 1");
    const auto res = symmetrize_identical(rho, r);
    PurificationPoint pt{r, 0.0, 0.0, res.accept_probability};
    if (res.reduced) {
      pt.purity = purity(*res.reduced);
      pt.fidelity = (dominant * res.reduced->matrix()).trace().real();
    }
    curve.push_back(pt);
  }
  return curve;
}

enum class GeneratorKind { random_traceless, dephasing, amplitude_bias };

inline std::string_view generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::random_traceless: return "random_traceless";
    case GeneratorKind::dephasing: return "dephasing";
    case GeneratorKind::amplitude_bias: return "amplitude_bias";
  }
  return "unknown";
}

inline GeneratorKind generator_from_name(std::string_view name) {
  if (name == "random_traceless") return GeneratorKind::random_traceless;
  if (name == "dephasing") return GeneratorKind::dephasing;
  if (name == "amplitude_bias") return GeneratorKind::amplitude_bias;
  throw PreconditionError("unknown generator_kind '" + std::string(name) + "'");
}

/// Copies start in rho_0 = |0><0| and are perturbed to rho_0 + strength * shape_i.
struct DecoherenceModel {
  double strength = 0.04;
  std::uint64_t rng_seed = 0;
  std::size_t copies = 3;
  GeneratorKind generator = GeneratorKind::random_traceless;

  void validate() const {
    if (!(strength >= 0.0) || !std::isfinite(strength)) {
      throw PreconditionError("decoherence strength must be finite and non-negative");
    }
    if (copies < 1) throw PreconditionError("decoherence model needs R >= 1");
    const double limit = generator == GeneratorKind::amplitude_bias ? 0.5 : 1.0;
    if (strength > limit) {
      throw PreconditionError("strength " + std::to_string(strength) + " exceeds " +
                              std::to_string(limit) + " for generator " +
                              std::string(generator_name(generator)));
    }
  }
};

inline MatrixXcd reference_state() {
  MatrixXcd rho0 = MatrixXcd::Zero(2, 2);
  rho0(0, 0) = 1.0;
  return rho0;
}

inline bool is_valid_perturbation(const MatrixXcd& shape, double strength) {
  const MatrixXcd rho = reference_state() + strength * shape;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -kDefaultPolicy.psd_tol;
}

struct PerturbationSample {
  std::vector<MatrixXcd> shapes;  // Hermitian, traceless; sigma_i = strength * shapes[i]
  std::size_t rejections = 0;
};

/// Draws one unit shape per copy, rejecting shapes that would leave
/// rho_0 + strength * shape non-positive.
/// random_traceless: unit Bloch direction (x X + y Y + z Z).
/// dephasing: u diag(-1, 1), u uniform on [0, 1).
/// amplitude_bias: u [[-1, e^{-i phi}], [e^{i phi}, 1]]; valid for strength <= 1/2.
inline PerturbationSample sample_perturbation_shapes(const DecoherenceModel& model, Rng& rng,
                                                     std::size_t max_attempts = 100000) {
  model.validate();
  PerturbationSample out;
  for (std::size_t i = 0; i < model.copies; ++i) {
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt >= max_attempts) {
        throw PreconditionError("could not sample a valid perturbation at strength " +
                                std::to_string(model.strength));
      }
      MatrixXcd shape(2, 2);
      switch (model.generator) {
        case GeneratorKind::random_traceless: {
          double x = rng.normal(), y = rng.normal(), z = rng.normal();
          const double n = std::sqrt(x * x + y * y + z * z);
          if (n == 0.0) continue;
          x /= n;
          y /= n;
          z /= n;
          shape << cplx(z, 0), cplx(x, -y), cplx(x, y), cplx(-z, 0);
          break;
        }
        case GeneratorKind::dephasing: {
          const double u = rng.uniform();
          shape << -u, 0.0, 0.0, u;
          break;
        }
        case GeneratorKind::amplitude_bias: {
          const double u = rng.uniform();
          const double phi = rng.uniform(0.0, 2.0 * std::acos(-1.0));
          shape << -u, u * std::polar(1.0, -phi), u * std::polar(1.0, phi), u;
          break;
        }
      }
      if (is_valid_perturbation(shape, model.strength)) {
        out.shapes.push_back(shape);
        break;
      }
      ++out.rejections;
    }
  }
  return out;
}

/// Measured fidelity/purity around one symmetrisation, with the first-order
/// predictions built from t = Tr(rho_0 sigma~).
struct DecoherenceMeasurement {
  double trace_rho0_sigma = 0.0;
  double pre_fidelity = 1.0;
  double post_fidelity = 1.0;
  double pre_purity = 1.0;
  double post_purity = 1.0;
  double accept_probability = 1.0;

  double predicted_pre_fidelity() const { return 1.0 + trace_rho0_sigma; }
  double predicted_post_fidelity(std::size_t r) const {
    return 1.0 + trace_rho0_sigma / static_cast<double>(r);
  }
  double predicted_pre_purity() const { return 1.0 + 2.0 * trace_rho0_sigma; }
  double predicted_post_purity(std::size_t r) const {
    return 1.0 + 2.0 * trace_rho0_sigma / static_cast<double>(r);
  }
};

inline DecoherenceMeasurement evaluate_decoherence(std::span<const MatrixXcd> shapes,
                                                   double strength) {
  const std::size_t r = shapes.size();
  const MatrixXcd rho0 = reference_state();
  std::vector<DensityOperator> rhos;
  DecoherenceMeasurement m;
  double fid = 0.0, pur = 0.0, t = 0.0;
  for (const auto& shape : shapes) {
    const MatrixXcd rho = rho0 + strength * shape;
    t += strength * shape(0, 0).real();
    fid += rho(0, 0).real();
    pur += (rho * rho).trace().real();
    rhos.emplace_back(HilbertLayout::qubits(1), rho, NumericPolicy{1e-10});
  }
  const double n = static_cast<double>(r);
  m.trace_rho0_sigma = t / n;
  m.pre_fidelity = fid / n;
  m.pre_purity = pur / n;
  const auto sym = symmetrize_mixed(rhos);
  m.accept_probability = sym.accept_probability;
  if (!sym.reduced) throw PreconditionError("perturbed copies have no symmetric component");
  m.post_fidelity = sym.reduced->matrix()(0, 0).real();
  m.post_purity = purity(*sym.reduced);
  return m;
}

/// Absolute gaps between measured values and the first-order laws.
struct FirstOrderResiduals {
  double pre_fidelity = 0.0;
  double post_fidelity = 0.0;
  double pre_purity = 0.0;
  double post_purity = 0.0;
};

inline FirstOrderResiduals residuals(const DecoherenceMeasurement& m, std::size_t r) {
  return {std::abs(m.pre_fidelity - m.predicted_pre_fidelity()),
          std::abs(m.post_fidelity - m.predicted_post_fidelity(r)),
          std::abs(m.pre_purity - m.predicted_pre_purity()),
          std::abs(m.post_purity - m.predicted_post_purity(r))};
}

struct DecoherenceReport {
  DecoherenceModel model;
  std::size_t trials = 0;
  std::size_t rejections = 0;
  // Means over trials at the model strength.
  double pre_fidelity = 1.0;
  double post_fidelity = 1.0;
  double pre_purity = 1.0;
  double post_purity = 1.0;
  double accept_probability = 1.0;
  double pre_error = 0.0;   // 1 - pre_fidelity
  double post_error = 0.0;  // 1 - post_fidelity
  // Mean residuals at the model strength and at half of it, same shapes.
  FirstOrderResiduals residual_full;
  FirstOrderResiduals residual_half;

  static double shrink(double full, double half) {
    return half > 0.0 ? full / half : std::numeric_limits<double>::quiet_NaN();
  }
  /// Residual shrink factors on halving the strength (about 4 at second order).
  double post_fidelity_shrink() const {
    return shrink(residual_full.post_fidelity, residual_half.post_fidelity);
  }
  double pre_purity_shrink() const {
    return shrink(residual_full.pre_purity, residual_half.pre_purity);
  }
  double post_purity_shrink() const {
    return shrink(residual_full.post_purity, residual_half.post_purity);
  }
};

/// Trials use Rng(model.rng_seed).split(trial).
inline DecoherenceReport run_decoherence_experiment(const DecoherenceModel& model,
                                                    std::size_t trials = 1) {
  model.validate();
  if (trials < 1) throw PreconditionError("trials must be positive");
  DecoherenceReport rep;
  rep.model = model;
  rep.trials = trials;
  const Rng master(model.rng_seed);
  const std::size_t r = model.copies;
  RunningStats pre_f, post_f, pre_p, post_p, acc;
  RunningStats rf[4], rh[4];
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = master.split(t);
    const auto sample = sample_perturbation_shapes(model, rng);
    rep.rejections += sample.rejections;
    const auto full = evaluate_decoherence(sample.shapes, model.strength);
    const auto half = evaluate_decoherence(sample.shapes, 0.5 * model.strength);
    pre_f.add(full.pre_fidelity);
    post_f.add(full.post_fidelity);
    pre_p.add(full.pre_purity);
    post_p.add(full.post_purity);
    acc.add(full.accept_probability);
    const auto a = residuals(full, r);
    const auto b = residuals(half, r);
    rf[0].add(a.pre_fidelity);
    rf[1].add(a.post_fidelity);
    rf[2].add(a.pre_purity);
    rf[3].add(a.post_purity);
    rh[0].add(b.pre_fidelity);
    rh[1].add(b.post_fidelity);
    rh[2].add(b.pre_purity);
    rh[3].add(b.post_purity);
  }
  rep.pre_fidelity = pre_f.mean();
  rep.post_fidelity = post_f.mean();
  rep.pre_purity = pre_p.mean();
  rep.post_purity = post_p.mean();
  rep.accept_probability = acc.mean();
  rep.pre_error = 1.0 - rep.pre_fidelity;
  rep.post_error = 1.0 - rep.post_fidelity;
  rep.residual_full = {rf[0].mean(), rf[1].mean(), rf[2].mean(), rf[3].mean()};
  rep.residual_half = {rh[0].mean(), rh[1].mean(), rh[2].mean(), rh[3].mean()};
  return rep;
}

/// First-order response of the symmetrised copy to sigma~, read off by a
/// central difference. With rho_0 pure, rho_0 sigma~ rho_0 and
/// rho_0 Tr(sigma~ rho_0) coincide, so only B and A + C are separable.
struct FirstOrderCoefficients {
  double b = std::numeric_limits<double>::quiet_NaN();
  double a_plus_c = std::numeric_limits<double>::quiet_NaN();
  /// |d rho~_11 + t / R|, which vanishes when the expansion structure holds.
  double population_mismatch = 0.0;
  double sum() const { return a_plus_c + 2.0 * b; }
};

inline FirstOrderCoefficients first_order_coefficients(std::span<const MatrixXcd> shapes,
                                                       double h = 1e-4) {
  const std::size_t r = shapes.size();
  if (r < 2) throw PreconditionError("first-order coefficients need R >= 2");
  auto normalized_at = [&](double s) {
    std::vector<MatrixXcd> rhos;
    for (const auto& shape : shapes) rhos.push_back(reference_state() + s * shape);
    const auto raw = detail::symmetrize_raw(rhos, sym::ProjectorRoute::basis_outer_product);
    return MatrixXcd(raw.reduced / raw.accept_probability);
  };
  const MatrixXcd d = (normalized_at(h) - normalized_at(-h)) / (2.0 * h);
  MatrixXcd mean_shape = MatrixXcd::Zero(2, 2);
  for (const auto& s : shapes) mean_shape += s;
  mean_shape /= static_cast<double>(r);
  const double t = mean_shape(0, 0).real();
  const cplx off = mean_shape(0, 1);
  const double rm1 = static_cast<double>(r - 1);
  const double inv_r = 1.0 / static_cast<double>(r);

  FirstOrderCoefficients c;
  if (std::abs(off) > 1e-6) c.b = ((d(0, 1) - off * inv_r) / (rm1 * off)).real();
  if (std::abs(t) > 1e-6 && std::isfinite(c.b)) {
    c.a_plus_c = (d(0, 0).real() + rm1 * t - t * inv_r - 2.0 * rm1 * c.b * t) / (rm1 * t);
  }
  c.population_mismatch = std::abs(d(1, 1).real() + t * inv_r);
  return c;
}

}  // namespace symstab::stabilize
