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

// Dense complex linear algebra over labelled multi-subsystem Hilbert spaces.
//
// Index convention: the first listed subsystem is the most significant
// digit of the composite basis index (big-endian mixed radix). Every gate
// matrix in this library is written in that convention.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "symstab/errors.hpp"
#include "symstab/numeric.hpp"
#include "symstab/rng.hpp"

namespace symstab {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

struct Subsystem {
  std::string label;
  std::size_t dimension = 2;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

class HilbertLayout {
 public:
  HilbertLayout() = default;

  explicit HilbertLayout(std::vector<Subsystem> subsystems)
      : subsystems_(std::move(subsystems)) {
    strides_.resize(subsystems_.size());
    std::size_t total = 1;
    for (std::size_t i = subsystems_.size(); i-- > 0;) {
      const auto& s = subsystems_[i];
      if (s.dimension == 0) {
        throw DimensionError("subsystem '" + s.label + "' has dimension 0");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (subsystems_[j].label == s.label) {
          throw LabelError("duplicate subsystem label '" + s.label + "'");
        }
      }
      strides_[i] = total;
      if (total > kMaxStateDimension / s.dimension) {
        throw SizeBudgetError("layout exceeds dense state budget of " +
                              std::to_string(kMaxStateDimension));
      }
      total *= s.dimension;
    }
    total_ = total;
  }

  /// n qubits labelled prefix1 .. prefixn.
  static HilbertLayout qubits(std::size_t n, std::string_view prefix = "q") {
    return uniform(n, 2, prefix);
  }

  /// n subsystems of dimension d labelled prefix1 .. prefixn.
  static HilbertLayout uniform(std::size_t n, std::size_t d,
                               std::string_view prefix = "q") {
    std::vector<Subsystem> subs;
    subs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      subs.push_back({std::string(prefix) + std::to_string(i + 1), d});
    }
    return HilbertLayout(std::move(subs));
  }

  std::size_t size() const { return subsystems_.size(); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const Subsystem& operator[](std::size_t i) const { return subsystems_.at(i); }
  std::size_t total_dimension() const { return total_; }
  std::size_t dimension(std::size_t i) const { return subsystems_.at(i).dimension; }
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  bool contains(std::string_view label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem& s) { return s.label == label; });
  }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
      if (subsystems_[i].label == label) return i;
    }
    throw LabelError("unknown subsystem label '" + std::string(label) + "'");
  }

  std::vector<std::size_t> indices_of(std::span<const std::string> labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(index_of(l));
    return out;
  }

  /// True when every subsystem has the same dimension.
  bool is_uniform() const {
    return std::all_of(subsystems_.begin(), subsystems_.end(), [&](const Subsystem& s) {
      return s.dimension == subsystems_.front().dimension;
    });
  }

  HilbertLayout concat(const HilbertLayout& other) const {
    std::vector<Subsystem> subs = subsystems_;
    for (const auto& s : other.subsystems_) {
      if (contains(s.label)) {
        throw LabelError("label collision in tensor product: '" + s.label + "'");
      }
      subs.push_back(s);
    }
    return HilbertLayout(std::move(subs));
  }

  HilbertLayout select(std::span<const std::size_t> which) const {
    std::vector<Subsystem> subs;
    subs.reserve(which.size());
    for (auto i : which) subs.push_back(subsystems_.at(i));
    return HilbertLayout(std::move(subs));
  }

  std::vector<std::size_t> digits(std::size_t index) const {
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out[i] = (index / strides_[i]) % subsystems_[i].dimension;
    }
    return out;
  }

  std::size_t index(std::span<const std::size_t> digits) const {
    if (digits.size() != size()) throw DimensionError("digit count does not match layout");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (digits[i] >= subsystems_[i].dimension) throw DimensionError("digit out of range");
      idx += digits[i] * strides_[i];
    }
    return idx;
  }

  friend bool operator==(const HilbertLayout& a, const HilbertLayout& b) {
    return a.subsystems_ == b.subsystems_;
  }

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

namespace detail {

// Decomposes composite indices as rest_offsets[r] + target_offsets[t], where t
// runs over the target digits in the listed order (first target most
// significant) and r over the remaining subsystems in layout order.
struct SubsystemSplit {
  std::vector<std::size_t> target_offsets;
  std::vector<std::size_t> rest_offsets;
};

inline std::vector<std::size_t> mixed_radix_offsets(const HilbertLayout& layout,
                                                    std::span<const std::size_t> which) {
  std::vector<std::size_t> offsets{0};
  for (auto i : which) {
    const std::size_t dim = layout.dimension(i);
    const std::size_t stride = layout.stride(i);
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dim);
    for (auto o : offsets) {
      for (std::size_t digit = 0; digit < dim; ++digit) next.push_back(o + digit * stride);
    }
    offsets = std::move(next);
  }
  return offsets;
}

inline SubsystemSplit split_subsystems(const HilbertLayout& layout,
                                       std::span<const std::size_t> targets) {
  std::vector<bool> is_target(layout.size(), false);
  for (auto t : targets) {
    if (t >= layout.size()) throw LabelError("subsystem index out of range");
    if (is_target[t]) throw LabelError("subsystem listed twice: '" + layout[t].label + "'");
    is_target[t] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (!is_target[i]) rest.push_back(i);
  }
  return {mixed_radix_offsets(layout, targets), mixed_radix_offsets(layout, rest)};
}

inline std::size_t target_dimension(const HilbertLayout& layout,
                                    std::span<const std::size_t> targets) {
  std::size_t dim = 1;
  for (auto t : targets) dim *= layout.dimension(t);
  return dim;
}

// Applies op (acting on the split's target digits) to every column of data.
inline void apply_left(const MatrixXcd& op, const SubsystemSplit& split, MatrixXcd& data) {
  const auto m = static_cast<Eigen::Index>(split.target_offsets.size());
  VectorXcd in(m);
  VectorXcd out(m);
  for (Eigen::Index col = 0; col < data.cols(); ++col) {
    for (auto base : split.rest_offsets) {
      for (Eigen::Index t = 0; t < m; ++t) in[t] = data(base + split.target_offsets[t], col);
      out.noalias() = op * in;
      for (Eigen::Index t = 0; t < m; ++t) data(base + split.target_offsets[t], col) = out[t];
    }
  }
}

inline void apply_left(const MatrixXcd& op, const SubsystemSplit& split, VectorXcd& data) {
  const auto m = static_cast<Eigen::Index>(split.target_offsets.size());
  VectorXcd in(m);
  VectorXcd out(m);
  for (auto base : split.rest_offsets) {
    for (Eigen::Index t = 0; t < m; ++t) in[t] = data[base + split.target_offsets[t]];
    out.noalias() = op * in;
    for (Eigen::Index t = 0; t < m; ++t) data[base + split.target_offsets[t]] = out[t];
  }
}

}  // namespace detail

inline bool is_hermitian(const MatrixXcd& m, double tol = kDefaultPolicy.algebraic_tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const MatrixXcd& m, double tol = kDefaultPolicy.algebraic_tol) {
  if (m.rows() != m.cols()) return false;
  const MatrixXcd id = MatrixXcd::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

class DensityOperator;

/// Complex amplitude vector over a layout. Normalized unless built with
/// `unnormalized`, which is how operations flag non-unit results.
class StateVector {
 public:
  StateVector(HilbertLayout layout, VectorXcd amplitudes,
              const NumericPolicy& policy = kDefaultPolicy)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), normalized_(true) {
    check_shape();
    if (std::abs(amplitudes_.norm() - 1.0) > policy.algebraic_tol) {
      throw PreconditionError("state vector is not normalized (norm " +
                              std::to_string(amplitudes_.norm()) + ")");
    }
  }

  static StateVector unnormalized(HilbertLayout layout, VectorXcd amplitudes) {
    return StateVector(std::move(layout), std::move(amplitudes), false);
  }

  static StateVector basis(HilbertLayout layout, std::size_t index) {
    if (index >= layout.total_dimension()) throw DimensionError("basis index out of range");
    VectorXcd v = VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dimension()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(layout), std::move(v), true);
  }

  static StateVector basis(HilbertLayout layout, std::span<const std::size_t> digits) {
    const std::size_t idx = layout.index(digits);
    return basis(std::move(layout), idx);
  }

  /// Normalizes `amplitudes`; throws if its norm is below policy.zero_norm.
  static StateVector normalize(HilbertLayout layout, VectorXcd amplitudes,
                               const NumericPolicy& policy = kDefaultPolicy) {
    const double n = amplitudes.norm();
    if (n < policy.zero_norm) throw PreconditionError("cannot normalize a zero vector");
    amplitudes /= n;
    return StateVector(std::move(layout), std::move(amplitudes), true);
  }

  const HilbertLayout& layout() const { return layout_; }
  const VectorXcd& amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
  std::size_t dimension() const { return layout_.total_dimension(); }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized() const { return normalized_; }

  StateVector normalized(const NumericPolicy& policy = kDefaultPolicy) const {
    return normalize(layout_, amplitudes_, policy);
  }

  cplx inner(const StateVector& other) const {
    if (!(layout_ == other.layout_)) throw DimensionError("inner product of mismatched layouts");
    return amplitudes_.dot(other.amplitudes_);
  }

  inline DensityOperator projector() const;

 private:
  friend StateVector tensor_product(const StateVector&, const StateVector&);
  friend StateVector apply_operator(const MatrixXcd&, std::span<const std::size_t>,
                                    const StateVector&, bool);

  StateVector(HilbertLayout layout, VectorXcd amplitudes, bool normalized)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), normalized_(normalized) {
    check_shape();
  }

  void check_shape() const {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dimension()) {
      throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) +
                           " does not match layout dimension " +
                           std::to_string(layout_.total_dimension()));
    }
  }

  HilbertLayout layout_;
  VectorXcd amplitudes_;
  bool normalized_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix over a layout.
class DensityOperator {
 public:
  DensityOperator(HilbertLayout layout, MatrixXcd matrix,
                  const NumericPolicy& policy = kDefaultPolicy)
      : layout_(std::move(layout)), matrix_(std::move(matrix)), normalized_(true) {
    check_shape();
    if (!is_hermitian(matrix_, policy.algebraic_tol)) {
      throw PreconditionError("density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cplx(1.0)) > policy.algebraic_tol) {
      throw PreconditionError("density operator trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -policy.psd_tol) {
      throw PreconditionError("density operator has a negative eigenvalue");
    }
  }

  static DensityOperator unnormalized(HilbertLayout layout, MatrixXcd matrix) {
    return DensityOperator(std::move(layout), std::move(matrix), false);
  }

  static DensityOperator maximally_mixed(HilbertLayout layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dimension());
    MatrixXcd m = MatrixXcd::Identity(n, n) / static_cast<double>(n);
    return DensityOperator(std::move(layout), std::move(m), true);
  }

  const HilbertLayout& layout() const { return layout_; }
  const MatrixXcd& matrix() const { return matrix_; }
  std::size_t dimension() const { return layout_.total_dimension(); }
  cplx trace() const { return matrix_.trace(); }
  bool is_normalized() const { return normalized_; }

 private:
  friend class StateVector;
  friend DensityOperator tensor_product(const DensityOperator&, const DensityOperator&);
  friend DensityOperator partial_trace(const DensityOperator&, std::span<const std::size_t>);
  friend DensityOperator apply_operator(const MatrixXcd&, std::span<const std::size_t>,
                                        const DensityOperator&, bool);
  friend DensityOperator reduced_density(const StateVector&, std::span<const std::size_t>);

  DensityOperator(HilbertLayout layout, MatrixXcd matrix, bool normalized)
      : layout_(std::move(layout)), matrix_(std::move(matrix)), normalized_(normalized) {
    check_shape();
  }

  void check_shape() const {
    const auto n = static_cast<Eigen::Index>(layout_.total_dimension());
    if (layout_.total_dimension() > kMaxOperatorDimension) {
      throw SizeBudgetError("density operator side " + std::to_string(n) +
                            " exceeds budget " + std::to_string(kMaxOperatorDimension));
    }
    if (matrix_.rows() != n || matrix_.cols() != n) {
      throw DimensionError("matrix shape does not match layout dimension " + std::to_string(n));
    }
  }

  HilbertLayout layout_;
  MatrixXcd matrix_;
  bool normalized_;
};

inline DensityOperator StateVector::projector() const {
  if (layout_.total_dimension() > kMaxOperatorDimension) {
    throw SizeBudgetError("state too large to form its projector");
  }
  return DensityOperator(layout_, amplitudes_ * amplitudes_.adjoint(), normalized_);
}

/// Hermitian traceless operator on a single subsystem.
class HermitianPerturbation {
 public:
  HermitianPerturbation(HilbertLayout layout, MatrixXcd matrix,
                        const NumericPolicy& policy = kDefaultPolicy)
      : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    if (layout_.size() != 1) throw DimensionError("perturbation must act on one subsystem");
    const auto n = static_cast<Eigen::Index>(layout_.total_dimension());
    if (matrix_.rows() != n || matrix_.cols() != n) throw DimensionError("perturbation shape");
    if (!is_hermitian(matrix_, policy.algebraic_tol)) {
      throw PreconditionError("perturbation is not Hermitian");
    }
    if (std::abs(matrix_.trace()) > policy.algebraic_tol) {
      throw PreconditionError("perturbation is not traceless");
    }
  }

  const HilbertLayout& layout() const { return layout_; }
  const MatrixXcd& matrix() const { return matrix_; }

 private:
  HilbertLayout layout_;
  MatrixXcd matrix_;
};

// ---------------------------------------------------------------------------
// Operations

inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  HilbertLayout layout = a.layout().concat(b.layout());
  VectorXcd v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return StateVector(std::move(layout), std::move(v), a.is_normalized() && b.is_normalized());
}

inline DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  HilbertLayout layout = a.layout().concat(b.layout());
  MatrixXcd m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return DensityOperator(std::move(layout), std::move(m),
                         a.is_normalized() && b.is_normalized());
}

/// Reduced operator on the kept subsystems, in layout order.
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::span<const std::size_t> keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const auto split = detail::split_subsystems(rho.layout(), kept);
  const auto m = static_cast<Eigen::Index>(split.target_offsets.size());
  MatrixXcd out = MatrixXcd::Zero(m, m);
  const MatrixXcd& full = rho.matrix();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      cplx acc = 0.0;
      for (auto base : split.rest_offsets) {
        acc += full(base + split.target_offsets[i], base + split.target_offsets[j]);
      }
      out(i, j) = acc;
    }
  }
  return DensityOperator(rho.layout().select(kept), std::move(out), rho.is_normalized());
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::span<const std::string> keep) {
  const auto idx = rho.layout().indices_of(keep);
  return partial_trace(rho, std::span<const std::size_t>(idx));
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::initializer_list<std::string> keep) {
  std::vector<std::string> labels(keep);
  return partial_trace(rho, std::span<const std::string>(labels));
}

/// Reduced operator of |psi><psi| on the kept subsystems without forming the
/// full projector.
inline DensityOperator reduced_density(const StateVector& psi,
                                       std::span<const std::size_t> keep) {
  if (keep.empty()) throw LabelError("reduced_density: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const auto split = detail::split_subsystems(psi.layout(), kept);
  const auto m = static_cast<Eigen::Index>(split.target_offsets.size());
  MatrixXcd out = MatrixXcd::Zero(m, m);
  const VectorXcd& a = psi.amplitudes();
  for (auto base : split.rest_offsets) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const cplx ai = a[base + split.target_offsets[i]];
      if (ai == cplx(0.0)) continue;
      for (Eigen::Index j = 0; j < m; ++j) {
        out(i, j) += ai * std::conj(a[base + split.target_offsets[j]]);
      }
    }
  }
  return DensityOperator(psi.layout().select(kept), std::move(out), psi.is_normalized());
}

/// Applies `op` to the listed subsystems (in listed order as the matrix's own
/// big-endian layout), identity elsewhere. With `one_sided` false the operator
/// must be unitary; with `one_sided` true any matrix is accepted and the
/// result is flagged unnormalized.
inline StateVector apply_operator(const MatrixXcd& op, std::span<const std::size_t> targets,
                                  const StateVector& state, bool one_sided = false) {
  const std::size_t m = detail::target_dimension(state.layout(), targets);
  if (static_cast<std::size_t>(op.rows()) != m || op.rows() != op.cols()) {
    throw DimensionError("operator side " + std::to_string(op.rows()) +
                         " does not match target dimension " + std::to_string(m));
  }
  if (!one_sided && !is_unitary(op, 1e-10)) {
    throw PreconditionError("apply_operator: operator is not unitary; use one_sided");
  }
  const auto split = detail::split_subsystems(state.layout(), targets);
  VectorXcd v = state.amplitudes();
  detail::apply_left(op, split, v);
  return StateVector(state.layout(), std::move(v), state.is_normalized() && !one_sided);
}

/// Unitary mode: M rho M^dagger. One-sided mode: M rho (unnormalized).
inline DensityOperator apply_operator(const MatrixXcd& op, std::span<const std::size_t> targets,
                                      const DensityOperator& rho, bool one_sided = false) {
  const std::size_t m = detail::target_dimension(rho.layout(), targets);
  if (static_cast<std::size_t>(op.rows()) != m || op.rows() != op.cols()) {
    throw DimensionError("operator side " + std::to_string(op.rows()) +
                         " does not match target dimension " + std::to_string(m));
  }
  if (!one_sided && !is_unitary(op, 1e-10)) {
    throw PreconditionError("apply_operator: operator is not unitary; use one_sided");
  }
  const auto split = detail::split_subsystems(rho.layout(), targets);
  MatrixXcd left = rho.matrix();
  detail::apply_left(op, split, left);
  if (one_sided) return DensityOperator(rho.layout(), std::move(left), false);
  MatrixXcd right = left.adjoint();
  detail::apply_left(op, split, right);
  MatrixXcd result = right.adjoint();
  return DensityOperator(rho.layout(), std::move(result), rho.is_normalized());
}

template <class State>
State apply_operator(const MatrixXcd& op, std::span<const std::string> targets,
                     const State& state, bool one_sided = false) {
  const auto idx = state.layout().indices_of(targets);
  return apply_operator(op, std::span<const std::size_t>(idx), state, one_sided);
}

template <class State>
State apply_operator(const MatrixXcd& op, std::initializer_list<std::string> targets,
                     const State& state, bool one_sided = false) {
  std::vector<std::string> labels(targets);
  return apply_operator(op, std::span<const std::string>(labels), state, one_sided);
}

/// Born probabilities of every joint outcome of `targets` (listed order,
/// first target most significant).
inline std::vector<double> outcome_probabilities(const StateVector& state,
                                                 std::span<const std::size_t> targets) {
  const auto split = detail::split_subsystems(state.layout(), targets);
  std::vector<double> probs(split.target_offsets.size(), 0.0);
  const VectorXcd& a = state.amplitudes();
  for (std::size_t t = 0; t < probs.size(); ++t) {
    double p = 0.0;
    for (auto base : split.rest_offsets) p += std::norm(a[base + split.target_offsets[t]]);
    probs[t] = p;
  }
  return probs;
}

struct Measurement {
  std::vector<std::size_t> outcome;  // one digit per target, listed order
  StateVector collapsed;             // renormalized, full layout
  double probability = 0.0;          // exact Born probability of `outcome`

  /// Digits concatenated; comma separated when any digit exceeds 9.
  std::string outcome_string() const {
    const bool wide = std::any_of(outcome.begin(), outcome.end(), [](auto d) { return d > 9; });
    std::string s;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
      if (wide && i > 0) s += ',';
      s += std::to_string(outcome[i]);
    }
    return s;
  }
};

inline Measurement measure_subsystems(const StateVector& state,
                                      std::span<const std::size_t> targets, Rng& rng) {
  const auto probs = outcome_probabilities(state, targets);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 0.0)) throw PreconditionError("cannot measure a zero vector");
  const double u = rng.uniform() * total;
  std::size_t pick = probs.size();
  double cum = 0.0;
  for (std::size_t t = 0; t < probs.size(); ++t) {
    if (probs[t] <= 0.0) continue;
    cum += probs[t];
    pick = t;
    if (u < cum) break;
  }
  const auto split = detail::split_subsystems(state.layout(), targets);
  VectorXcd v = VectorXcd::Zero(state.amplitudes().size());
  for (auto base : split.rest_offsets) {
    const auto idx = base + split.target_offsets[pick];
    v[idx] = state.amplitudes()[idx];
  }
  std::vector<std::size_t> digits(targets.size());
  std::size_t rem = pick;
  for (std::size_t k = targets.size(); k-- > 0;) {
    const std::size_t dim = state.layout().dimension(targets[k]);
    digits[k] = rem % dim;
    rem /= dim;
  }
  return {std::move(digits), StateVector::normalize(state.layout(), std::move(v)),
          probs[pick] / total};
}

inline Measurement measure_subsystems(const StateVector& state,
                                      std::span<const std::size_t> targets,
                                      std::uint64_t seed) {
  Rng rng(seed);
  return measure_subsystems(state, targets, rng);
}

inline Measurement measure_subsystems(const StateVector& state,
                                      std::span<const std::string> targets, Rng& rng) {
  const auto idx = state.layout().indices_of(targets);
  return measure_subsystems(state, std::span<const std::size_t>(idx), rng);
}

/// Tr(rho^2).
inline double purity(const DensityOperator& rho) {
  return rho.matrix().cwiseAbs2().sum();
}

/// Born probability that subsystem `which` of a qubit register reads 1.
inline double qubit_one_probability(const StateVector& psi, std::size_t which) {
  const std::size_t target[] = {which};
  return outcome_probabilities(psi, target).at(1);
}

/// Complex Gaussian vector normalized: Haar-random pure state.
inline StateVector random_state(const HilbertLayout& layout, Rng& rng) {
  VectorXcd v(static_cast<Eigen::Index>(layout.total_dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  return StateVector::normalize(layout, std::move(v));
}

/// Haar-random d x d unitary (QR of a Ginibre matrix with phase fix).
inline MatrixXcd haar_unitary(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

/// Random mixed state: Haar eigenbasis with Dirichlet(1,..,1) spectrum.
inline DensityOperator random_density(const HilbertLayout& layout, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(layout.total_dimension());
  Eigen::VectorXd spectrum(n);
  for (Eigen::Index i = 0; i < n; ++i) spectrum[i] = -std::log(1.0 - rng.uniform());
  spectrum /= spectrum.sum();
  const MatrixXcd u = haar_unitary(layout.total_dimension(), rng);
  MatrixXcd rho = u * spectrum.cast<cplx>().asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  return DensityOperator(layout, std::move(rho));
}

}  // namespace symstab
