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

// Symmetric subspace of R copies of a d-level system: dimension, orthonormal
// basis indexed by multisets, the symmetrisation projector, and projection of
// pure states.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symstab/tensor.hpp"

namespace symstab::sym {

using Multiset = std::vector<std::size_t>;

/// Largest d^R for which the permutation-sum projector is built by default.
inline constexpr std::size_t kPermutationSumThreshold = std::size_t{1} << 8;
/// Largest R for which R! permutation matrices are enumerated.
inline constexpr std::size_t kMaxPermutationCopies = 8;

/// C(R + d - 1, d - 1), exact.
inline std::uint64_t symmetric_dimension(std::uint64_t copies, std::uint64_t local_dim) {
  if (copies < 1 || local_dim < 1) {
    throw PreconditionError("symmetric_dimension requires R >= 1 and d >= 1");
  }
  // Invariant: after step i, result == C(copies + i, i).
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i < local_dim; ++i) {
    result = result * (copies + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("symmetric dimension C(" + std::to_string(copies + local_dim - 1) +
                          ", " + std::to_string(local_dim - 1) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

inline std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / i) {
      throw OverflowError(std::to_string(n) + "! overflows 64 bits");
    }
    out *= i;
  }
  return out;
}

/// All size-R multisets over {0..d-1} as non-decreasing digit strings, in
/// lexicographic order.
inline std::vector<Multiset> enumerate_multisets(std::size_t copies, std::size_t local_dim) {
  std::vector<Multiset> out;
  if (copies == 0 || local_dim == 0) return out;
  Multiset m(copies, 0);
  while (true) {
    out.push_back(m);
    // Rightmost position that can still be incremented.
    std::size_t pos = copies;
    while (pos > 0 && m[pos - 1] == local_dim - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = m[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < copies; ++i) m[i] = v;
  }
  return out;
}

/// Permutations of {0..n-1} in lexicographic order of one-line notation.
inline std::vector<std::vector<std::size_t>> permutations_lex(std::size_t n) {
  if (n > kMaxPermutationCopies + 2) {
    throw SizeBudgetError("refusing to enumerate " + std::to_string(n) + "! permutations");
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Layout of R copies of a d-level system, labelled c1..cR.
inline HilbertLayout copies_layout(std::size_t copies, std::size_t local_dim) {
  return HilbertLayout::uniform(copies, local_dim, "c");
}

/// Basis index of |x_{perm[0]} x_{perm[1]} ... > given the digits x.
inline std::size_t permuted_index(std::span<const std::size_t> digits,
                                  std::span<const std::size_t> perm, std::size_t local_dim) {
  std::size_t idx = 0;
  for (auto p : perm) idx = idx * local_dim + digits[p];
  return idx;
}

/// P_sigma |x_1 ... x_R> = |x_{sigma(1)} ... x_{sigma(R)}>, as a dense matrix.
inline MatrixXcd permutation_operator(std::span<const std::size_t> perm, std::size_t local_dim) {
  const HilbertLayout layout = copies_layout(perm.size(), local_dim);
  const auto n = static_cast<Eigen::Index>(layout.total_dimension());
  if (layout.total_dimension() > kMaxOperatorDimension) {
    throw SizeBudgetError("permutation operator exceeds dense budget");
  }
  MatrixXcd p = MatrixXcd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    const auto digits = layout.digits(static_cast<std::size_t>(x));
    p(static_cast<Eigen::Index>(permuted_index(digits, perm, local_dim)), x) = 1.0;
  }
  return p;
}

/// Orthonormal basis of SYM. Column k of `vectors` is the equal-amplitude
/// superposition of all distinct arrangements of basis_index[k], scaled by
/// 1/sqrt(multinomial count).
struct SymBasis {
  std::size_t copies = 0;
  std::size_t local_dimension = 0;
  std::vector<Multiset> basis_index;
  MatrixXcd vectors;

  std::size_t size() const { return basis_index.size(); }
  HilbertLayout layout() const { return copies_layout(copies, local_dimension); }
  StateVector vector(std::size_t k) const { return StateVector(layout(), vectors.col(k)); }
  /// Coordinates of psi in this basis (projection coefficients).
  VectorXcd coefficients(const VectorXcd& psi) const { return vectors.adjoint() * psi; }
};

inline SymBasis build_symmetric_basis(std::size_t copies, std::size_t local_dim) {
  if (copies < 1 || local_dim < 1) throw PreconditionError("R and d must be positive");
  const HilbertLayout layout = copies_layout(copies, local_dim);  // enforces the state budget
  SymBasis basis;
  basis.copies = copies;
  basis.local_dimension = local_dim;
  basis.basis_index = enumerate_multisets(copies, local_dim);
  const auto n = static_cast<Eigen::Index>(layout.total_dimension());
  basis.vectors = MatrixXcd::Zero(n, static_cast<Eigen::Index>(basis.basis_index.size()));
  for (std::size_t k = 0; k < basis.basis_index.size(); ++k) {
    Multiset arrangement = basis.basis_index[k];
    std::vector<std::size_t> support;
    do {
      support.push_back(layout.index(arrangement));
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (auto idx : support) {
      basis.vectors(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(k)) = amp;
    }
  }
  return basis;
}

enum class ProjectorRoute { automatic, permutation_sum, basis_outer_product };

/// Orthogonal projector S onto SYM.
struct SymProjector {
  std::size_t copies = 0;
  std::size_t local_dimension = 0;
  MatrixXcd matrix;

  /// Tr S, which equals the rank of an orthogonal projector.
  double rank() const { return matrix.trace().real(); }
};

/// S = (1/R!) sum_alpha P_alpha.
inline MatrixXcd projector_from_permutations(std::size_t copies, std::size_t local_dim) {
  if (copies > kMaxPermutationCopies) {
    throw SizeBudgetError("permutation-sum projector limited to R <= " +
                          std::to_string(kMaxPermutationCopies));
  }
  const HilbertLayout layout = copies_layout(copies, local_dim);
  if (layout.total_dimension() > kMaxOperatorDimension) {
    throw SizeBudgetError("projector side exceeds dense budget");
  }
  const auto n = static_cast<Eigen::Index>(layout.total_dimension());
  const auto perms = permutations_lex(copies);
  const double w = 1.0 / static_cast<double>(perms.size());
  MatrixXcd s = MatrixXcd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    const auto digits = layout.digits(static_cast<std::size_t>(x));
    for (const auto& p : perms) {
      s(static_cast<Eigen::Index>(permuted_index(digits, p, local_dim)), x) += w;
    }
  }
  return s;
}

/// S = sum_k |e_k><e_k|.
inline MatrixXcd projector_from_basis(const SymBasis& basis) {
  if (basis.vectors.rows() > static_cast<Eigen::Index>(kMaxOperatorDimension)) {
    throw SizeBudgetError("projector side exceeds dense budget");
  }
  return basis.vectors * basis.vectors.adjoint();
}

inline SymProjector build_projector(std::size_t copies, std::size_t local_dim,
                                    ProjectorRoute route = ProjectorRoute::automatic) {
  if (copies < 1 || local_dim < 1) throw PreconditionError("R and d must be positive");
  const HilbertLayout layout = copies_layout(copies, local_dim);
  if (route == ProjectorRoute::automatic) {
    route = (layout.total_dimension() <= kPermutationSumThreshold &&
             copies <= kMaxPermutationCopies)
                ? ProjectorRoute::permutation_sum
                : ProjectorRoute::basis_outer_product;
  }
  SymProjector p{copies, local_dim, {}};
  p.matrix = route == ProjectorRoute::permutation_sum
                 ? projector_from_permutations(copies, local_dim)
                 : projector_from_basis(build_symmetric_basis(copies, local_dim));
  return p;
}

struct PureProjection {
  std::optional<StateVector> projected;  // absent when ||S psi|| is below zero_norm
  double success_probability = 0.0;      // ||S psi||^2
};

/// Projects onto SYM using the supplied basis: S psi = B B^dagger psi.
inline PureProjection project_pure(const StateVector& state, const SymBasis& basis,
                                   const NumericPolicy& policy = kDefaultPolicy) {
  if (static_cast<std::size_t>(basis.vectors.rows()) != state.dimension() ||
      state.layout().size() != basis.copies || !state.layout().is_uniform() ||
      state.layout().dimension(0) != basis.local_dimension) {
    throw DimensionError("state layout does not match symmetric basis (R=" +
                         std::to_string(basis.copies) +
                         ", d=" + std::to_string(basis.local_dimension) + ")");
  }
  const VectorXcd coeffs = basis.coefficients(state.amplitudes());
  const double norm = coeffs.norm();
  PureProjection out;
  if (norm < policy.zero_norm) return out;
  out.success_probability = norm * norm;
  out.projected = StateVector::normalize(state.layout(), basis.vectors * coeffs, policy);
  return out;
}

/// Infers R and d from the layout (R subsystems of equal dimension d).
inline PureProjection project_pure(const StateVector& state,
                                   const NumericPolicy& policy = kDefaultPolicy) {
  const auto& layout = state.layout();
  if (layout.size() == 0 || !layout.is_uniform()) {
    throw DimensionError("project_pure needs R subsystems of equal dimension");
  }
  return project_pure(state, build_symmetric_basis(layout.size(), layout.dimension(0)), policy);
}

/// Probability that one qubit of sum_k alpha_k |e_k> reads 1: (1/R) sum_k |alpha_k|^2 k.
inline double single_qubit_one_probability(std::span<const cplx> coeffs, std::size_t copies,
                                           const NumericPolicy& policy = kDefaultPolicy) {
  if (coeffs.size() != copies + 1) {
    throw DimensionError("expected R+1 = " + std::to_string(copies + 1) + " coefficients");
  }
  double norm = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    norm += std::norm(coeffs[k]);
    weighted += std::norm(coeffs[k]) * static_cast<double>(k);
  }
  if (std::abs(norm - 1.0) > policy.algebraic_tol) {
    throw PreconditionError("coefficients are not normalized");
  }
  return weighted / static_cast<double>(copies);
}

inline double single_qubit_one_probability(const VectorXcd& coeffs, std::size_t copies,
                                           const NumericPolicy& policy = kDefaultPolicy) {
  return single_qubit_one_probability(
      std::span<const cplx>(coeffs.data(), static_cast<std::size_t>(coeffs.size())), copies,
      policy);
}

}  // namespace symstab::sym
