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

#include "symstab/mixed.hpp"

namespace symstab::stabilize {
namespace {

DensityOperator qubit_density(double p0) {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityOperator(HilbertLayout::qubits(1), m);
}

// Reduced P(1) for R copies of diag(p, q): the symmetric block is diagonal
// with weight p^{R-k} q^k on e_k, and e_k carries k/R ones per copy.
double diagonal_oracle_one_probability(double p, std::size_t r) {
  const double q = 1.0 - p;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k <= r; ++k) {
    const double w = std::pow(p, double(r - k)) * std::pow(q, double(k));
    num += w * double(k) / double(r);
    den += w;
  }
  return num / den;
}

TEST(SymmetrizeMixed, ThreeQuarterState) {
  const auto rho = qubit_density(0.75);
  for (auto route : {sym::ProjectorRoute::permutation_sum, sym::ProjectorRoute::basis_outer_product}) {
    const auto out = symmetrize_identical(rho, 2, route);
    ASSERT_TRUE(out.reduced.has_value());
    EXPECT_NEAR(out.reduced->matrix()(0, 0).real(), 21.0 / 26.0, 1e-12);
    EXPECT_NEAR(out.reduced->matrix()(1, 1).real(), 5.0 / 26.0, 1e-12);
    EXPECT_NEAR(purity(*out.reduced), 466.0 / 676.0, 1e-12);
    EXPECT_LE((out.reduced->matrix() - two_copy_closed_form(rho).matrix()).cwiseAbs().maxCoeff(),
              1e-12);
  }
  EXPECT_NEAR(purity(rho), 0.625, 1e-15);
}

TEST(SymmetrizeMixed, ClosedFormAgreesOnRandomStates) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto rho = random_density(HilbertLayout::qubits(1), rng);
    const auto out = symmetrize_identical(rho, 2, sym::ProjectorRoute::permutation_sum);
    EXPECT_LE((out.reduced->matrix() - two_copy_closed_form(rho).matrix()).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(SymmetrizeMixed, PureStateUnchanged) {
  Rng rng(11);
  const auto rho = random_state(HilbertLayout::qubits(1), rng).projector();
  for (std::size_t r = 1; r <= 5; ++r) {
    const auto out = symmetrize_identical(rho, r);
    EXPECT_NEAR(out.accept_probability, 1.0, 1e-12);
    EXPECT_LE((out.reduced->matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SymmetrizeMixed, MaximallyMixedIsFixed) {
  const auto rho = DensityOperator::maximally_mixed(HilbertLayout::qubits(1));
  for (std::size_t r = 1; r <= 5; ++r) {
    const auto out = symmetrize_identical(rho, r);
    EXPECT_NEAR(purity(*out.reduced), 0.5, 1e-12);
  }
}

TEST(SymmetrizeMixed, RoutesAgreeForDistinctCopies) {
  Rng rng(12);
  for (std::size_t r = 2; r <= 5; ++r) {
    std::vector<DensityOperator> rhos;
    for (std::size_t i = 0; i < r; ++i) rhos.push_back(random_density(HilbertLayout::qubits(1), rng));
    const auto a = symmetrize_mixed(rhos, sym::ProjectorRoute::permutation_sum);
    const auto b = symmetrize_mixed(rhos, sym::ProjectorRoute::basis_outer_product);
    EXPECT_NEAR(a.accept_probability, b.accept_probability, 1e-12);
    EXPECT_LE((a.reduced->matrix() - b.reduced->matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SymmetrizeMixed, ProductOfMixedIsNotSymmetric) {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto mixed = random_density(HilbertLayout::qubits(1), rng);
    EXPECT_LT(symmetrize_identical(mixed, 2).accept_probability, 1.0 - 1e-10);
    const auto pure = random_state(HilbertLayout::qubits(1), rng).projector();
    EXPECT_NEAR(symmetrize_identical(pure, 2).accept_probability, 1.0, 1e-12);
  }
}

TEST(SymmetrizeMixed, ZeroAcceptIsAbsent) {
  // Product states always overlap SYM, so exercise the cutoff on the raw path.
  const std::vector<MatrixXcd> zero(2, MatrixXcd::Zero(2, 2));
  const auto raw = detail::symmetrize_raw(zero, sym::ProjectorRoute::basis_outer_product);
  EXPECT_EQ(raw.accept_probability, 0.0);
}

TEST(SymmetrizeMixed, Budget) {
  const auto rho = qubit_density(0.9);
  EXPECT_THROW(symmetrize_identical(rho, 11), SizeBudgetError);
}

TEST(Purity, NeverDecreases) {
  Rng rng(14);
  for (int i = 0; i < 40; ++i) {
    const auto rho = random_density(HilbertLayout::qubits(1), rng);
    for (std::size_t r = 2; r <= 5; ++r) {
      EXPECT_GE(purity(*symmetrize_identical(rho, r).reduced), purity(rho) - 1e-12);
    }
  }
}

TEST(PurificationLimit, DiagonalOracle) {
  const auto rho = qubit_density(0.75);
  const std::size_t rs[] = {1, 2, 3, 4, 5, 6};
  const auto curve = purification_limit(rho, rs);
  ASSERT_EQ(curve.size(), 6u);
  EXPECT_NEAR(curve[1].fidelity, 21.0 / 26.0, 1e-12);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_NEAR(curve[i].fidelity, 1.0 - diagonal_oracle_one_probability(0.75, rs[i]), 1e-12);
    if (i > 0) {
      EXPECT_GE(curve[i].fidelity, curve[i - 1].fidelity - 1e-10);
      EXPECT_GE(curve[i].purity, curve[i - 1].purity - 1e-10);
    }
  }
  EXPECT_GT(curve.back().fidelity, 0.9);
}

TEST(PurificationLimit, PureAndMaximallyMixed) {
  Rng rng(15);
  const std::size_t rs[] = {1, 2, 3, 4, 5};
  const auto pure = random_state(HilbertLayout::qubits(1), rng).projector();
  for (const auto& pt : purification_limit(pure, rs)) EXPECT_NEAR(pt.fidelity, 1.0, 1e-12);
  const auto mm = DensityOperator::maximally_mixed(HilbertLayout::qubits(1));
  for (const auto& pt : purification_limit(mm, rs)) {
    EXPECT_NEAR(pt.purity, 0.5, 1e-12);
    EXPECT_NEAR(pt.fidelity, 1.0, 1e-12);  // full eigenspace projector is I
  }
}

TEST(PurificationLimit, OffDiagonalStateTracksDominantEigenvector) {
  Rng rng(16);
  const auto rho = random_density(HilbertLayout::qubits(1), rng);
  const std::size_t rs[] = {1, 2, 4, 6, 8};
  const auto curve = purification_limit(rho, rs);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_GE(curve[i].fidelity, curve[i - 1].fidelity - 1e-10);
  }
}

TEST(Perturbations, ShapesAreValid) {
  for (auto kind : {GeneratorKind::random_traceless, GeneratorKind::dephasing,
                    GeneratorKind::amplitude_bias}) {
    DecoherenceModel m{0.3, 5, 4, kind};
    Rng rng(17);
    const auto s = sample_perturbation_shapes(m, rng);
    ASSERT_EQ(s.shapes.size(), 4u);
    for (const auto& shape : s.shapes) {
      EXPECT_TRUE(is_hermitian(shape));
      EXPECT_NEAR(std::abs(shape.trace()), 0.0, 1e-15);
      EXPECT_TRUE(is_valid_perturbation(shape, m.strength));
    }
  }
}

TEST(Perturbations, RejectionsCounted) {
  DecoherenceModel m{0.04, 1, 50, GeneratorKind::random_traceless};
  Rng rng(18);
  const auto s = sample_perturbation_shapes(m, rng);
  EXPECT_GT(s.rejections, 0u);
  DecoherenceModel d{0.04, 1, 50, GeneratorKind::dephasing};
  Rng rng2(18);
  EXPECT_EQ(sample_perturbation_shapes(d, rng2).rejections, 0u);
}

TEST(Perturbations, StrengthLimits) {
  EXPECT_THROW((DecoherenceModel{0.6, 0, 2, GeneratorKind::amplitude_bias}.validate()),
               PreconditionError);
  EXPECT_THROW((DecoherenceModel{-0.1, 0, 2, GeneratorKind::dephasing}.validate()),
               PreconditionError);
  EXPECT_EQ(generator_from_name("dephasing"), GeneratorKind::dephasing);
  EXPECT_THROW(generator_from_name("bitflip"), PreconditionError);
}

TEST(Decoherence, ZeroPerturbationIsPerfect) {
  for (auto kind : {GeneratorKind::random_traceless, GeneratorKind::dephasing}) {
    const auto rep = run_decoherence_experiment({0.0, 3, 3, kind}, 2);
    EXPECT_DOUBLE_EQ(rep.pre_fidelity, 1.0);
    EXPECT_NEAR(rep.post_fidelity, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(rep.pre_purity, 1.0);
    EXPECT_NEAR(rep.post_purity, 1.0, 1e-15);
  }
}

TEST(Decoherence, DephasingErrorDividedByR) {
  const auto rep = run_decoherence_experiment({0.01, 21, 3, GeneratorKind::dephasing}, 10);
  EXPECT_NEAR(rep.post_error, rep.pre_error / 3.0, 5.0 * 0.01 * 0.01);
  EXPECT_LT(rep.post_error, rep.pre_error);
}

TEST(Decoherence, PreFidelityLawIsExact) {
  const auto rep = run_decoherence_experiment({0.04, 22, 3, GeneratorKind::random_traceless}, 5);
  EXPECT_LE(rep.residual_full.pre_fidelity, 1e-15);
}

TEST(Decoherence, ResidualsAreSecondOrder) {
  for (auto kind : {GeneratorKind::random_traceless, GeneratorKind::dephasing,
                    GeneratorKind::amplitude_bias}) {
    for (std::size_t r = 2; r <= 4; ++r) {
      const auto rep = run_decoherence_experiment({0.04, 23 + r, r, kind}, 20);
      for (double f : {rep.post_fidelity_shrink(), rep.pre_purity_shrink(),
                       rep.post_purity_shrink()}) {
        EXPECT_GE(f, 3.0) << generator_name(kind) << " R=" << r;
        EXPECT_LE(f, 5.0) << generator_name(kind) << " R=" << r;
      }
    }
  }
}

TEST(Decoherence, PurerAfterSymmetrisation) {
  const auto rep = run_decoherence_experiment({0.04, 30, 4, GeneratorKind::random_traceless}, 10);
  EXPECT_GT(rep.post_purity, rep.pre_purity);
  EXPECT_GT(rep.post_fidelity, rep.pre_fidelity);
}

TEST(FirstOrder, TraceIdentity) {
  for (std::size_t r = 2; r <= 5; ++r) {
    DecoherenceModel m{0.04, 40 + r, r, GeneratorKind::random_traceless};
    Rng rng(m.rng_seed);
    const auto s = sample_perturbation_shapes(m, rng);
    const auto c = first_order_coefficients(s.shapes);
    EXPECT_NEAR(c.sum(), 1.0, 1e-6) << "R=" << r;
    EXPECT_LE(c.population_mismatch, 1e-6);
    if (r == 2) {
      EXPECT_NEAR(c.b, 0.5, 1e-6);
      EXPECT_NEAR(c.a_plus_c, 0.0, 1e-6);
    }
  }
}

TEST(FirstOrder, CoefficientsDependOnlyOnR) {
  for (std::size_t r = 2; r <= 4; ++r) {
    std::vector<double> bs;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      DecoherenceModel m{0.04, seed, r, GeneratorKind::random_traceless};
      Rng rng(seed);
      bs.push_back(first_order_coefficients(sample_perturbation_shapes(m, rng).shapes).b);
    }
    for (double b : bs) EXPECT_NEAR(b, bs.front(), 1e-6);
  }
}

}  // namespace
}  // namespace symstab::stabilize
