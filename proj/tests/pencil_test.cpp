#include <gtest/gtest.h>

#include "descsys/pencil.hpp"
#include "test_support.hpp"

namespace descsys {
namespace {

using namespace descsys::testing;

TEST(IsRegular, Examples) {
  EXPECT_TRUE(is_regular(RMatrix::identity(3), RMatrix::zero(3, 3)));
  EXPECT_FALSE(is_regular(RMatrix::zero(2, 2), RMatrix::zero(2, 2)));
  const auto sys = example41_as_printed();
  EXPECT_TRUE(is_regular(sys.F(), sys.G()));
  EXPECT_THROW(is_regular(RMatrix::identity(2), RMatrix::identity(3)), DimensionMismatch);
}

TEST(IsRegular, PencilWithVanishingDeterminantAtSamplePointsOnlyIsRegular) {
  // det(sF - G) = s(s-1) vanishes at two of the three sample points.
  EXPECT_TRUE(is_regular(RMatrix::identity(2), RMatrix{{0, 0}, {0, 1}}));
}

TEST(DetDegree, WorkedExamples) {
  // As printed: det = -(s-1)^3.
  const auto printed = example41_as_printed();
  EXPECT_EQ(det_degree(printed.F(), printed.G()), 3u);
  const Poly oracle = cofactor_pencil_det(printed.F(), printed.G());
  EXPECT_EQ(poly_degree(oracle), 3);
  EXPECT_EQ(pencil_determinant_coefficients(printed.F(), printed.G()),
            (RMatrix{{1}, {-3}, {3}, {-1}, {0}}));

  const auto corrected = example41();
  EXPECT_EQ(det_degree(corrected.F(), corrected.G()), 2u);
  EXPECT_EQ(det_degree(RMatrix::zero(2, 2), RMatrix::zero(2, 2)), std::nullopt);
}

TEST(WongSequences, InvertibleFHasNoFastPart) {
  const auto w = wong_sequences(RMatrix::identity(3), RMatrix{{1, 2, 3}, {0, 1, 0}, {4, 0, 1}});
  EXPECT_EQ(w.slow, Subspace::full(3));
  EXPECT_EQ(w.fast, Subspace::trivial(3));
}

TEST(WongSequences, PureFastSystem) {
  const auto w = wong_sequences(RMatrix{{0, 1}, {0, 0}}, RMatrix::identity(2));
  EXPECT_EQ(w.slow, Subspace::trivial(2));
  EXPECT_EQ(w.fast, Subspace::full(2));
}

TEST(WongSequences, Example41AsPrinted) {
  const auto sys = example41_as_printed();
  const auto w = wong_sequences(sys.F(), sys.G());
  EXPECT_EQ(w.slow.dim(), 3u);
  EXPECT_EQ(w.fast.dim(), 1u);
  EXPECT_TRUE(direct_sum_check(w.slow, w.fast));
}

TEST(WongSequences, IrregularPencilThrows) {
  EXPECT_THROW(wong_sequences(RMatrix::zero(2, 2), RMatrix::zero(2, 2)), IrregularPencil);
  EXPECT_THROW(decompose(DescriptorSystem(RMatrix{{1, 0}, {0, 0}}, RMatrix{{1, 0}, {0, 0}},
                                          RMatrix{{1}, {1}})),
               IrregularPencil);
}

TEST(Decompose, AlreadyCanonicalSystem) {
  const auto sys = example41();
  const auto dec = decompose(sys);
  EXPECT_TRUE(check_decomposition(sys, dec).all());
  EXPECT_EQ(dec.slow_dim, 2u);
  EXPECT_EQ(dec.fast_dim, 2u);
  EXPECT_EQ(dec.nilpotency_index, 2u);
  EXPECT_EQ(dec.slow_dynamics, (RMatrix{{1, 1}, {0, 1}}));
  EXPECT_EQ(dec.fast_nilpotent, (RMatrix{{0, 1}, {0, 0}}));
  EXPECT_EQ(dec.slow_input, (RMatrix{{0}, {1}}));
  EXPECT_EQ(dec.fast_input, (RMatrix{{1}, {-1}}));
}

TEST(Decompose, Example41AsPrinted) {
  const auto sys = example41_as_printed();
  const auto dec = decompose(sys);
  EXPECT_TRUE(check_decomposition(sys, dec).all());
  EXPECT_EQ(dec.slow_dim, 3u);
  EXPECT_EQ(dec.fast_dim, 1u);
  EXPECT_EQ(dec.fast_nilpotent, (RMatrix{{0}}));
  EXPECT_EQ(dec.nilpotency_index, 1u);
}

TEST(Decompose, Example51) {
  const auto sys = example51();
  const auto dec = decompose(sys);
  EXPECT_TRUE(check_decomposition(sys, dec).all());
  EXPECT_EQ(dec.slow_dim, 2u);
  EXPECT_EQ(dec.fast_dim, 1u);
  EXPECT_EQ(dec.nilpotency_index, 1u);
  // Similar to diag(2, 1): same trace and determinant, and A - 2I, A - I
  // each drop rank by one.
  const RMatrix& A = dec.slow_dynamics;
  EXPECT_EQ(A(0, 0) + A(1, 1), Rational(3));
  EXPECT_EQ(determinant(A), Rational(2));
  EXPECT_EQ(rank(A - 2 * RMatrix::identity(2)), 1u);
  EXPECT_EQ(dec.fast_nilpotent, (RMatrix{{0}}));
  EXPECT_EQ(dec.fast_input, (RMatrix{{0}}));
  EXPECT_EQ(dec.slow_input, (RMatrix{{1}, {1}}));
}

TEST(Decompose, EmptyBlocks) {
  const DescriptorSystem slow_only(RMatrix::identity(2), RMatrix{{0, 1}, {-1, 0}}, RMatrix{{0}, {1}});
  const auto a = decompose(slow_only);
  EXPECT_EQ(a.fast_dim, 0u);
  EXPECT_EQ(a.nilpotency_index, 0u);
  EXPECT_EQ(a.fast_input.rows(), 0u);

  const DescriptorSystem fast_only(RMatrix{{0, 1}, {0, 0}}, RMatrix::identity(2), RMatrix{{1}, {0}});
  const auto b = decompose(fast_only);
  EXPECT_EQ(b.slow_dim, 0u);
  EXPECT_EQ(b.nilpotency_index, 2u);
  EXPECT_TRUE(check_decomposition(fast_only, b).all());
}

TEST(NilpotencyIndex, Examples) {
  EXPECT_EQ(nilpotency_index(RMatrix{{0, 1}, {0, 0}}), 2u);
  EXPECT_EQ(nilpotency_index(RMatrix::zero(3, 3)), 1u);
  EXPECT_EQ(nilpotency_index(RMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), 3u);
  EXPECT_EQ(nilpotency_index(RMatrix(0, 0)), 0u);
  EXPECT_THROW(nilpotency_index(RMatrix{{0, 1}, {1, 0}}), NotNilpotent);
}

// --- Properties ---------------------------------------------------------------

TEST(PencilProperties, RecoversGeneratedStructure) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = static_cast<std::size_t>(uniform(rng, 0, 4));
    const auto q = static_cast<std::size_t>(uniform(rng, p == 0 ? 1 : 0, 4));
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 2));
    const auto gen = random_regular_pencil(rng, p, q, r);
    const auto dec = decompose(gen.system);
    EXPECT_EQ(dec.slow_dim, p);
    EXPECT_EQ(dec.fast_dim, q);
    EXPECT_EQ(dec.nilpotency_index, gen.nilpotency_index);
    EXPECT_TRUE(check_decomposition(gen.system, dec).all());
    EXPECT_EQ(det_degree(gen.system.F(), gen.system.G()), p);
  }
}

TEST(PencilProperties, RegularityAgreesWithCofactorOracle) {
  Rng rng(22);
  int singular_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto m = static_cast<std::size_t>(uniform(rng, 1, 5));
    RMatrix F = random_matrix(rng, m, m, -2, 2);
    RMatrix G = random_matrix(rng, m, m, -2, 2);
    if (trial % 3 == 0) {
      // Shared kernel vector e_0 forces det(sF - G) == 0.
      for (std::size_t i = 0; i < m; ++i) F(i, 0) = G(i, 0) = 0;
    } else if (trial % 3 == 1) {
      for (std::size_t j = 0; j < m; ++j) F(m - 1, j) = 0;
    }
    const Poly oracle = cofactor_pencil_det(F, G);
    const bool oracle_regular = poly_degree(oracle) >= 0;
    singular_seen += oracle_regular ? 0 : 1;
    EXPECT_EQ(is_regular(F, G), oracle_regular);
    const auto degree = det_degree(F, G);
    if (oracle_regular) {
      EXPECT_EQ(degree, static_cast<std::size_t>(poly_degree(oracle)));
    } else {
      EXPECT_EQ(degree, std::nullopt);
    }
  }
  EXPECT_GT(singular_seen, 0);
}

TEST(PencilProperties, InvariantUnderStrictEquivalence) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto gen = random_regular_pencil(rng, 2, 3, 1);
    const RMatrix L = random_invertible(rng, 5);
    const RMatrix R = random_invertible(rng, 5);
    const DescriptorSystem moved(L * gen.system.F() * R, L * gen.system.G() * R, L * gen.system.B());
    const auto a = decompose(gen.system);
    const auto b = decompose(moved);
    EXPECT_EQ(a.slow_dim, b.slow_dim);
    EXPECT_EQ(a.fast_dim, b.fast_dim);
    EXPECT_EQ(a.nilpotency_index, b.nilpotency_index);
  }
}

}  // namespace
}  // namespace descsys
