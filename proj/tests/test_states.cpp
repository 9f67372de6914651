#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aqsl/states.hpp"

namespace {

using aqsl::CMatrix;
using aqsl::Dims;
using aqsl::StateVector;

constexpr std::uint64_t kSeed = 8101;

TEST(BellDiagonal, PureBellState) {
  const auto rho = aqsl::bell_diagonal({1.0, 1.0, -1.0});
  const auto e = aqsl::herm_eig(rho.matrix());
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(e.values[k], 0.0, 1e-14);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
}

TEST(BellDiagonal, MaximallyMixed) {
  const auto rho = aqsl::bell_diagonal({0.0, 0.0, 0.0});
  EXPECT_LT(aqsl::frobenius(rho.matrix() - CMatrix::identity(4) * 0.25), 1e-16);
}

TEST(BellDiagonal, SpectrumOfMixedExample) {
  const aqsl::BellDiagonalParams p{1.0, 0.5, -0.5};
  auto ev = p.eigenvalues();
  std::sort(ev.begin(), ev.end());
  EXPECT_DOUBLE_EQ(ev[0], 0.0);
  EXPECT_DOUBLE_EQ(ev[1], 0.0);
  EXPECT_DOUBLE_EQ(ev[2], 0.25);
  EXPECT_DOUBLE_EQ(ev[3], 0.75);
  const auto e = aqsl::herm_eig(aqsl::bell_diagonal(p).matrix());
  EXPECT_NEAR(e.values[0], 0.75, 1e-14);
  EXPECT_NEAR(e.values[1], 0.25, 1e-14);
}

TEST(BellDiagonal, CoefficientRoundTrip) {
  aqsl::Rng rng(kSeed);
  for (int k = 0; k < 100; ++k) {
    const auto p = aqsl::random_bell_diagonal(rng);
    const auto rho = aqsl::bell_diagonal(p);
    const auto q = aqsl::bell_coefficients(rho);
    EXPECT_NEAR(q.c1, p.c1, 1e-12);
    EXPECT_NEAR(q.c2, p.c2, 1e-12);
    EXPECT_NEAR(q.c3, p.c3, 1e-12);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i != j) {
          EXPECT_NEAR(aqsl::correlation_coefficient(rho, i, j), 0.0, 1e-12);
        }
      }
  }
}

TEST(BellDiagonal, RejectsNonPositive) {
  try {
    aqsl::bell_diagonal({1.0, 1.0, 1.0});
    FAIL() << "expected NotAState";
  } catch (const aqsl::Error& e) {
    EXPECT_EQ(e.kind(), aqsl::ErrorKind::NotAState);
  }
}

TEST(PureState, BellAndProduct) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto phi = aqsl::pure_state(StateVector{1.0, 0.0, 0.0, 1.0}, Dims{2, 2});
  EXPECT_NEAR(std::abs(phi.matrix()(0, 3) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phi.matrix()(0, 0) - s * s), 0.0, 1e-15);
  const auto zz = aqsl::pure_state(StateVector{1.0, 0.0, 0.0, 0.0}, Dims{2, 2});
  EXPECT_LT(aqsl::frobenius(zz.matrix() - CMatrix::diag({1.0, 0.0, 0.0, 0.0})), 1e-16);
}

TEST(PureState, RandomVectorsArePure) {
  aqsl::Rng rng(kSeed + 1);
  for (int k = 0; k < 50; ++k) {
    const auto v = aqsl::random_vector(rng, 6);
    EXPECT_NEAR(aqsl::pure_state(v, Dims{2, 3}).purity(), 1.0, 1e-12);
  }
}

TEST(PureState, ZeroVector) {
  try {
    aqsl::pure_state(StateVector(4, aqsl::cplx{}), Dims{2, 2});
    FAIL() << "expected ZeroVector";
  } catch (const aqsl::Error& e) {
    EXPECT_EQ(e.kind(), aqsl::ErrorKind::ZeroVector);
  }
}

TEST(Schmidt, BellAndProduct) {
  const auto bell = aqsl::schmidt(StateVector{1.0, 0.0, 0.0, 1.0}, Dims{2, 2});
  EXPECT_NEAR(bell.probs[0], 0.5, 1e-14);
  EXPECT_NEAR(bell.probs[1], 0.5, 1e-14);
  const auto prod = aqsl::schmidt(StateVector{1.0, 0.0, 0.0, 0.0}, Dims{2, 2});
  EXPECT_NEAR(prod.probs[0], 1.0, 1e-14);
  EXPECT_NEAR(prod.probs[1], 0.0, 1e-14);
}

TEST(Schmidt, ProductVectorsHaveUnitTopProbability) {
  aqsl::Rng rng(kSeed + 2);
  for (int k = 0; k < 30; ++k) {
    const auto a = aqsl::random_vector(rng, 2);
    const auto b = aqsl::random_vector(rng, 3);
    StateVector v(6);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) v[i * 3 + j] = a[i] * b[j];
    const auto sd = aqsl::schmidt(v, Dims{2, 3});
    EXPECT_NEAR(sd.probs[0], 1.0, 1e-12);
    EXPECT_NEAR(sd.probs[1], 0.0, 1e-12);
  }
}

TEST(Schmidt, ProbabilitiesMatchReducedSpectrumAndReassemble) {
  aqsl::Rng rng(kSeed + 3);
  for (int k = 0; k < 100; ++k) {
    const auto v = aqsl::random_vector(rng, 6);
    const auto sd = aqsl::schmidt(v, Dims{2, 3});
    const auto reduced = aqsl::pure_state(v, Dims{2, 3}).reduced(aqsl::Party::A);
    const auto e = aqsl::herm_eig(reduced.matrix());
    double total = 0.0;
    for (std::size_t i = 0; i < sd.probs.size(); ++i) {
      EXPECT_NEAR(sd.probs[i], e.values[i], 1e-10);
      total += sd.probs[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    const auto w = sd.assemble();
    // Equal up to a global phase: |<v|w>| = 1.
    aqsl::cplx overlap{};
    for (std::size_t i = 0; i < v.size(); ++i) overlap += std::conj(v[i]) * w[i];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-8);
    double dist = 0.0;
    const aqsl::cplx phase = overlap / std::abs(overlap);
    for (std::size_t i = 0; i < v.size(); ++i) dist += std::norm(w[i] - phase * v[i]);
    EXPECT_LT(std::sqrt(dist), 1e-8);
  }
}

TEST(ClassicalQuantum, ProductCase) {
  const auto rho0 = aqsl::random_mixed(std::uint64_t{kSeed + 4}, 2, Dims{2, 1});
  const std::array<double, 2> p{1.0, 0.0};
  const std::array<StateVector, 2> basis{StateVector{1.0, 0.0}, StateVector{0.0, 1.0}};
  const std::array<aqsl::DensityMatrix, 2> sig{rho0, rho0};
  const auto cq = aqsl::classical_quantum(p, basis, sig);
  const CMatrix expect = aqsl::kron(CMatrix::diag({1.0, 0.0}), rho0.matrix());
  EXPECT_LT(aqsl::frobenius(cq.matrix() - expect), 1e-15);
}

TEST(ClassicalQuantum, ClassicallyCorrelated) {
  const std::array<double, 2> p{0.5, 0.5};
  const std::array<StateVector, 2> basis{StateVector{1.0, 0.0}, StateVector{0.0, 1.0}};
  const std::array<aqsl::DensityMatrix, 2> sig{aqsl::DensityMatrix(CMatrix::diag({1.0, 0.0})),
                                               aqsl::DensityMatrix(CMatrix::diag({0.0, 1.0}))};
  const auto cq = aqsl::classical_quantum(p, basis, sig);
  EXPECT_LT(aqsl::frobenius(cq.matrix() - CMatrix::diag({0.5, 0.0, 0.0, 0.5})), 1e-15);
}

TEST(ClassicalQuantum, BadProbabilities) {
  const std::array<StateVector, 2> basis{StateVector{1.0, 0.0}, StateVector{0.0, 1.0}};
  const std::array<aqsl::DensityMatrix, 2> sig{aqsl::DensityMatrix(CMatrix::diag({1.0, 0.0})),
                                               aqsl::DensityMatrix(CMatrix::diag({0.0, 1.0}))};
  for (const auto& p : {std::array<double, 2>{0.6, 0.6}, std::array<double, 2>{1.2, -0.2}}) {
    try {
      aqsl::classical_quantum(p, basis, sig);
      FAIL() << "expected BadProbabilities";
    } catch (const aqsl::Error& e) {
      EXPECT_EQ(e.kind(), aqsl::ErrorKind::BadProbabilities);
    }
  }
}

TEST(RandomGenerators, UnitaryResidual) {
  for (std::size_t dim : {2u, 3u, 4u, 8u}) {
    const CMatrix u = aqsl::random_unitary(std::uint64_t{kSeed + dim}, dim);
    EXPECT_LE(aqsl::frobenius(u.adjoint() * u - CMatrix::identity(dim)), 1e-10);
  }
}

TEST(RandomGenerators, RankOneMixedIsPure) {
  EXPECT_NEAR(aqsl::random_mixed(std::uint64_t{kSeed + 9}, 1).purity(), 1.0, 1e-10);
}

TEST(RandomGenerators, MixedRankBoundsPurity) {
  aqsl::Rng rng(kSeed + 10);
  for (int k = 0; k < 20; ++k) {
    const auto rho = aqsl::random_mixed(rng, 4);
    EXPECT_GE(rho.purity(), 0.25 - 1e-12);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
  }
}

TEST(RandomGenerators, FixedSeedIsBitIdentical) {
  const auto a = aqsl::random_mixed(std::uint64_t{424242}, 3);
  const auto b = aqsl::random_mixed(std::uint64_t{424242}, 3);
  const auto da = a.matrix().data(), db = b.matrix().data();
  ASSERT_EQ(da.size(), db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    EXPECT_EQ(da[i].real(), db[i].real());
    EXPECT_EQ(da[i].imag(), db[i].imag());
  }
  const auto ua = aqsl::random_unitary(std::uint64_t{99}, 4), ub = aqsl::random_unitary(std::uint64_t{99}, 4);
  EXPECT_EQ(aqsl::frobenius(ua - ub), 0.0);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_THROW(aqsl::DensityMatrix(CMatrix::diag({0.5, 0.4, 0.0, 0.0}), Dims{2, 2}), aqsl::Error);
  EXPECT_THROW(aqsl::DensityMatrix(CMatrix::diag({1.2, -0.2, 0.0, 0.0}), Dims{2, 2}), aqsl::Error);
  EXPECT_THROW(aqsl::DensityMatrix(CMatrix::identity(3) * (1.0 / 3.0), Dims{2, 2}), aqsl::Error);
  const CMatrix nonherm{{0.5, 0.1}, {0.0, 0.5}};
  EXPECT_THROW(aqsl::DensityMatrix(nonherm, Dims{2, 1}), aqsl::Error);
}

TEST(DensityMatrix, EveryConstructorOutputIsValid) {
  aqsl::Rng rng(kSeed + 11);
  for (int k = 0; k < 50; ++k) {
    const auto rho = aqsl::random_mixed(rng, 1 + k % 4, Dims{2, 2});
    const auto e = aqsl::herm_eig(rho.matrix());
    EXPECT_GE(e.values.back(), -1e-10);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_LE(aqsl::hermiticity_defect(rho.matrix()), 1e-10);
  }
}

}  // namespace
