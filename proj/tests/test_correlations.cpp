#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "aqsl/correlations.hpp"

namespace {

using aqsl::BellDiagonalParams;
using aqsl::CMatrix;
using aqsl::Dims;
using aqsl::StateVector;

constexpr double kBellDiscord = 0.2928932188134525;  // 1 - 1/sqrt(2)

aqsl::DensityMatrix phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return aqsl::pure_state(StateVector{s, 0.0, 0.0, s}, Dims{2, 2});
}

// T_ii for a Bell-diagonal state from the square roots of its spectrum.
std::array<double, 3> bell_diagonal_t(const BellDiagonalParams& p) {
  constexpr int sg[4][3] = {{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  const std::array<double, 3> c{p.c1, p.c2, p.c3};
  double d0 = 0.0;
  std::array<double, 3> d{};
  for (int k = 0; k < 4; ++k) {
    double lam = 1.0;
    for (int j = 0; j < 3; ++j) lam += sg[k][j] * c[j];
    const double s = std::sqrt(std::max(0.0, lam / 4.0));
    d0 += s;
    for (int j = 0; j < 3; ++j) d[j] += sg[k][j] * s;
  }
  std::array<double, 3> t{};
  for (int i = 0; i < 3; ++i) {
    double others = 0.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) others += d[j] * d[j];
    t[i] = 0.25 * (d0 * d0 + d[i] * d[i] - others);
  }
  return t;
}

// Two-qubit Hilbert-Schmidt discord from the correlation matrix:
// (||x||^2 + ||T||^2 - k_max) / 4 with K = x x^T + T T^T.
double hs_discord_two_qubit(const aqsl::DensityMatrix& rho) {
  std::array<double, 3> x{};
  std::array<std::array<double, 3>, 3> t{};
  for (int i = 0; i < 3; ++i) {
    const CMatrix a = aqsl::kron(aqsl::pauli::by_index(i), CMatrix::identity(2));
    x[i] = aqsl::trace_product(rho.matrix(), a).real();
    for (int j = 0; j < 3; ++j) {
      const CMatrix b = aqsl::kron(aqsl::pauli::by_index(i), aqsl::pauli::by_index(j));
      t[i][j] = aqsl::trace_product(rho.matrix(), b).real();
    }
  }
  CMatrix k(3, 3);
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double v = x[i] * x[j];
      for (int l = 0; l < 3; ++l) v += t[i][l] * t[j][l];
      k(i, j) = v;
    }
    total += k(i, i).real();
  }
  return 0.25 * (total - aqsl::herm_eig(k).values[0]);
}

TEST(AffinityDiscord, BellStateClosedForm) {
  EXPECT_NEAR(aqsl::affinity_discord_closed(phi_plus()).value, kBellDiscord, 1e-9);
}

TEST(AffinityDiscord, BellStateMatchesPureFormula) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto sd = aqsl::schmidt(StateVector{s, 0.0, 0.0, s}, Dims{2, 2});
  EXPECT_NEAR(aqsl::affinity_discord_pure(sd), kBellDiscord, 1e-12);
}

TEST(AffinityDiscord, WernerLikeMixture) {
  // c = (1/2, -1/2, 1/2): spectrum (0, 5/8, 1/8, 1/4) up to ordering.
  const auto rho = aqsl::bell_diagonal({0.5, -0.5, 0.5});
  const auto t = bell_diagonal_t({0.5, -0.5, 0.5});
  const double lmax = *std::max_element(t.begin(), t.end());
  EXPECT_NEAR(aqsl::affinity_discord_closed(rho).value, 1.0 - std::sqrt((1.0 + lmax) / 2.0), 1e-12);
}

TEST(AffinityDiscord, MixedExampleValue) {
  const auto rho = aqsl::bell_diagonal({1.0, 0.5, -0.5});
  const auto d = aqsl::affinity_discord_closed(rho);
  EXPECT_NEAR(d.value, 0.0340741737109317, 1e-12);
  EXPECT_NEAR(d.t_spectrum[0], 0.8660254037844386, 1e-12);
  EXPECT_NEAR(d.t_spectrum[1], 0.0, 1e-12);
  EXPECT_NEAR(d.t_spectrum[2], 0.0, 1e-12);
  EXPECT_NEAR(std::abs(d.optimal_bloch[0]), 1.0, 1e-9);
}

TEST(AffinityDiscord, TMatrixMatchesBellDiagonalFormula) {
  aqsl::Rng rng(9101);
  for (int k = 0; k < 100; ++k) {
    const auto p = aqsl::random_bell_diagonal(rng);
    const auto rho = aqsl::bell_diagonal(p);
    const auto t = aqsl::correlation_t_matrix(aqsl::matrix_sqrt_psd(rho.matrix()), rho.dims());
    const auto expect = bell_diagonal_t(p);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(t[i][i], expect[i], 1e-10);
      for (int j = 0; j < 3; ++j) {
        if (i != j) {
          EXPECT_NEAR(t[i][j], 0.0, 1e-10);
        }
      }
    }
  }
}

TEST(AffinityDiscord, MaximallyMixedIsZero) {
  EXPECT_NEAR(aqsl::affinity_discord_closed(aqsl::bell_diagonal({0.0, 0.0, 0.0})).value, 0.0, 1e-12);
}

TEST(AffinityDiscord, ClassicalCorrelationsAreZero) {
  const auto rho = aqsl::bell_diagonal({0.0, 0.0, 0.7});
  EXPECT_NEAR(aqsl::affinity_discord_closed(rho).value, 0.0, 1e-10);
  EXPECT_NEAR(aqsl::hs_discord(rho), 0.0, 1e-10);
}

TEST(AffinityDiscord, DegenerateTopEigenvalueIsDeterministic) {
  // Phi+ has T = diag(1, 1, 1) up to signs in the degenerate block.
  const auto a = aqsl::affinity_discord_closed(phi_plus());
  const auto b = aqsl::affinity_discord_closed(phi_plus());
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a.optimal_bloch[i], b.optimal_bloch[i]);
  EXPECT_NEAR(aqsl::length(a.optimal_bloch), 1.0, 1e-12);
}

TEST(AffinityDiscord, RejectsQutritPartyA) {
  const aqsl::DensityMatrix rho(CMatrix::identity(6) * (1.0 / 6.0), Dims{3, 2});
  try {
    aqsl::affinity_discord_closed(rho);
    FAIL() << "expected NotQubitPartyA";
  } catch (const aqsl::Error& e) {
    EXPECT_EQ(e.kind(), aqsl::ErrorKind::NotQubitPartyA);
  }
}

TEST(Oracle, AgreesWithClosedFormOnRandomStates) {
  aqsl::Rng rng(9102);
  for (int k = 0; k < 20; ++k) {
    const auto rho = aqsl::random_mixed(rng, 1 + k % 4, Dims{2, 2});
    const double closed = aqsl::affinity_discord_closed(rho).value;
    EXPECT_NEAR(aqsl::affinity_discord_oracle(rho).value, closed, 1e-4);
  }
}

TEST(Oracle, AgreesOnQubitQutritStates) {
  aqsl::Rng rng(9103);
  for (int k = 0; k < 5; ++k) {
    const auto rho = aqsl::random_mixed(rng, 3, Dims{2, 3});
    EXPECT_NEAR(aqsl::affinity_discord_oracle(rho).value, aqsl::affinity_discord_closed(rho).value, 1e-4);
  }
}

TEST(Oracle, FibonacciPointsAreUnitVectors) {
  for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(aqsl::length(aqsl::fibonacci_direction(i, 50)), 1.0, 1e-14);
}

TEST(Oracle, SphereSearchFindsKnownMinimum) {
  const aqsl::Vec3 target{0.36, -0.48, 0.8};
  auto obj = [&](const aqsl::Vec3& r) { return -aqsl::dot(r, target); };
  const auto m = aqsl::minimize_over_sphere(obj);
  EXPECT_NEAR(m.value, -1.0, 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(m.bloch[i], target[i], 1e-5);
}

TEST(MeasuredAffinity, QuadraticFormInBlochVector) {
  aqsl::Rng rng(9104);
  const auto rho = aqsl::random_mixed(rng, 4, Dims{2, 2});
  const CMatrix s = aqsl::matrix_sqrt_psd(rho.matrix());
  const auto t = aqsl::correlation_t_matrix(s, rho.dims());
  for (int k = 0; k < 20; ++k) {
    aqsl::Vec3 r{rng.normal(), rng.normal(), rng.normal()};
    const aqsl::BlochMeasurement m(r);
    const auto& u = m.direction();
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q += u[i] * t[i][j] * u[j];
    EXPECT_NEAR(aqsl::measured_affinity(s, rho.dims(), m), 0.5 * (1.0 + q), 1e-12);
  }
}

TEST(MeasuredAffinity, LiteralAffinityAgreesOnlyWhenStateIsInvariant) {
  // Invariant state: sqrt(Pi(rho)) = Pi(sqrt(rho)), both readings coincide.
  const auto cq = aqsl::bell_diagonal({0.0, 0.0, 0.6});
  const aqsl::BlochMeasurement z({0.0, 0.0, 1.0});
  const CMatrix s = aqsl::matrix_sqrt_psd(cq.matrix());
  EXPECT_NEAR(aqsl::literal_measured_affinity(cq, z), aqsl::measured_affinity(s, cq.dims(), z), 1e-12);
  EXPECT_LT(aqsl::frobenius(aqsl::matrix_sqrt_psd(aqsl::measure_a(cq, z).matrix()) -
                            aqsl::measure_a(s, cq.dims(), z)),
            1e-12);

  // Phi+: Pi(rho) = diag(1/2, 0, 0, 1/2) so the literal affinity is
  // Tr sqrt(rho) sqrt(Pi rho) = 1/sqrt(2), while the measured-root form is 1/2.
  const auto phi = phi_plus();
  const CMatrix sp = aqsl::matrix_sqrt_psd(phi.matrix());
  EXPECT_NEAR(aqsl::literal_measured_affinity(phi, z), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(aqsl::measured_affinity(sp, phi.dims(), z), 0.5, 1e-12);
}

TEST(MeasureA, ProjectorsAndIdempotence) {
  aqsl::Rng rng(9105);
  const aqsl::BlochMeasurement m({0.3, -0.2, 0.9});
  const CMatrix pp = m.projector(+1), pm = m.projector(-1);
  EXPECT_LT(aqsl::frobenius(pp + pm - CMatrix::identity(2)), 1e-15);
  EXPECT_LT(aqsl::frobenius(pp * pp - pp), 1e-15);
  EXPECT_LT(aqsl::frobenius(pp * pm), 1e-15);
  const auto rho = aqsl::random_mixed(rng, 3, Dims{2, 2});
  const auto once = aqsl::measure_a(rho, m);
  const auto twice = aqsl::measure_a(once, m);
  EXPECT_LT(aqsl::frobenius(once.matrix() - twice.matrix()), 1e-14);
  EXPECT_THROW(aqsl::BlochMeasurement({0.0, 0.0, 0.0}), aqsl::Error);
}

TEST(Invariance, LocalUnitaries) {
  aqsl::Rng rng(9106);
  for (int k = 0; k < 20; ++k) {
    const auto rho = aqsl::random_mixed(rng, 1 + k % 4, Dims{2, 2});
    const CMatrix u = aqsl::kron(aqsl::random_unitary(rng, 2), aqsl::random_unitary(rng, 2));
    EXPECT_NEAR(aqsl::affinity_discord_closed(aqsl::conjugate(rho, u)).value,
                aqsl::affinity_discord_closed(rho).value, 1e-8);
  }
}

TEST(Invariance, LocalAncillaVersusHilbertSchmidtScaling) {
  aqsl::Rng rng(9107);
  for (int k = 0; k < 5; ++k) {
    const auto rho = aqsl::random_mixed(rng, 2 + k % 3, Dims{2, 2});
    const auto anc = aqsl::random_mixed(rng, 2, Dims{2, 1});
    const auto big = aqsl::tensor(rho, anc);
    EXPECT_EQ(big.dims().b, 4u);
    EXPECT_NEAR(aqsl::affinity_discord_closed(big).value, aqsl::affinity_discord_closed(rho).value, 1e-7);
    EXPECT_NEAR(aqsl::hs_discord(big), aqsl::hs_discord(rho) * anc.purity(), 1e-5);
  }
}

TEST(Invariance, ZeroOnProductStates) {
  aqsl::Rng rng(9108);
  for (int k = 0; k < 20; ++k) {
    const auto a = aqsl::random_mixed(rng, 2, Dims{2, 1});
    const auto b = aqsl::random_mixed(rng, 1 + k % 3, Dims{3, 1});
    const aqsl::DensityMatrix rho(aqsl::kron(a.matrix(), b.matrix()), Dims{2, 3});
    EXPECT_NEAR(aqsl::affinity_discord_closed(rho).value, 0.0, 1e-7);
  }
}

TEST(Invariance, PureStateFormula) {
  aqsl::Rng rng(9109);
  for (int k = 0; k < 30; ++k) {
    const Dims d{2, 2 + static_cast<std::size_t>(k % 3)};
    const auto v = aqsl::random_vector(rng, d.total());
    EXPECT_NEAR(aqsl::affinity_discord_closed(aqsl::pure_state(v, d)).value,
                aqsl::affinity_discord_pure(aqsl::schmidt(v, d)), 1e-9);
  }
}

TEST(HsDiscord, BellStatesAndMixedExample) {
  EXPECT_NEAR(aqsl::hs_discord(phi_plus()), 0.5, 1e-10);
  EXPECT_NEAR(aqsl::hs_discord(aqsl::bell_diagonal({1.0, 0.5, -0.5})), 0.125, 1e-10);
}

TEST(HsDiscord, MatchesCorrelationMatrixFormula) {
  aqsl::Rng rng(9110);
  for (int k = 0; k < 20; ++k) {
    const auto rho = aqsl::random_mixed(rng, 1 + k % 4, Dims{2, 2});
    EXPECT_NEAR(aqsl::hs_discord(rho), hs_discord_two_qubit(rho), 1e-8);
  }
}

TEST(Concurrence, BellAndProduct) {
  EXPECT_NEAR(aqsl::concurrence(phi_plus()), 1.0, 1e-10);
  EXPECT_NEAR(aqsl::concurrence(aqsl::bell_diagonal({0.0, 0.0, 0.0})), 0.0, 1e-12);
  const auto prod = aqsl::pure_state(StateVector{1.0, 0.0, 0.0, 0.0}, Dims{2, 2});
  EXPECT_NEAR(aqsl::concurrence(prod), 0.0, 1e-10);
}

TEST(Concurrence, BellDiagonalFormula) {
  aqsl::Rng rng(9111);
  for (int k = 0; k < 100; ++k) {
    const auto p = aqsl::random_bell_diagonal(rng);
    const auto ev = p.eigenvalues();
    const double expect = std::max(0.0, 2.0 * *std::max_element(ev.begin(), ev.end()) - 1.0);
    EXPECT_NEAR(aqsl::concurrence(aqsl::bell_diagonal(p)), expect, 1e-10);
  }
}

TEST(Concurrence, PureStateFormula) {
  aqsl::Rng rng(9112);
  for (int k = 0; k < 20; ++k) {
    const auto v = aqsl::random_vector(rng, 4);
    const double expect = 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]);
    EXPECT_NEAR(aqsl::concurrence(aqsl::pure_state(v, Dims{2, 2})), expect, 1e-8);
  }
}

TEST(Concurrence, RejectsLargerSystems) {
  const aqsl::DensityMatrix rho(CMatrix::identity(6) * (1.0 / 6.0), Dims{2, 3});
  try {
    aqsl::concurrence(rho);
    FAIL() << "expected NotTwoQubit";
  } catch (const aqsl::Error& e) {
    EXPECT_EQ(e.kind(), aqsl::ErrorKind::NotTwoQubit);
  }
}

TEST(Report, CollectsAllMeasures) {
  const auto rep = aqsl::correlation_report(aqsl::bell_diagonal({1.0, 0.5, -0.5}));
  EXPECT_NEAR(rep.affinity_discord, 0.0340741737109317, 1e-12);
  EXPECT_NEAR(rep.oracle_discord, rep.affinity_discord, 1e-6);
  EXPECT_NEAR(rep.hs_discord, 0.125, 1e-10);
  ASSERT_TRUE(rep.concurrence.has_value());
  EXPECT_NEAR(*rep.concurrence, 0.5, 1e-10);
}

}  // namespace
