#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aqsl/error.hpp"
#include "aqsl/linalg.hpp"
#include "aqsl/rng.hpp"

namespace aqsl {

inline constexpr double kStateTol = 1e-10;

/// Positive, unit-trace, Hermitian operator on H_a (x) H_b. Party a is the
/// left tensor factor.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix mat, Dims dims, double tol = kStateTol) : mat_(std::move(mat)), dims_(dims) {
    if (!mat_.is_square() || mat_.rows() != dims_.total()) {
      throw Error(ErrorKind::DimensionMismatch, "density matrix side must equal da*db");
    }
    if (hermiticity_defect(mat_) > tol) throw Error(ErrorKind::NotAState, "not Hermitian");
    const cplx tr = mat_.trace();
    if (std::abs(tr - 1.0) > tol) {
      throw Error(ErrorKind::NotAState, "trace " + std::to_string(tr.real()) + " != 1");
    }
    const double min_eig = herm_eig(mat_).values.back();
    if (min_eig < -tol) {
      throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(min_eig));
    }
  }

  /// Single-party state (db = 1).
  explicit DensityMatrix(CMatrix mat) : DensityMatrix(mat, Dims{mat.rows(), 1}) {}

  const CMatrix& matrix() const noexcept { return mat_; }
  Dims dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dims_.total(); }

  double purity() const { return trace_product(mat_, mat_).real(); }

  DensityMatrix reduced(Party keep) const {
    CMatrix r = partial_trace(mat_, dims_, keep);
    const std::size_t d = r.rows();
    return DensityMatrix(std::move(r), Dims{d, 1});
  }

 private:
  CMatrix mat_;
  Dims dims_;
};

/// rho (x) sigma with sigma attached to party b: result dims (da, db * dim(sigma)).
inline DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return DensityMatrix(kron(rho.matrix(), sigma.matrix()), Dims{rho.dims().a, rho.dims().b * sigma.dim()});
}

/// Conjugation by a unitary, keeping the party structure.
inline DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& u) {
  CMatrix m = u * rho.matrix() * u.adjoint();
  m = (m + m.adjoint()) * 0.5;
  return DensityMatrix(std::move(m), rho.dims());
}

// ---------------------------------------------------------------------------
// Bell-diagonal states

/// Coefficients c_j = <sigma_j (x) sigma_j> of a Bell-diagonal two-qubit state.
struct BellDiagonalParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  /// The four Bell-basis eigenvalues, ordered as (Psi-, Psi+, Phi-, Phi+) up
  /// to the sign convention of each c_j.
  std::array<double, 4> eigenvalues() const {
    return {(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0};
  }

  bool is_state(double tol = 1e-12) const {
    if (std::abs(c1) > 1.0 + tol || std::abs(c2) > 1.0 + tol || std::abs(c3) > 1.0 + tol) return false;
    for (double l : eigenvalues())
      if (l < -tol) return false;
    return true;
  }

  friend bool operator==(const BellDiagonalParams&, const BellDiagonalParams&) = default;
};

inline DensityMatrix bell_diagonal(const BellDiagonalParams& p) {
  if (!p.is_state()) {
    throw Error(ErrorKind::NotAState, "Bell-diagonal coefficients violate positivity");
  }
  const std::array<double, 3> c{p.c1, p.c2, p.c3};
  CMatrix m = CMatrix::identity(4);
  for (int j = 0; j < 3; ++j) m += c[j] * kron(pauli::by_index(j), pauli::by_index(j));
  return DensityMatrix(m * 0.25, Dims{2, 2});
}

/// Tr(rho sigma_i (x) sigma_j) for i, j in {0, 1, 2}.
inline double correlation_coefficient(const DensityMatrix& rho, int i, int j) {
  return trace_product(rho.matrix(), kron(pauli::by_index(i), pauli::by_index(j))).real();
}

inline BellDiagonalParams bell_coefficients(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw Error(ErrorKind::NotTwoQubit, "expected a two-qubit state");
  return {correlation_coefficient(rho, 0, 0), correlation_coefficient(rho, 1, 1),
          correlation_coefficient(rho, 2, 2)};
}

// ---------------------------------------------------------------------------
// Pure states and Schmidt decomposition

using StateVector = std::vector<cplx>;

inline double vector_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline DensityMatrix pure_state(std::span<const cplx> amplitudes, Dims dims) {
  if (amplitudes.size() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count must equal da*db");
  }
  const double nrm = vector_norm(amplitudes);
  if (nrm <= 0.0) throw Error(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  const std::size_t n = amplitudes.size();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / (nrm * nrm);
  return DensityMatrix(std::move(m), dims);
}

/// |Psi> = sum_k sqrt(probs[k]) |left_k> (x) |right_k>, probs descending and
/// summing to one.
struct SchmidtDecomposition {
  std::vector<double> probs;
  std::vector<StateVector> left;
  std::vector<StateVector> right;

  StateVector assemble() const {
    const std::size_t da = left.empty() ? 0 : left.front().size();
    const std::size_t db = right.empty() ? 0 : right.front().size();
    StateVector psi(da * db, cplx{});
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const double amp = std::sqrt(probs[k]);
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) psi[i * db + j] += amp * left[k][i] * right[k][j];
    }
    return psi;
  }
};

inline SchmidtDecomposition schmidt(std::span<const cplx> psi_in, Dims dims) {
  if (psi_in.size() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length must equal da*db");
  }
  const double nrm = vector_norm(psi_in);
  if (nrm <= 0.0) throw Error(ErrorKind::ZeroVector, "cannot decompose the zero vector");

  // Psi as a da x db coefficient matrix M; reduced state rho_a = M M^dagger.
  CMatrix m(dims.a, dims.b);
  for (std::size_t i = 0; i < dims.a; ++i)
    for (std::size_t j = 0; j < dims.b; ++j) m(i, j) = psi_in[i * dims.b + j] / nrm;
  const HermEigen e = herm_eig(m * m.adjoint());

  const std::size_t rank = std::min(dims.a, dims.b);
  SchmidtDecomposition sd;
  double total = 0.0;
  for (std::size_t k = 0; k < rank; ++k) total += std::max(e.values[k], 0.0);
  for (std::size_t k = 0; k < rank; ++k) {
    const double p = std::max(e.values[k], 0.0) / total;
    StateVector l(dims.a);
    for (std::size_t i = 0; i < dims.a; ++i) l[i] = e.vectors(i, k);
    // right_k = M^T conj(left_k) / sqrt(p)
    StateVector r(dims.b, cplx{});
    if (p > 1e-300) {
      for (std::size_t j = 0; j < dims.b; ++j) {
        for (std::size_t i = 0; i < dims.a; ++i) r[j] += std::conj(l[i]) * m(i, j);
        r[j] /= std::sqrt(p);
      }
    }
    sd.probs.push_back(p);
    sd.left.push_back(std::move(l));
    sd.right.push_back(std::move(r));
  }
  return sd;
}

// ---------------------------------------------------------------------------
// Classical-quantum states

/// sum_k p_k |e_k><e_k| (x) sigma_k for an orthonormal qubit basis {e_0, e_1}.
inline DensityMatrix classical_quantum(std::span<const double> probs, const std::array<StateVector, 2>& basis,
                                       std::span<const DensityMatrix> sigmas) {
  if (probs.size() != 2 || sigmas.size() != 2) {
    throw Error(ErrorKind::BadProbabilities, "need exactly two weights and two conditional states");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw Error(ErrorKind::BadProbabilities, "negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::BadProbabilities, "weights do not sum to one");
  const std::size_t db = sigmas[0].dim();
  if (sigmas[1].dim() != db) throw Error(ErrorKind::DimensionMismatch, "conditional states differ in dimension");
  for (const auto& e : basis)
    if (e.size() != 2) throw Error(ErrorKind::DimensionMismatch, "basis vectors must be qubit vectors");
  const cplx overlap = std::conj(basis[0][0]) * basis[1][0] + std::conj(basis[0][1]) * basis[1][1];
  if (std::abs(overlap) > 1e-10 || std::abs(vector_norm(basis[0]) - 1.0) > 1e-10 ||
      std::abs(vector_norm(basis[1]) - 1.0) > 1e-10) {
    throw Error(ErrorKind::BadProbabilities, "basis is not orthonormal");
  }

  CMatrix m(2 * db, 2 * db);
  for (std::size_t k = 0; k < 2; ++k) {
    CMatrix proj(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) proj(i, j) = basis[k][i] * std::conj(basis[k][j]);
    m += probs[k] * kron(proj, sigmas[k].matrix());
  }
  return DensityMatrix(std::move(m), Dims{2, db});
}

// ---------------------------------------------------------------------------
// Random generators for property tests

inline StateVector random_vector(Rng& rng, std::size_t n) {
  StateVector v(n);
  for (auto& z : v) z = rng.complex_normal();
  const double nrm = vector_norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

inline DensityMatrix random_pure(Rng& rng, Dims dims = {}) {
  const StateVector v = random_vector(rng, dims.total());
  return pure_state(v, dims);
}

/// Haar unitary: Gram-Schmidt on a complex Gaussian matrix. Gram-Schmidt
/// leaves R with a positive real diagonal, which is the phase fix.
inline CMatrix random_unitary(Rng& rng, std::size_t dim) {
  CMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  for (std::size_t k = 0; k < dim; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < k; ++prev) {
        cplx proj{};
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(g(i, prev)) * g(i, k);
        for (std::size_t i = 0; i < dim; ++i) g(i, k) -= proj * g(i, prev);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) nrm += std::norm(g(i, k));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < dim; ++i) g(i, k) /= nrm;
  }
  return g;
}

/// Mixture of `rank` random pure states with flat-Dirichlet weights.
inline DensityMatrix random_mixed(Rng& rng, std::size_t rank, Dims dims = {}) {
  if (rank == 0) throw Error(ErrorKind::BadProbabilities, "rank must be positive");
  std::vector<double> w(rank);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  const std::size_t n = dims.total();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < rank; ++r) {
    const StateVector v = random_vector(rng, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) += (w[r] / total) * v[i] * std::conj(v[j]);
  }
  m = (m + m.adjoint()) * 0.5;
  return DensityMatrix(std::move(m), dims);
}

inline DensityMatrix random_pure(std::uint64_t seed, Dims dims = {}) {
  Rng rng(seed);
  return random_pure(rng, dims);
}
inline DensityMatrix random_mixed(std::uint64_t seed, std::size_t rank, Dims dims = {}) {
  Rng rng(seed);
  return random_mixed(rng, rank, dims);
}
inline CMatrix random_unitary(std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  return random_unitary(rng, dim);
}

/// Uniformly distributed valid Bell-diagonal coefficients (rejection sampling
/// from the cube).
inline BellDiagonalParams random_bell_diagonal(Rng& rng) {
  for (;;) {
    BellDiagonalParams p{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    if (p.is_state(0.0)) return p;
  }
}

}  // namespace aqsl
