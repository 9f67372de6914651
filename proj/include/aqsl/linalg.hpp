#pragma once

// Small dense complex matrices. Sizes here never exceed 8x8, so every
// routine is a straightforward O(n^3) loop.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqsl/error.hpp"

namespace aqsl {

using cplx = std::complex<double>;

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() : CMatrix(1, 1) {}

  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {
    if (rows == 0 || cols == 0) {
      throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
    }
  }

  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
      throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows x cols");
    }
  }

  /// Nested initializer, e.g. CMatrix{{1, 0}, {0, 1}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) {
      throw Error(ErrorKind::DimensionMismatch, "empty initializer");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  static CMatrix diag(std::span<const double> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static CMatrix diag(std::initializer_list<double> d) {
    return diag(std::span<const double>(d.begin(), d.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  CMatrix conj() const {
    CMatrix r = *this;
    for (auto& z : r.data_) z = std::conj(z);
    return r;
  }

  cplx trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix& operator+=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= cplx{s, 0.0}; }
  friend CMatrix operator*(double s, CMatrix a) { return a *= cplx{s, 0.0}; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    }
    CMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  void check_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimensionMismatch, "elementwise shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Hilbert-Schmidt (Frobenius) norm straight from the entries.
inline double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

inline double hermiticity_defect(const CMatrix& a) {
  if (!a.is_square()) return std::numeric_limits<double>::infinity();
  return frobenius(a - a.adjoint());
}

/// Tr(A B) without forming the product.
inline cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "trace_product shape mismatch");
  }
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

struct HermEigen {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k pairs with values[k]
};

inline constexpr double kDefaultHermTol = 1e-10;
inline constexpr double kSqrtClip = 1e-10;

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
inline HermEigen herm_eig(const CMatrix& a_in, double tol = kDefaultHermTol) {
  if (!a_in.is_square()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  const std::size_t n = a_in.rows();
  const double scale = std::max(1.0, frobenius(a_in));
  if (hermiticity_defect(a_in) > tol * scale) {
    throw Error(ErrorKind::NotHermitian, "||A - A^dagger|| exceeds tolerance");
  }

  // Symmetrize so that the diagonal is exactly real.
  CMatrix a = (a_in + a_in.adjoint()) * 0.5;
  CMatrix v = CMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  const double eps = std::numeric_limits<double>::epsilon();
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= eps * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx z = a(p, q);
        const double mag = std::abs(z);
        if (mag <= eps * eps * scale) continue;
        const cplx phase = z / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U acts on columns p, q: U = [[c, s e^{i phi}], [-s e^{-i phi}, c]].
        const cplx u_pq = s * phase;
        const cplx u_qp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * u_qp;
          a(k, q) = akp * u_pq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * u_qp;
          v(k, q) = vkp * u_pq + vkq * c;
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_norm() > 1e3 * eps * scale) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable so that equal eigenvalues keep the solver's column order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermEigen out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// V f(diag(lambda)) V^dagger for a real function f of the spectrum.
template <typename F>
CMatrix spectral_map(const HermEigen& e, F&& f) {
  const std::size_t n = e.values.size();
  CMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = e.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return r;
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-clip, 0) are treated as roundoff, as are positive ones below the
/// solver's absolute accuracy n eps ||A||; both map to zero.
inline CMatrix matrix_sqrt_psd(const CMatrix& a, double clip = kSqrtClip) {
  const HermEigen e = herm_eig(a);
  if (!e.values.empty() && e.values.back() < -clip) {
    throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(e.values.back()) + " below -clip");
  }
  const double floor =
      static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * frobenius(a);
  return spectral_map(e, [floor](double x) { return x <= floor ? 0.0 : std::sqrt(x); });
}

/// Singular values (descending) as square roots of the spectrum of A^dagger A.
inline std::vector<double> singular_values(const CMatrix& a) {
  const CMatrix g = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
  HermEigen e = herm_eig(g, 1e-8);
  std::vector<double> s(e.values.size());
  std::transform(e.values.begin(), e.values.end(), s.begin(),
                 [](double x) { return std::sqrt(std::max(x, 0.0)); });
  return s;
}

enum class NormKind { Op, Tr, Hs };

inline double norm(const CMatrix& a, NormKind kind) {
  const auto s = singular_values(a);
  switch (kind) {
    case NormKind::Op: return s.front();
    case NormKind::Tr: return std::accumulate(s.begin(), s.end(), 0.0);
    case NormKind::Hs: {
      double q = 0.0;
      for (double x : s) q += x * x;
      return std::sqrt(q);
    }
  }
  return 0.0;
}

/// All three norms from a single singular value decomposition.
struct NormTriple {
  double op = 0.0;
  double tr = 0.0;
  double hs = 0.0;
};

inline NormTriple norms(const CMatrix& a) {
  const auto s = singular_values(a);
  NormTriple n;
  n.op = s.front();
  double q = 0.0;
  for (double x : s) {
    n.tr += x;
    q += x * x;
  }
  n.hs = std::sqrt(q);
  return n;
}

/// Kronecker product; `a` is the left (first) tensor factor.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  CMatrix r(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) r(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return r;
}

struct Dims {
  std::size_t a = 2;
  std::size_t b = 2;
  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Party { A, B };

inline CMatrix partial_trace(const CMatrix& m, Dims dims, Party keep) {
  if (!m.is_square() || m.rows() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: side must equal da*db");
  }
  if (keep == Party::A) {
    CMatrix r(dims.a, dims.a);
    for (std::size_t i = 0; i < dims.a; ++i)
      for (std::size_t j = 0; j < dims.a; ++j)
        for (std::size_t k = 0; k < dims.b; ++k) r(i, j) += m(i * dims.b + k, j * dims.b + k);
    return r;
  }
  CMatrix r(dims.b, dims.b);
  for (std::size_t k = 0; k < dims.b; ++k)
    for (std::size_t l = 0; l < dims.b; ++l)
      for (std::size_t i = 0; i < dims.a; ++i) r(k, l) += m(i * dims.b + k, i * dims.b + l);
  return r;
}

namespace pauli {
inline const CMatrix& x() {
  static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
inline const CMatrix& y() {
  static const CMatrix m{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
  return m;
}
inline const CMatrix& z() {
  static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}
/// sigma_1, sigma_2, sigma_3 for i = 0, 1, 2.
inline const CMatrix& by_index(int i) {
  switch (i) {
    case 0: return x();
    case 1: return y();
    default: return z();
  }
}
}  // namespace pauli

}  // namespace aqsl
