#pragma once

// Correlation quantifiers for states whose measured party a is a qubit.
//
// The affinity discord here is
//
//   D(rho) = 1 - max_r sqrt( Tr[ sqrt(rho) Pi_r(sqrt(rho)) ] ),
//
// i.e. the square root of the measured state is taken to be the measured
// square root Pi_r(sqrt(rho)). Expanding Pi_r with Bloch projectors gives
// Tr[sqrt(rho) Pi_r(sqrt(rho))] = (1 + r^T T r) / 2, hence the closed form
// D = 1 - sqrt((1 + lambda_max(T)) / 2). The literal affinity
// A(rho, Pi_r(rho)) only coincides with that quantity when Pi_r(rho) = rho;
// it is available as literal_measured_affinity() for comparison.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "aqsl/error.hpp"
#include "aqsl/linalg.hpp"
#include "aqsl/states.hpp"

namespace aqsl {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Two-outcome projective measurement {(I + r.sigma)/2, (I - r.sigma)/2} on a qubit.
class BlochMeasurement {
 public:
  explicit BlochMeasurement(const Vec3& r) {
    const double n = length(r);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorKind::ZeroVector, "Bloch vector must be nonzero and finite");
    }
    r_ = {r[0] / n, r[1] / n, r[2] / n};
  }

  const Vec3& direction() const noexcept { return r_; }

  /// Pi_+ for sign = +1, Pi_- for sign = -1.
  CMatrix projector(int sign) const {
    CMatrix p = CMatrix::identity(2) * 0.5;
    for (int i = 0; i < 3; ++i) p += (0.5 * sign * r_[i]) * pauli::by_index(i);
    return p;
  }

 private:
  Vec3 r_{0.0, 0.0, 1.0};
};

inline void require_qubit_a(Dims dims) {
  if (dims.a != 2) throw Error(ErrorKind::NotQubitPartyA, "measured party must be a qubit");
}

/// Pi^a(X) = sum_k (Pi_k (x) 1) X (Pi_k (x) 1) for an operator X on H_a (x) H_b.
inline CMatrix measure_a(const CMatrix& x, Dims dims, const BlochMeasurement& m) {
  require_qubit_a(dims);
  if (!x.is_square() || x.rows() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "operator does not match dims");
  }
  const CMatrix id_b = CMatrix::identity(dims.b);
  CMatrix out(x.rows(), x.cols());
  for (int sign : {+1, -1}) {
    const CMatrix p = kron(m.projector(sign), id_b);
    out += p * x * p;
  }
  return out;
}

inline DensityMatrix measure_a(const DensityMatrix& rho, const BlochMeasurement& m) {
  CMatrix out = measure_a(rho.matrix(), rho.dims(), m);
  out = (out + out.adjoint()) * 0.5;
  return DensityMatrix(std::move(out), rho.dims());
}

/// A(rho, sigma) = Tr sqrt(rho) sqrt(sigma).
inline double affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "affinity of states of different size");
  const double a = trace_product(matrix_sqrt_psd(rho.matrix()), matrix_sqrt_psd(sigma.matrix())).real();
  return std::clamp(a, 0.0, 1.0);
}

/// Tr[S Pi_r(S)] for S = sqrt(rho): the affinity between rho and its
/// measured state under the measured-square-root convention.
inline double measured_affinity(const CMatrix& sqrt_rho, Dims dims, const BlochMeasurement& m) {
  return trace_product(sqrt_rho, measure_a(sqrt_rho, dims, m)).real();
}

/// A(rho, Pi_r(rho)) with the true square root of the measured state.
inline double literal_measured_affinity(const DensityMatrix& rho, const BlochMeasurement& m) {
  return affinity(rho, measure_a(rho, m));
}

/// T_ij = Tr[sqrt(rho) (sigma_i (x) 1) sqrt(rho) (sigma_j (x) 1)]; real symmetric.
inline std::array<Vec3, 3> correlation_t_matrix(const CMatrix& sqrt_rho, Dims dims) {
  require_qubit_a(dims);
  const CMatrix id_b = CMatrix::identity(dims.b);
  std::array<CMatrix, 3> s_sig;  // sqrt(rho) (sigma_i (x) 1)
  for (int i = 0; i < 3; ++i) s_sig[i] = sqrt_rho * kron(pauli::by_index(i), id_b);
  std::array<Vec3, 3> t{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) t[i][j] = t[j][i] = trace_product(s_sig[i], s_sig[j]).real();
  return t;
}

struct ClosedDiscord {
  double value = 0.0;
  Vec3 t_spectrum{};  // descending
  Vec3 optimal_bloch{0.0, 0.0, 1.0};
};

namespace detail {

inline Vec3 sign_fixed(Vec3 v) {
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0)
        for (auto& y : v) y = -y;
      break;
    }
  }
  return v;
}

inline double discord_from_affinity(double a) { return std::clamp(1.0 - std::sqrt(std::clamp(a, 0.0, 1.0)), 0.0, 1.0); }

}  // namespace detail

inline ClosedDiscord affinity_discord_closed(const DensityMatrix& rho) {
  require_qubit_a(rho.dims());
  const auto t = correlation_t_matrix(matrix_sqrt_psd(rho.matrix()), rho.dims());
  CMatrix tm(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tm(i, j) = t[i][j];
  const HermEigen e = herm_eig(tm, 1e-9);

  ClosedDiscord out;
  for (int k = 0; k < 3; ++k) out.t_spectrum[k] = e.values[k];
  const double lmax = e.values[0];

  // Degenerate top eigenvalue: pick the eigenvector whose absolute
  // components are lexicographically largest.
  bool have = false;
  Vec3 best{};
  Vec3 best_abs{};
  for (int k = 0; k < 3; ++k) {
    if (e.values[k] < lmax - 1e-10 * std::max(1.0, std::abs(lmax))) break;
    Vec3 v{e.vectors(0, k).real(), e.vectors(1, k).real(), e.vectors(2, k).real()};
    const double n = length(v);
    for (auto& x : v) x /= n;
    v = detail::sign_fixed(v);
    const Vec3 va{std::abs(v[0]), std::abs(v[1]), std::abs(v[2])};
    if (!have || va > best_abs) {
      best = v;
      best_abs = va;
      have = true;
    }
  }
  out.optimal_bloch = best;
  out.value = detail::discord_from_affinity(0.5 * (1.0 + lmax));
  return out;
}

// ---------------------------------------------------------------------------
// Measurement-sphere search

struct SphereSearchOptions {
  std::size_t n_grid = 2000;
  std::size_t refine_iters = 40;
};

struct SphereMinimum {
  double value = 0.0;
  Vec3 bloch{0.0, 0.0, 1.0};
};

inline Vec3 fibonacci_direction(std::size_t i, std::size_t n) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden_angle * static_cast<double>(i);
  return {rad * std::cos(phi), rad * std::sin(phi), z};
}

/// Minimizes `objective` over unit Bloch vectors: Fibonacci grid followed by
/// coordinate descent in tangent-plane coordinates about the best grid
/// point, halving the step `refine_iters` times. Grid ties resolve to the
/// lowest index, so the result is independent of evaluation order.
inline SphereMinimum minimize_over_sphere(const std::function<double(const Vec3&)>& objective,
                                          SphereSearchOptions opt = {}) {
  const std::size_t n = std::max<std::size_t>(opt.n_grid, 1);
  SphereMinimum best{std::numeric_limits<double>::infinity(), {0.0, 0.0, 1.0}};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 r = fibonacci_direction(i, n);
    const double v = objective(r);
    if (v < best.value) best = {v, r};
  }

  const Vec3 r0 = best.bloch;
  const Vec3 helper = std::abs(r0[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = cross(r0, helper);
  const double l1 = length(e1);
  for (auto& x : e1) x /= l1;
  const Vec3 e2 = cross(r0, e1);

  auto point = [&](double u, double v) {
    Vec3 r{r0[0] + u * e1[0] + v * e2[0], r0[1] + u * e1[1] + v * e2[1], r0[2] + u * e1[2] + v * e2[2]};
    const double l = length(r);
    for (auto& x : r) x /= l;
    return r;
  };

  double u = 0.0, v = 0.0;
  double step = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(n));
  constexpr int kMaxMovesPerLevel = 64;
  for (std::size_t it = 0; it < opt.refine_iters; ++it) {
    for (int move = 0; move < kMaxMovesPerLevel; ++move) {
      const std::array<std::array<double, 2>, 4> trial{{{u + step, v}, {u - step, v}, {u, v + step}, {u, v - step}}};
      int pick = -1;
      double pick_val = best.value;
      for (int k = 0; k < 4; ++k) {
        const double val = objective(point(trial[k][0], trial[k][1]));
        if (val < pick_val) {
          pick_val = val;
          pick = k;
        }
      }
      if (pick < 0) break;
      u = trial[pick][0];
      v = trial[pick][1];
      best = {pick_val, point(u, v)};
    }
    step *= 0.5;
  }
  best.bloch = detail::sign_fixed(best.bloch);
  return best;
}

/// Brute-force discord: minimizes 1 - sqrt(Tr[sqrt(rho) Pi_r(sqrt(rho))])
/// over measurement directions using explicit operator products only.
inline SphereMinimum affinity_discord_oracle(const DensityMatrix& rho, SphereSearchOptions opt = {}) {
  require_qubit_a(rho.dims());
  const CMatrix s = matrix_sqrt_psd(rho.matrix());
  const Dims dims = rho.dims();
  auto obj = [&](const Vec3& r) {
    return detail::discord_from_affinity(measured_affinity(s, dims, BlochMeasurement(r)));
  };
  return minimize_over_sphere(obj, opt);
}

/// 1 - sqrt(sum_k s_k^2) with s_k the Schmidt probabilities.
inline double affinity_discord_pure(const SchmidtDecomposition& sd) {
  double q = 0.0;
  for (double p : sd.probs) q += p * p;
  return detail::discord_from_affinity(q);
}

/// min_r ||rho - Pi_r(rho)||_HS^2.
inline double hs_discord(const DensityMatrix& rho, SphereSearchOptions opt = {}) {
  require_qubit_a(rho.dims());
  auto obj = [&](const Vec3& r) {
    const double d = frobenius(rho.matrix() - measure_a(rho.matrix(), rho.dims(), BlochMeasurement(r)));
    return d * d;
  };
  return std::max(0.0, minimize_over_sphere(obj, opt).value);
}

/// Wootters concurrence via the spin-flipped state.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw Error(ErrorKind::NotTwoQubit, "concurrence needs a two-qubit state");
  const CMatrix yy = kron(pauli::y(), pauli::y());
  const CMatrix flipped = yy * rho.matrix().conj() * yy;
  const CMatrix s = matrix_sqrt_psd(rho.matrix());
  CMatrix r = s * flipped * s;
  r = (r + r.adjoint()) * 0.5;
  const HermEigen e = herm_eig(r, 1e-9);
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * frobenius(r);
  std::array<double, 4> eta{};
  for (int k = 0; k < 4; ++k) eta[k] = e.values[k] <= floor ? 0.0 : std::sqrt(e.values[k]);
  return std::clamp(eta[0] - eta[1] - eta[2] - eta[3], 0.0, 1.0);
}

struct CorrelationReport {
  double affinity_discord = 0.0;
  double oracle_discord = 0.0;
  double hs_discord = 0.0;
  std::optional<double> concurrence;  // two-qubit states only
  Vec3 t_spectrum{};
  Vec3 optimal_bloch{0.0, 0.0, 1.0};
};

inline CorrelationReport correlation_report(const DensityMatrix& rho, SphereSearchOptions opt = {}) {
  const ClosedDiscord closed = affinity_discord_closed(rho);
  CorrelationReport rep;
  rep.affinity_discord = closed.value;
  rep.t_spectrum = closed.t_spectrum;
  rep.optimal_bloch = closed.optimal_bloch;
  rep.oracle_discord = affinity_discord_oracle(rho, opt).value;
  rep.hs_discord = hs_discord(rho, opt);
  if (rho.dims() == Dims{2, 2}) rep.concurrence = concurrence(rho);
  return rep;
}

}  // namespace aqsl
