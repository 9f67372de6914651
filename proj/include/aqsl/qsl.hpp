#pragma once

// Speed-limit bounds on the change of affinity discord along a trajectory.
//
// The rate terms are the time derivatives of sqrt(rho_t) and of
// sqrt(sigma_t), sigma_t = Pi_*(rho_t), both on the system space. The
// measurement Pi_* is optimal for rho_t at the quadrature node and is held
// fixed across the finite-difference stencil.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "aqsl/correlations.hpp"
#include "aqsl/error.hpp"
#include "aqsl/linalg.hpp"
#include "aqsl/states.hpp"

namespace aqsl {

/// t -> rho_t on [t_begin, t_end].
struct Trajectory {
  std::function<DensityMatrix(double)> at;
  double t_begin = 0.0;
  double t_end = 0.0;

  DensityMatrix operator()(double t) const { return at(t); }

  /// s -> rho_{t_end - (s - t_begin)}: the same samples in reverse order.
  Trajectory reversed() const {
    auto f = at;
    const double b = t_begin, e = t_end;
    return {[f, b, e](double s) { return f(e - (s - b)); }, t_begin, t_end};
  }
};

enum class QslMode { Decay, Creation };

inline std::string_view to_string(QslMode m) { return m == QslMode::Decay ? "decay" : "creation"; }

struct SqrtRate {
  CMatrix dsr;  // d sqrt(rho_t) / dt
  CMatrix dss;  // d sqrt(sigma_t) / dt, measurement frozen
};

/// Optimal measurement at t. When the top eigenvalue of T is degenerate the
/// optimum is not unique; the direction optimal at t + step is used instead,
/// i.e. the one the trajectory approaches.
inline Vec3 rate_measurement(const Trajectory& traj, double t, double step) {
  const ClosedDiscord here = affinity_discord_closed(traj(t));
  const double gap = here.t_spectrum[0] - here.t_spectrum[1];
  if (gap > 1e-10 * std::max(1.0, std::abs(here.t_spectrum[0]))) return here.optimal_bloch;
  return affinity_discord_closed(traj(t + step)).optimal_bloch;
}

/// Second-order finite differences of sqrt(rho_t) and sqrt(Pi(rho_t)) at t.
/// Central when [t-h, t+h] fits in the trajectory domain, one-sided
/// otherwise.
inline SqrtRate sqrt_rate(const Trajectory& traj, double t, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::StencilOutOfDomain, "step must be positive");
  if (t < traj.t_begin || t > traj.t_end) throw Error(ErrorKind::StencilOutOfDomain, "t outside trajectory domain");
  const bool room_left = t - h >= traj.t_begin;
  const bool room_right = t + h <= traj.t_end;
  if (!room_left && !room_right) throw Error(ErrorKind::StencilOutOfDomain, "domain shorter than stencil");
  if (!room_left && t + 2.0 * h > traj.t_end) throw Error(ErrorKind::StencilOutOfDomain, "no room for forward stencil");
  if (!room_right && t - 2.0 * h < traj.t_begin) throw Error(ErrorKind::StencilOutOfDomain, "no room for backward stencil");

  const BlochMeasurement frozen(rate_measurement(traj, t, room_right ? h : -h));
  struct Roots {
    CMatrix rho;
    CMatrix sigma;
  };
  auto roots = [&](double s) {
    const DensityMatrix rho = traj(s);
    return Roots{matrix_sqrt_psd(rho.matrix()), matrix_sqrt_psd(measure_a(rho, frozen).matrix())};
  };

  if (room_left && room_right) {
    const Roots plus = roots(t + h), minus = roots(t - h);
    const double w = 1.0 / (2.0 * h);
    return {(plus.rho - minus.rho) * w, (plus.sigma - minus.sigma) * w};
  }
  // (-3 f0 + 4 f1 - f2) / 2h, mirrored for the backward case.
  const double dir = room_right ? 1.0 : -1.0;
  const Roots f0 = roots(t), f1 = roots(t + dir * h), f2 = roots(t + 2.0 * dir * h);
  const double w = dir / (2.0 * h);
  return {(f1.rho * 4.0 - f0.rho * 3.0 - f2.rho) * w, (f1.sigma * 4.0 - f0.sigma * 3.0 - f2.sigma) * w};
}

struct LambdaAverages {
  double lambda_op = 0.0;
  double lambda_tr = 0.0;
  double lambda_hs = 0.0;
};

inline double default_step(double tau, std::size_t n_steps) {
  return std::min(1e-4, tau / (10.0 * static_cast<double>(n_steps)));
}

/// Time averages over [t_begin, t_begin + tau] of ||d sqrt(rho)|| + ||d sqrt(sigma)||
/// for the operator, trace and Hilbert-Schmidt norms (trapezoidal rule on
/// n_steps + 1 uniform nodes).
inline LambdaAverages lambda_averages(const Trajectory& traj, double tau, std::size_t n_steps, double h) {
  if (!(tau > 0.0)) throw Error(ErrorKind::InvalidConfig, "tau must be positive");
  if (n_steps < 2) throw Error(ErrorKind::InvalidConfig, "need at least two quadrature intervals");
  Trajectory window = traj;
  window.t_end = traj.t_begin + tau;
  if (window.t_end > traj.t_end + 1e-12 * std::max(1.0, std::abs(traj.t_end))) {
    throw Error(ErrorKind::StencilOutOfDomain, "tau exceeds trajectory domain");
  }
  window.t_end = std::min(window.t_end, traj.t_end);

  const double dt = tau / static_cast<double>(n_steps);
  LambdaAverages sum;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = k == n_steps ? window.t_end : window.t_begin + dt * static_cast<double>(k);
    const SqrtRate r = sqrt_rate(window, t, h);
    const NormTriple a = norms(r.dsr);
    const NormTriple b = norms(r.dss);
    const double w = (k == 0 || k == n_steps) ? 0.5 : 1.0;
    sum.lambda_op += w * (a.op + b.op);
    sum.lambda_tr += w * (a.tr + b.tr);
    sum.lambda_hs += w * (a.hs + b.hs);
  }
  const double scale = dt / tau;
  return {sum.lambda_op * scale, sum.lambda_tr * scale, sum.lambda_hs * scale};
}

struct QslProfile {
  double tau = 0.0;
  QslMode mode = QslMode::Decay;
  double discord_initial = 0.0;
  double discord_final = 0.0;
  double delta_q = 0.0;
  double lambda_op = 0.0;
  double lambda_tr = 0.0;
  double lambda_hs = 0.0;
  double tau_qc = 0.0;
};

/// |D(rho0) - D(rhot)| with D the closed-form affinity discord.
inline double delta_q(const DensityMatrix& rho0, const DensityMatrix& rhot) {
  return std::abs(affinity_discord_closed(rho0).value - affinity_discord_closed(rhot).value);
}

/// 2 dQ (1 - (2 D0 -+ dQ) / 2): minus for decay, plus for creation.
inline double qsl_prefactor(double d0, double dq, QslMode mode) {
  const double sign = mode == QslMode::Decay ? -1.0 : 1.0;
  return 2.0 * dq * (1.0 - (2.0 * d0 + sign * dq) / 2.0);
}

inline constexpr double kModeTol = 1e-12;

/// Combined Margolus-Levitin / Mandelstam-Tamm bound for the change of
/// affinity discord between traj(t_begin) = rho0 and traj(t_begin + tau).
inline QslProfile tau_qsl(const DensityMatrix& rho0, const Trajectory& traj, double tau, QslMode mode,
                          std::size_t n_steps = 200, double h = 0.0) {
  if (h <= 0.0) h = default_step(tau, n_steps);
  QslProfile prof;
  prof.tau = tau;
  prof.mode = mode;
  prof.discord_initial = affinity_discord_closed(rho0).value;
  prof.discord_final = affinity_discord_closed(traj(traj.t_begin + tau)).value;
  const double change = prof.discord_final - prof.discord_initial;
  if (mode == QslMode::Decay && change > kModeTol) {
    throw Error(ErrorKind::ModeMismatch, "decay mode on a correlation-increasing segment");
  }
  if (mode == QslMode::Creation && change < -kModeTol) {
    throw Error(ErrorKind::ModeMismatch, "creation mode on a correlation-decreasing segment");
  }
  prof.delta_q = std::abs(change);

  const LambdaAverages lam = lambda_averages(traj, tau, n_steps, h);
  prof.lambda_op = lam.lambda_op;
  prof.lambda_tr = lam.lambda_tr;
  prof.lambda_hs = lam.lambda_hs;

  if (prof.delta_q == 0.0) {
    prof.tau_qc = 0.0;
    return prof;
  }
  const double lmin = std::min({lam.lambda_op, lam.lambda_tr, lam.lambda_hs});
  if (!(lmin > 0.0)) throw Error(ErrorKind::DegenerateBound, "generator norms vanish while the discord changes");
  const double inv = std::max({1.0 / lam.lambda_op, 1.0 / lam.lambda_tr, 1.0 / lam.lambda_hs});
  prof.tau_qc = inv * qsl_prefactor(prof.discord_initial, prof.delta_q, mode);
  return prof;
}

}  // namespace aqsl
