#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aqsl/error.hpp"
#include "aqsl/linalg.hpp"
#include "aqsl/states.hpp"

namespace aqsl {

/// CPTP map rho -> sum_mu K_mu rho K_mu^dagger.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> ops, double tol = 1e-12) : ops_(std::move(ops)) {
    if (ops_.empty()) throw Error(ErrorKind::DimensionMismatch, "channel needs at least one Kraus operator");
    const std::size_t n = ops_.front().rows();
    for (const auto& k : ops_) {
      if (!k.is_square() || k.rows() != n) throw Error(ErrorKind::DimensionMismatch, "Kraus operators differ in shape");
    }
    if (completeness_defect() > tol) {
      throw Error(ErrorKind::NotAState, "Kraus operators are not trace preserving");
    }
  }

  const std::vector<CMatrix>& ops() const noexcept { return ops_; }
  std::size_t dim() const noexcept { return ops_.front().rows(); }

  /// ||sum_mu K_mu^dagger K_mu - I||_HS
  double completeness_defect() const {
    const std::size_t n = ops_.front().rows();
    CMatrix s(n, n);
    for (const auto& k : ops_) s += k.adjoint() * k;
    return frobenius(s - CMatrix::identity(n));
  }

  DensityMatrix apply(const DensityMatrix& rho) const {
    if (rho.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "channel and state sizes differ");
    CMatrix out(dim(), dim());
    for (const auto& k : ops_) out += k * rho.matrix() * k.adjoint();
    out = (out + out.adjoint()) * 0.5;
    return DensityMatrix(std::move(out), rho.dims());
  }

 private:
  std::vector<CMatrix> ops_;
};

inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) { return ch.apply(rho); }

// ---------------------------------------------------------------------------
// Ornstein-Uhlenbeck dephasing

/// Gamma: coupling strength. gamma: noise bandwidth. Both in inverse time.
struct OuParams {
  double big_gamma = 1.0;
  double gamma = 1.0;

  void validate() const {
    if (!(big_gamma > 0.0) || !(gamma > 0.0) || !std::isfinite(big_gamma) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::InvalidConfig, "OU parameters must be positive and finite");
    }
  }
};

inline constexpr double kOuSeriesThreshold = 1e-6;

/// (e^{-x} - 1) / x, three-term Taylor series for small x.
inline double ou_bracket_series(double x) { return -1.0 + x / 2.0 - x * x / 6.0; }

inline double ou_bracket_direct(double x) { return std::expm1(-x) / x; }

/// f(t) = (Gamma t / 2) [1 + (e^{-gamma t} - 1) / (gamma t)].
inline double ou_f(double t, const OuParams& p) {
  if (t < 0.0) throw Error(ErrorKind::NegativeTime, "t must be nonnegative");
  p.validate();
  const double x = p.gamma * t;
  // 1 + bracket; the series form avoids the cancellation in 1 + (-1 + ...).
  const double one_plus = x < kOuSeriesThreshold ? x / 2.0 - x * x / 6.0 : 1.0 + ou_bracket_direct(x);
  return 0.5 * p.big_gamma * t * one_plus;
}

/// Single-qubit dephasing factor p = exp(-f(t)).
inline double ou_coherence(double t, const OuParams& p) { return std::exp(-ou_f(t, p)); }

/// K = {E1a(x)E1b, E1a(x)E2b, E2a(x)E1b, E2a(x)E2b} with E1 = diag(p, 1) and
/// E2 = diag(sqrt(1 - p^2), 0). Party b uses `party_b` when given.
inline KrausChannel ou_kraus(double t, const OuParams& party_a, std::optional<OuParams> party_b = std::nullopt) {
  const OuParams pb_params = party_b.value_or(party_a);
  auto factors = [t](const OuParams& p) {
    const double c = ou_coherence(t, p);
    const double q = std::sqrt(std::max(0.0, 1.0 - c * c));
    return std::pair<CMatrix, CMatrix>{CMatrix::diag({c, 1.0}), CMatrix::diag({q, 0.0})};
  };
  const auto [e1a, e2a] = factors(party_a);
  const auto [e1b, e2b] = factors(pb_params);
  return KrausChannel({kron(e1a, e1b), kron(e1a, e2b), kron(e2a, e1b), kron(e2a, e2b)});
}

/// Closed-form OU evolution of Bell-diagonal coefficients (symmetric noise):
/// c1, c2 decay as e^{-2 f(t)}, c3 is conserved.
inline BellDiagonalParams evolve_bell_diagonal(const BellDiagonalParams& c0, double t, const OuParams& p) {
  if (!c0.is_state()) throw Error(ErrorKind::NotAState, "initial coefficients are not a state");
  const double decay = std::exp(-2.0 * ou_f(t, p));
  return {c0.c1 * decay, c0.c2 * decay, c0.c3};
}

}  // namespace aqsl
