#pragma once

// Fundamental system of the Fourier-transformed dissipative wave equation
//
//   v''(t) + mu/(1+t) v'(t) + r^2 v(t) = 0,   r = |xi|,
//
// assembled from Bessel/Hankel determinants in the three equivalent
// representations (complex Hankel, real J/Y, and csc-weighted J_{+-rho}),
// plus the parametric model multiplier Psi_{k,s,rho,delta} that uniformizes
// all entries of the fundamental matrix.
//
// Signs are fixed by the initial-value constraint Phi(t0,t0,xi) = I rather
// than by any intermediate determinant orientation.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "wdwave/specfun.hpp"

namespace wdwave {

/// Dissipation strength mu > 0 and the induced Bessel order
/// rho = (1 - mu)/2 < 1/2.
struct DissipationParams {
  double mu;
  double rho;
  explicit DissipationParams(double mu_) : mu(mu_), rho((1.0 - mu_) / 2.0) {
    if (!(mu > 0.0) || !std::isfinite(mu))
      throw std::domain_error("DissipationParams: mu must be positive, got " +
                              std::to_string(mu_));
  }
};

/// rho = (1 - mu)/2. mu = 0 is admitted as the free-wave limit (rho = 1/2).
inline double rho_of_mu(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::domain_error("rho_of_mu: mu must be nonnegative");
  return (1.0 - mu) / 2.0;
}

/// Evaluation point: solution time t, data time t0 (both > -1), frequency
/// magnitude r >= 0.
struct PhasePoint {
  double t;
  double t0;
  double r;
  PhasePoint(double t_, double t0_, double r_) : t(t_), t0(t0_), r(r_) {
    if (!(t > -1.0) || !(t0 > -1.0) || !(r >= 0.0) || !std::isfinite(t) ||
        !std::isfinite(t0) || !std::isfinite(r))
      throw std::domain_error("PhasePoint: need t, t0 > -1 and r >= 0");
  }
};

/// Entries of the 2x2 fundamental matrix: first row (phi1, phi2), second row
/// their time derivatives. All entries are real.
struct FundamentalMatrix {
  double phi1, phi2, dphi1, dphi2;
};

/// Parameters (k, s, rho, delta) of the model multiplier.
struct ModelMultiplierParams {
  double k, s, rho, delta;
};

/// Raised when a frequency is too degenerate for the determinant forms
/// (entries would overflow); callers should treat the mode analytically.
struct DegenerateFrequencyError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

struct PhaseArgs {
  double a;  // (1+t0) r
  double b;  // (1+t) r
  double f;  // (1+t)^rho / (1+t0)^(rho-1)
};

inline PhaseArgs phase_args(const DissipationParams& p, const PhasePoint& pt) {
  return {(1.0 + pt.t0) * pt.r, (1.0 + pt.t) * pt.r,
          std::pow(1.0 + pt.t, p.rho) * std::pow(1.0 + pt.t0, 1.0 - p.rho)};
}

inline void require_positive_r(const PhasePoint& pt, const char* who) {
  if (!(pt.r > 0.0)) throw std::domain_error(std::string(who) + ": r must be positive");
}

inline FundamentalMatrix checked(FundamentalMatrix m, const char* who) {
  if (!std::isfinite(m.phi1) || !std::isfinite(m.phi2) || !std::isfinite(m.dphi1) ||
      !std::isfinite(m.dphi2))
    throw DegenerateFrequencyError(std::string(who) +
                                   ": non-finite multiplier entries (frequency too "
                                   "degenerate for the determinant forms)");
  return m;
}

/// Exact r = 0 mode: v'' + mu/(1+t) v' = 0.
inline FundamentalMatrix zero_frequency(const DissipationParams& p, const PhasePoint& pt) {
  double t = pt.t, t0 = pt.t0;
  double phi2;
  if (std::abs(p.mu - 1.0) < 1e-8) {
    phi2 = (1.0 + t0) * std::log((1.0 + t) / (1.0 + t0));
  } else {
    phi2 = std::pow(1.0 + t0, p.mu) *
           (std::pow(1.0 + t, 1.0 - p.mu) - std::pow(1.0 + t0, 1.0 - p.mu)) / (1.0 - p.mu);
  }
  return {1.0, phi2, 0.0, std::pow((1.0 + t0) / (1.0 + t), p.mu)};
}

inline constexpr double kZeroFrequencyFloor = 1e-12;

}  // namespace detail

/// Real-valued J/Y representation. This is the branch of record when rho is
/// within 1e-8 of an integer (the csc form is singular there).
inline FundamentalMatrix phi_real_form(const DissipationParams& p, const PhasePoint& pt) {
  detail::require_positive_r(pt, "phi_real_form");
  auto [a, b, f] = detail::phase_args(p, pt);
  double rho = p.rho, r = pt.r;
  double ja = detail::besselj(rho, a), ya = detail::bessely(rho, a);
  double jb = detail::besselj(rho, b), yb = detail::bessely(rho, b);
  double ja1 = detail::besselj(rho - 1.0, a), ya1 = detail::bessely(rho - 1.0, a);
  double jb1 = detail::besselj(rho - 1.0, b), yb1 = detail::bessely(rho - 1.0, b);
  const double h = M_PI / 2.0;
  return detail::checked({-h * r * f * (ja1 * yb - jb * ya1),
                          h * f * (ja * yb - jb * ya),
                          -h * r * r * f * (ja1 * yb1 - jb1 * ya1),
                          h * r * f * (ja * yb1 - jb1 * ya)},
                         "phi_real_form");
}

/// csc(rho pi)-weighted J_{+-rho} representation; preferred numerically at
/// small arguments (no Weber-function cancellation). Requires rho at distance
/// > 1e-8 from the integers.
inline FundamentalMatrix phi_nonintegral_form(const DissipationParams& p, const PhasePoint& pt) {
  detail::require_positive_r(pt, "phi_nonintegral_form");
  if (detail::near_integer(p.rho))
    throw std::domain_error("phi_nonintegral_form: rho is integral, use phi_real_form");
  auto [a, b, f] = detail::phase_args(p, pt);
  double rho = p.rho, r = pt.r;
  double jpa = detail::besselj(rho, a), jma = detail::besselj(-rho, a);
  double jpb = detail::besselj(rho, b), jmb = detail::besselj(-rho, b);
  double jp1a = detail::besselj(rho - 1.0, a), jm1a = detail::besselj(1.0 - rho, a);
  double jp1b = detail::besselj(rho - 1.0, b), jm1b = detail::besselj(1.0 - rho, b);
  const double c = M_PI / (2.0 * detail::sin_pi(rho));
  return detail::checked({c * r * f * (jm1a * jpb + jp1a * jmb),
                          c * f * (jma * jpb - jmb * jpa),
                          -c * r * r * f * (jp1a * jm1b - jp1b * jm1a),
                          c * r * f * (jma * jp1b + jpa * jm1b)},
                         "phi_nonintegral_form");
}

/// Complex Hankel-determinant representation; retained as a cross-check.
inline std::array<std::complex<double>, 4> phi_hankel_form_complex(const DissipationParams& p,
                                                                   const PhasePoint& pt) {
  detail::require_positive_r(pt, "phi_hankel_form");
  auto [a, b, f] = detail::phase_args(p, pt);
  double rho = p.rho, r = pt.r;
  std::complex<double> hpa = detail::hankel_plus(rho, a), hma = std::conj(hpa);
  std::complex<double> hpb = detail::hankel_plus(rho, b), hmb = std::conj(hpb);
  std::complex<double> hpa1 = detail::hankel_plus(rho - 1.0, a), hma1 = std::conj(hpa1);
  std::complex<double> hpb1 = detail::hankel_plus(rho - 1.0, b), hmb1 = std::conj(hpb1);
  const std::complex<double> c(0.0, M_PI / 4.0);
  return {c * r * f * (hma1 * hpb - hpa1 * hmb),
          -c * f * (hma * hpb - hpa * hmb),
          c * r * r * f * (hma1 * hpb1 - hpa1 * hmb1),
          -c * r * f * (hma * hpb1 - hpa * hmb1)};
}

inline FundamentalMatrix phi_hankel_form(const DissipationParams& p, const PhasePoint& pt) {
  auto z = phi_hankel_form_complex(p, pt);
  return detail::checked({z[0].real(), z[1].real(), z[2].real(), z[3].real()},
                         "phi_hankel_form");
}

/// Free-wave closed form (mu = 0): plane-wave propagation of each mode.
inline FundamentalMatrix closed_form_mu0(const PhasePoint& pt) {
  double s = (pt.t - pt.t0) * pt.r;
  return {std::cos(s), pt.r > 0.0 ? std::sin(s) / pt.r : pt.t - pt.t0,
          -pt.r * std::sin(s), std::cos(s)};
}

/// Fundamental matrix Phi(t, t0, xi) with representation routing:
/// integral rho -> J/Y form, otherwise the csc-weighted form; r below the
/// series-safe floor -> exact zero-frequency branch.
inline FundamentalMatrix fundamental_matrix(const DissipationParams& p, const PhasePoint& pt) {
  if (pt.r < detail::kZeroFrequencyFloor) return detail::zero_frequency(p, pt);
  if (detail::near_integer(p.rho)) return phi_real_form(p, pt);
  return phi_nonintegral_form(p, pt);
}

/// Model multiplier Psi_{k,s,rho,delta}(t, xi): the Hankel determinant
///
///   |xi|^k <xi>^{s+1-k} det [ H^-_rho(|xi|)   H^-_{rho+delta}((1+t)|xi|) ]
///                           [ H^+_rho(|xi|)   H^+_{rho+delta}((1+t)|xi|) ]
///
/// which is purely imaginary: 2i times the real J/Y determinant.
inline std::complex<double> psi_model(const ModelMultiplierParams& mp, double t, double r) {
  if (!(r > 0.0)) throw std::domain_error("psi_model: |xi| must be positive");
  if (!(t >= 0.0)) throw std::domain_error("psi_model: t must be nonnegative");
  double x = r, y = (1.0 + t) * r;
  double det = detail::besselj(mp.rho, x) * detail::bessely(mp.rho + mp.delta, y) -
               detail::bessely(mp.rho, x) * detail::besselj(mp.rho + mp.delta, y);
  double bracket = std::sqrt(1.0 + r * r);
  double pref = std::pow(r, mp.k) * std::pow(bracket, mp.s + 1.0 - mp.k);
  return {0.0, 2.0 * pref * det};
}

/// Pointwise check of the bridging identities expressing the matrix entries
/// through Psi at t0 = 0:
///   Phi1  =  (i pi/4)(1+t)^rho Psi_{1,0,rho-1,1},
///   Phi2  = -(i pi/4)(1+t)^rho Psi_{0,-1,rho,0},
///   dPhi1 =  (i pi/4)(1+t)^rho Psi_{2,1,rho-1,0},
///   dPhi2 = -(i pi/4)(1+t)^rho Psi_{1,0,rho,-1}.
/// Returns the maximal relative mismatch over the grid.
template <class Grid>
inline double phi_via_psi(const DissipationParams& p, double t, const Grid& xi_grid) {
  double worst = 0.0;
  const double scale = std::pow(1.0 + t, p.rho);
  const std::complex<double> ipi4(0.0, M_PI / 4.0);
  for (double r : xi_grid) {
    FundamentalMatrix m = fundamental_matrix(p, PhasePoint(t, 0.0, r));
    const ModelMultiplierParams tuples[4] = {{1.0, 0.0, p.rho - 1.0, 1.0},
                                             {0.0, -1.0, p.rho, 0.0},
                                             {2.0, 1.0, p.rho - 1.0, 0.0},
                                             {1.0, 0.0, p.rho, -1.0}};
    const double sign[4] = {1.0, -1.0, 1.0, -1.0};
    const double entries[4] = {m.phi1, m.phi2, m.dphi1, m.dphi2};
    for (int i = 0; i < 4; ++i) {
      std::complex<double> rhs = sign[i] * ipi4 * scale * psi_model(tuples[i], t, r);
      double mismatch = std::abs(rhs - std::complex<double>(entries[i], 0.0));
      double denom = std::max({std::abs(entries[i]), std::abs(rhs), 1e-30});
      worst = std::max(worst, mismatch / denom);
    }
  }
  return worst;
}

}  // namespace wdwave
