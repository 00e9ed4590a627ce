#pragma once

// Bessel functions J_nu, Weber functions Y_nu and Hankel functions H^{+-}_nu
// for arbitrary real order, together with the split forms and symbol bounds
// the multiplier construction relies on.
//
// Evaluation strategy: ascending power series of Lambda_nu(tau) = tau^{-nu}
// J_nu(tau) for tau <= 15, Hankel-type asymptotic expansion for tau > 15.
// Both branches overlap on [12, 18] to better than 1e-10. Accuracy degrades
// in the transition region tau ~ |nu| for very large orders; callers in this
// library stay inside |nu| <= 10 where the relative error target is 1e-10.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace wdwave {

/// Bessel order. Finite, |nu| <= 50.
struct Order {
  double nu;
  explicit Order(double value) : nu(value) {
    if (!std::isfinite(nu) || std::abs(nu) > 50.0)
      throw std::domain_error("Order: nu must be finite with |nu| <= 50, got " +
                              std::to_string(value));
  }
};

/// The pair H^+_nu(tau), H^-_nu(tau). For real order and positive argument
/// minus is the complex conjugate of plus.
struct HankelValue {
  std::complex<double> plus;
  std::complex<double> minus;
};

/// Amplitude a^+_nu(tau) = e^{-i tau} H^+_nu(tau) of the oscillatory Hankel
/// factorization (a^- is the conjugate). |value| decays like tau^{-1/2}.
struct AmplitudeSymbol {
  std::complex<double> value;
  double order_bound = -0.5;
};

namespace detail {

inline constexpr double kSeriesAsymptoticSplit = 15.0;
inline constexpr double kIntegerOrderTol = 1e-8;

inline bool near_integer(double x, double tol = kIntegerOrderTol) {
  return std::abs(x - std::round(x)) < tol;
}

/// sin(pi x) with exact zeros at integers.
inline double sin_pi(double x) {
  double n = std::round(x);
  double r = x - n;
  double s = std::sin(M_PI * r);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

/// cos(pi x) with exact zeros at half-integers.
inline double cos_pi(double x) { return sin_pi(x + 0.5); }

/// 1/Gamma(x) on the whole real line; zero at the poles of Gamma.
inline long double reciprocal_gamma(long double x) {
  if (x > 0.0L) return expl(-lgammal(x));
  long double n = roundl(x);
  if (fabsl(x - n) < 1e-17L) return 0.0L;  // pole of Gamma
  // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi, and 1-x >= 1 here
  long double sp = sinl((long double)M_PI * (x - n));
  if (static_cast<long long>(n) % 2 != 0) sp = -sp;
  return expl(lgammal(1.0L - x)) * sp / (long double)M_PI;
}

/// Lambda_nu(tau) = tau^{-nu} J_nu(tau) by its entire ascending series,
/// accumulated in extended precision. Valid for any tau >= 0 (used for
/// tau <= 15).
inline long double lambda_series(double nu, double tau) {
  const long double q = (long double)tau * tau / 4.0L;
  long double term = powl(2.0L, (long double)-nu);  // m = 0 numerator 2^{-nu}
  long double sum = 0.0L;
  long double sign = 1.0L;
  // term_m = 2^{-nu} q^m / m!, multiplied by 1/Gamma(nu+m+1) when added
  for (int m = 0; m < 200; ++m) {
    long double contrib = sign * term * reciprocal_gamma((long double)nu + m + 1.0L);
    sum += contrib;
    if (m > 2 && fabsl(term) < 1e-25L * (fabsl(sum) + 1e-30L) && fabsl(contrib) < 1e-25L * (fabsl(sum) + 1e-30L))
      break;
    term *= q / (m + 1.0L);
    sign = -sign;
  }
  return sum;
}

struct AsymptoticPQ {
  long double p, q;
  long double truncation;  // magnitude of the first omitted term
};

/// P, Q of the large-argument expansion
///   J_nu = sqrt(2/(pi tau)) (P cos w - Q sin w),  w = tau - nu pi/2 - pi/4,
///   Y_nu = sqrt(2/(pi tau)) (P sin w + Q cos w).
inline AsymptoticPQ asymptotic_pq(double nu, double tau) {
  // Optimal truncation: sum everything strictly before the smallest term.
  // Terms may grow first when 4 nu^2 > tau; the usable error is the size of
  // the globally smallest term.
  constexpr int kMaxTerms = 80;
  long double terms[kMaxTerms + 1];
  const long double fournu2 = 4.0L * (long double)nu * nu;
  long double term = 1.0L;  // a_k / tau^k, k = 0
  int count = 0, argmin = 0;
  long double minmag = std::numeric_limits<long double>::max();
  for (int k = 1; k <= kMaxTerms; ++k) {
    term *= (fournu2 - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) / (8.0L * k * (long double)tau);
    terms[k] = term;
    count = k;
    long double mag = fabsl(term);
    if (mag < minmag) {
      minmag = mag;
      argmin = k;
    }
    if (mag < 1e-24L) {  // converged outright
      argmin = k + 1;
      minmag = mag;
      break;
    }
    if (mag > 1e3L * minmag) break;  // far past the optimal point
  }
  long double p = 1.0L, q = 0.0L;
  // signs: P = 1 - t2 + t4 - ..., Q = t1 - t3 + t5 - ...
  for (int k = 1; k < argmin && k <= count; ++k) {
    long double s = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0)
      p += s * terms[k];
    else
      q += s * terms[k];
  }
  return {p, q, minmag};
}

inline void check_tau_positive(double tau, const char* who) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::domain_error(std::string(who) + ": argument must be positive, got " +
                            std::to_string(tau));
}

inline double besselj(double nu, double tau) {
  if (tau <= kSeriesAsymptoticSplit)
    return (double)(powl((long double)tau, (long double)nu) * lambda_series(nu, tau));
  AsymptoticPQ pq = asymptotic_pq(nu, tau);
  long double w = (long double)tau - ((long double)nu / 2.0L + 0.25L) * (long double)M_PI;
  return (double)(sqrtl(2.0L / ((long double)M_PI * tau)) * (pq.p * cosl(w) - pq.q * sinl(w)));
}

inline double digamma_int(int m) {
  // psi(m) for m >= 1
  constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
  double s = -kEulerGamma;
  for (int j = 1; j < m; ++j) s += 1.0 / j;
  return s;
}

/// A_n(tau) = Y_n(tau) - (2/pi) J_n(tau) log(tau) for integer n >= 0,
/// tau <= 15, evaluated without forming log(tau): the log enters Y_n only
/// through log(tau/2), so A_n = -(2/pi) log(2) J_n + the two series of Y_n.
inline long double weber_regular_part(int n, double tau) {
  const long double x2 = (long double)tau / 2.0L;
  const long double q = x2 * x2;
  long double finite = 0.0L;
  if (n > 0) {
    long double c = expl(lgammal((long double)n));  // (n-1)!
    long double pw = powl(x2, (long double)-n);
    for (int k = 0; k < n; ++k) {
      finite += c * pw;
      // c_{k+1} = c_k * k! gymnastics: (n-k-2)!/(k+1)! = c * 1/((n-k-1)(k+1))
      if (k + 1 < n) c /= (long double)(n - k - 1) * (k + 1);
      pw *= q;
    }
  }
  long double psisum = 0.0L;
  long double term = powl(x2, (long double)n) * reciprocal_gamma((long double)n + 1.0L);
  long double psi_a = (long double)digamma_int(1);      // psi(k+1)
  long double psi_b = (long double)digamma_int(n + 1);  // psi(n+k+1)
  for (int k = 0; k < 200; ++k) {
    long double contrib = term * (psi_a + psi_b);
    psisum += ((k % 2 == 0) ? contrib : -contrib);
    term *= q / ((k + 1.0L) * (n + k + 1.0L));
    psi_a += 1.0L / (k + 1.0L);
    psi_b += 1.0L / (n + k + 1.0L);
    if (fabsl(term) < 1e-26L * (fabsl(psisum) + 1e-30L) && k > 2) break;
  }
  long double jn = powl((long double)tau, (long double)n) * lambda_series((double)n, tau);
  return -2.0L / (long double)M_PI * logl(2.0L) * jn - finite / (long double)M_PI -
         psisum / (long double)M_PI;
}

inline double bessely(double nu, double tau) {
  if (tau > kSeriesAsymptoticSplit) {
    AsymptoticPQ pq = asymptotic_pq(nu, tau);
    long double w = (long double)tau - ((long double)nu / 2.0L + 0.25L) * (long double)M_PI;
    return (double)(sqrtl(2.0L / ((long double)M_PI * tau)) * (pq.p * sinl(w) + pq.q * cosl(w)));
  }
  if (near_integer(nu)) {
    int n = (int)std::llround(nu);
    int an = std::abs(n);
    long double jn = powl((long double)tau, (long double)an) * lambda_series((double)an, tau);
    long double y = 2.0L / (long double)M_PI * jn * logl((long double)tau) +
                    weber_regular_part(an, tau);
    return (n < 0 && an % 2 != 0) ? -(double)y : (double)y;
  }
  // connection formula, Y_nu = cot(nu pi) J_nu - csc(nu pi) J_{-nu}
  double s = sin_pi(nu), c = cos_pi(nu);
  return (c * besselj(nu, tau) - besselj(-nu, tau)) / s;
}

inline std::complex<double> hankel_plus(double nu, double tau) {
  return {besselj(nu, tau), bessely(nu, tau)};
}

/// d/dtau of C_nu via the recursion nu C_nu(tau) + tau C'_nu(tau) = tau C_{nu-1}(tau).
inline double recursion_derivative(double c_nu, double c_num1, double nu, double tau) {
  return c_num1 - nu / tau * c_nu;
}

}  // namespace detail

/// J_nu(tau). tau = 0 is allowed for nu >= 0 (series limit).
inline double bessel_j(Order order, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw std::domain_error("bessel_j: argument must be nonnegative");
  if (tau == 0.0) {
    if (order.nu < 0.0) throw std::domain_error("bessel_j: tau = 0 needs nu >= 0");
    return order.nu == 0.0 ? 1.0 : 0.0;
  }
  return detail::besselj(order.nu, tau);
}

/// Y_nu(tau) for tau > 0. Non-integral orders use the connection formula
/// with J_{+-nu}; orders within 1e-8 of an integer switch to the dedicated
/// integer-order series (log and digamma terms) to avoid the cot/csc poles.
inline double bessel_y(Order order, double tau) {
  detail::check_tau_positive(tau, "bessel_y");
  return detail::bessely(order.nu, tau);
}

/// H^{+-}_nu(tau) = J_nu(tau) +- i Y_nu(tau).
inline HankelValue hankel(Order order, double tau) {
  detail::check_tau_positive(tau, "hankel");
  std::complex<double> plus = detail::hankel_plus(order.nu, tau);
  return {plus, std::conj(plus)};
}

/// Lambda_nu(tau) = tau^{-nu} J_nu(tau), entire in nu and tau;
/// Lambda_nu(0) = 1/(2^nu Gamma(nu+1)) != 0.
inline double lambda_fn(Order order, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw std::domain_error("lambda_fn: argument must be nonnegative");
  if (tau <= detail::kSeriesAsymptoticSplit)
    return (double)detail::lambda_series(order.nu, tau);
  return std::pow(tau, -order.nu) * detail::besselj(order.nu, tau);
}

/// A_n(tau) = Y_n(tau) - (2/pi) J_n(tau) log(tau) for integer n;
/// tau^n A_n(tau) extends continuously to tau = 0 with nonzero limit.
inline double weber_log_split(Order order, double tau) {
  detail::check_tau_positive(tau, "weber_log_split");
  if (!detail::near_integer(order.nu))
    throw std::domain_error("weber_log_split: order must be an integer");
  int n = (int)std::llround(order.nu);
  int an = std::abs(n);
  double a;
  if (tau <= detail::kSeriesAsymptoticSplit) {
    a = (double)detail::weber_regular_part(an, tau);
  } else {
    a = detail::bessely(an, tau) -
        2.0 / M_PI * detail::besselj(an, tau) * std::log(tau);
  }
  return (n < 0 && an % 2 != 0) ? -a : a;
}

/// a^+_nu(tau) = e^{-i tau} H^+_nu(tau), the classical symbol of order -1/2
/// on [zone_k, infinity).
inline AmplitudeSymbol hankel_amplitude(Order order, double tau, double zone_k = 1.0) {
  if (!(tau >= zone_k))
    throw std::domain_error("hankel_amplitude: argument below the zone constant");
  std::complex<double> plus = detail::hankel_plus(order.nu, tau);
  return {std::exp(std::complex<double>(0.0, -tau)) * plus, -0.5};
}

/// Relative defect of the Hankel Wronskian identity
///   H^+_nu (H^-_nu)' - (H^+_nu)' H^-_nu = -4i/(pi z),
/// with derivatives taken through the downward order recursion.
inline double wronskian_defect(Order order, double z) {
  detail::check_tau_positive(z, "wronskian_defect");
  double nu = order.nu;
  std::complex<double> hp = detail::hankel_plus(nu, z);
  std::complex<double> hp1 = detail::hankel_plus(nu - 1.0, z);
  std::complex<double> hm = std::conj(hp), hm1 = std::conj(hp1);
  std::complex<double> dhp = hp1 - nu / z * hp;
  std::complex<double> dhm = hm1 - nu / z * hm;
  std::complex<double> w = hp * dhm - dhp * hm;
  std::complex<double> expected(0.0, -4.0 / (M_PI * z));
  return std::abs(w - expected) / (4.0 / (M_PI * z));
}

}  // namespace wdwave
