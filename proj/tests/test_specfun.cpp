#include "wdwave/specfun.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bessel_reference.hpp"

using namespace wdwave;
using Catch::Approx;

namespace {

double envelope(double tau) { return std::sqrt(2.0 / (M_PI * std::max(tau, 1e-300))); }

// deterministic uniform double in [lo, hi) from a raw 64-bit stream
double uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

}  // namespace

TEST_CASE("bessel_j against extended-precision reference table") {
  for (const auto& row : kBesselReference) {
    double j = bessel_j(Order(row.nu), row.tau);
    double scale = std::max(std::abs(row.j), 1e-3 * envelope(row.tau));
    INFO("nu=" << row.nu << " tau=" << row.tau);
    CHECK(std::abs(j - row.j) <= 1e-10 * scale);
  }
}

TEST_CASE("bessel_y against extended-precision reference table") {
  for (const auto& row : kBesselReference) {
    double y = bessel_y(Order(row.nu), row.tau);
    // near-zero guard: pure relative error is meaningless close to a zero of Y
    double scale = std::max(std::abs(row.y), 1e-2 * envelope(row.tau));
    INFO("nu=" << row.nu << " tau=" << row.tau);
    CHECK(std::abs(y - row.y) <= 1e-10 * scale);
  }
}

TEST_CASE("bessel_j examples") {
  // J_{1/2}(pi) = sqrt(2/pi^2) sin(pi) = 0
  CHECK(std::abs(bessel_j(Order(0.5), M_PI)) < 1e-14);
  CHECK(bessel_j(Order(0.0), 0.0) == 1.0);
  CHECK(bessel_j(Order(2.0), 0.0) == 0.0);
  // 30-term ascending series oracle value
  CHECK(bessel_j(Order(0.0), 1.0) == Approx(0.76519768655796655).epsilon(1e-12));
}

TEST_CASE("bessel_j domain errors") {
  CHECK_THROWS_AS(bessel_j(Order(0.0), -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(Order(-0.5), 0.0), std::domain_error);
  CHECK_THROWS_AS(Order(51.0), std::domain_error);
  CHECK_THROWS_AS(Order(std::nan("")), std::domain_error);
}

TEST_CASE("bessel_y examples") {
  // Y_{1/2}(tau) = -sqrt(2/(pi tau)) cos(tau); zero at tau = pi/2
  CHECK(std::abs(bessel_y(Order(0.5), M_PI / 2)) < 1e-14);
  for (double tau : {0.3, 1.0, 7.7, 14.0}) {
    CHECK(bessel_y(Order(0.5), tau) ==
          Approx(-std::sqrt(2.0 / (M_PI * tau)) * std::cos(tau)).margin(1e-13));
  }
  // definitional identity for non-integral order
  double nu = 0.3, tau = 2.0;
  double rhs = detail::cos_pi(nu) / detail::sin_pi(nu) * bessel_j(Order(nu), tau) -
               1.0 / detail::sin_pi(nu) * bessel_j(Order(-nu), tau);
  CHECK(bessel_y(Order(nu), tau) == Approx(rhs).epsilon(1e-12));
  // integer-order log series oracle value
  CHECK(bessel_y(Order(1.0), 1.0) == Approx(-0.78121282130028872).epsilon(1e-12));
  CHECK_THROWS_AS(bessel_y(Order(0.3), 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y(Order(0.3), -2.0), std::domain_error);
}

TEST_CASE("hankel identities and examples") {
  // plus + minus = 2 J, plus - minus = 2i Y
  for (double nu : {-1.2, -0.5, 0.0, 0.3, 1.0, 2.7}) {
    for (double tau : {0.05, 1.0, 10.0, 120.0}) {
      HankelValue h = hankel(Order(nu), tau);
      CHECK(std::abs(h.plus + h.minus - 2.0 * bessel_j(Order(nu), tau)) < 1e-12 * (1.0 + std::abs(h.plus)));
      CHECK(std::abs(h.plus - h.minus - std::complex<double>(0, 2) * bessel_y(Order(nu), tau)) <
            1e-12 * (1.0 + std::abs(h.plus)));
      CHECK(h.minus == std::conj(h.plus));
    }
  }
  // H^+_{1/2}(1) = sqrt(2/pi) (sin 1 - i cos 1)
  HankelValue h = hankel(Order(0.5), 1.0);
  std::complex<double> expected = std::sqrt(2.0 / M_PI) * std::complex<double>(std::sin(1.0), -std::cos(1.0));
  CHECK(std::abs(h.plus - expected) < 1e-13);
  CHECK_THROWS_AS(hankel(Order(0.3), 0.0), std::domain_error);
}

TEST_CASE("wronskian identity on the log grid") {
  // relative defect of H^+ (H^-)' - (H^+)' H^- = -4i/(pi z)
  const double orders[] = {-1.2, -0.5, 0.0, 0.3, 0.5, 1.0, 2.7};
  for (double nu : orders) {
    for (double z = 1e-2; z <= 1.0001e4; z *= std::sqrt(10.0)) {
      INFO("nu=" << nu << " z=" << z);
      CHECK(wronskian_defect(Order(nu), z) <= 1e-9);
    }
  }
  CHECK(wronskian_defect(Order(0.3), 2.0) <= 1e-9);
  CHECK(wronskian_defect(Order(0.5), 1.0) <= 1e-12);  // closed forms
  CHECK(wronskian_defect(Order(-0.25), 50.0) <= 1e-9);
  CHECK_THROWS_AS(wronskian_defect(Order(0.3), 0.0), std::domain_error);
}

TEST_CASE("three-term recurrence, randomized") {
  std::mt19937_64 rng(0x5eedULL);
  for (int i = 0; i < 10000; ++i) {
    double nu = uniform(rng, -5.0, 5.0);
    double tau = std::exp(uniform(rng, std::log(0.01), std::log(100.0)));
    double jm = bessel_j(Order(nu - 1.0), tau);
    double jp = bessel_j(Order(nu + 1.0), tau);
    double jc = bessel_j(Order(nu), tau);
    double lhs = jm + jp;
    double rhs = 2.0 * nu / tau * jc;
    double scale = std::max({std::abs(jm), std::abs(jp), std::abs(rhs)});
    INFO("nu=" << nu << " tau=" << tau);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(scale, 1e-300));
  }
}

TEST_CASE("derivative recursion against centered differences") {
  std::mt19937_64 rng(0xd1ffULL);
  for (int i = 0; i < 300; ++i) {
    double nu = uniform(rng, -4.0, 4.0);
    double tau = std::exp(uniform(rng, std::log(0.1), std::log(80.0)));
    double h = 1e-6 * std::max(1.0, tau);
    auto check = [&](auto f) {
      double d_rec = detail::recursion_derivative(f(nu, tau), f(nu - 1.0, tau), nu, tau);
      double d_fd = (f(nu, tau + h) - f(nu, tau - h)) / (2.0 * h);
      double scale = std::max(std::abs(d_rec), envelope(tau));
      CHECK(std::abs(d_rec - d_fd) <= 1e-5 * scale);
    };
    check([](double n, double t) { return detail::besselj(n, t); });
    check([](double n, double t) { return detail::bessely(n, t); });
  }
}

TEST_CASE("half-integer closed forms") {
  for (double tau = 0.01; tau <= 100.0; tau *= 1.37) {
    double env = envelope(tau);
    CHECK(std::abs(bessel_j(Order(0.5), tau) - env * std::sin(tau)) <= 1e-12 * env);
    CHECK(std::abs(bessel_j(Order(-0.5), tau) - env * std::cos(tau)) <= 1e-12 * env);
  }
}

TEST_CASE("lambda_fn values and continuity at zero") {
  CHECK(lambda_fn(Order(0.0), 0.0) == Approx(1.0));
  // 1/(2^{1/2} Gamma(3/2)) = sqrt(2/pi)
  CHECK(lambda_fn(Order(0.5), 0.0) == Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
  // continuity at zero: the leading correction is Lambda(0) tau^2/(4(nu+1))
  CHECK(std::abs(lambda_fn(Order(0.3), 1e-4) - lambda_fn(Order(0.3), 0.0)) < 1e-8);
  double corr = lambda_fn(Order(0.3), 0.0) * 0.01 * 0.01 / (4.0 * 1.3);
  CHECK(std::abs(lambda_fn(Order(0.3), 0.01) - lambda_fn(Order(0.3), 0.0)) ==
        Approx(corr).epsilon(1e-3));
  // entire continuation equals tau^{-nu} J_nu where both paths apply
  for (double nu : {-2.5, -0.3, 1.7}) {
    for (double tau : {0.5, 3.0, 30.0}) {
      CHECK(lambda_fn(Order(nu), tau) ==
            Approx(std::pow(tau, -nu) * bessel_j(Order(nu), tau)).epsilon(1e-10));
    }
  }
}

TEST_CASE("weber_log_split boundedness and values") {
  // A_0 stays bounded as tau -> 0+
  double a3 = weber_log_split(Order(0.0), 1e-3);
  double a6 = weber_log_split(Order(0.0), 1e-6);
  CHECK(std::abs(a3 - a6) < 1e-2);
  // log(1) = 0, so A_0(1) = Y_0(1)
  CHECK(weber_log_split(Order(0.0), 1.0) == Approx(bessel_y(Order(0.0), 1.0)).epsilon(1e-13));
  // tau A_1(tau) -> -2/pi
  double tau = 1e-4;
  CHECK(std::abs(tau * weber_log_split(Order(1.0), tau) - (-2.0 / M_PI)) < 1e-4);
  // reflection to negative integers: A_{-1} = -A_1
  CHECK(weber_log_split(Order(-1.0), 0.7) == Approx(-weber_log_split(Order(1.0), 0.7)));
  // consistency with bessel_y at moderate argument, both branches
  for (double t : {2.0, 14.0, 40.0}) {
    double an = weber_log_split(Order(2.0), t);
    double direct = bessel_y(Order(2.0), t) - 2.0 / M_PI * bessel_j(Order(2.0), t) * std::log(t);
    CHECK(an == Approx(direct).margin(1e-11));
  }
  CHECK_THROWS_AS(weber_log_split(Order(0.5), 1.0), std::domain_error);
}

TEST_CASE("hankel_amplitude symbol order") {
  // |a| = sqrt(2/(pi tau)) exactly at nu = 1/2
  for (double tau : {1.0, 10.0, 1e3}) {
    AmplitudeSymbol a = hankel_amplitude(Order(0.5), tau);
    CHECK(std::abs(a.value) == Approx(envelope(tau)).epsilon(1e-12));
    CHECK(a.order_bound == -0.5);
  }
  // |a| tau^{1/2} stable across three decades
  double s3 = std::abs(hankel_amplitude(Order(0.3), 1e3).value) * std::sqrt(1e3);
  double s6 = std::abs(hankel_amplitude(Order(0.3), 1e6).value) * std::sqrt(1e6);
  CHECK(std::abs(s3 - s6) < 1e-3);
  // boundary evaluation at tau = K is finite
  AmplitudeSymbol ak = hankel_amplitude(Order(0.0), 1.0);
  CHECK(std::isfinite(std::abs(ak.value)));
  CHECK_THROWS_AS(hankel_amplitude(Order(0.0), 0.5), std::domain_error);
  // |a| tau^{1/2} bounded on [K, 1e6]
  for (double nu : {-1.2, 0.0, 0.7, 2.7}) {
    for (double tau = 1.0; tau <= 1e6; tau *= 10.0) {
      CHECK(std::abs(hankel_amplitude(Order(nu), tau).value) * std::sqrt(tau) < 5.0);
    }
  }
}

TEST_CASE("small-argument bounds for Hankel functions") {
  // constants fitted once against an extended-precision sweep and frozen
  const struct { double nu, c; } bounds[] = {
      {-1.2, 0.79}, {-0.5, 0.81}, {0.3, 1.19}, {0.5, 0.81}, {1.0, 0.76}, {2.7, 3.36}};
  for (const auto& b : bounds) {
    for (double tau = 1e-6; tau <= 0.5; tau *= 2.3) {
      INFO("nu=" << b.nu << " tau=" << tau);
      CHECK(std::abs(hankel(Order(b.nu), tau).plus) <= b.c * std::pow(tau, -std::abs(b.nu)));
    }
  }
  for (double tau = 1e-6; tau <= 0.5; tau *= 2.3) {
    CHECK(std::abs(hankel(Order(0.0), tau).plus) <= 1.52 * (-std::log(tau)));
  }
}

TEST_CASE("large-argument modulus approaches the envelope") {
  for (double nu : {-1.2, 0.0, 0.5, 2.7}) {
    double m = std::abs(hankel(Order(nu), 1e4).plus) * std::sqrt(M_PI * 1e4 / 2.0);
    CHECK(std::abs(m - 1.0) < 1e-2);
  }
}

TEST_CASE("series and asymptotic branches agree across the split") {
  for (double nu : {-3.0, -0.75, 0.0, 0.25, 2.0, 5.0, 10.0}) {
    for (double tau = 12.0; tau <= 18.0; tau += 0.5) {
      long double lam = detail::lambda_series(nu, tau);
      double j_series = (double)(powl((long double)tau, (long double)nu) * lam);
      detail::AsymptoticPQ pq = detail::asymptotic_pq(nu, tau);
      long double w = (long double)tau - ((long double)nu / 2.0L + 0.25L) * (long double)M_PI;
      double j_asym = (double)(sqrtl(2.0L / ((long double)M_PI * tau)) *
                               (pq.p * cosl(w) - pq.q * sinl(w)));
      INFO("nu=" << nu << " tau=" << tau);
      CHECK(std::abs(j_series - j_asym) <= 1e-10 * std::max(std::abs(j_series), envelope(tau)));
    }
  }
}
