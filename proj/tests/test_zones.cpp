#include "wdwave/zones.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace wdwave;
using Catch::Approx;

namespace {
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (rng() >> 11) * 0x1.0p-53 * (hi - lo);
}
}  // namespace

TEST_CASE("zone classification") {
  ZoneConfig cfg{1.0};
  CHECK(classify(cfg, 0.0, 2.0) == ZoneLabel::Z1);
  CHECK(classify(cfg, 9.0, 0.05) == ZoneLabel::Z3);
  CHECK(classify(cfg, 9.0, 0.5) == ZoneLabel::Z2);
  // boundaries resolve to the lowest admissible index
  CHECK(classify(cfg, 3.0, 1.0) == ZoneLabel::Z1);
  CHECK(classify(cfg, 3.0, 0.25) == ZoneLabel::Z2);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 5000; ++i) {
    double t = uniform(rng, 0.0, 1e3);
    double r = std::exp(uniform(rng, std::log(1e-6), std::log(1e3)));
    ZoneLabel z = classify(cfg, t, r);
    if (z == ZoneLabel::Z1) CHECK(r >= cfg.K);
    if (z == ZoneLabel::Z3) CHECK((1.0 + t) * r <= cfg.K);
    if (z == ZoneLabel::Z2) {
      CHECK(r <= cfg.K);
      CHECK((1.0 + t) * r >= cfg.K);
    }
  }
  CHECK_THROWS_AS(classify(cfg, -1.0, 0.5), std::domain_error);
}

TEST_CASE("cutoffs form a partition of unity with the right supports") {
  ZoneConfig cfg{1.0};
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5000; ++i) {
    double t = uniform(rng, 0.0, 1e4);
    double r = std::exp(uniform(rng, std::log(1e-7), std::log(1e3)));
    CutoffWeights w = cutoffs(cfg, t, r);
    CHECK(std::abs(w.phi1 + w.phi2 + w.phi3 - 1.0) <= 1e-15);
    CHECK((w.phi1 >= 0.0 && w.phi1 <= 1.0));
    CHECK((w.phi2 >= 0.0 && w.phi2 <= 1.0));
    CHECK((w.phi3 >= 0.0 && w.phi3 <= 1.0));
  }
  // |xi|/K = 3 -> pure zone 1; both arguments small -> pure zone 3
  CutoffWeights a = cutoffs(cfg, 5.0, 3.0);
  CHECK(a.phi1 == 1.0);
  CHECK(a.phi2 == 0.0);
  CHECK(a.phi3 == 0.0);
  CutoffWeights b = cutoffs(cfg, 0.0, 0.3);
  CHECK(b.phi1 == 0.0);
  CHECK(b.phi2 == 0.0);
  CHECK(b.phi3 == 1.0);
  // supports: phi1 dies below K/2, phi3 dies once (1+t)|xi| > 2K
  CHECK(cutoffs(cfg, 0.0, 0.49).phi1 == 0.0);
  CHECK(cutoffs(cfg, 100.0, 0.1).phi3 == 0.0);
}

TEST_CASE("cutoff transition is smooth and monotone") {
  // psi' <= 0: the zone-1 weight is nondecreasing in r
  ZoneConfig cfg{1.0};
  double prev = -1.0;
  for (double r = 0.4; r <= 2.2; r += 0.01) {
    double cur = cutoffs(cfg, 0.0, r).phi1;
    CHECK(cur >= prev - 1e-15);
    prev = cur;
  }
}

TEST_CASE("dyadic weights") {
  ZoneConfig cfg{1.0};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    double r = std::exp(uniform(rng, std::log(1e-8), std::log(1e8)));
    auto w = dyadic_weights(r, cfg);
    CHECK(w.size() >= 1);
    CHECK(w.size() <= 2);
    double sum = 0.0;
    for (auto& [j, x] : w) {
      sum += x;
      double scaled = std::ldexp(r, j);
      CHECK(scaled >= 0.5);
      CHECK(scaled <= 2.0);
    }
    CHECK(sum == Approx(1.0).margin(1e-12));

    // doubling r shifts the index down by one with identical weights
    auto w2 = dyadic_weights(2.0 * r, cfg);
    REQUIRE(w2.size() == w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(w2[k].first == w[k].first - 1);
      CHECK(w2[k].second == Approx(w[k].second).margin(1e-15));
    }
  }
  // a single covering index carries weight one
  auto w1 = dyadic_weights(1.0, cfg);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].second == 1.0);
  CHECK_THROWS_AS(dyadic_weights(0.0, cfg), std::domain_error);
}

TEST_CASE("dual pairs") {
  DualPair p2 = DualPair::from_p(2.0);
  CHECK(p2.q == 2.0);
  CHECK(p2.gap() == 0.0);
  DualPair p = DualPair::from_p(1.5);
  CHECK(p.p * p.q == Approx(p.p + p.q));
  CHECK(p.gap() == Approx(1.0 / 1.5 - 1.0 / 3.0));
  CHECK_THROWS_AS(DualPair::from_p(1.0), std::domain_error);
  CHECK_THROWS_AS(DualPair::from_p(2.5), std::domain_error);
  CHECK_NOTHROW(DualPair::from_p(1.0001));
}

TEST_CASE("sup-norm prediction table") {
  // (k=1, s=0, rho=-1/2, delta=1): first case, exponent -1/2
  auto a = sup_norm_prediction(1.0, 0.0, -0.5, 1.0);
  REQUIRE(a.has_value());
  CHECK(a->exponent == -0.5);
  CHECK(a->log_power == 0.0);
  // (k=0, s=-1, rho=0, delta=0): the mu = 1 log case
  auto b = sup_norm_prediction(0.0, -1.0, 0.0, 0.0);
  REQUIRE(b.has_value());
  CHECK(b->exponent == 0.0);
  CHECK(b->log_power == 1.0);
  // s > 0 or k < |delta| is unbounded
  CHECK_FALSE(sup_norm_prediction(2.0, 1.0, -0.5, 0.0).has_value());
  CHECK_FALSE(sup_norm_prediction(0.5, 0.0, -0.5, 1.0).has_value());
  // growth case
  auto c = sup_norm_prediction(0.0, 0.0, -1.5, 0.0);
  CHECK(c->exponent == 1.5);
  // proof-derived rho = 0, k > 1/2 row
  auto d = sup_norm_prediction(1.0, 0.0, 0.0, -1.0);
  CHECK(d->exponent == -0.5);
  CHECK(d->log_power == 0.0);
  CHECK_FALSE(d->note.empty());
}

TEST_CASE("lp-lq prediction") {
  // p = q = 2, k = 1, rho = -1/2: boundary d = 1/2, both branches give -1/2
  DualPair l2 = DualPair::from_p(2.0);
  auto a = lp_lq_prediction(1.0, 0.0, -0.5, 1.0, l2, 3);
  CHECK(a.exponent == -0.5);
  // regularity r = n g + s; at p = 2 it reduces to s
  CHECK(lp_lq_prediction(0.0, -1.0, -0.5, 0.0, l2, 3).regularity == -1.0);
  DualPair p15 = DualPair::from_p(1.5);
  auto b = lp_lq_prediction(1.0, 0.0, -1.5, 1.0, p15, 3);
  CHECK(b.regularity == Approx(3.0 * p15.gap()));
  // d > 1/2 branch
  double g = p15.gap();
  double d = 2.0 * g + 1.0 - 1.5;  // (n+1)/2 g + k - |rho|, n = 3
  REQUIRE(d < 0.5);
  CHECK(b.exponent == Approx(-3.0 * g + 1.5 - 1.0));
  auto c = lp_lq_prediction(2.0, 0.0, -0.5, 0.0, p15, 3);
  CHECK(c.exponent == Approx(-g - 0.5));
  // rho = 0 log case carries a fractional log power and the theta caveat
  auto e = lp_lq_prediction(0.0, 0.0, 0.0, 0.0, p15, 1);
  CHECK(e.log_power > 0.0);
  CHECK(e.log_power < 1.0);
  CHECK_FALSE(e.note.empty());
  CHECK_THROWS_AS(lp_lq_prediction(0.5, 0.0, 0.0, 1.0, l2, 1), std::domain_error);
}

TEST_CASE("operator predictions reproduce the L2 tables") {
  DualPair l2 = DualPair::from_p(2.0);
  // solution operator: growth 1-mu below one, log at one, bounded above one
  CHECK(solution_op_prediction(0.5, l2, 3).exponent == 0.5);
  CHECK(solution_op_prediction(0.5, l2, 3).log_power == 0.0);
  CHECK(solution_op_prediction(1.0, l2, 3).exponent == 0.0);
  CHECK(solution_op_prediction(1.0, l2, 3).log_power == 1.0);
  CHECK(solution_op_prediction(3.0, l2, 3).exponent == 0.0);
  // energy operator: -mu/2 until the critical value, then -1
  CHECK(energy_op_prediction(1.0, l2, 1).exponent == -0.5);
  CHECK(energy_op_prediction(2.0, l2, 1).exponent == -1.0);
  CHECK(energy_op_prediction(5.0, l2, 1).exponent == -1.0);
  // continuity and kink location in mu at p = 2
  double eps = 1e-9;
  CHECK(energy_op_prediction(2.0 - eps, l2, 2).exponent ==
        Approx(energy_op_prediction(2.0 + eps, l2, 2).exponent).margin(1e-8));
  for (double mu : {0.3, 0.99, 1.01, 1.7, 2.5, 7.0}) {
    CHECK(solution_op_prediction(mu, l2, 2).exponent ==
          Approx(mu < 1.0 ? 1.0 - mu : 0.0).margin(1e-12));
  }
}

TEST_CASE("energy decay alpha") {
  CHECK(energy_decay_alpha(1.0) == 1.0);
  CHECK(energy_decay_alpha(2.0) == 2.0);
  CHECK(energy_decay_alpha(7.0) == 2.0);
  CHECK_THROWS_AS(energy_decay_alpha(0.0), std::domain_error);
}

TEST_CASE("duhamel kernel prediction equals the energy-operator one") {
  for (double mu : {0.5, 1.0, 2.0, 3.0}) {
    for (double p : {1.2, 1.5, 2.0}) {
      for (int n : {1, 2, 3}) {
        DualPair pair = DualPair::from_p(p);
        CHECK(duhamel_kernel_prediction(mu, pair, n).exponent ==
              energy_op_prediction(mu, pair, n).exponent);
        CHECK(duhamel_kernel_prediction(mu, pair, n).regularity ==
              energy_op_prediction(mu, pair, n).regularity);
      }
    }
  }
  // tau = t end of the two-variable bound: ratio one, no decay left
  DecayPrediction k = duhamel_kernel_prediction(2.0, DualPair::from_p(2.0), 1);
  CHECK(std::pow(1.0, k.exponent) == 1.0);
  CHECK(k.exponent == -1.0);
}

TEST_CASE("kernel sup limit formula") {
  DecayPrediction k = kernel_sup_prediction(2.0, 1);
  CHECK(k.exponent == -1.0);
  CHECK_FALSE(k.note.empty());
  CHECK(kernel_sup_prediction(6.0, 1).exponent == -2.0);
}
