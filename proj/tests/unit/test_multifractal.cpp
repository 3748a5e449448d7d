#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

#include "carpetdim/error.hpp"
#include "carpetdim/multifractal.hpp"

using namespace carpetdim;
using doctest::Approx;

namespace {

oracle::Weights ld(const WeightVector& w) { return {w.values().begin(), w.values().end()}; }

}  // namespace

TEST_CASE("frozen values for (2/3, 1/3)") {
  const WeightVector w({2.0 / 3.0, 1.0 / 3.0});
  const auto kt = kappa_theta(w, 2.0);
  CHECK(kt.kappa == Approx(0.7849625007211561814537).epsilon(1e-14));
  CHECK(kt.theta == Approx(0.7219280948873623478703).epsilon(1e-14));
  CHECK(lq_exponent(w, 2.0) == Approx(0.8479969065549500150).epsilon(1e-14));
  CHECK(lq_exponent(w, 1.0) == Approx(0.0).epsilon(1e-15));
  CHECK(lq_exponent(w, 0.0) == Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("zero weights are dropped: (3/4, 0, 1/4) in base 3") {
  const WeightVector w({0.75, 0.0, 0.25});
  CHECK(lq_exponent(w, 2.0) == Approx(0.4278157399964451441015).epsilon(1e-14));
  const SpectrumCurve curve(w);
  CHECK(curve.alpha_min() == Approx(-std::log(0.75) / std::log(3.0)));
  CHECK(curve.alpha_max() == Approx(std::log(4.0) / std::log(3.0)));
  const auto tilted = tilted_weights(w, 3.0);
  CHECK(tilted[1] == 0.0);
  CHECK(tilted[0] == Approx(27.0 / 28.0));
}

TEST_CASE("kernels agree with long-double oracle") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = testgen::weights(testgen::integer(2, 5), trial % 2);
    const auto o = ld(w);
    for (double q : {-7.5, -1.0, 0.0, 0.5, 1.0, 2.0, 13.0}) {
      const auto kt = kappa_theta(w, q);
      CHECK(lq_exponent(w, q) == Approx(static_cast<double>(oracle::T(o, q))).epsilon(1e-12));
      CHECK(kt.kappa == Approx(static_cast<double>(oracle::kappa(o, q))).epsilon(1e-12));
      CHECK(kt.theta == Approx(static_cast<double>(oracle::theta(o, q))).epsilon(1e-12));
    }
  }
}

TEST_CASE("Legendre identity on the default grid") {
  for (int trial = 0; trial < 8; ++trial) {
    const SpectrumCurve curve(testgen::weights(testgen::integer(2, 6), 0));
    REQUIRE(curve.points().size() == 81);
    for (const auto& p : curve.points()) CHECK(std::abs(p.theta - (p.q * p.kappa - p.T)) <= 1e-10);
  }
}

TEST_CASE("spectrum properties on dense alpha grids") {
  for (int trial = 0; trial < 10; ++trial) {
    const SpectrumCurve curve(testgen::weights(testgen::integer(2, 6), 0));
    if (curve.is_single_point()) continue;
    const double lo = curve.alpha_min();
    const double hi = curve.alpha_max();
    std::vector<double> d(1000);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double a = lo + (hi - lo) * static_cast<double>(i) / 999.0;
      d[i] = curve.D(a);
      CHECK(d[i] <= a + 1e-12);
      CHECK(d[i] >= -1e-12);
    }
    for (std::size_t i = 1; i + 1 < d.size(); ++i) CHECK(d[i - 1] - 2 * d[i] + d[i + 1] <= 1e-8);
    const double top = std::log(static_cast<double>(curve.weights().support().size())) / curve.base_log();
    CHECK(curve.D(curve.at(0.0).kappa) == Approx(top).epsilon(1e-10));
    CHECK(*std::max_element(d.begin(), d.end()) <= top + 1e-8);
  }
}

TEST_CASE("D matches the independent Legendre transform") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = testgen::weights(testgen::integer(2, 4), 0);
    const SpectrumCurve curve(w);
    if (curve.is_single_point()) continue;
    const auto o = ld(w);
    for (int i = 1; i < 10; ++i) {
      const double a = curve.alpha_min() + (curve.alpha_max() - curve.alpha_min()) * i / 10.0;
      CHECK(curve.D(a) == Approx(static_cast<double>(oracle::D(o, a))).epsilon(1e-9));
    }
  }
}

TEST_CASE("D at kappa_q equals theta_q") {
  const SpectrumCurve curve(WeightVector({0.5, 0.3, 0.2}));
  for (double q : {-3.0, -0.5, 0.7, 1.0, 4.0}) {
    const auto kt = curve.at(q);
    CHECK(curve.D(kt.kappa) == Approx(kt.theta).epsilon(1e-10));
    CHECK(curve.q_at_alpha(kt.kappa) == Approx(q).epsilon(1e-8));
  }
  CHECK(curve.dimension() == Approx(curve.D(curve.dimension())).epsilon(1e-12));
}

TEST_CASE("spectrum endpoints use extremal multiplicities") {
  const SpectrumCurve curve(WeightVector({0.4, 0.4, 0.2}));
  CHECK(curve.D(curve.alpha_min()) == Approx(std::log(2.0) / std::log(3.0)));
  CHECK(curve.D(curve.alpha_max()) == 0.0);
  CHECK(std::isinf(curve.q_at_alpha(curve.alpha_min())));
}

TEST_CASE("degenerate spectra") {
  const SpectrumCurve dirac(WeightVector({0.0, 1.0, 0.0}));
  CHECK(dirac.is_dirac());
  CHECK(dirac.alpha_min() == 0.0);
  CHECK(dirac.D(0.0) == 0.0);
  CHECK(dirac.dimension() == 0.0);

  const SpectrumCurve flat(WeightVector({0.25, 0.25, 0.0, 0.25, 0.25}));
  CHECK(flat.is_single_point());
  const double a = std::log(4.0) / std::log(5.0);
  CHECK(flat.alpha_min() == Approx(a));
  CHECK(flat.D(a) == Approx(a));
}

TEST_CASE("spectrum queries outside the interval fail") {
  const WeightVector w({2.0 / 3.0, 1.0 / 3.0});
  CHECK_THROWS_AS(spectrum_at_alpha(w, 0.1), Error);
  CHECK_THROWS_AS(spectrum_at_alpha(w, 1.7), Error);
  try {
    spectrum_at_alpha(w, 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaOutOfRange);
  }
}

TEST_CASE("packing count against exhaustive words") {
  for (int trial = 0; trial < 12; ++trial) {
    const auto w = testgen::weights(3, trial % 2);
    const SpectrumCurve curve(w);
    if (curve.is_single_point()) continue;
    const auto o = ld(w);
    const int n = 9;
    for (int i = 1; i < 8; ++i) {
      const double a = curve.alpha_min() + (curve.alpha_max() - curve.alpha_min()) * i / 8.0;
      const auto want = oracle::packing_count_words(o, n, a, 0.05);
      const double got = packing_count(w, n, a, 0.05);
      if (want == 0) {
        CHECK(std::isinf(got));
      } else {
        CHECK(std::exp(got) == Approx(static_cast<double>(want)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("packing count against binomial sums at n = 60") {
  for (const auto& w : {WeightVector({2.0 / 3.0, 1.0 / 3.0}), WeightVector({0.75, 0.25})}) {
    const SpectrumCurve curve(w);
    for (int i = 1; i <= 9; ++i) {
      const double a = curve.alpha_min() + (curve.alpha_max() - curve.alpha_min()) * i / 10.0;
      const auto want = oracle::packing_count_binary(ld(w), 60, a, 0.05);
      CHECK(packing_count(w, 60, a, 0.05) == Approx(static_cast<double>(std::log(want))).epsilon(1e-12));
    }
  }
  // Frozen: alpha = kappa_1 of (2/3, 1/3).
  const WeightVector w({2.0 / 3.0, 1.0 / 3.0});
  const double a = 0.9182958340544896;
  CHECK(packing_count(w, 60, a, 0.05) == Approx(38.510444271652794).epsilon(1e-12));
  CHECK(packing_count(w, 60, a, 0.05) / (60 * std::log(2.0)) == Approx(0.9259804495524045).epsilon(1e-12));
}

TEST_CASE("packing count argument checks") {
  const WeightVector w({0.5, 0.5});
  CHECK_THROWS_AS(packing_count(w, 0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(packing_count(w, 5, 1.0, 0.0), Error);
  CHECK(std::isinf(packing_count(WeightVector({0.75, 0.25}), 10, 5.0, 0.01)));
}

TEST_CASE("uniform weights and trivial windows") {
  const WeightVector u({0.2, 0.2, 0.2, 0.2, 0.2});
  for (double q : {-3.0, 0.0, 2.5, 40.0}) CHECK(lq_exponent(u, q) == Approx(q - 1.0).epsilon(1e-14));
  CHECK(kappa_theta(u, 7.0).kappa == Approx(1.0));
  CHECK(kappa_theta(u, 7.0).theta == Approx(1.0));
  CHECK(packing_count(u, 30, 1.0, 0.01) == Approx(30 * std::log(5.0)).epsilon(1e-14));

  const WeightVector w({0.5, 0.3, 0.2});
  const SpectrumCurve curve(w);
  CHECK(packing_count(w, 25, curve.alpha_min(), curve.alpha_max() - curve.alpha_min()) ==
        Approx(25 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("tilting") {
  const WeightVector w({2.0 / 3.0, 1.0 / 3.0});
  CHECK(tilted_weights(w, 1.0)[0] == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(tilted_weights(w, 0.0)[1] == Approx(0.5).epsilon(1e-15));
  CHECK(tilted_weights(w, 2.0)[0] == Approx(0.8).epsilon(1e-15));
  CHECK(tilted_weights(w, 40.0)[0] > 1.0 - 1e-10);
  CHECK(tilted_weights(w, -40.0)[1] > 1.0 - 1e-10);
}

TEST_CASE("packing rate at the entropy dimension") {
  const WeightVector w({2.0 / 3.0, 1.0 / 3.0});
  const SpectrumCurve curve(w);
  const double a = curve.dimension();
  const double rate = packing_count(w, 60, a, 0.05) / (60 * std::log(2.0));
  CHECK(rate >= curve.D(a) - 0.08);
  CHECK(rate <= curve.D(a) + 0.01);
}
