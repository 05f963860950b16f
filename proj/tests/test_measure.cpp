// Copyright 2026 The qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qlab/error.hpp"
#include "qlab/measure.hpp"

using namespace qlab;

namespace {

SpectralData pair_spectral() {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  return SpectralData(build_custom(m));
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double sigma_of(const SpectralData& s, Eigen::Index j) { return std::sqrt(s.omega_inv()(j, j) / 2.0); }

// E[x^k | lo <= x <= hi] for x ~ N(0, sigma^2), by 200-point Gauss-Legendre.
double quad_moment(double sigma, double lo, double hi, int k) {
  Eigen::VectorXd x, w;
  detail::gauss_legendre(200, x, w);
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double t = 0.5 * (hi - lo) * x(i) + 0.5 * (hi + lo);
    const double d = w(i) * std::exp(-t * t / (2 * sigma * sigma));
    num += d * std::pow(t, k);
    den += d;
  }
  return num / den;
}

}  // namespace

TEST_CASE("gauss-legendre rule") {
  Eigen::VectorXd x, w;
  detail::gauss_legendre(200, x, w);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-13));
  for (int k = 0; k <= 20; k += 2) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) acc += w(i) * std::pow(x(i), k);
    CHECK(acc == doctest::Approx(2.0 / (k + 1)).epsilon(1e-12));
  }
  detail::gauss_legendre(3, x, w);
  CHECK(x(2) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
  CHECK(w(1) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("window probability") {
  const auto s = pair_spectral();
  const double sig = sigma_of(s, 0);
  CHECK(sig * sig == doctest::Approx(0.3943375672974065).epsilon(1e-13));
  CHECK(window_probability(s, {0, -0.1, 0.1}) == doctest::Approx(0.1265241828843387).epsilon(1e-13));
  CHECK(window_probability(s, {0, -0.1, 0.1}) == doctest::Approx(2 * phi(0.1 / sig) - 1).epsilon(1e-13));
  CHECK(std::abs(window_probability(s, {1, -10 * sig, 10 * sig}) - 1.0) <= 1e-12);
  CHECK(window_probability(s, {0, 0.2, 1.0}) == doctest::Approx(0.3194148406469929).epsilon(1e-13));
  CHECK(window_probability(s, {0, -1.0, -0.2}) == doctest::Approx(0.3194148406469929).epsilon(1e-13));
  CHECK_THROWS_AS(window_probability(s, {0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(window_probability(s, {2, 0.0, 1.0}), Error);
}

TEST_CASE("far-tail windows stay finite in log space") {
  const auto s = pair_spectral();
  const double sig = sigma_of(s, 0);
  const WindowEvent far{0, 40 * sig, 41 * sig};
  const double lp = log_window_probability(s, far);
  CHECK(std::isfinite(lp));
  // Leading asymptotics of the upper tail at x = 40.
  CHECK(lp == doctest::Approx(-800.0 - std::log(40.0 * std::sqrt(2 * std::numbers::pi))).epsilon(1e-4));
  const auto m = conditional_moments(s, far, 0);
  CHECK(m.mean > 40 * sig);
  CHECK(m.mean < 41 * sig);
  CHECK(std::isfinite(m.second_moment));

  for (double x : {0.5, 3.0, 8.0, 20.0, 29.9, 30.1, 35.0}) {
    CHECK(detail::log_upper_tail(x) == doctest::Approx(std::log(0.5 * std::erfc(x / std::sqrt(2.0)))).epsilon(1e-12));
  }
  CHECK(detail::log_upper_tail(-3.0) == doctest::Approx(std::log(phi(3.0))).epsilon(1e-14));
}

TEST_CASE("standard truncated moments") {
  const auto t = detail::standard_truncated_moments(-1.0, 2.0);
  CHECK(std::exp(t.log_prob) == doctest::Approx(phi(2.0) - phi(-1.0)).epsilon(1e-14));
  CHECK(t.mean == doctest::Approx(quad_moment(1.0, -1.0, 2.0, 1)).epsilon(1e-12));
  CHECK(t.second == doctest::Approx(quad_moment(1.0, -1.0, 2.0, 2)).epsilon(1e-12));
  const auto u = detail::standard_truncated_moments(7.0, 8.0);
  CHECK(u.mean == doctest::Approx(quad_moment(1.0, 7.0, 8.0, 1)).epsilon(1e-10));
  CHECK(u.second == doctest::Approx(quad_moment(1.0, 7.0, 8.0, 2)).epsilon(1e-10));
  const auto v = detail::standard_truncated_moments(-8.0, -7.0);
  CHECK(v.mean == doctest::Approx(-u.mean).epsilon(1e-14));
  CHECK(v.second == doctest::Approx(u.second).epsilon(1e-14));
}

TEST_CASE("conditional moments on the coupled pair") {
  const auto s = pair_spectral();
  const WindowEvent w{0, -0.1, 0.1};
  const auto m1 = conditional_moments(s, w, 1);
  CHECK(m1.mean == 0.0);
  CHECK(m1.second_moment == doctest::Approx(0.36626391813205117).epsilon(1e-13));
  CHECK(m1.second_moment < 0.3943375672974065);

  const auto profile = deviation_profile(s, w);
  REQUIRE(profile.size() == 2);
  CHECK(profile[1].relative_deviation == doctest::Approx(0.071191921575614).epsilon(1e-12));
  CHECK(profile[0].relative_deviation > 0.9);

  const WindowEvent asym{0, 0.2, 1.0};
  const auto ma = conditional_moments(s, asym, 1);
  CHECK(ma.mean == doctest::Approx(-0.1406233922826223).epsilon(1e-12));
  CHECK(ma.second_moment == doctest::Approx(0.3891964320366092).epsilon(1e-12));
}

TEST_CASE("uncoupled control: no effect elsewhere") {
  const SpectralData s(build_chain(4, 0.0, 1.7, false));
  const auto profile = deviation_profile(s, {1, -0.1, 0.1});
  for (const auto& e : profile) {
    if (e.site == 1) {
      CHECK(e.relative_deviation > 0.5);
    } else {
      CHECK(e.relative_deviation <= 1e-14);
    }
  }
  const auto m = conditional_moments(s, {1, 0.3, 0.9}, 2);
  CHECK(m.mean == 0.0);
  CHECK(m.second_moment == doctest::Approx(s.omega_inv()(2, 2) / 2).epsilon(1e-15));
}

TEST_CASE("open chain n=8: deviation decays but never vanishes") {
  const SpectralData s(build_chain(8, 1.0, 1.0, false));
  const auto profile = deviation_profile(s, {0, -0.1, 0.1});
  for (std::size_t t = 2; t < profile.size(); ++t) {
    CHECK(profile[t].relative_deviation < profile[t - 1].relative_deviation);
  }
  CHECK(profile[7].relative_deviation > 0.0);
}

TEST_CASE("wide windows reproduce the vacuum") {
  const SpectralData s(build_chain(5, 1.0, 0.5, true));
  const double sig = sigma_of(s, 2);
  const WindowEvent w{2, -10 * sig, 10 * sig};
  for (Eigen::Index t = 0; t < 5; ++t) {
    const auto m = conditional_moments(s, w, t);
    CHECK(std::abs(m.mean) <= 1e-10);
    CHECK(std::abs(m.second_moment - s.omega_inv()(t, t) / 2) <= 1e-10);
  }
}

TEST_CASE("conditional density") {
  const auto s = pair_spectral();
  const WindowEvent w{0, 0.2, 1.0};
  const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(4001, -6.0, 6.0);
  const Eigen::VectorXd d = conditional_density(s, w, 1, grid);
  const double h = grid(1) - grid(0);
  double mass = 0.0, mean = 0.0, second = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    mass += h * d(i);
    mean += h * d(i) * grid(i);
    second += h * d(i) * grid(i) * grid(i);
  }
  const auto m = conditional_moments(s, w, 1);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mean == doctest::Approx(m.mean).epsilon(1e-7));
  CHECK(second == doctest::Approx(m.second_moment).epsilon(1e-7));
}

TEST_CASE("property: probabilities and moments against quadrature") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 5);
    Eigen::MatrixXd g = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
    const SpectralData s(build_custom(g * g.transpose() + 0.3 * Eigen::MatrixXd::Identity(n, n)));
    const Eigen::Index j = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    const double sig = sigma_of(s, j);
    const double a = 3 * sig * u(rng);
    const double b = a + sig * (0.05 + 2 * std::abs(u(rng)));
    const WindowEvent w{j, a, b};
    const double p = window_probability(s, w);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(p == doctest::Approx(phi(b / sig) - phi(a / sig)).epsilon(1e-10));
    const Eigen::MatrixXd cov = s.omega_inv() / 2.0;
    const double ex1 = quad_moment(sig, a, b, 1);
    const double ex2 = quad_moment(sig, a, b, 2);
    for (Eigen::Index t = 0; t < n; ++t) {
      const double k = cov(t, j) / cov(j, j);
      const double resid = cov(t, t) - k * cov(t, j);
      const auto m = conditional_moments(s, w, t);
      CHECK(m.mean == doctest::Approx(k * ex1).epsilon(1e-9).scale(sig));
      CHECK(m.second_moment == doctest::Approx(resid + k * k * ex2).epsilon(1e-9).scale(cov(t, t)));
    }
  }
}
