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

#include "qlab/measure.hpp"

#include <cmath>
#include <numbers>

#include "qlab/error.hpp"

namespace qlab {

namespace detail {

namespace {

double log_pdf(double x) { return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi); }

}  // namespace

double log_upper_tail(double x) {
  if (x < 30.0) return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));
  // Asymptotic Mills-ratio series; relative error below 1e-12 for x >= 30.
  const double r = 1.0 / (x * x);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return log_pdf(x) - std::log(x) + std::log(series);
}

StdTruncatedMoments standard_truncated_moments(double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "window needs lo < hi");
  if (b <= 0.0) {
    // Mirror into the upper half line.
    StdTruncatedMoments m = standard_truncated_moments(-b, -a);
    m.mean = -m.mean;
    return m;
  }
  StdTruncatedMoments m;
  if (a >= 0.0) {
    const double la = log_upper_tail(a);
    const double lb = log_upper_tail(b);
    m.log_prob = la + std::log1p(-std::exp(lb - la));
  } else {
    m.log_prob = std::log(0.5 * (std::erf(b / std::numbers::sqrt2) - std::erf(a / std::numbers::sqrt2)));
  }
  const double pa = std::exp(log_pdf(a) - m.log_prob);
  const double pb = std::exp(log_pdf(b) - m.log_prob);
  m.mean = pa - pb;
  m.second = 1.0 + a * pa - b * pb;
  return m;
}

void gauss_legendre(int order, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  // Golub-Welsch: eigenpairs of the Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes = solver.eigenvalues();
  weights = 2.0 * solver.eigenvectors().row(0).array().square().transpose();
}

}  // namespace detail

namespace {

void check_window(const SpectralData& s, const WindowEvent& w) {
  if (w.site < 0 || w.site >= s.n()) throw Error(ErrorKind::InvalidArgument, "window site out of range");
  if (!(w.lo < w.hi)) throw Error(ErrorKind::InvalidArgument, "window needs lo < hi");
}

double vacuum_q_cov(const SpectralData& s, Eigen::Index i, Eigen::Index j) { return 0.5 * s.omega_inv()(i, j); }

}  // namespace

double log_window_probability(const SpectralData& s, const WindowEvent& w) {
  check_window(s, w);
  const double sigma = std::sqrt(vacuum_q_cov(s, w.site, w.site));
  return detail::standard_truncated_moments(w.lo / sigma, w.hi / sigma).log_prob;
}

double window_probability(const SpectralData& s, const WindowEvent& w) { return std::exp(log_window_probability(s, w)); }

ConditionalMoments conditional_moments(const SpectralData& s, const WindowEvent& w, Eigen::Index target) {
  check_window(s, w);
  if (target < 0 || target >= s.n()) throw Error(ErrorKind::InvalidArgument, "target site out of range");
  const double sjj = vacuum_q_cov(s, w.site, w.site);
  const double stj = vacuum_q_cov(s, target, w.site);
  const double stt = vacuum_q_cov(s, target, target);
  const double sigma = std::sqrt(sjj);

  const auto tm = detail::standard_truncated_moments(w.lo / sigma, w.hi / sigma);
  const double mean_j = sigma * tm.mean;
  const double second_j = sjj * tm.second;

  // x_t = k x_j + e with e independent of x_j, Var(e) = S_tt - S_tj^2 / S_jj.
  const double k = stj / sjj;
  const double residual_var = target == w.site ? 0.0 : stt - stj * stj / sjj;
  return {k * mean_j, residual_var + k * k * second_j};
}

std::vector<ProfileEntry> deviation_profile(const SpectralData& s, const WindowEvent& w) {
  check_window(s, w);
  std::vector<ProfileEntry> out;
  out.reserve(static_cast<std::size_t>(s.n()));
  for (Eigen::Index t = 0; t < s.n(); ++t) {
    const double vac = vacuum_q_cov(s, t, t);
    const double post = conditional_moments(s, w, t).second_moment;
    out.push_back({t, vac, post, std::abs(post - vac) / vac});
  }
  return out;
}

Eigen::VectorXd conditional_density(const SpectralData& s, const WindowEvent& w, Eigen::Index target,
                                    const Eigen::VectorXd& points) {
  check_window(s, w);
  if (target < 0 || target >= s.n()) throw Error(ErrorKind::InvalidArgument, "target site out of range");
  const double sjj = vacuum_q_cov(s, w.site, w.site);
  const double stj = vacuum_q_cov(s, target, w.site);
  const double stt = vacuum_q_cov(s, target, target);
  const double prob = window_probability(s, w);
  auto normal_pdf = [](double x, double var) {
    return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * std::numbers::pi * var);
  };

  Eigen::VectorXd out(points.size());
  if (target == w.site) {
    for (Eigen::Index i = 0; i < points.size(); ++i) {
      const double x = points(i);
      out(i) = (x >= w.lo && x <= w.hi) ? normal_pdf(x, sjj) / prob : 0.0;
    }
    return out;
  }

  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  detail::gauss_legendre(200, nodes, weights);
  const double half = 0.5 * (w.hi - w.lo);
  const double mid = 0.5 * (w.hi + w.lo);
  const double k = stj / sjj;
  const double residual_var = stt - stj * stj / sjj;
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    double acc = 0.0;
    for (Eigen::Index g = 0; g < nodes.size(); ++g) {
      const double xj = mid + half * nodes(g);
      acc += weights(g) * normal_pdf(xj, sjj) * normal_pdf(points(i) - k * xj, residual_var);
    }
    out(i) = half * acc / prob;
  }
  return out;
}

}  // namespace qlab
