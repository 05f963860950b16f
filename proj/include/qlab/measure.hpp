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

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qlab/spectral.hpp"

namespace qlab {

/// The yes/no question "does Q_site fall within [lo, hi]?".
struct WindowEvent {
  Eigen::Index site = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Vacuum probability <0|chi_[lo,hi](Q_site)|0>. Underflows to 0 only for
/// windows beyond ~38 standard deviations; use log_window_probability there.
double window_probability(const SpectralData& s, const WindowEvent& w);
double log_window_probability(const SpectralData& s, const WindowEvent& w);

struct ConditionalMoments {
  double mean = 0.0;
  double second_moment = 0.0;
};

/// Moments of Q_target in chi(Q_site)|0> / ||chi(Q_site)|0>||.
ConditionalMoments conditional_moments(const SpectralData& s, const WindowEvent& w, Eigen::Index target);

struct ProfileEntry {
  Eigen::Index site = 0;
  double vacuum_variance = 0.0;
  /// <Q_site^2> after the measurement.
  double post_second_moment = 0.0;
  double relative_deviation = 0.0;
};

/// |<Q_t^2>_post - <Q_t^2>_vac| / <Q_t^2>_vac for every site t.
std::vector<ProfileEntry> deviation_profile(const SpectralData& s, const WindowEvent& w);

/// Post-measurement density of Q_target evaluated at `points`, integrating
/// over the window with 200-point Gauss-Legendre quadrature.
Eigen::VectorXd conditional_density(const SpectralData& s, const WindowEvent& w, Eigen::Index target,
                                    const Eigen::VectorXd& points);

namespace detail {

/// log P(Z > x) for standard normal Z, accurate far into the upper tail.
double log_upper_tail(double x);

struct StdTruncatedMoments {
  double log_prob = 0.0;
  double mean = 0.0;
  double second = 0.0;
};

/// Probability, mean, and second moment of a standard normal restricted to [a, b].
StdTruncatedMoments standard_truncated_moments(double a, double b);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace detail

}  // namespace qlab
