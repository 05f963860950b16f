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

#include "qlab/gaussian.hpp"

#include <cmath>

#include "qlab/error.hpp"

namespace qlab {

namespace {

void check_dims(const PhasePoint& x, Eigen::Index n) {
  if (x.q.size() != n || x.p.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "phase point dimension does not match the system");
  }
}

}  // namespace

bool PhasePoint::supported_in(const Region& region) const { return norm_outside(region) == 0.0; }

double PhasePoint::norm_outside(const Region& region) const {
  check_dims(*this, region.n());
  double sq = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!region.contains(i)) sq += q(i) * q(i) + p(i) * p(i);
  }
  return std::sqrt(sq);
}

ComplexMode z_map(const SpectralData& s, const PhasePoint& x) {
  check_dims(x, s.n());
  const Eigen::VectorXd re = s.omega_sqrt() * x.q;
  const Eigen::VectorXd im = s.omega_inv_sqrt() * x.p;
  Eigen::VectorXcd xi(s.n());
  xi.real() = re / std::sqrt(2.0);
  xi.imag() = im / std::sqrt(2.0);
  return {xi};
}

double symplectic_form(const PhasePoint& x, const PhasePoint& y) {
  check_dims(y, x.n());
  check_dims(x, x.n());
  return x.q.dot(y.p) - y.q.dot(x.p);
}

cdouble vacuum_weyl(const ComplexMode& xi) { return {std::exp(-0.5 * xi.xi.squaredNorm()), 0.0}; }

cdouble coherent_weyl(const SpectralData& s, const PhasePoint& x, const PhasePoint& y) {
  const ComplexMode zy = z_map(s, y);
  const double phase = symplectic_form(x, y);
  return std::polar(1.0, phase) * vacuum_weyl(zy);
}

cdouble coherent_matrix_element(const Eigen::VectorXcd& zeta_a, const Eigen::VectorXcd& eta,
                                const Eigen::VectorXcd& zeta_b) {
  // W(-zeta_a) W(eta) W(zeta_b) = exp(i[Im<zeta_a, eta + zeta_b> - Im<eta, zeta_b>]) W(eta + zeta_b - zeta_a)
  const double phase = inner(zeta_a, eta + zeta_b).imag() - inner(eta, zeta_b).imag();
  const double gauss = std::exp(-0.5 * (eta + zeta_b - zeta_a).squaredNorm());
  return std::polar(gauss, phase);
}

cdouble superposition_weyl(cdouble alpha, cdouble beta, const SpectralData& s, const PhasePoint& x1,
                           const PhasePoint& x2, const PhasePoint& y) {
  if (alpha == cdouble{} && beta == cdouble{}) {
    throw Error(ErrorKind::ZeroSuperposition, "alpha = beta = 0");
  }
  const Eigen::VectorXcd z1 = z_map(s, x1).xi;
  const Eigen::VectorXcd z2 = z_map(s, x2).xi;
  const Eigen::VectorXcd eta = z_map(s, y).xi;
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(s.n());

  const cdouble c[2] = {alpha, beta};
  const Eigen::VectorXcd* z[2] = {&z1, &z2};
  cdouble num{};
  cdouble norm{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cdouble w = std::conj(c[a]) * c[b];
      num += w * coherent_matrix_element(*z[a], eta, *z[b]);
      norm += w * coherent_matrix_element(*z[a], zero, *z[b]);
    }
  }
  if (!(norm.real() > 1e-14 * (std::norm(alpha) + std::norm(beta)))) {
    throw Error(ErrorKind::ZeroSuperposition, "superposition has zero norm");
  }
  return num / norm.real();
}

cdouble one_quantum_weyl(const ComplexMode& xi, const ComplexMode& eta) {
  if (xi.xi.size() != eta.xi.size()) throw Error(ErrorKind::DimensionMismatch, "mode dimension mismatch");
  const double overlap = std::norm(inner(xi.xi, eta.xi));
  return {(1.0 - overlap) * std::exp(-0.5 * eta.xi.squaredNorm()), 0.0};
}

VacuumCovariances vacuum_covariance(const SpectralData& s) {
  return {0.5 * s.omega_inv(), 0.5 * s.omega()};
}

}  // namespace qlab
