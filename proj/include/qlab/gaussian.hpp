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

#include <complex>

#include <Eigen/Dense>

#include "qlab/spectral.hpp"

namespace qlab {

using cdouble = std::complex<double>;

/// Classical phase-space point X = (q, p).
struct PhasePoint {
  Eigen::VectorXd q;
  Eigen::VectorXd p;

  static PhasePoint zero(Eigen::Index n) { return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)}; }
  Eigen::Index n() const { return q.size(); }
  /// True when q and p vanish identically outside `region`.
  bool supported_in(const Region& region) const;
  /// Euclidean norm of (q, p) restricted to sites outside `region`.
  double norm_outside(const Region& region) const;
};

/// A one-particle vector xi in C^n (site basis).
struct ComplexMode {
  Eigen::VectorXcd xi;
};

struct VacuumCovariances {
  Eigen::MatrixXd sigma_q;  ///< <Q_i Q_j> = (Omega^{-1})_{ij} / 2
  Eigen::MatrixXd sigma_p;  ///< <P_i P_j> = Omega_{ij} / 2
};

/// Complex inner product, conjugate-linear in the first argument.
inline cdouble inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return a.dot(b); }

/// z(X) = (Omega^{1/2} q + i Omega^{-1/2} p) / sqrt(2).
ComplexMode z_map(const SpectralData& s, const PhasePoint& x);

/// s(X, Y) = q_x . p_y - q_y . p_x.
double symplectic_form(const PhasePoint& x, const PhasePoint& y);

/// <0|W(xi)|0> = exp(-|xi|^2 / 2).
cdouble vacuum_weyl(const ComplexMode& xi);

/// <psi_X|W(z(Y))|psi_X> for the coherent state psi_X = W(z(X))|0>.
cdouble coherent_weyl(const SpectralData& s, const PhasePoint& x, const PhasePoint& y);

/// <psi_a|W(eta)|psi_b> for coherent states psi_a = W(zeta_a)|0>, from the
/// composition law W(u)W(v) = exp(-i Im<u,v>) W(u+v).
cdouble coherent_matrix_element(const Eigen::VectorXcd& zeta_a, const Eigen::VectorXcd& eta,
                                const Eigen::VectorXcd& zeta_b);

/// Normalized expectation of W(z(Y)) in (alpha psi_{X1} + beta psi_{X2}).
cdouble superposition_weyl(cdouble alpha, cdouble beta, const SpectralData& s, const PhasePoint& x1,
                           const PhasePoint& x2, const PhasePoint& y);

/// <1_xi|W(eta)|1_xi> = (1 - |<xi,eta>|^2) exp(-|eta|^2/2) for |1_xi> = a^dag(xi)|0>, |xi| = 1.
cdouble one_quantum_weyl(const ComplexMode& xi, const ComplexMode& eta);

VacuumCovariances vacuum_covariance(const SpectralData& s);

}  // namespace qlab
