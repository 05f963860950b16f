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

#include "qlab/models.hpp"

namespace qlab {

/// Eigendecomposition of Omega^2 together with the functional-calculus powers
/// Omega, Omega^{1/2}, Omega^{-1/2}, Omega^{-1}. All powers are computed
/// eagerly; the object is immutable afterwards.
class SpectralData {
 public:
  explicit SpectralData(const DynamicalMatrix& m);

  Eigen::Index n() const { return eigenvalues_.size(); }
  /// Eigenvalues of Omega^2, ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Columns are the orthonormal normal modes.
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  /// Mode frequencies sqrt(eigenvalues).
  Eigen::VectorXd frequencies() const { return eigenvalues_.cwiseSqrt(); }

  const Eigen::MatrixXd& omega_squared() const { return omega_squared_; }
  const Eigen::MatrixXd& omega() const { return omega_; }
  const Eigen::MatrixXd& omega_sqrt() const { return omega_sqrt_; }
  const Eigen::MatrixXd& omega_inv_sqrt() const { return omega_inv_sqrt_; }
  const Eigen::MatrixXd& omega_inv() const { return omega_inv_; }

  /// Largest singular value of Omega (= its largest eigenvalue).
  double omega_norm() const { return std::sqrt(eigenvalues_(n() - 1)); }

 private:
  Eigen::MatrixXd function_of(double exponent) const;

  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::MatrixXd omega_squared_;
  Eigen::MatrixXd omega_;
  Eigen::MatrixXd omega_sqrt_;
  Eigen::MatrixXd omega_inv_sqrt_;
  Eigen::MatrixXd omega_inv_;
};

inline SpectralData spectral_decompose(const DynamicalMatrix& m) { return SpectralData(m); }

/// Relative threshold deciding strong non-locality: the off-block
/// Omega[B^c, B] is treated as rank deficient when its smallest singular
/// value is at most this fraction of sigma_max(Omega).
inline constexpr double kNonlocalityRelTol = 1e-8;

/// Default relative rank threshold for the stacked kernel in localizable_modes.
inline constexpr double kKernelRelTol = 1e-8;

/// min over unit h supported in B of ||(Omega h) restricted to B^c||, i.e. the
/// |B|-th singular value of Omega[B^c, B]. It is exactly zero when the block
/// has fewer rows than columns.
double offblock_min_singular(const SpectralData& s, const Region& b);

struct LocalityReport {
  Region region;
  double sigma_min_offblock = 0.0;
  bool strongly_nonlocal = false;
  Eigen::Index localizable_dim = 0;
  /// Orthonormal basis of {xi : Omega^{+-1/2} xi both supported in B}.
  std::vector<Eigen::VectorXcd> localizable_basis;
  /// Singular values of the stacked matrix, descending (diagnostic).
  Eigen::VectorXd stacked_singular_values;
  /// Threshold actually used for the strongly_nonlocal verdict.
  double nonlocality_threshold = 0.0;
};

/// Kernel of S = [Omega^{1/2}; Omega^{-1/2}] restricted to rows in B^c.
/// Singular values below tol * sigma_max(S) count as zero.
LocalityReport localizable_modes(const SpectralData& s, const Region& b, double tol = kKernelRelTol);

}  // namespace qlab
