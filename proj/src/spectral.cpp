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

#include "qlab/spectral.hpp"

#include <cmath>

#include "qlab/error.hpp"

namespace qlab {

namespace {

Eigen::MatrixXd select_rows_cols(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows,
                                 const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

}  // namespace

SpectralData::SpectralData(const DynamicalMatrix& m) : omega_squared_(m.entries()) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(omega_squared_);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DecompositionFailure, "eigensolver did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  if (!(eigenvalues_.minCoeff() > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "non-positive eigenvalue in decomposition");
  }
  omega_ = function_of(0.5);
  omega_sqrt_ = function_of(0.25);
  omega_inv_sqrt_ = function_of(-0.25);
  omega_inv_ = function_of(-0.5);
}

// V diag(lambda^exponent) V^T, symmetrized to remove rounding asymmetry.
Eigen::MatrixXd SpectralData::function_of(double exponent) const {
  const Eigen::VectorXd f = eigenvalues_.array().pow(exponent).matrix();
  Eigen::MatrixXd out = eigenvectors_ * f.asDiagonal() * eigenvectors_.transpose();
  return 0.5 * (out + out.transpose());
}

double offblock_min_singular(const SpectralData& s, const Region& b) {
  require_proper_region(b);
  const Region bc = b.complement();
  Eigen::MatrixXd block = select_rows_cols(s.omega(), bc.members(), b.members());
  if (block.rows() < block.cols()) {
    // Pad with zero rows: min_{|h|=1} |A h| is then the last singular value,
    // which the decomposition itself reports as (numerically) zero.
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(block.cols(), block.cols());
    padded.topRows(block.rows()) = block;
    block = std::move(padded);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  return svd.singularValues().minCoeff();
}

LocalityReport localizable_modes(const SpectralData& s, const Region& b, double tol) {
  require_proper_region(b);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "kernel tolerance must be positive");
  const Eigen::Index n = s.n();
  const Region bc = b.complement();
  const auto rows = static_cast<Eigen::Index>(bc.size());

  Eigen::MatrixXd stacked(2 * rows, n);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index site = bc.members()[static_cast<std::size_t>(r)];
    stacked.row(r) = s.omega_sqrt().row(site);
    stacked.row(rows + r) = s.omega_inv_sqrt().row(site);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = tol * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;

  LocalityReport report{b, 0.0, false, n - rank, {}, sv, 0.0};
  // S is real, so its complex kernel is the complexification of the real
  // kernel: real right-singular vectors give an orthonormal complex basis.
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index k = rank; k < n; ++k) report.localizable_basis.emplace_back(v.col(k).cast<std::complex<double>>());

  report.sigma_min_offblock = offblock_min_singular(s, b);
  report.nonlocality_threshold = kNonlocalityRelTol * s.omega_norm();
  report.strongly_nonlocal = report.sigma_min_offblock > report.nonlocality_threshold;
  return report;
}

}  // namespace qlab
