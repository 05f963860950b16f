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

#include "qlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

DynamicalMatrix validate_dynamical_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw Error(ErrorKind::InvalidArgument, "dynamical matrix must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "dynamical matrix has non-finite entries");
  }
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "asymmetry " << asym << " exceeds " << kSymmetryTol;
    throw Error(ErrorKind::NotSymmetric, msg.str());
  }
  Eigen::MatrixXd sym = 0.5 * (entries + entries.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DecompositionFailure, "eigensolver did not converge");
  }
  const double smallest = solver.eigenvalues().minCoeff();
  const double threshold = kSpdRelTol * sym.cwiseAbs().maxCoeff();
  if (!(smallest > threshold)) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << smallest << " <= " << threshold;
    throw Error(ErrorKind::NotPositiveDefinite, msg.str());
  }
  return DynamicalMatrix(std::move(sym));
}

DynamicalMatrix DynamicalMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  return validate_dynamical_matrix(factor * entries_);
}

namespace {

void add_edge(Eigen::MatrixXd& lap, Eigen::Index i, Eigen::Index j) {
  lap(i, i) += 1.0;
  lap(j, j) += 1.0;
  lap(i, j) -= 1.0;
  lap(j, i) -= 1.0;
}

Eigen::MatrixXd path_laplacian(Eigen::Index n) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) add_edge(lap, i, i + 1);
  return lap;
}

}  // namespace

DynamicalMatrix build_chain(Eigen::Index n, double coupling, double pinning, bool periodic) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "chain needs n >= 1");
  if (!(coupling >= 0.0)) throw Error(ErrorKind::InvalidArgument, "coupling must be nonnegative");
  if (!(pinning >= 0.0)) throw Error(ErrorKind::InvalidArgument, "pinning must be nonnegative");
  if (periodic && pinning == 0.0) {
    throw Error(ErrorKind::NotPositiveDefinite, "periodic chain without pinning has a zero mode");
  }
  Eigen::MatrixXd lap = path_laplacian(n);
  // The closing bond only exists for a genuine cycle (n >= 3); for n = 2 it
  // would duplicate the single path bond.
  if (periodic && n >= 3) add_edge(lap, n - 1, 0);
  Eigen::MatrixXd m = coupling * lap;
  m.diagonal().array() += pinning;
  return validate_dynamical_matrix(std::move(m));
}

DynamicalMatrix build_discrete_klein_gordon(Eigen::Index grid_points, double mass, double spacing) {
  if (grid_points < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  if (!(mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  if (!(spacing > 0.0)) throw Error(ErrorKind::InvalidArgument, "spacing must be positive");
  // Dirichlet boundary: each end site also couples to a clamped ghost site.
  Eigen::MatrixXd lap = path_laplacian(grid_points);
  lap(0, 0) += 1.0;
  lap(grid_points - 1, grid_points - 1) += 1.0;
  Eigen::MatrixXd m = lap / (spacing * spacing);
  m.diagonal().array() += mass * mass;
  return validate_dynamical_matrix(std::move(m));
}

DynamicalMatrix build_custom(const Eigen::MatrixXd& entries) { return validate_dynamical_matrix(entries); }

Region::Region(Eigen::Index n, std::vector<Eigen::Index> members) : n_(n), members_(std::move(members)) {
  if (n_ < 1) throw Error(ErrorKind::InvalidArgument, "region needs n >= 1");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto m : members_) {
    if (m < 0 || m >= n_) {
      std::ostringstream msg;
      msg << "site index " << m << " outside [0, " << n_ << ")";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
}

bool Region::contains(Eigen::Index site) const {
  return std::binary_search(members_.begin(), members_.end(), site);
}

Region Region::complement() const {
  std::vector<Eigen::Index> out;
  out.reserve(static_cast<std::size_t>(n_) - members_.size());
  for (Eigen::Index i = 0; i < n_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return Region(n_, std::move(out));
}

bool Region::is_subset_of(const Region& other) const {
  return n_ == other.n_ && std::includes(other.members_.begin(), other.members_.end(),
                                         members_.begin(), members_.end());
}

void require_proper_region(const Region& region) {
  if (region.empty()) throw Error(ErrorKind::EmptyRegion, "region is empty");
  if (region.full()) throw Error(ErrorKind::FullRegion, "region covers every site");
}

}  // namespace qlab
