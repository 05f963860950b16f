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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qlab {

/// The positive-definite matrix Omega^2 of a finite harmonic system
/// q'' + Omega^2 q = 0. Instances are always exactly symmetric and have a
/// strictly positive spectrum; the only way to obtain one is through the
/// builders below.
class DynamicalMatrix {
 public:
  Eigen::Index n() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// Returns a copy with every entry multiplied by `factor` (> 0).
  DynamicalMatrix scaled(double factor) const;

 private:
  explicit DynamicalMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
  friend DynamicalMatrix validate_dynamical_matrix(Eigen::MatrixXd entries);

  Eigen::MatrixXd entries_;
};

/// Relative threshold for the positive-definiteness check:
/// smallest eigenvalue must exceed kSpdRelTol * max|entry|.
inline constexpr double kSpdRelTol = 1e-10;
/// Maximum tolerated |M(i,j) - M(j,i)| for custom input.
inline constexpr double kSymmetryTol = 1e-12;

/// Symmetrizes exactly as (M + M^T)/2 and checks positive definiteness.
DynamicalMatrix validate_dynamical_matrix(Eigen::MatrixXd entries);

/// pinning * I + coupling * L (coupling >= 0), L the graph Laplacian of the path (open) or
/// the cycle (periodic) on n nodes.
DynamicalMatrix build_chain(Eigen::Index n, double coupling, double pinning, bool periodic);

/// mass^2 * I + L_path / spacing^2: Dirichlet finite differences of -d^2/dx^2 + m^2.
DynamicalMatrix build_discrete_klein_gordon(Eigen::Index grid_points, double mass, double spacing);

DynamicalMatrix build_custom(const Eigen::MatrixXd& entries);

/// A set of site indices B within {0, ..., n-1}. Members are kept sorted and
/// duplicate-free.
class Region {
 public:
  Region(Eigen::Index n, std::vector<Eigen::Index> members);

  Eigen::Index n() const { return n_; }
  const std::vector<Eigen::Index>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool full() const { return static_cast<Eigen::Index>(members_.size()) == n_; }
  bool contains(Eigen::Index site) const;

  Region complement() const;
  bool is_subset_of(const Region& other) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Eigen::Index n_;
  std::vector<Eigen::Index> members_;
};

/// Throws EmptyRegion / FullRegion when B or its complement is empty.
void require_proper_region(const Region& region);

}  // namespace qlab
