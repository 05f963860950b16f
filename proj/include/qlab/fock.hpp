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

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qlab/gaussian.hpp"
#include "qlab/spectral.hpp"

namespace qlab {

using SparseOp = Eigen::SparseMatrix<cdouble>;

/// Total Hilbert-space dimension allowed for a truncated Fock space.
inline constexpr Eigen::Index kFockDimensionCap = 20000;
/// Largest dimension for which a dense Weyl matrix is materialized.
inline constexpr Eigen::Index kDenseWeylCap = 4096;

/// Truncated bosonic Fock space over the normal modes of a harmonic system:
/// `truncation` levels per mode, mode 0 the most significant tensor factor.
/// Site operators follow
///   Q_j = sum_m V_jm (b_m + b_m^dag) / sqrt(2 w_m),
///   P_j = sum_m V_jm i sqrt(w_m / 2) (b_m^dag - b_m).
class FockSpace {
 public:
  FockSpace(const SpectralData& s, int truncation);

  int n_modes() const { return n_modes_; }
  int truncation() const { return truncation_; }
  Eigen::Index dimension() const { return dimension_; }
  const Eigen::VectorXd& mode_frequencies() const { return frequencies_; }
  const Eigen::MatrixXd& mode_matrix() const { return modes_; }

  const SparseOp& annihilation(int mode) const { return lowering_[static_cast<std::size_t>(mode)]; }
  const SparseOp& site_q(Eigen::Index site) const { return site_q_[static_cast<std::size_t>(site)]; }
  const SparseOp& site_p(Eigen::Index site) const { return site_p_[static_cast<std::size_t>(site)]; }
  const SparseOp& hamiltonian() const { return hamiltonian_; }
  const Eigen::VectorXcd& vacuum() const { return vacuum_; }

  /// Occupation numbers of basis state `index`.
  std::vector<int> levels(Eigen::Index index) const;
  Eigen::Index index_of(const std::vector<int>& levels) const;
  /// "|l0,l1,...>"
  std::string label(Eigen::Index index) const;
  /// True when every mode level is at most truncation - 2 (outside the damping buffer).
  bool below_edge(Eigen::Index index) const;

  /// Mode components V^T xi of a site-basis one-particle vector.
  Eigen::VectorXcd mode_components(const ComplexMode& xi) const;

 private:
  int n_modes_;
  int truncation_;
  Eigen::Index dimension_;
  Eigen::VectorXd frequencies_;
  Eigen::MatrixXd modes_;
  std::vector<SparseOp> lowering_;
  std::vector<SparseOp> site_q_;
  std::vector<SparseOp> site_p_;
  SparseOp hamiltonian_;
  Eigen::VectorXcd vacuum_;
};

inline FockSpace build_fock(const SpectralData& s, int truncation) { return FockSpace(s, truncation); }

/// Per-mode factors exp(c_m b^dag - conj(c_m) b) of W(xi); the Weyl operator
/// is their tensor product since different modes commute.
std::vector<Eigen::MatrixXcd> weyl_factors(const FockSpace& f, const ComplexMode& xi);

/// Dense W(xi) = exp(a^dag(xi) - a(xi)). Throws DimensionCapExceeded above kDenseWeylCap.
Eigen::MatrixXcd weyl_matrix(const FockSpace& f, const ComplexMode& xi);

/// W(xi) v without materializing the full matrix.
Eigen::VectorXcd apply_weyl(const FockSpace& f, const ComplexMode& xi, const Eigen::VectorXcd& v);

/// |xi| sqrt(N)/4 rule of thumb: above it the truncation tail is no longer negligible.
bool weyl_truncation_warning(const FockSpace& f, const ComplexMode& xi);

/// <0|W(xi)|0> from the truncated matrices.
cdouble vacuum_weyl_oracle(const FockSpace& f, const ComplexMode& xi);

/// a^dag(xi)|0>.
Eigen::VectorXcd one_quantum_state(const FockSpace& f, const ComplexMode& xi);

struct CyclicityEntry {
  std::string basis_label;
  Eigen::Index basis_index = 0;
  double residual = 0.0;
  bool below_edge = true;
};

struct CyclicityResult {
  int max_degree = 0;
  Eigen::Index monomials = 0;
  Eigen::Index span_rank = 0;
  std::vector<CyclicityEntry> entries;
};

/// Distance of every truncated basis state from span{ prod_{j in B} Q_j^k P_j^l |0> : sum(k+l) <= max_degree }.
CyclicityResult cyclicity_residuals(const FockSpace& f, const Region& b, int max_degree);

struct SitePower {
  Eigen::Index site = 0;
  int q_power = 0;
  int p_power = 0;
};

/// coefficient * prod_i (Q_{site_i}^{q_i} P_{site_i}^{p_i}), leftmost factor first.
struct PolynomialTerm {
  cdouble coefficient{1.0, 0.0};
  std::vector<SitePower> factors;
};

struct LocalPolynomial {
  std::vector<PolynomialTerm> terms;
};

/// The spectral projector chi_[lo,hi](Q_site).
struct SpectralWindow {
  Eigen::Index site = 0;
  double lo = 0.0;
  double hi = 0.0;
};

using LocalOperator = std::variant<LocalPolynomial, SpectralWindow>;

/// A|0> for a local operator (every site it touches must lie in B).
Eigen::VectorXcd apply_local_operator(const FockSpace& f, const Region& b, const LocalOperator& op);

/// ||A|0>||.
double separability_check(const FockSpace& f, const Region& b, const LocalOperator& op);

}  // namespace qlab
