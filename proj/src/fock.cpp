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

#include "qlab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qlab/error.hpp"

namespace qlab {

namespace {

Eigen::Index stride_of(int mode, int n_modes, int truncation) {
  Eigen::Index stride = 1;
  for (int k = mode + 1; k < n_modes; ++k) stride *= truncation;
  return stride;
}

// Applies a single-mode operator (truncation x truncation) to the given mode of v.
Eigen::VectorXcd apply_mode_operator(const Eigen::MatrixXcd& op, int mode, const FockSpace& f,
                                     const Eigen::VectorXcd& v) {
  const int n = f.truncation();
  const Eigen::Index stride = stride_of(mode, f.n_modes(), n);
  const Eigen::Index block = stride * n;
  Eigen::VectorXcd out(v.size());
  Eigen::VectorXcd slice(n);
  for (Eigen::Index outer = 0; outer < v.size(); outer += block) {
    for (Eigen::Index inner = 0; inner < stride; ++inner) {
      const Eigen::Index base = outer + inner;
      for (int k = 0; k < n; ++k) slice(k) = v(base + k * stride);
      const Eigen::VectorXcd r = op * slice;
      for (int k = 0; k < n; ++k) out(base + k * stride) = r(k);
    }
  }
  return out;
}

Eigen::VectorXcd apply_site_powers(const FockSpace& f, const SitePower& sp, Eigen::VectorXcd v) {
  // Rightmost operator acts first: Q^k P^l v.
  for (int i = 0; i < sp.p_power; ++i) v = f.site_p(sp.site) * v;
  for (int i = 0; i < sp.q_power; ++i) v = f.site_q(sp.site) * v;
  return v;
}

}  // namespace

FockSpace::FockSpace(const SpectralData& s, int truncation)
    : n_modes_(static_cast<int>(s.n())), truncation_(truncation), frequencies_(s.frequencies()),
      modes_(s.eigenvectors()) {
  if (truncation_ < 2) throw Error(ErrorKind::InvalidArgument, "truncation must be at least 2");
  dimension_ = 1;
  for (int m = 0; m < n_modes_; ++m) {
    dimension_ *= truncation_;
    if (dimension_ > kFockDimensionCap) {
      std::ostringstream msg;
      msg << truncation_ << "^" << n_modes_ << " exceeds the dimension cap " << kFockDimensionCap;
      throw Error(ErrorKind::DimensionCapExceeded, msg.str());
    }
  }

  for (int m = 0; m < n_modes_; ++m) {
    const Eigen::Index stride = stride_of(m, n_modes_, truncation_);
    std::vector<Eigen::Triplet<cdouble>> trips;
    trips.reserve(static_cast<std::size_t>(dimension_));
    for (Eigen::Index idx = 0; idx < dimension_; ++idx) {
      const auto level = static_cast<int>((idx / stride) % truncation_);
      if (level > 0) trips.emplace_back(idx - stride, idx, std::sqrt(static_cast<double>(level)));
    }
    SparseOp b(dimension_, dimension_);
    b.setFromTriplets(trips.begin(), trips.end());
    lowering_.push_back(std::move(b));
  }

  const cdouble i_unit{0.0, 1.0};
  for (int j = 0; j < n_modes_; ++j) {
    SparseOp q(dimension_, dimension_);
    SparseOp p(dimension_, dimension_);
    for (int m = 0; m < n_modes_; ++m) {
      const SparseOp& b = lowering_[static_cast<std::size_t>(m)];
      const SparseOp bdag = SparseOp(b.adjoint());
      const double w = frequencies_(m);
      const double v = modes_(j, m);
      q += SparseOp((v / std::sqrt(2.0 * w)) * (b + bdag));
      p += SparseOp((i_unit * v * std::sqrt(0.5 * w)) * (bdag - b));
    }
    q.prune(cdouble{0.0, 0.0});
    p.prune(cdouble{0.0, 0.0});
    site_q_.push_back(std::move(q));
    site_p_.push_back(std::move(p));
  }

  std::vector<Eigen::Triplet<cdouble>> diag;
  for (Eigen::Index idx = 0; idx < dimension_; ++idx) {
    const auto lv = levels(idx);
    double e = 0.0;
    for (int m = 0; m < n_modes_; ++m) e += frequencies_(m) * lv[static_cast<std::size_t>(m)];
    diag.emplace_back(idx, idx, e);
  }
  hamiltonian_.resize(dimension_, dimension_);
  hamiltonian_.setFromTriplets(diag.begin(), diag.end());

  vacuum_ = Eigen::VectorXcd::Zero(dimension_);
  vacuum_(0) = 1.0;
}

std::vector<int> FockSpace::levels(Eigen::Index index) const {
  std::vector<int> out(static_cast<std::size_t>(n_modes_));
  for (int m = n_modes_ - 1; m >= 0; --m) {
    out[static_cast<std::size_t>(m)] = static_cast<int>(index % truncation_);
    index /= truncation_;
  }
  return out;
}

Eigen::Index FockSpace::index_of(const std::vector<int>& lv) const {
  if (static_cast<int>(lv.size()) != n_modes_) throw Error(ErrorKind::DimensionMismatch, "level tuple size");
  Eigen::Index idx = 0;
  for (int l : lv) {
    if (l < 0 || l >= truncation_) throw Error(ErrorKind::InvalidArgument, "level outside truncation");
    idx = idx * truncation_ + l;
  }
  return idx;
}

std::string FockSpace::label(Eigen::Index index) const {
  std::ostringstream out;
  out << '|';
  const auto lv = levels(index);
  for (std::size_t m = 0; m < lv.size(); ++m) out << (m ? "," : "") << lv[m];
  out << '>';
  return out.str();
}

bool FockSpace::below_edge(Eigen::Index index) const {
  const auto lv = levels(index);
  return std::all_of(lv.begin(), lv.end(), [&](int l) { return l <= truncation_ - 2; });
}

Eigen::VectorXcd FockSpace::mode_components(const ComplexMode& xi) const {
  if (xi.xi.size() != n_modes_) throw Error(ErrorKind::DimensionMismatch, "xi dimension does not match the system");
  return modes_.transpose().cast<cdouble>() * xi.xi;
}

std::vector<Eigen::MatrixXcd> weyl_factors(const FockSpace& f, const ComplexMode& xi) {
  const Eigen::VectorXcd c = f.mode_components(xi);
  const int n = f.truncation();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 1; l < n; ++l) a(l - 1, l) = std::sqrt(static_cast<double>(l));
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(f.n_modes()));
  for (int m = 0; m < f.n_modes(); ++m) {
    const Eigen::MatrixXcd gen = c(m) * a.adjoint() - std::conj(c(m)) * a;
    out.emplace_back(gen.exp());
  }
  return out;
}

Eigen::MatrixXcd weyl_matrix(const FockSpace& f, const ComplexMode& xi) {
  if (f.dimension() > kDenseWeylCap) {
    std::ostringstream msg;
    msg << "dense Weyl matrix of dimension " << f.dimension() << " exceeds " << kDenseWeylCap;
    throw Error(ErrorKind::DimensionCapExceeded, msg.str());
  }
  const auto factors = weyl_factors(f, xi);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Ones(1, 1);
  for (const auto& fac : factors) {
    Eigen::MatrixXcd next(w.rows() * fac.rows(), w.cols() * fac.cols());
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        next.block(i * fac.rows(), j * fac.cols(), fac.rows(), fac.cols()) = w(i, j) * fac;
    w = std::move(next);
  }
  return w;
}

Eigen::VectorXcd apply_weyl(const FockSpace& f, const ComplexMode& xi, const Eigen::VectorXcd& v) {
  if (v.size() != f.dimension()) throw Error(ErrorKind::DimensionMismatch, "state dimension mismatch");
  const auto factors = weyl_factors(f, xi);
  Eigen::VectorXcd out = v;
  for (int m = 0; m < f.n_modes(); ++m) out = apply_mode_operator(factors[static_cast<std::size_t>(m)], m, f, out);
  return out;
}

bool weyl_truncation_warning(const FockSpace& f, const ComplexMode& xi) {
  return xi.xi.norm() > std::sqrt(static_cast<double>(f.truncation())) / 4.0;
}

cdouble vacuum_weyl_oracle(const FockSpace& f, const ComplexMode& xi) {
  return f.vacuum().dot(apply_weyl(f, xi, f.vacuum()));
}

Eigen::VectorXcd one_quantum_state(const FockSpace& f, const ComplexMode& xi) {
  const Eigen::VectorXcd c = f.mode_components(xi);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(f.dimension());
  for (int m = 0; m < f.n_modes(); ++m) out += c(m) * (SparseOp(f.annihilation(m).adjoint()) * f.vacuum());
  return out;
}

CyclicityResult cyclicity_residuals(const FockSpace& f, const Region& b, int max_degree) {
  if (b.empty()) throw Error(ErrorKind::EmptyRegion, "region is empty");
  if (b.n() != f.n_modes()) throw Error(ErrorKind::DimensionMismatch, "region does not match the system");
  if (max_degree < 0) throw Error(ErrorKind::InvalidArgument, "max_degree must be nonnegative");

  // Enumerate exponent vectors (k_j, l_j) per site of B with total degree <= max_degree.
  const std::size_t slots = 2 * b.size();
  std::vector<int> exps(slots, 0);
  std::vector<Eigen::VectorXcd> columns;
  auto emit = [&] {
    Eigen::VectorXcd v = f.vacuum();
    for (std::size_t s = b.size(); s-- > 0;) {
      v = apply_site_powers(f, SitePower{b.members()[s], exps[2 * s], exps[2 * s + 1]}, std::move(v));
    }
    columns.push_back(std::move(v));
  };
  auto recurse = [&](auto&& self, std::size_t slot, int remaining) -> void {
    if (slot == slots) {
      emit();
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[slot] = e;
      self(self, slot + 1, remaining - e);
    }
    exps[slot] = 0;
  };
  recurse(recurse, 0, max_degree);

  Eigen::MatrixXcd span(f.dimension(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = columns[c];

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(span);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXcd basis = Eigen::MatrixXcd(qr.householderQ()).leftCols(rank);

  CyclicityResult result;
  result.max_degree = max_degree;
  result.monomials = span.cols();
  result.span_rank = rank;
  result.entries.reserve(static_cast<std::size_t>(f.dimension()));
  for (Eigen::Index idx = 0; idx < f.dimension(); ++idx) {
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(f.dimension());
    target(idx) = 1.0;
    const Eigen::VectorXcd coeffs = basis.row(idx).adjoint();
    const double residual = (target - basis * coeffs).norm();
    result.entries.push_back({f.label(idx), idx, residual, f.below_edge(idx)});
  }
  return result;
}

namespace {

Eigen::VectorXcd apply_polynomial(const FockSpace& f, const Region& b, const LocalPolynomial& poly) {
  bool nonzero = false;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(f.dimension());
  for (const auto& term : poly.terms) {
    if (term.coefficient != cdouble{}) nonzero = true;
    Eigen::VectorXcd v = f.vacuum();
    for (std::size_t k = term.factors.size(); k-- > 0;) {
      const SitePower& sp = term.factors[k];
      if (!b.contains(sp.site)) {
        throw Error(ErrorKind::NotSupportedInRegion, "polynomial factor acts outside the region");
      }
      if (sp.q_power < 0 || sp.p_power < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
      v = apply_site_powers(f, sp, std::move(v));
    }
    out += term.coefficient * v;
  }
  if (!nonzero) throw Error(ErrorKind::ZeroOperator, "all polynomial coefficients vanish");
  return out;
}

Eigen::VectorXcd apply_window(const FockSpace& f, const Region& b, const SpectralWindow& w) {
  if (!b.contains(w.site)) throw Error(ErrorKind::NotSupportedInRegion, "window site outside the region");
  if (!(w.lo < w.hi)) throw Error(ErrorKind::InvalidArgument, "window needs lo < hi");
  // Q_j is real symmetric in the occupation basis.
  const Eigen::MatrixXd q = Eigen::MatrixXd(f.site_q(w.site).real());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::DecompositionFailure, "Q_j eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::MatrixXd& u = solver.eigenvectors();
  Eigen::VectorXd weights(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    weights(k) = (ev(k) >= w.lo && ev(k) <= w.hi) ? u(0, k) : 0.0;  // <k|0> = u(0, k)
  }
  return (u * weights).cast<cdouble>();
}

}  // namespace

Eigen::VectorXcd apply_local_operator(const FockSpace& f, const Region& b, const LocalOperator& op) {
  if (b.n() != f.n_modes()) throw Error(ErrorKind::DimensionMismatch, "region does not match the system");
  return std::visit(
      [&](const auto& o) -> Eigen::VectorXcd {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LocalPolynomial>) {
          return apply_polynomial(f, b, o);
        } else {
          return apply_window(f, b, o);
        }
      },
      op);
}

double separability_check(const FockSpace& f, const Region& b, const LocalOperator& op) {
  return apply_local_operator(f, b, op).norm();
}

}  // namespace qlab
