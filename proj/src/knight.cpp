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

#include "qlab/knight.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qlab/error.hpp"

namespace qlab {

std::vector<PhasePoint> sample_phase_points(const Region& support, const SamplerSpec& spec) {
  if (spec.count < 1) throw Error(ErrorKind::InvalidArgument, "sampler count must be positive");
  if (!(spec.amplitude > 0.0)) throw Error(ErrorKind::InvalidArgument, "sampler amplitude must be positive");
  std::mt19937_64 engine(spec.seed);
  auto uniform = [&] {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return spec.amplitude * (2.0 * u - 1.0);
  };
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int k = 0; k < spec.count; ++k) {
    PhasePoint y = PhasePoint::zero(support.n());
    for (auto site : support.members()) y.q(site) = uniform();
    for (auto site : support.members()) y.p(site) = uniform();
    out.push_back(std::move(y));
  }
  return out;
}

std::string_view to_string(LocalityVerdict v) {
  return v == LocalityVerdict::StrictlyLocal ? "StrictlyLocal" : "NotLocal";
}

std::string_view to_string(KnightVerdict v) {
  return v == KnightVerdict::NoFiniteParticleLocalState ? "NoFiniteParticleLocalState"
                                                        : "LocalOneQuantumStateExists";
}

std::string_view to_string(LichtVerdict v) {
  return v == LichtVerdict::AllSuperpositionsLocal ? "AllSuperpositionsLocal" : "SuperpositionBreaksLocality";
}

namespace {

void finish(DefectReport& r) {
  const bool sampled_local = r.sampled_defect <= kDefectTol;
  r.consistent = sampled_local == r.algebraic_local;
  r.verdict = (sampled_local && r.algebraic_local) ? LocalityVerdict::StrictlyLocal : LocalityVerdict::NotLocal;
}

}  // namespace

DefectReport one_quantum_defect(const SpectralData& s, const ComplexMode& xi, const Region& b,
                                const SamplerSpec& sampler) {
  if (xi.xi.size() != s.n()) throw Error(ErrorKind::DimensionMismatch, "xi dimension does not match the system");
  if (std::abs(xi.xi.norm() - 1.0) > 1e-12) throw Error(ErrorKind::NotNormalized, "one-quantum vector must have unit norm");
  if (b.empty()) throw Error(ErrorKind::EmptyRegion, "region is empty");

  DefectReport r{b, 0.0, 0.0, 0, LocalityVerdict::NotLocal, false, true, sampler.seed, ""};
  if (b.full()) {
    // No test points outside B: every state is trivially local.
    r.algebraic_local = true;
    r.note = "region covers every site";
    finish(r);
    return r;
  }

  const LocalityReport loc = localizable_modes(s, b);
  Eigen::VectorXcd residual = xi.xi;
  for (const auto& v : loc.localizable_basis) residual -= inner(v, xi.xi) * v;
  r.algebraic_distance = residual.norm();
  r.algebraic_local = r.algebraic_distance <= kAlgebraicTol;

  for (const auto& y : sample_phase_points(b.complement(), sampler)) {
    const ComplexMode eta = z_map(s, y);
    const double d = std::abs(one_quantum_weyl(xi, eta) - vacuum_weyl(eta));
    r.sampled_defect = std::max(r.sampled_defect, d);
    ++r.samples;
  }
  finish(r);
  return r;
}

KnightVerdict knight_verdict(const SpectralData& s, const Region& b) {
  const LocalityReport loc = localizable_modes(s, b);
  return loc.localizable_dim == 0 ? KnightVerdict::NoFiniteParticleLocalState
                                  : KnightVerdict::LocalOneQuantumStateExists;
}

DefectReport coherent_locality_check(const SpectralData& s, const PhasePoint& x, const Region& b,
                                     const SamplerSpec& sampler) {
  DefectReport r{b, 0.0, 0.0, 0, LocalityVerdict::NotLocal, false, true, sampler.seed, ""};
  r.algebraic_distance = x.norm_outside(b);
  r.algebraic_local = r.algebraic_distance <= kAlgebraicTol;
  if (x.q.isZero(0.0) && x.p.isZero(0.0)) r.note = "is vacuum";

  if (!b.full()) {
    for (const auto& y : sample_phase_points(b.complement(), sampler)) {
      const double d = std::abs(coherent_weyl(s, x, y) - vacuum_weyl(z_map(s, y)));
      r.sampled_defect = std::max(r.sampled_defect, d);
      ++r.samples;
    }
  }
  finish(r);
  return r;
}

std::vector<CoefficientPair> default_coefficient_grid() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{cdouble{h, 0.0}, cdouble{h, 0.0}}, {cdouble{h, 0.0}, cdouble{0.0, h}}, {cdouble{h, 0.0}, cdouble{-h, 0.0}}};
}

LichtReport licht_pair_test(const SpectralData& s, const PhasePoint& x1, const PhasePoint& x2, const Region& b,
                            const std::vector<CoefficientPair>& coeff_grid, const SamplerSpec& sampler) {
  require_proper_region(b);
  if (!x1.supported_in(b) || !x2.supported_in(b)) {
    throw Error(ErrorKind::NotSupportedInRegion, "both coherent states must be supported in the region");
  }
  if (coeff_grid.empty()) throw Error(ErrorKind::InvalidArgument, "coefficient grid is empty");

  LichtReport r;
  r.grid_points = coeff_grid.size();
  r.seed = sampler.seed;
  const bool same = x1.q == x2.q && x1.p == x2.p;
  r.algebraic_prediction = same ? LichtVerdict::AllSuperpositionsLocal : LichtVerdict::SuperpositionBreaksLocality;

  const auto points = sample_phase_points(b.complement(), sampler);
  r.samples = static_cast<int>(points.size());
  for (const auto& y : points) {
    const cdouble vac = vacuum_weyl(z_map(s, y));
    for (const auto& [alpha, beta] : coeff_grid) {
      // alpha = -beta on identical states is the zero vector; skip it
      if (same && std::abs(alpha + beta) < 1e-14) continue;
      const double d = std::abs(superposition_weyl(alpha, beta, s, x1, x2, y) - vac);
      r.max_defect = std::max(r.max_defect, d);
    }
  }
  r.verdict = r.max_defect <= kDefectTol ? LichtVerdict::AllSuperpositionsLocal
                                         : LichtVerdict::SuperpositionBreaksLocality;
  r.consistent = r.verdict == r.algebraic_prediction;
  return r;
}

}  // namespace qlab
