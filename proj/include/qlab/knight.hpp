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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlab/gaussian.hpp"
#include "qlab/spectral.hpp"

namespace qlab {

/// Sampled locality defects at or below this value count as zero.
inline constexpr double kDefectTol = 1e-9;
/// Algebraic distances at or below this value count as zero.
inline constexpr double kAlgebraicTol = 1e-10;

/// Deterministic recipe for drawing test points Y supported in a region:
/// entries i.i.d. uniform in [-amplitude, amplitude] on the region's sites.
struct SamplerSpec {
  int count = 200;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
};

/// Draws `spec.count` phase points supported on `support`. Same spec, same
/// points, on every platform (the uniform variate is built from the raw
/// 64-bit engine output, not from a library distribution).
std::vector<PhasePoint> sample_phase_points(const Region& support, const SamplerSpec& spec);

enum class LocalityVerdict { StrictlyLocal, NotLocal };
std::string_view to_string(LocalityVerdict v);

struct DefectReport {
  Region region;
  double algebraic_distance = 0.0;
  double sampled_defect = 0.0;
  int samples = 0;
  LocalityVerdict verdict = LocalityVerdict::NotLocal;
  /// Verdict of the algebraic criterion alone.
  bool algebraic_local = false;
  /// Sampling agrees with the algebraic criterion.
  bool consistent = true;
  std::uint64_t seed = 0;
  std::string note;
};

/// Strict locality of the one-quantum state a^dag(xi)|0> over B.
DefectReport one_quantum_defect(const SpectralData& s, const ComplexMode& xi, const Region& b,
                                const SamplerSpec& sampler);

enum class KnightVerdict { NoFiniteParticleLocalState, LocalOneQuantumStateExists };
std::string_view to_string(KnightVerdict v);

KnightVerdict knight_verdict(const SpectralData& s, const Region& b);

/// Strict locality of the coherent state W(z(X))|0> over B.
DefectReport coherent_locality_check(const SpectralData& s, const PhasePoint& x, const Region& b,
                                     const SamplerSpec& sampler);

enum class LichtVerdict { AllSuperpositionsLocal, SuperpositionBreaksLocality };
std::string_view to_string(LichtVerdict v);

struct LichtReport {
  LichtVerdict verdict = LichtVerdict::AllSuperpositionsLocal;
  /// Verdict predicted from W(z(X2))^* W(z(X1)) being a multiple of the identity (X1 == X2).
  LichtVerdict algebraic_prediction = LichtVerdict::AllSuperpositionsLocal;
  double max_defect = 0.0;
  std::size_t grid_points = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool consistent = true;
};

using CoefficientPair = std::pair<cdouble, cdouble>;

/// The coefficient grid {(1,1), (1,i), (1,-1)} / sqrt(2).
std::vector<CoefficientPair> default_coefficient_grid();

/// Superposition test for two strictly local coherent states. Both points must
/// be supported in B (throws NotSupportedInRegion otherwise).
LichtReport licht_pair_test(const SpectralData& s, const PhasePoint& x1, const PhasePoint& x2, const Region& b,
                            const std::vector<CoefficientPair>& coeff_grid, const SamplerSpec& sampler);

}  // namespace qlab
