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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "qlab/fock.hpp"
#include "qlab/knight.hpp"
#include "qlab/measure.hpp"
#include "qlab/spectral.hpp"

using namespace qlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double budget_s;
  std::function<Outcome()> body;
};

DynamicalMatrix custom2(double a, double b, double c) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, b, c;
  return build_custom(m);
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome knight_dichotomy() {
  const SpectralData ring(build_chain(8, 1.0, 1.0, true));
  bool ok = true;
  for (Eigen::Index j = 0; j < 8; ++j) {
    const Region b(8, {j});
    ok = ok && localizable_modes(ring, b).localizable_dim == 0;
    ok = ok && knight_verdict(ring, b) == KnightVerdict::NoFiniteParticleLocalState;
  }
  const SpectralData diag(custom2(1.0, 0.0, 4.0));
  const Region b0(2, {0});
  const auto dim = localizable_modes(diag, b0).localizable_dim;
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
  e0(0) = 1.0;
  const auto d = one_quantum_defect(diag, {e0}, b0, SamplerSpec{200, 1.0, 0});
  ok = ok && dim == 1 && d.sampled_defect <= 1e-12;
  return {ok, fmt("ring singletons dim=0: %s; diag dim=%ld, defect=%.3g", ok ? "yes" : "no", static_cast<long>(dim),
                  d.sampled_defect)};
}

Outcome kernel_equivalence() {
  int pairs = 0, disagreements = 0;
  double closest = 1.0;
  for (Eigen::Index n : {2, 4, 6, 8}) {
    for (bool periodic : {false, true}) {
      const SpectralData s(build_chain(n, 1.0, 1.0, periodic));
      const double tol = kNonlocalityRelTol * s.omega_norm();
      for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (mask & (1u << i)) members.push_back(i);
        }
        const Region b(n, members);
        const auto rep = localizable_modes(s, b);
        const double sigma = offblock_min_singular(s, b);
        if (rep.localizable_dim == 0) closest = std::min(closest, sigma / s.omega_norm());
        ++pairs;
        if ((rep.localizable_dim > 0) != (sigma <= tol)) ++disagreements;
      }
    }
  }
  return {pairs >= 20 && disagreements == 0,
          fmt("%d pairs, %d disagreements, smallest sigma_min/sigma_max without a kernel=%.3g", pairs, disagreements, closest)};
}

Outcome oracle_agreement() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SpectralData one(build_custom(Eigen::MatrixXd::Constant(1, 1, 4.0)));
  const SpectralData two(custom2(2.0, 1.0, 2.0));
  const FockSpace f1(one, 30), f2(two, 30);
  double worst_vac = 0.0, worst_one = 0.0;
  for (int i = 0; i < 50; ++i) {
    const FockSpace& f = (i % 2 == 0) ? f1 : f2;
    const Eigen::Index n = f.n_modes();
    Eigen::VectorXcd xi = Eigen::VectorXcd::NullaryExpr(n, [&] { return cdouble(u(rng), u(rng)); });
    xi *= std::abs(u(rng)) / xi.norm();
    worst_vac = std::max(worst_vac, std::abs(vacuum_weyl({xi}) - vacuum_weyl_oracle(f, {xi})));
  }
  for (int i = 0; i < 50; ++i) {
    const FockSpace& f = (i % 2 == 0) ? f1 : f2;
    const Eigen::Index n = f.n_modes();
    Eigen::VectorXcd xi = Eigen::VectorXcd::NullaryExpr(n, [&] { return cdouble(u(rng), u(rng)); });
    xi /= xi.norm();
    Eigen::VectorXcd eta = Eigen::VectorXcd::NullaryExpr(n, [&] { return cdouble(u(rng), u(rng)); });
    eta *= std::abs(u(rng)) / eta.norm();
    const Eigen::VectorXcd psi = one_quantum_state(f, {xi});
    const cdouble sandwich = psi.dot(apply_weyl(f, {eta}, psi));
    worst_one = std::max(worst_one, std::abs(sandwich - one_quantum_weyl({xi}, {eta})));
  }
  return {worst_vac <= 1e-6 && worst_one <= 1e-6,
          fmt("max |vacuum diff|=%.3g, max |one-quantum diff|=%.3g", worst_vac, worst_one)};
}

Outcome coherent_locality() {
  const SamplerSpec spec{500, 1.0, 0};
  const SpectralData pair(custom2(2.0, 1.0, 2.0));
  PhasePoint x2 = PhasePoint::zero(2);
  x2.q(0) = 1.0;
  x2.p(0) = 0.5;
  const auto a = coherent_locality_check(pair, x2, Region(2, {0}), spec);

  const SpectralData chain(build_chain(6, 1.0, 1.0, false));
  PhasePoint x6 = PhasePoint::zero(6);
  x6.q(2) = 0.7;
  x6.q(3) = -1.1;
  x6.p(3) = 0.4;
  const auto b = coherent_locality_check(chain, x6, Region(6, {2, 3}), spec);
  const double worst = std::max(a.sampled_defect, b.sampled_defect);
  return {worst <= 1e-12 && a.samples == 500 && b.samples == 500, fmt("max defect over 2x500 samples=%.3g", worst)};
}

Outcome licht_breakage() {
  const SpectralData pair(custom2(2.0, 1.0, 2.0));
  const Region b(2, {0});
  PhasePoint x1 = PhasePoint::zero(2), x2 = PhasePoint::zero(2);
  x1.q(0) = 1.0;
  x2.q(0) = 2.0;
  const auto grid = default_coefficient_grid();
  const auto witness = licht_pair_test(pair, x1, x2, b, grid, SamplerSpec{});
  const auto same = licht_pair_test(pair, x1, x1, b, grid, SamplerSpec{});
  return {witness.max_defect >= 1e-3 && same.max_defect <= 1e-12,
          fmt("witness max defect=%.4g, identical pair=%.3g", witness.max_defect, same.max_defect)};
}

Outcome cyclicity_contrast() {
  const FockSpace coupled(SpectralData(custom2(2.0, 1.0, 2.0)), 12);
  const FockSpace diag(SpectralData(custom2(1.0, 0.0, 4.0)), 12);
  const Region b(2, {0});
  const auto tc = static_cast<std::size_t>(coupled.index_of({0, 1}));
  const auto td = static_cast<std::size_t>(diag.index_of({0, 1}));
  double prev = 2.0, worst_diag = 0.0;
  bool monotone = true;
  int first_below = -1;
  std::string trace;
  for (int d = 0; d <= 8; ++d) {
    const double r = cyclicity_residuals(coupled, b, d).entries[tc].residual;
    monotone = monotone && r <= prev + 1e-12;
    prev = r;
    if (first_below < 0 && r < 0.1) first_below = d;
    worst_diag = std::max(worst_diag, std::abs(cyclicity_residuals(diag, b, d).entries[td].residual - 1.0));
    trace += fmt("%s%.2g", d == 0 ? "" : ",", r);
  }
  return {first_below >= 0 && monotone && worst_diag <= 1e-12,
          fmt("coupled |0,1> residuals [%s], below 0.1 at degree %d; diagonal |r-1|<=%.3g", trace.c_str(), first_below,
              worst_diag)};
}

Outcome separability_positive() {
  const FockSpace f(SpectralData(custom2(2.0, 1.0, 2.0)), 16);
  const Region b(2, {0});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double smallest = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    LocalPolynomial poly;
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      const int k = static_cast<int>(rng() % 4);
      const int l = static_cast<int>(rng() % static_cast<std::uint64_t>(4 - k));
      poly.terms.push_back(PolynomialTerm{cdouble(u(rng), u(rng)), {SitePower{0, k, l}}});
    }
    smallest = std::min(smallest, separability_check(f, b, poly));
  }
  return {smallest > 1e-12, fmt("min ||A|0>|| over 100 polynomials=%.4g", smallest)};
}

Outcome separability_window() {
  const SpectralData s(custom2(2.0, 1.0, 2.0));
  const FockSpace f(s, 40);
  const WindowEvent w{0, -0.1, 0.1};
  const double norm = separability_check(f, Region(2, {0}), SpectralWindow{w.site, w.lo, w.hi});
  const double p = window_probability(s, w);
  const double diff = std::abs(norm * norm - p);
  return {diff <= 1e-4, fmt("window [-0.1,0.1] site 0, N=40: closed form=%.10f, Fock projector=%.10f, |diff|=%.3g",
                            p, norm * norm, diff)};
}

Outcome vacuum_collapse() {
  constexpr double kPinned = 0.071191921575614;
  const SpectralData pair(custom2(2.0, 1.0, 2.0));
  const auto prof = deviation_profile(pair, {0, -0.1, 0.1});
  const double dev = prof[1].relative_deviation;
  const SpectralData diag(custom2(1.0, 0.0, 4.0));
  const double control = deviation_profile(diag, {0, -0.1, 0.1})[1].relative_deviation;
  return {dev > 1e-3 && std::abs(dev - kPinned) <= 1e-12 && control <= 1e-14,
          fmt("site 1 deviation=%.15f (pinned %.15f), uncoupled control=%.3g", dev, kPinned, control)};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "qlab_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "pair.toml";
  {
    std::ofstream out(cfg);
    out << "[model]\nkind = \"custom\"\n[custom]\nentries = [[2.0, 1.0], [1.0, 2.0]]\n"
           "[region]\nmembers = [0]\n[experiment]\nkind = \"all\"\n[sampler]\nseed = 12345\n";
  }
  const fs::path out = dir / "out";
  const std::string cmd = std::string(QLAB_CLI_PATH) + " '" + cfg.string() + "' --out-dir '" + out.string() +
                          "' > /dev/null 2>&1";
  std::vector<std::string> runs[2];
  int codes[2];
  for (int r = 0; r < 2; ++r) {
    const int st = std::system(cmd.c_str());
    codes[r] = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    for (const char* name : {"report.json", "cyclicity.csv", "profile.csv"}) runs[r].push_back(slurp(out / name));
  }
  fs::remove_all(dir);
  const bool same = runs[0] == runs[1] && !runs[0][0].empty();
  return {same && codes[0] == 0 && codes[1] == 0,
          fmt("exit codes %d/%d, report.json %zu bytes, outputs identical: %s", codes[0], codes[1], runs[0][0].size(),
              same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "Knight dichotomy", 1.0, knight_dichotomy},
      {"2", "Kernel equivalence", 5.0, kernel_equivalence},
      {"3", "Gaussian/Fock oracle agreement", 60.0, oracle_agreement},
      {"4", "Coherent locality", 1.0, coherent_locality},
      {"5", "Licht superposition breakage", 5.0, licht_breakage},
      {"6", "Cyclicity contrast", 30.0, cyclicity_contrast},
      {"7a", "Separability: local polynomials", 60.0, separability_positive},
      {"7b", "Separability: window probability vs Fock projector", 60.0, separability_window},
      {"8", "Vacuum collapse non-locality", 1.0, vacuum_collapse},
      {"9", "Determinism", 600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s [%s] %s: %s (%.3f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s, in_budget ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
