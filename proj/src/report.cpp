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

#include "qlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlab/error.hpp"
#include "qlab/fock.hpp"
#include "qlab/gaussian.hpp"
#include "qlab/knight.hpp"
#include "qlab/measure.hpp"
#include "qlab/spectral.hpp"

namespace qlab {

using ojson = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

bool wants(const ExperimentConfig& c, const std::string& kind) { return c.experiment == "all" || c.experiment == kind; }

// Sites are 0-based internally and labelled 1-based in reports.
ojson site_labels(const std::vector<Eigen::Index>& members) {
  ojson out = ojson::array();
  for (auto m : members) out.push_back(m + 1);
  return out;
}

ojson complex_vector(const Eigen::VectorXcd& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

ojson real_vector(const Eigen::VectorXd& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

PhasePoint to_point(const PhasePointSpec& spec) {
  return {Eigen::Map<const Eigen::VectorXd>(spec.q.data(), static_cast<Eigen::Index>(spec.q.size())),
          Eigen::Map<const Eigen::VectorXd>(spec.p.data(), static_cast<Eigen::Index>(spec.p.size()))};
}

ojson point_json(const PhasePoint& x) { return {{"q", real_vector(x.q)}, {"p", real_vector(x.p)}}; }

ojson defect_json(const DefectReport& r) {
  return {{"region", r.region.members()},
          {"region_sites", site_labels(r.region.members())},
          {"algebraic_distance", r.algebraic_distance},
          {"sampled_defect", r.sampled_defect},
          {"samples", r.samples},
          {"verdict", std::string(to_string(r.verdict))},
          {"algebraic_local", r.algebraic_local},
          {"consistent", r.consistent},
          {"seed", r.seed},
          {"note", r.note}};
}

ojson licht_json(const LichtReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"algebraic_prediction", std::string(to_string(r.algebraic_prediction))},
          {"max_defect", r.max_defect},
          {"grid_points", r.grid_points},
          {"samples", r.samples},
          {"seed", r.seed},
          {"consistent", r.consistent}};
}

class Runner {
 public:
  explicit Runner(const ExperimentConfig& c)
      : c_(c), model_(build_model(c.model)), s_(model_), b_(model_.n(), c.region), bc_(b_.complement()) {
    require_proper_region(b_);
  }

  ReportBundle run() {
    ReportBundle out;
    ojson& r = out.report;
    r["schema"] = 1;
    r["config"] = config_to_json(c_);
    r["model"] = {{"kind", c_.model.kind},
                  {"n", model_.n()},
                  {"eigenvalues", real_vector(s_.eigenvalues())},
                  {"frequencies", real_vector(s_.frequencies())}};
    if (wants(c_, "locality")) r["locality"] = locality();
    if (wants(c_, "knight")) r["knight"] = knight();
    if (wants(c_, "coherent")) r["coherent"] = coherent();
    if (wants(c_, "licht")) r["licht"] = licht();
    if (wants(c_, "cyclicity")) r["cyclicity"] = cyclicity(out.cyclicity_csv);
    if (wants(c_, "separability")) r["separability"] = separability();
    if (wants(c_, "measure")) r["measure"] = measure(out.profile_csv);
    if (out.cyclicity_csv.empty()) out.cyclicity_csv = "basis_label,max_degree,residual\n";
    if (out.profile_csv.empty()) out.profile_csv = "window,site,vacuum_variance,post_variance,relative_deviation\n";
    r["consistent"] = inconsistencies_.empty();
    r["inconsistencies"] = inconsistencies_;
    out.consistent = inconsistencies_.empty();
    return out;
  }

 private:
  void expect(bool ok, const std::string& what) {
    if (!ok) inconsistencies_.push_back(what);
  }

  Eigen::Index first_site() const { return b_.members().front(); }

  ojson locality() {
    const LocalityReport loc = localizable_modes(s_, b_);
    ojson basis = ojson::array();
    for (const auto& v : loc.localizable_basis) basis.push_back(complex_vector(v));
    expect((loc.localizable_dim > 0) == !loc.strongly_nonlocal,
           "locality: stacked-kernel dimension disagrees with the off-block singular value test");
    return {{"region", loc.region.members()},
            {"region_sites", site_labels(loc.region.members())},
            {"sigma_min_offblock", loc.sigma_min_offblock},
            {"strongly_nonlocal", loc.strongly_nonlocal},
            {"localizable_dim", loc.localizable_dim},
            {"localizable_basis", basis},
            {"nonlocality_threshold", loc.nonlocality_threshold}};
  }

  ojson knight() {
    const LocalityReport loc = localizable_modes(s_, b_);
    const KnightVerdict verdict = knight_verdict(s_, b_);
    Eigen::VectorXcd xi;
    std::string source;
    if (c_.knight_xi_re || c_.knight_xi_im) {
      xi = Eigen::VectorXcd::Zero(model_.n());
      if (c_.knight_xi_re) xi.real() = Eigen::Map<const Eigen::VectorXd>(c_.knight_xi_re->data(), model_.n());
      if (c_.knight_xi_im) xi.imag() = Eigen::Map<const Eigen::VectorXd>(c_.knight_xi_im->data(), model_.n());
      if (xi.norm() == 0.0) throw Error(ErrorKind::Config, "key 'knight.xi_re/xi_im' describes the zero vector");
      xi /= xi.norm();
      source = "config (normalized)";
    } else if (!loc.localizable_basis.empty()) {
      xi = loc.localizable_basis.front();
      source = "first localizable mode";
    } else {
      xi = Eigen::VectorXcd::Zero(model_.n());
      xi(first_site()) = 1.0;
      source = "unit vector at first region site";
    }
    const DefectReport d = one_quantum_defect(s_, ComplexMode{xi}, b_, c_.sampler);
    expect(d.consistent, "knight: sampled one-quantum defect contradicts the algebraic distance");
    expect(!(verdict == KnightVerdict::NoFiniteParticleLocalState && d.verdict == LocalityVerdict::StrictlyLocal),
           "knight: strictly local one-quantum state found although the region is strongly non-local");
    return {{"verdict", std::string(to_string(verdict))},
            {"localizable_dim", loc.localizable_dim},
            {"one_quantum", {{"xi", complex_vector(xi)}, {"xi_source", source}, {"defect", defect_json(d)}}}};
  }

  ojson coherent() {
    PhasePoint inside = PhasePoint::zero(model_.n());
    if (c_.coherent_x) {
      inside = to_point(*c_.coherent_x);
    } else {
      inside.q(first_site()) = 1.0;
      inside.p(first_site()) = 0.5;
    }
    PhasePoint outside = PhasePoint::zero(model_.n());
    outside.q(bc_.members().front()) = 1.0;

    const DefectReport din = coherent_locality_check(s_, inside, b_, c_.sampler);
    const DefectReport dout = coherent_locality_check(s_, outside, b_, c_.sampler);
    expect(din.consistent, "coherent: sampled defect contradicts the support criterion");
    expect(dout.consistent, "coherent: sampled defect contradicts the support criterion (control)");
    return {{"state", {{"x", point_json(inside)}, {"defect", defect_json(din)}}},
            {"control_outside", {{"x", point_json(outside)}, {"defect", defect_json(dout)}}}};
  }

  ojson licht() {
    PhasePoint x1 = PhasePoint::zero(model_.n());
    PhasePoint x2 = PhasePoint::zero(model_.n());
    if (c_.licht_x1) {
      x1 = to_point(*c_.licht_x1);
    } else {
      x1.q(first_site()) = 1.0;
    }
    if (c_.licht_x2) {
      x2 = to_point(*c_.licht_x2);
    } else {
      x2.q(first_site()) = 2.0;
    }
    const auto grid = default_coefficient_grid();
    const LichtReport pair = licht_pair_test(s_, x1, x2, b_, grid, c_.sampler);
    const LichtReport same = licht_pair_test(s_, x1, x1, b_, grid, c_.sampler);
    expect(pair.consistent, "licht: superposition verdict contradicts the algebraic prediction");
    expect(same.consistent, "licht: identical-state control contradicts the algebraic prediction");
    ojson grid_json = ojson::array();
    for (const auto& [a, b] : grid) grid_json.push_back({{a.real(), a.imag()}, {b.real(), b.imag()}});
    return {{"x1", point_json(x1)},
            {"x2", point_json(x2)},
            {"coefficient_grid", grid_json},
            {"pair", licht_json(pair)},
            {"control_identical", licht_json(same)}};
  }

  ojson cyclicity(std::string& csv) {
    const FockSpace f(s_, c_.truncation);
    std::ostringstream rows;
    rows << "basis_label,max_degree,residual\n";
    ojson per_degree = ojson::array();
    ojson one_quantum = ojson::object();
    for (int d = 0; d <= c_.max_degree; ++d) {
      const CyclicityResult res = cyclicity_residuals(f, b_, d);
      double worst = 0.0;
      for (const auto& e : res.entries) {
        rows << '"' << e.basis_label << "\"," << d << ',' << format_double(e.residual) << '\n';
        if (e.below_edge) worst = std::max(worst, e.residual);
        const auto lv = f.levels(e.basis_index);
        int total = 0;
        for (int l : lv) total += l;
        if (total == 1) one_quantum[e.basis_label].push_back(e.residual);
      }
      per_degree.push_back({{"max_degree", d},
                            {"monomials", res.monomials},
                            {"span_rank", res.span_rank},
                            {"max_residual_below_edge", worst}});
    }
    csv = rows.str();
    return {{"truncation", f.truncation()},
            {"dimension", f.dimension()},
            {"region", b_.members()},
            {"per_degree", per_degree},
            {"one_quantum_residuals_by_degree", one_quantum}};
  }

  std::vector<WindowEvent> windows() const {
    if (!c_.windows.empty()) return c_.windows;
    return {WindowEvent{first_site(), -0.1, 0.1}};
  }

  ojson separability() {
    const FockSpace f(s_, c_.truncation);
    const Eigen::Index j = first_site();
    auto mono = [&](int k, int l) { return LocalPolynomial{{PolynomialTerm{{1.0, 0.0}, {SitePower{j, k, l}}}}}; };
    const std::vector<std::pair<std::string, LocalOperator>> ops = {
        {"identity", mono(0, 0)},
        {"Q", mono(1, 0)},
        {"P", mono(0, 1)},
        {"QP", mono(1, 1)},
    };
    ojson polys = ojson::array();
    for (const auto& [name, op] : ops) {
      polys.push_back({{"operator", name}, {"site", j + 1}, {"norm", separability_check(f, b_, op)}});
    }
    ojson wins = ojson::array();
    for (const auto& w : windows()) {
      if (!b_.contains(w.site)) continue;
      const double norm = separability_check(f, b_, SpectralWindow{w.site, w.lo, w.hi});
      const double prob = window_probability(s_, w);
      wins.push_back({{"site", w.site + 1},
                      {"lo", w.lo},
                      {"hi", w.hi},
                      {"norm", norm},
                      {"norm_squared", norm * norm},
                      {"window_probability", prob},
                      {"abs_difference", std::abs(norm * norm - prob)}});
    }
    return {{"truncation", f.truncation()}, {"polynomials", polys}, {"windows", wins}};
  }

  ojson measure(std::string& csv) {
    std::ostringstream rows;
    rows << "window,site,vacuum_variance,post_variance,relative_deviation\n";
    ojson out = ojson::array();
    int idx = 0;
    for (const auto& w : windows()) {
      ++idx;
      const auto profile = deviation_profile(s_, w);
      ojson prof = ojson::array();
      for (const auto& e : profile) {
        const ConditionalMoments cm = conditional_moments(s_, w, e.site);
        prof.push_back({{"site", e.site + 1},
                        {"vacuum_variance", e.vacuum_variance},
                        {"post_second_moment", e.post_second_moment},
                        {"post_mean", cm.mean},
                        {"relative_deviation", e.relative_deviation}});
        rows << idx << ',' << e.site + 1 << ',' << format_double(e.vacuum_variance) << ','
             << format_double(e.post_second_moment) << ',' << format_double(e.relative_deviation) << '\n';
      }
      out.push_back({{"window", idx},
                     {"site", w.site + 1},
                     {"lo", w.lo},
                     {"hi", w.hi},
                     {"probability", window_probability(s_, w)},
                     {"log_probability", log_window_probability(s_, w)},
                     {"profile", prof}});
    }
    csv = rows.str();
    return out;
  }

  const ExperimentConfig& c_;
  DynamicalMatrix model_;
  SpectralData s_;
  Region b_;
  Region bc_;
  std::vector<std::string> inconsistencies_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace

ReportBundle run(const ExperimentConfig& config) {
  validate_config(config);
  return Runner(config).run();
}

void emit_report(const ReportBundle& bundle, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + out_dir + "': " + ec.message());
  write_file(dir / "report.json", bundle.report.dump(2) + "\n");
  write_file(dir / "cyclicity.csv", bundle.cyclicity_csv);
  write_file(dir / "profile.csv", bundle.profile_csv);
}

}  // namespace qlab
