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

#include "qlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "qlab/error.hpp"

namespace qlab {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::string where(const toml::node& node) {
  std::ostringstream out;
  const auto& src = node.source();
  if (src.begin.line > 0) out << " (line " << src.begin.line << ")";
  return out.str();
}

// Known keys per section; anything else is rejected so typos surface.
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"model", {"kind", "n", "coupling", "pinning", "periodic", "grid_points", "mass", "spacing"}},
      {"custom", {"entries"}},
      {"region", {"members"}},
      {"experiment", {"kind"}},
      {"sampler", {"count", "amplitude", "seed"}},
      {"fock", {"truncation", "max_degree"}},
      {"output", {"dir"}},
      {"knight", {"xi_re", "xi_im"}},
      {"coherent", {"q", "p"}},
      {"licht", {"x1_q", "x1_p", "x2_q", "x2_p"}},
  };
  return s;
}

class TomlReader {
 public:
  explicit TomlReader(const toml::table& root) : root_(root) {}

  template <typename T>
  void scalar(const std::string& section, const std::string& key, T& out) const {
    const toml::node* node = find(section, key);
    if (!node) return;
    if constexpr (std::is_same_v<T, bool>) {
      if (auto v = node->value_exact<bool>()) {
        out = *v;
        return;
      }
      type_error(section, key, "a boolean", *node);
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (auto v = node->value_exact<std::string>()) {
        out = *v;
        return;
      }
      type_error(section, key, "a string", *node);
    } else if constexpr (std::is_floating_point_v<T>) {
      if (node->is_number()) {
        out = *node->value<double>();
        return;
      }
      type_error(section, key, "a number", *node);
    } else {
      if (auto v = node->value_exact<std::int64_t>()) {
        out = static_cast<T>(*v);
        return;
      }
      type_error(section, key, "an integer", *node);
    }
  }

  std::optional<std::vector<double>> numbers(const std::string& section, const std::string& key) const {
    const toml::node* node = find(section, key);
    if (!node) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (!arr) type_error(section, key, "an array of numbers", *node);
    std::vector<double> out;
    for (const auto& el : *arr) {
      if (!el.is_number()) type_error(section, key, "an array of numbers", el);
      out.push_back(*el.value<double>());
    }
    return out;
  }

  std::optional<std::vector<std::int64_t>> integers(const std::string& section, const std::string& key) const {
    const toml::node* node = find(section, key);
    if (!node) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (!arr) type_error(section, key, "an array of integers", *node);
    std::vector<std::int64_t> out;
    for (const auto& el : *arr) {
      auto v = el.value_exact<std::int64_t>();
      if (!v) type_error(section, key, "an array of integers", el);
      out.push_back(*v);
    }
    return out;
  }

  const toml::node* find(const std::string& section, const std::string& key) const {
    const toml::node* sec = root_.get(section);
    if (!sec) return nullptr;
    const toml::table* tbl = sec->as_table();
    if (!tbl) config_error("'" + section + "' must be a table" + where(*sec));
    return tbl->get(key);
  }

  [[noreturn]] static void type_error(const std::string& section, const std::string& key, const std::string& what,
                                      const toml::node& node) {
    config_error("key '" + section + "." + key + "' must be " + what + where(node));
  }

 private:
  const toml::table& root_;
};

void check_known_keys(const toml::table& root) {
  for (const auto& [k, node] : root) {
    const std::string key(k.str());
    if (key == "windows") {
      const toml::array* arr = node.as_array();
      if (!arr) config_error("'windows' must be an array of tables" + where(node));
      for (const auto& el : *arr) {
        const toml::table* t = el.as_table();
        if (!t) config_error("'windows' entries must be tables" + where(el));
        for (const auto& [wk, wn] : *t) {
          const std::string name(wk.str());
          if (name != "site" && name != "lo" && name != "hi") {
            config_error("unknown key 'windows." + name + "'" + where(wn));
          }
        }
      }
      continue;
    }
    auto it = schema().find(key);
    if (it == schema().end()) config_error("unknown section '" + key + "'" + where(node));
    const toml::table* tbl = node.as_table();
    if (!tbl) config_error("'" + key + "' must be a table" + where(node));
    for (const auto& [sk, sn] : *tbl) {
      const std::string name(sk.str());
      if (!it->second.contains(name)) config_error("unknown key '" + key + "." + name + "'" + where(sn));
    }
  }
}

std::optional<PhasePointSpec> phase_point(const TomlReader& r, const std::string& section, const std::string& qkey,
                                          const std::string& pkey) {
  auto q = r.numbers(section, qkey);
  auto p = r.numbers(section, pkey);
  if (!q && !p) return std::nullopt;
  if (!q || !p) config_error("'" + section + "." + qkey + "' and '" + section + "." + pkey + "' must be given together");
  return PhasePointSpec{*q, *p};
}

nlohmann::ordered_json point_json(const PhasePointSpec& p) { return {{"q", p.q}, {"p", p.p}}; }

PhasePointSpec point_from_json(const nlohmann::json& j) {
  return {j.at("q").get<std::vector<double>>(), j.at("p").get<std::vector<double>>()};
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  auto win_eq = [](const WindowEvent& x, const WindowEvent& y) { return x.site == y.site && x.lo == y.lo && x.hi == y.hi; };
  return a.model == b.model && a.region == b.region && a.experiment == b.experiment &&
         a.sampler.count == b.sampler.count && a.sampler.amplitude == b.sampler.amplitude &&
         a.sampler.seed == b.sampler.seed && a.truncation == b.truncation && a.max_degree == b.max_degree &&
         std::equal(a.windows.begin(), a.windows.end(), b.windows.begin(), b.windows.end(), win_eq) &&
         a.out_dir == b.out_dir && a.knight_xi_re == b.knight_xi_re && a.knight_xi_im == b.knight_xi_im &&
         a.coherent_x == b.coherent_x && a.licht_x1 == b.licht_x1 && a.licht_x2 == b.licht_x2;
}

ExperimentConfig parse_config_toml(const std::string& text, const std::string& source_name) {
  toml::table root;
  try {
    root = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source_name << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
        << e.description();
    config_error(msg.str());
  }
  check_known_keys(root);
  TomlReader r(root);

  ExperimentConfig c;
  r.scalar("model", "kind", c.model.kind);
  r.scalar("model", "n", c.model.n);
  r.scalar("model", "coupling", c.model.coupling);
  r.scalar("model", "pinning", c.model.pinning);
  r.scalar("model", "periodic", c.model.periodic);
  r.scalar("model", "grid_points", c.model.grid_points);
  r.scalar("model", "mass", c.model.mass);
  r.scalar("model", "spacing", c.model.spacing);
  if (const toml::node* node = r.find("custom", "entries")) {
    const toml::array* rows = node->as_array();
    if (!rows) TomlReader::type_error("custom", "entries", "an array of arrays", *node);
    for (const auto& row : *rows) {
      const toml::array* cols = row.as_array();
      if (!cols) TomlReader::type_error("custom", "entries", "an array of arrays", row);
      std::vector<double> vals;
      for (const auto& el : *cols) {
        if (!el.is_number()) TomlReader::type_error("custom", "entries", "an array of arrays of numbers", el);
        vals.push_back(*el.value<double>());
      }
      c.model.entries.push_back(std::move(vals));
    }
  }
  if (auto members = r.integers("region", "members")) {
    c.region.assign(members->begin(), members->end());
  }
  r.scalar("experiment", "kind", c.experiment);
  r.scalar("sampler", "count", c.sampler.count);
  r.scalar("sampler", "amplitude", c.sampler.amplitude);
  {
    std::int64_t seed = static_cast<std::int64_t>(c.sampler.seed);
    r.scalar("sampler", "seed", seed);
    if (seed < 0) config_error("key 'sampler.seed' must be nonnegative");
    c.sampler.seed = static_cast<std::uint64_t>(seed);
  }
  r.scalar("fock", "truncation", c.truncation);
  r.scalar("fock", "max_degree", c.max_degree);
  r.scalar("output", "dir", c.out_dir);
  if (const toml::node* node = root.get("windows")) {
    const toml::array* arr = node->as_array();
    if (!arr) config_error("key 'windows' must be an array of tables" + where(*node));
    for (const auto& el : *arr) {
      if (!el.is_table()) config_error("each [[windows]] entry must be a table" + where(el));
      const toml::table& t = *el.as_table();
      WindowEvent w;
      auto site = t["site"].value_exact<std::int64_t>();
      auto lo = t["lo"].value<double>();
      auto hi = t["hi"].value<double>();
      if (!site || !lo || !hi) config_error("each [[windows]] entry needs integer 'site' and numeric 'lo', 'hi'" + where(el));
      w.site = static_cast<Eigen::Index>(*site);
      w.lo = *lo;
      w.hi = *hi;
      c.windows.push_back(w);
    }
  }
  c.knight_xi_re = r.numbers("knight", "xi_re");
  c.knight_xi_im = r.numbers("knight", "xi_im");
  c.coherent_x = phase_point(r, "coherent", "q", "p");
  c.licht_x1 = phase_point(r, "licht", "x1_q", "x1_p");
  c.licht_x2 = phase_point(r, "licht", "x2_q", "x2_p");
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_toml(buf.str(), path);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json model = {{"kind", c.model.kind},
                                  {"n", c.model.n},
                                  {"coupling", c.model.coupling},
                                  {"pinning", c.model.pinning},
                                  {"periodic", c.model.periodic},
                                  {"grid_points", c.model.grid_points},
                                  {"mass", c.model.mass},
                                  {"spacing", c.model.spacing},
                                  {"entries", c.model.entries}};
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (const auto& w : c.windows) windows.push_back({{"site", w.site}, {"lo", w.lo}, {"hi", w.hi}});
  nlohmann::ordered_json j = {
      {"model", model},
      {"region", c.region},
      {"experiment", c.experiment},
      {"sampler", {{"count", c.sampler.count}, {"amplitude", c.sampler.amplitude}, {"seed", c.sampler.seed}}},
      {"fock", {{"truncation", c.truncation}, {"max_degree", c.max_degree}}},
      {"windows", windows},
      {"out_dir", c.out_dir},
  };
  if (c.knight_xi_re) j["knight"]["xi_re"] = *c.knight_xi_re;
  if (c.knight_xi_im) j["knight"]["xi_im"] = *c.knight_xi_im;
  if (c.coherent_x) j["coherent"] = point_json(*c.coherent_x);
  if (c.licht_x1) j["licht"]["x1"] = point_json(*c.licht_x1);
  if (c.licht_x2) j["licht"]["x2"] = point_json(*c.licht_x2);
  return j;
}

ExperimentConfig parse_config_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    const auto& m = j.at("model");
    c.model.kind = m.at("kind").get<std::string>();
    c.model.n = m.at("n").get<Eigen::Index>();
    c.model.coupling = m.at("coupling").get<double>();
    c.model.pinning = m.at("pinning").get<double>();
    c.model.periodic = m.at("periodic").get<bool>();
    c.model.grid_points = m.at("grid_points").get<Eigen::Index>();
    c.model.mass = m.at("mass").get<double>();
    c.model.spacing = m.at("spacing").get<double>();
    c.model.entries = m.at("entries").get<std::vector<std::vector<double>>>();
    c.region = j.at("region").get<std::vector<Eigen::Index>>();
    c.experiment = j.at("experiment").get<std::string>();
    c.sampler.count = j.at("sampler").at("count").get<int>();
    c.sampler.amplitude = j.at("sampler").at("amplitude").get<double>();
    c.sampler.seed = j.at("sampler").at("seed").get<std::uint64_t>();
    c.truncation = j.at("fock").at("truncation").get<int>();
    c.max_degree = j.at("fock").at("max_degree").get<int>();
    for (const auto& w : j.at("windows")) {
      c.windows.push_back({w.at("site").get<Eigen::Index>(), w.at("lo").get<double>(), w.at("hi").get<double>()});
    }
    c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("knight")) {
      const auto& k = j.at("knight");
      if (k.contains("xi_re")) c.knight_xi_re = k.at("xi_re").get<std::vector<double>>();
      if (k.contains("xi_im")) c.knight_xi_im = k.at("xi_im").get<std::vector<double>>();
    }
    if (j.contains("coherent")) c.coherent_x = point_from_json(j.at("coherent"));
    if (j.contains("licht")) {
      const auto& l = j.at("licht");
      if (l.contains("x1")) c.licht_x1 = point_from_json(l.at("x1"));
      if (l.contains("x2")) c.licht_x2 = point_from_json(l.at("x2"));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config echo: ") + e.what());
  }
}

DynamicalMatrix build_model(const ModelSpec& m) {
  if (m.kind == "chain") return build_chain(m.n, m.coupling, m.pinning, m.periodic);
  if (m.kind == "klein_gordon") return build_discrete_klein_gordon(m.grid_points, m.mass, m.spacing);
  if (m.kind == "custom") {
    if (m.entries.empty()) config_error("custom model needs 'custom.entries'");
    const auto rows = static_cast<Eigen::Index>(m.entries.size());
    Eigen::MatrixXd e(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = m.entries[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != rows) config_error("'custom.entries' must be a square matrix");
      for (Eigen::Index k = 0; k < rows; ++k) e(i, k) = row[static_cast<std::size_t>(k)];
    }
    return build_custom(e);
  }
  config_error("key 'model.kind' must be one of chain, klein_gordon, custom (got '" + m.kind + "')");
}

void validate_config(const ExperimentConfig& c) {
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), c.experiment) == kinds.end()) {
    config_error("key 'experiment.kind' has unknown value '" + c.experiment + "'");
  }
  const DynamicalMatrix m = build_model(c.model);
  const Eigen::Index n = m.n();
  for (auto site : c.region) {
    if (site < 0 || site >= n) config_error("key 'region.members' has index " + std::to_string(site) + " outside [0, " + std::to_string(n) + ")");
  }
  const Region b(n, c.region);
  if (b.empty()) config_error("key 'region.members' must not be empty");
  if (b.full()) config_error("key 'region.members' must leave at least one site outside the region");
  if (c.sampler.count < 1) config_error("key 'sampler.count' must be positive");
  if (!(c.sampler.amplitude > 0.0)) config_error("key 'sampler.amplitude' must be positive");
  if (c.truncation < 2) config_error("key 'fock.truncation' must be at least 2");
  if (c.max_degree < 0) config_error("key 'fock.max_degree' must be nonnegative");
  for (const auto& w : c.windows) {
    if (w.site < 0 || w.site >= n) config_error("window site " + std::to_string(w.site) + " out of range");
    if (!(w.lo < w.hi)) config_error("window needs lo < hi");
  }
  auto check_len = [&](const std::vector<double>& v, const std::string& key) {
    if (static_cast<Eigen::Index>(v.size()) != n) config_error("key '" + key + "' must have " + std::to_string(n) + " entries");
  };
  if (c.knight_xi_re) check_len(*c.knight_xi_re, "knight.xi_re");
  if (c.knight_xi_im) check_len(*c.knight_xi_im, "knight.xi_im");
  for (const auto* p : {&c.coherent_x, &c.licht_x1, &c.licht_x2}) {
    if (*p) {
      check_len((*p)->q, "phase point q");
      check_len((*p)->p, "phase point p");
    }
  }
}

}  // namespace qlab
