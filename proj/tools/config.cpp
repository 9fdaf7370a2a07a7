// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <nlohmann/json.hpp>

namespace eprb::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void only_keys(const json& obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + std::string(where));
  }
}

double number(const json& v, std::string_view what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(std::string(what) + " must be finite");
  return d;
}

std::uint64_t count(const json& v, std::string_view what) {
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string text(const json& v, std::string_view what) {
  if (!v.is_string()) throw ConfigError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::pair<double, double> angle_pair(const json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(std::string(what) + " must be [theta, phi]");
  }
  return {number(v[0], what), number(v[1], what)};
}

double parse_number(std::string_view s, std::string_view what) {
  double d = 0.0;
  // Allow a leading '+', which from_chars rejects.
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), d);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(d)) {
    throw ConfigError("bad number \"" + std::string(s) + "\" in " + std::string(what));
  }
  return d;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void check_model(const ModelConfig& m) {
  if (m.id != "grandma" && m.id != "mermin" && m.id != "quantum") {
    throw ConfigError("unknown model \"" + m.id + "\"");
  }
  if (m.grandma_mode != "labeled" && m.grandma_mode != "continuous") {
    throw ConfigError("grandma mode must be labeled or continuous");
  }
  if (m.weights) {
    try {
      validate_mermin_weights(*m.weights);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

void check_policy(const PolicyConfig& p) {
  if (p.kind != "fixed" && p.kind != "uniform_labels" && p.kind != "independent_labels" &&
      p.kind != "delta_scan") {
    throw ConfigError("unknown policy kind \"" + p.kind + "\"");
  }
  if (p.kind == "delta_scan" && p.deltas.empty()) {
    throw ConfigError("delta_scan policy needs a non-empty deltas list");
  }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "config", {"model", "binding", "policy", "n", "seed", "out", "audit"});

  RunConfig c;
  if (doc.contains("model")) {
    const json& m = doc["model"];
    only_keys(m, "model", {"id", "mode", "weights"});
    if (!m.contains("id")) throw ConfigError("model.id is required");
    c.model.id = text(m["id"], "model.id");
    if (m.contains("mode")) {
      if (c.model.id != "grandma") throw ConfigError("model.mode applies to grandma only");
      c.model.grandma_mode = text(m["mode"], "model.mode");
    }
    if (m.contains("weights")) {
      if (c.model.id != "mermin") throw ConfigError("model.weights applies to mermin only");
      const json& w = m["weights"];
      if (w.is_string()) {
        if (w.get<std::string>() != "uniform") {
          throw ConfigError("model.weights must be \"uniform\" or 8 numbers");
        }
      } else {
        if (!w.is_array() || w.size() != kInstructionSetCount) {
          throw ConfigError("model.weights must be \"uniform\" or 8 numbers");
        }
        MerminWeights weights{};
        for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = number(w[i], "model.weights");
        c.model.weights = weights;
      }
    }
    check_model(c.model);
  }
  if (doc.contains("binding")) {
    const json& b = doc["binding"];
    only_keys(b, "binding", {"a", "b", "c"});
    if (b.contains("a")) c.binding[0] = number(b["a"], "binding.a");
    if (b.contains("b")) c.binding[1] = number(b["b"], "binding.b");
    if (b.contains("c")) c.binding[2] = number(b["c"], "binding.c");
  }
  if (doc.contains("policy")) {
    const json& p = doc["policy"];
    only_keys(p, "policy", {"kind", "theta", "phi", "deltas"});
    if (!p.contains("kind")) throw ConfigError("policy.kind is required");
    c.policy.kind = text(p["kind"], "policy.kind");
    if (c.policy.kind == "fixed") {
      only_keys(p, "fixed policy", {"kind", "theta", "phi"});
      if (!p.contains("theta") || !p.contains("phi")) {
        throw ConfigError("fixed policy needs theta and phi");
      }
      c.policy.theta = number(p["theta"], "policy.theta");
      c.policy.phi = number(p["phi"], "policy.phi");
    } else if (c.policy.kind == "delta_scan") {
      only_keys(p, "delta_scan policy", {"kind", "deltas"});
      if (!p.contains("deltas") || !p["deltas"].is_array()) {
        throw ConfigError("delta_scan policy needs a deltas array");
      }
      for (const json& d : p["deltas"]) c.policy.deltas.push_back(number(d, "policy.deltas"));
    } else {
      only_keys(p, "label policy", {"kind"});
    }
    check_policy(c.policy);
  }
  if (doc.contains("n")) c.n = count(doc["n"], "n");
  if (doc.contains("seed")) c.seed = count(doc["seed"], "seed");
  if (doc.contains("out")) c.out = text(doc["out"], "out");
  if (doc.contains("audit")) {
    const json& a = doc["audit"];
    only_keys(a, "audit", {"pairs", "independence"});
    AuditConfig ac;
    if (a.contains("pairs")) {
      if (!a["pairs"].is_array()) throw ConfigError("audit.pairs must be an array");
      for (const json& p : a["pairs"]) ac.pairs.push_back(angle_pair(p, "audit.pairs"));
    }
    if (a.contains("independence")) {
      if (!a["independence"].is_array()) throw ConfigError("audit.independence must be an array");
      for (const json& q : a["independence"]) {
        if (!q.is_array() || q.size() != 2) {
          throw ConfigError("audit.independence entries must be [[t,p],[t,p]]");
        }
        ac.independence.emplace_back(angle_pair(q[0], "audit.independence"),
                                     angle_pair(q[1], "audit.independence"));
      }
    }
    c.audit = ac;
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  ojson doc;
  ojson m;
  m["id"] = c.model.id;
  if (c.model.id == "grandma") m["mode"] = c.model.grandma_mode;
  if (c.model.id == "mermin") {
    if (c.model.weights) {
      m["weights"] = *c.model.weights;
    } else {
      m["weights"] = "uniform";
    }
  }
  doc["model"] = m;
  doc["binding"] = {{"a", c.binding[0]}, {"b", c.binding[1]}, {"c", c.binding[2]}};
  ojson p;
  p["kind"] = c.policy.kind;
  if (c.policy.kind == "fixed") {
    p["theta"] = c.policy.theta;
    p["phi"] = c.policy.phi;
  } else if (c.policy.kind == "delta_scan") {
    p["deltas"] = c.policy.deltas;
  }
  doc["policy"] = p;
  doc["n"] = c.n;
  doc["seed"] = c.seed;
  doc["out"] = c.out;
  if (c.audit) {
    ojson a;
    a["pairs"] = ojson::array();
    for (const auto& [t, ph] : c.audit->pairs) a["pairs"].push_back({t, ph});
    a["independence"] = ojson::array();
    for (const auto& [x, y] : c.audit->independence) {
      a["independence"].push_back(ojson::array({{x.first, x.second}, {y.first, y.second}}));
    }
    doc["audit"] = a;
  }
  return doc.dump(2) + "\n";
}

void apply_model_flag(RunConfig& c, std::string_view value) {
  if (value == "grandma" || value == "grandma-labeled") {
    c.model.id = "grandma";
    c.model.grandma_mode = "labeled";
  } else if (value == "grandma-continuous") {
    c.model.id = "grandma";
    c.model.grandma_mode = "continuous";
  } else if (value == "mermin" || value == "quantum") {
    c.model.id = std::string(value);
  } else {
    throw ConfigError("unknown model \"" + std::string(value) + "\"");
  }
  if (c.model.id != "mermin") c.model.weights.reset();
}

void apply_policy_flag(RunConfig& c, std::string_view value) {
  PolicyConfig p;
  if (value == "uniform-labels" || value == "uniform_labels") {
    p.kind = "uniform_labels";
  } else if (value == "independent-labels" || value == "independent_labels") {
    p.kind = "independent_labels";
  } else if (value.rfind("fixed:", 0) == 0) {
    const auto parts = split(value.substr(6), ',');
    if (parts.size() != 2) throw ConfigError("--policy fixed:THETA,PHI");
    p.kind = "fixed";
    p.theta = parse_number(parts[0], "--policy");
    p.phi = parse_number(parts[1], "--policy");
  } else if (value.rfind("scan:", 0) == 0) {
    p.kind = "delta_scan";
    const std::string_view body = value.substr(5);
    const auto range = split(body, ':');
    if (range.size() == 3) {
      const double from = parse_number(range[0], "--policy");
      const double to = parse_number(range[1], "--policy");
      const double step = parse_number(range[2], "--policy");
      if (!(step > 0.0) || to < from) throw ConfigError("--policy scan:FROM:TO:STEP needs step > 0");
      // Integer stepping so the grid does not drift.
      for (std::uint64_t k = 0;; ++k) {
        const double d = from + static_cast<double>(k) * step;
        if (d > to + 1e-9 * step) break;
        p.deltas.push_back(d);
        if (p.deltas.size() > 1000000) throw ConfigError("--policy scan grid is too large");
      }
    } else if (range.size() == 1) {
      for (std::string_view d : split(body, ',')) p.deltas.push_back(parse_number(d, "--policy"));
    } else {
      throw ConfigError("--policy scan:D1,D2,... or scan:FROM:TO:STEP");
    }
  } else {
    throw ConfigError("unknown policy \"" + std::string(value) + "\"");
  }
  check_policy(p);
  c.policy = p;
}

void apply_bind_flag(RunConfig& c, std::string_view value) {
  for (std::string_view item : split(value, ',')) {
    const std::size_t eq = item.find('=');
    if (eq != 1) throw ConfigError("--bind expects a=DEG,b=DEG,c=DEG");
    const auto label = parse_label(item[0]);
    if (!label) throw ConfigError("--bind label must be a, b or c");
    c.binding[static_cast<std::size_t>(*label)] = parse_number(item.substr(2), "--bind");
  }
}

void apply_weights_flag(RunConfig& c, std::string_view value) {
  if (value == "uniform") {
    c.model.weights.reset();
    return;
  }
  const auto parts = split(value, ',');
  if (parts.size() != kInstructionSetCount) throw ConfigError("--weights needs 8 numbers");
  MerminWeights w{};
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = parse_number(parts[i], "--weights");
  c.model.weights = w;
  check_model(c.model);
}

LabelBinding make_binding(const RunConfig& c) {
  return LabelBinding(c.binding[0], c.binding[1], c.binding[2]);
}

std::unique_ptr<Model> make_model(const RunConfig& c) {
  check_model(c.model);
  if (c.model.id == "mermin") {
    return std::make_unique<MerminModel>(make_binding(c),
                                         c.model.weights.value_or(uniform_mermin_weights()));
  }
  if (c.model.id == "grandma") {
    if (c.model.grandma_mode == "continuous") {
      return std::make_unique<GrandmaModel>(GrandmaModel::continuous());
    }
    return std::make_unique<GrandmaModel>(make_binding(c));
  }
  return std::make_unique<QuantumModel>();
}

SettingPolicy make_policy(const RunConfig& c) {
  check_policy(c.policy);
  const std::string& k = c.policy.kind;
  if (k == "fixed") {
    return FixedPair{SettingPair::of_degrees(c.policy.theta, c.policy.phi)};
  }
  if (k == "uniform_labels") return UniformLabelPairs{make_binding(c)};
  if (k == "independent_labels") return IndependentUniformLabels{make_binding(c)};
  return DeltaScan{c.policy.deltas};
}

}  // namespace eprb::cli
