#include "nlde/config.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <vector>

namespace nlde {

using json = nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {"study", "data",    "domain", "M",      "tau",
                                          "kappa", "eps",     "lambda1", "lambda2", "scheme",
                                          "T",     "stride",  "tau_ref", "M_ref",  "out"};

json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  json::parser_callback_t cb = [&seen](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen.back().insert(key).second) throw ConfigError(key, "duplicate key");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(number(v[i], key + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(number(v, key));
  }
  if (out.empty()) throw ConfigError(key, "list must be nonempty");
  return out;
}

int mode_count(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer mode count");
  const auto m = v.get<long long>();
  if (m < 4 || m % 2 != 0 || m > (1 << 24)) {
    throw ConfigError(key, "mode count " + std::to_string(m) + " must be even and >= 4");
  }
  return static_cast<int>(m);
}

std::array<int, 2> mode_entry(const json& v, int dim, const std::string& key) {
  if (v.is_array()) {
    if (dim != 2 || v.size() != 2) throw ConfigError(key, "a mode pair needs 2D data");
    return {mode_count(v[0], key + "[0]"), mode_count(v[1], key + "[1]")};
  }
  const int m = mode_count(v, key);
  return {m, dim == 2 ? m : 1};
}

std::vector<std::array<int, 2>> mode_list(const json& v, int dim, const std::string& key) {
  std::vector<std::array<int, 2>> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(mode_entry(v[i], dim, key + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(mode_entry(v, dim, key));
  }
  if (out.empty()) throw ConfigError(key, "list must be nonempty");
  return out;
}

Interval interval(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(key, "expected a pair [a, b]");
  const Interval iv{number(v[0], key + "[0]"), number(v[1], key + "[1]")};
  if (!(iv.hi > iv.lo)) throw ConfigError(key, "needs a < b");
  return iv;
}

}  // namespace

StudyConfig parse_config(std::string_view text) {
  const json doc = parse_strict(text);
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
  }

  StudyConfig c;
  if (!doc.contains("study") || !doc["study"].is_string()) {
    throw ConfigError("study", "required string (run, temporal, spatial, long-time, "
                               "oscillatory-table, energy-drift)");
  }
  const auto kind = parse_study_kind(doc["study"].get<std::string>());
  if (!kind) throw ConfigError("study", "unknown study '" + doc["study"].get<std::string>() + "'");
  c.kind = *kind;
  const bool table1 = c.kind == StudyKind::oscillatory_table;

  c.data = table1 ? "oscillatory-1d" : "accuracy-1d";
  if (doc.contains("data")) {
    if (!doc["data"].is_string()) throw ConfigError("data", "expected a catalog key");
    c.data = doc["data"].get<std::string>();
  }
  int dim = 0;
  try {
    dim = catalog_grid(c.data, {8, 8}).dim();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("data", e.what());
  }

  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    if (dim == 1) {
      c.domain = {interval(d, "domain")};
    } else {
      if (!d.is_array() || d.size() != 2) throw ConfigError("domain", "expected two pairs in 2D");
      c.domain = {interval(d[0], "domain[0]"), interval(d[1], "domain[1]")};
    }
  } else {
    const Grid g = catalog_grid(c.data, {8, 8});
    for (int axis = 0; axis < dim; ++axis) c.domain.push_back(g.bounds(axis));
  }

  if (doc.contains("M")) {
    c.modes = mode_list(doc["M"], dim, "M");
  } else if (c.kind == StudyKind::spatial) {
    c.modes.clear();
    for (int m : {8, 16, 32, 64}) c.modes.push_back({m, dim == 2 ? m : 1});
  } else {
    c.modes = {{64, dim == 2 ? 64 : 1}};
  }

  const bool has_tau = doc.contains("tau");
  const bool has_kappa = doc.contains("kappa");
  if (has_tau && has_kappa) throw ConfigError("kappa", "give either tau or kappa, not both");
  c.oscillatory = has_kappa;
  if (table1 && !has_kappa) throw ConfigError("kappa", "required for the oscillatory-table study");
  if (c.kind == StudyKind::spatial) {
    if (has_tau || has_kappa) {
      throw ConfigError(has_tau ? "tau" : "kappa",
                        "the spatial study runs every grid at the reference step; set tau_ref");
    }
    c.steps = {};
  } else if (c.kind != StudyKind::run && !table1 && has_kappa) {
    throw ConfigError("kappa", std::string("the ") + to_string(c.kind) +
                                   " study runs in the long-time regime; use tau");
  } else if (!has_tau && !has_kappa) {
    throw ConfigError("tau", "required");
  } else {
    const char* key = has_tau ? "tau" : "kappa";
    c.steps = number_list(doc[key], key);
    for (double s : c.steps) {
      if (!(s > 0.0)) throw ConfigError(key, "steps must be positive");
    }
  }

  c.eps = doc.contains("eps") ? number_list(doc["eps"], "eps") : std::vector<double>{1.0};
  for (double e : c.eps) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eps", "eps out of (0,1]");
  }

  c.lambda1 = table1 ? -1.0 : 0.0;
  c.lambda2 = table1 ? 0.0 : 1.0;
  if (doc.contains("lambda1")) c.lambda1 = number(doc["lambda1"], "lambda1");
  if (doc.contains("lambda2")) c.lambda2 = number(doc["lambda2"], "lambda2");

  if (doc.contains("scheme")) {
    const json& s = doc["scheme"];
    if (s == "strang") {
      c.scheme = SchemeKind::strang;
    } else if (s == "lie") {
      c.scheme = SchemeKind::lie;
    } else {
      throw ConfigError("scheme", "expected \"strang\" or \"lie\"");
    }
  }

  if (doc.contains("T")) c.horizon = number(doc["T"], "T");
  if (c.horizon < 0.0 || (c.kind != StudyKind::run && c.horizon == 0.0)) {
    throw ConfigError("T", "horizon must be positive (run: nonnegative)");
  }

  if (doc.contains("stride")) {
    if (!doc["stride"].is_number_integer() || doc["stride"].get<long long>() < 1) {
      throw ConfigError("stride", "expected an integer >= 1");
    }
    c.stride = static_cast<long>(doc["stride"].get<long long>());
  }

  if (doc.contains("tau_ref")) {
    c.step_ref = number(doc["tau_ref"], "tau_ref");
    if (!(*c.step_ref > 0.0)) throw ConfigError("tau_ref", "must be positive");
  }
  if (doc.contains("M_ref")) c.modes_ref = mode_entry(doc["M_ref"], dim, "M_ref");

  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("out", "expected a path string");
    c.out = doc["out"].get<std::string>();
  }

  if (c.kind == StudyKind::run &&
      (c.eps.size() != 1 || c.steps.size() != 1 || c.modes.size() != 1)) {
    throw ConfigError("eps", "the run study takes a single eps, step and M");
  }
  if (c.kind == StudyKind::long_time && c.steps.size() != 1) {
    throw ConfigError("tau", "the long-time study uses one fixed tau");
  }
  if (c.kind != StudyKind::spatial && c.modes.size() != 1) {
    throw ConfigError("M", "only the spatial study sweeps M");
  }
  return c;
}

std::string config_to_json(const StudyConfig& c) {
  json j = json::object();
  j["study"] = to_string(c.kind);
  j["data"] = c.data;
  const int dim = static_cast<int>(c.domain.size());
  auto pair = [](const Interval& iv) { return json::array({iv.lo, iv.hi}); };
  if (dim == 1) {
    j["domain"] = pair(c.domain[0]);
  } else if (dim == 2) {
    j["domain"] = json::array({pair(c.domain[0]), pair(c.domain[1])});
  }
  auto mode_json = [dim](const std::array<int, 2>& m) {
    return dim == 2 ? json::array({m[0], m[1]}) : json(m[0]);
  };
  json modes = json::array();
  for (const auto& m : c.modes) modes.push_back(mode_json(m));
  j["M"] = modes;
  if (c.kind != StudyKind::spatial) j[c.oscillatory ? "kappa" : "tau"] = c.steps;
  j["eps"] = c.eps;
  j["lambda1"] = c.lambda1;
  j["lambda2"] = c.lambda2;
  j["scheme"] = to_string(c.scheme);
  j["T"] = c.horizon;
  j["stride"] = c.stride;
  if (c.step_ref) j["tau_ref"] = *c.step_ref;
  if (c.modes_ref) j["M_ref"] = mode_json(*c.modes_ref);
  j["out"] = c.out;
  return j.dump(2);
}

}  // namespace nlde
