#include "sdwn/harness/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sdwn::harness {

using nlohmann::json;

const char* to_string(Policy p) { return p == Policy::sdwn ? "sdwn" : "max_snr"; }

namespace {

// Reads one JSON object, recording problems instead of stopping at the first.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.is_object() && obj_.contains(key); }

  template <class T>
  void get(const std::string& key, T& out, bool required = false) {
    seen_.insert(key);
    if (!has(key)) {
      if (required) fail(at(key), "missing");
      return;
    }
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(at(key), "wrong type");
    }
  }

  template <class E>
  void get_enum(const std::string& key, E& out, const std::vector<std::pair<std::string, E>>& names,
                bool required = false) {
    std::string s;
    const bool present = has(key);
    get(key, s, required);
    if (!present || s.empty()) return;
    for (const auto& [n, v] : names) {
      if (n == s) {
        out = v;
        return;
      }
    }
    fail(at(key), "unknown value \"" + s + "\"");
  }

  // Calls fn(child reader) for a nested object, or for every element of an array.
  void object(const std::string& key, const std::function<void(Reader&)>& fn, bool required = false) {
    seen_.insert(key);
    if (!has(key)) {
      if (required) fail(at(key), "missing");
      return;
    }
    Reader r(obj_.at(key), at(key), errors_);
    if (obj_.at(key).is_object()) {
      fn(r);
      r.finish();
    }
  }

  void array(const std::string& key, const std::function<void(Reader&, std::size_t)>& fn, bool required = false) {
    seen_.insert(key);
    if (!has(key)) {
      if (required) fail(at(key), "missing");
      return;
    }
    const json& a = obj_.at(key);
    if (!a.is_array()) {
      fail(at(key), "expected an array");
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      Reader r(a[i], at(key) + "[" + std::to_string(i) + "]", errors_);
      if (a[i].is_object()) {
        fn(r, i);
        r.finish();
      }
    }
  }

  void finish() {
    if (!obj_.is_object()) return;
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) fail(at(k), "unknown field");
    }
  }

 private:
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  void fail(const std::string& where, const std::string& what) { errors_.push_back(where + ": " + what); }

  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

const std::vector<std::pair<std::string, control::RanKind>> kKinds = {{"wlan", control::RanKind::wlan},
                                                                      {"cellular", control::RanKind::cellular}};
const std::vector<std::pair<std::string, Policy>> kPolicies = {{"sdwn", Policy::sdwn}, {"max_snr", Policy::max_snr}};
const std::vector<std::pair<std::string, control::GuaranteeKind>> kGuarantees = {
    {"airtime", control::GuaranteeKind::airtime}, {"min_rate", control::GuaranteeKind::min_rate}};
const std::vector<std::pair<std::string, control::IsolationLevel>> kIsolation = {
    {"strict", control::IsolationLevel::strict}, {"best_effort", control::IsolationLevel::best_effort}};
const std::vector<std::pair<std::string, FadingKind>> kFading = {{"off", FadingKind::off},
                                                                 {"rayleigh", FadingKind::rayleigh}};
const std::vector<std::pair<std::string, wlan::AirtimeScope>> kScopes = {
    {"network_average", wlan::AirtimeScope::network_average}, {"per_ap", wlan::AirtimeScope::per_ap}};
const std::vector<std::pair<std::string, cellular::CellularObjective>> kObjectives = {
    {"sum_rate", cellular::CellularObjective::sum_rate},
    {"proportional_fair", cellular::CellularObjective::proportional_fair}};

template <class E>
std::string name_of(E v, const std::vector<std::pair<std::string, E>>& names) {
  for (const auto& [n, e] : names) {
    if (e == v) return n;
  }
  return "?";
}

void check(std::vector<std::string>& errors, const std::string& field, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    errors.push_back(field + ": " + e.what());
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  std::vector<std::string> errors;
  const auto bad = [&](const std::string& field, const std::string& what) { errors.push_back(field + ": " + what); };
  const bool is_wlan = scenario_kind == control::RanKind::wlan;

  if (scenario_id.empty()) bad("scenario_id", "must not be empty");
  for (char c : scenario_id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') {
      bad("scenario_id", "only letters, digits, '-', '_' and '.' are allowed");
      break;
    }
  }
  check(errors, "region", [&] { region.validate(); });
  if (layout.empty()) bad("layout", "at least one AP/BS required");
  for (std::size_t a = 0; a < layout.size(); ++a) {
    const std::string f = "layout[" + std::to_string(a) + "]";
    if (!region.contains(layout[a].position)) bad(f, "outside the region");
    if (!(layout[a].tx_power > 0.0)) bad(f + ".tx_power", "must be positive");
  }
  check(errors, "channel", [&] { channel.validate(); });
  if (is_wlan) check(errors, "rate_table", [&] { rate_table.validate(); });
  if (subcarriers == 0) bad("subcarriers", "must be at least 1");

  check(errors, "deployment", [&] { DeploymentParams{deployment.lambda_mean}.validate(); });
  if (!(deployment.edge_fraction >= 0.0 && deployment.edge_fraction <= 1.0)) {
    bad("deployment.edge_fraction", "must lie in [0, 1]");
  }
  if (!(deployment.edge_gamma > 0.0 && deployment.edge_gamma < 1.0)) bad("deployment.edge_gamma", "must lie in (0, 1)");
  if (is_wlan && deployment.edge_fraction > 0.0) bad("deployment.edge_fraction", "only applies to cellular scenarios");
  if (!is_wlan && deployment.edge_fraction > 0.0 && layout.size() < 2) {
    bad("deployment.edge_fraction", "edge placement needs at least two BSs");
  }
  check(errors, "load_split", [&] { load_split.validate(); });

  std::set<std::size_t> ids;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const auto& s = slices[k];
    const std::string f = "slices[" + std::to_string(k) + "]";
    if (s.slice_id >= kSliceCount) bad(f + ".slice_id", "must be 0 or 1");
    if (!ids.insert(s.slice_id).second) bad(f + ".slice_id", "duplicate");
    const auto need = is_wlan ? control::GuaranteeKind::airtime : control::GuaranteeKind::min_rate;
    if (s.guarantee_kind != need) {
      bad(f + ".guarantee_kind", is_wlan ? "WLAN scenarios take airtime" : "cellular scenarios take min_rate");
    }
    if (!(s.guarantee_value >= 0.0) || !std::isfinite(s.guarantee_value)) bad(f + ".guarantee_value", "must be >= 0");
    if (s.guarantee_kind == control::GuaranteeKind::airtime && s.guarantee_value > 1.0) {
      bad(f + ".guarantee_value", "airtime share must be <= 1");
    }
    if (s.relative && s.guarantee_kind != control::GuaranteeKind::airtime) bad(f + ".relative", "airtime only");
  }
  check(errors, "wlan_solver", [&] { wlan_solver.validate(); });
  check(errors, "cellular_solver", [&] { cellular_solver.validate(); });
  if (users) {
    for (std::size_t i = 0; i < users->size(); ++i) {
      const std::string f = "users[" + std::to_string(i) + "]";
      if (!region.contains((*users)[i].position)) bad(f, "outside the region");
      if ((*users)[i].slice_id >= kSliceCount) bad(f + ".slice_id", "must be 0 or 1");
    }
  }

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<std::string> errors;
  ScenarioConfig c;
  Reader r(doc, "", errors);
  r.get("scenario_id", c.scenario_id, true);
  r.get_enum("scenario_kind", c.scenario_kind, kKinds, true);
  r.object(
      "region",
      [&](Reader& g) {
        g.get("width", c.region.width, true);
        g.get("height", c.region.height, true);
      },
      true);
  r.array(
      "layout",
      [&](Reader& g, std::size_t i) {
        AccessPoint ap;
        ap.id = i;
        g.get("x", ap.position.x, true);
        g.get("y", ap.position.y, true);
        g.get("tx_power", ap.tx_power, true);
        g.get("channel_id", ap.channel_id);
        c.layout.push_back(ap);
      },
      true);
  r.object("channel", [&](Reader& g) {
    g.get("pathloss_exponent", c.channel.pathloss_exponent);
    g.get("reference_distance", c.channel.reference_distance);
    g.get("reference_gain", c.channel.reference_gain);
    g.get("noise_power", c.channel.noise_power);
    g.get_enum("fading", c.channel.fading, kFading);
  });
  r.object("rate_table", [&](Reader& g) {
    g.get("thresholds_db", c.rate_table.thresholds_db, true);
    g.get("rates_mbps", c.rate_table.rates_mbps, true);
  });
  r.get("subcarriers", c.subcarriers);
  r.object(
      "deployment",
      [&](Reader& g) {
        g.get("lambda_mean", c.deployment.lambda_mean, true);
        g.get("edge_fraction", c.deployment.edge_fraction);
        g.get("edge_gamma", c.deployment.edge_gamma);
      },
      true);
  r.object("load_split", [&](Reader& g) { g.get("rho1", c.load_split.rho1, true); });
  r.array("slices", [&](Reader& g, std::size_t) {
    SliceConfig s;
    g.get("slice_id", s.slice_id, true);
    g.get_enum("guarantee_kind", s.guarantee_kind, kGuarantees, true);
    g.get("guarantee_value", s.guarantee_value, true);
    g.get("relative", s.relative);
    g.get_enum("isolation_level", s.isolation_level, kIsolation);
    c.slices.push_back(s);
  });
  r.get_enum("policy", c.policy, kPolicies, true);
  r.object("wlan_solver", [&](Reader& g) {
    auto& o = c.wlan_solver;
    g.get("max_iterations", o.max_iterations);
    g.get("step_size", o.step_size);
    g.get("feasibility_tolerance", o.feasibility_tolerance);
    g.get("convergence_tolerance", o.convergence_tolerance);
    g.get("multistart_count", o.multistart_count);
    g.get("oracle_grid_step", o.oracle_grid_step);
    g.get_enum("scope", o.scope, kScopes);
    g.get("scaling_tolerance", o.scaling_tolerance);
  });
  r.object("cellular_solver", [&](Reader& g) {
    auto& o = c.cellular_solver;
    g.get("power_levels", o.power_levels);
    g.get("max_outer_iterations", o.max_outer_iterations);
    g.get("convergence_tolerance", o.convergence_tolerance);
    g.get("reservation_tolerance", o.reservation_tolerance);
    g.get_enum("objective", o.objective, kObjectives);
    g.get("pf_floor", o.pf_floor);
    g.get("scaling_tolerance", o.scaling_tolerance);
  });
  r.get("trials", c.trials);
  r.get("master_seed", c.master_seed, true);
  if (r.has("users")) {
    c.users.emplace();
    r.array("users", [&](Reader& g, std::size_t) {
      UserConfig u;
      g.get("x", u.position.x, true);
      g.get("y", u.position.y, true);
      g.get("slice_id", u.slice_id);
      c.users->push_back(u);
    });
  }
  r.finish();

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  json j = json::object();
  j["scenario_id"] = c.scenario_id;
  j["scenario_kind"] = name_of(c.scenario_kind, kKinds);
  j["region"] = {{"width", c.region.width}, {"height", c.region.height}};
  j["layout"] = json::array();
  for (const auto& ap : c.layout) {
    j["layout"].push_back(
        {{"x", ap.position.x}, {"y", ap.position.y}, {"tx_power", ap.tx_power}, {"channel_id", ap.channel_id}});
  }
  j["channel"] = {{"pathloss_exponent", c.channel.pathloss_exponent},
                  {"reference_distance", c.channel.reference_distance},
                  {"reference_gain", c.channel.reference_gain},
                  {"noise_power", c.channel.noise_power},
                  {"fading", name_of(c.channel.fading, kFading)}};
  j["rate_table"] = {{"thresholds_db", c.rate_table.thresholds_db}, {"rates_mbps", c.rate_table.rates_mbps}};
  j["subcarriers"] = c.subcarriers;
  j["deployment"] = {{"lambda_mean", c.deployment.lambda_mean},
                     {"edge_fraction", c.deployment.edge_fraction},
                     {"edge_gamma", c.deployment.edge_gamma}};
  j["load_split"] = {{"rho1", c.load_split.rho1}};
  j["slices"] = json::array();
  for (const auto& s : c.slices) {
    j["slices"].push_back({{"slice_id", s.slice_id},
                           {"guarantee_kind", name_of(s.guarantee_kind, kGuarantees)},
                           {"guarantee_value", s.guarantee_value},
                           {"relative", s.relative},
                           {"isolation_level", name_of(s.isolation_level, kIsolation)}});
  }
  j["policy"] = name_of(c.policy, kPolicies);
  const auto& w = c.wlan_solver;
  j["wlan_solver"] = {{"max_iterations", w.max_iterations},
                      {"step_size", w.step_size},
                      {"feasibility_tolerance", w.feasibility_tolerance},
                      {"convergence_tolerance", w.convergence_tolerance},
                      {"multistart_count", w.multistart_count},
                      {"oracle_grid_step", w.oracle_grid_step},
                      {"scope", name_of(w.scope, kScopes)},
                      {"scaling_tolerance", w.scaling_tolerance}};
  const auto& o = c.cellular_solver;
  j["cellular_solver"] = {{"power_levels", o.power_levels},
                          {"max_outer_iterations", o.max_outer_iterations},
                          {"convergence_tolerance", o.convergence_tolerance},
                          {"reservation_tolerance", o.reservation_tolerance},
                          {"objective", name_of(o.objective, kObjectives)},
                          {"pf_floor", o.pf_floor},
                          {"scaling_tolerance", o.scaling_tolerance}};
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  if (c.users) {
    j["users"] = json::array();
    for (const auto& u : *c.users) j["users"].push_back({{"x", u.position.x}, {"y", u.position.y}, {"slice_id", u.slice_id}});
  }
  return j.dump(2) + "\n";
}

}  // namespace sdwn::harness
