#include "lymphax/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lymphax/units.hpp"

namespace lymphax {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

const std::vector<SettingsField<VesselSettings>>& vessel_fields() {
  using V = VesselSettings;
  static const std::vector<SettingsField<V>> fields = {
      {"r0_um", &V::r0_um},         {"h0_ratio", &V::h0_ratio},       {"length_mm", &V::length_mm},
      {"p_e_cmH2O", &V::p_e_cmH2O}, {"E_min", &V::E_min},             {"E_max", &V::E_max},
      {"nu", &V::nu},               {"m", &V::m},                     {"n", &V::n},
      {"z", &V::z},                 {"C", &V::C},                     {"rho", &V::rho},
      {"mu", &V::mu},               {"gamma", &V::gamma},             {"a1", &V::a1},
      {"a2", &V::a2},               {"a3", &V::a3},                   {"b1", &V::b1},
      {"c1", &V::c1},               {"c2", &V::c2},                   {"R_I", &V::R_I},
      {"k_rel", &V::k_rel},         {"n_Ca", &V::n_Ca},               {"A_Ca_ratio", &V::A_Ca_ratio},
      {"k_NO", &V::k_NO},           {"tau_NO_dyne_cm2", &V::tau_NO_dyne_cm2}, {"n_NO", &V::n_NO},
      {"f_min_per_min", &V::f_min_per_min}, {"f_Ca_per_min", &V::f_Ca_per_min}, {"t_excited", &V::t_excited}};
  return fields;
}

const std::vector<SettingsField<ValveSettings>>& valve_fields() {
  using V = ValveSettings;
  static const std::vector<SettingsField<V>> fields = {
      {"K_vo", &V::K_vo},     {"K_vc", &V::K_vc}, {"dp_open_cmH2O", &V::dp_open_cmH2O},
      {"dp_close_cmH2O", &V::dp_close_cmH2O},     {"M_st", &V::M_st}, {"M_rg", &V::M_rg},
      {"L_eff_mm", &V::L_eff_mm}};
  return fields;
}

Lymphangion VesselSettings::build() const {
  using namespace units;
  const auto geometry = VesselGeometryd::from_radius(r0_um * micrometre, h0_ratio * r0_um * micrometre,
                                                     length_mm * millimetre, p_e_cmH2O * cmH2O);
  const VesselWalld wall(TubeLawParamsd{m, n, z, C}, geometry, WallStiffnessd{E_min, E_max, nu},
                         LymphPropertiesd{rho, mu, gamma, 1.0});
  EfmcParamsd p;
  p.a1 = a1;
  p.a2 = a2;
  p.a3 = a3;
  p.b1 = b1;
  p.c1 = c1;
  p.c2 = c2;
  p.R_I = R_I;
  p.k_rel = k_rel;
  p.n_ca = n_Ca;
  p.A_ca = A_Ca_ratio * geometry.A0;
  p.k_no = k_NO;
  p.tau_no = tau_NO_dyne_cm2 * dyne_per_cm2;
  p.n_no = n_NO;
  p.f_min = f_min_per_min * per_minute;
  p.f_ca = f_Ca_per_min * per_minute;
  p.t_excited = t_excited;
  p = calibrated(p);
  p.validate();
  return {wall, p};
}

ValveParamsd ValveSettings::build() const {
  using namespace units;
  ValveParamsd p;
  p.K_vo = K_vo;
  p.K_vc = K_vc;
  p.dp_open = dp_open_cmH2O * cmH2O;
  p.dp_close = dp_close_cmH2O * cmH2O;
  p.M_st = M_st;
  p.M_rg = M_rg;
  p.L_eff = L_eff_mm * millimetre;
  return p;
}

PressureProgram ProgramSettings::build() const {
  std::vector<std::pair<double, double>> bp;
  for (const auto& [t, p] : breakpoints_cmH2O) bp.emplace_back(t, p * units::cmH2O);
  return PressureProgram(std::move(bp));
}

SimConfig SimSettings::build() const {
  SimConfig c;
  c.t_output = t_output;
  c.cfl = cfl;
  c.cells = cells;
  c.limiter = limiter_from_string(limiter);
  c.record_stride = record_stride;
  c.probes = probes;
  if (std::find(c.probes.begin(), c.probes.end(), 0.5) == c.probes.end()) c.probes.push_back(0.5);
  c.record_fields = record_fields;
  c.seed = seed;
  c.initial.v = v0;
  c.initial.w = w0;
  c.initial.I = I0;
  c.initial.s = s0;
  c.initial.q_v = q_v0;
  c.initial.xi = xi0;
  if (p0_cmH2O) c.initial.pressure = *p0_cmH2O * units::cmH2O;
  c.validate();
  return c;
}

std::vector<double> Range::values() const {
  if (count < 1) throw ConfigError("range count must be at least 1");
  if (count == 1) return {from};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = from + (to - from) * i / (count - 1);
  return v;
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Run:
      return "run";
    case Experiment::Riemann:
      return "riemann";
    case Experiment::Sweep:
      return "sweep";
    case Experiment::Sensitivity:
      return "sensitivity";
    case Experiment::ValveStudy:
      return "valve-study";
  }
  return "run";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::Run, Experiment::Riemann, Experiment::Sweep, Experiment::Sensitivity,
                 Experiment::ValveStudy})
    if (to_string(e) == name) return e;
  throw ConfigError("unknown experiment '" + name + "'");
}

void Scenario::normalise() {
  if (lymphangions < 1) throw ConfigError("collector needs at least one lymphangion");
  vessels.resize(lymphangions, vessel_defaults);
  valves.resize(lymphangions + 1, valve_defaults);
}

Collector Scenario::build_collector() const {
  if (static_cast<int>(vessels.size()) != lymphangions || static_cast<int>(valves.size()) != lymphangions + 1)
    throw ConfigError("scenario vessel/valve lists do not match the topology");
  std::vector<Lymphangion> chain;
  for (const auto& v : vessels) chain.push_back(v.build());
  std::vector<ValveParamsd> valve_params;
  for (const auto& v : valves) valve_params.push_back(v.build());
  return make_collector(std::move(chain), inlet_valve, outlet_valve, valve_params, inflow.build(), outflow.build());
}

namespace {

template <typename Settings>
double* find_field(Settings& s, const std::vector<SettingsField<Settings>>& fields, const std::string& key) {
  for (const auto& f : fields)
    if (key == f.key) return &(s.*f.member);
  return nullptr;
}

}  // namespace

bool is_parameter(const std::string& key) {
  VesselSettings v;
  ValveSettings w;
  return find_field(v, vessel_fields(), key) || find_field(w, valve_fields(), key);
}

void set_parameter(Scenario& scenario, const std::string& key, double value) {
  bool found = false;
  for (auto* list : {&scenario.vessels}) {
    for (auto& v : *list)
      if (double* p = find_field(v, vessel_fields(), key)) *p = value, found = true;
  }
  if (double* p = find_field(scenario.vessel_defaults, vessel_fields(), key)) *p = value, found = true;
  for (auto& v : scenario.valves)
    if (double* p = find_field(v, valve_fields(), key)) *p = value, found = true;
  if (double* p = find_field(scenario.valve_defaults, valve_fields(), key)) *p = value, found = true;
  if (!found) throw ConfigError("unknown parameter '" + key + "'");
}

double get_parameter(const Scenario& scenario, const std::string& key) {
  auto vessel = scenario.vessels.empty() ? scenario.vessel_defaults : scenario.vessels.front();
  if (double* p = find_field(vessel, vessel_fields(), key)) return *p;
  auto valve = scenario.valves.empty() ? scenario.valve_defaults : scenario.valves.front();
  if (double* p = find_field(valve, valve_fields(), key)) return *p;
  throw ConfigError("unknown parameter '" + key + "'");
}

// ---------------------------------------------------------------------------
// YAML loading

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    std::ostringstream msg;
    msg << origin_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ":" << node.Mark().line + 1 << ":" << node.Mark().column + 1;
    msg << ": " << what;
    throw ConfigError(msg.str());
  }

  void require_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
  }

  void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& section) const {
    require_map(node, section);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + section);
    }
  }

  template <typename T>
  T get(const YAML::Node& node, const std::string& what) const {
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, "invalid value for " + what);
    }
  }

  template <typename T>
  void optional(const YAML::Node& parent, const std::string& key, T& out) const {
    if (const auto node = parent[key]) out = get<T>(node, key);
  }

  template <typename Settings>
  void apply_fields(const YAML::Node& node, Settings& s, const std::vector<SettingsField<Settings>>& fields,
                    const std::string& section, const std::set<std::string>& extra = {}) const {
    require_map(node, section);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (extra.count(key)) continue;
      double* target = find_field(s, fields, key);
      if (!target) fail(kv.first, "unknown key '" + key + "' in " + section);
      *target = get<double>(kv.second, key);
    }
  }

  ProgramSettings program(const YAML::Node& node, const std::string& what) const {
    ProgramSettings p;
    if (node.IsScalar()) return ProgramSettings::constant(get<double>(node, what));
    if (!node.IsSequence() || node.size() == 0) fail(node, what + " must be a number or a list of [time, pressure]");
    p.breakpoints_cmH2O.clear();
    for (const auto& item : node) {
      if (!item.IsSequence() || item.size() != 2) fail(item, what + " breakpoints must be [time, pressure] pairs");
      p.breakpoints_cmH2O.emplace_back(get<double>(item[0], what), get<double>(item[1], what));
    }
    for (std::size_t i = 1; i < p.breakpoints_cmH2O.size(); ++i)
      if (!(p.breakpoints_cmH2O[i].first > p.breakpoints_cmH2O[i - 1].first))
        fail(node, what + " breakpoint times must be strictly increasing");
    return p;
  }

  Range range(const YAML::Node& node, const std::string& what) const {
    Range r;
    check_keys(node, {"from", "to", "count"}, what);
    optional(node, "from", r.from);
    optional(node, "to", r.to);
    optional(node, "count", r.count);
    if (r.count < 1) fail(node, what + " count must be at least 1");
    return r;
  }

 private:
  std::string origin_;
};

void validate_scenario(const Scenario& s, const Reader& reader, const YAML::Node& root) {
  for (std::size_t k = 0; k < s.valves.size(); ++k) {
    const auto& v = s.valves[k];
    if (!(v.M_rg >= 0 && v.M_rg <= v.M_st && v.M_st <= 1))
      reader.fail(root, "valve " + std::to_string(k) + " requires 0 <= M_rg <= M_st <= 1");
    if (!(v.K_vo > 0 && v.K_vc > 0 && v.L_eff_mm > 0))
      reader.fail(root, "valve " + std::to_string(k) + " requires positive K_vo, K_vc, L_eff");
  }
  for (std::size_t k = 0; k < s.vessels.size(); ++k) {
    try {
      s.vessels[k].build();
    } catch (const std::exception& e) {
      reader.fail(root, "lymphangion " + std::to_string(k) + ": " + e.what());
    }
  }
  try {
    s.simulation.build();
    s.build_collector();
  } catch (const std::exception& e) {
    reader.fail(root, e.what());
  }
  if (s.analysis.vessel && (*s.analysis.vessel < 0 || *s.analysis.vessel >= s.lymphangions))
    reader.fail(root, "analysis vessel index out of range");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Reader r(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << origin << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  if (!root.IsDefined() || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  r.check_keys(root,
               {"name", "experiment", "collector", "defaults", "vessels", "valves", "boundary", "simulation",
                "analysis", "sweep", "sensitivity", "riemann", "valve_study"},
               "scenario");

  Scenario s;
  r.optional(root, "name", s.name);
  if (const auto e = root["experiment"]) {
    try {
      s.experiment = experiment_from_string(r.get<std::string>(e, "experiment"));
    } catch (const ConfigError& err) {
      r.fail(e, err.what());
    }
  }
  if (const auto c = root["collector"]) {
    r.check_keys(c, {"lymphangions", "inlet_valve", "outlet_valve"}, "collector");
    r.optional(c, "lymphangions", s.lymphangions);
    r.optional(c, "inlet_valve", s.inlet_valve);
    r.optional(c, "outlet_valve", s.outlet_valve);
    if (s.lymphangions < 1) r.fail(c, "collector needs at least one lymphangion");
  }
  if (const auto d = root["defaults"]) {
    r.check_keys(d, {"vessel", "valve"}, "defaults");
    if (d["vessel"]) r.apply_fields(d["vessel"], s.vessel_defaults, vessel_fields(), "defaults.vessel");
    if (d["valve"]) r.apply_fields(d["valve"], s.valve_defaults, valve_fields(), "defaults.valve");
  }
  s.normalise();
  if (const auto list = root["vessels"]) {
    if (!list.IsSequence()) r.fail(list, "vessels must be a list");
    for (const auto& item : list) {
      r.require_map(item, "vessel override");
      if (!item["index"]) r.fail(item, "vessel override needs an index");
      const int k = r.get<int>(item["index"], "index");
      if (k < 0 || k >= s.lymphangions) r.fail(item["index"], "vessel index out of range");
      r.apply_fields(item, s.vessels[k], vessel_fields(), "vessel override", {"index"});
    }
  }
  if (const auto list = root["valves"]) {
    if (!list.IsSequence()) r.fail(list, "valves must be a list");
    for (const auto& item : list) {
      r.require_map(item, "valve override");
      if (!item["index"]) r.fail(item, "valve override needs an index");
      const int k = r.get<int>(item["index"], "index");
      if (k < 0 || k > s.lymphangions) r.fail(item["index"], "valve index out of range");
      r.apply_fields(item, s.valves[k], valve_fields(), "valve override", {"index"});
    }
  }
  if (const auto b = root["boundary"]) {
    r.check_keys(b, {"inflow_cmH2O", "outflow_cmH2O"}, "boundary");
    if (b["inflow_cmH2O"]) s.inflow = r.program(b["inflow_cmH2O"], "inflow_cmH2O");
    if (b["outflow_cmH2O"]) s.outflow = r.program(b["outflow_cmH2O"], "outflow_cmH2O");
  }
  if (const auto n = root["simulation"]) {
    r.check_keys(n,
                 {"t_output", "cfl", "cells", "limiter", "record_stride", "probes", "record_fields", "seed",
                  "initial"},
                 "simulation");
    auto& sim = s.simulation;
    r.optional(n, "t_output", sim.t_output);
    r.optional(n, "cfl", sim.cfl);
    r.optional(n, "cells", sim.cells);
    r.optional(n, "limiter", sim.limiter);
    r.optional(n, "record_stride", sim.record_stride);
    r.optional(n, "probes", sim.probes);
    r.optional(n, "record_fields", sim.record_fields);
    r.optional(n, "seed", sim.seed);
    if (const auto init = n["initial"]) {
      r.check_keys(init, {"v", "w", "I", "s", "q_v", "xi", "pressure_cmH2O"}, "simulation.initial");
      r.optional(init, "v", sim.v0);
      r.optional(init, "w", sim.w0);
      r.optional(init, "I", sim.I0);
      r.optional(init, "s", sim.s0);
      r.optional(init, "q_v", sim.q_v0);
      r.optional(init, "xi", sim.xi0);
      if (init["pressure_cmH2O"]) sim.p0_cmH2O = r.get<double>(init["pressure_cmH2O"], "pressure_cmH2O");
    }
    try {
      limiter_from_string(sim.limiter);
    } catch (const std::exception& e) {
      r.fail(n["limiter"], e.what());
    }
  }
  if (const auto a = root["analysis"]) {
    r.check_keys(a, {"vessel", "transient", "onset", "rearm"}, "analysis");
    if (a["vessel"]) s.analysis.vessel = r.get<int>(a["vessel"], "vessel");
    r.optional(a, "transient", s.analysis.transient);
    r.optional(a, "onset", s.analysis.onset);
    r.optional(a, "rearm", s.analysis.rearm);
  }
  if (const auto w = root["sweep"]) {
    r.check_keys(w, {"P_in_cmH2O", "P_out_cmH2O"}, "sweep");
    if (w["P_in_cmH2O"]) s.sweep.P_in_cmH2O = r.range(w["P_in_cmH2O"], "sweep.P_in_cmH2O");
    if (w["P_out_cmH2O"]) s.sweep.P_out_cmH2O = r.range(w["P_out_cmH2O"], "sweep.P_out_cmH2O");
  }
  if (const auto n = root["sensitivity"]) {
    r.check_keys(n, {"replicates", "epsilon", "spread", "parameters", "differentiate", "indexes"}, "sensitivity");
    auto& sens = s.sensitivity;
    r.optional(n, "replicates", sens.replicates);
    r.optional(n, "epsilon", sens.epsilon);
    r.optional(n, "spread", sens.spread);
    r.optional(n, "parameters", sens.parameters);
    r.optional(n, "differentiate", sens.differentiate);
    r.optional(n, "indexes", sens.indexes);
    if (sens.replicates < 1) r.fail(n, "sensitivity needs at least one replicate");
    for (const auto& p : sens.parameters)
      if (!is_parameter(p)) r.fail(n["parameters"], "unknown parameter '" + p + "'");
    for (const auto& p : sens.differentiate)
      if (!is_parameter(p)) r.fail(n["differentiate"], "unknown parameter '" + p + "'");
    for (const auto& name : sens.indexes) {
      const auto& f = index_fields();
      if (std::none_of(f.begin(), f.end(), [&](const auto& x) { return x.first == name; }))
        r.fail(n["indexes"], "unknown index '" + name + "'");
    }
  }
  if (const auto n = root["riemann"]) {
    r.check_keys(n, {"A_L_ratio", "A_R_ratio", "u_L", "u_R", "t_end", "cells"}, "riemann");
    auto& rm = s.riemann;
    r.optional(n, "A_L_ratio", rm.A_L_ratio);
    r.optional(n, "A_R_ratio", rm.A_R_ratio);
    r.optional(n, "u_L", rm.u_L);
    r.optional(n, "u_R", rm.u_R);
    r.optional(n, "t_end", rm.t_end);
    r.optional(n, "cells", rm.cells);
    if (!(rm.A_L_ratio > 0 && rm.A_R_ratio > 0 && rm.t_end > 0)) r.fail(n, "riemann data must be positive");
  }
  if (const auto n = root["valve_study"]) {
    r.check_keys(n, {"valve", "parameter", "values", "frequencies_per_min"}, "valve_study");
    auto& vs = s.valve_study;
    r.optional(n, "valve", vs.valve);
    r.optional(n, "parameter", vs.parameter);
    r.optional(n, "values", vs.values);
    r.optional(n, "frequencies_per_min", vs.frequencies_per_min);
    if (vs.parameter != "M_st" && vs.parameter != "M_rg") r.fail(n, "valve_study parameter must be M_st or M_rg");
    if (s.experiment == Experiment::ValveStudy && (vs.valve < 0 || vs.valve > s.lymphangions))
      r.fail(n, "valve_study valve index out of range");
  }
  validate_scenario(s, r, root);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

// ---------------------------------------------------------------------------
// YAML writing

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string list(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, std::string>)
      out += quoted(values[i]);
    else if constexpr (std::is_floating_point_v<T>)
      out += format_number(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out + "]";
}

template <typename Settings>
void write_fields(std::ostream& os, const Settings& s, const std::vector<SettingsField<Settings>>& fields,
                  const std::string& indent) {
  for (const auto& f : fields) os << indent << f.key << ": " << format_number(s.*f.member) << "\n";
}

std::string program(const ProgramSettings& p) {
  if (p.breakpoints_cmH2O.size() == 1 && p.breakpoints_cmH2O[0].first == 0.0)
    return format_number(p.breakpoints_cmH2O[0].second);
  std::string out = "[";
  for (std::size_t i = 0; i < p.breakpoints_cmH2O.size(); ++i) {
    if (i) out += ", ";
    out += "[" + format_number(p.breakpoints_cmH2O[i].first) + ", " + format_number(p.breakpoints_cmH2O[i].second) +
           "]";
  }
  return out + "]";
}

std::string range(const Range& r) {
  return "{from: " + format_number(r.from) + ", to: " + format_number(r.to) + ", count: " + std::to_string(r.count) +
         "}";
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "name: " << quoted(s.name) << "\n";
  os << "experiment: " << to_string(s.experiment) << "\n";
  os << "collector:\n  lymphangions: " << s.lymphangions << "\n  inlet_valve: " << (s.inlet_valve ? "true" : "false")
     << "\n  outlet_valve: " << (s.outlet_valve ? "true" : "false") << "\n";
  os << "defaults:\n  vessel:\n";
  write_fields(os, s.vessel_defaults, vessel_fields(), "    ");
  os << "  valve:\n";
  write_fields(os, s.valve_defaults, valve_fields(), "    ");
  bool header = false;
  for (std::size_t k = 0; k < s.vessels.size(); ++k) {
    if (s.vessels[k] == s.vessel_defaults) continue;
    if (!header) os << "vessels:\n", header = true;
    os << "  - index: " << k << "\n";
    write_fields(os, s.vessels[k], vessel_fields(), "    ");
  }
  header = false;
  for (std::size_t k = 0; k < s.valves.size(); ++k) {
    if (s.valves[k] == s.valve_defaults) continue;
    if (!header) os << "valves:\n", header = true;
    os << "  - index: " << k << "\n";
    write_fields(os, s.valves[k], valve_fields(), "    ");
  }
  os << "boundary:\n  inflow_cmH2O: " << program(s.inflow) << "\n  outflow_cmH2O: " << program(s.outflow) << "\n";
  const auto& sim = s.simulation;
  os << "simulation:\n  t_output: " << format_number(sim.t_output) << "\n  cfl: " << format_number(sim.cfl)
     << "\n  cells: " << sim.cells << "\n  limiter: " << sim.limiter << "\n  record_stride: " << sim.record_stride
     << "\n  probes: " << list(sim.probes) << "\n  record_fields: " << (sim.record_fields ? "true" : "false")
     << "\n  seed: " << sim.seed << "\n  initial:\n    v: " << format_number(sim.v0)
     << "\n    w: " << format_number(sim.w0) << "\n    I: " << format_number(sim.I0)
     << "\n    s: " << format_number(sim.s0) << "\n    q_v: " << format_number(sim.q_v0)
     << "\n    xi: " << format_number(sim.xi0) << "\n";
  if (sim.p0_cmH2O) os << "    pressure_cmH2O: " << format_number(*sim.p0_cmH2O) << "\n";
  os << "analysis:\n";
  if (s.analysis.vessel) os << "  vessel: " << *s.analysis.vessel << "\n";
  os << "  transient: " << format_number(s.analysis.transient) << "\n  onset: " << format_number(s.analysis.onset)
     << "\n  rearm: " << format_number(s.analysis.rearm) << "\n";
  os << "sweep:\n  P_in_cmH2O: " << range(s.sweep.P_in_cmH2O) << "\n  P_out_cmH2O: " << range(s.sweep.P_out_cmH2O)
     << "\n";
  const auto& sens = s.sensitivity;
  os << "sensitivity:\n  replicates: " << sens.replicates << "\n  epsilon: " << format_number(sens.epsilon)
     << "\n  spread: " << format_number(sens.spread) << "\n  parameters: " << list(sens.parameters)
     << "\n  differentiate: " << list(sens.differentiate) << "\n  indexes: " << list(sens.indexes) << "\n";
  const auto& rm = s.riemann;
  os << "riemann:\n  A_L_ratio: " << format_number(rm.A_L_ratio) << "\n  A_R_ratio: " << format_number(rm.A_R_ratio)
     << "\n  u_L: " << format_number(rm.u_L) << "\n  u_R: " << format_number(rm.u_R)
     << "\n  t_end: " << format_number(rm.t_end) << "\n  cells: " << list(rm.cells) << "\n";
  const auto& vs = s.valve_study;
  os << "valve_study:\n  valve: " << vs.valve << "\n  parameter: " << vs.parameter << "\n  values: " << list(vs.values)
     << "\n  frequencies_per_min: " << list(vs.frequencies_per_min) << "\n";
  return os.str();
}

}  // namespace lymphax
