#include "lymphax/report.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "lymphax/units.hpp"

namespace lymphax {

using json = nlohmann::ordered_json;

namespace {

std::string num(double value) { return format_number(value); }

double diameter_um(double A) { return 2.0 * std::sqrt(A / std::numbers::pi) / units::micrometre; }

std::string location(double fraction) {
  if (fraction == 0.0) return "inlet";
  if (fraction == 0.5) return "centre";
  if (fraction == 1.0) return "outlet";
  return num(fraction);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json index_json(const IndexReport& r) {
  json indexes = json::object();
  const auto& fields = index_fields();
  const auto values = index_values(r);
  for (std::size_t i = 0; i < fields.size(); ++i) indexes[fields[i].first] = {{"value", values[i]}, {"unit", fields[i].second}};
  return indexes;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  using namespace units;
  os << "time [s],entity,index,location,quantity,unit,value\n";
  const auto row = [&](double t, const char* entity, int index, const std::string& where, const char* quantity,
                       const char* unit, double value) {
    os << num(t) << ',' << entity << ',' << index << ',' << where << ',' << quantity << ',' << unit << ','
       << num(value) << '\n';
  };
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double t = traj.time(i);
    for (int k = 0; k < traj.vessels(); ++k) {
      row(t, "lymphangion", k, "whole", "v", "-", traj.efmc(i, k, kV));
      row(t, "lymphangion", k, "whole", "w", "-", traj.efmc(i, k, kW));
      row(t, "lymphangion", k, "whole", "I", "-", traj.efmc(i, k, kI));
      row(t, "lymphangion", k, "whole", "s", "-", traj.efmc(i, k, kS));
      row(t, "lymphangion", k, "whole", "mean_diameter", "um", diameter_um(traj.mean_area(i, k)));
      row(t, "lymphangion", k, "whole", "mean_wss", "dyne/cm^2", traj.mean_wss(i, k) / dyne_per_cm2);
      row(t, "lymphangion", k, "whole", "volume", "nL", traj.volume(i, k) / nanolitre);
      for (std::size_t j = 0; j < traj.probes().size(); ++j) {
        const auto p = traj.probe(i, k, static_cast<int>(j));
        const std::string where = location(traj.probes()[j]);
        row(t, "lymphangion", k, where, "diameter", "um", diameter_um(p.A));
        row(t, "lymphangion", k, where, "flow", "uL/h", p.q / microlitre_per_hour);
        row(t, "lymphangion", k, where, "velocity", "mm/s", p.q / p.A / millimetre);
        row(t, "lymphangion", k, where, "pressure", "cmH2O", p.p / cmH2O);
        row(t, "lymphangion", k, where, "wss", "dyne/cm^2", p.tau / dyne_per_cm2);
      }
    }
    for (int slot = 0; slot < traj.valve_slots(); ++slot) {
      if (!traj.valve_present(slot)) continue;
      const auto v = traj.valve(i, slot);
      row(t, "valve", slot, "whole", "flow", "uL/h", v.q_v / microlitre_per_hour);
      row(t, "valve", slot, "whole", "xi", "-", v.xi);
      row(t, "valve", slot, "whole", "pressure_difference", "cmH2O", v.dp / cmH2O);
    }
  }
}

void write_fields_csv(std::ostream& os, const Trajectory& traj, const std::vector<double>& dx) {
  using namespace units;
  os << "time [s],lymphangion,x [mm],diameter [um],flow [uL/h]\n";
  for (std::size_t n = 0; n < traj.fields.size(); ++n) {
    for (std::size_t k = 0; k < traj.fields[n].size(); ++k) {
      const auto& field = traj.fields[n][k];
      for (int i = 0; i < field.size(); ++i)
        os << num(traj.field_times[n]) << ',' << k << ',' << num((i + 0.5) * dx.at(k) / millimetre) << ','
           << num(diameter_um(field.A(i))) << ',' << num(field.q(i) / microlitre_per_hour) << '\n';
    }
  }
}

void write_index_csv_header(std::ostream& os, const std::vector<std::string>& leading) {
  for (const auto& col : leading) os << csv_field(col) << ',';
  os << "status,cycles";
  for (const auto& [name, unit] : index_fields()) os << ',' << name << " [" << unit << ']';
  os << '\n';
}

void write_index_csv_row(std::ostream& os, const IndexReport& report) {
  os << (report.contracting ? "contracting" : "quiescent") << ',' << report.cycles;
  for (double v : index_values(report)) os << ',' << num(v);
  os << '\n';
}

namespace {

void write_failed_row(std::ostream& os, const std::string& error) {
  os << csv_field("failed: " + error) << ",0";
  for (std::size_t i = 0; i < index_fields().size(); ++i) os << ',';
  os << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  write_index_csv_header(os, {"P_in [cmH2O]", "P_out [cmH2O]"});
  for (const auto& p : points) {
    os << num(p.P_in) << ',' << num(p.P_out) << ',';
    if (p.report)
      write_index_csv_row(os, *p.report);
    else
      write_failed_row(os, p.error);
  }
}

void write_valve_study_csv(std::ostream& os, const ValveStudyPoint* points, std::size_t count, int valve,
                           const std::string& parameter) {
  write_index_csv_header(os, {"valve", "parameter", "value [-]", "f_min = f_Ca [min^-1]"});
  for (std::size_t k = 0; k < count; ++k) {
    const auto& p = points[k];
    os << valve << ',' << parameter << ',' << num(p.value) << ','
       << (p.frequency_per_min ? num(*p.frequency_per_min) : std::string()) << ',';
    if (p.report)
      write_index_csv_row(os, *p.report);
    else
      write_failed_row(os, p.error);
  }
}

void write_riemann_csv(std::ostream& os, const RiemannComparison& cmp) {
  os << "cells,x [mm],exact A/A0 [-],exact u [m/s],numerical A/A0 [-],numerical u [m/s]\n";
  for (const auto& run : cmp.runs)
    for (int i = 0; i < run.cells; ++i)
      os << run.cells << ',' << num(run.x(i) / units::millimetre) << ',' << num(run.A_exact(i) / cmp.A0) << ','
         << num(run.u_exact(i)) << ',' << num(run.A_numerical(i) / cmp.A0) << ',' << num(run.u_numerical(i)) << '\n';
}

void write_riemann_errors_csv(std::ostream& os, const RiemannComparison& cmp) {
  os << "cells,steps,L1 A/A0 [-],L1 u [m/s]\n";
  for (const auto& run : cmp.runs)
    os << run.cells << ',' << run.steps << ',' << num(run.L1_area_ratio) << ',' << num(run.L1_velocity) << '\n';
}

void write_sensitivity_summary_csv(std::ostream& os, const SensitivityStudy& study) {
  os << "parameter,reference,index,mean S [%],sd S [%],samples\n";
  const auto& r = study.result;
  for (std::size_t i = 0; i < study.parameters.size(); ++i)
    for (std::size_t j = 0; j < study.indexes.size(); ++j)
      os << study.parameters[i] << ',' << num(study.reference[i]) << ',' << study.indexes[j] << ','
         << num(r.mean[i][j]) << ',' << num(r.sigma[i][j]) << ',' << r.count[i][j] << '\n';
}

void write_sensitivity_table_csv(std::ostream& os, const SensitivityStudy& study) {
  os << "parameter,sampled mean,sampled sd";
  for (const auto& name : study.indexes) os << ',' << name << " mean S [%]," << name << " sd S [%]";
  os << '\n';
  const auto& r = study.result;
  for (std::size_t i = 0; i < study.parameters.size(); ++i) {
    double mean = 0.0, var = 0.0;
    const double n = static_cast<double>(study.samples.size());
    for (const auto& s : study.samples) mean += s.point[i] / n;
    for (const auto& s : study.samples) var += (s.point[i] - mean) * (s.point[i] - mean) / n;
    os << study.parameters[i] << ',' << num(mean) << ',' << num(std::sqrt(var));
    for (std::size_t j = 0; j < study.indexes.size(); ++j) os << ',' << num(r.mean[i][j]) << ',' << num(r.sigma[i][j]);
    os << '\n';
  }
}

void write_sensitivity_points_csv(std::ostream& os, const SensitivityStudy& study) {
  os << "replicate,seed";
  for (const auto& p : study.parameters) os << ',' << p;
  os << '\n';
  for (std::size_t r = 0; r < study.samples.size(); ++r) {
    os << r << ',' << study.seed + r;
    for (double v : study.samples[r].point) os << ',' << num(v);
    os << '\n';
  }
}

void write_sensitivity_replicate_csv(std::ostream& os, const SensitivityStudy& study, std::size_t replicate) {
  os << "replicate,parameter,index,S [%]\n";
  const auto& S = study.samples.at(replicate).S;
  for (std::size_t i = 0; i < study.parameters.size(); ++i)
    for (std::size_t j = 0; j < study.indexes.size(); ++j)
      os << replicate << ',' << study.parameters[i] << ',' << study.indexes[j] << ',' << num(S[i][j]) << '\n';
}

std::string index_report_json(const Scenario& scenario, const RunResult& result) {
  const auto& traj = result.trajectory;
  const int vessel = scenario.analysis_vessel();
  json doc;
  doc["scenario"] = scenario.name;
  doc["seed"] = scenario.simulation.seed;
  doc["lymphangion"] = vessel;
  doc["status"] = result.failure ? "failed" : "completed";
  if (result.failure) doc["error"] = *result.failure;
  doc["steps"] = result.steps;
  doc["positivity_fallbacks"] = result.fallbacks;
  doc["t_final [s]"] = traj.empty() ? 0.0 : traj.time(traj.size() - 1);
  doc["contracting"] = result.report.contracting;
  doc["cycles"] = result.report.cycles;
  doc["window [s]"] = {result.report.t_start, result.report.t_end};
  doc["indexes"] = index_json(result.report);

  json initial = json::array();
  if (!traj.empty()) {
    for (int k = 0; k < traj.vessels(); ++k) {
      const auto centre = traj.probe(0, k, traj.probe_index(0.5));
      initial.push_back({{"lymphangion", k},
                         {"v", traj.efmc(0, k, kV)},
                         {"w", traj.efmc(0, k, kW)},
                         {"I", traj.efmc(0, k, kI)},
                         {"s", traj.efmc(0, k, kS)},
                         {"centre diameter [um]", diameter_um(centre.A)},
                         {"centre pressure [cmH2O]", centre.p / units::cmH2O},
                         {"volume [nL]", traj.volume(0, k) / units::nanolitre}});
    }
  }
  doc["initial_state"] = initial;
  return doc.dump(2) + "\n";
}

std::string riemann_json(const RiemannComparison& cmp) {
  json doc;
  doc["A_star/A0"] = cmp.exact.A_star / cmp.A0;
  doc["u_star [m/s]"] = cmp.exact.u_star;
  doc["left_wave"] = to_string(cmp.exact.left_wave);
  doc["right_wave"] = to_string(cmp.exact.right_wave);
  doc["left_speeds [m/s]"] = {cmp.exact.left_head, cmp.exact.left_tail};
  doc["right_speeds [m/s]"] = {cmp.exact.right_head, cmp.exact.right_tail};
  json runs = json::array();
  for (const auto& r : cmp.runs)
    runs.push_back({{"cells", r.cells}, {"steps", r.steps}, {"L1 A/A0", r.L1_area_ratio}, {"L1 u [m/s]", r.L1_velocity}});
  doc["runs"] = runs;
  return doc.dump(2) + "\n";
}

std::string sensitivity_json(const SensitivityStudy& study) {
  json doc;
  doc["generator"] = "mt19937_64";
  doc["seed"] = study.seed;
  doc["replicates"] = study.samples.size();
  doc["parameters"] = study.parameters;
  doc["reference"] = study.reference;
  doc["differentiated"] = study.differentiated;
  doc["indexes"] = study.indexes;
  json mean = json::object();
  for (std::size_t i = 0; i < study.parameters.size(); ++i) {
    json row = json::object();
    for (std::size_t j = 0; j < study.indexes.size(); ++j) {
      const double m = study.result.mean[i][j], s = study.result.sigma[i][j];
      row[study.indexes[j]] = {{"mean", std::isfinite(m) ? json(m) : json(nullptr)},
                               {"sd", std::isfinite(s) ? json(s) : json(nullptr)},
                               {"samples", study.result.count[i][j]}};
    }
    mean[study.parameters[i]] = row;
  }
  doc["sensitivity [%]"] = mean;
  return doc.dump(2) + "\n";
}

}  // namespace lymphax
