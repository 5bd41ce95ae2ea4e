#include "lymphax/trajectory.hpp"

#include <cmath>
#include <string>

namespace lymphax {

Trajectory::Trajectory(int vessels, std::vector<bool> valve_present, std::vector<double> probes)
    : vessels_(vessels), valve_present_(std::move(valve_present)), probes_(std::move(probes)) {
  width_ = 1 + vessels_ * kVesselWidth + vessels_ * probes_.size() * kProbeWidth +
           valve_present_.size() * kValveWidth;
}

int Trajectory::probe_index(double fraction) const {
  for (std::size_t j = 0; j < probes_.size(); ++j)
    if (std::abs(probes_[j] - fraction) < 1e-12) return static_cast<int>(j);
  throw DomainError("no probe recorded at fraction " + std::to_string(fraction));
}

ProbeSample Trajectory::probe(std::size_t i, int vessel, int probe) const {
  const int o = probe_offset(vessel, probe);
  return {at(i, o), at(i, o + 1), at(i, o + 2), at(i, o + 3)};
}

ValveSample Trajectory::valve(std::size_t i, int slot) const {
  const int o = valve_offset(slot);
  return {at(i, o), at(i, o + 1), at(i, o + 2)};
}

double* Trajectory::append_row() {
  data_.resize(data_.size() + width_, 0.0);
  return data_.data() + data_.size() - width_;
}

}  // namespace lymphax
