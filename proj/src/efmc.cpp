#include "lymphax/efmc.hpp"

#include <algorithm>

#include "lymphax/lobatto.hpp"

namespace lymphax {

const char* to_string(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::StableNode:
      return "stable node";
    case StationaryKind::StableSpiral:
      return "stable spiral";
    case StationaryKind::UnstableSpiral:
      return "unstable spiral";
    case StationaryKind::UnstableNode:
      return "unstable node";
  }
  return "unknown";
}

EfmcStated efmc_step(const EfmcStated& y, double A_bar, double tau_bar, const EfmcParamsd& p, double dt) {
  if (!(A_bar > 0)) throw DomainError("efmc_step requires a positive mean area");
  const double rate = stimulus_growth_rate(A_bar, tau_bar, p);
  const EfmcBranch branch = efmc_branch(y, p);
  auto rhs = [&](const EfmcStated& x) { return efmc_rhs(x, rate, branch, p); };
  auto jac = [&](const EfmcStated& x) { return efmc_jacobian(x, branch, p); };
  EfmcStated next = lobatto_iiic_step<4>(rhs, jac, y, dt, EfmcStated::Ones());
  next(kS) = std::clamp(next(kS), 0.0, 1.0);
  next(kI) = std::max(next(kI), 0.0);
  return next;
}

double measure_excited_time(const EfmcParamsd& p, double t_end, double dt) {
  EfmcStated y(0.1, 0.0, 0.0, 0.0);
  bool inside = in_activation_region(y, p);
  double exit_time = -1.0, total = 0.0;
  int excursions = 0;
  for (double t = 0.0; t < t_end; t += dt) {
    y = efmc_step(y, p.A_ca, 0.0, p, dt);
    const bool now_inside = in_activation_region(y, p);
    if (inside && !now_inside) exit_time = t + dt;
    if (!inside && now_inside && exit_time >= 0.0) {
      total += t + dt - exit_time;
      ++excursions;
    }
    inside = now_inside;
  }
  if (excursions == 0) throw NumericalError("measure_excited_time: no complete excursion");
  return total / excursions;
}

}  // namespace lymphax
