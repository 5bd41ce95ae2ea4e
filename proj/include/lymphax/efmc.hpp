#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>

#include "lymphax/errors.hpp"

namespace lymphax {

enum EfmcIndex { kV = 0, kW = 1, kI = 2, kS = 3 };

template <typename Scalar>
using EfmcState = Eigen::Matrix<Scalar, 4, 1>;
using EfmcStated = EfmcState<double>;

template <typename Scalar>
struct EfmcParams {
  Scalar a1 = Scalar(100);
  Scalar a2 = Scalar(0.5);
  Scalar a3 = Scalar(25);
  Scalar b1 = Scalar(3);
  Scalar b2 = Scalar(0);
  Scalar c1 = Scalar(110);
  Scalar c2 = Scalar(3);
  Scalar R_I = Scalar(0.1);
  Scalar k_rel = Scalar(10);
  Scalar k_ca1 = Scalar(0);
  Scalar k_ca2 = Scalar(0);
  Scalar n_ca = Scalar(10);
  Scalar A_ca = Scalar(0);
  Scalar k_no = Scalar(0.8);
  Scalar tau_no = Scalar(0.6);
  Scalar n_no = Scalar(1.2);
  Scalar f_min = Scalar(3.0 / 60.0);
  Scalar f_ca = Scalar(20.0 / 60.0);
  Scalar t_excited = Scalar(2);

  void validate() const {
    if (b2 != Scalar(0)) throw DomainError("EFMC requires b2 = 0");
    if (!(a1 > 0) || !(b1 > 0)) throw DomainError("EFMC requires a1 > 0 and b1 > 0");
    if (!(k_no >= 0) || !(k_no <= 1)) throw DomainError("EFMC requires 0 <= k_NO <= 1");
    if (!(f_min > 0) || !(Scalar(1) / t_excited > f_min) || !(f_ca >= f_min))
      throw DomainError("EFMC requires 1/t_excited > f_min and f_Ca >= f_min");
    if (!(A_ca > 0)) throw DomainError("EFMC requires A_Ca > 0");
    if (!(tau_no > 0)) throw DomainError("EFMC requires tau_NO > 0");
  }
  bool operator==(const EfmcParams&) const = default;
};
using EfmcParamsd = EfmcParams<double>;

template <typename Scalar>
Scalar f_NO(Scalar tau_bar, const EfmcParams<Scalar>& p) {
  using std::abs;
  using std::exp;
  using std::pow;
  const Scalar ratio = pow(abs(tau_bar / p.tau_no), p.n_no);
  return Scalar(1) - p.k_no * (Scalar(2) / (Scalar(1) + exp(-ratio)) - Scalar(1));
}

template <typename Scalar>
bool in_activation_region(const EfmcState<Scalar>& y, const EfmcParams<Scalar>& p) {
  return y(kV) * y(kV) + y(kW) * y(kW) <= p.R_I * p.R_I;
}

template <typename Scalar>
Scalar stimulus_growth_rate(Scalar A_bar, Scalar tau_bar, const EfmcParams<Scalar>& p) {
  using std::pow;
  return (p.k_ca1 + p.k_ca2 * pow(A_bar / p.A_ca, p.n_ca)) * f_NO(tau_bar, p);
}

template <typename Scalar>
Scalar f_I(Scalar A_bar, Scalar tau_bar, const EfmcState<Scalar>& y, const EfmcParams<Scalar>& p) {
  if (!(A_bar > 0)) throw DomainError("f_I requires a positive mean area");
  if (in_activation_region(y, p)) return stimulus_growth_rate(A_bar, tau_bar, p);
  return -y(kI) * p.k_rel;
}

template <typename Scalar>
Scalar f_s(const EfmcState<Scalar>& y, const EfmcParams<Scalar>& p) {
  using std::max;
  const Scalar v = y(kV), w = y(kW), s = y(kS);
  if (v > 0) return p.c1 * v * w * (Scalar(1) - s);
  return -p.c2 * s * max(Scalar(1) - w, Scalar(0));
}

// Which side of each switching surface the state lies on.
struct EfmcBranch {
  bool active = true;   // inside the activation region
  bool excited = false; // v > 0
};

template <typename Scalar>
EfmcBranch efmc_branch(const EfmcState<Scalar>& y, const EfmcParams<Scalar>& p) {
  return {in_activation_region(y, p), y(kV) > 0};
}

template <typename Scalar>
EfmcState<Scalar> efmc_rhs(const EfmcState<Scalar>& y, Scalar stimulus_rate, EfmcBranch branch,
                           const EfmcParams<Scalar>& p) {
  using std::max;
  const Scalar v = y(kV), w = y(kW), I = y(kI), s = y(kS);
  EfmcState<Scalar> dy;
  dy(kV) = p.a1 * (v * (v - p.a2) * (Scalar(1) - p.a3 * v) - w + v * I);
  dy(kW) = p.b1 * v - p.b2 * w;
  dy(kI) = branch.active ? stimulus_rate : -I * p.k_rel;
  dy(kS) = branch.excited ? p.c1 * v * w * (Scalar(1) - s) : -p.c2 * s * max(Scalar(1) - w, Scalar(0));
  return dy;
}

template <typename Scalar>
EfmcState<Scalar> efmc_rhs(const EfmcState<Scalar>& y, Scalar A_bar, Scalar tau_bar,
                           const EfmcParams<Scalar>& p) {
  if (!(A_bar > 0)) throw DomainError("efmc_rhs requires a positive mean area");
  return efmc_rhs(y, stimulus_growth_rate(A_bar, tau_bar, p), efmc_branch(y, p), p);
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> efmc_jacobian(const EfmcState<Scalar>& y, EfmcBranch branch,
                                          const EfmcParams<Scalar>& p) {
  const Scalar v = y(kV), w = y(kW), I = y(kI), s = y(kS);
  Eigen::Matrix<Scalar, 4, 4> J = Eigen::Matrix<Scalar, 4, 4>::Zero();
  const Scalar cubic = (v - p.a2) * (Scalar(1) - p.a3 * v) + v * (Scalar(1) - p.a3 * v) - p.a3 * v * (v - p.a2);
  J(kV, kV) = p.a1 * (cubic + I);
  J(kV, kW) = -p.a1;
  J(kV, kI) = p.a1 * v;
  J(kW, kV) = p.b1;
  J(kW, kW) = -p.b2;
  if (!branch.active) J(kI, kI) = -p.k_rel;
  if (branch.excited) {
    J(kS, kV) = p.c1 * w * (Scalar(1) - s);
    J(kS, kW) = p.c1 * v * (Scalar(1) - s);
    J(kS, kS) = -p.c1 * v * w;
  } else if (w < Scalar(1)) {
    J(kS, kW) = p.c2 * s;
    J(kS, kS) = -p.c2 * (Scalar(1) - w);
  }
  return J;
}

enum class StationaryKind { StableNode, StableSpiral, UnstableSpiral, UnstableNode };

const char* to_string(StationaryKind kind);

template <typename Scalar>
StationaryKind classify_stationary(Scalar I, const EfmcParams<Scalar>& p) {
  using std::sqrt;
  if (!(p.a1 > 0) || !(p.b1 > 0)) throw DomainError("classification requires a1 > 0 and b1 > 0");
  const Scalar spread = Scalar(2) * sqrt(p.b1 / p.a1);
  if (I < p.a2 - spread) return StationaryKind::StableNode;
  if (I < p.a2) return StationaryKind::StableSpiral;
  if (I <= p.a2 + spread) return StationaryKind::UnstableSpiral;
  return StationaryKind::UnstableNode;
}

template <typename Scalar>
Scalar trigger_min(const EfmcParams<Scalar>& p) {
  return p.a2;
}
template <typename Scalar>
Scalar trigger_mean(const EfmcParams<Scalar>& p) {
  using std::sqrt;
  return p.a2 + sqrt(p.b1 / p.a1);
}
template <typename Scalar>
Scalar trigger_max(const EfmcParams<Scalar>& p) {
  using std::sqrt;
  return p.a2 + Scalar(2) * sqrt(p.b1 / p.a1);
}

template <typename Scalar>
std::pair<Scalar, Scalar> derive_k_ca(const EfmcParams<Scalar>& p) {
  const Scalar activation_min = Scalar(1) / p.f_min - p.t_excited;
  const Scalar activation_ca = Scalar(1) / p.f_ca - p.t_excited;
  if (!(activation_min > 0) || !(activation_ca > 0))
    throw DomainError("calibration gives a non-positive activation time");
  if (!(p.f_ca >= p.f_min)) throw DomainError("calibration requires f_Ca >= f_min");
  const Scalar trigger = trigger_mean(p);
  const Scalar k1 = trigger / activation_min;
  return {k1, trigger / activation_ca - k1};
}

// Copy of p with k_Ca1 and k_Ca2 set from the calibration frequencies.
template <typename Scalar>
EfmcParams<Scalar> calibrated(EfmcParams<Scalar> p) {
  const auto [k1, k2] = derive_k_ca(p);
  p.k_ca1 = k1;
  p.k_ca2 = k2;
  return p;
}

template <typename Scalar>
Scalar predicted_frequency(Scalar A_bar, Scalar tau_bar, Scalar trigger, const EfmcParams<Scalar>& p) {
  if (!(A_bar > 0) || !(trigger > 0)) throw DomainError("predicted_frequency requires A_bar > 0 and I > 0");
  return Scalar(1) / (p.t_excited + trigger / stimulus_growth_rate(A_bar, tau_bar, p));
}

// One step of the EFMC system with the Lobatto IIIC scheme; s is clamped to [0, 1].
EfmcStated efmc_step(const EfmcStated& y, double A_bar, double tau_bar, const EfmcParamsd& p, double dt);

// Time spent outside the activation region per cycle of the uncoupled model at A_bar = A_Ca.
double measure_excited_time(const EfmcParamsd& p, double t_end = 120.0, double dt = 1e-3);

}  // namespace lymphax
