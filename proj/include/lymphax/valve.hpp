#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "lymphax/errors.hpp"
#include "lymphax/vessel_wall.hpp"

namespace lymphax {

enum ValveIndex { kQv = 0, kXi = 1 };

template <typename Scalar>
using ValveState = Eigen::Matrix<Scalar, 2, 1>;
using ValveStated = ValveState<double>;

template <typename Scalar>
struct ValveParams {
  Scalar K_vo = Scalar(10);
  Scalar K_vc = Scalar(10);
  Scalar dp_open = Scalar(0);
  Scalar dp_close = Scalar(0);
  Scalar M_st = Scalar(1);
  Scalar M_rg = Scalar(0);
  Scalar L_eff = Scalar(1e-4);
  Scalar A0_ref = Scalar(std::numbers::pi * 47.7e-6 * 47.7e-6);

  void validate() const {
    if (!(M_rg >= 0) || !(M_rg <= M_st) || !(M_st <= 1))
      throw DomainError("valve requires 0 <= M_rg <= M_st <= 1");
    if (!(K_vo > 0) || !(K_vc > 0) || !(L_eff > 0)) throw DomainError("valve requires K_vo, K_vc, L_eff > 0");
    if (!(A0_ref > 0)) throw DomainError("valve requires a positive reference area");
  }
  bool operator==(const ValveParams&) const = default;
};
using ValveParamsd = ValveParams<double>;

template <typename Scalar>
struct ValveCoefficients {
  Scalar B;  // Bernoulli resistance
  Scalar L;  // inertance
  Scalar R;  // viscous resistance
};

namespace detail {

template <typename Scalar>
Scalar valve_area_floor(const ValveParams<Scalar>& p) {
  return Scalar(1e-6) * p.A0_ref;
}

template <typename Scalar>
Scalar valve_area_unchecked(Scalar xi, const ValveParams<Scalar>& p) {
  using std::max;
  const Scalar area = p.M_rg * p.A0_ref + xi * (p.M_st - p.M_rg) * p.A0_ref;
  return max(area, valve_area_floor(p));
}

}  // namespace detail

template <typename Scalar>
Scalar effective_area(Scalar xi, const ValveParams<Scalar>& p) {
  if (!(xi >= 0) || !(xi <= 1)) throw DomainError("valve state must lie in [0, 1]");
  return detail::valve_area_unchecked(xi, p);
}

template <typename Scalar>
ValveCoefficients<Scalar> coefficients_for_area(Scalar A_eff, const ValveParams<Scalar>& p,
                                                const LymphProperties<Scalar>& props) {
  const Scalar A2 = A_eff * A_eff;
  return {props.rho / (Scalar(2) * A2), props.rho * p.L_eff / A_eff,
          Scalar(2) * (props.gamma + Scalar(2)) * Scalar(std::numbers::pi) * props.mu * p.L_eff / A2};
}

template <typename Scalar>
ValveCoefficients<Scalar> valve_coefficients(Scalar xi, const ValveParams<Scalar>& p,
                                             const LymphProperties<Scalar>& props) {
  return coefficients_for_area(effective_area(xi, p), p, props);
}

template <typename Scalar>
Scalar valve_flow_rhs(const ValveState<Scalar>& y, Scalar dp, const ValveParams<Scalar>& p,
                      const LymphProperties<Scalar>& props) {
  using std::abs;
  const auto c = coefficients_for_area(detail::valve_area_unchecked(y(kXi), p), p, props);
  const Scalar q = y(kQv);
  return (dp - c.R * q - c.B * q * abs(q)) / c.L;
}

template <typename Scalar>
Scalar valve_state_rhs(Scalar xi, Scalar dp, const ValveParams<Scalar>& p) {
  if (dp > p.dp_open) return p.K_vo * (Scalar(1) - xi) * (dp - p.dp_open);
  if (dp < p.dp_close) return p.K_vc * xi * (dp - p.dp_close);
  return Scalar(0);
}

template <typename Scalar>
ValveState<Scalar> valve_rhs(const ValveState<Scalar>& y, Scalar dp, const ValveParams<Scalar>& p,
                             const LymphProperties<Scalar>& props) {
  return ValveState<Scalar>(valve_flow_rhs(y, dp, p, props), valve_state_rhs(y(kXi), dp, p));
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> valve_jacobian(const ValveState<Scalar>& y, Scalar dp, const ValveParams<Scalar>& p,
                                           const LymphProperties<Scalar>& props) {
  using std::abs;
  const Scalar q = y(kQv);
  const Scalar raw = p.M_rg * p.A0_ref + y(kXi) * (p.M_st - p.M_rg) * p.A0_ref;
  const Scalar A = detail::valve_area_unchecked(y(kXi), p);
  const Scalar dA = raw > detail::valve_area_floor(p) ? (p.M_st - p.M_rg) * p.A0_ref : Scalar(0);
  const auto c = coefficients_for_area(A, p, props);
  const Scalar numerator = dp - c.R * q - c.B * q * abs(q);
  // (numerator / L) with R, B ~ 1/A^2 and L ~ 1/A
  const Scalar dnum_dA = Scalar(2) * (c.R * q + c.B * q * abs(q)) / A;
  Eigen::Matrix<Scalar, 2, 2> J;
  J(0, 0) = -(c.R + Scalar(2) * c.B * abs(q)) / c.L;
  J(0, 1) = (dnum_dA / c.L + numerator / (c.L * A)) * dA;
  J(1, 0) = Scalar(0);
  if (dp > p.dp_open)
    J(1, 1) = -p.K_vo * (dp - p.dp_open);
  else if (dp < p.dp_close)
    J(1, 1) = p.K_vc * (dp - p.dp_close);
  else
    J(1, 1) = Scalar(0);
  return J;
}

// Root of R q + B q|q| = dp for a valve held at A_eff.
template <typename Scalar>
Scalar steady_valve_flow(Scalar dp, Scalar A_eff, const ValveParams<Scalar>& p, const LymphProperties<Scalar>& props) {
  using std::abs;
  using std::sqrt;
  const auto c = coefficients_for_area(A_eff, p, props);
  const Scalar magnitude = abs(dp);
  Scalar q;
  if (c.B == Scalar(0))
    q = magnitude / c.R;
  else
    q = Scalar(2) * magnitude / (c.R + sqrt(c.R * c.R + Scalar(4) * c.B * magnitude));
  return dp < 0 ? -q : q;
}

// One Lobatto IIIC step of the valve with the pressure difference frozen.
ValveStated valve_step(const ValveStated& y, double dp, const ValveParamsd& p, const LymphPropertiesd& props,
                       double dt);

}  // namespace lymphax
