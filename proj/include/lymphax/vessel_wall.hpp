#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <string>

#include "lymphax/errors.hpp"
#include "lymphax/power.hpp"
#include "lymphax/quadrature.hpp"

namespace lymphax {

template <typename Scalar>
struct TubeLawParams {
  Scalar m = Scalar(0.5);
  Scalar n = Scalar(-5);
  Scalar z = Scalar(19);
  Scalar C = Scalar(1e-16);

  void validate() const {
    if (!(m >= 0) || !(n <= 0) || !(z >= 0) || !(C >= 0))
      throw DomainError("tube law requires m >= 0, n <= 0, z >= 0, C >= 0");
  }
  bool operator==(const TubeLawParams&) const = default;
};

template <typename Scalar>
struct VesselGeometry {
  Scalar r0 = Scalar(47.7e-6);
  Scalar h0 = Scalar(0.3 * 47.7e-6);
  Scalar A0 = Scalar(std::numbers::pi * 47.7e-6 * 47.7e-6);
  Scalar length = Scalar(1.5e-3);
  Scalar p_e = Scalar(0);

  static VesselGeometry from_radius(Scalar r0, Scalar h0, Scalar length, Scalar p_e = Scalar(0)) {
    VesselGeometry g;
    g.r0 = r0;
    g.h0 = h0;
    g.A0 = Scalar(std::numbers::pi) * r0 * r0;
    g.length = length;
    g.p_e = p_e;
    g.validate();
    return g;
  }

  void validate() const {
    using std::abs;
    if (!(r0 > 0) || !(h0 > 0) || !(length > 0))
      throw DomainError("vessel geometry requires r0, h0, length > 0");
    const Scalar area = Scalar(std::numbers::pi) * r0 * r0;
    if (abs(A0 - area) > Scalar(1e-12) * area)
      throw DomainError("vessel geometry requires A0 = pi r0^2");
  }
  bool operator==(const VesselGeometry&) const = default;
};

template <typename Scalar>
struct WallStiffness {
  Scalar E_min = Scalar(35000);
  Scalar E_max = Scalar(135000);
  Scalar nu = Scalar(0.5);

  void validate() const {
    if (!(E_min > 0) || !(E_min <= E_max) || !(nu >= 0) || !(nu < 1))
      throw DomainError("wall stiffness requires 0 < E_min <= E_max and 0 <= nu < 1");
  }
  bool operator==(const WallStiffness&) const = default;
};

template <typename Scalar>
struct LymphProperties {
  Scalar rho = Scalar(998);
  Scalar mu = Scalar(1e-3);
  Scalar gamma = Scalar(2);
  Scalar alpha = Scalar(1);

  void validate() const {
    if (!(rho > 0) || !(mu >= 0) || !(gamma > 0) || alpha != Scalar(1))
      throw DomainError("lymph properties require rho > 0, mu >= 0, gamma > 0, alpha = 1");
  }
  bool operator==(const LymphProperties&) const = default;
};

template <typename Scalar>
Scalar psi(Scalar A, Scalar A0, const TubeLawParams<Scalar>& law) {
  using std::pow;
  if (!(A > 0) || !(A0 > 0)) throw DomainError("psi requires A > 0");
  const Scalar x = A / A0;
  return pow(x, law.m) - pow(x, law.n) + law.C * (pow(x, law.z) - Scalar(1));
}

template <typename Scalar>
Scalar stiffness_K(Scalar s, const WallStiffness<Scalar>& wall, const VesselGeometry<Scalar>& geom) {
  if (!(s >= 0) || !(s <= 1)) throw DomainError("contraction state must lie in [0, 1]");
  const Scalar ratio = geom.h0 / geom.r0;
  const Scalar E = wall.E_min + s * (wall.E_max - wall.E_min);
  return E * ratio * ratio * ratio / (Scalar(12) * (Scalar(1) - wall.nu * wall.nu));
}

template <typename Scalar>
Scalar wall_shear_stress(Scalar A, Scalar q, const LymphProperties<Scalar>& props) {
  using std::sqrt;
  if (!(A > 0)) throw DomainError("wall shear stress requires A > 0");
  const Scalar r = sqrt(A / Scalar(std::numbers::pi));
  return -(q / A) * props.mu * (props.gamma + Scalar(2)) / r;
}

template <typename Scalar>
Scalar genuine_nonlinearity_G(Scalar ratio, const TubeLawParams<Scalar>& law) {
  using std::pow;
  const auto term = [&](Scalar e) { return e * (e + Scalar(2)) * pow(ratio, e); };
  return term(law.m) - term(law.n) + law.C * term(law.z);
}

// Tube law with exponents prepared for repeated evaluation.
template <typename Scalar>
class TubeLaw {
 public:
  TubeLaw() : TubeLaw(TubeLawParams<Scalar>{}) {}
  explicit TubeLaw(const TubeLawParams<Scalar>& params) : params_(params) {
    params_.validate();
    const auto to_double = [](const Scalar& v) { return static_cast<double>(v); };
    m_ = Exponent(to_double(params_.m));
    n_ = Exponent(to_double(params_.n));
    z_ = Exponent(to_double(params_.z));
    m1_ = Exponent(to_double(params_.m) + 1.0);
    n1_ = Exponent(to_double(params_.n) + 1.0);
    z1_ = Exponent(to_double(params_.z) + 1.0);
    mc_ = primitive_coefficient(params_.m);
    nc_ = primitive_coefficient(params_.n);
    zc_ = primitive_coefficient(params_.z);
  }

  const TubeLawParams<Scalar>& params() const { return params_; }

  Scalar psi(Scalar x) const { return m_(x) - n_(x) + params_.C * (z_(x) - Scalar(1)); }

  // x * dpsi/dx
  Scalar stretch_derivative(Scalar x) const {
    return params_.m * m_(x) - params_.n * n_(x) + params_.C * params_.z * z_(x);
  }

  // integral of x * dpsi/dx over x, vanishing at x = 0 for the power terms
  Scalar pressure_integral(Scalar x) const {
    return power_primitive(params_.m, mc_, m1_, x) - power_primitive(params_.n, nc_, n1_, x) +
           params_.C * power_primitive(params_.z, zc_, z1_, x);
  }

 private:
  // e / (e + 1), unused when e = -1 (logarithmic primitive)
  static Scalar primitive_coefficient(Scalar e) { return e == Scalar(-1) ? Scalar(0) : e / (e + Scalar(1)); }

  static Scalar power_primitive(Scalar e, Scalar coefficient, const Exponent& e1, Scalar x) {
    using std::log;
    if (e1.value() == 0.0) return e * log(x);
    return coefficient * e1(x);
  }

  TubeLawParams<Scalar> params_;
  Exponent m_, n_, z_, m1_, n1_, z1_;
  Scalar mc_{}, nc_{}, zc_{};
};

// Mechanics of one lymphangion: tube law, geometry, stiffness and fluid.
template <typename Scalar>
class VesselWall {
 public:
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

  VesselWall()
      : VesselWall(TubeLawParams<Scalar>{}, VesselGeometry<Scalar>{}, WallStiffness<Scalar>{},
                   LymphProperties<Scalar>{}) {}
  VesselWall(const TubeLawParams<Scalar>& law, const VesselGeometry<Scalar>& geometry,
             const WallStiffness<Scalar>& stiffness, const LymphProperties<Scalar>& props)
      : law_(law), geometry_(geometry), stiffness_(stiffness), props_(props) {
    geometry_.validate();
    stiffness_.validate();
    props_.validate();
    inv_A0_ = Scalar(1) / geometry_.A0;
    inv_rho_ = Scalar(1) / props_.rho;
  }

  const TubeLaw<Scalar>& law() const { return law_; }
  const VesselGeometry<Scalar>& geometry() const { return geometry_; }
  const WallStiffness<Scalar>& stiffness_params() const { return stiffness_; }
  const LymphProperties<Scalar>& properties() const { return props_; }
  Scalar A0() const { return geometry_.A0; }

  Scalar stiffness(Scalar s) const { return stiffness_K(s, stiffness_, geometry_); }

  Scalar pressure(Scalar A, Scalar s) const {
    check_area(A);
    return stiffness(s) * law_.psi(A / geometry_.A0) + geometry_.p_e;
  }

  Scalar wave_speed(Scalar A, Scalar s) const {
    check_area(A);
    return wave_speed_unchecked(A, stiffness(s));
  }

  Scalar wall_shear_stress(Scalar A, Scalar q) const { return lymphax::wall_shear_stress(A, q, props_); }

  // kappa in S = (0, -kappa q / A)
  Scalar friction() const {
    return Scalar(2) * (props_.gamma + Scalar(2)) * Scalar(std::numbers::pi) * props_.mu / props_.rho;
  }

  Vector2 flux(const Vector2& Q, Scalar s) const { return flux_with_K(Q, stiffness(s)); }

  Vector2 flux_with_K(const Vector2& Q, Scalar K) const {
    check_area(Q(0));
    return Vector2(Q(1), Q(1) * Q(1) / Q(0) + pressure_flux(Q(0), K));
  }

  // (K/rho) A0 times the primitive of x dpsi/dx
  Scalar pressure_flux(Scalar A, Scalar K) const {
    return K * inv_rho_ * geometry_.A0 * law_.pressure_integral(A * inv_A0_);
  }

  Scalar wave_speed_unchecked(Scalar A, Scalar K) const {
    using std::sqrt;
    return sqrt(K * inv_rho_ * law_.stretch_derivative(A * inv_A0_));
  }

  // integral of c(a)/a over a from A_from to A_to
  Scalar riemann_integral(Scalar A_from, Scalar A_to, Scalar s) const {
    return riemann_integral_with_K(A_from, A_to, stiffness(s));
  }

  Scalar riemann_integral_with_K(Scalar A_from, Scalar A_to, Scalar K) const {
    using std::sqrt;
    check_area(A_from);
    check_area(A_to);
    if (A_from == A_to) return Scalar(0);
    const Scalar x0 = A_from / geometry_.A0;
    const Scalar x1 = A_to / geometry_.A0;
    const auto integrand = [this](Scalar x) { return sqrt(law_.stretch_derivative(x)) / x; };
    const Scalar scale = sqrt(K / props_.rho);
    if (scale == Scalar(0)) return Scalar(0);
    using std::abs;
    using std::min;
    if (abs(x1 - x0) <= Scalar(0.02) * min(x0, x1)) return scale * gauss7(integrand, x0, x1);
    return scale * integrate(integrand, x0, x1, Scalar(1e-13) / scale);
  }

  // guess, when positive, seeds the Newton iteration (an area in m^2).
  Scalar area_from_pressure(Scalar p, Scalar s, Scalar guess = Scalar(0)) const;

 private:
  static void check_area(Scalar A) {
    if (!(A > 0)) throw DomainError("cross-sectional area must be positive");
  }

  TubeLaw<Scalar> law_;
  VesselGeometry<Scalar> geometry_;
  WallStiffness<Scalar> stiffness_;
  LymphProperties<Scalar> props_;
  Scalar inv_A0_;
  Scalar inv_rho_;
};

template <typename Scalar>
Scalar VesselWall<Scalar>::area_from_pressure(Scalar p, Scalar s, Scalar guess) const {
  using std::abs;
  const Scalar K = stiffness(s);
  const Scalar target = (p - geometry_.p_e) / K;
  const auto residual = [&](Scalar x) { return law_.psi(x) - target; };

  Scalar lo = Scalar(1e-6), hi = Scalar(1e3);
  int expansions = 0;
  while (residual(lo) > 0) {
    lo *= Scalar(1e-3);
    if (++expansions > 40 || lo == Scalar(0))
      throw NumericalError("area_from_pressure: pressure below the range of the tube law");
  }
  expansions = 0;
  while (residual(hi) < 0) {
    hi *= Scalar(10);
    if (++expansions > 40) throw NumericalError("area_from_pressure: pressure above the range of the tube law");
  }

  Scalar x = guess > Scalar(0) ? guess / geometry_.A0
             : (target > Scalar(0) && hi > Scalar(1)) ? Scalar(1) + target : Scalar(1);
  if (!(x > lo && x < hi)) x = Scalar(0.5) * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Scalar r = residual(x);
    if (r == Scalar(0)) return x * geometry_.A0;
    if (r > 0)
      hi = x;
    else
      lo = x;
    const Scalar slope = law_.stretch_derivative(x) / x;
    Scalar next = x - r / slope;
    if (!(next > lo && next < hi)) next = Scalar(0.5) * (lo + hi);
    if (abs(next - x) <= Scalar(1e-15) * x) return next * geometry_.A0;
    x = next;
    if (hi - lo <= Scalar(1e-15) * x) return x * geometry_.A0;
  }
  throw NumericalError("area_from_pressure: no convergence");
}

using TubeLawParamsd = TubeLawParams<double>;
using VesselGeometryd = VesselGeometry<double>;
using WallStiffnessd = WallStiffness<double>;
using LymphPropertiesd = LymphProperties<double>;
using VesselWalld = VesselWall<double>;

}  // namespace lymphax
