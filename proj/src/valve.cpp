#include "lymphax/valve.hpp"

#include <array>

#include "lymphax/lobatto.hpp"

namespace lymphax {

namespace {

constexpr double kFlowScale = 1e-18;

ValveStated coupled_step(const ValveStated& y, double dp, const ValveParamsd& p, const LymphPropertiesd& props,
                         double dt) {
  auto rhs = [&](const ValveStated& x) { return valve_rhs(x, dp, p, props); };
  auto jac = [&](const ValveStated& x) { return valve_jacobian(x, dp, p, props); };
  return lobatto_iiic_step<2>(rhs, jac, y, dt, ValveStated(kFlowScale, 1.0));
}

}  // namespace

// With dp frozen the state equation is linear in xi and independent of q, so its two
// stages are solved directly; Newton then runs on the two flow stages alone.
ValveStated valve_step(const ValveStated& y, double dp, const ValveParamsd& p, const LymphPropertiesd& props,
                       double dt) {
  double alpha = 0.0, beta = 0.0;  // xi' = alpha + beta xi
  if (dp > p.dp_open) {
    alpha = p.K_vo * (dp - p.dp_open);
    beta = -alpha;
  } else if (dp < p.dp_close) {
    beta = p.K_vc * (dp - p.dp_close);
  }
  const double hb = 0.5 * dt * beta;
  const double det = (1.0 - hb) * (1.0 - hb) + hb * hb;
  const double r1 = y(kXi), r2 = y(kXi) + dt * alpha;
  const std::array<double, 2> X = {((1.0 - hb) * r1 - hb * r2) / det, (hb * r1 + (1.0 - hb) * r2) / det};

  std::array<ValveCoefficients<double>, 2> c;
  std::array<double, 2> inv_L;
  for (int i = 0; i < 2; ++i) {
    c[i] = coefficients_for_area(detail::valve_area_unchecked(X[i], p), p, props);
    inv_L[i] = 1.0 / c[i].L;
  }
  const auto rate = [&](int i, double q) { return (dp - c[i].R * q - c[i].B * q * std::abs(q)) * inv_L[i]; };
  const auto slope = [&](int i, double q) { return -(c[i].R + 2.0 * c[i].B * std::abs(q)) * inv_L[i]; };

  const double q = y(kQv);
  double Q1 = q, Q2 = q + dt * rate(0, q);
  const double h = 0.5 * dt;
  for (int it = 0; it < 50; ++it) {
    const double f1 = rate(0, Q1), f2 = rate(1, Q2);
    const double G1 = Q1 - q - h * (f1 - f2);
    const double G2 = Q2 - q - h * (f1 + f2);
    const double d1 = h * slope(0, Q1), d2 = h * slope(1, Q2);
    // [[1 - d1, d2], [-d1, 1 - d2]] (dQ1, dQ2) = -(G1, G2)
    const double m = (1.0 - d1) * (1.0 - d2) + d1 * d2;
    const double dQ1 = (-(1.0 - d2) * G1 + d2 * G2) / m;
    const double dQ2 = (-(1.0 - d1) * G2 - d1 * G1) / m;
    if (!std::isfinite(dQ1) || !std::isfinite(dQ2)) break;
    Q1 += dQ1;
    Q2 += dQ2;
    const double worst =
        std::max(std::abs(dQ1) / (kFlowScale + std::abs(Q1)), std::abs(dQ2) / (kFlowScale + std::abs(Q2)));
    if (worst <= LobattoOptions{}.tolerance) return ValveStated(Q2, std::clamp(X[1], 0.0, 1.0));
  }

  ValveStated next = coupled_step(y, dp, p, props, dt);
  next(kXi) = std::clamp(next(kXi), 0.0, 1.0);
  return next;
}

}  // namespace lymphax
