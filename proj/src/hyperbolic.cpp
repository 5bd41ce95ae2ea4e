#include "lymphax/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lymphax {

Grid1D Grid1D::uniform(double length, int M) {
  if (M < 3) throw DomainError("grid requires at least 3 cells");
  if (!(length > 0)) throw DomainError("grid requires a positive length");
  return {M, length / M, length};
}

Eigen::ArrayXd Grid1D::cell_centers() const {
  return (Eigen::ArrayXd::LinSpaced(M, 0.0, M - 1.0) + 0.5) * dx;
}

Limiter limiter_from_string(const std::string& name) {
  if (name == "minmod") return Limiter::Minmod;
  if (name == "superbee") return Limiter::Superbee;
  if (name == "none") return Limiter::None;
  throw DomainError("unknown limiter '" + name + "'");
}

std::string to_string(Limiter limiter) {
  switch (limiter) {
    case Limiter::Minmod:
      return "minmod";
    case Limiter::Superbee:
      return "superbee";
    case Limiter::None:
      return "none";
  }
  return "minmod";
}

Vector2d physical_flux(const Vector2d& Q, const VesselWalld& wall, double s) { return wall.flux(Q, s); }

Vector2d force_flux(const Vector2d& left, const Vector2d& right, double dt, double dx, const FluxContext& ctx) {
  const Vector2d FL = ctx.flux(left);
  const Vector2d FR = ctx.flux(right);
  const Vector2d lax_friedrichs = 0.5 * (FL + FR) - 0.5 * (dx / dt) * (right - left);
  const Vector2d richtmyer_state = 0.5 * (left + right) - 0.5 * (dt / dx) * (FR - FL);
  if (!(richtmyer_state(0) > 0)) return lax_friedrichs;
  return 0.5 * (lax_friedrichs + ctx.flux(richtmyer_state));
}

Vector2d force_flux(const Vector2d& left, const Vector2d& right, double dt, double dx, const VesselWalld& wall,
                    double s) {
  return force_flux(left, right, dt, dx, FluxContext(wall, s));
}

namespace {

double limit(double a, double b, Limiter limiter) {
  if (limiter == Limiter::None || a * b <= 0.0) return 0.0;
  const double sign = a > 0.0 ? 1.0 : -1.0;
  const double fa = std::abs(a), fb = std::abs(b);
  if (limiter == Limiter::Minmod) return sign * std::min(fa, fb);
  return sign * std::max(std::min(2.0 * fa, fb), std::min(fa, 2.0 * fb));
}

}  // namespace

int muscl_hancock_step(const ConservedField& field, double dt, double dx, const FluxContext& ctx, Limiter limiter,
                       Eigen::Array2Xd& fluxes) {
  const int M = field.size();
  if (fluxes.cols() != M + 1) fluxes.resize(2, M + 1);
  const double half = 0.5 * dt / dx;
  int fallbacks = 0;
  Vector2d previous_right;

  for (int i = 0; i < M; ++i) {
    const Vector2d Q = field.cell(i);
    const Vector2d Qm = field.cell(std::max(i - 1, 0));
    const Vector2d Qp = field.cell(std::min(i + 1, M - 1));
    Vector2d slope(limit(Q(0) - Qm(0), Qp(0) - Q(0), limiter), limit(Q(1) - Qm(1), Qp(1) - Q(1), limiter));

    Vector2d QL = Q - 0.5 * slope;
    Vector2d QR = Q + 0.5 * slope;
    bool positive = QL(0) > 0.0 && QR(0) > 0.0;
    if (positive) {
      const Vector2d change = half * (ctx.flux(QL) - ctx.flux(QR));
      QL += change;
      QR += change;
      positive = QL(0) > 0.0 && QR(0) > 0.0;
    }
    if (!positive) {
      ++fallbacks;
      QL = Q;
      QR = Q;
    }
    if (i > 0) fluxes.col(i) = force_flux(previous_right, QL, dt, dx, ctx);
    previous_right = QR;
  }
  return fallbacks;
}

Eigen::ArrayXd source_term(const ConservedField& field, const VesselWalld& wall) {
  return -wall.friction() * field.q / field.A;
}

void apply_source(ConservedField& updated, const ConservedField& old, const Eigen::Array2Xd& fluxes, double dt,
                  double dx, const VesselWalld& wall) {
  const double kappa = wall.friction();
  if (kappa == 0.0) return;
  const int M = old.size();
  const double ratio = 0.5 * dt / dx;
  for (int i = 0; i < M; ++i) {
    double A_half = old.A(i) - ratio * (fluxes(0, i + 1) - fluxes(0, i));
    const double q_half =
        old.q(i) - ratio * (fluxes(1, i + 1) - fluxes(1, i)) - 0.5 * dt * kappa * old.q(i) / old.A(i);
    if (!(A_half > 0.0)) A_half = old.A(i);
    updated.q(i) -= dt * kappa * q_half / A_half;
  }
}

void conservative_update(ConservedField& field, const Eigen::Array2Xd& fluxes, double dt, double dx) {
  const int M = field.size();
  const double ratio = dt / dx;
  field.A -= ratio * (fluxes.row(0).segment(1, M) - fluxes.row(0).segment(0, M)).transpose();
  field.q -= ratio * (fluxes.row(1).segment(1, M) - fluxes.row(1).segment(0, M)).transpose();
}

double max_wave_speed(const ConservedField& field, const FluxContext& ctx) {
  double speed = 0.0;
  for (int i = 0; i < field.size(); ++i)
    speed = std::max(speed, std::abs(field.q(i) / field.A(i)) + ctx.wave_speed(field.A(i)));
  return speed;
}

double cfl_dt(std::span<const CflInput> vessels, double cfl) {
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& v : vessels) {
    const double speed = max_wave_speed(*v.field, FluxContext(*v.wall, v.s));
    dt = std::min(dt, v.dx / speed);
  }
  return cfl * dt;
}

TransmissiveStep transmissive_step(ConservedField& field, double dx, const VesselWalld& wall, double s, double cfl,
                                   Limiter limiter, double max_dt, Eigen::Array2Xd& fluxes) {
  const FluxContext ctx(wall, s);
  TransmissiveStep step;
  step.dt = std::min(cfl * dx / max_wave_speed(field, ctx), max_dt);
  const int M = field.size();
  step.fallbacks = muscl_hancock_step(field, step.dt, dx, ctx, limiter, fluxes);
  fluxes.col(0) = ctx.flux(field.cell(0));
  fluxes.col(M) = ctx.flux(field.cell(M - 1));
  step.outflow = step.dt * (fluxes(0, M) - fluxes(0, 0));
  const ConservedField old = field;
  conservative_update(field, fluxes, step.dt, dx);
  apply_source(field, old, fluxes, step.dt, dx, wall);
  if (!(field.A > 0.0).all()) throw NumericalError("transmissive step produced a non-positive area");
  return step;
}

}  // namespace lymphax
