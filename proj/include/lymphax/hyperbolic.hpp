#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

#include "lymphax/vessel_wall.hpp"

namespace lymphax {

using Vector2d = Eigen::Vector2d;

struct Grid1D {
  int M = 20;
  double dx = 0.0;
  double length = 0.0;

  static Grid1D uniform(double length, int M);
  Eigen::ArrayXd cell_centers() const;
};

struct ConservedField {
  Eigen::ArrayXd A;
  Eigen::ArrayXd q;

  ConservedField() = default;
  ConservedField(int M, double area, double flow) : A(Eigen::ArrayXd::Constant(M, area)), q(Eigen::ArrayXd::Constant(M, flow)) {}
  int size() const { return static_cast<int>(A.size()); }
  Vector2d cell(int i) const { return {A(i), q(i)}; }
  double volume(double dx) const { return A.sum() * dx; }
};

enum class Limiter { Minmod, Superbee, None };

Limiter limiter_from_string(const std::string& name);
std::string to_string(Limiter limiter);

// Wall context frozen for one vessel over one step.
struct FluxContext {
  const VesselWalld* wall;
  double K;  // stiffness at the contraction state of the step

  FluxContext(const VesselWalld& w, double s) : wall(&w), K(w.stiffness(s)) {}
  Vector2d flux(const Vector2d& Q) const { return wall->flux_with_K(Q, K); }
  double wave_speed(double A) const { return wall->wave_speed_unchecked(A, K); }
};

Vector2d physical_flux(const Vector2d& Q, const VesselWalld& wall, double s);

Vector2d force_flux(const Vector2d& left, const Vector2d& right, double dt, double dx, const FluxContext& ctx);
Vector2d force_flux(const Vector2d& left, const Vector2d& right, double dt, double dx, const VesselWalld& wall,
                    double s);

// SLIC fluxes at the interior faces 1..M-1 of a (2 x M+1) face array; face i separates
// cells i-1 and i. Returns the number of cells that fell back to zero slope.
int muscl_hancock_step(const ConservedField& field, double dt, double dx, const FluxContext& ctx, Limiter limiter,
                       Eigen::Array2Xd& fluxes);

// q-component of the friction source, -kappa q / A, per cell.
Eigen::ArrayXd source_term(const ConservedField& field, const VesselWalld& wall);

// Flow after integrating the friction source over dt, evaluated at the half-step state.
void apply_source(ConservedField& updated, const ConservedField& old, const Eigen::Array2Xd& fluxes, double dt,
                  double dx, const VesselWalld& wall);

// Conservative update of field from face fluxes (2 x M+1) without source.
void conservative_update(ConservedField& field, const Eigen::Array2Xd& fluxes, double dt, double dx);

double max_wave_speed(const ConservedField& field, const FluxContext& ctx);

struct CflInput {
  const ConservedField* field;
  const VesselWalld* wall;
  double s;
  double dx;
};

double cfl_dt(std::span<const CflInput> vessels, double cfl = 0.9);

struct TransmissiveStep {
  double dt = 0.0;
  double outflow = 0.0;  // dt * (mass flux at x = L minus mass flux at x = 0)
  int fallbacks = 0;
};

// One SLIC step of an isolated vessel with zeroth-order extrapolation at both ends.
TransmissiveStep transmissive_step(ConservedField& field, double dx, const VesselWalld& wall, double s, double cfl,
                                   Limiter limiter, double max_dt, Eigen::Array2Xd& fluxes);

}  // namespace lymphax
