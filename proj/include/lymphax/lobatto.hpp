#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "lymphax/errors.hpp"

namespace lymphax {

struct LobattoOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
  int max_halvings = 4;
};

namespace detail {

template <int N, typename Rhs>
Eigen::Matrix<double, N, N> numeric_jacobian(Rhs& f, const Eigen::Matrix<double, N, 1>& y) {
  Eigen::Matrix<double, N, N> J;
  const Eigen::Matrix<double, N, 1> f0 = f(y);
  for (int j = 0; j < N; ++j) {
    Eigen::Matrix<double, N, 1> yp = y;
    const double h = 1e-7 * std::max(1.0, std::abs(y(j)));
    yp(j) += h;
    J.col(j) = (f(yp) - f0) / h;
  }
  return J;
}

template <int N, typename Rhs, typename Jac>
bool lobatto_attempt(Rhs& f, Jac& jac, const Eigen::Matrix<double, N, 1>& y, double h,
                     const Eigen::Matrix<double, N, 1>& scale, const LobattoOptions& opt,
                     Eigen::Matrix<double, N, 1>& out) {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;
  using Big = Eigen::Matrix<double, 2 * N, 2 * N>;
  using BigVec = Eigen::Matrix<double, 2 * N, 1>;
  constexpr double a[2][2] = {{0.5, -0.5}, {0.5, 0.5}};

  const auto factor = [&](const Mat& J1, const Mat& J2) {
    Big M;
    M.template block<N, N>(0, 0) = Mat::Identity() - h * a[0][0] * J1;
    M.template block<N, N>(0, N) = -h * a[0][1] * J2;
    M.template block<N, N>(N, 0) = -h * a[1][0] * J1;
    M.template block<N, N>(N, N) = Mat::Identity() - h * a[1][1] * J2;
    return Eigen::PartialPivLU<Big>(M);
  };

  // Newton with the Jacobian frozen at y; it is refreshed at the current stages
  // whenever the iteration stops contracting quickly. With one Jacobian for both
  // stages the block system reduces to (I - hJ + (hJ)^2 / 2) d2 = r2 + (hJ/2)(r1 - r2).
  const Mat half_hJ = 0.5 * h * jac(y);
  const Eigen::PartialPivLU<Mat> reduced(Mat::Identity() - 2.0 * half_hJ + 2.0 * half_hJ * half_hJ);
  Eigen::PartialPivLU<Big> lu;
  bool refreshed = false;
  const auto solve = [&](const BigVec& r) {
    if (refreshed) return BigVec(lu.solve(r));
    const Vec r1 = r.template head<N>(), r2 = r.template tail<N>();
    const Vec d2 = reduced.solve(r2 + half_hJ * (r1 - r2));
    BigVec d;
    d.template head<N>() = r1 - r2 + d2 - 2.0 * half_hJ * d2;
    d.template tail<N>() = d2;
    return d;
  };
  Vec f1 = f(y);
  Vec Y1 = y, Y2 = y + h * f1;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (it > 0) f1 = f(Y1);
    const Vec f2 = f(Y2);
    BigVec G;
    G.template head<N>() = Y1 - y - h * (a[0][0] * f1 + a[0][1] * f2);
    G.template tail<N>() = Y2 - y - h * (a[1][0] * f1 + a[1][1] * f2);
    if (!G.allFinite()) return false;

    const BigVec delta = solve(-G);
    if (!delta.allFinite()) return false;
    Y1 += delta.template head<N>();
    Y2 += delta.template tail<N>();

    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
      worst = std::max(worst, std::abs(delta(i)) / (scale(i) + std::abs(Y1(i))));
      worst = std::max(worst, std::abs(delta(N + i)) / (scale(i) + std::abs(Y2(i))));
    }
    if (worst <= opt.tolerance) {
      out = Y2;
      return true;
    }
    if (worst > 0.1 * previous) {
      lu = factor(jac(Y1), jac(Y2));
      refreshed = true;
    }
    previous = worst;
  }
  return false;
}

template <int N, typename Rhs, typename Jac>
Eigen::Matrix<double, N, 1> lobatto_recursive(Rhs& f, Jac& jac, const Eigen::Matrix<double, N, 1>& y, double h,
                                              const Eigen::Matrix<double, N, 1>& scale, const LobattoOptions& opt,
                                              int halvings_left) {
  Eigen::Matrix<double, N, 1> out;
  if (lobatto_attempt<N>(f, jac, y, h, scale, opt, out)) return out;
  if (halvings_left == 0) throw NumericalError("Lobatto IIIC stage iteration failed to converge");
  const auto mid = lobatto_recursive<N>(f, jac, y, 0.5 * h, scale, opt, halvings_left - 1);
  return lobatto_recursive<N>(f, jac, mid, 0.5 * h, scale, opt, halvings_left - 1);
}

}  // namespace detail

// Two-stage Lobatto IIIC step for the autonomous system y' = f(y). scale sets the
// absolute floor of the relative Newton convergence test per component.
template <int N, typename Rhs, typename Jac>
Eigen::Matrix<double, N, 1> lobatto_iiic_step(Rhs&& f, Jac&& jac, const Eigen::Matrix<double, N, 1>& y, double dt,
                                              const Eigen::Matrix<double, N, 1>& scale,
                                              const LobattoOptions& opt = {}) {
  return detail::lobatto_recursive<N>(f, jac, y, dt, scale, opt, opt.max_halvings);
}

template <int N, typename Rhs>
Eigen::Matrix<double, N, 1> lobatto_iiic_step(Rhs&& f, const Eigen::Matrix<double, N, 1>& y, double dt,
                                              const Eigen::Matrix<double, N, 1>& scale,
                                              const LobattoOptions& opt = {}) {
  auto jac = [&f](const Eigen::Matrix<double, N, 1>& x) { return detail::numeric_jacobian<N>(f, x); };
  return detail::lobatto_recursive<N>(f, jac, y, dt, scale, opt, opt.max_halvings);
}

}  // namespace lymphax
