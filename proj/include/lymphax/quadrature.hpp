#pragma once

#include <array>
#include <cmath>

namespace lymphax {

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar, typename F>
Scalar kronrod15(F& f, Scalar a, Scalar b, Scalar& error) {
  const Scalar centre = Scalar(0.5) * (a + b);
  const Scalar half = Scalar(0.5) * (b - a);
  const Scalar fc = f(centre);
  Scalar kronrod = fc * kKronrodWeights[7];
  Scalar gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * kKronrodNodes[j];
    const Scalar sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  using std::abs;
  error = abs((kronrod - gauss) * half);
  return kronrod * half;
}

template <typename Scalar, typename F>
Scalar adaptive(F& f, Scalar a, Scalar b, Scalar tol, int depth) {
  Scalar error;
  const Scalar whole = kronrod15(f, a, b, error);
  if (error <= tol || depth <= 0) return whole;
  const Scalar mid = Scalar(0.5) * (a + b);
  return adaptive(f, a, mid, Scalar(0.5) * tol, depth - 1) +
         adaptive(f, mid, b, Scalar(0.5) * tol, depth - 1);
}

}  // namespace detail

// Seven-point Gauss-Legendre rule, for short intervals of a smooth integrand.
template <typename Scalar, typename F>
Scalar gauss7(F&& f, Scalar a, Scalar b) {
  const Scalar centre = Scalar(0.5) * (a + b);
  const Scalar half = Scalar(0.5) * (b - a);
  Scalar sum = detail::kGaussWeights[3] * f(centre);
  for (int j = 0; j < 3; ++j) {
    const Scalar dx = half * detail::kKronrodNodes[2 * j + 1];
    sum += detail::kGaussWeights[j] * (f(centre - dx) + f(centre + dx));
  }
  return sum * half;
}

// Adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b] to an absolute tolerance.
template <typename Scalar, typename F>
Scalar integrate(F&& f, Scalar a, Scalar b, Scalar tol = Scalar(1e-12), int max_depth = 30) {
  if (a == b) return Scalar(0);
  return detail::adaptive(f, a, b, tol, max_depth);
}

}  // namespace lymphax
