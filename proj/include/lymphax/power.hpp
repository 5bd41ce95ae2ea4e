#pragma once

#include <array>
#include <cmath>
#include <type_traits>
#include <utility>

namespace lymphax {

template <unsigned K, typename Scalar>
Scalar fixed_power(Scalar x) {
  if constexpr (K == 0) {
    return Scalar(1);
  } else if constexpr (K == 1) {
    return x;
  } else {
    const Scalar half = fixed_power<K / 2>(x);
    if constexpr (K % 2 == 0)
      return half * half;
    else
      return half * half * x;
  }
}

namespace detail {

template <typename Scalar, unsigned... K>
constexpr auto power_table(std::integer_sequence<unsigned, K...>) {
  return std::array<Scalar (*)(Scalar), sizeof...(K)>{&fixed_power<K, Scalar>...};
}

// x^0 ... x^31 by unrolled squaring
template <typename Scalar>
inline constexpr auto kPowerTable = power_table<Scalar>(std::make_integer_sequence<unsigned, 32>{});

}  // namespace detail

template <typename Scalar>
Scalar ipow(Scalar x, int k) {
  const bool negative = k < 0;
  unsigned n = negative ? -static_cast<unsigned>(k) : static_cast<unsigned>(k);
  Scalar result(1);
  if (n < detail::kPowerTable<Scalar>.size()) {
    result = detail::kPowerTable<Scalar>[n](x);
  } else {
    while (n) {
      if (n & 1u) result *= x;
      n >>= 1;
      if (n) x *= x;
    }
  }
  return negative ? Scalar(1) / result : result;
}

// Real exponent with fast paths for integer and half-integer values up to 31 in magnitude.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(double value) : value_(value) {
    const double twice = 2.0 * value;
    if (std::abs(twice) < 62.0 && twice == std::round(twice)) {
      const int whole = static_cast<int>(std::floor(value));
      half_ = value != whole;
      invert_ = whole < 0;
      magnitude_ = static_cast<unsigned>(invert_ ? -whole : whole);
      power_ = detail::kPowerTable<double>[magnitude_];
    }
  }

  double value() const { return value_; }

  template <typename Scalar>
  Scalar operator()(const Scalar& x) const {
    using std::pow;
    using std::sqrt;
    if (!power_) return pow(x, Scalar(value_));
    Scalar r;
    if constexpr (std::is_same_v<Scalar, double>)
      r = power_(x);
    else
      r = ipow(x, static_cast<int>(magnitude_));
    if (invert_) r = Scalar(1) / r;
    return half_ ? r * sqrt(x) : r;
  }

 private:
  double value_ = 0.0;
  double (*power_)(double) = nullptr;
  unsigned magnitude_ = 0;
  bool half_ = false;
  bool invert_ = false;
};

}  // namespace lymphax
