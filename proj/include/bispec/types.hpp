#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace bispec {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline constexpr double kEps = 1e-10;   // zero / degree tests
inline constexpr double kDelta = 1e-6;  // root matching, base matching, orbit dedup
inline constexpr Complex kI{0.0, 1.0};

struct Tol {
  double eps = kEps;
  double delta = kDelta;
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool approxZero(Complex v, double tol = kEps) { return std::abs(v) <= tol; }

inline bool approxEq(Complex a, Complex b, double tol = kEps) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Nonzero complex number with a chosen argument.  Powers z^u and logs follow
// the stored branch rather than the principal one, so bases like -1 can carry
// arg = pi or arg = -pi and give different quasi-exponentials.
struct BranchedBase {
  Complex value{1.0, 0.0};
  double arg = 0.0;

  BranchedBase() = default;

  explicit BranchedBase(Complex v) : value(v), arg(std::arg(v)) {
    if (std::abs(v) == 0.0) throw Error("BranchedBase: zero base");
  }

  BranchedBase(Complex v, double a) : value(v), arg(a) {
    if (std::abs(v) == 0.0) throw Error("BranchedBase: zero base");
    const Complex rebuilt = std::abs(v) * std::exp(Complex(0.0, a));
    if (std::abs(rebuilt - v) > 1e-8 * std::abs(v))
      throw Error("BranchedBase: argument does not reproduce the value");
  }

  Complex log() const { return {std::log(std::abs(value)), arg}; }
  Complex pow(Complex u) const { return std::exp(u * log()); }

  BranchedBase operator*(const BranchedBase& o) const {
    return {value * o.value, arg + o.arg};
  }
  BranchedBase inverse() const { return {1.0 / value, -arg}; }
};

inline bool sameBase(const BranchedBase& a, const BranchedBase& b, double tol = kDelta) {
  return std::abs(a.value - b.value) <= tol * std::max(1.0, std::abs(a.value)) &&
         std::abs(a.arg - b.arg) <= 1e-6;
}

}  // namespace bispec
