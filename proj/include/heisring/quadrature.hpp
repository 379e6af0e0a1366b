#pragma once

// Numerical integration helpers shared by the geometry modules.

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heisring/errors.hpp"

namespace heisring {

// Smallest relative tolerance a double-precision error estimate can certify.
inline constexpr double kMinRelTol = 1e-15;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
};

/// Adaptive Gauss-Kronrod (7/15) integration over the open interval (a, b).
/// Nodes never touch the endpoints, so integrable endpoint singularities of
/// square-root type are fine. Throws ConvergenceError when the estimated
/// error exceeds rel_tol * max(|integral of |f||, abs_floor), or at once when
/// rel_tol is below what double precision can reach.
template <class F>
QuadResult integrate_open(F&& f, double a, double b, double rel_tol, unsigned max_depth = 48,
                          double abs_floor = 1e-300) {
  if (a == b) return {};
  if (!(rel_tol >= kMinRelTol)) {
    std::ostringstream os;
    os << "quadrature tolerance " << rel_tol << " is below the attainable " << kMinRelTol;
    throw ConvergenceError(os.str());
  }
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &err, &l1);
  if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value");
  if (err > rel_tol * std::max(l1, abs_floor)) {
    std::ostringstream os;
    os << "quadrature on (" << a << ", " << b << ") did not converge: error estimate " << err
       << " for integral " << value;
    throw ConvergenceError(os.str());
  }
  return {value, err};
}

/// Integral over (a, b) after the substitution s = (a+b)/2 - (b-a)/2 cos(theta),
/// split into `panels` equal theta-panels. The Jacobian (b-a)/2 sin(theta)
/// vanishes at both ends, which turns square-root endpoint behaviour into an
/// analytic integrand.
template <class F>
QuadResult integrate_cosine_map(F&& f, double a, double b, double rel_tol, int panels = 1) {
  if (a == b) return {};
  if (panels < 1) throw DomainError("need at least one quadrature panel");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double theta) { return f(mid - half * std::cos(theta)) * half * std::sin(theta); };
  QuadResult total;
  for (int i = 0; i < panels; ++i) {
    const double lo = std::numbers::pi * i / panels;
    const double hi = i + 1 == panels ? std::numbers::pi : std::numbers::pi * (i + 1) / panels;
    const QuadResult q = integrate_open(g, lo, hi, rel_tol);
    total.value += q.value;
    total.error += q.error;
  }
  return total;
}

/// Composite Simpson rule over uniformly spaced samples; needs an even number
/// of intervals (odd sample count >= 3).
inline double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 3 || n % 2 == 0) throw DomainError("Simpson rule needs an odd number (>= 3) of samples");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 ? odd : even) += y[i];
  return h / 3.0 * (y.front() + 4.0 * odd + 2.0 * even + y.back());
}

/// Simpson value with a Richardson error estimate against the same rule on
/// every other sample. Needs (n - 1) divisible by 4.
inline QuadResult simpson_with_error(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  const double fine = simpson(y, h);
  if ((n - 1) % 4 != 0) return {fine, 0.0};
  std::vector<double> half;
  half.reserve(n / 2 + 1);
  for (std::size_t i = 0; i < n; i += 2) half.push_back(y[i]);
  const double coarse = simpson(half, 2.0 * h);
  return {fine, std::abs(fine - coarse) / 15.0};
}

}  // namespace heisring
