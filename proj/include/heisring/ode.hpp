#pragma once

// Dense-output Dormand-Prince integration on a caller-supplied time grid.

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "heisring/errors.hpp"

namespace heisring {

/// Integrates y' = rhs(y, t) from times.front() and returns y at every entry
/// of `times` (monotone, either direction). rhs has signature
/// void(const std::array<double,N>& y, std::array<double,N>& dy, double t).
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_dense(Rhs&& rhs, std::array<double, N> y0,
                                                   const std::vector<double>& times, double rel_tol = 1e-10,
                                                   double abs_tol = 1e-12) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, N>;
  std::vector<State> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  if (times.size() == 1 || times.front() == times.back()) {
    out.assign(times.size(), y0);
    return out;
  }
  const double dt = (times[1] - times[0]);
  auto stepper = odeint::make_dense_output(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());
  auto system = [&](const State& y, State& dy, double t) {
    rhs(y, dy, t);
    for (double v : dy)
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "ODE right-hand side is not finite at t = " << t;
        throw DomainError(os.str());
      }
  };
  odeint::integrate_times(stepper, system, y0, times.begin(), times.end(), dt,
                          [&](const State& y, double) { out.push_back(y); });
  if (out.size() != times.size()) throw ConvergenceError("ODE integration stopped early");
  return out;
}

}  // namespace heisring
