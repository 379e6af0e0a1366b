#pragma once

// Sampled horizontal curves: ambient samples with velocities, optional samples
// in revolution coordinates, horizontal length and line integrals.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/quadrature.hpp"

namespace heisring {

/// Revolution coordinates: log-radius xi, Koranyi argument beta, rotation phi.
struct RevPoint {
  double xi = 0.0;
  double beta = 0.0;
  double phi = 0.0;
};

/// Curve point with velocity (dz/dtau, dt/dtau).
struct CurveSample {
  double tau = 0.0;
  HPoint p;
  cplx dz{};
  double dt = 0.0;

  /// Horizontal speed |gamma_h'|.
  double speed() const { return std::abs(dz); }
  /// omega(gamma') = t' + 2 Im(conj(z) z').
  double contact() const { return dt + 2.0 * std::imag(std::conj(p.z) * dz); }
  /// |omega(gamma')| / max(1, |gamma_h'|).
  double residual() const { return std::abs(contact()) / std::max(1.0, speed()); }
};

/// Revolution-coordinate point with its derivative triple.
struct TildeSample {
  RevPoint q;
  double dxi = 0.0;
  double dbeta = 0.0;
  double dphi = 0.0;
};

/// A curve stored as samples on a uniform parameter grid with an odd number
/// of points, so composite Simpson applies.
class HorizontalCurve {
 public:
  HorizontalCurve(std::vector<CurveSample> samples, double tolerance, std::vector<TildeSample> tilde = {})
      : samples_(std::move(samples)), tilde_(std::move(tilde)), tolerance_(tolerance) {
    const std::size_t n = samples_.size();
    if (n < 3 || n % 2 == 0) throw DomainError("a sampled curve needs an odd number (>= 3) of samples");
    if (!tilde_.empty() && tilde_.size() != n) throw DomainError("tilde samples do not match ambient samples");
    const double h = step();
    const double slack = 1e-9 * std::max(1.0, std::abs(t1() - t0()));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(samples_[i].tau - (t0() + static_cast<double>(i) * h)) > slack)
        throw DomainError("curve samples are not uniformly spaced");
      residual_ = std::max(residual_, samples_[i].residual());
    }
  }

  /// Samples tau -> sample(tau) at `intervals` + 1 uniform parameters.
  template <class F>
  static HorizontalCurve sample(F&& fn, double t0, double t1, int intervals, double tolerance) {
    if (intervals < 2 || intervals % 2) throw DomainError("curve resolution must be an even number >= 2");
    std::vector<CurveSample> s(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
      const double tau = i == intervals ? t1 : t0 + (t1 - t0) * i / intervals;
      s[i] = fn(tau);
      s[i].tau = tau;
    }
    return HorizontalCurve(std::move(s), tolerance);
  }

  double t0() const { return samples_.front().tau; }
  double t1() const { return samples_.back().tau; }
  double step() const { return (t1() - t0()) / static_cast<double>(samples_.size() - 1); }
  std::size_t size() const { return samples_.size(); }
  const std::vector<CurveSample>& samples() const { return samples_; }
  bool has_tilde() const { return !tilde_.empty(); }
  const std::vector<TildeSample>& tilde() const { return tilde_; }
  const HPoint& front() const { return samples_.front().p; }
  const HPoint& back() const { return samples_.back().p; }

  /// max over samples of |omega(gamma')| / max(1, |gamma_h'|).
  double residual_bound() const { return residual_; }
  double tolerance() const { return tolerance_; }
  bool certified() const { return residual_ <= tolerance_; }

  /// Samples i0..i1 inclusive as a curve of their own; i1 - i0 must be even.
  HorizontalCurve subcurve(std::size_t i0, std::size_t i1) const {
    if (i1 >= size() || i0 >= i1) throw DomainError("subcurve range out of bounds");
    std::vector<CurveSample> s(samples_.begin() + i0, samples_.begin() + i1 + 1);
    std::vector<TildeSample> t;
    if (has_tilde()) t.assign(tilde_.begin() + i0, tilde_.begin() + i1 + 1);
    return HorizontalCurve(std::move(s), tolerance_, std::move(t));
  }

 private:
  std::vector<CurveSample> samples_;
  std::vector<TildeSample> tilde_;
  double tolerance_;
  double residual_ = 0.0;
};

/// Residual above which a curve is not treated as horizontal.
inline constexpr double kHorizontalityGate = 1e-6;

namespace detail {
inline void require_horizontal(const HorizontalCurve& c) {
  if (!(c.residual_bound() <= kHorizontalityGate)) {
    std::ostringstream os;
    os << "curve is not horizontal: contact residual " << c.residual_bound();
    throw DomainError(os.str());
  }
}
}  // namespace detail

/// Integral of rho(gamma) |gamma_h'| by composite Simpson, with a Richardson
/// error estimate from the half-resolution rule.
template <class Density>
QuadResult line_integral(Density&& rho, const HorizontalCurve& c) {
  detail::require_horizontal(c);
  std::vector<double> y(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const CurveSample& s = c.samples()[i];
    const double r = rho(s.p);
    if (!std::isfinite(r)) {
      std::ostringstream os;
      os << "density is not finite at curve sample " << i;
      throw DomainError(os.str());
    }
    if (r < 0.0) throw DomainError("density is negative at a curve sample");
    y[i] = r * s.speed();
  }
  QuadResult q = simpson_with_error(y, c.step());
  // Reversed parameter: the line integral is orientation independent.
  if (c.step() < 0.0) q.value = -q.value;
  return q;
}

/// Horizontal length: the line integral of the density 1.
inline double horizontal_length(const HorizontalCurve& c) {
  return line_integral([](const HPoint&) { return 1.0; }, c).value;
}

/// CSV with columns tau,x,y,t,xi,beta,phi,residual. Revolution coordinates are
/// left empty when the curve has none.
inline void write_curve_csv(std::ostream& os, const HorizontalCurve& c) {
  os << "tau,x,y,t,xi,beta,phi,residual\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const CurveSample& s = c.samples()[i];
    os << s.tau << ',' << s.p.x() << ',' << s.p.y() << ',' << s.p.t << ',';
    if (c.has_tilde()) {
      const RevPoint& q = c.tilde()[i].q;
      os << q.xi << ',' << q.beta << ',' << q.phi << ',';
    } else {
      os << ",,,";
    }
    os << s.residual() << '\n';
  }
}

}  // namespace heisring
