#pragma once

// Generators of horizontal curves: quasiradials of a ring, seeded random
// boundary-connecting curves, and lifted circles sweeping CC spheres.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "heisring/curve.hpp"
#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/jet.hpp"
#include "heisring/ode.hpp"
#include "heisring/revcoords.hpp"
#include "heisring/ring.hpp"

namespace heisring {

inline constexpr int kDefaultResolution = 1024;

// --- counter-based random numbers ---------------------------------------------

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) as a pure function of (seed, stream, index).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ stream) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, stream, index);
}

// --- quasiradials ---------------------------------------------------------------

/// xi -> Phi(xi, beta, phi + tan(beta) xi) for xi in [log a, log b].
inline HorizontalCurve quasiradial(const RevolutionRing& ring, double beta, double phi,
                                   int intervals = kDefaultResolution, double tolerance = 1e-12) {
  if (!kArgumentBand.contains_open(beta)) throw DomainError("quasiradial needs beta inside the open band");
  if (intervals < 2 || intervals % 2) throw DomainError("curve resolution must be an even number >= 2");
  const ProfileCurve& c = ring.profile();
  const double lo = std::log(ring.a()), hi = std::log(ring.b());
  const double tb = std::tan(beta);
  std::vector<CurveSample> s(intervals + 1);
  std::vector<TildeSample> q(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double xi = i == intervals ? hi : lo + (hi - lo) * i / intervals;
    q[i] = {{xi, beta, phi + tb * xi}, 1.0, 0.0, tb};
    s[i] = tilde_to_ambient(c, q[i], xi);
  }
  return HorizontalCurve(std::move(s), tolerance, std::move(q));
}

/// n_beta x n_phi quasiradials on a midpoint grid of the open band and [0, 2pi).
inline std::vector<HorizontalCurve> quasiradial_grid(const RevolutionRing& ring, int n_beta, int n_phi,
                                                     int intervals = kDefaultResolution) {
  std::vector<HorizontalCurve> out;
  out.reserve(static_cast<std::size_t>(n_beta) * n_phi);
  for (int i = 0; i < n_beta; ++i) {
    const double beta = kArgumentBand.lo + (i + 0.5) * kPi / n_beta;
    for (int j = 0; j < n_phi; ++j) out.push_back(quasiradial(ring, beta, 2.0 * kPi * j / n_phi, intervals));
  }
  return out;
}

// --- random boundary-connecting curves --------------------------------------

/// Smallest distance of the random argument path from the band edges.
inline constexpr double kBandMargin = 1e-3;

namespace detail {

inline constexpr int kRandomModes = 4;

/// Smooth random curve data in revolution coordinates over tau in [0, 1].
struct RandomTilde {
  double xi_lo = 0.0, xi_hi = 0.0, xi_span = 0.0;
  // xi density d(tau) = d0 + sum a_m cos(2 pi m tau) + b_m sin(2 pi m tau) > 0.
  double d0 = 0.0;
  std::array<double, kRandomModes> a{}, b{};
  // beta = pi + (pi/2 - margin) tanh(u), u = u0 + sum c_m cos + e_m sin.
  double u0 = 0.0;
  std::array<double, kRandomModes> c{}, e{};
  double phi0 = 0.0;

  RandomTilde(const RevolutionRing& ring, std::uint64_t seed) {
    xi_lo = std::log(ring.a());
    xi_hi = std::log(ring.b());
    xi_span = xi_hi - xi_lo;
    std::uint64_t k = 0;
    double amp = 0.0;
    for (int m = 0; m < kRandomModes; ++m) {
      a[m] = uniform(seed, 1, k++, -1.0, 1.0) / (m + 1);
      b[m] = uniform(seed, 1, k++, -1.0, 1.0) / (m + 1);
      amp += std::abs(a[m]) + std::abs(b[m]);
    }
    d0 = amp * uniform(seed, 1, k++, 1.05, 3.0) + 1e-3;
    u0 = uniform(seed, 2, 0, -2.0, 2.0);
    for (int m = 0; m < kRandomModes; ++m) {
      c[m] = uniform(seed, 2, 2 * m + 1, -2.0, 2.0) / (m + 1);
      e[m] = uniform(seed, 2, 2 * m + 2, -2.0, 2.0) / (m + 1);
    }
    phi0 = uniform(seed, 3, 0, 0.0, 2.0 * kPi);
  }

  /// Cumulative density F(tau) with derivative d(tau).
  Jet cumulative(double tau) const {
    const Jet t = Jet::variable(tau);
    Jet F = d0 * t;
    for (int m = 0; m < kRandomModes; ++m) {
      const double w = 2.0 * kPi * (m + 1);
      F = F + (a[m] / w) * sin(w * t) + (b[m] / w) * (1.0 - cos(w * t));
    }
    return F;
  }

  Jet xi(double tau) const {
    // F(1) = d0: every mode integrates to zero over a period.
    Jet x = xi_lo + (xi_span / d0) * cumulative(tau);
    if (tau == 1.0) x.v = xi_hi;
    return x;
  }

  Jet beta(double tau) const {
    const Jet t = Jet::variable(tau);
    Jet u(u0);
    for (int m = 0; m < kRandomModes; ++m) {
      const double w = 2.0 * kPi * (m + 1);
      u = u + c[m] * cos(w * t) + e[m] * sin(w * t);
    }
    // tanh(u) = 1 - 2 / (exp(2u) + 1)
    const Jet th = 1.0 - 2.0 / (exp(2.0 * u) + 1.0);
    return kPi + (kPi / 2 - kBandMargin) * th;
  }
};

}  // namespace detail

/// Horizontal lift of a path tau -> (xi(tau), beta(tau)) over tau in [0, 1]:
/// phi solves the horizontality condition from phi(0) = phi0 by adaptive
/// Runge-Kutta. `xi` and `beta` return jets in tau.
template <class Xi, class Beta>
HorizontalCurve lift_path(const RevolutionRing& ring, Xi&& xi, Beta&& beta, double phi0,
                          int intervals = kDefaultResolution, double tolerance = 1e-8) {
  if (intervals < 2 || intervals % 2) throw DomainError("curve resolution must be an even number >= 2");
  const ProfileCurve& c = ring.profile();
  std::vector<double> taus(intervals + 1);
  for (int i = 0; i <= intervals; ++i) taus[i] = i == intervals ? 1.0 : static_cast<double>(i) / intervals;

  auto rhs = [&](const std::array<double, 1>&, std::array<double, 1>& dy, double tau) {
    const Jet x = xi(tau), b = beta(tau);
    dy[0] = horizontal_dphi(c, b.v, x.d1, b.d1);
  };
  const auto phis = integrate_dense<1>(rhs, {phi0}, taus);

  std::vector<CurveSample> s(taus.size());
  std::vector<TildeSample> q(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const Jet x = xi(taus[i]), b = beta(taus[i]);
    q[i] = {{x.v, b.v, phis[i][0]}, x.d1, b.d1, horizontal_dphi(c, b.v, x.d1, b.d1)};
    s[i] = tilde_to_ambient(c, q[i], taus[i]);
  }
  return HorizontalCurve(std::move(s), tolerance, std::move(q));
}

/// Seeded random horizontal curve from the inner to the outer boundary of the
/// ring. xi increases strictly from log a to log b, beta wanders smoothly in
/// [pi/2 + 1e-3, 3pi/2 - 1e-3]. Deterministic in (ring, seed).
inline HorizontalCurve random_horizontal_curve(const RevolutionRing& ring, std::uint64_t seed,
                                               int intervals = kDefaultResolution, double tolerance = 1e-8) {
  const detail::RandomTilde rt(ring, seed);
  return lift_path(
      ring, [&](double tau) { return rt.xi(tau); }, [&](double tau) { return rt.beta(tau); }, rt.phi0, intervals,
      tolerance);
}

inline std::vector<HorizontalCurve> random_family(const RevolutionRing& ring, int count, std::uint64_t seed,
                                                  int intervals = kDefaultResolution) {
  std::vector<HorizontalCurve> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(random_horizontal_curve(ring, mix64(seed) ^ static_cast<std::uint64_t>(i), intervals));
  return out;
}

/// True when the curve starts on the inner and ends on the outer boundary,
/// within rel_tol in ring ratio.
inline bool connects_boundaries(const RevolutionRing& ring, const HorizontalCurve& g, double rel_tol = 1e-9) {
  return std::abs(ring.ratio(g.front()) - ring.a()) <= rel_tol * ring.a() &&
         std::abs(ring.ratio(g.back()) - ring.b()) <= rel_tol * ring.b();
}

// --- lifted circles ---------------------------------------------------------------

/// Lift of the circle c_k(s) = (1 - e^{iks}) / k through the origin, rotated by
/// phi, for s in [0, R]:
///   z = e^{i phi} (-i s) sinc(ks/2) e^{iks/2},  t = 2 k s^3 sinm(ks).
/// k = 0 gives the straight segment z = -i s e^{i phi}, t = 0.
inline HorizontalCurve cc_lift(double k, double R, double phi, int intervals = kDefaultResolution,
                               double tolerance = 1e-10) {
  if (!std::isfinite(k) || !(R > 0.0)) throw DomainError("cc_lift needs finite k and R > 0");
  const cplx rot = std::polar(1.0, phi);
  auto at = [&](double s) {
    const double x = k * s;
    const double sc = sinc(0.5 * x);
    CurveSample c;
    c.p.z = rot * cplx(0.0, -s) * sc * std::polar(1.0, 0.5 * x);
    c.p.t = 2.0 * k * s * s * s * sinm(x);
    c.dz = rot * cplx(0.0, -1.0) * std::polar(1.0, x);
    c.dt = -k * s * s * sc * sc;
    return c;
  };
  return HorizontalCurve::sample(at, 0.0, R, intervals, tolerance);
}

}  // namespace heisring
