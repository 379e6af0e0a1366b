#pragma once

// The modulus of boundary-connecting horizontal curves in a revolution ring:
// closed form, quadrature in revolution coordinates, an ambient Monte Carlo
// cross-check, admissibility of densities over curve families, a
// restricted-density optimizer, and the quasiradial angle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "heisring/curve.hpp"
#include "heisring/curves.hpp"
#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/revcoords.hpp"
#include "heisring/ring.hpp"
#include "heisring/surface.hpp"

namespace heisring {

/// pi^2 (log(b/a))^{-3}.
inline double analytic_modulus(double a, double b) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) throw DomainError("modulus needs 0 < a < b");
  const double L = std::log(b / a);
  return kPi * kPi / (L * L * L);
}

struct ModulusResult {
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_err = 0.0;
  double quad_error = 0.0;  ///< quadrature error estimate of `numeric`
};

/// Integral of rho_0^4 over the ring, computed in revolution coordinates: rho_0
/// is evaluated at the ambient point Phi(q) and weighted by J_Phi.
inline ModulusResult numeric_modulus(const RevolutionRing& ring, double tol = 1e-10) {
  const ProfileCurve& c = ring.profile();
  auto rho4 = [&](const RevPoint& q) {
    const double r = rho0(ring, phi_map(c, q));
    const double r2 = r * r;
    return r2 * r2;
  };
  const QuadResult q = integrate_over_box(c, rho4, ring.box(), tol, true);
  ModulusResult m;
  m.analytic = analytic_modulus(ring.a(), ring.b());
  m.numeric = q.value;
  m.quad_error = q.error;
  m.rel_err = std::abs(m.numeric - m.analytic) / m.analytic;
  return m;
}

struct MonteCarloResult {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;  ///< samples inside the closed ring
};

/// Integral of rho^4 over an axis-aligned box containing the ring, by uniform
/// sampling from the counter-based generator.
template <class Density>
MonteCarloResult monte_carlo_rho4(const RevolutionRing& ring, Density&& rho, std::size_t n, std::uint64_t seed) {
  // Bounding box of D_b(S): |z| <= b max f, |t| <= b^2 max |g| over the band.
  double fmax = 0.0, gmax = 0.0;
  for (int i = 0; i <= 2048; ++i) {
    const double beta = kArgumentBand.lo + kPi * i / 2048;
    const cplx p = pstar_closed(ring.profile(), beta);
    fmax = std::max(fmax, std::sqrt(std::max(0.0, -p.real())));
    gmax = std::max(gmax, std::abs(p.imag()));
  }
  const double X = 1.05 * ring.b() * fmax, T = 1.05 * ring.b() * ring.b() * gmax;
  const double volume = (2 * X) * (2 * X) * (2 * T);
  double sum = 0.0, sum2 = 0.0;
  MonteCarloResult out;
  out.samples = n;
  for (std::size_t i = 0; i < n; ++i) {
    const HPoint p{{uniform(seed, 11, i, -X, X), uniform(seed, 12, i, -X, X)}, uniform(seed, 13, i, -T, T)};
    const double r = rho(p);
    if (r > 0.0) ++out.hits;
    const double v = r * r * r * r;
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  out.value = volume * mean;
  out.std_error = volume * std::sqrt(var / (n - 1));
  return out;
}

inline MonteCarloResult monte_carlo_modulus(const RevolutionRing& ring, std::size_t n = 1000000,
                                            std::uint64_t seed = 0) {
  return monte_carlo_rho4(ring, [&](const HPoint& p) { return rho0(ring, p); }, n, seed);
}

// --- admissibility -----------------------------------------------------------------

struct AdmissibilityReport {
  std::size_t n = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double slack = 1e-3;
  std::size_t below = 0;  ///< curves with integral < 1 - slack
  std::size_t argmin = 0;
  /// Counts in equal bins spanning [hist_lo, hist_hi].
  std::vector<std::size_t> histogram;
  double hist_lo = 0.0, hist_hi = 0.0;

  bool pass() const { return n > 0 && min >= 1.0 - slack; }
};

/// Line integrals of rho over every curve, reduced in curve order.
template <class Density>
AdmissibilityReport admissibility_report(const std::vector<HorizontalCurve>& family, Density&& rho,
                                         double slack = 1e-3, int bins = 16) {
  AdmissibilityReport r;
  r.slack = slack;
  r.n = family.size();
  if (family.empty()) return r;
  std::vector<double> v(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) v[i] = line_integral(rho, family[i]).value;
  r.argmin = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  r.min = v[r.argmin];
  r.max = *std::max_element(v.begin(), v.end());
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  r.below = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [&](double x) { return x < 1.0 - slack; }));
  r.hist_lo = r.min;
  r.hist_hi = r.max;
  r.histogram.assign(bins, 0);
  const double w = (r.max - r.min) / bins;
  for (double x : v) {
    int k = w > 0.0 ? static_cast<int>((x - r.min) / w) : 0;
    r.histogram[std::clamp(k, 0, bins - 1)]++;
  }
  return r;
}

// --- restricted density oracle --------------------------------------------------

struct OracleResult {
  double value = 0.0;
  std::vector<double> h;
  double max_dev_from_uniform = 0.0;  ///< max |h_i log(b/a) - 1|
  int iterations = 0;
  double projected_gradient = 0.0;
};

namespace detail {

/// Euclidean projection onto {h >= 0, sum h = total}.
inline std::vector<double> project_scaled_simplex(const std::vector<double>& y, double total) {
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - total) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::max(0.0, y[i] - theta);
  return x;
}

}  // namespace detail

/// Minimizes pi^2 sum h_i^4 dxi subject to sum h_i dxi = 1, h >= 0, over
/// radial profiles h piecewise constant on n_bins cells of (log a, log b).
/// Projected gradient with backtracking from a random positive start; stops
/// when the projected-gradient norm falls below 1e-12.
inline OracleResult restricted_oracle(double a, double b, int n_bins, std::uint64_t seed = 0,
                                      int max_iter = 200000) {
  if (n_bins < 2) throw DomainError("restricted oracle needs at least 2 bins");
  const double L = std::log(b / a);
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("restricted oracle needs 0 < a < b");
  const double dxi = L / n_bins;
  const double total = 1.0 / dxi;  // sum h_i
  const double c = kPi * kPi * dxi;

  auto objective = [&](const std::vector<double>& h) {
    double s = 0.0;
    for (double v : h) s += v * v * v * v;
    return c * s;
  };
  auto gradient = [&](const std::vector<double>& h) {
    std::vector<double> g(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) g[i] = 4.0 * c * h[i] * h[i] * h[i];
    return g;
  };

  std::vector<double> h(n_bins);
  for (int i = 0; i < n_bins; ++i) h[i] = uniform(seed, 21, i, 0.2, 1.8);
  const double s0 = std::accumulate(h.begin(), h.end(), 0.0);
  for (double& v : h) v *= total / s0;

  OracleResult out;
  double step = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const std::vector<double> g = gradient(h);
    // Projected-gradient norm with unit step, the stationarity measure.
    std::vector<double> trial(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) trial[i] = h[i] - g[i];
    const std::vector<double> p1 = detail::project_scaled_simplex(trial, total);
    double pg = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) pg += (p1[i] - h[i]) * (p1[i] - h[i]);
    pg = std::sqrt(pg);
    out.iterations = it;
    out.projected_gradient = pg;
    if (pg <= 1e-12) break;

    double lambda = 0.0;
    int free = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] > 0.0) {
        lambda += g[i];
        ++free;
      }
    lambda /= std::max(free, 1);

    // Armijo backtracking along the projection arc.
    step = std::min(step * 2.0, 1e12);
    std::vector<double> next;
    while (true) {
      for (std::size_t i = 0; i < h.size(); ++i) trial[i] = h[i] - step * g[i];
      next = detail::project_scaled_simplex(trial, total);
      // Change of the Lagrangian f - lambda (sum h - total), summed termwise:
      // the test stays meaningful below the rounding level of f, and the
      // multiplier cancels the rounding drift of the projection off the
      // constraint.
      double change = 0.0, decrease = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const double u = next[i], v = h[i];
        change += c * (u - v) * (u + v) * (u * u + v * v) - lambda * (u - v);
        decrease += (g[i] - lambda) * (v - u);
      }
      if (change <= -1e-4 * decrease || step < 1e-300) break;
      step *= 0.5;
    }
    if (next == h) break;
    h = std::move(next);
    if (it + 1 == max_iter) throw ConvergenceError("restricted oracle did not converge");
  }
  if (out.projected_gradient > 1e-12) {
    std::ostringstream os;
    os << "restricted oracle stalled with projected gradient " << out.projected_gradient;
    throw ConvergenceError(os.str());
  }
  out.value = objective(h);
  for (double v : h) out.max_dev_from_uniform = std::max(out.max_dev_from_uniform, std::abs(v * L - 1.0));
  out.h = std::move(h);
  return out;
}

inline OracleResult restricted_oracle(const RevolutionRing& ring, int n_bins, std::uint64_t seed = 0) {
  return restricted_oracle(ring.a(), ring.b(), n_bins, seed);
}

// --- quasiradial angle --------------------------------------------------------------

struct AngleResult {
  double inner = 0.0;   ///< arg of the horizontal velocity relative to N^h
  double closed = 0.0;  ///< pi/2 - arg p*'(beta) + beta, reduced to (-pi, pi]
  double cos_theta = 0.0;
  double sin_shift = 0.0;  ///< sin(arg p*'(beta) - beta)
};

inline double wrap_angle(double x) { return std::remainder(x, 2.0 * kPi); }

/// Angle at Phi(q) between the quasiradial through q and the horizontal normal
/// of the leaf D_{e^xi}(S), computed from the vectors and from the closed form.
inline AngleResult quasiradial_angle(const RevolutionRing& ring, const RevPoint& q) {
  if (!kArgumentBand.contains_open(q.beta)) throw DomainError("quasiradial angle needs beta inside the open band");
  const ProfileCurve& c = ring.profile();
  const CurveSample v = tilde_to_ambient(c, {q, 1.0, 0.0, std::tan(q.beta)});
  const SurfacePatch leaf(c, std::exp(q.xi));
  const cplx n = horizontal_normal(leaf, q.beta, q.phi).as_complex();
  const KoranyiJet k = KoranyiJet::from(c.eval(q.beta));
  AngleResult r;
  r.inner = std::arg(v.dz * std::conj(n));
  r.closed = wrap_angle(kPi / 2 - std::arg(k.dp) + q.beta);
  r.cos_theta = std::real(v.dz * std::conj(n)) / (std::abs(v.dz) * std::abs(n));
  r.sin_shift = std::sin(std::arg(k.dp) - q.beta);
  return r;
}

}  // namespace heisring
