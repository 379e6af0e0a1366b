#pragma once

// Revolution coordinates (xi, beta, phi) attached to a profile parametrized
// by its Koranyi argument:
//
//   Phi(xi, beta, phi) = (e^{xi + i phi} sqrt(-Re p*(beta)), e^{2 xi} Im p*(beta)).

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "heisring/curve.hpp"
#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/profile.hpp"
#include "heisring/quadrature.hpp"

namespace heisring {

/// Integration box (log a, log b) x (pi/2, 3pi/2) x (0, 2pi).
struct Box {
  double xi_lo = 0.0;
  double xi_hi = 0.0;

  static Box ring(double a, double b) {
    if (!(a > 0.0 && a < b) || !std::isfinite(b)) throw DomainError("ring box needs 0 < a < b");
    return {std::log(a), std::log(b)};
  }
};

namespace detail {

inline void require_argument_parametrized(const ProfileCurve& c) {
  if (!c.by_argument()) throw DomainError("profile must be parametrized by its Koranyi argument");
}

inline void require_open_band(double beta) {
  if (!kArgumentBand.contains_open(beta)) {
    std::ostringstream os;
    os << "argument " << beta << " is not inside the open band (pi/2, 3pi/2)";
    throw DomainError(os.str());
  }
}

}  // namespace detail

/// p*(beta) on the closed band, using the end values at pi/2 and 3pi/2.
inline cplx pstar_closed(const ProfileCurve& c, double beta) {
  detail::require_argument_parametrized(c);
  if (kArgumentBand.contains_open(beta)) return KoranyiJet::from(c.eval(beta)).p;
  if (!c.edges()) throw DomainError("profile has no end values for p*");
  if (beta == kArgumentBand.lo) return c.edges()->lo;
  if (beta == kArgumentBand.hi) return c.edges()->hi;
  std::ostringstream os;
  os << "argument " << beta << " is outside the band [pi/2, 3pi/2]";
  throw DomainError(os.str());
}

inline HPoint phi_map(const ProfileCurve& c, const RevPoint& q) {
  const cplx p = pstar_closed(c, q.beta);
  const double ex = std::exp(q.xi);
  return {ex * std::sqrt(std::max(0.0, -p.real())) * std::polar(1.0, q.phi), ex * ex * p.imag()};
}

/// Inverse of phi_map off the vertical axis; phi is returned in [0, 2pi).
inline RevPoint phi_inv(const ProfileCurve& c, const HPoint& p) {
  detail::require_argument_parametrized(c);
  if (p.z == cplx(0.0, 0.0)) throw DomainError("revolution coordinates are undefined on the vertical axis");
  const cplx alpha = koranyi_map(p);
  const double beta = arg_in_band(alpha);
  const double r = std::abs(KoranyiJet::from(c.eval(beta)).p);
  double phi = std::arg(p.z);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {0.5 * std::log(std::abs(alpha) / r), beta, phi};
}

/// J_Phi = e^{4 xi} |p*(beta)|^2.
inline double jacobian(const ProfileCurve& c, double xi, double beta) {
  detail::require_argument_parametrized(c);
  return std::exp(4.0 * xi) * std::norm(pstar_closed(c, beta));
}

/// Contact form in revolution coordinates evaluated on a derivative triple:
/// 2 e^{2 xi} (Im p* dxi - Re p* dphi) + e^{2 xi} Im p*' dbeta.
inline double contact_rev(const ProfileCurve& c, const TildeSample& v) {
  detail::require_argument_parametrized(c);
  detail::require_open_band(v.q.beta);
  const KoranyiJet k = KoranyiJet::from(c.eval(v.q.beta));
  const double e2 = std::exp(2.0 * v.q.xi);
  return 2.0 * e2 * (k.p.imag() * v.dxi - k.p.real() * v.dphi) + e2 * k.dp.imag() * v.dbeta;
}

/// dphi that makes (dxi, dbeta, dphi) horizontal:
/// tan(beta) dxi + Im p*'(beta) / (2 Re p*(beta)) dbeta.
inline double horizontal_dphi(const ProfileCurve& c, double beta, double dxi, double dbeta) {
  detail::require_argument_parametrized(c);
  detail::require_open_band(beta);
  const KoranyiJet k = KoranyiJet::from(c.eval(beta));
  return std::tan(beta) * dxi + 0.5 * k.dp.imag() / k.p.real() * dbeta;
}

/// Largest violation of the horizontality condition over the samples.
inline double horizontality_residual(const ProfileCurve& c, const std::vector<TildeSample>& path) {
  double worst = 0.0;
  for (const TildeSample& v : path) {
    const double r = std::abs(v.dphi - horizontal_dphi(c, v.q.beta, v.dxi, v.dbeta));
    if (!std::isfinite(r)) throw DomainError("horizontality residual is not finite");
    worst = std::max(worst, r);
  }
  return worst;
}

/// |gamma_h'| = e^xi Re^{-1/2}(-p*) |p* dxi + p*' dbeta / 2| for a horizontal triple.
inline double horizontal_speed(const ProfileCurve& c, const RevPoint& q, double dxi, double dbeta) {
  detail::require_argument_parametrized(c);
  detail::require_open_band(q.beta);
  const KoranyiJet k = KoranyiJet::from(c.eval(q.beta));
  return std::exp(q.xi) / std::sqrt(-k.p.real()) * std::abs(k.p * dxi + 0.5 * k.dp * dbeta);
}

/// Ambient point and velocity of a revolution-coordinate sample (chain rule).
inline CurveSample tilde_to_ambient(const ProfileCurve& c, const TildeSample& v, double tau = 0.0) {
  detail::require_argument_parametrized(c);
  detail::require_open_band(v.q.beta);
  const KoranyiJet k = KoranyiJet::from(c.eval(v.q.beta));
  const double ex = std::exp(v.q.xi);
  const double rad = std::sqrt(-k.p.real());
  const cplx e = std::polar(1.0, v.q.phi);
  const cplx z = ex * rad * e;
  const double drad = -0.5 * k.dp.real() / rad;
  const cplx dz = z * cplx(v.dxi, v.dphi) + ex * e * drad * v.dbeta;
  const double t = ex * ex * k.p.imag();
  const double dt = 2.0 * t * v.dxi + ex * ex * k.dp.imag() * v.dbeta;
  return {tau, {z, t}, dz, dt};
}

/// Integral over the box of f(q) J_Phi(q). Nested adaptive quadrature: xi
/// outside, beta in the cosine-substituted variable, phi inside or by the
/// factor 2pi when f does not depend on phi. `tol` is relative.
template <class F>
QuadResult integrate_over_box(const ProfileCurve& c, F&& f, const Box& box, double tol = 1e-10,
                              bool phi_independent = false) {
  detail::require_argument_parametrized(c);
  if (!(box.xi_lo < box.xi_hi)) throw DomainError("box needs log a < log b");
  const double inner_tol = 0.1 * tol;
  auto over_phi = [&](double xi, double beta) {
    const double J = jacobian(c, xi, beta);
    if (phi_independent) return 2.0 * kPi * f(RevPoint{xi, beta, 0.0}) * J;
    const QuadResult q =
        integrate_open([&](double phi) { return f(RevPoint{xi, beta, phi}); }, 0.0, 2.0 * kPi, inner_tol, 48, 1e-300);
    return q.value * J;
  };
  auto over_beta = [&](double xi) {
    return integrate_cosine_map([&](double beta) { return over_phi(xi, beta); }, kArgumentBand.lo,
                                kArgumentBand.hi, inner_tol, 2)
        .value;
  };
  return integrate_open(over_beta, box.xi_lo, box.xi_hi, tol, 48, 1e-300);
}

}  // namespace heisring
