#pragma once

// Surfaces of revolution sigma(s, phi) = D_scale(f(s) e^{i phi}, g(s)):
// horizontal normal, horizontal area, Legendrian flow curves, horizontal
// mean curvature, and mesh export.

#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "heisring/curve.hpp"
#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/ode.hpp"
#include "heisring/profile.hpp"
#include "heisring/quadrature.hpp"

namespace heisring {

struct SurfacePatch {
  ProfileCurve profile;
  double scale = 1.0;

  SurfacePatch(ProfileCurve c, double scale_ = 1.0) : profile(std::move(c)), scale(scale_) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("surface scale must be positive");
  }

  /// Profile jet of the dilated surface: (scale f, scale^2 g).
  ProfileJet jet(double s) const {
    ProfileJet j = profile.eval(s);
    const double d = scale, d2 = scale * scale;
    return {d * j.f, d2 * j.g, d * j.df, d2 * j.dg, d * j.d2f, d2 * j.d2g};
  }
  KoranyiJet koranyi(double s) const { return KoranyiJet::from(jet(s)); }
  Interval domain() const { return profile.domain(); }
};

inline HPoint patch_eval(const SurfacePatch& S, double s, double phi) {
  const ProfileJet j = S.jet(s);
  return {j.f * std::polar(1.0, phi), j.g};
}

/// d sigma / ds.
inline TangentVector patch_ds(const SurfacePatch& S, double s, double phi) {
  const ProfileJet j = S.jet(s);
  const cplx dz = j.df * std::polar(1.0, phi);
  return {{j.f * std::polar(1.0, phi), j.g}, dz.real(), dz.imag(), j.dg};
}

/// d sigma / d phi.
inline TangentVector patch_dphi(const SurfacePatch& S, double s, double phi) {
  const ProfileJet j = S.jet(s);
  const cplx dz = cplx(0.0, j.f) * std::polar(1.0, phi);
  return {{j.f * std::polar(1.0, phi), j.g}, dz.real(), dz.imag(), 0.0};
}

/// Coefficients of the induced contact form omega_S = A ds + B dphi, with
/// A = Im p*', B = -2 Re p*.
struct InducedForm {
  double ds = 0.0;
  double dphi = 0.0;
};

inline InducedForm induced_form(const SurfacePatch& S, double s) {
  const KoranyiJet k = S.koranyi(s);
  return {k.dp.imag(), -2.0 * k.p.real()};
}

/// N^h = f (-Im(e^{i phi} p*') X + Re(e^{i phi} p*') Y), of norm f |p*'|.
inline HorVector horizontal_normal(const SurfacePatch& S, double s, double phi) {
  const ProfileJet j = S.jet(s);
  const KoranyiJet k = KoranyiJet::from(j);
  const cplx w = std::polar(1.0, phi) * k.dp;
  return {{j.f * std::polar(1.0, phi), j.g}, -j.f * w.imag(), j.f * w.real()};
}

inline HorVector unit_horizontal_normal(const SurfacePatch& S, double s, double phi) {
  HorVector n = horizontal_normal(S, s, phi);
  const double r = n.norm();
  if (!(r > 0.0)) throw DomainError("characteristic point: horizontal normal vanishes");
  n.nu1 /= r;
  n.nu2 /= r;
  return n;
}

/// Minimum of |N^h| over an ns x nphi grid of interior parameters.
inline double min_horizontal_normal(const SurfacePatch& S, int ns = 256, int nphi = 64) {
  const Interval d = S.domain();
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ns; ++i) {
    const double s = d.lo + (i + 0.5) * d.width() / ns;
    for (int j = 0; j < nphi; ++j) m = std::min(m, horizontal_normal(S, s, 2.0 * kPi * j / nphi).norm());
  }
  return m;
}

/// A^h = 2 pi * integral of f |p*'| ds. Adaptive Gauss-Kronrod in the
/// cosine-substituted variable on quad_n panels; f vanishes like a square
/// root at the poles.
inline QuadResult horizontal_area(const SurfacePatch& S, int quad_n = 8, double rel_tol = 1e-10) {
  if (quad_n < 8) throw DomainError("horizontal_area needs quad_n >= 8");
  const Interval d = S.domain();
  auto integrand = [&](double s) {
    const ProfileJet j = S.jet(s);
    return j.f * std::abs(KoranyiJet::from(j).dp);
  };
  QuadResult total = integrate_cosine_map(integrand, d.lo, d.hi, rel_tol, quad_n);
  total.value *= 2.0 * kPi;
  total.error *= 2.0 * kPi;
  return total;
}

/// d phi / ds along the Legendrian foliation: Im p*' / (2 Re p*).
inline double flow_rate(const SurfacePatch& S, double s) {
  const KoranyiJet k = S.koranyi(s);
  if (!(k.p.real() < 0.0)) {
    std::ostringstream os;
    os << "flow rate blows up at s = " << s << " (Re p* = 0)";
    throw DomainError(os.str());
  }
  return 0.5 * k.dp.imag() / k.p.real();
}

/// Leaf of the horizontal foliation through sigma(s0, phi0), sampled at
/// `intervals` + 1 uniform values of s on [span.lo, span.hi]. The curve is
/// parametrized by s, so it may run backwards when span.hi < span.lo.
inline HorizontalCurve flow_curve(const SurfacePatch& S, double s0, double phi0, Interval span,
                                  int intervals = 1024, double tolerance = 1e-8) {
  const Interval d = S.domain();
  for (double v : {s0, span.lo, span.hi})
    if (!d.contains_open(v)) throw DomainError("flow span must lie inside the open profile domain");
  if (intervals < 2 || intervals % 2) throw DomainError("curve resolution must be an even number >= 2");

  std::vector<double> grid(intervals + 1);
  for (int i = 0; i <= intervals; ++i)
    grid[i] = i == intervals ? span.hi : span.lo + (span.hi - span.lo) * i / intervals;

  auto rhs = [&](const std::array<double, 1>&, std::array<double, 1>& dy, double s) { dy[0] = flow_rate(S, s); };
  // phi at span.lo from the seed point, then the whole grid.
  std::array<double, 1> start{phi0};
  if (s0 != span.lo) start = integrate_dense<1>(rhs, {phi0}, std::vector<double>{s0, span.lo}).back();
  const auto phis = integrate_dense<1>(rhs, start, grid);

  std::vector<CurveSample> samples(grid.size());
  std::vector<TildeSample> tilde(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i], phi = phis[i][0];
    const ProfileJet j = S.jet(s);
    const KoranyiJet k = KoranyiJet::from(j);
    const double dphi = 0.5 * k.dp.imag() / k.p.real();
    const cplx e = std::polar(1.0, phi);
    samples[i] = {s, {j.f * e, j.g}, cplx(j.df, j.f * dphi) * e, j.dg};
    tilde[i] = {{std::log(S.scale), k.beta(), phi}, 0.0, k.beta_dot(), dphi};
  }
  return HorizontalCurve(std::move(samples), tolerance, std::move(tilde));
}

namespace detail {

/// H^h = -(1/f) Im u - (1/f') Im u', u = p*'/|p*'|, directly from the jet.
inline double mean_curvature_raw(const ProfileJet& j) {
  const KoranyiJet k = KoranyiJet::from(j);
  const double m = std::abs(k.dp);
  const cplx u = k.dp / m;
  const double im_du = k.d2p.imag() / m - k.dp.imag() * std::real(std::conj(k.dp) * k.d2p) / (m * m * m);
  return -u.imag() / j.f - im_du / j.df;
}

}  // namespace detail

/// Horizontal mean curvature; independent of phi. Where f' vanishes the
/// second term is a removable 0/0 and the value is the average of one-sided
/// values at s -+ 1e-5, which must agree to 1e-3.
inline double mean_curvature(const SurfacePatch& S, double s) {
  constexpr double kStep = 1e-5;
  const ProfileJet j = S.jet(s);
  const double speed = std::hypot(j.df, j.dg);
  if (std::abs(j.df) > 1e-7 * speed) return detail::mean_curvature_raw(j);
  const double lo = detail::mean_curvature_raw(S.jet(s - kStep));
  const double hi = detail::mean_curvature_raw(S.jet(s + kStep));
  const double avg = 0.5 * (lo + hi);
  if (!std::isfinite(avg) || std::abs(hi - lo) > 1e-3 * std::max(1.0, std::abs(avg))) {
    std::ostringstream os;
    os << "horizontal mean curvature is indeterminate at s = " << s << " (one-sided values " << lo << ", " << hi
       << ")";
    throw DomainError(os.str());
  }
  return avg;
}

inline double mean_curvature(const SurfacePatch& S, double s, double /*phi*/) { return mean_curvature(S, s); }

// --- mesh export ---------------------------------------------------------------

struct MeshOptions {
  int n_s = 128;
  int n_phi = 64;
};

/// Parameter of row i of the mesh grid; rows avoid the poles.
inline double mesh_row_parameter(const SurfacePatch& S, int i, int n_s) {
  const Interval d = S.domain();
  return d.lo + (i + 1) * d.width() / (n_s + 1);
}

/// Wavefront OBJ of the (s, phi) grid: vertices "v x y t", triangles "f i j k"
/// (1-based). Closed in phi, open at the poles.
inline void write_obj(std::ostream& os, const SurfacePatch& S, const MeshOptions& opt = {}) {
  if (opt.n_s < 2 || opt.n_phi < 3) throw DomainError("mesh needs at least 2 x 3 vertices");
  os << "# surface of revolution '" << S.profile.name() << "' scale " << S.scale << "\n";
  os << std::setprecision(17);
  for (int i = 0; i < opt.n_s; ++i) {
    const double s = mesh_row_parameter(S, i, opt.n_s);
    for (int k = 0; k < opt.n_phi; ++k) {
      const HPoint p = patch_eval(S, s, 2.0 * kPi * k / opt.n_phi);
      os << "v " << p.x() << ' ' << p.y() << ' ' << p.t << '\n';
    }
  }
  auto id = [&](int i, int k) { return i * opt.n_phi + (k % opt.n_phi) + 1; };
  for (int i = 0; i + 1 < opt.n_s; ++i) {
    for (int k = 0; k < opt.n_phi; ++k) {
      os << "f " << id(i, k) << ' ' << id(i + 1, k) << ' ' << id(i + 1, k + 1) << '\n';
      os << "f " << id(i, k) << ' ' << id(i + 1, k + 1) << ' ' << id(i, k + 1) << '\n';
    }
  }
}

/// Per-vertex sidecar: vertex,s,phi,hnormal,Hh,Hh_ok. Indeterminate H^h is
/// written as nan with Hh_ok = 0.
inline void write_mesh_csv(std::ostream& os, const SurfacePatch& S, const MeshOptions& opt = {}) {
  os << "vertex,s,phi,hnormal,Hh,Hh_ok\n" << std::setprecision(17);
  for (int i = 0; i < opt.n_s; ++i) {
    const double s = mesh_row_parameter(S, i, opt.n_s);
    double H = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    try {
      H = mean_curvature(S, s);
    } catch (const DomainError&) {
      ok = false;
    }
    for (int k = 0; k < opt.n_phi; ++k) {
      const double phi = 2.0 * kPi * k / opt.n_phi;
      os << i * opt.n_phi + k + 1 << ',' << s << ',' << phi << ',' << horizontal_normal(S, s, phi).norm() << ','
         << H << ',' << (ok ? 1 : 0) << '\n';
    }
  }
}

}  // namespace heisring
