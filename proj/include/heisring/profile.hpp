#pragma once

// Profile curves s -> (f(s), 0, g(s)) in the xt-plane, their Koranyi images
// p*(s) = -f(s)^2 + i g(s), sampled condition checks, reparametrization by the
// argument of p*, and the built-in catalog.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/jet.hpp"

namespace heisring {

inline constexpr double kPi = std::numbers::pi;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains_open(double s) const { return s > lo && s < hi; }
};

/// The band of Koranyi arguments (pi/2, 3pi/2).
inline constexpr Interval kArgumentBand{kPi / 2, 3 * kPi / 2};

/// f, g and their first two derivatives at one parameter value.
struct ProfileJet {
  double f = 0.0, g = 0.0;
  double df = 0.0, dg = 0.0;
  double d2f = 0.0, d2g = 0.0;

  Jet f_jet() const { return {f, df, d2f}; }
  Jet g_jet() const { return {g, dg, d2g}; }
  bool finite() const {
    return std::isfinite(f) && std::isfinite(g) && std::isfinite(df) && std::isfinite(dg) &&
           std::isfinite(d2f) && std::isfinite(d2g);
  }
};

inline ProfileJet make_profile_jet(const Jet& f, const Jet& g) { return {f.v, g.v, f.d1, g.d1, f.d2, g.d2}; }

/// Argument of w taken in [pi/2, 3pi/2] for Re w <= 0.
inline double arg_in_band(cplx w) {
  const double a = std::atan2(w.imag(), w.real());
  return a < 0.0 ? a + 2.0 * kPi : a;
}

/// p*, dp*/ds and d2p*/ds2 at one parameter value.
struct KoranyiJet {
  cplx p, dp, d2p;

  static KoranyiJet from(const ProfileJet& j) {
    return {{-j.f * j.f, j.g}, {-2.0 * j.f * j.df, j.dg}, {-2.0 * (j.df * j.df + j.f * j.d2f), j.d2g}};
  }

  double r() const { return std::abs(p); }
  double beta() const { return arg_in_band(p); }
  /// d(arg p*)/ds = Im(conj(p*) p*') / |p*|^2.
  double beta_dot() const { return std::imag(std::conj(p) * dp) / std::norm(p); }
  /// d|p*|/ds.
  double r_dot() const { return std::real(std::conj(p) * dp) / std::abs(p); }
};

/// Continuous extension of p* to the two ends of the parameter interval.
struct EdgeValues {
  cplx lo;
  cplx hi;
};

/// An immutable C^2 profile curve on an open parameter interval.
class ProfileCurve {
 public:
  using Evaluator = std::function<ProfileJet(double)>;
  using Params = std::map<std::string, double>;

  ProfileCurve(std::string name, Interval domain, Evaluator eval, Params params = {})
      : name_(std::move(name)), domain_(domain), eval_(std::move(eval)), params_(std::move(params)) {
    if (!(domain_.lo < domain_.hi)) throw DomainError("profile domain is empty");
  }

  const std::string& name() const { return name_; }
  Interval domain() const { return domain_; }
  const Params& params() const { return params_; }

  /// Evaluates at an interior parameter; throws DomainError outside the open
  /// interval or when the result is not finite.
  ProfileJet eval(double s) const {
    if (!domain_.contains_open(s)) {
      std::ostringstream os;
      os << "parameter " << s << " outside open domain (" << domain_.lo << ", " << domain_.hi << ")";
      throw DomainError(os.str());
    }
    ProfileJet j = eval_(s);
    if (!j.finite()) {
      std::ostringstream os;
      os << "profile '" << name_ << "' is not finite at s = " << s;
      throw DomainError(os.str());
    }
    return j;
  }

  /// Evaluation without the domain check, for internal limit probes.
  ProfileJet eval_unchecked(double s) const { return eval_(s); }

  /// True when the parameter is the Koranyi argument beta = arg p*.
  bool by_argument() const { return by_argument_; }

  /// p* extended to the ends of the domain, when known.
  const std::optional<EdgeValues>& edges() const { return edges_; }

  /// For curves produced by reparam_by_argument: the original parameter
  /// corresponding to argument beta.
  double source_parameter(double beta) const {
    if (!source_param_) throw DomainError("profile was not reparametrized by argument");
    return source_param_(beta);
  }
  bool has_source_parameter() const { return static_cast<bool>(source_param_); }

  ProfileCurve with_argument_parametrization(EdgeValues edges,
                                             std::function<double(double)> source = {}) const {
    ProfileCurve out = *this;
    out.by_argument_ = true;
    out.edges_ = edges;
    out.source_param_ = std::move(source);
    return out;
  }

 private:
  std::string name_;
  Interval domain_;
  Evaluator eval_;
  Params params_;
  bool by_argument_ = false;
  std::optional<EdgeValues> edges_;
  std::function<double(double)> source_param_;
};

inline ProfileJet eval_profile(const ProfileCurve& c, double s) { return c.eval(s); }

/// p* of a profile with its derivatives.
class KoranyiImage {
 public:
  explicit KoranyiImage(ProfileCurve c) : curve_(std::move(c)) {}
  KoranyiJet at(double s) const { return KoranyiJet::from(curve_.eval(s)); }
  cplx operator()(double s) const { return at(s).p; }
  const ProfileCurve& curve() const { return curve_; }

 private:
  ProfileCurve curve_;
};

inline KoranyiImage koranyi_image(const ProfileCurve& c) { return KoranyiImage(c); }

// --- validation -------------------------------------------------------------

enum class CheckStatus { pass, fail, not_applicable };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "n/a";
  }
  return "?";
}

/// Where a condition was seen to fail. For endpoint limits `s` is the end of
/// the domain and `value` the extrapolated limit.
struct Witness {
  enum class Where { interior, lower_limit, upper_limit };
  Where where = Where::interior;
  double s = 0.0;
  double value = 0.0;
};

inline std::string_view to_string(Witness::Where w) {
  switch (w) {
    case Witness::Where::interior: return "interior";
    case Witness::Where::lower_limit: return "lower limit";
    case Witness::Where::upper_limit: return "upper limit";
  }
  return "?";
}

struct ConditionCheck {
  CheckStatus status = CheckStatus::pass;
  std::optional<Witness> witness;
  std::string note;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }
};

struct ValidationReport {
  int grid_n = 0;
  /// f > 0 inside, f -> 0 at both ends.
  ConditionCheck a1;
  /// g' < 0 inside, g(lo+) > 0, g(hi-) < 0.
  ConditionCheck a2;
  /// arg p* strictly increasing.
  ConditionCheck beta_monotone;
  /// f'^2 + g'^2 > 0 on the grid.
  bool regular = true;

  double min_f = 0.0;
  double min_neg_dg = 0.0;
  double min_beta_dot = 0.0;

  double f_limit_lo = 0.0, f_limit_hi = 0.0;
  double g_limit_lo = 0.0, g_limit_hi = 0.0;

  /// Thresholds used, relative to the sampled maxima of |f|, |g'|, |beta'|.
  double strict_tol = 0.0;
  double limit_tol = 0.0;

  bool all_pass() const { return a1.passed() && a2.passed() && beta_monotone.passed() && regular; }
};

namespace detail {

/// Limit of v(h) as h -> 0+ from samples at h, h/10, h/100 by Aitken's delta-squared
/// extrapolation, which removes a leading error term c h^p of unknown order p.
inline double extrapolate_limit(double v1, double v2, double v3) {
  const double d1 = v2 - v1;
  const double d2 = v3 - v2;
  const double den = d2 - d1;
  if (den == 0.0 || !std::isfinite(den)) return v3;
  const double lim = v3 - d2 * d2 / den;
  // Fall back when the sequence is not in its asymptotic regime.
  if (!std::isfinite(lim) || std::abs(lim - v3) > 10.0 * std::abs(d2) + 1e-300) return v3;
  return lim;
}

/// One-sided limit at `end` from samples at offsets 1e-3 ... 1e-7 of the width,
/// with Aitken's process applied twice so that two error terms of unknown
/// orders (e.g. sqrt(h) and h^{3/2}) are removed.
inline double one_sided_limit(const std::function<double(double)>& v, double end, double dir,
                              double width) {
  std::array<double, 5> s{};
  double h = 1e-3 * width;
  for (double& x : s) {
    x = v(end + dir * h);
    h *= 0.1;
  }
  const double a0 = extrapolate_limit(s[0], s[1], s[2]);
  const double a1 = extrapolate_limit(s[1], s[2], s[3]);
  const double a2 = extrapolate_limit(s[2], s[3], s[4]);
  return extrapolate_limit(a0, a1, a2);
}

/// Minimizes `fn` on a grid and refines interior discrete minima with Brent's
/// method. Returns (argmin, min).
inline std::pair<double, double> sampled_minimum(const std::function<double(double)>& fn,
                                                 const std::vector<double>& grid,
                                                 const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  double arg = grid[best];
  double val = values[best];
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] <= values[i - 1] && values[i] <= values[i + 1]) {
      const auto [x, fx] = boost::math::tools::brent_find_minima(fn, grid[i - 1], grid[i + 1], 52);
      if (fx < val) {
        val = fx;
        arg = x;
      }
    }
  }
  return {arg, val};
}

}  // namespace detail

/// Checks the three shape conditions on `grid_n` interior points plus
/// one-sided limits at the ends. Failures are reported, never thrown.
inline ValidationReport validate(const ProfileCurve& c, int grid_n = 4096) {
  if (grid_n < 16) throw DomainError("validation grid must have at least 16 points");
  constexpr double kStrictTol = 1e-12;
  constexpr double kLimitTol = 1e-6;

  ValidationReport rep;
  rep.grid_n = grid_n;
  rep.strict_tol = kStrictTol;
  rep.limit_tol = kLimitTol;

  const Interval dom = c.domain();
  std::vector<double> grid(grid_n);
  std::vector<double> fv(grid_n), neg_dg(grid_n), bdot(grid_n);
  double f_scale = 0.0, dg_scale = 0.0, b_scale = 0.0, g_scale = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    grid[i] = dom.lo + (i + 1) * dom.width() / (grid_n + 1);
    const ProfileJet j = c.eval_unchecked(grid[i]);
    fv[i] = j.f;
    neg_dg[i] = -j.dg;
    const KoranyiJet k = KoranyiJet::from(j);
    bdot[i] = k.beta_dot();
    f_scale = std::max(f_scale, std::abs(j.f));
    g_scale = std::max(g_scale, std::abs(j.g));
    dg_scale = std::max(dg_scale, std::abs(j.dg));
    b_scale = std::max(b_scale, std::isfinite(bdot[i]) ? std::abs(bdot[i]) : 0.0);
    if (!(j.df * j.df + j.dg * j.dg > 0.0)) rep.regular = false;
  }

  auto f_of = [&](double s) { return c.eval_unchecked(s).f; };
  auto neg_dg_of = [&](double s) { return -c.eval_unchecked(s).dg; };
  auto bdot_of = [&](double s) {
    const double b = KoranyiJet::from(c.eval_unchecked(s)).beta_dot();
    return std::isfinite(b) ? b : -std::numeric_limits<double>::infinity();
  };
  for (double& b : bdot)
    if (!std::isfinite(b)) b = -std::numeric_limits<double>::infinity();

  // (A1)
  {
    const auto [s_min, f_min] = detail::sampled_minimum(f_of, grid, fv);
    rep.min_f = f_min;
    rep.f_limit_lo = detail::one_sided_limit(f_of, dom.lo, +1.0, dom.width());
    rep.f_limit_hi = detail::one_sided_limit(f_of, dom.hi, -1.0, dom.width());
    if (f_min <= kStrictTol * f_scale) {
      rep.a1 = {CheckStatus::fail, Witness{Witness::Where::interior, s_min, f_min}, "f vanishes inside"};
    } else if (std::abs(rep.f_limit_lo) > kLimitTol * f_scale) {
      rep.a1 = {CheckStatus::fail, Witness{Witness::Where::lower_limit, dom.lo, rep.f_limit_lo},
                "f does not tend to 0 at the lower end"};
    } else if (std::abs(rep.f_limit_hi) > kLimitTol * f_scale) {
      rep.a1 = {CheckStatus::fail, Witness{Witness::Where::upper_limit, dom.hi, rep.f_limit_hi},
                "f does not tend to 0 at the upper end"};
    }
  }

  // (A2)
  {
    const auto [s_min, v_min] = detail::sampled_minimum(neg_dg_of, grid, neg_dg);
    rep.min_neg_dg = v_min;
    auto g_of = [&](double s) { return c.eval_unchecked(s).g; };
    rep.g_limit_lo = detail::one_sided_limit(g_of, dom.lo, +1.0, dom.width());
    rep.g_limit_hi = detail::one_sided_limit(g_of, dom.hi, -1.0, dom.width());
    if (v_min <= kStrictTol * dg_scale) {
      rep.a2 = {CheckStatus::fail, Witness{Witness::Where::interior, s_min, -v_min}, "g' >= 0 inside"};
    } else if (!(rep.g_limit_lo > kLimitTol * g_scale)) {
      rep.a2 = {CheckStatus::fail, Witness{Witness::Where::lower_limit, dom.lo, rep.g_limit_lo},
                "g does not start on the positive vertical axis"};
    } else if (!(rep.g_limit_hi < -kLimitTol * g_scale)) {
      rep.a2 = {CheckStatus::fail, Witness{Witness::Where::upper_limit, dom.hi, rep.g_limit_hi},
                "g does not end on the negative vertical axis"};
    }
  }

  // Monotone argument. The argument only lives in the open band where f != 0,
  // so an interior zero of f leaves the condition undefined.
  if (rep.a1.failed() && rep.a1.witness && rep.a1.witness->where == Witness::Where::interior) {
    rep.beta_monotone = {CheckStatus::not_applicable, std::nullopt,
                         "arg p* leaves the open band where f vanishes"};
    rep.min_beta_dot = *std::min_element(bdot.begin(), bdot.end());
  } else {
    const auto [s_min, v_min] = detail::sampled_minimum(bdot_of, grid, bdot);
    rep.min_beta_dot = v_min;
    if (v_min <= kStrictTol * b_scale) {
      rep.beta_monotone = {CheckStatus::fail, Witness{Witness::Where::interior, s_min, v_min},
                           "arg p* is not strictly increasing"};
    }
  }
  return rep;
}

// --- reparametrization by argument -------------------------------------------

namespace detail {

/// Inverse of the increasing map s -> arg p*(s), seeded from a sampled table.
class ArgumentInverse {
 public:
  ArgumentInverse(ProfileCurve c, int n, double tol) : curve_(std::move(c)), tol_(tol) {
    const Interval d = curve_.domain();
    s_.resize(n);
    b_.resize(n);
    for (int i = 0; i < n; ++i) {
      s_[i] = d.lo + (i + 1) * d.width() / (n + 1);
      b_[i] = argument(s_[i]);
    }
    for (int i = 1; i < n; ++i)
      if (!(b_[i] > b_[i - 1])) throw DomainError("arg p* is not increasing on the inversion grid");
  }

  double argument(double s) const { return KoranyiJet::from(curve_.eval(s)).beta(); }

  /// Parameter s with arg p*(s) = beta.
  double operator()(double beta) const {
    const Interval d = curve_.domain();
    double lo, hi;
    const auto it = std::lower_bound(b_.begin(), b_.end(), beta);
    if (it == b_.end()) {
      hi = edge_bracket(d.hi, -1.0, beta);
      lo = s_.back();
    } else if (it == b_.begin()) {
      lo = edge_bracket(d.lo, +1.0, beta);
      hi = s_.front();
    } else {
      const auto i = static_cast<std::size_t>(it - b_.begin());
      lo = s_[i - 1];
      hi = s_[i];
    }
    // Safeguarded Newton: bisection whenever the Newton step leaves the bracket.
    double s = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      const KoranyiJet k = KoranyiJet::from(curve_.eval(s));
      const double r = k.beta() - beta;
      if (std::abs(r) <= tol_) return s;
      if (r > 0.0) hi = s; else lo = s;
      double next = s - r / k.beta_dot();
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == s) return s;
      s = next;
    }
    std::ostringstream os;
    os << "argument inversion did not converge for beta = " << beta;
    throw ConvergenceError(os.str());
  }

  const ProfileCurve& curve() const { return curve_; }

 private:
  double edge_bracket(double end, double dir, double beta) const {
    const double w = curve_.domain().width();
    for (int k = 4; k <= 15; ++k) {
      const double s = end + dir * w * std::pow(10.0, -k);
      if (!curve_.domain().contains_open(s)) break;
      const double b = argument(s);
      if (dir > 0 ? b <= beta : b >= beta) return s;
    }
    std::ostringstream os;
    os << "argument " << beta << " is not reached inside the profile domain";
    throw ConvergenceError(os.str());
  }

  ProfileCurve curve_;
  double tol_;
  std::vector<double> s_, b_;
};

}  // namespace detail

/// Reparametrizes a profile by beta = arg p*, so that p*(beta) = |p*(beta)| e^{i beta}.
/// Requires f > 0 inside and a strictly increasing argument.
inline ProfileCurve reparam_by_argument(const ProfileCurve& c, double tol = 1e-14, int grid_n = 4096) {
  const ValidationReport rep = validate(c, grid_n);
  if (!rep.a1.passed()) throw DomainError("cannot reparametrize: f must be positive with zero end limits");
  if (!rep.beta_monotone.passed()) throw DomainError("cannot reparametrize: arg p* is not strictly increasing");

  const EdgeValues edges{cplx(0.0, rep.g_limit_lo), cplx(0.0, rep.g_limit_hi)};
  if (c.by_argument()) return c.with_argument_parametrization(c.edges().value_or(edges));

  auto inv = std::make_shared<const detail::ArgumentInverse>(c, grid_n, tol);
  ProfileCurve::Evaluator eval = [inv](double beta) {
    const double s = (*inv)(beta);
    const ProfileJet j = inv->curve().eval(s);
    // Argument as a jet in s, then invert the jet to get d/dbeta.
    const Jet f = j.f_jet(), g = j.g_jet();
    const Jet b = atan2(g, -(f * f));
    const double s1 = 1.0 / b.d1;
    const double s2 = -b.d2 * s1 * s1 * s1;
    auto rechain = [&](double d1, double d2) { return std::pair{d1 * s1, d2 * s1 * s1 + d1 * s2}; };
    const auto [fb1, fb2] = rechain(j.df, j.d2f);
    const auto [gb1, gb2] = rechain(j.dg, j.d2g);
    return ProfileJet{j.f, j.g, fb1, gb1, fb2, gb2};
  };
  ProfileCurve out(c.name(), kArgumentBand, std::move(eval), c.params());
  return out.with_argument_parametrization(edges, [inv](double beta) { return (*inv)(beta); });
}

// --- catalog ----------------------------------------------------------------

enum class CatalogSurface { koranyi_sphere, bubble_set, cc_sphere };

inline std::string_view to_string(CatalogSurface s) {
  switch (s) {
    case CatalogSurface::koranyi_sphere: return "koranyi";
    case CatalogSurface::bubble_set: return "bubble";
    case CatalogSurface::cc_sphere: return "cc";
  }
  return "?";
}

inline CatalogSurface catalog_surface_from_string(std::string_view name) {
  if (name == "koranyi" || name == "koranyi_sphere") return CatalogSurface::koranyi_sphere;
  if (name == "bubble" || name == "bubble_set") return CatalogSurface::bubble_set;
  if (name == "cc" || name == "cc_sphere") return CatalogSurface::cc_sphere;
  throw DomainError("unknown catalog surface '" + std::string(name) + "'");
}

/// Koranyi sphere of radius R, parametrized by beta in (pi/2, 3pi/2):
/// f = R sqrt(-cos beta), g = R^2 sin beta.
inline ProfileCurve koranyi_sphere(double R) {
  auto eval = [R](double beta) {
    const Jet b = Jet::variable(beta);
    return make_profile_jet(R * sqrt(-cos(b)), R * R * sin(b));
  };
  ProfileCurve c("koranyi", kArgumentBand, eval, {{"R", R}});
  return c.with_argument_parametrization({cplx(0.0, R * R), cplx(0.0, -R * R)});
}

/// Bubble set: (f, g) = 2R (sin(s/2R), R sin(s/R) - s + pi R) on (0, 2 pi R).
/// The poles sit at t = +-2 pi R^2.
inline ProfileCurve bubble_set(double R) {
  auto eval = [R](double s) {
    const Jet x = Jet::variable(s);
    return make_profile_jet(2.0 * R * sin(x / (2.0 * R)), 2.0 * R * (R * sin(x / R) - x + kPi * R));
  };
  return ProfileCurve("bubble", {0.0, 2.0 * kPi * R}, eval, {{"R", R}});
}

/// Carnot-Caratheodory sphere of radius R swept by the endpoints of lifted
/// circles of curvature k in (-2pi/R, 2pi/R):
/// f = |1 - e^{ikR}| / |k| = R sinc(kR/2), g = 2(sin kR - kR)/k^2.
inline ProfileCurve cc_sphere(double R) {
  auto eval = [R](double k) {
    const Jet x = Jet::variable(k);
    return make_profile_jet(R * sinc(x * (R / 2.0)), 2.0 * R * R * R * x * sinm(x * R));
  };
  return ProfileCurve("cc", {-2.0 * kPi / R, 2.0 * kPi / R}, eval, {{"R", R}});
}

inline ProfileCurve catalog(CatalogSurface which, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("catalog radius must be positive");
  switch (which) {
    case CatalogSurface::koranyi_sphere: return koranyi_sphere(R);
    case CatalogSurface::bubble_set: return bubble_set(R);
    case CatalogSurface::cc_sphere: return cc_sphere(R);
  }
  throw DomainError("unknown catalog surface");
}

inline ProfileCurve catalog(std::string_view name, double R) {
  return catalog(catalog_surface_from_string(name), R);
}

}  // namespace heisring
