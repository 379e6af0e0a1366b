#pragma once

// Heisenberg group C x R: group law, Koranyi gauge and metric, similarities,
// and the contact / sub-Riemannian structure at a point.

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "heisring/errors.hpp"

namespace heisring {

using cplx = std::complex<double>;

/// A point (z, t) of the group.
struct HPoint {
  cplx z{};
  double t = 0.0;

  double x() const { return z.real(); }
  double y() const { return z.imag(); }
  bool finite() const { return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::isfinite(t); }

  friend bool operator==(const HPoint&, const HPoint&) = default;
};

/// (z,t) * (w,s) = (z + w, t + s + 2 Im(z conj(w))).
inline HPoint mul(const HPoint& p, const HPoint& q) {
  return {p.z + q.z, p.t + q.t + 2.0 * std::imag(p.z * std::conj(q.z))};
}

inline HPoint inverse(const HPoint& p) { return {-p.z, -p.t}; }

/// Koranyi map alpha(z,t) = -|z|^2 + i t. Its image is the closed left half-plane.
inline cplx koranyi_map(const HPoint& p) { return {-std::norm(p.z), p.t}; }

/// Koranyi gauge (|z|^4 + t^2)^{1/4}.
inline double gauge(const HPoint& p) { return std::sqrt(std::abs(koranyi_map(p))); }

/// Koranyi-Cygan distance gauge(p^{-1} * q).
inline double dist(const HPoint& p, const HPoint& q) { return gauge(mul(inverse(p), q)); }

inline HPoint dilate(double delta, const HPoint& p) {
  if (!(delta > 0.0)) throw DomainError("dilation factor must be positive");
  return {delta * p.z, delta * delta * p.t};
}

inline HPoint rotate(double theta, const HPoint& p) { return {p.z * std::polar(1.0, theta), p.t}; }

inline HPoint translate(const HPoint& by, const HPoint& p) { return mul(by, p); }

/// Conjugation j(z,t) = (conj z, -t).
inline HPoint conjugate(const HPoint& p) { return {std::conj(p.z), -p.t}; }

/// Inversion I(z,t) = (z / alpha, -t / |alpha|^2), undefined at the origin.
inline HPoint invert(const HPoint& p) {
  const cplx a = koranyi_map(p);
  const double n = std::norm(a);
  if (n == 0.0) throw DomainError("inversion is undefined at the origin");
  return {p.z / a, -p.t / n};
}

/// A composition of elementary similarities, applied left to right.
class Similarity {
 public:
  struct Translation {
    HPoint by;
  };
  struct Rotation {
    double theta;
  };
  struct Dilation {
    double delta;
  };
  struct Inversion {};
  struct Conjugation {};
  using Step = std::variant<Translation, Rotation, Dilation, Inversion, Conjugation>;

  Similarity() = default;

  static Similarity translation(const HPoint& by) { return Similarity({Translation{by}}); }
  static Similarity rotation(double theta) { return Similarity({Rotation{theta}}); }
  static Similarity dilation(double delta) {
    if (!(delta > 0.0)) throw DomainError("dilation factor must be positive");
    return Similarity({Dilation{delta}});
  }
  static Similarity inversion() { return Similarity({Inversion{}}); }
  static Similarity conjugation() { return Similarity({Conjugation{}}); }

  /// This map followed by `next`.
  Similarity then(const Similarity& next) const {
    Similarity out = *this;
    out.steps_.insert(out.steps_.end(), next.steps_.begin(), next.steps_.end());
    return out;
  }

  HPoint operator()(HPoint p) const {
    for (const Step& step : steps_) {
      p = std::visit(
          [&](const auto& s) -> HPoint {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Translation>) return translate(s.by, p);
            if constexpr (std::is_same_v<S, Rotation>) return rotate(s.theta, p);
            if constexpr (std::is_same_v<S, Dilation>) return dilate(s.delta, p);
            if constexpr (std::is_same_v<S, Inversion>) return invert(p);
            if constexpr (std::is_same_v<S, Conjugation>) return conjugate(p);
          },
          step);
    }
    return p;
  }

  /// True when every step preserves the Koranyi-Cygan distance.
  bool is_isometry() const {
    for (const Step& s : steps_) {
      if (std::holds_alternative<Dilation>(s) || std::holds_alternative<Inversion>(s)) return false;
    }
    return true;
  }

  std::size_t size() const { return steps_.size(); }

 private:
  explicit Similarity(std::vector<Step> steps) : steps_(std::move(steps)) {}
  std::vector<Step> steps_;
};

// --- contact structure ------------------------------------------------------

/// Tangent vector a d/dx + b d/dy + c d/dt at `base`.
struct TangentVector {
  HPoint base;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Components of a tangent vector on the left-invariant frame X, Y, T.
struct FrameComponents {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Contact form omega = dt + 2(x dy - y dx).
inline double contact_eval(const TangentVector& v) {
  return v.c + 2.0 * (v.base.x() * v.b - v.base.y() * v.a);
}

// X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt, T = d/dt.
inline TangentVector frame_X(const HPoint& p) { return {p, 1.0, 0.0, 2.0 * p.y()}; }
inline TangentVector frame_Y(const HPoint& p) { return {p, 0.0, 1.0, -2.0 * p.x()}; }
inline TangentVector frame_T(const HPoint& p) { return {p, 0.0, 0.0, 1.0}; }

/// v = a X + b Y + omega(v) T.
inline FrameComponents to_frame(const TangentVector& v) { return {v.a, v.b, contact_eval(v)}; }

inline TangentVector from_frame(const HPoint& base, const FrameComponents& f) {
  return {base, f.x, f.y, f.t - 2.0 * (base.x() * f.y - base.y() * f.x)};
}

/// Horizontal vector nu1 X + nu2 Y at `base`.
struct HorVector {
  HPoint base;
  double nu1 = 0.0;
  double nu2 = 0.0;

  double norm() const { return std::hypot(nu1, nu2); }
  /// The same vector as a complex number nu1 + i nu2.
  cplx as_complex() const { return {nu1, nu2}; }
};

inline double inner(const HorVector& u, const HorVector& v) { return u.nu1 * v.nu1 + u.nu2 * v.nu2; }

/// JX = Y, JY = -X.
inline HorVector apply_J(const HorVector& v) { return {v.base, -v.nu2, v.nu1}; }

/// Horizontal projection of a tangent vector (drops the T component).
inline HorVector horizontal_part(const TangentVector& v) { return {v.base, v.a, v.b}; }

/// Horizontal vector as a tangent vector in coordinate components.
inline TangentVector to_tangent(const HorVector& h) {
  return from_frame(h.base, {h.nu1, h.nu2, 0.0});
}

}  // namespace heisring
