#pragma once

// Second-order forward-mode automatic differentiation in one variable.
//
// A Jet2 carries (value, first derivative, second derivative) of a quantity
// with respect to a single scalar parameter. Elementary functions propagate
// through the chain rule
//
//   (phi o u)'  = phi'(u) u'
//   (phi o u)'' = phi''(u) u'^2 + phi'(u) u''
//
// which is exact up to rounding.

#include <cmath>
#include <limits>
#include <ostream>

namespace heisring {

template <class T>
struct Jet2 {
  T v{};
  T d1{};
  T d2{};

  constexpr Jet2() = default;
  constexpr Jet2(T value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet2(T value, T first, T second) : v(value), d1(first), d2(second) {}

  /// The independent variable itself at the point x.
  static constexpr Jet2 variable(T x) { return {x, T(1), T(0)}; }

  bool finite() const { return std::isfinite(v) && std::isfinite(d1) && std::isfinite(d2); }
};

using Jet = Jet2<double>;

/// Applies a scalar function given its value and first two derivatives at u.v.
template <class T>
constexpr Jet2<T> compose(const Jet2<T>& u, T f0, T f1, T f2) {
  return {f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2};
}

template <class T>
constexpr Jet2<T> operator+(const Jet2<T>& a) {
  return a;
}
template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a) {
  return {-a.v, -a.d1, -a.d2};
}
template <class T>
constexpr Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
template <class T>
constexpr Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + T(2) * a.d1 * b.d1 + a.v * b.d2};
}
template <class T>
constexpr Jet2<T> reciprocal(const Jet2<T>& a) {
  const T r = T(1) / a.v;
  return compose(a, r, -r * r, T(2) * r * r * r);
}
template <class T>
constexpr Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  return a * reciprocal(b);
}

// Mixed scalar overloads.
template <class T>
constexpr Jet2<T> operator+(const Jet2<T>& a, T b) {
  return {a.v + b, a.d1, a.d2};
}
template <class T>
constexpr Jet2<T> operator+(T a, const Jet2<T>& b) {
  return b + a;
}
template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a, T b) {
  return {a.v - b, a.d1, a.d2};
}
template <class T>
constexpr Jet2<T> operator-(T a, const Jet2<T>& b) {
  return {a - b.v, -b.d1, -b.d2};
}
template <class T>
constexpr Jet2<T> operator*(const Jet2<T>& a, T b) {
  return {a.v * b, a.d1 * b, a.d2 * b};
}
template <class T>
constexpr Jet2<T> operator*(T a, const Jet2<T>& b) {
  return b * a;
}
template <class T>
constexpr Jet2<T> operator/(const Jet2<T>& a, T b) {
  return {a.v / b, a.d1 / b, a.d2 / b};
}
template <class T>
constexpr Jet2<T> operator/(T a, const Jet2<T>& b) {
  return a * reciprocal(b);
}

template <class T>
Jet2<T> sqrt(const Jet2<T>& a) {
  using std::sqrt;
  const T r = sqrt(a.v);
  return compose(a, r, T(0.5) / r, T(-0.25) / (r * a.v));
}
template <class T>
Jet2<T> exp(const Jet2<T>& a) {
  using std::exp;
  const T e = exp(a.v);
  return compose(a, e, e, e);
}
template <class T>
Jet2<T> log(const Jet2<T>& a) {
  using std::log;
  return compose(a, log(a.v), T(1) / a.v, T(-1) / (a.v * a.v));
}
template <class T>
Jet2<T> sin(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.v);
  return compose(a, s, cos(a.v), -s);
}
template <class T>
Jet2<T> cos(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T c = cos(a.v);
  return compose(a, c, -sin(a.v), -c);
}
template <class T>
Jet2<T> tan(const Jet2<T>& a) {
  using std::tan;
  const T t = tan(a.v);
  const T sec2 = T(1) + t * t;
  return compose(a, t, sec2, T(2) * t * sec2);
}
template <class T>
Jet2<T> atan(const Jet2<T>& a) {
  using std::atan;
  const T q = T(1) / (T(1) + a.v * a.v);
  return compose(a, atan(a.v), q, T(-2) * a.v * q * q);
}
/// |a|; the derivative at a.v == 0 is taken from the right.
template <class T>
Jet2<T> abs(const Jet2<T>& a) {
  return a.v < T(0) ? -a : a;
}
/// a^p for a constant exponent.
template <class T>
Jet2<T> pow(const Jet2<T>& a, T p) {
  using std::pow;
  if (p == T(0)) return Jet2<T>(T(1));
  if (p == T(1)) return a;
  if (p == T(2)) return a * a;
  return compose(a, pow(a.v, p), p * pow(a.v, p - T(1)), p * (p - T(1)) * pow(a.v, p - T(2)));
}

/// Angle of the point (x, y), both depending on the same parameter.
template <class T>
Jet2<T> atan2(const Jet2<T>& y, const Jet2<T>& x) {
  using std::atan2;
  const T d = x.v * x.v + y.v * y.v;
  const T n = x.v * y.d1 - y.v * x.d1;
  const T dn = x.v * y.d2 - y.v * x.d2;
  const T dd = T(2) * (x.v * x.d1 + y.v * y.d1);
  return {atan2(y.v, x.v), n / d, (dn * d - n * dd) / (d * d)};
}

namespace detail {

// Value, first and second derivative of sin(x)/x. Power series below |x| < 1
// where the closed forms lose digits to cancellation.
template <class T>
void sinc_derivs(T x, T& f0, T& f1, T& f2) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (abs(x) < T(1)) {
    // sum_n c_n x^{2n}, c_n = (-1)^n / (2n+1)!
    f0 = f1 = f2 = T(0);
    T coeff = T(1);
    T pw = T(1);  // x^{2n}
    T pw1 = T(0);  // x^{2n-1}
    T pw2 = T(0);  // x^{2n-2}
    for (int n = 0; n < 12; ++n) {
      f0 += coeff * pw;
      f1 += coeff * T(2 * n) * pw1;
      f2 += coeff * T(2 * n) * T(2 * n - 1) * pw2;
      pw2 = pw;
      pw1 = pw * x;
      pw = pw1 * x;
      coeff /= -T((2 * n + 2) * (2 * n + 3));
    }
    return;
  }
  const T s = sin(x), c = cos(x);
  f0 = s / x;
  f1 = (x * c - s) / (x * x);
  f2 = (-x * x * s - T(2) * x * c + T(2) * s) / (x * x * x);
}

// Value, first and second derivative of (sin(x) - x)/x^3.
template <class T>
void sinm_derivs(T x, T& f0, T& f1, T& f2) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (abs(x) < T(1)) {
    // sum_{m>=0} c_m x^{2m}, c_m = (-1)^{m+1} / (2m+3)!
    f0 = f1 = f2 = T(0);
    T coeff = T(-1) / T(6);
    T pw = T(1);
    T pw1 = T(0);
    T pw2 = T(0);
    for (int m = 0; m < 12; ++m) {
      f0 += coeff * pw;
      f1 += coeff * T(2 * m) * pw1;
      f2 += coeff * T(2 * m) * T(2 * m - 1) * pw2;
      pw2 = pw;
      pw1 = pw * x;
      pw = pw1 * x;
      coeff /= -T((2 * m + 4) * (2 * m + 5));
    }
    return;
  }
  const T s = sin(x), c = cos(x);
  const T x2 = x * x, x3 = x2 * x;
  f0 = (s - x) / x3;
  f1 = (c - T(1)) / x3 - T(3) * (s - x) / (x3 * x);
  f2 = -s / x3 - T(6) * (c - T(1)) / (x3 * x) + T(12) * (s - x) / (x3 * x2);
}

}  // namespace detail

/// sin(x)/x, analytic through x = 0.
template <class T>
Jet2<T> sinc(const Jet2<T>& a) {
  T f0, f1, f2;
  detail::sinc_derivs(a.v, f0, f1, f2);
  return compose(a, f0, f1, f2);
}
inline double sinc(double x) {
  double f0, f1, f2;
  detail::sinc_derivs(x, f0, f1, f2);
  return f0;
}

/// (sin(x) - x)/x^3, analytic through x = 0 where it equals -1/6.
template <class T>
Jet2<T> sinm(const Jet2<T>& a) {
  T f0, f1, f2;
  detail::sinm_derivs(a.v, f0, f1, f2);
  return compose(a, f0, f1, f2);
}
inline double sinm(double x) {
  double f0, f1, f2;
  detail::sinm_derivs(x, f0, f1, f2);
  return f0;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Jet2<T>& a) {
  return os << '[' << a.v << "; " << a.d1 << ", " << a.d2 << ']';
}

}  // namespace heisring
