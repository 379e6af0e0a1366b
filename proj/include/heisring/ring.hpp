#pragma once

// Revolution rings a < |(z,t)|_H / |p*(arg alpha(z,t))|^{1/2} < b and the
// density rho_0 supported on them.

#include <cmath>
#include <sstream>
#include <string>

#include "heisring/errors.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/profile.hpp"
#include "heisring/revcoords.hpp"

namespace heisring {

class RevolutionRing {
 public:
  /// Validates `c`, reparametrizes it by argument and checks 0 < a < b.
  /// The profile must have f > 0 with zero end limits, a strictly increasing
  /// argument, and p* must extend to both ends with a nonzero value.
  RevolutionRing(const ProfileCurve& c, double a, double b, int grid_n = 4096) : source_(c), a_(a), b_(b) {
    if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
      std::ostringstream os;
      os << "ring needs 0 < a < b, got a = " << a << ", b = " << b;
      throw DomainError(os.str());
    }
    report_ = validate(c, grid_n);
    profile_ = reparam_by_argument(c, 1e-14, grid_n);
    const EdgeValues e = *profile_->edges();
    if (!(e.lo.imag() > 0.0) || !(e.hi.imag() < 0.0))
      throw DomainError("p* must end on the open positive and negative imaginary axes");
  }

  const ProfileCurve& profile() const { return *profile_; }
  const ProfileCurve& source() const { return source_; }
  const ValidationReport& validation() const { return report_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double log_ratio() const { return std::log(b_ / a_); }
  Box box() const { return Box::ring(a_, b_); }

  /// |p*(beta)| on the closed band.
  double radius(double beta) const { return std::abs(pstar_closed(profile(), beta)); }

  /// gauge(p) / |p*(arg alpha(p))|^{1/2}. On the vertical axis the argument is
  /// pi/2 above the origin and 3pi/2 below.
  double ratio(const HPoint& p) const {
    const cplx alpha = koranyi_map(p);
    if (alpha == cplx(0.0, 0.0)) throw DomainError("ring ratio is undefined at the origin");
    double beta;
    if (alpha.real() < 0.0) beta = arg_in_band(alpha);
    else beta = p.t > 0.0 ? kArgumentBand.lo : kArgumentBand.hi;
    return std::sqrt(std::abs(alpha) / radius(beta));
  }

 private:
  ProfileCurve source_;
  std::optional<ProfileCurve> profile_;
  ValidationReport report_;
  double a_, b_;
};

enum class Membership { inside, boundary, outside };

inline std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::boundary: return "boundary";
    case Membership::outside: return "outside";
  }
  return "?";
}

/// Classifies p by its ring ratio; within rel_tol of a or b counts as boundary.
inline Membership membership(const RevolutionRing& ring, const HPoint& p, double rel_tol = 1e-9) {
  const double r = ring.ratio(p);
  if (std::abs(r - ring.a()) <= rel_tol * ring.a() || std::abs(r - ring.b()) <= rel_tol * ring.b())
    return Membership::boundary;
  return r > ring.a() && r < ring.b() ? Membership::inside : Membership::outside;
}

/// rho_0 = |z| / (log(b/a) (|z|^4 + t^2)^{1/2}) on the closed ring, 0 elsewhere.
/// Boundary points within the membership tolerance count as part of the ring
/// so that curves ending on the boundary keep their end weights.
inline double rho0(const RevolutionRing& ring, const HPoint& p) {
  const Membership m = membership(ring, p);
  if (m == Membership::outside) return 0.0;
  const double n = std::abs(koranyi_map(p));
  return std::abs(p.z) / (ring.log_ratio() * n);
}

/// rho_0 pulled back to revolution coordinates:
/// e^{-xi} |p*(beta)|^{-1} Re^{1/2}(-p*(beta)) / log(b/a) for log a <= xi <= log b.
inline double rho0_tilde(const RevolutionRing& ring, const RevPoint& q) {
  if (q.xi < std::log(ring.a()) || q.xi > std::log(ring.b())) return 0.0;
  const cplx p = pstar_closed(ring.profile(), q.beta);
  return std::exp(-q.xi) * std::sqrt(std::max(0.0, -p.real())) / (std::abs(p) * ring.log_ratio());
}

}  // namespace heisring
