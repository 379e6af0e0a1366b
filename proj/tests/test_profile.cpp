#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "heisring/expression.hpp"
#include "heisring/profile.hpp"

using namespace heisring;

namespace {

// Central differences of f and g, for checking the jets.
void expect_jet_consistent(const ProfileCurve& c, double s, double h, double tol) {
  const ProfileJet j = c.eval(s), jp = c.eval(s + h), jm = c.eval(s - h);
  EXPECT_NEAR(j.df, (jp.f - jm.f) / (2 * h), tol) << c.name() << " s=" << s;
  EXPECT_NEAR(j.dg, (jp.g - jm.g) / (2 * h), tol) << c.name() << " s=" << s;
  EXPECT_NEAR(j.d2f, (jp.f - 2 * j.f + jm.f) / (h * h), 1e3 * tol) << c.name() << " s=" << s;
  EXPECT_NEAR(j.d2g, (jp.g - 2 * j.g + jm.g) / (h * h), 1e3 * tol) << c.name() << " s=" << s;
}

ProfileCurve touching_zero() {
  return parse_profile("f = sin(pi*s) * (4*s - 1)^2\ng = 1 - 2*s\ndomain = (0, 1)", "touching");
}
ProfileCurve rising_height() {
  return parse_profile("f = sqrt(-exp(s)*cos(s))\ng = exp(s)*sin(s)\ndomain = (pi/2, 3*pi/2)", "rising");
}
ProfileCurve turning_argument() {
  return parse_profile("f = sin(s)*exp(-3*s)\ng = cos(s)\ndomain = (0, pi)", "turning");
}

}  // namespace

TEST(Catalog, JetsMatchFiniteDifferences) {
  for (double R : {0.5, 1.0, 2.0}) {
    for (auto which : {CatalogSurface::koranyi_sphere, CatalogSurface::bubble_set, CatalogSurface::cc_sphere}) {
      const ProfileCurve c = catalog(which, R);
      const Interval d = c.domain();
      for (double u : {0.13, 0.37, 0.5, 0.71, 0.93}) expect_jet_consistent(c, d.lo + u * d.width(), 1e-5, 1e-6 * R * R);
    }
  }
}

TEST(Catalog, KoranyiSphereHasConstantGaugeAndArgumentParameter) {
  const ProfileCurve c = koranyi_sphere(1.5);
  EXPECT_TRUE(c.by_argument());
  for (double b = 1.6; b < 4.7; b += 0.3) {
    const KoranyiJet k = KoranyiJet::from(c.eval(b));
    EXPECT_NEAR(k.r(), 2.25, 1e-14);
    EXPECT_NEAR(k.beta(), b, 1e-14);
    EXPECT_NEAR(k.beta_dot(), 1.0, 1e-13);
  }
  EXPECT_EQ(c.edges()->lo, cplx(0.0, 2.25));
}

TEST(Catalog, BubbleKoranyiImage) {
  // p* = -4R^2 sin^2(s/2R) + 2iR(R sin(s/R) - s + pi R).
  const double R = 0.8;
  const ProfileCurve c = bubble_set(R);
  const KoranyiImage img = koranyi_image(c);
  for (double s = 0.2; s < 2 * kPi * R; s += 0.4) {
    const cplx expect(-4 * R * R * std::pow(std::sin(s / (2 * R)), 2), 2 * R * (R * std::sin(s / R) - s + kPi * R));
    EXPECT_NEAR(std::abs(img(s) - expect), 0.0, 1e-13);
    // dp*/ds = -2R sin(s/R) + 2iR(cos(s/R) - 1)
    const cplx dexpect(-2 * R * std::sin(s / R), 2 * R * (std::cos(s / R) - 1));
    EXPECT_NEAR(std::abs(img.at(s).dp - dexpect), 0.0, 1e-13);
  }
}

TEST(Catalog, CcSphereEndpointsOfLiftedCircles) {
  // At k the profile point is (|1 - e^{ik}|/|k|, 2(sin k - k)/k^2) for R = 1.
  const ProfileCurve c = cc_sphere(1.0);
  for (double k : {-5.0, -1.0, 0.3, 2.0, 6.0}) {
    const ProfileJet j = c.eval(k);
    EXPECT_NEAR(j.f, std::abs(1.0 - std::polar(1.0, k)) / std::abs(k), 1e-14);
    EXPECT_NEAR(j.g, 2 * (std::sin(k) - k) / (k * k), 1e-14);
  }
  const ProfileJet j0 = c.eval(0.0);
  EXPECT_DOUBLE_EQ(j0.f, 1.0);
  EXPECT_DOUBLE_EQ(j0.g, 0.0);
}

TEST(Catalog, NamesAndErrors) {
  EXPECT_EQ(catalog("koranyi", 1.0).name(), "koranyi");
  EXPECT_EQ(catalog("bubble_set", 1.0).name(), "bubble");
  EXPECT_EQ(catalog_surface_from_string("cc_sphere"), CatalogSurface::cc_sphere);
  EXPECT_THROW(catalog("torus", 1.0), DomainError);
  EXPECT_THROW(catalog("cc", 0.0), DomainError);
  EXPECT_THROW(catalog("cc", -1.0), DomainError);
}

TEST(Profile, EvaluationOutsideOpenDomainThrows) {
  const ProfileCurve c = bubble_set(1.0);
  EXPECT_THROW(c.eval(0.0), DomainError);
  EXPECT_THROW(c.eval(2 * kPi), DomainError);
  EXPECT_THROW(c.eval(-1.0), DomainError);
  EXPECT_NO_THROW(c.eval(1e-9));
}

TEST(Validate, KoranyiAndBubblePassEveryCheck) {
  for (const char* name : {"koranyi", "bubble"}) {
    for (double R : {0.5, 1.0, 3.0}) {
      const ValidationReport r = validate(catalog(name, R));
      EXPECT_TRUE(r.all_pass()) << name << " R=" << R;
      EXPECT_NEAR(r.f_limit_lo, 0.0, 1e-9 * R);
      EXPECT_NEAR(r.f_limit_hi, 0.0, 1e-9 * R);
    }
  }
  const ValidationReport b = validate(bubble_set(1.0));
  EXPECT_NEAR(b.g_limit_lo, 2 * kPi, 1e-9);
  EXPECT_NEAR(b.g_limit_hi, -2 * kPi, 1e-9);
}

TEST(Validate, CcSphereHasIncreasingArgumentButNonMonotoneHeight) {
  // g(k) = 2(sin k - k)/k^2 has g'(k) > 0 for some |k| > pi, while arg p* still
  // increases: the ring construction only needs the latter.
  const ValidationReport r = validate(cc_sphere(1.0));
  EXPECT_TRUE(r.a1.passed());
  EXPECT_TRUE(r.beta_monotone.passed());
  ASSERT_TRUE(r.a2.failed());
  ASSERT_TRUE(r.a2.witness);
  EXPECT_EQ(r.a2.witness->where, Witness::Where::interior);
  const double k = r.a2.witness->s;
  const double dg = 2 * ((std::cos(k) - 1) / (k * k) - 2 * (std::sin(k) - k) / (k * k * k));
  EXPECT_GT(dg, 0.0);
  EXPECT_NEAR(r.a2.witness->value, dg, 1e-9);
  EXPECT_NEAR(r.g_limit_lo, 1 / kPi, 1e-9);
}

TEST(Validate, InteriorZeroOfFFailsPositivityOnly) {
  const ValidationReport r = validate(touching_zero());
  ASSERT_TRUE(r.a1.failed());
  EXPECT_EQ(r.a1.witness->where, Witness::Where::interior);
  EXPECT_NEAR(r.a1.witness->s, 0.25, 1e-6);
  EXPECT_TRUE(r.a2.passed());
  EXPECT_EQ(r.beta_monotone.status, CheckStatus::not_applicable);
  EXPECT_TRUE(r.regular);
}

TEST(Validate, SignChangeOfGPrimeFailsHeightOnly) {
  // p* = e^s e^{is}: the argument is s itself, while g' = e^s (sin s + cos s) > 0 on (pi/2, 3pi/4).
  const ValidationReport r = validate(rising_height());
  EXPECT_TRUE(r.a1.passed());
  ASSERT_TRUE(r.a2.failed());
  EXPECT_EQ(r.a2.witness->where, Witness::Where::interior);
  const double s = r.a2.witness->s;
  EXPECT_GT(s, kPi / 2);
  EXPECT_LT(s, 3 * kPi / 4);
  EXPECT_NEAR(r.a2.witness->value, std::exp(s) * (std::sin(s) + std::cos(s)), 1e-9);
  EXPECT_TRUE(r.beta_monotone.passed());
  EXPECT_NEAR(r.min_beta_dot, 1.0, 1e-9);
}

TEST(Validate, TurningArgumentFailsMonotonicityOnly) {
  const ValidationReport r = validate(turning_argument());
  EXPECT_TRUE(r.a1.passed());
  EXPECT_TRUE(r.a2.passed());
  ASSERT_TRUE(r.beta_monotone.failed());
  const Witness w = *r.beta_monotone.witness;
  EXPECT_EQ(w.where, Witness::Where::interior);
  EXPECT_LT(w.value, 0.0);
  EXPECT_NEAR(KoranyiJet::from(turning_argument().eval(w.s)).beta_dot(), w.value, 1e-12);
}

TEST(Validate, WitnessesAreReproducible) {
  for (const ProfileCurve& c : {touching_zero(), rising_height(), turning_argument()}) {
    const ValidationReport a = validate(c), b = validate(c);
    for (auto [x, y] : {std::pair{a.a1, b.a1}, {a.a2, b.a2}, {a.beta_monotone, b.beta_monotone}}) {
      EXPECT_EQ(x.status, y.status);
      ASSERT_EQ(x.witness.has_value(), y.witness.has_value());
      if (x.witness) {
        EXPECT_EQ(x.witness->s, y.witness->s);
        EXPECT_EQ(x.witness->value, y.witness->value);
      }
    }
  }
}

TEST(Validate, EndLimitsOfFAreChecked) {
  const ValidationReport r = validate(parse_profile("f = 1 + 0*s\ng = -s\ndomain = (-1, 1)"));
  ASSERT_TRUE(r.a1.failed());
  EXPECT_EQ(r.a1.witness->where, Witness::Where::lower_limit);
  EXPECT_NEAR(r.f_limit_lo, 1.0, 1e-12);
}

TEST(Reparam, BubbleByArgument) {
  const ProfileCurve src = bubble_set(1.0);
  const ProfileCurve c = reparam_by_argument(src);
  ASSERT_TRUE(c.by_argument());
  EXPECT_NEAR(c.source_parameter(kPi), kPi, 1e-12);
  EXPECT_NEAR(c.edges()->lo.imag(), 2 * kPi, 1e-9);
  EXPECT_NEAR(c.edges()->hi.imag(), -2 * kPi, 1e-9);
  for (double beta = 1.6; beta < 4.7; beta += 0.1) {
    const KoranyiJet k = KoranyiJet::from(c.eval(beta));
    EXPECT_NEAR(k.beta(), beta, 1e-12);
    // Roundtrip through the source parameter.
    const double s = c.source_parameter(beta);
    EXPECT_NEAR(KoranyiJet::from(src.eval(s)).beta(), beta, 1e-13);
    EXPECT_NEAR(std::abs(k.p - KoranyiJet::from(src.eval(s)).p), 0.0, 1e-12);
    // d/dbeta of p* by central differences.
    const double h = 1e-5;
    const cplx fd = (KoranyiJet::from(c.eval(beta + h)).p - KoranyiJet::from(c.eval(beta - h)).p) / (2 * h);
    EXPECT_NEAR(std::abs(k.dp - fd), 0.0, 1e-7 * (1 + std::abs(fd)));
    const cplx fd2 = (KoranyiJet::from(c.eval(beta + h)).dp - KoranyiJet::from(c.eval(beta - h)).dp) / (2 * h);
    EXPECT_NEAR(std::abs(k.d2p - fd2), 0.0, 1e-6 * (1 + std::abs(fd2)));
  }
}

TEST(Reparam, CcSphereNearTheEnds) {
  const ProfileCurve c = reparam_by_argument(cc_sphere(1.0));
  for (double beta : {kPi / 2 + 1e-6, kPi / 2 + 1e-3, 3 * kPi / 2 - 1e-3, 3 * kPi / 2 - 1e-6})
    EXPECT_NEAR(KoranyiJet::from(c.eval(beta)).beta(), beta, 1e-12);
}

TEST(Reparam, RejectsInvalidProfiles) {
  EXPECT_THROW(reparam_by_argument(touching_zero()), DomainError);
  EXPECT_THROW(reparam_by_argument(turning_argument()), DomainError);
  EXPECT_NO_THROW(reparam_by_argument(rising_height()));
}
