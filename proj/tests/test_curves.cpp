#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "heisring/curves.hpp"
#include "heisring/ring.hpp"

using namespace heisring;

namespace {

double rho_integral(const RevolutionRing& ring, const HorizontalCurve& g) {
  return line_integral([&](const HPoint& p) { return rho0(ring, p); }, g).value;
}

}  // namespace

TEST(Rng, CounterBasedAndUniform) {
  EXPECT_EQ(uniform01(1, 2, 3), uniform01(1, 2, 3));
  EXPECT_NE(uniform01(1, 2, 3), uniform01(1, 2, 4));
  EXPECT_NE(uniform01(1, 2, 3), uniform01(1, 3, 3));
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(42, 0, i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
}

TEST(Quasiradial, KoranyiLengthAndUnitIntegral) {
  const RevolutionRing ring(koranyi_sphere(1.0), 1.0, std::exp(1.0));
  // Speed e^xi / sqrt(-cos beta); at beta = pi the length is e - 1.
  const HorizontalCurve g = quasiradial(ring, kPi, 0.4);
  EXPECT_NEAR(horizontal_length(g), std::exp(1.0) - 1, 1e-12);
  EXPECT_NEAR(rho_integral(ring, g), 1.0, 1e-12);
  const HorizontalCurve h = quasiradial(ring, 2.0, 0.0);
  EXPECT_NEAR(horizontal_length(h), (std::exp(1.0) - 1) / std::sqrt(-std::cos(2.0)), 1e-11);
}

TEST(Quasiradial, UnitIntegralOnEveryRing) {
  for (const char* name : {"koranyi", "bubble", "cc"}) {
    const RevolutionRing ring(catalog(name, 1.0), 0.5, 3.0);
    for (const HorizontalCurve& g : quasiradial_grid(ring, 8, 4)) {
      EXPECT_LE(g.residual_bound(), 1e-10);
      EXPECT_TRUE(connects_boundaries(ring, g));
      EXPECT_NEAR(rho_integral(ring, g), 1.0, 1e-10) << name;
    }
  }
}

TEST(CcLift, UnitSpeedEndsOnTheSphere) {
  for (double R : {0.5, 1.0, 2.0}) {
    const ProfileCurve c = cc_sphere(R);
    for (double k : {-2 * kPi / R + 0.01, -3.0, -0.2, 0.0, 0.2, 1.0, 5.0 / R}) {
      const HorizontalCurve g = cc_lift(k, R, 0.7);
      EXPECT_LE(g.residual_bound(), 1e-12) << "k=" << k;
      EXPECT_NEAR(horizontal_length(g), R, 1e-12 * R);
      EXPECT_EQ(g.front().z, cplx(0.0, 0.0));
      if (k != 0.0) {
        const ProfileJet j = c.eval(k);
        EXPECT_NEAR(std::abs(g.back().z), j.f, 1e-13);
        EXPECT_NEAR(g.back().t, j.g, 1e-13 * (1 + std::abs(j.g)));
      }
      // Velocities by differences of the closed-form positions.
      const auto& s = g.samples();
      const double h = g.step();
      for (std::size_t i = 1; i + 1 < s.size(); i += 101) {
        EXPECT_NEAR(std::abs((s[i + 1].p.z - s[i - 1].p.z) / (2 * h) - s[i].dz), 0.0, 1e-5);
        EXPECT_NEAR((s[i + 1].p.t - s[i - 1].p.t) / (2 * h), s[i].dt, 1e-5 * (1 + std::abs(k)));
      }
    }
  }
}

TEST(CcLift, StraightSegmentAndCcSphereMembership) {
  const HorizontalCurve seg = cc_lift(0.0, 1.0, 0.0);
  EXPECT_NEAR(std::abs(seg.back().z - cplx(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(seg.back().t, 0.0);
  const RevolutionRing ring(cc_sphere(1.0), 0.5, 2.0);
  for (double k : {-4.0, -1.0, 1.0, 4.0}) EXPECT_NEAR(ring.ratio(cc_lift(k, 1.0, 2.0).back()), 1.0, 1e-9);
}

TEST(RandomCurves, HorizontalAndBoundaryConnecting) {
  for (const char* name : {"koranyi", "bubble", "cc"}) {
    const RevolutionRing ring(catalog(name, 1.0), 1.0, 2.0);
    for (const HorizontalCurve& g : random_family(ring, 40, 5)) {
      EXPECT_LE(g.residual_bound(), 1e-8) << name;
      EXPECT_TRUE(connects_boundaries(ring, g));
      for (const TildeSample& q : g.tilde()) {
        ASSERT_GE(q.q.beta, kPi / 2 + kBandMargin * 0.999);
        ASSERT_LE(q.q.beta, 3 * kPi / 2 - kBandMargin * 0.999);
        ASSERT_GT(q.dxi, 0.0);
      }
      EXPECT_LE(horizontality_residual(ring.profile(), g.tilde()), 1e-12);
    }
  }
}

TEST(RandomCurves, Deterministic) {
  const RevolutionRing ring(bubble_set(1.0), 1.0, 2.0);
  const HorizontalCurve a = random_horizontal_curve(ring, 99), b = random_horizontal_curve(ring, 99);
  const HorizontalCurve c = random_horizontal_curve(ring, 100);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.samples()[i].p.z, b.samples()[i].p.z);
    ASSERT_EQ(a.samples()[i].p.t, b.samples()[i].p.t);
  }
  EXPECT_NE(a.samples()[a.size() / 2].p.z, c.samples()[c.size() / 2].p.z);
  const auto f1 = random_family(ring, 3, 7), f2 = random_family(ring, 3, 7);
  EXPECT_EQ(f1[2].back().z, f2[2].back().z);
}

TEST(LineIntegral, AdditiveOverSubcurves) {
  const RevolutionRing ring(cc_sphere(1.0), 1.0, 2.0);
  const HorizontalCurve g = random_horizontal_curve(ring, 3);
  auto rho = [&](const HPoint& p) { return rho0(ring, p); };
  const double whole = line_integral(rho, g).value;
  const std::size_t mid = 512;
  const double parts = line_integral(rho, g.subcurve(0, mid)).value + line_integral(rho, g.subcurve(mid, g.size() - 1)).value;
  EXPECT_NEAR(parts, whole, 1e-13 * whole);
  EXPECT_NEAR(horizontal_length(g.subcurve(0, mid)) + horizontal_length(g.subcurve(mid, g.size() - 1)),
              horizontal_length(g), 1e-12);
}

TEST(LineIntegral, InvariantUnderReparametrization) {
  const RevolutionRing ring(bubble_set(1.0), 1.0, 2.0);
  auto xi = [](Jet t) { return std::log(2.0) * t; };
  auto beta = [](Jet t) { return 2.0 + 1.5 * t * t; };
  const HorizontalCurve g = lift_path(ring, [&](double t) { return xi(Jet::variable(t)); },
                                      [&](double t) { return beta(Jet::variable(t)); }, 0.0);
  // tau -> (3 tau - tau^3)/2 is an increasing bijection of [0, 1].
  auto w = [](double t) { return 0.5 * (3.0 * Jet::variable(t) - Jet::variable(t) * Jet::variable(t) * Jet::variable(t)); };
  const HorizontalCurve h =
      lift_path(ring, [&](double t) { return xi(w(t)); }, [&](double t) { return beta(w(t)); }, 0.0);
  EXPECT_NEAR(rho_integral(ring, h), rho_integral(ring, g), 1e-9);
  EXPECT_NEAR(horizontal_length(h), horizontal_length(g), 1e-9 * horizontal_length(g));
  EXPECT_NEAR(std::abs(h.back().z - g.back().z), 0.0, 1e-8);
}

TEST(LineIntegral, RejectsNonHorizontalCurves) {
  auto vertical = [](double s) {
    CurveSample c;
    c.p = {cplx(1.0, 0.0), s};
    c.dz = 0.0;
    c.dt = 1.0;
    return c;
  };
  const HorizontalCurve g = HorizontalCurve::sample(vertical, 0.0, 1.0, 8, 1e-8);
  EXPECT_FALSE(g.certified());
  EXPECT_THROW(horizontal_length(g), DomainError);
}

// Along a lifted path with xi linear over [log a, log b] and beta linear from
// b0 to b1, rho_0 integrates to
//   (1/Lambda) int_0^1 |Lambda + (L'(beta)/2 + i/2)(b1 - b0)| dtau,  L = log |p*|.
// Where |p*| varies this can drop below 1, so rho_0 is not admissible for
// every boundary-connecting curve of a non-Koranyi ring.
TEST(Admissibility, StraightPathsFallBelowOneOffTheKoranyiSphere) {
  struct Case {
    const char* name;
    double b0, b1;
  };
  for (const Case& cs : {Case{"koranyi", 1.8, 2.3}, Case{"bubble", 1.7808, 2.2508}, Case{"cc", 2.0708, 1.5808}}) {
    const RevolutionRing ring(catalog(cs.name, 1.0), 1.0, 2.0);
    const double lam = ring.log_ratio(), db = cs.b1 - cs.b0;
    const HorizontalCurve g = lift_path(
        ring, [&](double t) { return lam * Jet::variable(t); }, [&](double t) { return cs.b0 + db * Jet::variable(t); },
        0.0);
    ASSERT_TRUE(connects_boundaries(ring, g));
    ASSERT_LE(g.residual_bound(), 1e-10);
    auto dL = [&](double beta) {
      const double h = 1e-5;
      return (std::log(ring.radius(beta + h)) - std::log(ring.radius(beta - h))) / (2 * h);
    };
    const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                              [&](double t) { return std::abs(cplx(lam + 0.5 * dL(cs.b0 + db * t) * db, 0.5 * db)); },
                              0.0, 1.0, 10, 1e-12) /
                          lam;
    const double I = rho_integral(ring, g);
    EXPECT_NEAR(I, oracle, 1e-7) << cs.name;
    if (std::string(cs.name) == "koranyi") EXPECT_GT(I, 1.0);
    else EXPECT_LT(I, 0.95) << cs.name;
  }
}
