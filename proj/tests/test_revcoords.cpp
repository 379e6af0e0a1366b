#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "heisring/revcoords.hpp"
#include "heisring/ring.hpp"

using namespace heisring;

namespace {

struct Fixture {
  RevolutionRing ring;
  explicit Fixture(const char* name) : ring(catalog(name, 1.0), 1.0, 2.0) {}
};

RevPoint random_rev(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> xi(-1.0, 1.5), beta(kPi / 2 + 1e-3, 3 * kPi / 2 - 1e-3),
      phi(0.0, 2 * kPi);
  return {xi(rng), beta(rng), phi(rng)};
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

class RevCoords : public ::testing::TestWithParam<const char*> {};

TEST_P(RevCoords, RoundTrip) {
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const RevPoint q = random_rev(rng);
    const RevPoint r = phi_inv(c, phi_map(c, q));
    worst = std::max({worst, std::abs(r.xi - q.xi), std::abs(r.beta - q.beta),
                      std::abs(std::remainder(r.phi - q.phi, 2 * kPi))});
    ASSERT_GE(r.phi, 0.0);
    ASSERT_LT(r.phi, 2 * kPi);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST_P(RevCoords, JacobianMatchesFiniteDifferences) {
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  std::mt19937_64 rng(12);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RevPoint q = random_rev(rng);
    std::array<std::array<double, 3>, 3> m{};
    for (int k = 0; k < 3; ++k) {
      // Five-point stencil; beta may sit 1e-3 from the band edge.
      auto at = [&](double e) {
        RevPoint r = q;
        (k == 0 ? r.xi : k == 1 ? r.beta : r.phi) += e * h;
        return phi_map(c, r);
      };
      const HPoint p2 = at(2), p1 = at(1), m1 = at(-1), m2 = at(-2);
      auto d = [&](auto get) { return (8 * (get(p1) - get(m1)) - (get(p2) - get(m2))) / (12 * h); };
      m[0][k] = d([](const HPoint& p) { return p.x(); });
      m[1][k] = d([](const HPoint& p) { return p.y(); });
      m[2][k] = d([](const HPoint& p) { return p.t; });
    }
    const double J = jacobian(c, q.xi, q.beta);
    worst = std::max(worst, std::abs(std::abs(det3(m)) - J) / J);
  }
  EXPECT_LE(worst, 1e-6);
}

TEST_P(RevCoords, ContactFormIsPullback) {
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const TildeSample v{random_rev(rng), u(rng), u(rng), u(rng)};
    const CurveSample amb = tilde_to_ambient(c, v);
    EXPECT_NEAR(contact_rev(c, v), amb.contact(), 1e-9 * (1 + std::abs(amb.contact())));
    // Completing (dxi, dbeta) horizontally kills both.
    TildeSample w = v;
    w.dphi = horizontal_dphi(c, v.q.beta, v.dxi, v.dbeta);
    EXPECT_NEAR(contact_rev(c, w), 0.0, 1e-9 * (1 + std::abs(amb.contact())));
    EXPECT_NEAR(tilde_to_ambient(c, w).residual(), 0.0, 1e-9);
    EXPECT_NEAR(horizontality_residual(c, {w}), 0.0, 1e-15);
  }
}

TEST_P(RevCoords, ChainRuleMatchesFiniteDifferences) {
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const RevPoint q = random_rev(rng);
    const TildeSample v{q, u(rng), u(rng), u(rng)};
    auto at = [&](double e) { return phi_map(c, {q.xi + e * v.dxi, q.beta + e * v.dbeta, q.phi + e * v.dphi}); };
    const HPoint A = at(h), B = at(-h);
    const CurveSample s = tilde_to_ambient(c, v);
    EXPECT_NEAR(std::abs(s.dz - (A.z - B.z) / (2 * h)), 0.0, 1e-6 * (1 + std::abs(s.dz)));
    EXPECT_NEAR(s.dt, (A.t - B.t) / (2 * h), 1e-6 * (1 + std::abs(s.dt)));
  }
}

TEST_P(RevCoords, HorizontalSpeedMatchesFiniteDifferences) {
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RevPoint q = random_rev(rng);
    const double dxi = u(rng), dbeta = u(rng);
    const double dphi = horizontal_dphi(c, q.beta, dxi, dbeta);
    auto at = [&](double e) { return phi_map(c, {q.xi + e * dxi, q.beta + e * dbeta, q.phi + e * dphi}); };
    const double fd = std::abs((at(h).z - at(-h).z) / (2 * h));
    const double v = horizontal_speed(c, q, dxi, dbeta);
    worst = std::max(worst, std::abs(v - fd) / std::max(fd, 1e-3));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST_P(RevCoords, BoxVolume) {
  // Volume of the ring: 2 pi (b^4 - a^4)/4 int |p*|^2 dbeta. The beta integral
  // is checked against the ambient form: for the Koranyi sphere |p*| = 1.
  const Fixture fx(GetParam());
  const ProfileCurve& c = fx.ring.profile();
  const Box box = Box::ring(1.0, std::exp(1.0));
  const QuadResult vol = integrate_over_box(c, [](const RevPoint&) { return 1.0; }, box, 1e-10);
  const QuadResult vol_phi = integrate_over_box(c, [](const RevPoint&) { return 1.0; }, box, 1e-10, true);
  EXPECT_NEAR(vol.value, vol_phi.value, 1e-9 * vol.value);
  if (std::string(GetParam()) == "koranyi")
    EXPECT_NEAR(vol.value, 2 * kPi * kPi * (std::exp(4.0) - 1) / 4, 1e-9 * vol.value);
  // Scaling in xi: shifting the box by log 2 multiplies by 16.
  const QuadResult shifted = integrate_over_box(c, [](const RevPoint&) { return 1.0; },
                                                Box::ring(2.0, 2 * std::exp(1.0)), 1e-10, true);
  EXPECT_NEAR(shifted.value / vol_phi.value, 16.0, 1e-8);
  // A phi-dependent integrand averages correctly.
  const QuadResult cos2 =
      integrate_over_box(c, [](const RevPoint& q) { return 2 * std::pow(std::cos(q.phi), 2); }, box, 1e-9);
  EXPECT_NEAR(cos2.value, vol.value, 1e-8 * vol.value);
}

INSTANTIATE_TEST_SUITE_P(Catalog, RevCoords, ::testing::Values("koranyi", "bubble", "cc"));

TEST(RevCoordsErrors, AxisAndBand) {
  const RevolutionRing ring(koranyi_sphere(1.0), 1.0, 2.0);
  const ProfileCurve& c = ring.profile();
  EXPECT_THROW(phi_inv(c, {{0.0, 0.0}, 1.0}), DomainError);
  EXPECT_THROW(phi_inv(bubble_set(1.0), {{1.0, 0.0}, 1.0}), DomainError);
  EXPECT_THROW(horizontal_dphi(c, kPi / 2, 1.0, 0.0), DomainError);
  EXPECT_EQ(pstar_closed(c, kPi / 2), cplx(0.0, 1.0));
  EXPECT_EQ(pstar_closed(c, 3 * kPi / 2), cplx(0.0, -1.0));
  EXPECT_THROW(pstar_closed(c, 0.0), DomainError);
  const HPoint top = phi_map(c, {0.0, kPi / 2, 0.3});
  EXPECT_EQ(top.z, cplx(0.0, 0.0));
  EXPECT_DOUBLE_EQ(top.t, 1.0);
  EXPECT_THROW(Box::ring(2.0, 1.0), DomainError);
}
