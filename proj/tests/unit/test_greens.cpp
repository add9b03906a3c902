#include "helpers.hpp"

#include "purcell/diagnostics.hpp"
#include "purcell/greens.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <numbers>

using namespace purcell;
using testing_support::paper;
using testing_support::rel;

namespace {
constexpr double pi = std::numbers::pi;
const complex I{0.0, 1.0};
} // namespace

TEST_CASE("averaging sphere") {
  CHECK_THROWS_AS(AveragingSphere(0.0), DomainError);
  CHECK_THROWS_AS(AveragingSphere(-1.0), DomainError);
  const AveragingSphere s(0.3);
  const double rs = s.sphere_radius();
  CHECK(rel(rs * rs * rs, 3.0 * 0.027 / (4.0 * pi)) < 1e-14);
  CHECK(rel(AveragingSphere::from_sphere_radius(rs).R(), 0.3) < 1e-14);
}

TEST_CASE("small-separation tensor") {
  const auto v = sample(MediumModel::vacuum(), 1.0);
  const auto g = greens_smallrho(Eigen::Vector3d(0.01, 0.0, 0.0), v);
  CHECK(std::abs(g(0, 0) - complex{7.95774715459, 0.0530516476973}) < 1e-10);
  CHECK(std::abs(g(1, 1) - complex{1.0 / (4.0 * pi * 0.02), 2.0 / (12.0 * pi)}) < 1e-12);
  CHECK(g(0, 1) == complex{0.0, 0.0});

  const Eigen::Vector3d rho(0.003, -0.002, 0.005);
  const auto s = paper(0.7);
  const auto t = greens_smallrho(rho, s);
  CHECK((t - t.transpose()).norm() == 0.0);

  auto doubled = s;
  doubled.eps *= 2.0;
  CHECK((greens_smallrho(rho, doubled) - 2.0 * t).norm() < 1e-12 * t.norm());

  CHECK_THROWS_AS(greens_smallrho(Eigen::Vector3d::Zero(), s), DomainError);
  ScopedWarningCapture capture;
  (void)greens_smallrho(Eigen::Vector3d(0.5, 0.0, 0.0), s);
  CHECK(capture.count() == 1);
}

TEST_CASE("k-space mode") {
  const auto v = sample(MediumModel::vacuum(), 1.0);
  CHECK(rel(greens_kmode(2.0, v), complex{1.0 / 3.0, 0.0}) < 1e-15);
  CHECK_THROWS_AS(greens_kmode(1.0, v), SingularModeError);
  CHECK_THROWS_AS(greens_kmode(-1.0, v), DomainError);
  const auto s = paper(1.0);
  CHECK(rel(greens_kmode(1.0, s), s.eps / (1.0 - s.eps * s.mu)) < 1e-15);
  const double k = 1e6;
  CHECK(rel(greens_kmode(k, s) * k * k, s.eps) < 1e-10);
}

TEST_CASE("averaged Green's function, analytic") {
  const auto v = sample(MediumModel::vacuum(), 1.0);
  const auto g = averaged_greens_analytic(v, AveragingSphere(0.1));
  CHECK(rel(g.coeff, complex{20.0, 1.0} / (6.0 * pi)) < 1e-15);
  for (double R : {0.001, 0.01, 0.2}) {
    for (double w : {0.3, 1.0, 1.4}) {
      const auto vw = sample(MediumModel::vacuum(), w);
      CHECK(rel(averaged_greens_analytic(vw, AveragingSphere(R)).coeff.imag(),
                w / (6.0 * pi)) < 1e-12);
    }
  }
  const auto s = paper(1.0);
  CHECK_THROWS_AS(averaged_greens_analytic(s, AveragingSphere(1.0)), DomainError);
  ScopedWarningCapture capture;
  (void)averaged_greens_analytic(s, AveragingSphere(0.4));
  CHECK(capture.count() == 1);
}

TEST_CASE("electric Green's function is the swapped magnetic one") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uw(0.05, 1.5);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample(testing_support::random_medium(rng), uw(rng));
    const AveragingSphere sphere(0.01 / s.omega);
    CHECK(rel(averaged_greens_analytic(dual_medium(s), sphere).coeff,
              averaged_electric_greens_analytic(s, sphere).coeff) < 1e-15);
  }
}

TEST_CASE("radial oracle for the near-field average") {
  // The difference of two normalised Gaussians has weight (1/R^3) exp(-pi rho^2/R^2).
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (double R : {0.01, 0.05, 0.3}) {
    auto inv_rho = [R](double r) {
      return std::exp(-pi * r * r / (R * R)) / (R * R * R) * 4.0 * pi * r;
    };
    const double mean = GK::integrate(inv_rho, 0.0, 20.0 * R, 15, 1e-13);
    CHECK(rel(mean, 2.0 / R) < 1e-12);
  }
  // Isotropic part of the small-separation tensor averaged with that weight
  // gives the analytic averaged coefficient exactly.
  const auto s = paper(0.9);
  const double R = 0.05;
  auto trace = [&](double r, int part) {
    const auto t = greens_smallrho(Eigen::Vector3d(0.0, r, 0.0), s);
    const complex v = t.trace() / 3.0;
    const double w = std::exp(-pi * r * r / (R * R)) / (R * R * R) * 4.0 * pi * r * r;
    return part == 0 ? w * v.real() : w * v.imag();
  };
  ScopedWarningCapture quiet;
  const double re = GK::integrate([&](double r) { return trace(r, 0); }, 0.0, 20.0 * R, 15, 1e-13);
  const double im = GK::integrate([&](double r) { return trace(r, 1); }, 0.0, 20.0 * R, 15, 1e-13);
  const complex analytic = averaged_greens_analytic(s, AveragingSphere(R)).coeff;
  CHECK(rel(complex{re, im}, analytic) < 1e-11);
}

TEST_CASE("k-space quadrature against frozen high-precision values") {
  struct Case {
    double w, R;
    complex expected;
  };
  // mpmath, 30 digits, same integral.
  const Case cases[] = {
      {1.0, 0.05, {2.0188295613444544, 2.6741775628084879}},
      {0.5, 0.05, {2.811531862089632, 0.13310391053368043}},
      {0.2, 0.02, {6.6840012909060692, 0.07299829014471097}},
  };
  for (const auto &c : cases) {
    const auto q = averaged_greens_quadrature(paper(c.w), AveragingSphere(c.R));
    CHECK(rel(q.coeff, c.expected) < 1e-8);
    CHECK(q.error_estimate <= 1e-8 * std::abs(q.coeff));
    CHECK(q.tail_bound < 1e-12 * std::abs(q.coeff));
  }
}

TEST_CASE("k-space quadrature in vacuum takes the retarded limit") {
  const auto v = sample(MediumModel::vacuum(), 1.0);
  const AveragingSphere sphere(0.01);
  const auto q = averaged_greens_numeric(v, sphere);
  CHECK(rel(q.coeff, complex{10.610160671716158, 0.053051225527379698}) < 1e-8);
  CHECK(rel(q.coeff, averaged_greens_analytic(v, sphere).coeff) < 1e-3);

  QuadratureOptions strict;
  strict.lossless_limit = false;
  CHECK_THROWS_AS(averaged_greens_numeric(v, sphere, strict), PoleOnContourError);
}

TEST_CASE("k-space quadrature details") {
  const auto s = paper(1.0);
  const AveragingSphere sphere(0.05);
  const auto base = averaged_greens_numeric(s, sphere).coeff;
  // Linear in eps at fixed n.
  auto scaled = s;
  scaled.eps *= 2.0;
  scaled.mu /= 2.0;
  CHECK(rel(averaged_greens_numeric(scaled, sphere).coeff, 2.0 * base) < 1e-9);
  // Analytic agreement at the figure scale.
  CHECK(rel(base, averaged_greens_analytic(s, sphere).coeff) < 0.02);

  QuadratureOptions impossible;
  impossible.rel_tol = 1e-30;
  CHECK_THROWS_AS(averaged_greens_quadrature(s, sphere, impossible), NumericError);
}

TEST_CASE("delta averages") {
  const auto d1 = averaged_delta(AveragingSphere(1.0));
  CHECK(d1.transverse == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d1.longitudinal == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(d1.total == 1.0);
  const auto d2 = averaged_delta(AveragingSphere(2.0));
  CHECK(d2.transverse == 1.0 / 12.0);
  CHECK(d2.longitudinal == 1.0 / 24.0);
  CHECK(d2.total == 1.0 / 8.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uR(1e-3, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto d = averaged_delta(AveragingSphere(uR(rng)));
    CHECK(d.transverse + d.longitudinal == d.total);
    CHECK(d.transverse == 2.0 * d.longitudinal);
  }
}

TEST_CASE("per-mode identity") {
  // Im[eps (k^2 - w^2 eps^* mu^*)] = k^2 Im eps + w^2 |eps|^2 Im mu, term by term.
  const auto s = paper(1.0);
  const double k = 0.5;
  const complex lhs = s.eps * (k * k - s.omega * s.omega * std::conj(s.eps * s.mu));
  const double rhs = k * k * s.eps.imag() + std::norm(s.eps) * s.mu.imag();
  CHECK(rel(lhs.imag(), rhs) < 1e-15);
  CHECK(std::abs(greens_identity_check(k, s)) <
        1e-12 * std::abs(greens_kmode(k, s).imag()));

  const auto v = sample(MediumModel::vacuum(), 1.0);
  CHECK(greens_identity_check(3.0, v) == 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uw(0.05, 1.5), uk(0.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const auto r = sample(testing_support::random_medium(rng), uw(rng));
    const double kk = uk(rng);
    CHECK(std::abs(greens_identity_check(kk, r)) <
          1e-12 * std::abs(greens_kmode(kk, r).imag()));
  }
}
