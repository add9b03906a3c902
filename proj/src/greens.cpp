#include "purcell/greens.hpp"

#include "purcell/diagnostics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace purcell {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kExpansionWarn = 0.3;

void check_expansion(double n_omega_length, const char *what) {
  if (n_omega_length >= 1.0) {
    std::ostringstream msg;
    msg << what << ": |n w R| = " << n_omega_length
        << " is outside the small-radius expansion (must be < 1)";
    throw DomainError(msg.str());
  }
  if (n_omega_length > kExpansionWarn) {
    std::ostringstream msg;
    msg << what << ": |n w R| = " << n_omega_length
        << " exceeds 0.3, truncation error may be significant";
    warn(msg.str());
  }
}

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

} // namespace

AveragingSphere::AveragingSphere(double R) : m_R(R) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw DomainError("averaging radius must be positive and finite");
}

AveragingSphere AveragingSphere::from_sphere_radius(double R_sphere) {
  if (!(R_sphere > 0.0))
    throw DomainError("sphere radius must be positive");
  return AveragingSphere(R_sphere * std::cbrt(4.0 * pi / 3.0));
}

double AveragingSphere::sphere_radius() const {
  return m_R * std::cbrt(3.0 / (4.0 * pi));
}

Eigen::Matrix3cd greens_smallrho(const Eigen::Vector3d &rho,
                                 const MediumSample &sample) {
  const double r = rho.norm();
  if (!(r > 0.0))
    throw DomainError("greens_smallrho: coincident points, use an average");
  const double nwr = std::abs(sample.n) * sample.omega * r;
  if (nwr > kExpansionWarn) {
    std::ostringstream msg;
    msg << "greens_smallrho: |n w rho| = " << nwr << " exceeds 0.3";
    warn(msg.str());
  }

  const complex prefactor = sample.eps / (4.0 * pi);
  const complex diagonal =
      1.0 / (2.0 * r) + complex{0.0, 2.0 / 3.0} * sample.omega * sample.n;
  Eigen::Matrix3cd g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      complex v = rho[i] * rho[j] / (2.0 * r * r * r);
      if (i == j)
        v += diagonal;
      g(i, j) = prefactor * v;
    }
  }
  return g;
}

complex greens_kmode(double k, const MediumSample &sample) {
  if (!(k >= 0.0))
    throw DomainError("greens_kmode: k must be >= 0");
  const complex denom =
      k * k - sample.omega * sample.omega * sample.eps * sample.mu;
  if (denom == complex{0.0, 0.0}) {
    std::ostringstream msg;
    msg << "greens_kmode: k = " << k << " sits on the dispersion pole";
    throw SingularModeError(msg.str());
  }
  return sample.eps / denom;
}

AveragedGreens averaged_greens_analytic(const MediumSample &sample,
                                        const AveragingSphere &sphere) {
  const double R = sphere.R();
  check_expansion(std::abs(sample.n) * sample.omega * R,
                  "averaged_greens_analytic");
  const complex bracket = 2.0 / R + complex{0.0, 1.0} * sample.n * sample.omega;
  return {sample.eps / (6.0 * pi) * bracket, sample.omega, R};
}

AveragedGreens
averaged_electric_greens_analytic(const MediumSample &sample,
                                  const AveragingSphere &sphere) {
  const double R = sphere.R();
  check_expansion(std::abs(sample.n) * sample.omega * R,
                  "averaged_electric_greens_analytic");
  const complex near = sample.mu * (2.0 / R);
  const complex far = sample.mu * complex{0.0, 1.0} * sample.n * sample.omega;
  return {(near + far) / (6.0 * pi), sample.omega, R};
}

QuadratureResult averaged_greens_quadrature(const MediumSample &sample,
                                            const AveragingSphere &sphere,
                                            const QuadratureOptions &options) {
  const double w = sample.omega;
  const double R = sphere.R();
  const complex q2 = w * w * sample.eps * sample.mu;
  const complex q = sample.n * w;
  const double beta = R * R / (4.0 * pi);
  const double k_max = std::max(20.0 * std::sqrt(4.0 * pi) / R, 10.0 * std::abs(q));
  const double piece_tol = 0.1 * options.rel_tol;

  complex integral{0.0, 0.0};
  double quad_error = 0.0;
  std::size_t pieces = 0;

  auto accumulate = [&](auto &&f, double a, double b) {
    if (!(b > a))
      return;
    double err = 0.0;
    const complex v =
        GaussKronrod::integrate(f, a, b, options.max_depth, piece_tol, &err);
    integral += v;
    quad_error += err;
    ++pieces;
  };

  const bool pole_on_axis = q2.imag() == 0.0 && q2.real() > 0.0;
  if (pole_on_axis) {
    if (!options.lossless_limit) {
      std::ostringstream msg;
      msg << "averaged_greens_numeric: lossless medium puts the pole at k = "
          << std::sqrt(q2.real()) << " on the integration contour";
      throw PoleOnContourError(msg.str());
    }
    // k^2 W / (k^2 - k0^2) = h(k) / (k - k0) with h = k^2 W / (k + k0).
    // Principal value by subtraction over [0, 2 k0], retarded residue added.
    const double k0 = std::sqrt(q2.real());
    auto h = [&](double k) {
      return k * k * std::exp(-beta * k * k) / (k + k0);
    };
    auto dh = [&](double k) {
      const double e = std::exp(-beta * k * k);
      const double s = k + k0;
      return e * ((2.0 * k - 2.0 * beta * k * k * k) * s - k * k) / (s * s);
    };
    const double h0 = h(k0);
    auto subtracted = [&](double k) -> complex {
      const double d = k - k0;
      if (std::abs(d) <= 1e-9 * k0)
        return dh(k0);
      return (h(k) - h0) / d;
    };
    auto outer = [&](double k) -> complex { return h(k) / (k - k0); };
    accumulate(subtracted, 0.0, k0);
    accumulate(subtracted, k0, 2.0 * k0);
    accumulate(outer, 2.0 * k0, k_max);
    integral += complex{0.0, pi * h0};
  } else {
    auto f = [&](double k) -> complex {
      return k * k * std::exp(-beta * k * k) / (k * k - q2);
    };
    // Resolve the near-axis pole at |Re q| (width Im q) with geometric
    // breakpoints on both sides.
    std::vector<double> cuts{0.0, k_max};
    const double kp = std::abs(q.real());
    const double width = std::abs(q.imag());
    if (kp > 0.0 && kp < k_max && width > 0.0) {
      cuts.push_back(kp);
      for (double d = 20.0 * width; d < k_max; d *= 4.0) {
        if (kp - d > 0.0)
          cuts.push_back(kp - d);
        if (kp + d < k_max)
          cuts.push_back(kp + d);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      accumulate(f, cuts[i], cuts[i + 1]);
  }

  double tail = 0.0;
  const double abs_q2 = std::abs(q2);
  if (k_max * k_max > abs_q2) {
    tail = std::exp(-beta * k_max * k_max) / (2.0 * beta * k_max) *
           (k_max * k_max / (k_max * k_max - abs_q2));
  } else {
    tail = std::numeric_limits<double>::infinity();
  }

  const complex prefactor = sample.eps / (3.0 * pi * pi);
  QuadratureResult out;
  out.coeff = prefactor * integral;
  out.tail_bound = std::abs(prefactor) * tail;
  out.error_estimate = std::abs(prefactor) * quad_error + out.tail_bound;
  out.k_max = k_max;
  out.pieces = pieces;

  if (!std::isfinite(out.coeff.real()) || !std::isfinite(out.coeff.imag()) ||
      !(out.error_estimate <= options.rel_tol * std::abs(out.coeff))) {
    std::ostringstream msg;
    msg << "averaged_greens_numeric did not converge: w=" << w << " R=" << R
        << " n=" << sample.n << " value=" << out.coeff
        << " error estimate=" << out.error_estimate
        << " (tail " << out.tail_bound << ", " << pieces << " pieces, k_max "
        << k_max << ")";
    throw NumericError(msg.str());
  }
  return out;
}

AveragedGreens averaged_greens_numeric(const MediumSample &sample,
                                       const AveragingSphere &sphere,
                                       const QuadratureOptions &options) {
  const auto r = averaged_greens_quadrature(sample, sphere, options);
  return {r.coeff, sample.omega, sphere.R()};
}

DeltaAverage averaged_delta(const AveragingSphere &sphere) {
  const double r3 = sphere.R() * sphere.R() * sphere.R();
  const double longitudinal = 1.0 / (3.0 * r3);
  const double transverse = 2.0 * longitudinal;
  return {transverse, longitudinal, transverse + longitudinal};
}

double greens_identity_check(double k, const MediumSample &sample) {
  const complex g = greens_kmode(k, sample);
  const double w2 = sample.omega * sample.omega;
  const double abs_eps2 = std::norm(sample.eps);
  const double weight =
      w2 * sample.mu.imag() + k * k * sample.eps.imag() / abs_eps2;
  return std::norm(g) * weight - g.imag();
}

} // namespace purcell
