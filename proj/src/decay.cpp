#include "purcell/decay.hpp"

#include "purcell/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace purcell {

namespace {

constexpr double pi = std::numbers::pi;

void check_on_shell(const Dipole &dipole, const MediumSample &sample,
                    const char *what) {
  const double scale = std::abs(dipole.omega_A);
  if (std::abs(sample.omega - dipole.omega_A) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << what << ": sample taken at w = " << sample.omega
        << " but the dipole frequency is " << dipole.omega_A;
    throw DomainError(msg.str());
  }
  if (!sample.passive()) {
    std::ostringstream msg;
    msg << what << ": sample is not passive (eps=" << sample.eps
        << ", mu=" << sample.mu << ")";
    throw DomainError(msg.str());
  }
}

DecayResult finish(const Dipole &dipole, const DecayChannels &channels) {
  DecayResult r;
  r.gamma_0 = gamma_0(dipole);
  r.channels = channels;
  r.gamma_total = channels.sum();
  r.purcell = r.gamma_total / r.gamma_0;
  r.kind = dipole.kind;
  return r;
}

// Reduced length w_A R, with the small-radius precondition enforced by the
// averaged Green's function.
double reduced_radius(const MediumSample &sample, const AveragingSphere &sphere) {
  (void)averaged_greens_analytic(sample, sphere);
  return sample.omega * sphere.R();
}

} // namespace

std::string_view to_string(DipoleKind kind) {
  return kind == DipoleKind::Magnetic ? "magnetic" : "electric";
}

Dipole::Dipole(double m_, double omega_A_, DipoleKind kind_)
    : m(m_), omega_A(omega_A_), kind(kind_) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("dipole moment must be positive and finite");
  if (!(omega_A > 0.0) || !std::isfinite(omega_A))
    throw DomainError("dipole frequency must be positive and finite");
}

Dipole Dipole::dual() const {
  return Dipole(m, omega_A,
                kind == DipoleKind::Magnetic ? DipoleKind::Electric
                                             : DipoleKind::Magnetic);
}

double gamma_0(const Dipole &dipole) {
  const double w = dipole.omega_A;
  return dipole.m * dipole.m * w * w * w / (3.0 * pi);
}

DecayResult gamma_H(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere) {
  check_on_shell(dipole, sample, "gamma_H");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  DecayChannels c;
  c.far_field = g0 * (sample.n * sample.eps).real();
  c.heating_1overR = g0 * 2.0 * sample.eps.imag() / x;
  return finish(dipole, c);
}

DecayResult gamma_B(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere) {
  check_on_shell(dipole, sample, "gamma_B");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  const complex n = sample.n;
  const double mu2 = std::norm(sample.mu);
  const double im_mu = sample.mu.imag();
  DecayChannels c;
  // The R-independent cross term is -2 Im mu Im n^3; see docs/averaging.md.
  c.far_field = g0 * (mu2 * (n * sample.eps).real() - 2.0 * im_mu * (n * n * n).imag());
  c.heating_1overR =
      g0 * (mu2 * 2.0 * sample.eps.imag() + 4.0 * im_mu * (n * n).real()) / x;
  c.dipole_dipole_1overR3 = g0 * 4.0 * pi * im_mu / (x * x * x);
  return finish(dipole, c);
}

DecayResult gamma_local(const Dipole &dipole, const MediumSample &sample,
                        const AveragingSphere &sphere, NoiseConvention) {
  check_on_shell(dipole, sample, "gamma_local");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  const complex n = sample.n;
  const complex eps = sample.eps;
  const double cm2 = std::norm((sample.mu + 2.0) / 3.0);
  const double im_mu = sample.mu.imag();
  DecayChannels c;
  c.far_field = g0 * (cm2 * (n * eps).real() -
                      4.0 * im_mu / 9.0 * (n * n * n / 2.0 + n * eps).imag());
  c.heating_1overR = g0 *
                     (cm2 * 2.0 * eps.imag() +
                      4.0 * im_mu / 9.0 * (n * n + 2.0 * eps).real()) /
                     x;
  c.dipole_dipole_1overR3 = g0 * 4.0 * pi * im_mu / (9.0 * x * x * x);
  return finish(dipole, c);
}

DecayResult gamma_from_correlators(const Dipole &dipole,
                                   const MediumSample &sample,
                                   const AveragingSphere &sphere,
                                   Coupling coupling, NoiseConvention conv,
                                   PhaseConvention phase) {
  check_on_shell(dipole, sample, "gamma_from_correlators");
  (void)reduced_radius(sample, sphere);
  const auto split = assemble_auto_cc(coupling, sample, sphere, conv, phase);
  const double scale = 2.0 * pi * dipole.m * dipole.m;
  DecayChannels c;
  c.far_field = scale * split.far;
  c.heating_1overR = scale * split.inv_r;
  c.dipole_dipole_1overR3 = scale * split.inv_r3;
  return finish(dipole, c);
}

DecayResult gamma_H_quadrature(const Dipole &dipole, const MediumSample &sample,
                               const AveragingSphere &sphere,
                               const QuadratureOptions &options) {
  check_on_shell(dipole, sample, "gamma_H_quadrature");
  const auto analytic = gamma_H(dipole, sample, sphere);
  const auto g = averaged_greens_numeric(sample, sphere, options);
  const double w2 = sample.omega * sample.omega;
  const double numeric =
      2.0 * pi * dipole.m * dipole.m * (w2 / pi) * g.coeff.imag();
  DecayChannels c = analytic.channels;
  c.residual = numeric - (c.far_field + c.heating_1overR);
  return finish(dipole, c);
}

DecayResult gamma_E(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere) {
  check_on_shell(dipole, sample, "gamma_E");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  DecayChannels c;
  c.far_field = g0 * (sample.n * sample.mu).real();
  c.heating_1overR = g0 * 2.0 * sample.mu.imag() / x;
  return finish(dipole, c);
}

DecayResult gamma_D(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere) {
  check_on_shell(dipole, sample, "gamma_D");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  const complex n = sample.n;
  const double eps2 = std::norm(sample.eps);
  const double im_eps = sample.eps.imag();
  DecayChannels c;
  c.far_field = g0 * (eps2 * (n * sample.mu).real() - 2.0 * im_eps * (n * n * n).imag());
  c.heating_1overR =
      g0 * (eps2 * 2.0 * sample.mu.imag() + 4.0 * im_eps * (n * n).real()) / x;
  c.dipole_dipole_1overR3 = g0 * 4.0 * pi * im_eps / (x * x * x);
  return finish(dipole, c);
}

DecayResult gamma_electric_local(const Dipole &dipole,
                                 const MediumSample &sample,
                                 const AveragingSphere &sphere) {
  check_on_shell(dipole, sample, "gamma_electric_local");
  const double x = reduced_radius(sample, sphere);
  const double g0 = gamma_0(dipole);
  const complex n = sample.n;
  const complex mu = sample.mu;
  const double ce2 = std::norm((sample.eps + 2.0) / 3.0);
  const double im_eps = sample.eps.imag();
  DecayChannels c;
  c.far_field = g0 * (ce2 * (n * mu).real() -
                      4.0 * im_eps / 9.0 * (n * n * n / 2.0 + n * mu).imag());
  c.heating_1overR = g0 *
                     (ce2 * 2.0 * mu.imag() +
                      4.0 * im_eps / 9.0 * (n * n + 2.0 * mu).real()) /
                     x;
  c.dipole_dipole_1overR3 = g0 * 4.0 * pi * im_eps / (9.0 * x * x * x);
  return finish(dipole, c);
}

DecayResult electric_dual(const RateOperation &op, const Dipole &dipole,
                          const MediumSample &sample,
                          const AveragingSphere &sphere) {
  DecayResult r = op(dipole, dual_medium(sample), sphere);
  r.kind = r.kind == DipoleKind::Magnetic ? DipoleKind::Electric
                                          : DipoleKind::Magnetic;
  return r;
}

RateOperation electric_dual(RateOperation op) {
  return [op = std::move(op)](const Dipole &dipole, const MediumSample &sample,
                              const AveragingSphere &sphere) {
    return electric_dual(op, dipole, sample, sphere);
  };
}

RateOperation closed_form(Coupling coupling, NoiseConvention conv) {
  switch (coupling) {
  case Coupling::H:
    return gamma_H;
  case Coupling::B:
    return gamma_B;
  case Coupling::Local:
    return [conv](const Dipole &d, const MediumSample &s,
                  const AveragingSphere &sphere) {
      return gamma_local(d, s, sphere, conv);
    };
  }
  throw DomainError("unknown coupling");
}

} // namespace purcell
