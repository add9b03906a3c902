#include "purcell/medium.hpp"

#include "purcell/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace purcell {

namespace {

void require_positive_frequency(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    std::ostringstream msg;
    msg << "frequency must be positive and finite, got " << omega;
    throw DomainError(msg.str());
  }
}

complex response(const std::vector<LorentzOscillator> &oscillators,
                 double omega) {
  complex value{1.0, 0.0};
  for (const auto &osc : oscillators)
    value += osc.susceptibility(omega);
  return value;
}

} // namespace

LorentzOscillator::LorentzOscillator(double omega_L, double omega_T,
                                     double gamma)
    : m_omega_L(omega_L), m_omega_T(omega_T), m_gamma(gamma) {
  if (!(gamma > 0.0))
    throw DomainError("Lorentz oscillator damping must be > 0");
  if (!(omega_T > 0.0))
    throw DomainError("Lorentz oscillator resonance must be > 0");
  if (!(omega_L >= 0.0))
    throw DomainError("Lorentz oscillator strength must be >= 0");
}

complex LorentzOscillator::susceptibility(double omega) const {
  const complex denom{omega * omega - m_omega_T * m_omega_T,
                      2.0 * m_gamma * omega};
  return -(m_omega_L * m_omega_L) / denom;
}

MediumModel MediumModel::example_medium() {
  MediumModel m;
  m.electric.emplace_back(0.5, 1.0, 0.1);
  m.magnetic.emplace_back(0.125, 0.5, 0.1);
  return m;
}

complex eval_permittivity(const MediumModel &model, double omega) {
  require_positive_frequency(omega);
  return response(model.electric, omega);
}

complex eval_permeability(const MediumModel &model, double omega) {
  require_positive_frequency(omega);
  return response(model.magnetic, omega);
}

complex refractive_index(complex eps, complex mu) {
  const complex product = eps * mu;
  if (product == complex{0.0, 0.0})
    throw SingularMediumError("eps * mu == 0: refractive index undefined");

  if (product.imag() == 0.0) {
    const double re = product.real();
    if (re > 0.0) {
      if (eps.imag() == 0.0 && mu.imag() == 0.0 && eps.real() < 0.0 &&
          mu.real() < 0.0) {
        std::ostringstream msg;
        msg << "lossless double-negative point eps=" << eps << ", mu=" << mu
            << ": returning n=+" << std::sqrt(re)
            << " (the negative-index branch is not selected)";
        warn(msg.str());
      }
      return {std::sqrt(re), 0.0};
    }
    std::ostringstream msg;
    msg << "lossless point with real negative eps*mu=" << re
        << ": branch chosen as n = i*sqrt(|eps*mu|)";
    warn(msg.str());
    return {0.0, std::sqrt(-re)};
  }

  complex n = std::sqrt(product);
  if (n.imag() < 0.0)
    n = -n;
  return n;
}

MediumSample MediumSample::from_response(double omega, complex eps,
                                         complex mu) {
  require_positive_frequency(omega);
  return MediumSample{omega, eps, mu, refractive_index(eps, mu)};
}

MediumSample sample(const MediumModel &model, double omega) {
  return MediumSample::from_response(omega, eval_permittivity(model, omega),
                                     eval_permeability(model, omega));
}

MediumSample dual_medium(const MediumSample &s) {
  MediumSample out = s;
  std::swap(out.eps, out.mu);
  return out;
}

} // namespace purcell
