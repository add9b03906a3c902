#pragma once

#include <complex>
#include <vector>

namespace purcell {

using complex = std::complex<double>;

// All frequencies are in units of the reference (electric) resonance w_Te and
// lengths in units of c / w_Te. Conversion to physical units lives in the CLI.

// One damped Lorentz resonance, contributing
//   -omega_L^2 / (w^2 - omega_T^2 + 2 i gamma w)
// to eps - 1 (or mu - 1).
class LorentzOscillator {
public:
  // Throws DomainError unless gamma > 0, omega_T > 0 and omega_L >= 0.
  LorentzOscillator(double omega_L, double omega_T, double gamma);

  double omega_L() const { return m_omega_L; }
  double omega_T() const { return m_omega_T; }
  double gamma() const { return m_gamma; }

  complex susceptibility(double omega) const;

private:
  double m_omega_L;
  double m_omega_T;
  double m_gamma;
};

// Homogeneous isotropic magneto-dielectric. Empty lists mean a vacuum
// response in that channel.
struct MediumModel {
  std::vector<LorentzOscillator> electric;
  std::vector<LorentzOscillator> magnetic;

  static MediumModel vacuum() { return {}; }

  // Electric resonance at w_Te (w_Le = w_Te/2, gamma_e = w_Te/10) and a
  // weaker magnetic resonance at w_Te/2 (w_Lm = w_Te/8, gamma_m = w_Te/10).
  static MediumModel example_medium();
};

// (eps, mu, n) at one frequency. Build through sample() or from_response()
// so that n is always on the passive branch.
struct MediumSample {
  double omega = 1.0;
  complex eps{1.0, 0.0};
  complex mu{1.0, 0.0};
  complex n{1.0, 0.0};

  // Computes n with refractive_index(). Throws DomainError for omega <= 0.
  static MediumSample from_response(double omega, complex eps, complex mu);

  bool passive() const { return eps.imag() >= 0.0 && mu.imag() >= 0.0; }
  bool lossless() const { return eps.imag() == 0.0 && mu.imag() == 0.0; }

  friend bool operator==(const MediumSample &, const MediumSample &) = default;
};

complex eval_permittivity(const MediumModel &model, double omega);
complex eval_permeability(const MediumModel &model, double omega);

// sqrt(eps mu) with Im n >= 0. The principal root is flipped when it lands in
// the lower half plane, so a passive double-negative medium gets Re n < 0.
// Lossless points where the product alone cannot fix the branch (eps mu real
// and negative, or eps and mu both real and negative) emit a warning.
// Throws SingularMediumError when eps mu == 0.
complex refractive_index(complex eps, complex mu);

MediumSample sample(const MediumModel &model, double omega);

// Quarter-turn duality image: eps and mu exchanged, n untouched.
MediumSample dual_medium(const MediumSample &s);

} // namespace purcell
