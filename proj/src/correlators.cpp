#include "purcell/correlators.hpp"

#include "purcell/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace purcell {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

void require_passive(const MediumSample &s, const char *what) {
  if (!s.passive()) {
    std::ostringstream msg;
    msg << what << ": sample is not passive (eps=" << s.eps << ", mu=" << s.mu
        << ")";
    throw DomainError(msg.str());
  }
}

CorrelatorCoefficient density(complex value, CorrelatorKind kind,
                              const MediumSample &s) {
  return {value, kind, s.omega, std::nullopt};
}

CorrelatorCoefficient averaged(complex value, CorrelatorKind kind,
                               const MediumSample &s,
                               const AveragingSphere &sphere) {
  return {value, kind, s.omega, sphere.R()};
}

// Source factor of M_N in the equation for H.
complex magnetic_source_factor(const MediumSample &s, NoiseConvention conv) {
  return conv == NoiseConvention::OptionH ? complex{1.0, 0.0} : s.mu;
}

} // namespace

std::string_view to_string(CorrelatorKind kind) {
  switch (kind) {
  case CorrelatorKind::NoisePolarisation: return "PN_PN";
  case CorrelatorKind::NoiseMagnetisation: return "MN_MN";
  case CorrelatorKind::HH: return "H_H";
  case CorrelatorKind::HNoiseCross: return "H_MN";
  case CorrelatorKind::BB: return "B_B";
  case CorrelatorKind::LocalField: return "Hloc_Hloc";
  case CorrelatorKind::EE: return "E_E";
  case CorrelatorKind::ENoiseCross: return "E_PN";
  case CorrelatorKind::DD: return "D_D";
  case CorrelatorKind::ElectricLocalField: return "Eloc_Eloc";
  }
  return "?";
}

std::string_view to_string(NoiseConvention conv) {
  return conv == NoiseConvention::OptionH ? "OptionH" : "OptionB";
}

std::string_view to_string(PhaseConvention phase) {
  return phase == PhaseConvention::Conventional ? "Conventional"
                                                : "DualSymmetric";
}

std::string_view to_string(Coupling coupling) {
  switch (coupling) {
  case Coupling::H: return "H";
  case Coupling::B: return "B";
  case Coupling::Local: return "Local";
  }
  return "?";
}

CorrelatorCoefficient noise_polarisation_cc(const MediumSample &sample) {
  require_passive(sample, "noise_polarisation_cc");
  return density(sample.eps.imag() / pi, CorrelatorKind::NoisePolarisation,
                 sample);
}

CorrelatorCoefficient noise_magnetisation_cc(const MediumSample &sample,
                                             NoiseConvention conv) {
  require_passive(sample, "noise_magnetisation_cc");
  // OptionB is the dissipative part of kappa = 1/mu.
  const double value = conv == NoiseConvention::OptionH
                           ? sample.mu.imag() / pi
                           : -(1.0 / sample.mu).imag() / pi;
  return density(value, CorrelatorKind::NoiseMagnetisation, sample);
}

Eigen::Matrix2cd polariton_map(const MediumSample &sample, NoiseConvention conv,
                               PhaseConvention phase) {
  require_passive(sample, "polariton_map");
  const double root_pi = std::sqrt(pi);
  const double se = std::sqrt(sample.eps.imag());
  const double sm = std::sqrt(sample.mu.imag());

  Eigen::Matrix2cd map = Eigen::Matrix2cd::Zero();
  map(0, 0) = I * se / root_pi;
  if (conv == NoiseConvention::OptionH)
    map(1, 1) = I * sm / root_pi;
  else if (phase == PhaseConvention::Conventional)
    map(1, 1) = sm / std::abs(sample.mu) / root_pi;
  else
    map(1, 1) = I * sm / sample.mu / root_pi;
  return map;
}

CorrelatorCoefficient noise_polarisation_from_map(const MediumSample &sample,
                                                  const Eigen::Matrix2cd &map) {
  return density(std::norm(map(0, 0)), CorrelatorKind::NoisePolarisation,
                 sample);
}

CorrelatorCoefficient noise_magnetisation_from_map(const MediumSample &sample,
                                                   const Eigen::Matrix2cd &map) {
  return density(std::norm(map(1, 1)), CorrelatorKind::NoiseMagnetisation,
                 sample);
}

CorrelatorCoefficient hh_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere) {
  require_passive(sample, "hh_cc_averaged");
  const auto g = averaged_greens_analytic(sample, sphere);
  const double w2 = sample.omega * sample.omega;
  return averaged(w2 / pi * g.coeff.imag(), CorrelatorKind::HH, sample, sphere);
}

CorrelatorCoefficient h_mnoise_cross_cc(const MediumSample &sample,
                                        const AveragingSphere &sphere,
                                        NoiseConvention conv,
                                        PhaseConvention phase) {
  require_passive(sample, "h_mnoise_cross_cc");
  const auto g = averaged_greens_analytic(sample, sphere);
  const double w2 = sample.omega * sample.omega;
  complex value;
  if (conv == NoiseConvention::OptionH) {
    value = w2 / pi * sample.mu.imag() * g.coeff;
  } else {
    const auto map = polariton_map(sample, conv, phase);
    // <H M_B^+> = w^2 mu c_M c_M^* <G>, reported as mu^* <H M_B^+>.
    const complex h_m = w2 * sample.mu * map(1, 1) * std::conj(map(1, 1)) * g.coeff;
    value = std::conj(sample.mu) * h_m;
  }
  return averaged(value, CorrelatorKind::HNoiseCross, sample, sphere);
}

CorrelatorCoefficient bb_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere) {
  require_passive(sample, "bb_cc_averaged");
  const auto g = averaged_greens_analytic(sample, sphere);
  const auto delta = averaged_delta(sphere);
  const double w2 = sample.omega * sample.omega;
  const double im_mu = sample.mu.imag();
  const double hh = hh_cc_averaged(sample, sphere).value.real();
  const double value = std::norm(sample.mu) * hh + im_mu / pi * delta.transverse +
                       2.0 * (sample.mu * (w2 / pi) * im_mu * g.coeff).real();
  return averaged(value, CorrelatorKind::BB, sample, sphere);
}

CorrelatorCoefficient local_field_cc_averaged(const MediumSample &sample,
                                              const AveragingSphere &sphere,
                                              NoiseConvention conv,
                                              PhaseConvention phase) {
  require_passive(sample, "local_field_cc_averaged");
  if (conv == NoiseConvention::OptionB) {
    const auto split = assemble_auto_cc(Coupling::Local, sample, sphere, conv, phase);
    return averaged(split.total(), CorrelatorKind::LocalField, sample, sphere);
  }
  const auto g = averaged_greens_analytic(sample, sphere);
  const auto delta = averaged_delta(sphere);
  const double w2 = sample.omega * sample.omega;
  const double im_mu = sample.mu.imag();
  const complex cm = (sample.mu + 2.0) / 3.0;
  const double hh = hh_cc_averaged(sample, sphere).value.real();
  const double value = std::norm(cm) * hh + im_mu / (9.0 * pi) * delta.transverse +
                       (2.0 / 3.0) * (w2 / pi) * im_mu * (cm * g.coeff).real();
  return averaged(value, CorrelatorKind::LocalField, sample, sphere);
}

FieldWeights coupling_weights(Coupling coupling, const MediumSample &sample,
                              NoiseConvention conv) {
  const complex noise_unit = magnetic_source_factor(sample, conv);
  switch (coupling) {
  case Coupling::H:
    return {1.0, 0.0};
  case Coupling::B:
    return {sample.mu, noise_unit};
  case Coupling::Local:
    return {(sample.mu + 2.0) / 3.0, noise_unit / 3.0};
  }
  throw DomainError("unknown coupling");
}

ScalingSplit hh_assembled_split(const MediumSample &sample,
                                const AveragingSphere &sphere,
                                NoiseConvention conv, PhaseConvention phase) {
  require_passive(sample, "hh_assembled_split");
  const double w = sample.omega;
  const double w2 = w * w;
  const double R = sphere.R();
  ScalingSplit out;

  if (!(sample.n.imag() > 0.0)) {
    // No absorption, no noise: the limit is the radiative pole term.
    const auto g = averaged_greens_analytic(sample, sphere);
    const complex near = sample.eps / (6.0 * pi) * (2.0 / R);
    out.inv_r = w2 / pi * near.imag();
    out.far = w2 / pi * (g.coeff - near).imag();
    return out;
  }

  const auto map = polariton_map(sample, conv, phase);
  const double cp2 = std::norm(map(0, 0));
  const double cm2 = std::norm(map(1, 1));
  const double s2 = std::norm(magnetic_source_factor(sample, conv));
  const double abs_eps2 = std::norm(sample.eps);

  const complex q = sample.n * w;
  const complex q2 = q * q;
  const double im_q = q.imag();

  // Gaussian-averaged transverse integrals, small-R forms:
  //   J_M = (1/3pi^2) int k^2 |g|^2 dk          = |eps|^2 / (12 pi Im q)
  //   J_P = (1/3pi^2) int k^4 W |g|^2 dk
  //       = (|eps|^2 / 3pi) [1/R + Re(q^2)/(4 Im q) - Im(q)/2]
  const double j_m = abs_eps2 / (12.0 * pi * im_q);
  const double j_p_near = abs_eps2 / (3.0 * pi * R);
  const double j_p_far =
      abs_eps2 / (3.0 * pi) * (q2.real() / (4.0 * im_q) - im_q / 2.0);

  const double magnetic = w2 * w2 * s2 * cm2 * j_m;
  const double electric_scale = w2 * cp2 / abs_eps2;
  out.far = magnetic + electric_scale * j_p_far;
  out.inv_r = electric_scale * j_p_near;
  return out;
}

CorrelatorCoefficient hh_cc_assembled(const MediumSample &sample,
                                      const AveragingSphere &sphere,
                                      NoiseConvention conv,
                                      PhaseConvention phase) {
  const auto split = hh_assembled_split(sample, sphere, conv, phase);
  return averaged(split.total(), CorrelatorKind::HH, sample, sphere);
}

ScalingSplit assemble_auto_cc(Coupling coupling, const MediumSample &sample,
                              const AveragingSphere &sphere,
                              NoiseConvention conv, PhaseConvention phase) {
  require_passive(sample, "assemble_auto_cc");
  const auto weights = coupling_weights(coupling, sample, conv);
  const auto hh = hh_assembled_split(sample, sphere, conv, phase);
  const auto map = polariton_map(sample, conv, phase);
  const auto delta = averaged_delta(sphere);
  const double w2 = sample.omega * sample.omega;
  const double R = sphere.R();

  const complex g_near = sample.eps / (6.0 * pi) * (2.0 / R);
  const complex g_far = sample.eps / (6.0 * pi) * (I * sample.n * sample.omega);

  // <H M_N^+> = w^2 s c_M c_M^* <G>
  const complex hm_unit =
      w2 * magnetic_source_factor(sample, conv) * map(1, 1) * std::conj(map(1, 1));
  const complex cross_weight = weights.field * std::conj(weights.noise);
  const double field2 = std::norm(weights.field);

  ScalingSplit out;
  out.far = field2 * hh.far + 2.0 * (cross_weight * hm_unit * g_far).real();
  out.inv_r = field2 * hh.inv_r + 2.0 * (cross_weight * hm_unit * g_near).real();
  out.inv_r3 = std::norm(weights.noise) * std::norm(map(1, 1)) * delta.transverse;
  return out;
}

CorrelatorCoefficient ee_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere) {
  require_passive(sample, "ee_cc_averaged");
  const auto ge = averaged_electric_greens_analytic(sample, sphere);
  const double w2 = sample.omega * sample.omega;
  return averaged(w2 / pi * ge.coeff.imag(), CorrelatorKind::EE, sample, sphere);
}

CorrelatorCoefficient e_pnoise_cross_cc(const MediumSample &sample,
                                        const AveragingSphere &sphere) {
  require_passive(sample, "e_pnoise_cross_cc");
  const auto ge = averaged_electric_greens_analytic(sample, sphere);
  const double w2 = sample.omega * sample.omega;
  return averaged(w2 / pi * sample.eps.imag() * ge.coeff,
                  CorrelatorKind::ENoiseCross, sample, sphere);
}

CorrelatorCoefficient dd_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere) {
  require_passive(sample, "dd_cc_averaged");
  const double ee = ee_cc_averaged(sample, sphere).value.real();
  const complex ep = e_pnoise_cross_cc(sample, sphere).value;
  const auto delta = averaged_delta(sphere);
  const double value = std::norm(sample.eps) * ee +
                       sample.eps.imag() / pi * delta.transverse +
                       2.0 * (sample.eps * ep).real();
  return averaged(value, CorrelatorKind::DD, sample, sphere);
}

CorrelatorCoefficient
electric_local_field_cc_averaged(const MediumSample &sample,
                                 const AveragingSphere &sphere) {
  require_passive(sample, "electric_local_field_cc_averaged");
  const double ee = ee_cc_averaged(sample, sphere).value.real();
  const complex ep = e_pnoise_cross_cc(sample, sphere).value;
  const auto delta = averaged_delta(sphere);
  const complex ce = (sample.eps + 2.0) / 3.0;
  const double value = std::norm(ce) * ee +
                       sample.eps.imag() / (9.0 * pi) * delta.transverse +
                       2.0 * ((sample.eps + 2.0) / 9.0 * ep).real();
  return averaged(value, CorrelatorKind::ElectricLocalField, sample, sphere);
}

} // namespace purcell
