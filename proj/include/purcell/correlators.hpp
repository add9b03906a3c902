#pragma once

#include "purcell/greens.hpp"
#include "purcell/medium.hpp"

#include <Eigen/Core>

#include <optional>
#include <string_view>

namespace purcell {

// Whether the noise magnetisation is tied to mu (M_{N,H}) or to 1/mu
// (M_{N,B}, entering the induction as mu M_{N,B}).
enum class NoiseConvention { OptionH, OptionB };

// Phase of the OptionB map from polaritons to noise magnetisation:
// sqrt(Im mu)/|mu| (Conventional) or i sqrt(Im mu)/mu (DualSymmetric).
// OptionH has a single map and ignores this.
enum class PhaseConvention { Conventional, DualSymmetric };

enum class CorrelatorKind {
  NoisePolarisation,  // <P_N P_N^+>
  NoiseMagnetisation, // <M_N M_N^+>
  HH,
  HNoiseCross,        // <H M_{N,H}^+>, or mu^* <H M_{N,B}^+>
  BB,
  LocalField,         // <H_loc H_loc^+> = <B_loc B_loc^+>
  EE,
  ENoiseCross,        // <E P_N^+>
  DD,
  ElectricLocalField, // <E_loc E_loc^+>
};

std::string_view to_string(CorrelatorKind kind);
std::string_view to_string(NoiseConvention conv);
std::string_view to_string(PhaseConvention phase);

// Scalar c in <X_i(r, w) Y_j^+(r', w')> = c delta_ij delta(w - w') after the
// spatial average (R set) or as a density multiplying delta(r - r') (R empty).
// The frequency delta is always stripped.
struct CorrelatorCoefficient {
  complex value;
  CorrelatorKind kind;
  double omega;
  std::optional<double> R;
};

// Fluctuation-dissipation densities.
CorrelatorCoefficient noise_polarisation_cc(const MediumSample &sample);
CorrelatorCoefficient noise_magnetisation_cc(const MediumSample &sample,
                                             NoiseConvention conv);

// Diagonal map (f_e, f_m) -> (P_N, M_N), including the 1/sqrt(pi).
Eigen::Matrix2cd polariton_map(const MediumSample &sample, NoiseConvention conv,
                               PhaseConvention phase);

// Noise second moments read off a polariton map: |map_ii|^2.
CorrelatorCoefficient noise_polarisation_from_map(const MediumSample &sample,
                                                  const Eigen::Matrix2cd &map);
CorrelatorCoefficient noise_magnetisation_from_map(const MediumSample &sample,
                                                   const Eigen::Matrix2cd &map);

// Averaged magnetic-coupling correlators in closed form, transverse parts only.
CorrelatorCoefficient hh_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere);
CorrelatorCoefficient bb_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere);

// OptionH: (w^2/pi) Im mu <G>. OptionB: mu^* <H M_{N,B}^+> assembled from the
// polariton map of the requested phase.
CorrelatorCoefficient
h_mnoise_cross_cc(const MediumSample &sample, const AveragingSphere &sphere,
                  NoiseConvention conv,
                  PhaseConvention phase = PhaseConvention::DualSymmetric);

// Clausius-Mossotti local field. OptionH evaluates the closed decomposition
// directly; OptionB assembles the weights |mu|^2/9 and ((mu+2)/9) mu^* term by
// term from the polariton map.
CorrelatorCoefficient
local_field_cc_averaged(const MediumSample &sample, const AveragingSphere &sphere,
                        NoiseConvention conv,
                        PhaseConvention phase = PhaseConvention::DualSymmetric);

// ---------------------------------------------------------------------------
// Term-by-term assembly from the polariton maps.
//
// The field H is sourced by w^2 s M_N - i w eps^{-1} curl P_N with s = 1
// (OptionH) or s = mu (OptionB). Its averaged auto-correlator is split by
// source channel:
//   <HH^+> = w^4 |s|^2 |c_M|^2 J_M + w^2 |c_P|^2 |eps|^{-2} J_P,
// where c_P, c_M are the map entries and J_M, J_P the Gaussian-averaged
// k-space integrals of |g|^2 and k^2 |g|^2 (small-R forms). The per-mode
// Green's identity turns this into (w^2/pi) Im <G>; here it is computed the
// long way. A lossless sample has no noise channels and falls back to the
// absorption -> 0 limit, which is the radiative term (w^2/pi) Im <G>.

enum class Coupling { H, B, Local };

std::string_view to_string(Coupling coupling);

// X = field * H + noise * M_N for the coupling and convention.
struct FieldWeights {
  complex field;
  complex noise;
};
FieldWeights coupling_weights(Coupling coupling, const MediumSample &sample,
                              NoiseConvention conv);

// Averaged auto-correlator split by how it scales with R.
struct ScalingSplit {
  double far = 0.0;    // R^0
  double inv_r = 0.0;  // 1/R
  double inv_r3 = 0.0; // 1/R^3
  double total() const { return far + inv_r + inv_r3; }
};

ScalingSplit hh_assembled_split(const MediumSample &sample,
                                const AveragingSphere &sphere,
                                NoiseConvention conv, PhaseConvention phase);

CorrelatorCoefficient hh_cc_assembled(const MediumSample &sample,
                                      const AveragingSphere &sphere,
                                      NoiseConvention conv,
                                      PhaseConvention phase);

ScalingSplit assemble_auto_cc(Coupling coupling, const MediumSample &sample,
                              const AveragingSphere &sphere,
                              NoiseConvention conv, PhaseConvention phase);

// ---------------------------------------------------------------------------
// Electric-coupling correlators, written directly in terms of the electric
// Green's function (mu/6pi)(2/R + i n w) and P_N. Used as the reference side
// of duality checks.

CorrelatorCoefficient ee_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere);
CorrelatorCoefficient e_pnoise_cross_cc(const MediumSample &sample,
                                        const AveragingSphere &sphere);
CorrelatorCoefficient dd_cc_averaged(const MediumSample &sample,
                                     const AveragingSphere &sphere);
CorrelatorCoefficient
electric_local_field_cc_averaged(const MediumSample &sample,
                                 const AveragingSphere &sphere);

} // namespace purcell
