#pragma once

#include "purcell/correlators.hpp"
#include "purcell/greens.hpp"
#include "purcell/medium.hpp"

#include <functional>

namespace purcell {

enum class DipoleKind { Magnetic, Electric };

std::string_view to_string(DipoleKind kind);

// Two-level emitter. The position is not stored: every averaged coefficient
// in a homogeneous medium is translation invariant. The moment enters only
// through m^2 (isotropic medium).
struct Dipole {
  double m = 1.0;
  double omega_A = 1.0;
  DipoleKind kind = DipoleKind::Magnetic;

  // Throws DomainError unless m > 0 and omega_A > 0.
  Dipole(double m, double omega_A, DipoleKind kind = DipoleKind::Magnetic);

  Dipole dual() const;
};

// Rates grouped by how they scale with the averaging radius.
struct DecayChannels {
  double far_field = 0.0;             // R^0
  double heating_1overR = 0.0;        // virtual photon absorbed in the medium
  double dipole_dipole_1overR3 = 0.0; // near-field transfer to absorbers
  double residual = 0.0;              // numerical minus analytic, if any
  double sum() const {
    return far_field + heating_1overR + dipole_dipole_1overR3 + residual;
  }
};

struct DecayResult {
  double gamma_total = 0.0;
  double gamma_0 = 0.0;
  double purcell = 0.0;
  DecayChannels channels;
  DipoleKind kind = DipoleKind::Magnetic;
};

// m^2 w_A^3 / (3 pi)
double gamma_0(const Dipole &dipole);

// All rate operations require sample.omega == dipole.omega_A (relative 1e-12)
// and a passive sample; the result carries dipole.kind.

// Coupling to H.
DecayResult gamma_H(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere);

// Coupling to the macroscopic B.
DecayResult gamma_B(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere);

// Clausius-Mossotti local field. The closed form does not depend on the noise
// convention; conv is accepted so call sites read like the assembled path.
DecayResult gamma_local(const Dipole &dipole, const MediumSample &sample,
                        const AveragingSphere &sphere,
                        NoiseConvention conv = NoiseConvention::OptionH);

// 2 pi m^2 times the assembled averaged auto-correlator of the coupling.
DecayResult gamma_from_correlators(const Dipole &dipole,
                                   const MediumSample &sample,
                                   const AveragingSphere &sphere,
                                   Coupling coupling, NoiseConvention conv,
                                   PhaseConvention phase);

// gamma_H with <G> from the k-space quadrature. The analytic channels are
// kept and the difference lands in channels.residual.
DecayResult gamma_H_quadrature(const Dipole &dipole, const MediumSample &sample,
                               const AveragingSphere &sphere,
                               const QuadratureOptions &options = {});

// Electric-dipole rates written out directly (E, D and E_loc couplings).
DecayResult gamma_E(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere);
DecayResult gamma_D(const Dipole &dipole, const MediumSample &sample,
                    const AveragingSphere &sphere);
DecayResult gamma_electric_local(const Dipole &dipole,
                                 const MediumSample &sample,
                                 const AveragingSphere &sphere);

using RateOperation = std::function<DecayResult(
    const Dipole &, const MediumSample &, const AveragingSphere &)>;

// Quarter-turn image of a rate operation: evaluates op on dual_medium(sample)
// and flips the kind of the result, so a magnetic-dipole rate becomes the
// electric-dipole rate in the same medium. electric_dual(electric_dual(op))
// reproduces op.
RateOperation electric_dual(RateOperation op);

DecayResult electric_dual(const RateOperation &op, const Dipole &dipole,
                          const MediumSample &sample,
                          const AveragingSphere &sphere);

// The closed-form operation for a coupling, as a RateOperation.
RateOperation closed_form(Coupling coupling,
                          NoiseConvention conv = NoiseConvention::OptionH);

} // namespace purcell
