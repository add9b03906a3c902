#pragma once

#include "purcell/decay.hpp"
#include "purcell/greens.hpp"
#include "purcell/medium.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace purcell {

// Heaviside-Larmor rotation angle. Field pairs rotate for any theta; the
// medium and noise transforms only exist for multiples of pi/2.
struct DualityAngle {
  double theta = 0.0;

  static DualityAngle quarter() { return {0.5 * 3.14159265358979323846}; }

  // theta / (pi/2) reduced to {0, 1, 2, 3}. Throws UnsupportedAngleError when
  // theta is not a multiple of pi/2 (a general angle needs a magneto-electric
  // response).
  int quarter_turns() const;
};

using Vector3cd = Eigen::Vector3cd;

// (a, b) -> (cos a + sin b, -sin a + cos b). Exact at quarter turns.
std::pair<Vector3cd, Vector3cd> rotate_pair(DualityAngle theta,
                                            const Vector3cd &a,
                                            const Vector3cd &b);

// Re(E^* . D + H^* . B) and E x H, both unchanged by rotate_pair applied to
// (E, H) and (D, B).
double energy_density(const Vector3cd &E, const Vector3cd &H,
                      const Vector3cd &D, const Vector3cd &B);
Vector3cd poynting(const Vector3cd &E, const Vector3cd &H);

// Noise pair in the mu-tied convention: rotates like a field pair.
std::pair<complex, complex> transform_noise_option1(DualityAngle theta,
                                                    complex p, complex m);

// ---------------------------------------------------------------------------
// Quarter-turn transform tables acting on labels.

enum class Quantity { E, H, D, B, d, m, eps, mu, P_N, M_NH, M_NB, f_e, f_m };

std::string_view to_string(Quantity q);

// Symbolic multipliers, resolved against the sample the table acts on.
enum class Multiplier {
  One,
  MinusOne,
  Mu,                   // mu
  MinusInvEps,          // -1/eps
  MinusIPhaseMu,        // -i mu/|mu|
  MinusIPhaseInvEps,    // -i |eps|/eps
};

std::string_view to_string(Multiplier m);

complex resolve(Multiplier m, const MediumSample &sample);

struct TransformRule {
  Quantity target;
  Multiplier multiplier;
};

struct ResolvedRule {
  Quantity target;
  complex multiplier;
};

class TransformTable {
public:
  explicit TransformTable(std::map<Quantity, TransformRule> rules);

  bool contains(Quantity q) const { return m_rules.count(q) != 0; }
  const TransformRule &rule(Quantity q) const;
  const std::map<Quantity, TransformRule> &rules() const { return m_rules; }

  // Image of q, with the multiplier evaluated on the original sample.
  ResolvedRule apply(Quantity q, const MediumSample &sample) const;

  // Two quarter turns. The second step acts on the image medium, so its
  // multiplier is evaluated on dual_medium(sample).
  ResolvedRule apply_twice(Quantity q, const MediumSample &sample) const;

  // True when every multiplier is +-1, i.e. a pure rotation.
  bool pure_rotation() const;

private:
  std::map<Quantity, TransformRule> m_rules;
};

// mu-tied noise: everything rotates, P_N -> M_NH -> -P_N, f_e -> f_m -> -f_e.
TransformTable transform_table_option1();

// 1/mu-tied noise: fields rotate, noise and polariton rules carry medium
// dependent factors. The f rules are those of the Conventional phase.
TransformTable transform_table_option2();

// The f_e and f_m images forced by P_N -> mu M_NB and M_NB -> -P_N/eps once a
// phase convention fixes the OptionB map: f_e -> alpha_e f_m, f_m -> alpha_m
// f_e. Conventional reproduces the table; DualSymmetric gives (1, -1).
// Requires Im eps > 0 and Im mu > 0.
std::pair<ResolvedRule, ResolvedRule>
implied_polariton_rules(const MediumSample &sample, PhaseConvention phase);

// ---------------------------------------------------------------------------
// Expectation-level check of the 1/mu-tied local-field decomposition
//   |(mu+2)/3|^2 <HH> + |mu|^2/9 <M_NB M_NB> + 2 Re[((mu+2)/9) mu^* <H M_NB>]
// against the electric counterpart
//   |(eps+2)/3|^2 <EE> + 1/9 <P_N P_N> + 2 Re[((eps+2)/9) <E P_N>].
// Every value is a rate (2 pi m^2 times the averaged coefficient).

struct DualityTerm {
  std::string name;
  double magnetic_on_dual = 0.0; // magnetic term assembled on dual_medium(s)
  double table_image = 0.0;      // table multipliers applied to electric parts on s
  double electric = 0.0;         // electric term on s
  double table_residual = 0.0;   // |table_image - electric|, relative
  double swap_residual = 0.0;    // |magnetic_on_dual - electric|, relative
};

struct DualityReport {
  std::vector<DualityTerm> terms;
  double gamma_local_dual = 0.0;  // gamma_local on dual_medium(s)
  double gamma_electric = 0.0;    // electric local-field rate on s
  double rate_residual = 0.0;     // relative
  bool table_is_pure_rotation = false;
  double max_residual() const;
};

DualityReport verify_expectation_duality(const MediumSample &sample,
                                         const AveragingSphere &sphere,
                                         const Dipole &dipole);

} // namespace purcell
