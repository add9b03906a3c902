#include "purcell/duality.hpp"

#include "purcell/correlators.hpp"
#include "purcell/diagnostics.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace purcell {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

// Exact cos/sin for quarter turns, library values otherwise.
std::pair<double, double> cos_sin(DualityAngle theta) {
  const double turns = theta.theta / (0.5 * pi);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) <= 1e-14 * std::max(1.0, std::abs(turns))) {
    const long k = ((static_cast<long>(nearest) % 4) + 4) % 4;
    static constexpr double c[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double s[4] = {0.0, 1.0, 0.0, -1.0};
    return {c[k], s[k]};
  }
  return {std::cos(theta.theta), std::sin(theta.theta)};
}

double relative(double a, double b) {
  const double diff = std::abs(a - b);
  if (diff == 0.0)
    return 0.0;
  return diff / std::max(std::abs(a), std::abs(b));
}

} // namespace

int DualityAngle::quarter_turns() const {
  const double turns = theta / (0.5 * pi);
  const double nearest = std::round(turns);
  if (!std::isfinite(theta) ||
      std::abs(turns - nearest) > 1e-12 * std::max(1.0, std::abs(turns))) {
    std::ostringstream msg;
    msg << "duality angle " << theta
        << " is not a multiple of pi/2; medium and noise transforms need a "
           "magneto-electric response for general angles";
    throw UnsupportedAngleError(msg.str());
  }
  return static_cast<int>(((static_cast<long>(nearest) % 4) + 4) % 4);
}

std::pair<Vector3cd, Vector3cd> rotate_pair(DualityAngle theta,
                                            const Vector3cd &a,
                                            const Vector3cd &b) {
  const auto [c, s] = cos_sin(theta);
  return {c * a + s * b, -s * a + c * b};
}

double energy_density(const Vector3cd &E, const Vector3cd &H,
                      const Vector3cd &D, const Vector3cd &B) {
  return (E.dot(D) + H.dot(B)).real();
}

Vector3cd poynting(const Vector3cd &E, const Vector3cd &H) {
  return E.cross(H);
}

std::pair<complex, complex> transform_noise_option1(DualityAngle theta,
                                                    complex p, complex m) {
  switch (theta.quarter_turns()) {
  case 0: return {p, m};
  case 1: return {m, -p};
  case 2: return {-p, -m};
  default: return {-m, p};
  }
}

std::string_view to_string(Quantity q) {
  switch (q) {
  case Quantity::E: return "E";
  case Quantity::H: return "H";
  case Quantity::D: return "D";
  case Quantity::B: return "B";
  case Quantity::d: return "d";
  case Quantity::m: return "m";
  case Quantity::eps: return "eps";
  case Quantity::mu: return "mu";
  case Quantity::P_N: return "P_N";
  case Quantity::M_NH: return "M_NH";
  case Quantity::M_NB: return "M_NB";
  case Quantity::f_e: return "f_e";
  case Quantity::f_m: return "f_m";
  }
  return "?";
}

std::string_view to_string(Multiplier m) {
  switch (m) {
  case Multiplier::One: return "1";
  case Multiplier::MinusOne: return "-1";
  case Multiplier::Mu: return "mu";
  case Multiplier::MinusInvEps: return "-1/eps";
  case Multiplier::MinusIPhaseMu: return "-i mu/|mu|";
  case Multiplier::MinusIPhaseInvEps: return "-i |eps|/eps";
  }
  return "?";
}

complex resolve(Multiplier m, const MediumSample &s) {
  switch (m) {
  case Multiplier::One: return 1.0;
  case Multiplier::MinusOne: return -1.0;
  case Multiplier::Mu: return s.mu;
  case Multiplier::MinusInvEps: return -1.0 / s.eps;
  case Multiplier::MinusIPhaseMu: return -I * s.mu / std::abs(s.mu);
  case Multiplier::MinusIPhaseInvEps: return -I * std::abs(s.eps) / s.eps;
  }
  throw DomainError("unknown multiplier");
}

TransformTable::TransformTable(std::map<Quantity, TransformRule> rules)
    : m_rules(std::move(rules)) {}

const TransformRule &TransformTable::rule(Quantity q) const {
  const auto it = m_rules.find(q);
  if (it == m_rules.end()) {
    std::ostringstream msg;
    msg << "transform table has no rule for " << to_string(q);
    throw DomainError(msg.str());
  }
  return it->second;
}

ResolvedRule TransformTable::apply(Quantity q, const MediumSample &sample) const {
  const auto &r = rule(q);
  return {r.target, resolve(r.multiplier, sample)};
}

ResolvedRule TransformTable::apply_twice(Quantity q,
                                         const MediumSample &sample) const {
  const auto first = apply(q, sample);
  const auto second = apply(first.target, dual_medium(sample));
  return {second.target, first.multiplier * second.multiplier};
}

bool TransformTable::pure_rotation() const {
  return std::all_of(m_rules.begin(), m_rules.end(), [](const auto &kv) {
    const auto m = kv.second.multiplier;
    return m == Multiplier::One || m == Multiplier::MinusOne;
  });
}

namespace {

std::map<Quantity, TransformRule> field_rules() {
  using Q = Quantity;
  using M = Multiplier;
  return {
      {Q::E, {Q::H, M::One}},    {Q::H, {Q::E, M::MinusOne}},
      {Q::D, {Q::B, M::One}},    {Q::B, {Q::D, M::MinusOne}},
      {Q::d, {Q::m, M::One}},    {Q::m, {Q::d, M::MinusOne}},
      {Q::eps, {Q::mu, M::One}}, {Q::mu, {Q::eps, M::One}},
  };
}

} // namespace

TransformTable transform_table_option1() {
  using Q = Quantity;
  using M = Multiplier;
  auto rules = field_rules();
  rules.insert({Q::P_N, {Q::M_NH, M::One}});
  rules.insert({Q::M_NH, {Q::P_N, M::MinusOne}});
  rules.insert({Q::f_e, {Q::f_m, M::One}});
  rules.insert({Q::f_m, {Q::f_e, M::MinusOne}});
  return TransformTable(std::move(rules));
}

TransformTable transform_table_option2() {
  using Q = Quantity;
  using M = Multiplier;
  auto rules = field_rules();
  rules.insert({Q::P_N, {Q::M_NB, M::Mu}});
  rules.insert({Q::M_NB, {Q::P_N, M::MinusInvEps}});
  rules.insert({Q::f_e, {Q::f_m, M::MinusIPhaseMu}});
  rules.insert({Q::f_m, {Q::f_e, M::MinusIPhaseInvEps}});
  return TransformTable(std::move(rules));
}

std::pair<ResolvedRule, ResolvedRule>
implied_polariton_rules(const MediumSample &sample, PhaseConvention phase) {
  if (!(sample.eps.imag() > 0.0) || !(sample.mu.imag() > 0.0))
    throw DomainError(
        "implied_polariton_rules: needs Im eps > 0 and Im mu > 0");
  const MediumSample dual = dual_medium(sample);
  const auto map = polariton_map(sample, NoiseConvention::OptionB, phase);
  const auto map_dual = polariton_map(dual, NoiseConvention::OptionB, phase);
  // P_N* = c_P(s*) f_e* must equal mu M_NB = mu c_M(s) f_m, and
  // M_NB* = c_M(s*) f_m* must equal -P_N/eps = -c_P(s) f_e / eps.
  const complex alpha_e = sample.mu * map(1, 1) / map_dual(0, 0);
  const complex alpha_m = -map(0, 0) / (sample.eps * map_dual(1, 1));
  return {{Quantity::f_m, alpha_e}, {Quantity::f_e, alpha_m}};
}

double DualityReport::max_residual() const {
  double worst = rate_residual;
  for (const auto &t : terms)
    worst = std::max({worst, t.table_residual, t.swap_residual});
  return worst;
}

DualityReport verify_expectation_duality(const MediumSample &sample,
                                         const AveragingSphere &sphere,
                                         const Dipole &dipole) {
  const auto conv = NoiseConvention::OptionB;
  const auto phase = PhaseConvention::DualSymmetric;
  const MediumSample dual = dual_medium(sample);
  const double scale = 2.0 * pi * dipole.m * dipole.m;
  const auto delta = averaged_delta(sphere);
  const TransformTable table = transform_table_option2();

  // Magnetic side assembled on the image medium.
  const complex mu_d = dual.mu;
  const double hh_d = hh_cc_assembled(dual, sphere, conv, phase).value.real();
  const auto map_d = polariton_map(dual, conv, phase);
  const double mm_d = std::norm(map_d(1, 1)) * delta.transverse;
  const complex hm_d = h_mnoise_cross_cc(dual, sphere, conv, phase).value; // mu^* <H M_NB>

  const double mag_hh = std::norm((mu_d + 2.0) / 3.0) * hh_d;
  const double mag_mm = std::norm(mu_d) / 9.0 * mm_d;
  const double mag_hm = 2.0 * ((mu_d + 2.0) / 9.0 * hm_d).real();

  // Electric correlators on the original medium.
  const double ee = ee_cc_averaged(sample, sphere).value.real();
  const double pp = noise_polarisation_cc(sample).value.real() * delta.transverse;
  const complex ep = e_pnoise_cross_cc(sample, sphere).value;

  const complex ce = (sample.eps + 2.0) / 3.0;
  const double ele_hh = std::norm(ce) * ee;
  const double ele_mm = pp / 9.0;
  const double ele_hm = 2.0 * ((sample.eps + 2.0) / 9.0 * ep).real();

  // Table image: each magnetic operator in the image world is replaced by
  // its rule, the coefficient functions take the image medium's mu (= eps).
  const auto h_img = table.apply(Quantity::H, sample);   // H* = -E
  const auto mnb_img = table.apply(Quantity::M_NB, sample); // M_NB* = -P_N/eps
  if (h_img.target != Quantity::E || mnb_img.target != Quantity::P_N)
    throw DomainError("verify_expectation_duality: unexpected table targets");

  const double img_hh = std::norm((mu_d + 2.0) / 3.0) * std::norm(h_img.multiplier) * ee;
  const double img_mm = std::norm(mu_d) / 9.0 * std::norm(mnb_img.multiplier) * pp;
  const double img_hm =
      2.0 * ((mu_d + 2.0) / 9.0 * std::conj(mu_d) * h_img.multiplier *
             std::conj(mnb_img.multiplier) * ep)
                .real();

  DualityReport report;
  auto add = [&](const char *name, double mag, double img, double ele) {
    DualityTerm t;
    t.name = name;
    t.magnetic_on_dual = scale * mag;
    t.table_image = scale * img;
    t.electric = scale * ele;
    t.table_residual = relative(t.table_image, t.electric);
    t.swap_residual = relative(t.magnetic_on_dual, t.electric);
    report.terms.push_back(t);
  };
  add("field", mag_hh, img_hh, ele_hh);
  add("noise", mag_mm, img_mm, ele_mm);
  add("cross", mag_hm, img_hm, ele_hm);

  const Dipole magnetic(dipole.m, dipole.omega_A, DipoleKind::Magnetic);
  const Dipole electric(dipole.m, dipole.omega_A, DipoleKind::Electric);
  report.gamma_local_dual = gamma_local(magnetic, dual, sphere, conv).gamma_total;
  report.gamma_electric = gamma_electric_local(electric, sample, sphere).gamma_total;
  report.rate_residual = relative(report.gamma_local_dual, report.gamma_electric);
  report.table_is_pure_rotation = table.pure_rotation();
  return report;
}

} // namespace purcell
