#include "purcell/cli/verify.hpp"

#include "purcell/diagnostics.hpp"
#include "purcell/duality.hpp"
#include "purcell/greens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace purcell::cli {

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) {
  const double d = std::abs(a - b);
  return d == 0.0 ? 0.0 : d / std::max(std::abs(a), std::abs(b));
}

// Tracks the worst residual and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::function<std::string()> &describe) {
    if (!(v <= value)) { // also catches NaN
      value = v;
      where = describe();
    }
  }
};

std::string point(double w, double R, std::string_view what) {
  std::ostringstream s;
  s << what << " at w=" << w << ", R=" << R;
  return s.str();
}

template <typename F>
void for_each_point(const SweepConfig &config, F &&f) {
  const auto radii = resolve_radii(config);
  for (double w : config.omega_grid.points()) {
    const MediumSample s = sample(config.medium, w);
    for (const auto &r : radii)
      f(s, AveragingSphere(r.R));
  }
}

SuiteResult finish(std::string name, const Worst &worst, double tol) {
  SuiteResult r;
  r.name = std::move(name);
  r.worst = worst.value;
  r.tolerance = tol;
  r.passed = worst.value <= tol;
  r.detail = worst.where;
  return r;
}

SuiteResult duality_suite(const SweepConfig &config) {
  Worst worst;
  for_each_point(config, [&](const MediumSample &s, const AveragingSphere &sphere) {
    const Dipole d(config.m, s.omega);
    const auto report = verify_expectation_duality(s, sphere, d);
    for (const auto &t : report.terms) {
      worst.update(t.table_residual,
                   [&] { return point(s.omega, sphere.R(), t.name + " term, table"); });
      worst.update(t.swap_residual,
                   [&] { return point(s.omega, sphere.R(), t.name + " term, swap"); });
    }
    worst.update(report.rate_residual,
                 [&] { return point(s.omega, sphere.R(), "local-field rate"); });
    const auto twice = electric_dual(electric_dual(closed_form(Coupling::Local)))(d, s, sphere);
    const auto direct = gamma_local(d, s, sphere);
    worst.update(rel(twice.gamma_total, direct.gamma_total),
                 [&] { return point(s.omega, sphere.R(), "involution"); });
  });
  return finish("duality", worst, 1e-12);
}

SuiteResult conventions_suite(const SweepConfig &config) {
  Worst worst;
  const Coupling couplings[] = {Coupling::H, Coupling::B, Coupling::Local};
  for_each_point(config, [&](const MediumSample &s, const AveragingSphere &sphere) {
    const Dipole d(config.m, s.omega);
    for (auto c : couplings) {
      const double h = gamma_from_correlators(d, s, sphere, c, NoiseConvention::OptionH,
                                              PhaseConvention::DualSymmetric)
                           .gamma_total;
      for (auto phase : {PhaseConvention::DualSymmetric, PhaseConvention::Conventional}) {
        const double b =
            gamma_from_correlators(d, s, sphere, c, NoiseConvention::OptionB, phase)
                .gamma_total;
        worst.update(rel(h, b), [&] {
          return point(s.omega, sphere.R(),
                       std::string(to_string(c)) + " OptionH/OptionB-" +
                           std::string(to_string(phase)));
        });
      }
      const double closed = closed_form(c)(d, s, sphere).gamma_total;
      worst.update(rel(h, closed), [&] {
        return point(s.omega, sphere.R(), std::string(to_string(c)) + " closed/assembled");
      });
    }
  });
  return finish("conventions", worst, 1e-12);
}

std::vector<SuiteResult> oracle_suite(const SweepConfig &config) {
  // Two bands of |n w R|, each with its own tolerance.
  Worst tight, loose;
  std::size_t n_tight = 0, n_loose = 0;
  for_each_point(config, [&](const MediumSample &s, const AveragingSphere &sphere) {
    const double x = std::abs(s.n) * s.omega * sphere.R();
    if (x > 0.1)
      return;
    const auto analytic = averaged_greens_analytic(s, sphere).coeff;
    const auto numeric = averaged_greens_numeric(s, sphere).coeff;
    const double d = std::abs(analytic - numeric) / std::abs(numeric);
    auto describe = [&] {
      std::ostringstream o;
      o << "|nwR|=" << x << " at w=" << s.omega;
      return o.str();
    };
    if (x <= 0.03) {
      ++n_tight;
      tight.update(d, describe);
    }
    ++n_loose;
    loose.update(d, describe);
  });
  auto a = finish("oracle |nwR|<=0.03", tight, 0.02);
  auto b = finish("oracle |nwR|<=0.1", loose, 0.10);
  a.detail += " (" + std::to_string(n_tight) + " points)";
  b.detail += " (" + std::to_string(n_loose) + " points)";
  return {a, b};
}

SuiteResult identities_suite(const SweepConfig &config) {
  Worst worst;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uw(0.05, 1.5), uk(0.0, 10.0),
      uL(0.05, 1.0), uT(0.2, 1.5), ug(0.01, 0.3);
  for (int i = 0; i < 1000; ++i) {
    MediumModel m;
    m.electric.emplace_back(uL(rng), uT(rng), ug(rng));
    m.magnetic.emplace_back(uL(rng), uT(rng), ug(rng));
    const double w = uw(rng);
    const double k = uk(rng);
    const MediumSample s = sample(m, w);
    const double im_g = greens_kmode(k, s).imag();
    const double r = std::abs(greens_identity_check(k, s)) / std::abs(im_g);
    worst.update(r, [&] {
      std::ostringstream o;
      o << "Green's identity, sample " << i;
      return o.str();
    });
  }
  // Channel assembly against the closed correlator, and the vacuum point.
  for_each_point(config, [&](const MediumSample &s, const AveragingSphere &sphere) {
    for (auto conv : {NoiseConvention::OptionH, NoiseConvention::OptionB}) {
      const double a =
          hh_cc_assembled(s, sphere, conv, PhaseConvention::DualSymmetric).value.real();
      const double c = hh_cc_averaged(s, sphere).value.real();
      worst.update(rel(a, c), [&] { return point(s.omega, sphere.R(), "HH assembly"); });
    }
    const MediumSample vac = MediumSample::from_response(s.omega, 1.0, 1.0);
    const Dipole d(config.m, s.omega);
    const double g0 = gamma_0(d);
    for (auto c : {Coupling::H, Coupling::B, Coupling::Local})
      worst.update(rel(closed_form(c)(d, vac, sphere).gamma_total, g0),
                   [&] { return point(s.omega, sphere.R(), "vacuum fixed point"); });
  });
  return finish("identities", worst, 1e-12);
}

} // namespace

VerifySuite parse_suite(std::string_view name) {
  if (name == "all") return VerifySuite::All;
  if (name == "duality") return VerifySuite::Duality;
  if (name == "conventions") return VerifySuite::Conventions;
  if (name == "oracle") return VerifySuite::Oracle;
  if (name == "identities") return VerifySuite::Identities;
  throw DomainError("unknown verify suite '" + std::string(name) +
                    "' (all, duality, conventions, oracle, identities)");
}

std::string_view to_string(VerifySuite suite) {
  switch (suite) {
  case VerifySuite::All: return "all";
  case VerifySuite::Duality: return "duality";
  case VerifySuite::Conventions: return "conventions";
  case VerifySuite::Oracle: return "oracle";
  case VerifySuite::Identities: return "identities";
  }
  return "?";
}

std::vector<SuiteResult> run_verify(VerifySuite suite, const SweepConfig &config_in,
                                    const VerifyOptions &options) {
  SweepConfig config = config_in;
  if (options.vacuum)
    config.medium = MediumModel::vacuum();

  std::vector<SuiteResult> out;
  auto guarded = [&](const char *name, auto &&run) {
    try {
      run();
    } catch (const std::exception &e) {
      SuiteResult r;
      r.name = name;
      r.passed = false;
      r.worst = std::numeric_limits<double>::infinity();
      r.detail = std::string("error: ") + e.what();
      out.push_back(r);
    }
  };
  const bool all = suite == VerifySuite::All;
  if (all || suite == VerifySuite::Duality)
    guarded("duality", [&] { out.push_back(duality_suite(config)); });
  if (all || suite == VerifySuite::Conventions)
    guarded("conventions", [&] { out.push_back(conventions_suite(config)); });
  if (all || suite == VerifySuite::Oracle)
    guarded("oracle", [&] {
      for (auto &r : oracle_suite(config))
        out.push_back(r);
    });
  if (all || suite == VerifySuite::Identities)
    guarded("identities", [&] { out.push_back(identities_suite(config)); });
  return out;
}

bool write_verify_report(std::ostream &out, const std::vector<SuiteResult> &results) {
  bool ok = true;
  for (const auto &r : results) {
    char line[128];
    std::snprintf(line, sizeof line, "%-4s %-20s worst %.3e (tol %.0e)",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tolerance);
    out << line;
    if (!r.detail.empty())
      out << "  " << r.detail;
    out << '\n';
    ok = ok && r.passed;
  }
  return ok;
}

} // namespace purcell::cli
