#include "purcell/cli/sweep.hpp"

#include "purcell/diagnostics.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace purcell::cli {

namespace {

using nlohmann::json;

constexpr double pi = std::numbers::pi;
constexpr double kAngstromPerNm = 10.0;

[[noreturn]] void schema_error(std::string_view origin, const std::string &what) {
  std::ostringstream msg;
  msg << origin << ": " << what;
  throw DomainError(msg.str());
}

void reject_unknown(const json &obj, std::initializer_list<std::string_view> keys,
                    std::string_view where, std::string_view origin) {
  for (const auto &item : obj.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      schema_error(origin, "unknown key '" + item.key() + "' in " + std::string(where));
  }
}

double number(const json &obj, const char *key, std::string_view where,
              std::string_view origin) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    schema_error(origin, std::string(where) + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

std::vector<LorentzOscillator> oscillators(const json &list, std::string_view where,
                                           std::string_view origin) {
  if (!list.is_array())
    schema_error(origin, std::string(where) + " must be an array of oscillators");
  std::vector<LorentzOscillator> out;
  for (const auto &o : list) {
    if (!o.is_object())
      schema_error(origin, std::string(where) + " entries must be objects");
    reject_unknown(o, {"omega_L", "omega_T", "gamma"}, where, origin);
    try {
      out.emplace_back(number(o, "omega_L", where, origin),
                       number(o, "omega_T", where, origin),
                       number(o, "gamma", where, origin));
    } catch (const DomainError &e) {
      schema_error(origin, std::string(where) + ": " + e.what());
    }
  }
  return out;
}

SweepCoupling parse_coupling(const std::string &name, std::string_view origin) {
  if (name == "H") return SweepCoupling::H;
  if (name == "B") return SweepCoupling::B;
  if (name == "Local") return SweepCoupling::Local;
  if (name == "ElectricLocal") return SweepCoupling::ElectricLocal;
  schema_error(origin, "unknown coupling '" + name +
                           "' (expected H, B, Local or ElectricLocal)");
}

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

DecayResult evaluate(SweepCoupling coupling, const Dipole &dipole,
                     const MediumSample &s, const AveragingSphere &sphere,
                     NoiseConvention conv) {
  const auto phase = PhaseConvention::DualSymmetric;
  switch (coupling) {
  case SweepCoupling::H:
    return gamma_from_correlators(dipole, s, sphere, Coupling::H, conv, phase);
  case SweepCoupling::B:
    return gamma_from_correlators(dipole, s, sphere, Coupling::B, conv, phase);
  case SweepCoupling::Local:
    return gamma_from_correlators(dipole, s, sphere, Coupling::Local, conv, phase);
  case SweepCoupling::ElectricLocal:
    return electric_dual(
        [conv, phase](const Dipole &d, const MediumSample &x,
                      const AveragingSphere &r) {
          return gamma_from_correlators(d, x, r, Coupling::Local, conv, phase);
        },
        dipole, s, sphere);
  }
  throw DomainError("unknown coupling");
}

std::ofstream open_output(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::ostringstream msg;
    msg << "cannot open '" << path.string() << "' for writing";
    throw std::runtime_error(msg.str());
  }
  return out;
}

void close_output(std::ofstream &out, const std::filesystem::path &path) {
  out.flush();
  if (!out) {
    std::ostringstream msg;
    msg << "write to '" << path.string() << "' failed";
    throw std::runtime_error(msg.str());
  }
}

} // namespace

std::string_view to_string(SweepCoupling c) {
  switch (c) {
  case SweepCoupling::H: return "H";
  case SweepCoupling::B: return "B";
  case SweepCoupling::Local: return "Local";
  case SweepCoupling::ElectricLocal: return "ElectricLocal";
  }
  return "?";
}

std::vector<double> OmegaGrid::points() const {
  std::vector<double> out(count);
  const double h = step();
  for (std::size_t i = 0; i < count; ++i)
    out[i] = min + h * static_cast<double>(i);
  if (count > 1)
    out.back() = max;
  return out;
}

void SweepConfig::validate() const {
  if (schema_version != 1)
    throw DomainError("unsupported schema_version " + std::to_string(schema_version));
  if (omega_grid.count < 2)
    throw DomainError("omega_grid.count must be >= 2");
  if (!(omega_grid.min > 0.0) || !(omega_grid.max > omega_grid.min) ||
      !std::isfinite(omega_grid.max))
    throw DomainError("omega_grid needs 0 < min < max");
  if (radii.values.empty())
    throw DomainError("radii list is empty");
  for (double r : radii.values)
    if (!(r > 0.0) || !std::isfinite(r))
      throw DomainError("radii values must be positive");
  if (!(lambda_Te_nm > 0.0) || !std::isfinite(lambda_Te_nm))
    throw DomainError("lambda_Te_nm must be positive");
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("m must be positive");
  if (couplings.empty())
    throw DomainError("couplings list is empty");
}

SweepConfig parse_config(std::string_view json_text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    schema_error(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    schema_error(origin, "top level must be an object");
  reject_unknown(doc,
                 {"schema_version", "medium", "lambda_Te_nm", "radii",
                  "omega_grid", "couplings", "convention", "m", "comment"},
                 "config", origin);

  SweepConfig c;
  if (doc.contains("schema_version")) {
    if (!doc["schema_version"].is_number_integer())
      schema_error(origin, "schema_version must be an integer");
    c.schema_version = doc["schema_version"].get<int>();
  }
  if (doc.contains("medium")) {
    const auto &m = doc["medium"];
    if (!m.is_object())
      schema_error(origin, "medium must be an object");
    reject_unknown(m, {"electric", "magnetic"}, "medium", origin);
    c.medium = MediumModel{};
    if (m.contains("electric"))
      c.medium.electric = oscillators(m["electric"], "medium.electric", origin);
    if (m.contains("magnetic"))
      c.medium.magnetic = oscillators(m["magnetic"], "medium.magnetic", origin);
  }
  if (doc.contains("lambda_Te_nm"))
    c.lambda_Te_nm = number(doc, "lambda_Te_nm", "config", origin);
  if (doc.contains("radii")) {
    const auto &r = doc["radii"];
    if (!r.is_object() || r.size() != 1)
      schema_error(origin, "radii must hold exactly one of 'targets' or 'angstrom'");
    reject_unknown(r, {"targets", "angstrom"}, "radii", origin);
    c.radii.kind = r.contains("targets") ? RadiiSpec::Kind::Targets
                                         : RadiiSpec::Kind::Angstrom;
    const auto &list = r.begin().value();
    if (!list.is_array())
      schema_error(origin, "radii values must be an array of numbers");
    c.radii.values.clear();
    for (const auto &v : list) {
      if (!v.is_number())
        schema_error(origin, "radii values must be numbers");
      c.radii.values.push_back(v.get<double>());
    }
  }
  if (doc.contains("omega_grid")) {
    const auto &g = doc["omega_grid"];
    if (!g.is_object())
      schema_error(origin, "omega_grid must be an object");
    reject_unknown(g, {"min", "max", "count"}, "omega_grid", origin);
    if (g.contains("min"))
      c.omega_grid.min = number(g, "min", "omega_grid", origin);
    if (g.contains("max"))
      c.omega_grid.max = number(g, "max", "omega_grid", origin);
    if (g.contains("count")) {
      if (!g["count"].is_number_unsigned())
        schema_error(origin, "omega_grid.count must be a non-negative integer");
      c.omega_grid.count = g["count"].get<std::size_t>();
    }
  }
  if (doc.contains("couplings")) {
    const auto &list = doc["couplings"];
    if (!list.is_array())
      schema_error(origin, "couplings must be an array");
    c.couplings.clear();
    std::set<SweepCoupling> seen;
    for (const auto &v : list) {
      if (!v.is_string())
        schema_error(origin, "couplings entries must be strings");
      const auto cp = parse_coupling(v.get<std::string>(), origin);
      if (!seen.insert(cp).second)
        schema_error(origin, "coupling '" + v.get<std::string>() + "' listed twice");
      c.couplings.push_back(cp);
    }
  }
  if (doc.contains("convention")) {
    const auto &v = doc["convention"];
    const std::string name = v.is_string() ? v.get<std::string>() : "";
    if (name == "OptionH")
      c.convention = NoiseConvention::OptionH;
    else if (name == "OptionB")
      c.convention = NoiseConvention::OptionB;
    else
      schema_error(origin, "convention must be \"OptionH\" or \"OptionB\"");
  }
  if (doc.contains("m"))
    c.m = number(doc, "m", "config", origin);

  try {
    c.validate();
  } catch (const DomainError &e) {
    schema_error(origin, e.what());
  }
  return c;
}

SweepConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::ostringstream msg;
    msg << "cannot open config '" << path.string() << "'";
    throw std::runtime_error(msg.str());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

RadiusConversion convert_radius(double target, const MediumSample &at_Te,
                                double lambda_Te_nm) {
  if (!(target > 0.0) || !std::isfinite(target))
    throw DomainError("convert_radius: target must be positive");
  if (!(lambda_Te_nm > 0.0))
    throw DomainError("convert_radius: lambda_Te must be positive");
  RadiusConversion r;
  r.target = target;
  r.R_sphere = target / (std::abs(at_Te.n) * at_Te.omega);
  // One natural length unit is c / w_Te = lambda_Te / (2 pi).
  r.R_sphere_angstrom = r.R_sphere * lambda_Te_nm * kAngstromPerNm / (2.0 * pi);
  r.R = AveragingSphere::from_sphere_radius(r.R_sphere).R();
  return r;
}

RadiusConversion radius_from_angstrom(double R_sphere_angstrom,
                                      const MediumSample &at_Te,
                                      double lambda_Te_nm) {
  if (!(R_sphere_angstrom > 0.0))
    throw DomainError("radius_from_angstrom: radius must be positive");
  RadiusConversion r;
  r.R_sphere_angstrom = R_sphere_angstrom;
  r.R_sphere = R_sphere_angstrom * 2.0 * pi / (lambda_Te_nm * kAngstromPerNm);
  r.target = std::abs(at_Te.n) * at_Te.omega * r.R_sphere;
  r.R = AveragingSphere::from_sphere_radius(r.R_sphere).R();
  return r;
}

std::vector<RadiusConversion> resolve_radii(const SweepConfig &config) {
  const MediumSample at_Te = sample(config.medium, 1.0);
  std::vector<RadiusConversion> out;
  for (double v : config.radii.values) {
    out.push_back(config.radii.kind == RadiiSpec::Kind::Targets
                      ? convert_radius(v, at_Te, config.lambda_Te_nm)
                      : radius_from_angstrom(v, at_Te, config.lambda_Te_nm));
  }
  return out;
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("PURCELL_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      n = static_cast<unsigned>(std::min<long>(v, 256));
  }
  return n;
}

std::vector<SweepRow> run_sweep(const SweepConfig &config) {
  config.validate();
  const auto omegas = config.omega_grid.points();
  const auto radii = resolve_radii(config);
  const std::size_t per_omega = radii.size() * config.couplings.size();
  std::vector<std::optional<SweepRow>> slots(omegas.size() * per_omega);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::size_t> error_index;
  std::string error_text;


  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= omegas.size())
        return;
      const double w = omegas[i];
      for (std::size_t r = 0; r < radii.size(); ++r) {
        for (std::size_t c = 0; c < config.couplings.size(); ++c) {
          const auto coupling = config.couplings[c];
          try {
            const MediumSample s = sample(config.medium, w);
            const Dipole dipole(config.m, w);
            const AveragingSphere sphere(radii[r].R);
            auto result = evaluate(coupling, dipole, s, sphere, config.convention);
            if (!std::isfinite(result.gamma_total))
              throw NumericError("non-finite decay rate");
            slots[(i * radii.size() + r) * config.couplings.size() + c] =
                SweepRow{w, radii[r].R_sphere_angstrom, coupling, result};
          } catch (const std::exception &e) {
            std::lock_guard lock(error_mutex);
            const std::size_t idx =
                (i * radii.size() + r) * config.couplings.size() + c;
            if (!error_index || idx < *error_index) {
              error_index = idx;
              std::ostringstream msg;
              msg << "sweep point omega=" << format_g12(w)
                  << " R_sphere=" << format_g12(radii[r].R_sphere_angstrom)
                  << " A coupling=" << to_string(coupling) << ": " << e.what();
              error_text = msg.str();
            }
          }
        }
      }
    }
  };

  const unsigned n_threads =
      std::min<unsigned>(sweep_threads(), static_cast<unsigned>(omegas.size()));
  int warnings = 0;
  std::string first_warning;
  {
    // Per-point warnings are collected and summarised once.
    ScopedWarningCapture capture;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
      worker();
    }
    warnings = capture.count();
    first_warning = capture.text().substr(0, capture.text().find('\n'));
  }
  if (warnings > 0) {
    std::ostringstream msg;
    msg << "sweep: " << warnings << " point warning(s), first: " << first_warning;
    warn(msg.str());
  }

  if (error_index)
    throw DomainError(error_text);

  std::vector<SweepRow> rows;
  rows.reserve(slots.size());
  for (auto &slot : slots)
    rows.push_back(std::move(*slot));
  return rows;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << "omega_over_omegaTe,R_sphere_angstrom,coupling,purcell,far_field,"
         "heating_1overR,dipole_dipole_1overR3\n";
  for (const auto &row : rows) {
    const auto &r = row.result;
    const double g0 = r.gamma_0;
    out << format_g12(row.omega) << ',' << format_g12(row.R_sphere_angstrom)
        << ',' << to_string(row.coupling) << ',' << format_g12(r.purcell) << ','
        << format_g12(r.channels.far_field / g0) << ','
        << format_g12(r.channels.heating_1overR / g0) << ','
        << format_g12(r.channels.dipole_dipole_1overR3 / g0) << '\n';
  }
}

void emit_csv(const std::vector<SweepRow> &rows,
              const std::filesystem::path &path) {
  auto out = open_output(path);
  write_csv(out, rows);
  close_output(out, path);
}

std::vector<DispersionRow> run_dispersion(const SweepConfig &config) {
  config.validate();
  std::vector<DispersionRow> rows;
  for (double w : config.omega_grid.points())
    rows.push_back({w, sample(config.medium, w)});
  return rows;
}

void write_dispersion_csv(std::ostream &out,
                          const std::vector<DispersionRow> &rows) {
  out << "omega_over_omegaTe,eps_re,eps_im,mu_re,mu_im,n_re,n_im\n";
  for (const auto &row : rows) {
    const auto &s = row.sample;
    out << format_g12(row.omega) << ',' << format_g12(s.eps.real()) << ','
        << format_g12(s.eps.imag()) << ',' << format_g12(s.mu.real()) << ','
        << format_g12(s.mu.imag()) << ',' << format_g12(s.n.real()) << ','
        << format_g12(s.n.imag()) << '\n';
  }
}

void emit_dispersion_csv(const std::vector<DispersionRow> &rows,
                         const std::filesystem::path &path) {
  auto out = open_output(path);
  write_dispersion_csv(out, rows);
  close_output(out, path);
}

void write_radii_table(std::ostream &out, const SweepConfig &config) {
  const MediumSample at_Te = sample(config.medium, 1.0);
  char line[160];
  std::snprintf(line, sizeof line, "lambda_Te = %g nm, |n(w_Te)| = %.6f\n",
                config.lambda_Te_nm, std::abs(at_Te.n));
  out << line;
  out << "target |n w R_sphere|   R_sphere [A]   R_sphere [c/w_Te]   R [c/w_Te]\n";
  for (const auto &r : resolve_radii(config)) {
    std::snprintf(line, sizeof line, "%20.6g   %12.4f   %17.6e   %10.6e\n",
                  r.target, r.R_sphere_angstrom, r.R_sphere, r.R);
    out << line;
  }
}

} // namespace purcell::cli
