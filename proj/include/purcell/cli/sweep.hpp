#pragma once

#include "purcell/correlators.hpp"
#include "purcell/decay.hpp"
#include "purcell/medium.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace purcell::cli {

enum class SweepCoupling { H, B, Local, ElectricLocal };

std::string_view to_string(SweepCoupling c);

struct RadiiSpec {
  enum class Kind { Targets, Angstrom };
  Kind kind = Kind::Targets;
  std::vector<double> values{0.01, 0.03, 0.1};
};

struct OmegaGrid {
  double min = 0.05;
  double max = 1.5;
  std::size_t count = 300;

  // Evenly spaced, endpoints included.
  std::vector<double> points() const;
  double step() const { return (max - min) / static_cast<double>(count - 1); }
};

// Frequencies in units of w_Te. lambda_Te_nm fixes w_Te = 2 pi c / lambda_Te
// and only enters the conversion to angstrom.
struct SweepConfig {
  int schema_version = 1;
  MediumModel medium = MediumModel::example_medium();
  double lambda_Te_nm = 100.0;
  RadiiSpec radii;
  OmegaGrid omega_grid;
  std::vector<SweepCoupling> couplings{SweepCoupling::H, SweepCoupling::B,
                                       SweepCoupling::Local};
  NoiseConvention convention = NoiseConvention::OptionH;
  double m = 1.0;

  // Throws DomainError on a violated invariant.
  void validate() const;
};

// Throws DomainError with the origin (file name) on schema problems.
SweepConfig parse_config(std::string_view json_text,
                         std::string_view origin = "<config>");
SweepConfig load_config(const std::filesystem::path &path);

struct RadiusConversion {
  double target;          // |n(w_Te) w_Te R_sphere|
  double R_sphere_angstrom;
  double R_sphere;        // natural units, c / w_Te
  double R;               // Gaussian scale, R^3 = (4 pi / 3) R_sphere^3
};

// Requires target > 0. at_Te must be the sample at w_Te = 1.
RadiusConversion convert_radius(double target, const MediumSample &at_Te,
                                double lambda_Te_nm);

// R_sphere in angstrom back to the same record.
RadiusConversion radius_from_angstrom(double R_sphere_angstrom,
                                      const MediumSample &at_Te,
                                      double lambda_Te_nm);

std::vector<RadiusConversion> resolve_radii(const SweepConfig &config);

struct SweepRow {
  double omega;
  double R_sphere_angstrom;
  SweepCoupling coupling;
  DecayResult result;
};

// Ordered by omega, then radius (config order), then coupling (config order).
// Points are evaluated in parallel; PURCELL_THREADS caps the worker count.
// A DomainError at any point is rethrown naming that point.
std::vector<SweepRow> run_sweep(const SweepConfig &config);

// Header plus one line per row, channels divided by gamma_0, %.12g, LF.
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void emit_csv(const std::vector<SweepRow> &rows,
              const std::filesystem::path &path);

struct DispersionRow {
  double omega;
  MediumSample sample;
};

std::vector<DispersionRow> run_dispersion(const SweepConfig &config);
void write_dispersion_csv(std::ostream &out,
                          const std::vector<DispersionRow> &rows);
void emit_dispersion_csv(const std::vector<DispersionRow> &rows,
                         const std::filesystem::path &path);

// Conversion table for the configured radii.
void write_radii_table(std::ostream &out, const SweepConfig &config);

// Number of worker threads for sweeps.
unsigned sweep_threads();

} // namespace purcell::cli
