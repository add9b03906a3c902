#pragma once

#include "purcell/medium.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace purcell {

// Gaussian regularisation scale. The weight exp(-2 pi r^2 / R^2) (2/R^2)^{3/2}
// is normalised; the equivalent hard sphere has R_sphere^3 = 3 R^3 / (4 pi).
class AveragingSphere {
public:
  // Throws DomainError unless R > 0.
  explicit AveragingSphere(double R);
  static AveragingSphere from_sphere_radius(double R_sphere);

  double R() const { return m_R; }
  double sphere_radius() const;

private:
  double m_R;
};

// <G_ij(0, w)> = coeff * delta_ij
struct AveragedGreens {
  complex coeff;
  double omega;
  double R;
};

// Gaussian self-average of delta_ij delta(0), split into its transverse and
// longitudinal parts.
struct DeltaAverage {
  double transverse;
  double longitudinal;
  double total;
};

// Small-separation form of the transverse magnetic Green's tensor,
//   (eps / 4 pi) [rho_i rho_j / 2 rho^3 + delta_ij / 2 rho + (2i/3) w n delta_ij]
// with the O(rho) remainder dropped. Throws DomainError at rho = 0 and warns
// when |n w rho| > 0.3.
Eigen::Matrix3cd greens_smallrho(const Eigen::Vector3d &rho,
                                 const MediumSample &sample);

// Scalar part g(k) = eps / (k^2 - w^2 eps mu) of the Fourier representation;
// the tensor is g(k) (delta_ij - k_i k_j / k^2). Throws SingularModeError on
// the pole and DomainError for k < 0.
complex greens_kmode(double k, const MediumSample &sample);

// (eps / 6 pi) (2/R + i n w). Warns when |n w R| > 0.3, throws DomainError
// when |n w R| >= 1.
AveragedGreens averaged_greens_analytic(const MediumSample &sample,
                                        const AveragingSphere &sphere);

// Electric counterpart, (mu / 6 pi) (2/R + i n w), written out on its own so
// duality checks have an independent reference.
AveragedGreens averaged_electric_greens_analytic(const MediumSample &sample,
                                                 const AveragingSphere &sphere);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  unsigned max_depth = 15;
  // Lossless media with w^2 eps mu > 0 put the pole on the real k axis. When
  // set, the retarded limit (principal value plus i pi residue) is taken;
  // otherwise PoleOnContourError is thrown.
  bool lossless_limit = true;
};

struct QuadratureResult {
  complex coeff;
  double error_estimate; // quadrature error plus tail bound, absolute
  double tail_bound;
  double k_max;
  std::size_t pieces;
};

// Exact Gaussian double average of the transverse Green's function reduced to
//   coeff = (eps / 3 pi^2) int_0^inf dk k^2 exp(-k^2 R^2 / 4 pi) / (k^2 - w^2 eps mu)
// and integrated by adaptive Gauss-Kronrod. See docs/averaging.md for the
// reduction. Throws NumericError if the requested tolerance is not reached.
QuadratureResult averaged_greens_quadrature(const MediumSample &sample,
                                            const AveragingSphere &sphere,
                                            const QuadratureOptions &options = {});

AveragedGreens averaged_greens_numeric(const MediumSample &sample,
                                       const AveragingSphere &sphere,
                                       const QuadratureOptions &options = {});

DeltaAverage averaged_delta(const AveragingSphere &sphere);

// Per-mode form of the imaginary-part integral relation,
//   |g|^2 (w^2 Im mu + k^2 Im eps / |eps|^2) - Im g,
// which vanishes identically. Returns the absolute residual.
double greens_identity_check(double k, const MediumSample &sample);

} // namespace purcell
