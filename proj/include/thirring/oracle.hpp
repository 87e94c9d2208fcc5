#pragma once

#include "thirring/series.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace thirring {

using cd = std::complex<double>;

/// Momenta k = (2 pi / N) j for j in {-floor(N/4), ..., ceil(N/4)-1}.
struct MomentumGrid {
  int n_sites = 0;
  std::vector<double> k;

  static MomentumGrid make(int n_sites);
  int size() const { return static_cast<int>(k.size()); }
};

struct Dispersion {
  double w = 0.0;  // sqrt(m^2 + sin^2 k)
  double v = 0.0;  // sin k / (m + w)
  bool degenerate = false;  // massless zero mode, v fixed to 0
};

Dispersion dispersion(double k, double m);

/// Momentum-space coefficient matrices of the site-density operator, plus
/// the vacuum densities of the two sublattices.
struct DensityKernels {
  Eigen::MatrixXcd c_kernel;  // coefficients of c_p^dag c_q for this site
  Eigen::MatrixXcd d_kernel;  // coefficients of d_p^dag d_q
  double vacuum_constant = 0.0;  // c_even or c_odd, by site parity
  double c_even = 0.0;
  double c_odd = 0.0;
};

DensityKernels density_kernels(int site, double m, int n_sites);

/// Free evolution: phase e^{-i w_k t} on each momentum amplitude.
void oracle_evolve(Eigen::VectorXcd& packet_c, Eigen::VectorXcd& packet_d,
                   double m, double t);

struct OraclePackets {
  std::optional<Eigen::VectorXcd> phi_c;  // fermion momentum amplitudes
  std::optional<Eigen::VectorXcd> phi_d;  // antifermion momentum amplitudes
};

/// Vacuum-subtracted density at one site given current momentum amplitudes.
/// Rank-one contraction of the kernel quadratic forms; O(N) per site.
double oracle_delta_density(const OraclePackets& packets, double m,
                            int n_sites, int site);

/// Per-site, per-time vacuum-subtracted density series.
ObservableSeries oracle_density_series(const OraclePackets& packets, double m,
                                       int n_sites,
                                       const std::vector<double>& times,
                                       int threads = 1);

}  // namespace thirring
