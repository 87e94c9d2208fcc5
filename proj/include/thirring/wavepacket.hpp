#pragma once

#include "thirring/oracle.hpp"
#include "thirring/pauli.hpp"
#include "thirring/statevector.hpp"

namespace thirring {

enum class Species { fermion, antifermion };

/// Gaussian wave-packet parameters: mean momentum (radians), mean position
/// (sites, not necessarily integer) and momentum-space width.
struct WavePacketSpec {
  Species species = Species::fermion;
  double mu_k = 0.0;
  double mu_n = 0.0;
  double sigma_k = 0.0;

  void validate() const;
};

/// Parity projector (1 + (-1)^{n+l})/2.
inline double parity_projector(int n, int l) {
  return ((n + l) % 2 == 0) ? 1.0 : 0.0;
}

/// Normalized phi_k over the momentum grid; mu_k outside the principal
/// window is wrapped back in (with a stderr warning).
Eigen::VectorXcd gaussian_momentum_amplitudes(const WavePacketSpec& spec,
                                              int n_sites);

/// Bogoliubov map from momentum to position amplitudes (length N, normalized).
Eigen::VectorXcd position_from_momentum(const Eigen::VectorXcd& phi_k,
                                        Species species, double m,
                                        int n_sites);

/// Normalized position amplitudes phi~_n for the spec.
Eigen::VectorXcd position_amplitudes(const WavePacketSpec& spec, double m,
                                     int n_sites);

/// Unconjugated bilinear sum sum_n a_n b_n (the packet-orthogonality form).
cd orthogonality_defect(const Eigen::VectorXcd& phi_c,
                        const Eigen::VectorXcd& phi_d);

/// Sum_n phi~_n xi_n^dag (fermion) or sum_n phi~_n xi_n (antifermion) as a
/// sparse 2^N matrix. Brute-force oracle for circuit-prepared states.
SparseOperator packet_creation_matrix(const Eigen::VectorXcd& phi_position,
                                      Species species);

/// Applies the packet operator directly to a state, O(N 2^N).
StateVector apply_packet_operator(const StateVector& state,
                                  const Eigen::VectorXcd& phi_position,
                                  Species species);

}  // namespace thirring
