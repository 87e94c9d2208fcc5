#pragma once

#include "thirring/gates.hpp"
#include "thirring/pauli.hpp"
#include "thirring/series.hpp"
#include "thirring/statevector.hpp"

#include <array>
#include <optional>
#include <random>

namespace thirring {

/// <(1 - Z_site)/2> in the (normalized) state.
double particle_density(const StateVector& state, int site);

/// Vacuum-subtracted site densities; states are normalized internally.
ObservableSeries delta_density_series(const std::vector<StateVector>& states,
                                      const std::vector<double>& times,
                                      const StateVector& vacuum);

struct EntropySeries {
  ObservableSeries s1;
  ObservableSeries s2;
};

/// Delta S1 for the pair trajectory and Delta S2 after subtracting the
/// single-packet trajectories. All states are normalized before the entropy.
EntropySeries entropy_series(const std::vector<StateVector>& pair_states,
                             const std::vector<StateVector>& c_only_states,
                             const std::vector<StateVector>& d_only_states,
                             const StateVector& vacuum,
                             const std::vector<double>& times);

// ---------------------------------------------------------------------------
// Hadamard-test expectation machinery

struct MultiIndex {
  std::array<char, 4> mu{'x', 'x', 'x', 'x'};  // each 'x' or 'y'

  cd coefficient() const;  // i^{d1} (-i)^{d2} i^{d3} (-i)^{d4}
  static std::array<MultiIndex, 16> all();
};

/// |psi(t)> = U3 sigma_0^+ U2 sigma_0^- U1 |0> with
/// U1 = V^dag(phi^c) U0, U2 = V^dag(phi^{d*}) V(phi^c),
/// U3 = evolution V(phi^{d*}). U0|0> is held as the vacuum vector.
struct FactorizedState {
  int n_sites = 0;
  Eigen::VectorXcd vacuum;
  GateProgram v_c;      // V(phi^c)
  GateProgram v_dstar;  // V(phi^{d*})
  std::optional<Eigen::MatrixXcd> evolution;  // dense e^{-iHt}

  static FactorizedState make(const Eigen::VectorXcd& vacuum,
                              const Eigen::VectorXcd& phi_c_position,
                              const Eigen::VectorXcd& phi_d_position,
                              std::optional<Eigen::MatrixXcd> evolution);

  /// U3 sigma_0^{second} U2 sigma_0^{first} U1 |0> (all-unitary branch).
  StateVector branch(char first, char second) const;
  /// The physical (unnormalized) state assembled from the four branches.
  StateVector combined() const;
};

struct ShotEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Binomial sampling of a +-1 observable with exact expectation z.
/// shots <= 0 means the infinite-shot (exact) limit.
ShotEstimate shot_sample(double z, long shots, std::mt19937_64& rng);

/// Caches the four unitary branches and evaluates the sixteen multi-index
/// terms, either by direct contraction or by simulating the ancilla circuit.
class ExpectationAssembler {
 public:
  explicit ExpectationAssembler(FactorizedState fs);

  /// c_mu <O>_mu + h.c., by direct bra/ket contraction.
  double term_direct(const MultiIndex& mu, const PauliSum& obs) const;
  /// Same quantity from the ancilla-circuit simulation (measuring Z there).
  double term_circuit(const MultiIndex& mu, const PauliSum& obs) const;
  /// Circuit path with per-term binomial shot noise.
  double term_circuit_sampled(const MultiIndex& mu, const PauliSum& obs,
                              long shots, std::mt19937_64& rng) const;

  /// <psi|O|psi> / <psi|psi> from the sixteen-term sum.
  double assemble(const PauliSum& obs, bool via_circuit = false) const;
  double assemble_sampled(const PauliSum& obs, long shots,
                          std::uint64_t seed) const;

  double norm_term() const;  // <psi|psi> via the O = identity machinery
  const FactorizedState& factorized() const { return fs_; }

 private:
  double term_circuit_impl(const MultiIndex& mu, const PauliSum& obs,
                           long shots, std::mt19937_64* rng) const;

  FactorizedState fs_;
  std::array<StateVector, 4> branches_;  // index 2*(first=='y') + (second=='y')
};

}  // namespace thirring
