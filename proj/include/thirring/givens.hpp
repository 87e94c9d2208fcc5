#pragma once

#include "thirring/gates.hpp"
#include "thirring/wavepacket.hpp"

#include <optional>
#include <vector>

namespace thirring {

/// Rotation r_{n,l}(theta) acting on rows (n-1, n); eliminates entry (n, l).
struct GivensStep {
  int row = 0;  // the eliminated row n; the rotation pair is (n-1, n)
  double theta = 0.0;
  int column = 0;
};

/// Diagonal phase matrix p_l = diag(e^{i beta_n}) realifying column l.
struct PhaseLayer {
  Eigen::VectorXd beta;
  int column = 0;
};

struct ColumnDecomposition {
  int n = 0;        // matrix dimension
  int columns = 0;  // number of decomposed columns
  std::vector<PhaseLayer> phases;                  // one per column
  std::vector<std::vector<GivensStep>> rotations;  // per column, n = N-1 .. l+1
};

/// Sequential column-by-column decomposition: s_{k-1} ... s_0 u has its first
/// k columns equal to the identity pattern, s_l = r_{l+1,l} ... r_{N-1,l} p_l.
ColumnDecomposition decompose_columns(const Eigen::MatrixXcd& u, int k,
                                      double unitarity_tol = 1e-10);

/// Product s_{k-1} ... s_0 as a matrix (applying it to u replays the
/// elimination).
Eigen::MatrixXcd replay_steps(const ColumnDecomposition& d);

/// s_0^dag s_1^dag ... s_{k-1}^dag: the effective unitary whose first k
/// columns match the decomposed matrix and whose remaining columns are the
/// canonical completion realized by the emitted circuits.
Eigen::MatrixXcd replay_inverse(const ColumnDecomposition& d);

/// Circuit realizing V(u_eff). With mirrored = true the decomposition must
/// have been taken of the site-reversed matrix; gates are emitted on
/// reversed qubits with negated angles and realize the same operator as the
/// unmirrored network (the "inverted triangle" orientation).
GateProgram program_for_v(const ColumnDecomposition& d, bool mirrored = false);
GateProgram program_for_v_dagger(const ColumnDecomposition& d,
                                 bool mirrored = false);

/// Reverses site order on both indices: u'(i,j) = u(N-1-i, N-1-j).
Eigen::MatrixXcd reverse_sites(const Eigen::MatrixXcd& u);

/// One-body free-evolution generator M (antihermitian) and u_t = exp(M).
struct EvolutionMatrix {
  Eigen::MatrixXcd m;
  Eigen::MatrixXcd u_t;
};

/// g = 0 only: exact single-particle evolution matrix at time t.
EvolutionMatrix free_evolution_matrix(double mass, double t, int n_sites);

/// u_t' = u_t * s_0^dag ... s_{k-1}^dag, so one synthesis pass covers
/// preparation plus evolution.
Eigen::MatrixXcd compress_product(const Eigen::MatrixXcd& u_t,
                                  const ColumnDecomposition& prep);

/// Greedy brick-wall packing. Two-qubit gates sharing a qubit serialize;
/// single-qubit gates attach to the preceding entangling layer (depth counts
/// entangling layers only).
GateProgram schedule_layers(const GateProgram& program);
int two_qubit_layer_depth(const GateProgram& layered);
inline int cnot_layer_depth(const GateProgram& layered) {
  return 2 * two_qubit_layer_depth(layered);
}

/// Removes every gate with no causal path (through shared qubits, walking
/// backward from the measured qubit) to a final single-site sigma^z
/// observable. Returns a re-layered program.
GateProgram lightcone_prune(const GateProgram& layered, int observable_site);

// ---------------------------------------------------------------------------
// State preparation and full scattering circuits

struct PacketAmplitudes {
  Eigen::VectorXcd position;
  Species species = Species::fermion;
};

struct PreparedCircuit {
  int n_sites = 0;
  bool pair_path = false;            // two-column u_cd form used
  bool unitary_excitations = true;   // Pauli substitution exact on the vacuum
  bool mirrored = false;

  struct Stage {
    ColumnDecomposition decomp;
    GateProgram v_dagger;
    GateProgram excitations;  // Pauli markers between the V blocks
  };
  std::vector<Stage> stages;

  /// Full t = 0 preparation: every stage closed with its V block.
  GateProgram prep_program() const;
};

/// Builds the wave-packet creation circuit. A fermion-antifermion pair takes
/// the orthogonality-based two-column form; a single packet uses the
/// single-column conjugation form. Same-species pairs fall back to sequential
/// single-column stages with a diagnostic (their excitations stay non-unitary
/// beyond the first packet). With unitary_excitations the Pauli substitution
/// valid on the free vacuum is emitted; the markers double as insertion
/// points for the non-unitary sigma^-/sigma^+ handling downstream.
PreparedCircuit synthesize_state_prep(
    const std::vector<PacketAmplitudes>& packets,
    bool unitary_excitations = true, bool mirrored = false);

/// prep + excitations + compressed free evolution (g = 0 path), unlayered.
GateProgram build_free_scattering_circuit(const PreparedCircuit& prep,
                                          double mass, double t);

}  // namespace thirring
