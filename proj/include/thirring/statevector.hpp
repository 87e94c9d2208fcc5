#pragma once

#include "thirring/gates.hpp"
#include "thirring/model.hpp"
#include "thirring/pauli.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace thirring {

/// Exact 2^N amplitude vector. Qubit q = bit q of the basis index.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n_qubits, Eigen::VectorXcd amps);

  static StateVector zero_state(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t basis);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  void normalize();
  cd inner(const StateVector& other) const;  // <this|other>
  double fidelity(const StateVector& other) const;

  void apply_phase(int q, double beta);  // diag(1, e^{i beta})
  void apply_givens(int a, int b, double theta);
  void apply_x(int q);
  void apply_y(int q);
  void apply_z(int q);
  void apply_h(int q);
  void apply_rx(int q, double angle);
  void apply_cnot(int control, int target);
  void scale(cd factor) { amps_ *= factor; }

  void apply_gate(const Gate& g);
  void apply_program(const GateProgram& p);
  /// Applies gates grouped by layer annotation (requires layered program).
  void apply_program_by_layers(const GateProgram& p);

  void apply_pauli_string(const std::string& ops, cd coeff = 1.0);
  /// Pauli on the target qubits conditioned on a control qubit value.
  void apply_controlled_pauli(int control, bool control_value,
                              const std::string& ops);
  /// Dense operator on the low n_op qubits (identity on the rest).
  void apply_dense_on_low(const Eigen::MatrixXcd& op, int n_op);

  double z_expectation(int q) const;
  double particle_density(int site) const;  // <(1 - Z)/2>
  cd expectation(const PauliSum& op) const;

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

/// Dense matrix of a program, column by column. Small N only.
Eigen::MatrixXcd program_matrix(const GateProgram& p);

/// Hermitian, PSD, trace-one reduced state.
struct DensityMatrix {
  Eigen::MatrixXcd mat;

  double trace_real() const { return mat.trace().real(); }
  bool is_hermitian(double tol = 1e-10) const;
  Eigen::VectorXd eigenvalues() const;
  /// von Neumann entropy in bits; eigenvalues in [-1e-10, 0) are clipped,
  /// anything more negative raises.
  double entropy_bits() const;
};

/// Partial trace over qubits >= cut (keeps the first `cut` qubits).
DensityMatrix reduced_density(const StateVector& state, int cut);

/// Entropy of the `cut` bipartition computed from the smaller Gram block.
double entanglement_entropy_bits(const StateVector& state, int cut);

// ---------------------------------------------------------------------------
// Ground states

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

/// Lowest eigenpair of a sparse Hamiltonian, optionally restricted to a
/// sector basis. Dense diagonalization below crossover, Lanczos above.
GroundState ground_state_exact(
    const SparseOperator& h,
    const std::optional<std::vector<std::uint64_t>>& sector = std::nullopt);

/// Matrix-free variant for larger chains.
GroundState ground_state_exact(
    const LatticeHamiltonian& h,
    const std::optional<std::vector<std::uint64_t>>& sector = std::nullopt);

// ---------------------------------------------------------------------------
// Time evolution

/// One second-order Taylor step exp(-iH dt) ~ 1 - i dt H - H^2 dt^2/2,
/// renormalized afterwards.
StateVector taylor2_step(const SparseOperator& h, const StateVector& state,
                         double dt);
StateVector taylor2_step(const LatticeHamiltonian& h, const StateVector& state,
                         double dt);

/// Exact evolution by one-time dense eigendecomposition; memory-bound cap.
class SpectralEvolver {
 public:
  static constexpr int kMaxSites = 12;
  explicit SpectralEvolver(const SparseOperator& h);

  StateVector evolve(const StateVector& state, double t) const;
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

StateVector evolve_dense(const SparseOperator& h, const StateVector& state,
                         double t);

/// Lanczos-Krylov applied exponential, exact to tolerance, memory-light.
StateVector krylov_evolve(const LatticeHamiltonian& h, const StateVector& state,
                          double t, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Variational vacuum ansatz

/// X gates on every second qubit followed by brick layers of two-parameter
/// number-conserving pair gates; entangling depth counted in CNOT layers
/// (one pair gate = two CNOTs).
struct VacuumAnsatz {
  int n_qubits = 0;
  int cnot_layers = 4;

  std::vector<std::pair<int, int>> gate_pairs() const;
  int param_count() const { return 2 * int(gate_pairs().size()); }
  StateVector prepare(const Eigen::VectorXd& params) const;
};

struct AnsatzResult {
  Eigen::VectorXd params;
  double fidelity = 0.0;
};

/// Coordinate sweeps plus a Nelder-Mead polish maximizing overlap with the
/// exact ground state of h.
AnsatzResult optimize_vacuum_ansatz(const SparseOperator& h,
                                    const VacuumAnsatz& ansatz,
                                    std::uint64_t seed = 7);

}  // namespace thirring
