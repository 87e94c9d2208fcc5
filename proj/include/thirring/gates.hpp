#pragma once

#include "thirring/pauli.hpp"

#include <string>
#include <vector>

namespace thirring {

/// Program primitives. RZ denotes the number-phase gate diag(1, e^{i beta})
/// on one qubit, i.e. exp(i beta n_hat); GIV the two-qubit rotation
/// exp(i theta/2 (X_a Y_b - Y_a X_b)). PX/PY/PZ are Pauli excitation markers.
enum class GateKind { RZ, GIV, PX, PY, PZ, BARRIER };

struct Gate {
  GateKind kind;
  int q1 = -1;
  int q2 = -1;
  double angle = 0.0;
  int layer = -1;  // filled by schedule_layers

  bool is_two_qubit() const { return kind == GateKind::GIV; }
};

struct GateProgram {
  int n_qubits = 0;
  std::vector<Gate> gates;
  cd global_phase = 1.0;
  bool layered = false;

  GateProgram() = default;
  explicit GateProgram(int n) : n_qubits(n) {}

  void rz(int q, double beta) { gates.push_back({GateKind::RZ, q, -1, beta}); }
  void giv(int a, int b, double theta) {
    gates.push_back({GateKind::GIV, a, b, theta});
  }
  void px(int q) { gates.push_back({GateKind::PX, q, -1, 0.0}); }
  void py(int q) { gates.push_back({GateKind::PY, q, -1, 0.0}); }
  void pz(int q) { gates.push_back({GateKind::PZ, q, -1, 0.0}); }

  std::size_t two_qubit_count() const;
  bool conserves_number() const;  // no Pauli excitation markers present

  GateProgram adjoint() const;
  /// Concatenation: other is applied after this program.
  GateProgram then(const GateProgram& other) const;

  std::string serialize() const;
  static GateProgram parse(const std::string& text, int n_qubits);
};

/// Exact 4x4 matrix of GIV(theta); basis index = 2*bit_a + bit_b.
Eigen::Matrix4cd givens_gate_matrix(double theta);

/// One element of the standard-gate expansion of GIV.
struct StdGate {
  std::string name;  // H, S, SDG, RX, RZ, CNOT
  int q1 = 0;
  int q2 = -1;  // CNOT target
  double angle = 0.0;
};

/// Expansion of GIV(theta) into single-qubit rotations plus exactly two
/// CNOTs, in application order on the pair (a=0, b=1).
std::vector<StdGate> givens_standard_expansion(double theta);

/// 4x4 matrix of a standard-gate sequence on the pair, for conformance checks.
Eigen::Matrix4cd std_gate_sequence_matrix(const std::vector<StdGate>& seq);

}  // namespace thirring
