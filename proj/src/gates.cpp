#include "thirring/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace thirring {

std::size_t GateProgram::two_qubit_count() const {
  std::size_t c = 0;
  for (const auto& g : gates) c += g.is_two_qubit();
  return c;
}

bool GateProgram::conserves_number() const {
  for (const auto& g : gates) {
    if (g.kind == GateKind::PX || g.kind == GateKind::PY) return false;
  }
  return true;
}

GateProgram GateProgram::adjoint() const {
  GateProgram r(n_qubits);
  r.global_phase = std::conj(global_phase);
  r.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    g.layer = -1;
    switch (g.kind) {
      case GateKind::RZ:
        g.angle = -g.angle;
        break;
      case GateKind::GIV:
        g.angle = -g.angle;
        break;
      case GateKind::PY:
        // Y^dag = Y
        break;
      default:
        break;
    }
    if (g.kind != GateKind::BARRIER) r.gates.push_back(g);
  }
  return r;
}

GateProgram GateProgram::then(const GateProgram& other) const {
  if (n_qubits != other.n_qubits) throw std::invalid_argument("size mismatch");
  GateProgram r = *this;
  r.layered = false;
  r.global_phase *= other.global_phase;
  r.gates.insert(r.gates.end(), other.gates.begin(), other.gates.end());
  return r;
}

std::string GateProgram::serialize() const {
  std::ostringstream out;
  out.precision(17);
  out << "# phase " << global_phase.real() << ' ' << global_phase.imag()
      << '\n';
  int current_layer = -1;
  for (const auto& g : gates) {
    if (layered && g.layer != current_layer && current_layer != -1) {
      out << "BARRIER\n";
    }
    current_layer = g.layer;
    switch (g.kind) {
      case GateKind::RZ:
        out << "RZ " << g.q1 << ' ' << g.angle << '\n';
        break;
      case GateKind::GIV:
        out << "GIV " << g.q1 << ' ' << g.q2 << ' ' << g.angle << '\n';
        break;
      case GateKind::PX:
        out << "PX " << g.q1 << '\n';
        break;
      case GateKind::PY:
        out << "PY " << g.q1 << '\n';
        break;
      case GateKind::PZ:
        out << "PZ " << g.q1 << '\n';
        break;
      case GateKind::BARRIER:
        out << "BARRIER\n";
        break;
    }
  }
  return out.str();
}

GateProgram GateProgram::parse(const std::string& text, int n_qubits) {
  GateProgram p(n_qubits);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "#") {
      std::string key;
      if (ls >> key && key == "phase") {
        double re, im;
        if (ls >> re >> im) p.global_phase = cd(re, im);
      }
      continue;
    }
    if (tok == "RZ") {
      int q;
      double a;
      ls >> q >> a;
      p.rz(q, a);
    } else if (tok == "GIV") {
      int a, b;
      double t;
      ls >> a >> b >> t;
      p.giv(a, b, t);
    } else if (tok == "PX") {
      int q;
      ls >> q;
      p.px(q);
    } else if (tok == "PY") {
      int q;
      ls >> q;
      p.py(q);
    } else if (tok == "PZ") {
      int q;
      ls >> q;
      p.pz(q);
    } else if (tok == "BARRIER") {
      p.gates.push_back({GateKind::BARRIER, -1, -1, 0.0});
    } else {
      throw std::invalid_argument("unknown gate token: " + tok);
    }
  }
  return p;
}

Eigen::Matrix4cd givens_gate_matrix(double theta) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // |01> -> c|01> + s|10>, |10> -> -s|01> + c|10>  (index = 2 bit_a + bit_b)
  m(1, 1) = c;
  m(2, 1) = s;
  m(1, 2) = -s;
  m(2, 2) = c;
  return m;
}

std::vector<StdGate> givens_standard_expansion(double theta) {
  const double half_pi = std::numbers::pi / 2.0;
  // GIV(theta) = (V_a ⊗ V_b) exp(i theta/2 (XX + ZZ)) (V_a ⊗ V_b)^dag with
  // V_a = RX(pi/2), V_b = H S^dag, and the middle block realized by two CNOTs
  // around RX(-theta)_a RZ(-theta)_b.
  std::vector<StdGate> seq;
  seq.push_back({"H", 1, -1, 0.0});
  seq.push_back({"S", 1, -1, 0.0});
  seq.push_back({"RX", 0, -1, -half_pi});
  seq.push_back({"CNOT", 0, 1, 0.0});
  seq.push_back({"RX", 0, -1, -theta});
  seq.push_back({"RZ", 1, -1, -theta});
  seq.push_back({"CNOT", 0, 1, 0.0});
  seq.push_back({"RX", 0, -1, half_pi});
  seq.push_back({"SDG", 1, -1, 0.0});
  seq.push_back({"H", 1, -1, 0.0});
  return seq;
}

namespace {

Eigen::Matrix2cd std_gate_matrix_1q(const StdGate& g) {
  const cd i(0.0, 1.0);
  Eigen::Matrix2cd m;
  if (g.name == "H") {
    m << 1, 1, 1, -1;
    m /= std::sqrt(2.0);
  } else if (g.name == "S") {
    m << 1, 0, 0, i;
  } else if (g.name == "SDG") {
    m << 1, 0, 0, -i;
  } else if (g.name == "RX") {
    const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
    m << c, -i * s, -i * s, c;
  } else if (g.name == "RZ") {
    m << std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2));
  } else {
    throw std::invalid_argument("unknown 1q gate: " + g.name);
  }
  return m;
}

}  // namespace

Eigen::Matrix4cd std_gate_sequence_matrix(const std::vector<StdGate>& seq) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (const auto& g : seq) {
    Eigen::Matrix4cd step;
    step.setZero();
    if (g.name == "CNOT") {
      // control g.q1, target g.q2; index = 2 bit_a + bit_b with a = qubit 0
      for (int idx = 0; idx < 4; ++idx) {
        const int ba = (idx >> 1) & 1, bb = idx & 1;
        int ba2 = ba, bb2 = bb;
        if (g.q1 == 0 && ba) bb2 ^= 1;
        if (g.q1 == 1 && bb) ba2 ^= 1;
        step(2 * ba2 + bb2, idx) = 1.0;
      }
    } else {
      const Eigen::Matrix2cd m = std_gate_matrix_1q(g);
      for (int ba = 0; ba < 2; ++ba)
        for (int bb = 0; bb < 2; ++bb)
          for (int ba2 = 0; ba2 < 2; ++ba2)
            for (int bb2 = 0; bb2 < 2; ++bb2) {
              const cd va = (g.q1 == 0) ? m(ba2, ba) : cd(ba2 == ba ? 1 : 0);
              const cd vb = (g.q1 == 1) ? m(bb2, bb) : cd(bb2 == bb ? 1 : 0);
              step(2 * ba2 + bb2, 2 * ba + bb) += va * vb;
            }
    }
    u = step * u;
  }
  return u;
}

}  // namespace thirring
