#include "thirring/givens.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace thirring {

namespace {

void rotate_rows(Eigen::MatrixXcd& w, int top, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Eigen::RowVectorXcd upper = w.row(top);
  const Eigen::RowVectorXcd lower = w.row(top + 1);
  w.row(top) = c * upper - s * lower;
  w.row(top + 1) = s * upper + c * lower;
}

void check_unitary(const Eigen::MatrixXcd& u, double tol) {
  const int n = static_cast<int>(u.rows());
  if (u.cols() != n) throw std::invalid_argument("matrix not square");
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw std::invalid_argument("matrix not unitary; defect " +
                                std::to_string(defect));
  }
}

}  // namespace

ColumnDecomposition decompose_columns(const Eigen::MatrixXcd& u, int k,
                                      double unitarity_tol) {
  check_unitary(u, unitarity_tol);
  const int n = static_cast<int>(u.rows());
  if (k < 1 || k > n) throw std::invalid_argument("column count out of range");

  ColumnDecomposition d;
  d.n = n;
  d.columns = k;
  Eigen::MatrixXcd work = u;
  constexpr double kZero = 1e-14;

  for (int l = 0; l < k; ++l) {
    PhaseLayer pl;
    pl.column = l;
    pl.beta = Eigen::VectorXd::Zero(n);
    for (int row = l; row < n; ++row) {
      if (std::abs(work(row, l)) > kZero) {
        pl.beta[row] = -std::arg(work(row, l));
      }
    }
    for (int row = 0; row < n; ++row) {
      if (pl.beta[row] != 0.0) {
        work.row(row) *= std::exp(cd(0.0, pl.beta[row]));
      }
    }
    d.phases.push_back(pl);

    std::vector<GivensStep> steps;
    for (int row = n - 1; row > l; --row) {
      double a_prev = work(row - 1, l).real();
      double a_cur = work(row, l).real();
      if (a_prev < 0.0 && a_prev > -1e-10) a_prev = 0.0;
      if (a_cur < 0.0 && a_cur > -1e-10) a_cur = 0.0;
      double theta = 0.0;
      if (std::abs(a_cur) > kZero) {
        theta = std::atan2(-a_cur, a_prev);
      }
      if (theta != 0.0) rotate_rows(work, row - 1, theta);
      steps.push_back({row, theta, l});
    }
    d.rotations.push_back(std::move(steps));
  }
  return d;
}

Eigen::MatrixXcd replay_steps(const ColumnDecomposition& d) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(d.n, d.n);
  for (int l = 0; l < d.columns; ++l) {
    for (int row = 0; row < d.n; ++row) {
      const double b = d.phases[l].beta[row];
      if (b != 0.0) acc.row(row) *= std::exp(cd(0.0, b));
    }
    for (const auto& step : d.rotations[l]) {
      if (step.theta != 0.0) rotate_rows(acc, step.row - 1, step.theta);
    }
  }
  return acc;
}

Eigen::MatrixXcd replay_inverse(const ColumnDecomposition& d) {
  return replay_steps(d).adjoint();
}

namespace {

void emit_giv(GateProgram& p, int n_sites, int row, double theta,
              bool mirrored) {
  if (!mirrored) {
    p.giv(row - 1, row, theta);
  } else {
    p.giv(n_sites - 1 - row, n_sites - row, -theta);
  }
}

void emit_rz(GateProgram& p, int n_sites, int row, double beta, bool mirrored) {
  p.rz(mirrored ? n_sites - 1 - row : row, beta);
}

}  // namespace

GateProgram program_for_v(const ColumnDecomposition& d, bool mirrored) {
  GateProgram p(d.n);
  for (int l = d.columns - 1; l >= 0; --l) {
    // V^dag(r_{l+1,l}) first, ascending to V^dag(r_{N-1,l}), then V^dag(p_l)
    const auto& steps = d.rotations[l];
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (it->theta != 0.0) emit_giv(p, d.n, it->row, it->theta, mirrored);
    }
    for (int row = 0; row < d.n; ++row) {
      const double b = d.phases[l].beta[row];
      if (b != 0.0) emit_rz(p, d.n, row, -b, mirrored);
    }
  }
  return p;
}

GateProgram program_for_v_dagger(const ColumnDecomposition& d, bool mirrored) {
  GateProgram p(d.n);
  for (int l = 0; l < d.columns; ++l) {
    for (int row = 0; row < d.n; ++row) {
      const double b = d.phases[l].beta[row];
      if (b != 0.0) emit_rz(p, d.n, row, b, mirrored);
    }
    for (const auto& step : d.rotations[l]) {
      if (step.theta != 0.0) emit_giv(p, d.n, step.row, -step.theta, mirrored);
    }
  }
  return p;
}

Eigen::MatrixXcd reverse_sites(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  Eigen::MatrixXcd r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = u(n - 1 - i, n - 1 - j);
  return r;
}

EvolutionMatrix free_evolution_matrix(double mass, double t, int n_sites) {
  if (n_sites <= 0 || n_sites % 2 != 0) {
    throw std::invalid_argument("n_sites must be positive and even");
  }
  EvolutionMatrix em;
  em.m = Eigen::MatrixXcd::Zero(n_sites, n_sites);
  for (int n = 0; n < n_sites; ++n) {
    em.m(n, n) = cd(0.0, (n % 2 == 0) ? -mass * t : mass * t);
  }
  for (int n = 0; n + 1 < n_sites; ++n) {
    em.m(n, n + 1) = -0.5 * t;
    em.m(n + 1, n) = 0.5 * t;
  }
  em.m(0, n_sites - 1) = 0.5 * t;
  em.m(n_sites - 1, 0) = -0.5 * t;

  // exp(M) = exp(-i K) with K = iM Hermitian
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cd(0.0, 1.0) * em.m);
  Eigen::VectorXcd phases(n_sites);
  for (int i = 0; i < n_sites; ++i) {
    phases[i] = std::exp(cd(0.0, -es.eigenvalues()[i]));
  }
  em.u_t = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return em;
}

Eigen::MatrixXcd compress_product(const Eigen::MatrixXcd& u_t,
                                  const ColumnDecomposition& prep) {
  if (u_t.rows() != prep.n) throw std::invalid_argument("dimension mismatch");
  return u_t * replay_inverse(prep);
}

GateProgram schedule_layers(const GateProgram& program) {
  GateProgram out = program;
  out.layered = true;
  std::vector<int> last_layer(out.n_qubits, 0);
  for (auto& g : out.gates) {
    switch (g.kind) {
      case GateKind::GIV: {
        const int layer = 1 + std::max(last_layer[g.q1], last_layer[g.q2]);
        last_layer[g.q1] = layer;
        last_layer[g.q2] = layer;
        g.layer = layer;
        break;
      }
      case GateKind::BARRIER:
        g.layer = 0;
        break;
      default:
        g.layer = last_layer[g.q1];
        break;
    }
  }
  return out;
}

int two_qubit_layer_depth(const GateProgram& layered) {
  int depth = 0;
  for (const auto& g : layered.gates) {
    if (g.is_two_qubit()) depth = std::max(depth, g.layer);
  }
  return depth;
}

GateProgram lightcone_prune(const GateProgram& layered, int observable_site) {
  if (observable_site < 0 || observable_site >= layered.n_qubits) {
    throw std::out_of_range("observable site");
  }
  std::vector<bool> in_cone(layered.n_qubits, false);
  in_cone[observable_site] = true;
  std::vector<bool> keep(layered.gates.size(), false);
  for (std::size_t idx = layered.gates.size(); idx-- > 0;) {
    const Gate& g = layered.gates[idx];
    if (g.kind == GateKind::BARRIER) continue;
    if (g.is_two_qubit()) {
      if (in_cone[g.q1] || in_cone[g.q2]) {
        keep[idx] = true;
        in_cone[g.q1] = true;
        in_cone[g.q2] = true;
      }
    } else if (in_cone[g.q1]) {
      keep[idx] = true;
    }
  }
  GateProgram pruned(layered.n_qubits);
  pruned.global_phase = layered.global_phase;
  for (std::size_t idx = 0; idx < layered.gates.size(); ++idx) {
    if (keep[idx]) pruned.gates.push_back(layered.gates[idx]);
  }
  return schedule_layers(pruned);
}

// ---------------------------------------------------------------------------

namespace {

// Gram-Schmidt completion of k orthonormal columns to a full unitary.
Eigen::MatrixXcd complete_unitary(const Eigen::MatrixXcd& columns) {
  const int n = static_cast<int>(columns.rows());
  const int k = static_cast<int>(columns.cols());
  Eigen::MatrixXcd u(n, n);
  u.leftCols(k) = columns;
  int filled = k;
  for (int cand = 0; cand < n && filled < n; ++cand) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < filled; ++j) v -= u.col(j).dot(v) * u.col(j);
    }
    const double norm = v.norm();
    if (norm > 1e-7) {
      u.col(filled++) = v / norm;
    }
  }
  if (filled != n) throw std::runtime_error("unitary completion failed");
  return u;
}

Eigen::VectorXcd maybe_mirror(const Eigen::VectorXcd& v, bool mirrored) {
  if (!mirrored) return v;
  return v.reverse();
}

}  // namespace

PreparedCircuit synthesize_state_prep(
    const std::vector<PacketAmplitudes>& packets, bool unitary_excitations,
    bool mirrored) {
  if (packets.empty() || packets.size() > 2) {
    throw std::invalid_argument("one or two packets required");
  }
  const int n = static_cast<int>(packets.front().position.size());
  PreparedCircuit pc;
  pc.n_sites = n;
  pc.mirrored = mirrored;
  pc.unitary_excitations = unitary_excitations;

  const bool pair = packets.size() == 2;
  const bool mixed_pair =
      pair && packets[0].species != packets[1].species;

  auto column_for = [&](const PacketAmplitudes& p) -> Eigen::VectorXcd {
    // V(u) with u's first column = phi for fermions, conj(phi) for
    // antifermions (the packet operator conjugates the matrix entries)
    Eigen::VectorXcd col = p.position;
    if (p.species == Species::antifermion) col = col.conjugate();
    return maybe_mirror(col, mirrored);
  };

  auto excitation_markers = [&](bool with_string) {
    GateProgram exc(n);
    if (!mirrored) {
      exc.px(0);
    } else {
      exc.px(n - 1);
      if (with_string) {
        for (int q = 0; q < n - 1; ++q) exc.pz(q);
      }
    }
    return exc;
  };

  if (mixed_pair) {
    const PacketAmplitudes& fermion =
        packets[0].species == Species::fermion ? packets[0] : packets[1];
    const PacketAmplitudes& antifermion =
        packets[0].species == Species::fermion ? packets[1] : packets[0];
    Eigen::MatrixXcd cols(n, 2);
    cols.col(0) = column_for(fermion);
    cols.col(1) = column_for(antifermion);
    const cd overlap = cols.col(0).dot(cols.col(1));
    if (std::abs(overlap) > 1e-10) {
      throw std::invalid_argument(
          "packet columns are not orthogonal; cannot form the two-column "
          "preparation");
    }
    const Eigen::MatrixXcd u_cd = complete_unitary(cols);
    PreparedCircuit::Stage st;
    st.decomp = decompose_columns(u_cd, 2);
    st.v_dagger = program_for_v_dagger(st.decomp, mirrored);
    // sigma_1^+ sigma_0^z sigma_0^- with the unitary substitution
    GateProgram exc(n);
    if (!mirrored) {
      exc.px(0);
      exc.pz(0);
      exc.px(1);
    } else {
      exc.px(n - 1);
      exc.px(n - 2);
    }
    st.excitations = exc;
    pc.stages.push_back(std::move(st));
    pc.pair_path = true;
    return pc;
  }

  if (pair && !mixed_pair) {
    std::cerr << "state-prep: same-species packets are not orthogonal; using "
                 "sequential single-mode conjugations (excitations remain "
                 "non-unitary beyond the first packet)\n";
    pc.unitary_excitations = false;
  }

  for (const auto& packet : packets) {
    PreparedCircuit::Stage st;
    Eigen::MatrixXcd cols(n, 1);
    cols.col(0) = column_for(packet);
    const Eigen::MatrixXcd u = complete_unitary(cols);
    st.decomp = decompose_columns(u, 1);
    st.v_dagger = program_for_v_dagger(st.decomp, mirrored);
    st.excitations = excitation_markers(true);
    pc.stages.push_back(std::move(st));
  }
  return pc;
}

GateProgram PreparedCircuit::prep_program() const {
  GateProgram p(n_sites);
  for (const auto& st : stages) {
    p = p.then(st.v_dagger).then(st.excitations)
            .then(program_for_v(st.decomp, mirrored));
  }
  return p;
}

GateProgram build_free_scattering_circuit(const PreparedCircuit& prep,
                                          double mass, double t) {
  if (prep.stages.empty()) throw std::invalid_argument("empty preparation");
  const int n = prep.n_sites;
  GateProgram p(n);
  for (std::size_t i = 0; i + 1 < prep.stages.size(); ++i) {
    const auto& st = prep.stages[i];
    p = p.then(st.v_dagger).then(st.excitations)
            .then(program_for_v(st.decomp, prep.mirrored));
  }
  const auto& last = prep.stages.back();
  p = p.then(last.v_dagger).then(last.excitations);

  Eigen::MatrixXcd u_t = free_evolution_matrix(mass, t, n).u_t;
  if (prep.mirrored) u_t = reverse_sites(u_t);
  const Eigen::MatrixXcd u_compressed = compress_product(u_t, last.decomp);
  const ColumnDecomposition d_evo = decompose_columns(u_compressed, n);
  return p.then(program_for_v(d_evo, prep.mirrored));
}

}  // namespace thirring
