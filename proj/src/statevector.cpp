#include "thirring/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace thirring {

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (amps_.size() != (std::int64_t{1} << n_qubits_)) {
    throw std::invalid_argument("amplitude count != 2^N");
  }
}

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t basis) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits);
  a[static_cast<std::int64_t>(basis)] = 1.0;
  return StateVector(n_qubits, std::move(a));
}

void StateVector::normalize() {
  const double n = amps_.norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize null state");
  amps_ /= n;
}

cd StateVector::inner(const StateVector& other) const {
  return amps_.dot(other.amps_);
}

double StateVector::fidelity(const StateVector& other) const {
  const double n1 = amps_.squaredNorm();
  const double n2 = other.amps_.squaredNorm();
  return std::norm(inner(other)) / (n1 * n2);
}

void StateVector::apply_phase(int q, double beta) {
  const std::int64_t bit = std::int64_t{1} << q;
  const cd f = std::exp(cd(0.0, beta));
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] *= f;
  }
}

void StateVector::apply_givens(int a, int b, double theta) {
  const std::int64_t ba = std::int64_t{1} << a;
  const std::int64_t bb = std::int64_t{1} << b;
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (!(i & ba) && (i & bb)) {
      const std::int64_t j = (i ^ bb) | ba;  // bit_a=1, bit_b=0
      const cd v01 = amps_[i], v10 = amps_[j];
      amps_[i] = c * v01 - s * v10;
      amps_[j] = s * v01 + c * v10;
    }
  }
}

void StateVector::apply_x(int q) {
  const std::int64_t bit = std::int64_t{1} << q;
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void StateVector::apply_y(int q) {
  const std::int64_t bit = std::int64_t{1} << q;
  const cd im(0.0, 1.0);
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) {
      const cd v0 = amps_[i], v1 = amps_[i | bit];
      amps_[i] = -im * v1;
      amps_[i | bit] = im * v0;
    }
  }
}

void StateVector::apply_z(int q) {
  const std::int64_t bit = std::int64_t{1} << q;
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_h(int q) {
  const std::int64_t bit = std::int64_t{1} << q;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) {
      const cd v0 = amps_[i], v1 = amps_[i | bit];
      amps_[i] = r * (v0 + v1);
      amps_[i | bit] = r * (v0 - v1);
    }
  }
}

void StateVector::apply_rx(int q, double angle) {
  const std::int64_t bit = std::int64_t{1} << q;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cd mis(0.0, -s);
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) {
      const cd v0 = amps_[i], v1 = amps_[i | bit];
      amps_[i] = c * v0 + mis * v1;
      amps_[i | bit] = mis * v0 + c * v1;
    }
  }
}

void StateVector::apply_cnot(int control, int target) {
  const std::int64_t bc = std::int64_t{1} << control;
  const std::int64_t bt = std::int64_t{1} << target;
  for (std::int64_t i = 0; i < dim(); ++i) {
    if ((i & bc) && !(i & bt)) std::swap(amps_[i], amps_[i | bt]);
  }
}

void StateVector::apply_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::RZ:
      apply_phase(g.q1, g.angle);
      break;
    case GateKind::GIV:
      apply_givens(g.q1, g.q2, g.angle);
      break;
    case GateKind::PX:
      apply_x(g.q1);
      break;
    case GateKind::PY:
      apply_y(g.q1);
      break;
    case GateKind::PZ:
      apply_z(g.q1);
      break;
    case GateKind::BARRIER:
      break;
  }
}

void StateVector::apply_program(const GateProgram& p) {
  if (p.n_qubits > n_qubits_) throw std::out_of_range("program too wide");
  for (const auto& g : p.gates) apply_gate(g);
  if (p.global_phase != cd(1.0)) amps_ *= p.global_phase;
}

void StateVector::apply_program_by_layers(const GateProgram& p) {
  if (!p.layered) throw std::invalid_argument("program is not layered");
  std::vector<std::size_t> order(p.gates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.gates[a].layer < p.gates[b].layer;
  });
  for (std::size_t idx : order) apply_gate(p.gates[idx]);
  if (p.global_phase != cd(1.0)) amps_ *= p.global_phase;
}

void StateVector::apply_pauli_string(const std::string& ops, cd coeff) {
  if (static_cast<int>(ops.size()) != n_qubits_) {
    throw std::invalid_argument("Pauli string width mismatch");
  }
  const PauliStringAction act(ops);
  const std::int64_t flip = static_cast<std::int64_t>(act.flip_mask);
  if (flip == 0) {
    for (std::int64_t i = 0; i < dim(); ++i) amps_[i] *= coeff * act.phase(i);
    return;
  }
  const std::int64_t pivot = flip & -flip;
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (i & pivot) continue;
    const std::int64_t j = i ^ flip;
    const cd vi = amps_[i], vj = amps_[j];
    amps_[j] = coeff * act.phase(i) * vi;
    amps_[i] = coeff * act.phase(j) * vj;
  }
}

void StateVector::apply_controlled_pauli(int control, bool control_value,
                                         const std::string& ops) {
  if (ops[control] != 'I') {
    throw std::invalid_argument("control qubit must be identity in ops");
  }
  const PauliStringAction act(ops);
  const std::int64_t flip = static_cast<std::int64_t>(act.flip_mask);
  const std::int64_t bc = std::int64_t{1} << control;
  if (flip == 0) {
    for (std::int64_t i = 0; i < dim(); ++i) {
      if (bool(i & bc) == control_value) amps_[i] *= act.phase(i);
    }
    return;
  }
  const std::int64_t pivot = flip & -flip;
  for (std::int64_t i = 0; i < dim(); ++i) {
    if (i & pivot) continue;
    if (bool(i & bc) != control_value) continue;
    const std::int64_t j = i ^ flip;
    const cd vi = amps_[i], vj = amps_[j];
    amps_[j] = act.phase(i) * vi;
    amps_[i] = act.phase(j) * vj;
  }
}

void StateVector::apply_dense_on_low(const Eigen::MatrixXcd& op, int n_op) {
  const std::int64_t d = std::int64_t{1} << n_op;
  if (op.rows() != d || op.cols() != d) {
    throw std::invalid_argument("dense block dimension mismatch");
  }
  for (std::int64_t block = 0; block < dim(); block += d) {
    amps_.segment(block, d) = op * amps_.segment(block, d);
  }
}

double StateVector::z_expectation(int q) const {
  const std::int64_t bit = std::int64_t{1} << q;
  double z = 0.0;
  for (std::int64_t i = 0; i < dim(); ++i) {
    const double p = std::norm(amps_[i]);
    z += (i & bit) ? -p : p;
  }
  return z;
}

double StateVector::particle_density(int site) const {
  return 0.5 * (1.0 - z_expectation(site));
}

cd StateVector::expectation(const PauliSum& op) const {
  Eigen::VectorXcd out;
  op.apply(amps_, out);
  return amps_.dot(out);
}

Eigen::MatrixXcd program_matrix(const GateProgram& p) {
  const std::int64_t dim = std::int64_t{1} << p.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis_state(p.n_qubits, col);
    s.apply_program(p);
    u.col(col) = s.amplitudes();
  }
  return u;
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

double entropy_from_eigenvalues(const Eigen::VectorXd& evals) {
  double s = 0.0;
  for (double e : evals) {
    if (e < -1e-10) {
      throw std::runtime_error("density matrix eigenvalue below -1e-10: " +
                               std::to_string(e));
    }
    if (e > 0.0) s -= e * std::log2(e);
  }
  return s;
}

}  // namespace

double DensityMatrix::entropy_bits() const {
  return entropy_from_eigenvalues(eigenvalues());
}

DensityMatrix reduced_density(const StateVector& state, int cut) {
  const int n = state.n_qubits();
  if (cut < 1 || cut > n - 1) throw std::out_of_range("cut out of range");
  const std::int64_t dl = std::int64_t{1} << cut;
  const std::int64_t dr = std::int64_t{1} << (n - cut);
  Eigen::Map<const Eigen::MatrixXcd> m(state.amplitudes().data(), dl, dr);
  DensityMatrix rho;
  rho.mat = m * m.adjoint();
  return rho;
}

double entanglement_entropy_bits(const StateVector& state, int cut) {
  const int n = state.n_qubits();
  if (cut < 1 || cut > n - 1) throw std::out_of_range("cut out of range");
  const std::int64_t dl = std::int64_t{1} << cut;
  const std::int64_t dr = std::int64_t{1} << (n - cut);
  Eigen::Map<const Eigen::MatrixXcd> m(state.amplitudes().data(), dl, dr);
  Eigen::MatrixXcd gram;
  if (dl <= dr) {
    gram = m * m.adjoint();
  } else {
    gram = m.adjoint() * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                     Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(es.eigenvalues());
}

// ---------------------------------------------------------------------------
// Lanczos

namespace {

using ApplyFn = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct LanczosOut {
  double eval = 0.0;
  Eigen::VectorXcd evec;
  double residual = 0.0;
};

LanczosOut lanczos_lowest(std::int64_t dim, const ApplyFn& apply,
                          double tol = 1e-10, int max_restarts = 8,
                          std::uint64_t seed = 12345) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v[i] = cd(nd(rng), nd(rng));
  v.normalize();

  const int max_basis = static_cast<int>(std::min<std::int64_t>(dim, 140));
  LanczosOut out;
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v);
    Eigen::VectorXcd w(dim);
    for (int j = 0; j < max_basis; ++j) {
      apply(basis[j], w);
      const double a = std::real(basis[j].dot(w));
      alpha.push_back(a);
      w -= a * basis[j];
      if (j > 0) w -= beta[j - 1] * basis[j - 1];
      // full reorthogonalization
      for (const auto& b : basis) w -= b.dot(w) * b;
      const double bnorm = w.norm();
      if (bnorm < 1e-13 || j + 1 == max_basis) {
        beta.push_back(bnorm);
        break;
      }
      beta.push_back(bnorm);
      basis.push_back(w / bnorm);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd ad = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd bd(m > 1 ? m - 1 : 0);
    for (int j = 0; j + 1 < m; ++j) bd[j] = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(ad, bd);
    const Eigen::VectorXd ritz = es.eigenvectors().col(0);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < m; ++j) x += ritz[j] * basis[j];
    x.normalize();
    apply(x, w);
    const double e = std::real(x.dot(w));
    const double res = (w - e * x).norm();
    out.eval = e;
    out.evec = x;
    out.residual = res;
    if (res <= tol) return out;
    v = x;
  }
  if (out.residual > 1e-8) {
    throw std::runtime_error("Lanczos did not converge; residual " +
                             std::to_string(out.residual));
  }
  return out;
}

GroundState ground_state_from_dense(const Eigen::MatrixXcd& h, int n_qubits) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  GroundState gs;
  gs.energy = es.eigenvalues()[0];
  gs.state = StateVector(n_qubits, es.eigenvectors().col(0));
  return gs;
}

GroundState ground_state_sector(
    const Eigen::SparseMatrix<cd>& hs,
    const std::vector<std::uint64_t>& sector, int n_qubits) {
  const std::int64_t ds = static_cast<std::int64_t>(sector.size());
  Eigen::VectorXcd coeffs;
  double energy = 0.0;
  if (ds <= 1600) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(hs));
    energy = es.eigenvalues()[0];
    coeffs = es.eigenvectors().col(0);
  } else {
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      out = hs * in;
    };
    LanczosOut lo = lanczos_lowest(ds, apply);
    energy = lo.eval;
    coeffs = lo.evec;
  }
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits);
  for (std::int64_t i = 0; i < ds; ++i) {
    full[static_cast<std::int64_t>(sector[i])] = coeffs[i];
  }
  GroundState gs;
  gs.energy = energy;
  gs.state = StateVector(n_qubits, std::move(full));
  return gs;
}

}  // namespace

GroundState ground_state_exact(
    const SparseOperator& h,
    const std::optional<std::vector<std::uint64_t>>& sector) {
  const int n = h.n_sites;
  if (sector) {
    std::vector<Eigen::Triplet<cd>> trips;
    std::unordered_map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < sector->size(); ++i) index[(*sector)[i]] = int(i);
    for (int k = 0; k < h.mat.outerSize(); ++k) {
      auto cit = index.find(static_cast<std::uint64_t>(k));
      if (cit == index.end()) continue;
      for (Eigen::SparseMatrix<cd>::InnerIterator it(h.mat, k); it; ++it) {
        auto rit = index.find(static_cast<std::uint64_t>(it.row()));
        if (rit == index.end()) continue;
        trips.emplace_back(rit->second, cit->second, it.value());
      }
    }
    Eigen::SparseMatrix<cd> hs(sector->size(), sector->size());
    hs.setFromTriplets(trips.begin(), trips.end());
    return ground_state_sector(hs, *sector, n);
  }
  if (h.dim() <= 4096) {
    return ground_state_from_dense(h.dense(), n);
  }
  auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out = h.mat * in;
  };
  LanczosOut lo = lanczos_lowest(h.dim(), apply);
  GroundState gs;
  gs.energy = lo.eval;
  gs.state = StateVector(n, lo.evec);
  return gs;
}

GroundState ground_state_exact(
    const LatticeHamiltonian& h,
    const std::optional<std::vector<std::uint64_t>>& sector) {
  if (sector) {
    return ground_state_sector(h.sector_matrix(*sector), *sector, h.n_sites());
  }
  if (h.dim() <= 4096) {
    Eigen::MatrixXcd dense(h.dim(), h.dim());
    Eigen::VectorXcd col(h.dim()), out(h.dim());
    for (std::int64_t c = 0; c < h.dim(); ++c) {
      col.setZero();
      col[c] = 1.0;
      h.apply(col, out);
      dense.col(c) = out;
    }
    return ground_state_from_dense(dense, h.n_sites());
  }
  auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    h.apply(in, out);
  };
  LanczosOut lo = lanczos_lowest(h.dim(), apply);
  GroundState gs;
  gs.energy = lo.eval;
  gs.state = StateVector(h.n_sites(), lo.evec);
  return gs;
}

// ---------------------------------------------------------------------------
// Time evolution

namespace {

template <typename H>
StateVector taylor2_step_impl(const H& h, const StateVector& state, double dt) {
  Eigen::VectorXcd h1, h2;
  if constexpr (std::is_same_v<H, SparseOperator>) {
    h1 = h.mat * state.amplitudes();
    h2 = h.mat * h1;
  } else {
    h.apply(state.amplitudes(), h1);
    h.apply(h1, h2);
  }
  Eigen::VectorXcd out = state.amplitudes() - cd(0.0, dt) * h1 -
                         cd(0.5 * dt * dt, 0.0) * h2;
  StateVector s(state.n_qubits(), std::move(out));
  s.normalize();
  return s;
}

}  // namespace

StateVector taylor2_step(const SparseOperator& h, const StateVector& state,
                         double dt) {
  return taylor2_step_impl(h, state, dt);
}

StateVector taylor2_step(const LatticeHamiltonian& h, const StateVector& state,
                         double dt) {
  return taylor2_step_impl(h, state, dt);
}

SpectralEvolver::SpectralEvolver(const SparseOperator& h) {
  if (h.n_sites > kMaxSites) {
    throw std::length_error(
        "dense evolution capped at 12 sites (memory); use krylov_evolve");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

StateVector SpectralEvolver::evolve(const StateVector& state, double t) const {
  Eigen::VectorXcd c = evecs_.adjoint() * state.amplitudes();
  for (std::int64_t i = 0; i < c.size(); ++i) {
    c[i] *= std::exp(cd(0.0, -evals_[i] * t));
  }
  return StateVector(state.n_qubits(), evecs_ * c);
}

StateVector evolve_dense(const SparseOperator& h, const StateVector& state,
                         double t) {
  return SpectralEvolver(h).evolve(state, t);
}

StateVector krylov_evolve(const LatticeHamiltonian& h,
                          const StateVector& state, double t, double tol) {
  if (t == 0.0) return state;
  const std::int64_t dim = h.dim();
  const double hnorm = h.coeff_norm_bound();
  const int substeps =
      std::max(1, static_cast<int>(std::ceil(std::abs(t) * hnorm / 12.0)));
  const double dt = t / substeps;
  const int m_max = static_cast<int>(std::min<std::int64_t>(dim, 56));

  Eigen::VectorXcd v = state.amplitudes();
  const double input_norm = v.norm();
  v /= input_norm;

  for (int step = 0; step < substeps; ++step) {
    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v);
    Eigen::VectorXcd w(dim);
    Eigen::VectorXd combo;
    int m = 0;
    bool lucky = false;
    while (m < m_max) {
      h.apply(basis[m], w);
      const double a = std::real(basis[m].dot(w));
      alpha.push_back(a);
      w -= a * basis[m];
      if (m > 0) w -= beta[m - 1] * basis[m - 1];
      for (const auto& b : basis) w -= b.dot(w) * b;
      const double bn = w.norm();
      ++m;
      if (bn < 1e-14) {
        lucky = true;
        break;
      }
      // error estimate: weight of the frontier component under exp(-i dt T)
      if (m >= 6 && m % 2 == 0) {
        Eigen::VectorXd ad = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd bd(m - 1);
        for (int j = 0; j + 1 < m; ++j) bd[j] = beta[j];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(ad, bd);
        Eigen::VectorXcd e1 = es.eigenvectors().row(0).cast<cd>();
        for (int j = 0; j < m; ++j) {
          e1[j] = std::conj(e1[j]) * std::exp(cd(0.0, -es.eigenvalues()[j] * dt));
        }
        Eigen::VectorXcd u = es.eigenvectors().cast<cd>() * e1;
        if (bn * std::abs(u[m - 1]) * std::abs(dt) < tol) break;
      }
      beta.push_back(bn);
      basis.push_back(w / bn);
    }
    (void)lucky;
    const int mm = static_cast<int>(alpha.size());
    Eigen::VectorXd ad = Eigen::Map<Eigen::VectorXd>(alpha.data(), mm);
    Eigen::VectorXd bd(mm > 1 ? mm - 1 : 0);
    for (int j = 0; j + 1 < mm; ++j) bd[j] = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(ad, bd);
    Eigen::VectorXcd e1(mm);
    for (int j = 0; j < mm; ++j) {
      e1[j] = std::conj(cd(es.eigenvectors()(0, j))) *
              std::exp(cd(0.0, -es.eigenvalues()[j] * dt));
    }
    Eigen::VectorXcd coef = es.eigenvectors().cast<cd>() * e1;
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < mm; ++j) next += coef[j] * basis[j];
    v = next;
    v.normalize();
  }
  return StateVector(state.n_qubits(), v * input_norm);
}

// ---------------------------------------------------------------------------
// Variational vacuum ansatz

std::vector<std::pair<int, int>> VacuumAnsatz::gate_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  const int bricks = (cnot_layers + 1) / 2;
  for (int k = 0; k < bricks; ++k) {
    const int start = (k % 2 == 0) ? 0 : 1;
    for (int a = start; a + 1 < n_qubits; a += 2) pairs.emplace_back(a, a + 1);
  }
  return pairs;
}

StateVector VacuumAnsatz::prepare(const Eigen::VectorXd& params) const {
  const auto pairs = gate_pairs();
  if (params.size() != 2 * static_cast<int>(pairs.size())) {
    throw std::invalid_argument("ansatz parameter count mismatch");
  }
  // Neel pattern: odd sites occupied (the heavy-mass vacuum)
  std::uint64_t neel = 0;
  for (int q = 1; q < n_qubits; q += 2) neel |= (std::uint64_t{1} << q);
  StateVector s = StateVector::basis_state(n_qubits, neel);
  for (std::size_t g = 0; g < pairs.size(); ++g) {
    s.apply_givens(pairs[g].first, pairs[g].second, params[2 * g]);
    s.apply_phase(pairs[g].second, params[2 * g + 1]);
  }
  return s;
}

namespace {

double nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                   Eigen::VectorXd& x, double step, int max_iter) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
    if (std::abs(vals[n] - vals[0]) < 1e-13) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + (centroid - pts[n]);
    double fr = f(xr);
    if (fr < vals[0]) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[n]);
      double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
    } else {
      Eigen::VectorXd xc = centroid + 0.5 * (pts[n] - centroid);
      double fc = f(xc);
      if (fc < vals[n]) {
        pts[n] = xc;
        vals[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  x = pts[best];
  return vals[best];
}

}  // namespace

AnsatzResult optimize_vacuum_ansatz(const SparseOperator& h,
                                    const VacuumAnsatz& ansatz,
                                    std::uint64_t seed) {
  const auto sector = charge_sector_basis(ansatz.n_qubits, 0);
  GroundState gs = ground_state_exact(h, sector);
  const Eigen::VectorXcd& target = gs.state.amplitudes();

  auto overlap = [&](const Eigen::VectorXd& params) {
    StateVector s = ansatz.prepare(params);
    return std::norm(target.dot(s.amplitudes()));
  };

  Eigen::VectorXd params = Eigen::VectorXd::Zero(ansatz.param_count());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int i = 0; i < params.size(); ++i) params[i] = jitter(rng);

  // coordinate-wise parabolic sweeps
  double best = overlap(params);
  for (int sweep = 0; sweep < 12; ++sweep) {
    double delta = 0.4 / (1 + sweep);
    double improved = 0.0;
    for (int i = 0; i < params.size(); ++i) {
      for (int refine = 0; refine < 3; ++refine) {
        const double p0 = params[i];
        const double fm = [&] {
          params[i] = p0 - delta;
          return overlap(params);
        }();
        const double fp = [&] {
          params[i] = p0 + delta;
          return overlap(params);
        }();
        params[i] = p0;
        const double f0 = overlap(params);
        const double denom = fm - 2 * f0 + fp;
        double cand = p0;
        if (std::abs(denom) > 1e-15) {
          cand = p0 - 0.5 * delta * (fp - fm) / denom;
          cand = std::clamp(cand, p0 - 2 * delta, p0 + 2 * delta);
        } else if (fp > f0 || fm > f0) {
          cand = (fp > fm) ? p0 + delta : p0 - delta;
        }
        params[i] = cand;
        const double fc = overlap(params);
        if (fc < f0 && fc < fp && fc < fm) {
          // keep the best sampled point instead
          if (f0 >= fp && f0 >= fm) {
            params[i] = p0;
          } else {
            params[i] = (fp > fm) ? p0 + delta : p0 - delta;
          }
        }
        delta *= 0.5;
      }
      improved = std::max(improved, overlap(params) - best);
    }
    const double now = overlap(params);
    if (now - best < 1e-9 && sweep > 2) {
      best = now;
      break;
    }
    best = std::max(best, now);
  }

  // simplex polish on the negated objective
  auto neg = [&](const Eigen::VectorXd& p) { return -overlap(p); };
  nelder_mead(neg, params, 0.05, 4000);

  AnsatzResult result;
  result.params = params;
  result.fidelity = overlap(params);
  return result;
}

}  // namespace thirring
