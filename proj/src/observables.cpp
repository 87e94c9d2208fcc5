#include "thirring/observables.hpp"

#include "thirring/givens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thirring {

double particle_density(const StateVector& state, int site) {
  return state.particle_density(site);
}

ObservableSeries delta_density_series(const std::vector<StateVector>& states,
                                      const std::vector<double>& times,
                                      const StateVector& vacuum) {
  if (states.size() != times.size()) {
    throw std::invalid_argument("state/time count mismatch");
  }
  const int n = vacuum.n_qubits();
  StateVector vac = vacuum;
  vac.normalize();
  Eigen::VectorXd vac_density(n);
  for (int s = 0; s < n; ++s) vac_density[s] = vac.particle_density(s);

  ObservableSeries series;
  series.kind = SeriesKind::delta_density;
  series.times = times;
  series.values.resize(static_cast<int>(times.size()), n);
  for (std::size_t ti = 0; ti < states.size(); ++ti) {
    StateVector st = states[ti];
    st.normalize();
    for (int s = 0; s < n; ++s) {
      series.values(int(ti), s) = st.particle_density(s) - vac_density[s];
    }
  }
  return series;
}

EntropySeries entropy_series(const std::vector<StateVector>& pair_states,
                             const std::vector<StateVector>& c_only_states,
                             const std::vector<StateVector>& d_only_states,
                             const StateVector& vacuum,
                             const std::vector<double>& times) {
  const std::size_t nt = times.size();
  if (pair_states.size() != nt || c_only_states.size() != nt ||
      d_only_states.size() != nt) {
    throw std::invalid_argument("trajectory lengths differ");
  }
  const int n = vacuum.n_qubits();
  StateVector vac = vacuum;
  vac.normalize();
  Eigen::VectorXd vac_entropy(n - 1);
  for (int cut = 1; cut < n; ++cut) {
    vac_entropy[cut - 1] = entanglement_entropy_bits(vac, cut);
  }

  EntropySeries out;
  out.s1.kind = SeriesKind::s1;
  out.s2.kind = SeriesKind::s2;
  out.s1.times = times;
  out.s2.times = times;
  out.s1.values.resize(int(nt), n - 1);
  out.s2.values.resize(int(nt), n - 1);

  auto delta_s1 = [&](const StateVector& raw, int cut) {
    StateVector st = raw;
    st.normalize();
    return entanglement_entropy_bits(st, cut) - vac_entropy[cut - 1];
  };

  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (int cut = 1; cut < n; ++cut) {
      const double s1 = delta_s1(pair_states[ti], cut);
      const double s1c = delta_s1(c_only_states[ti], cut);
      const double s1d = delta_s1(d_only_states[ti], cut);
      out.s1.values(int(ti), cut - 1) = s1;
      out.s2.values(int(ti), cut - 1) = s1 - (s1c + s1d);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

cd MultiIndex::coefficient() const {
  const cd i(0.0, 1.0);
  cd c = 1.0;
  if (mu[0] == 'y') c *= i;
  if (mu[1] == 'y') c *= -i;
  if (mu[2] == 'y') c *= i;
  if (mu[3] == 'y') c *= -i;
  return c;
}

std::array<MultiIndex, 16> MultiIndex::all() {
  std::array<MultiIndex, 16> out;
  int idx = 0;
  const char opts[2] = {'x', 'y'};
  for (char m1 : opts)
    for (char m2 : opts)
      for (char m3 : opts)
        for (char m4 : opts) out[idx++] = MultiIndex{{m1, m2, m3, m4}};
  return out;
}

FactorizedState FactorizedState::make(const Eigen::VectorXcd& vacuum,
                                      const Eigen::VectorXcd& phi_c_position,
                                      const Eigen::VectorXcd& phi_d_position,
                                      std::optional<Eigen::MatrixXcd> evolution) {
  FactorizedState fs;
  fs.n_sites = static_cast<int>(phi_c_position.size());
  fs.vacuum = vacuum;
  fs.evolution = std::move(evolution);

  std::vector<PacketAmplitudes> c_packet{{phi_c_position, Species::fermion}};
  std::vector<PacketAmplitudes> d_packet{{phi_d_position, Species::antifermion}};
  const PreparedCircuit pc_c = synthesize_state_prep(c_packet, true);
  const PreparedCircuit pc_d = synthesize_state_prep(d_packet, true);
  fs.v_c = program_for_v(pc_c.stages.front().decomp);
  fs.v_dstar = program_for_v(pc_d.stages.front().decomp);
  return fs;
}

namespace {

void apply_single_pauli(StateVector& s, char p, int q) {
  if (p == 'x') {
    s.apply_x(q);
  } else if (p == 'y') {
    s.apply_y(q);
  } else {
    throw std::invalid_argument("insertion must be x or y");
  }
}

}  // namespace

StateVector FactorizedState::branch(char first, char second) const {
  StateVector s(n_sites, vacuum);
  // U1 = V^dag(phi^c) U0
  s.apply_program(v_c.adjoint());
  apply_single_pauli(s, first, 0);
  // U2 = V^dag(phi^{d*}) V(phi^c)
  s.apply_program(v_c);
  s.apply_program(v_dstar.adjoint());
  apply_single_pauli(s, second, 0);
  // U3 = evolution V(phi^{d*})
  s.apply_program(v_dstar);
  if (evolution) s.apply_dense_on_low(*evolution, n_sites);
  return s;
}

StateVector FactorizedState::combined() const {
  const cd i(0.0, 1.0);
  Eigen::VectorXcd acc =
      Eigen::VectorXcd::Zero(std::int64_t{1} << n_sites);
  const char opts[2] = {'x', 'y'};
  for (char m3 : opts) {
    for (char m4 : opts) {
      const cd a = (m3 == 'y') ? i : cd(1.0);
      const cd b = (m4 == 'y') ? -i : cd(1.0);
      acc += 0.25 * a * b * branch(m4, m3).amplitudes();
    }
  }
  return StateVector(n_sites, std::move(acc));
}

ShotEstimate shot_sample(double z, long shots, std::mt19937_64& rng) {
  if (shots <= 0) return {z, 0.0};
  const double p = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
  std::binomial_distribution<long> dist(shots, p);
  const long ones = dist(rng);
  const double mean = 2.0 * double(ones) / double(shots) - 1.0;
  const double var = std::max(0.0, 1.0 - mean * mean);
  return {mean, std::sqrt(var / double(shots))};
}

ExpectationAssembler::ExpectationAssembler(FactorizedState fs)
    : fs_(std::move(fs)) {
  const char opts[2] = {'x', 'y'};
  for (int f = 0; f < 2; ++f) {
    for (int s = 0; s < 2; ++s) {
      branches_[2 * f + s] = fs_.branch(opts[f], opts[s]);
    }
  }
}

double ExpectationAssembler::term_direct(const MultiIndex& mu,
                                         const PauliSum& obs) const {
  if (!obs.is_hermitian(1e-10)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  const StateVector& bra = branches_[2 * (mu.mu[0] == 'y') + (mu.mu[1] == 'y')];
  const StateVector& ket = branches_[2 * (mu.mu[3] == 'y') + (mu.mu[2] == 'y')];
  Eigen::VectorXcd o_ket;
  obs.apply(ket.amplitudes(), o_ket);
  const cd val = bra.amplitudes().dot(o_ket);
  return 2.0 * std::real(mu.coefficient() * val);
}

double ExpectationAssembler::term_circuit_impl(const MultiIndex& mu,
                                               const PauliSum& obs, long shots,
                                               std::mt19937_64* rng) const {
  if (!obs.is_hermitian(1e-10)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  const int n = fs_.n_sites;
  const int anc = n;
  const cd c = mu.coefficient();
  const bool imaginary = std::abs(c.real()) < 0.5;
  const double sign = imaginary ? (c.imag() > 0 ? -1.0 : 1.0) : c.real();

  double total = 0.0;
  for (const auto& term : obs.terms()) {
    if (std::abs(term.coeff.imag()) > 1e-10) {
      throw std::invalid_argument("Hermitian observable needs real weights");
    }
    // ancilla starts |0>, system starts in the vacuum
    Eigen::VectorXcd amps =
        Eigen::VectorXcd::Zero(std::int64_t{1} << (n + 1));
    amps.head(std::int64_t{1} << n) = fs_.vacuum;
    StateVector s(n + 1, std::move(amps));
    if (imaginary) {
      s.apply_rx(anc, std::numbers::pi / 2.0);  // gate G for c in {+-i}
    } else {
      s.apply_h(anc);  // gate G for c in {+-1}
    }

    auto controlled_insertion = [&](char which, bool anc_value) {
      std::string ops(n + 1, 'I');
      ops[0] = (which == 'y') ? 'Y' : 'X';
      s.apply_controlled_pauli(anc, anc_value, ops);
    };

    s.apply_program(fs_.v_c.adjoint());        // U1 after the vacuum init
    controlled_insertion(mu.mu[0], false);     // bra-side branch
    controlled_insertion(mu.mu[3], true);      // ket-side branch
    s.apply_program(fs_.v_c);                  // U2
    s.apply_program(fs_.v_dstar.adjoint());
    controlled_insertion(mu.mu[1], false);
    controlled_insertion(mu.mu[2], true);
    s.apply_program(fs_.v_dstar);              // U3
    if (fs_.evolution) s.apply_dense_on_low(*fs_.evolution, n);

    // controlled observable string on the ket branch
    std::string obs_ops = term.ops + "I";
    s.apply_controlled_pauli(anc, true, obs_ops);

    s.apply_h(anc);
    double z = s.z_expectation(anc);
    if (rng != nullptr) z = shot_sample(z, shots, *rng).mean;
    total += term.coeff.real() * 2.0 * sign * z;
  }
  return total;
}

double ExpectationAssembler::term_circuit(const MultiIndex& mu,
                                          const PauliSum& obs) const {
  return term_circuit_impl(mu, obs, 0, nullptr);
}

double ExpectationAssembler::term_circuit_sampled(const MultiIndex& mu,
                                                  const PauliSum& obs,
                                                  long shots,
                                                  std::mt19937_64& rng) const {
  return term_circuit_impl(mu, obs, shots, &rng);
}

double ExpectationAssembler::norm_term() const {
  const PauliSum one = PauliSum::identity(fs_.n_sites);
  double acc = 0.0;
  for (const auto& mu : MultiIndex::all()) acc += term_direct(mu, one);
  return acc / 32.0;
}

double ExpectationAssembler::assemble(const PauliSum& obs,
                                      bool via_circuit) const {
  const PauliSum one = PauliSum::identity(fs_.n_sites);
  double num = 0.0, den = 0.0;
  for (const auto& mu : MultiIndex::all()) {
    if (via_circuit) {
      num += term_circuit(mu, obs);
      den += term_circuit(mu, one);
    } else {
      num += term_direct(mu, obs);
      den += term_direct(mu, one);
    }
  }
  if (std::abs(den) < 32.0 * 1e-12) {
    throw std::runtime_error("degenerate state: packet annihilated the state");
  }
  return num / den;
}

double ExpectationAssembler::assemble_sampled(const PauliSum& obs, long shots,
                                              std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  double num = 0.0, den = 0.0;
  const PauliSum one = PauliSum::identity(fs_.n_sites);
  for (const auto& mu : MultiIndex::all()) {
    num += term_circuit_sampled(mu, obs, shots, rng);
    den += term_circuit_sampled(mu, one, shots, rng);
  }
  if (std::abs(den) < 1e-9) {
    throw std::runtime_error("degenerate sampled normalization");
  }
  return num / den;
}

}  // namespace thirring
