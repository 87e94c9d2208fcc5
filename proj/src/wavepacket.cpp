#include "thirring/wavepacket.hpp"

#include <bit>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace thirring {

namespace {
constexpr double kPi = std::numbers::pi;
}

void WavePacketSpec::validate() const {
  if (sigma_k <= 0.0) throw std::domain_error("sigma_k must be positive");
}

Eigen::VectorXcd gaussian_momentum_amplitudes(const WavePacketSpec& spec,
                                              int n_sites) {
  spec.validate();
  const MomentumGrid grid = MomentumGrid::make(n_sites);
  const double k_lo = grid.k.front();
  const double window = kPi;  // grid spans one reduced Brillouin window

  double mu_k = spec.mu_k;
  if (mu_k < k_lo || mu_k >= k_lo + window) {
    const double wrapped =
        k_lo + std::fmod(std::fmod(mu_k - k_lo, window) + window, window);
    std::cerr << "wavepacket: mu_k = " << mu_k
              << " outside the principal momentum window, wrapped to "
              << wrapped << "\n";
    mu_k = wrapped;
  }

  Eigen::VectorXcd phi(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double k = grid.k[i];
    const double dk = k - mu_k;
    phi[i] = std::exp(cd(0.0, -k * spec.mu_n)) *
             std::exp(-dk * dk / (4.0 * spec.sigma_k * spec.sigma_k));
  }
  phi.normalize();
  return phi;
}

Eigen::VectorXcd position_from_momentum(const Eigen::VectorXcd& phi_k,
                                        Species species, double m,
                                        int n_sites) {
  const MomentumGrid grid = MomentumGrid::make(n_sites);
  if (phi_k.size() != grid.size()) {
    throw std::invalid_argument("momentum amplitude size mismatch");
  }
  Eigen::VectorXcd pos = Eigen::VectorXcd::Zero(n_sites);
  const int main_parity = (species == Species::fermion) ? 0 : 1;
  for (int n = 0; n < n_sites; ++n) {
    cd acc = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double k = grid.k[i];
      const Dispersion d = dispersion(k, m);
      if (d.w <= 0.0) throw std::domain_error("massless zero mode");
      const double weight = std::sqrt((m + d.w) / d.w) *
                            (parity_projector(n, main_parity) +
                             d.v * parity_projector(n, 1 - main_parity));
      acc += phi_k[i] * weight * std::exp(cd(0.0, k * n));
    }
    pos[n] = acc / std::sqrt(double(n_sites));
  }
  return pos;
}

Eigen::VectorXcd position_amplitudes(const WavePacketSpec& spec, double m,
                                     int n_sites) {
  return position_from_momentum(gaussian_momentum_amplitudes(spec, n_sites),
                                spec.species, m, n_sites);
}

cd orthogonality_defect(const Eigen::VectorXcd& phi_c,
                        const Eigen::VectorXcd& phi_d) {
  if (phi_c.size() != phi_d.size()) {
    throw std::invalid_argument("amplitude size mismatch");
  }
  cd acc = 0.0;
  for (int n = 0; n < phi_c.size(); ++n) acc += phi_c[n] * phi_d[n];
  return acc;
}

SparseOperator packet_creation_matrix(const Eigen::VectorXcd& phi_position,
                                      Species species) {
  const int n_sites = static_cast<int>(phi_position.size());
  if (n_sites > 20) throw std::length_error("explicit matrices capped at 20 sites");
  const std::int64_t dim = std::int64_t{1} << n_sites;
  Eigen::SparseMatrix<cd> acc(dim, dim);
  for (int n = 0; n < n_sites; ++n) {
    if (std::abs(phi_position[n]) == 0.0) continue;
    const SparseOperator op = (species == Species::fermion)
                                  ? ladder_create(n_sites, n)
                                  : ladder_annihilate(n_sites, n);
    acc += phi_position[n] * op.mat;
  }
  SparseOperator out;
  out.n_sites = n_sites;
  out.mat = std::move(acc);
  return out;
}

StateVector apply_packet_operator(const StateVector& state,
                                  const Eigen::VectorXcd& phi_position,
                                  Species species) {
  const int n_sites = state.n_qubits();
  if (phi_position.size() != n_sites) {
    throw std::invalid_argument("amplitude size mismatch");
  }
  const std::int64_t dim = state.dim();
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  const bool create = (species == Species::fermion);
  for (int n = 0; n < n_sites; ++n) {
    const cd c = phi_position[n];
    if (std::abs(c) == 0.0) continue;
    const std::int64_t bit = std::int64_t{1} << n;
    const std::uint64_t below = static_cast<std::uint64_t>(bit) - 1;
    for (std::int64_t b = 0; b < dim; ++b) {
      const bool occupied = (b & bit) != 0;
      if (create == occupied) continue;
      const int par = std::popcount(static_cast<std::uint64_t>(b) & below) & 1;
      const cd amp = par ? -c : c;
      out[b ^ bit] += amp * in[b];
    }
  }
  return StateVector(n_sites, std::move(out));
}

}  // namespace thirring
