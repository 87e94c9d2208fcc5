#pragma once

#include "thirring/pauli.hpp"

#include <optional>
#include <vector>

namespace thirring {

/// g(lambda) = cos((pi - lambda)/2), lambda in (-pi, pi].
double coupling_from_lambda(double lambda);

/// Physical configuration of the staggered Thirring chain (periodic, a = 1).
struct ModelParams {
  int n_sites = 0;
  double mass = 0.0;
  double coupling_g = 0.0;
  std::optional<double> lambda;

  static ModelParams make(int n_sites, double mass, double coupling_g);
  static ModelParams make_from_lambda(int n_sites, double mass, double lambda);
  void validate() const;
};

/// Spin Hamiltonian via the Jordan-Wigner mapping, identity terms kept.
PauliSum build_pauli_hamiltonian(const ModelParams& params);

// JW ladder operators as sparse 2^N matrices (qubit n = site n, bit = occupation)
SparseOperator ladder_create(int n_sites, int site);
SparseOperator ladder_annihilate(int n_sites, int site);

/// Hamiltonian assembled from ladder-matrix products; spectrally identical to
/// the Pauli path. Dense/sparse representable up to n_sites = 20.
SparseOperator build_fermionic_hamiltonian(const ModelParams& params);

/// Sorted basis indices with sum_n sigma^z_n = total_z (occupied bit -> -1).
/// Impossible sectors yield an empty set.
std::vector<std::uint64_t> charge_sector_basis(int n_sites, int total_z);

/// Matrix-free H application: one diagonal pass plus one pass per hopping bond.
/// Usable far beyond the explicit-matrix sizes.
class LatticeHamiltonian {
 public:
  explicit LatticeHamiltonian(const ModelParams& params);

  int n_sites() const { return params_.n_sites; }
  std::int64_t dim() const { return std::int64_t{1} << params_.n_sites; }
  const ModelParams& params() const { return params_; }

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;
  double diagonal(std::uint64_t basis) const;
  /// 1-norm of coefficients, a cheap upper bound on the spectral range.
  double coeff_norm_bound() const;

  /// Sector-restricted sparse matrix over the given basis index list.
  Eigen::SparseMatrix<cd> sector_matrix(
      const std::vector<std::uint64_t>& basis) const;

 private:
  ModelParams params_;
  std::vector<double> diag_;
};

}  // namespace thirring
