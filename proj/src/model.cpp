#include "thirring/model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace thirring {

namespace {
constexpr double kPi = std::numbers::pi;
}

double coupling_from_lambda(double lambda) {
  if (lambda <= -kPi || lambda > kPi) {
    throw std::domain_error("lambda must lie in (-pi, pi]");
  }
  return std::cos((kPi - lambda) / 2.0);
}

ModelParams ModelParams::make(int n_sites, double mass, double coupling_g) {
  ModelParams p;
  p.n_sites = n_sites;
  p.mass = mass;
  p.coupling_g = coupling_g;
  p.validate();
  return p;
}

ModelParams ModelParams::make_from_lambda(int n_sites, double mass,
                                          double lambda) {
  ModelParams p;
  p.n_sites = n_sites;
  p.mass = mass;
  p.lambda = lambda;
  p.coupling_g = coupling_from_lambda(lambda);
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (n_sites <= 0 || n_sites % 2 != 0) {
    throw std::invalid_argument("n_sites must be positive and even");
  }
  if (coupling_g < -1.0 || coupling_g > 1.0) {
    throw std::invalid_argument("coupling_g must lie in [-1, 1]");
  }
  if (lambda) {
    const double g = coupling_from_lambda(*lambda);
    if (std::abs(g - coupling_g) > 1e-12) {
      throw std::invalid_argument("coupling_g inconsistent with lambda");
    }
  }
}

PauliSum build_pauli_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  const double m = params.mass;
  const double g = params.coupling_g;
  const cd i_half(0.0, 0.5);

  PauliSum h(n);

  // bulk hopping (i/2)(sigma-_{n+1} sigma+_n - sigma-_n sigma+_{n+1})
  for (int s = 0; s + 1 < n; ++s) {
    PauliSum t = PauliSum::sigma_minus(n, s + 1) * PauliSum::sigma_plus(n, s);
    t -= PauliSum::sigma_minus(n, s) * PauliSum::sigma_plus(n, s + 1);
    h += t * i_half;
  }

  // boundary hopping with the full z-string between qubits 1 and N-2
  {
    PauliSum zstring = PauliSum::identity(n);
    for (int l = 1; l <= n - 2; ++l) {
      zstring = zstring * PauliSum::single(n, l, 'Z');
    }
    PauliSum fwd = PauliSum::sigma_minus(n, 0) * zstring *
                   PauliSum::sigma_plus(n, n - 1);
    PauliSum bwd = PauliSum::sigma_minus(n, n - 1) * zstring *
                   PauliSum::sigma_plus(n, 0);
    h += (fwd - bwd) * i_half;
  }

  // staggered mass (m/2) sum (-1)^n (1 - Z_n)
  for (int s = 0; s < n; ++s) {
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    PauliSum t = PauliSum::identity(n) - PauliSum::single(n, s, 'Z');
    h += t * cd(sign * m / 2.0);
  }

  // interaction (g/4) sum (1 - Z_n)(1 - Z_{n+1}), periodic
  if (g != 0.0) {
    for (int s = 0; s < n; ++s) {
      const int t2 = (s + 1) % n;
      PauliSum t = (PauliSum::identity(n) - PauliSum::single(n, s, 'Z')) *
                   (PauliSum::identity(n) - PauliSum::single(n, t2, 'Z'));
      h += t * cd(g / 4.0);
    }
  }

  h.canonicalize();
  return h;
}

SparseOperator ladder_create(int n_sites, int site) {
  if (site < 0 || site >= n_sites) throw std::out_of_range("ladder site");
  const std::int64_t dim = std::int64_t{1} << n_sites;
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t below = bit - 1;
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(dim / 2);
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & static_cast<std::int64_t>(bit)) continue;
    const int par = std::popcount(static_cast<std::uint64_t>(b) & below) & 1;
    trips.emplace_back(b | static_cast<std::int64_t>(bit), b,
                       par ? -1.0 : 1.0);
  }
  SparseOperator op;
  op.n_sites = n_sites;
  op.mat.resize(dim, dim);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

SparseOperator ladder_annihilate(int n_sites, int site) {
  SparseOperator op = ladder_create(n_sites, site);
  op.mat = op.mat.adjoint();
  return op;
}

SparseOperator build_fermionic_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  if (n > 20) throw std::length_error("explicit matrices capped at 20 sites");
  const std::int64_t dim = std::int64_t{1} << n;
  const cd i_half(0.0, 0.5);

  Eigen::SparseMatrix<cd> h(dim, dim);
  std::vector<SparseOperator> cr, an;
  cr.reserve(n);
  an.reserve(n);
  for (int s = 0; s < n; ++s) {
    cr.push_back(ladder_create(n, s));
    an.push_back(ladder_annihilate(n, s));
  }

  for (int s = 0; s < n; ++s) {
    const int t = (s + 1) % n;
    // (i/2) (xi^dag_{n+1} xi_n - xi^dag_n xi_{n+1})
    h += i_half * (cr[t].mat * an[s].mat - cr[s].mat * an[t].mat);
    // staggered mass
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    h += cd(sign * params.mass) * (cr[s].mat * an[s].mat);
    // density-density coupling
    if (params.coupling_g != 0.0) {
      h += cd(params.coupling_g) *
           (cr[s].mat * an[s].mat * cr[t].mat * an[t].mat);
    }
  }
  h.prune([](int, int, const cd& v) { return std::abs(v) > 0.0; });

  SparseOperator op;
  op.n_sites = n;
  op.mat = std::move(h);
  return op;
}

std::vector<std::uint64_t> charge_sector_basis(int n_sites, int total_z) {
  std::vector<std::uint64_t> basis;
  if (std::abs(total_z) > n_sites || (n_sites - total_z) % 2 != 0) {
    return basis;
  }
  const int n_occupied = (n_sites - total_z) / 2;
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (std::popcount(b) == n_occupied) basis.push_back(b);
  }
  return basis;
}

LatticeHamiltonian::LatticeHamiltonian(const ModelParams& params)
    : params_(params) {
  params_.validate();
  const int n = params_.n_sites;
  const std::int64_t dim = std::int64_t{1} << n;
  diag_.resize(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    double d = 0.0;
    for (int s = 0; s < n; ++s) {
      const int occ = (b >> s) & 1;
      const int occ_next = (b >> ((s + 1) % n)) & 1;
      d += (s % 2 == 0 ? 1.0 : -1.0) * params_.mass * occ;
      d += params_.coupling_g * occ * occ_next;
    }
    diag_[b] = d;
  }
}

double LatticeHamiltonian::diagonal(std::uint64_t basis) const {
  return diag_[basis];
}

double LatticeHamiltonian::coeff_norm_bound() const {
  const int n = params_.n_sites;
  return n * (0.5 + std::abs(params_.mass) + std::abs(params_.coupling_g));
}

void LatticeHamiltonian::apply(const Eigen::VectorXcd& in,
                               Eigen::VectorXcd& out) const {
  const int n = params_.n_sites;
  const std::int64_t dim = std::int64_t{1} << n;
  if (in.size() != dim) throw std::invalid_argument("dimension mismatch");
  out.resize(dim);
  for (std::int64_t b = 0; b < dim; ++b) out[b] = diag_[b] * in[b];

  const cd i_half(0.0, 0.5);
  // bulk bonds: <..0_{s+1}1_s..|H|..1_{s+1}0_s..> pairs
  for (int s = 0; s + 1 < n; ++s) {
    const std::int64_t bit_lo = std::int64_t{1} << s;
    const std::int64_t bit_hi = std::int64_t{1} << (s + 1);
    for (std::int64_t b = 0; b < dim; ++b) {
      if ((b & bit_lo) && !(b & bit_hi)) {
        const std::int64_t b2 = (b ^ bit_lo) | bit_hi;  // particle s -> s+1
        const cd v = in[b];
        const cd v2 = in[b2];
        out[b2] += i_half * v;
        out[b] += -i_half * v2;
      }
    }
  }
  // boundary bond N-1 -> 0 with JW string over sites 1..N-2
  {
    const std::int64_t bit0 = 1;
    const std::int64_t bit_top = std::int64_t{1} << (n - 1);
    const std::uint64_t string_mask =
        ((std::uint64_t{1} << (n - 1)) - 2);  // bits 1..n-2
    for (std::int64_t b = 0; b < dim; ++b) {
      if ((b & bit_top) && !(b & bit0)) {
        const std::int64_t b2 = (b ^ bit_top) | bit0;  // particle N-1 -> 0
        const int par =
            std::popcount(static_cast<std::uint64_t>(b) & string_mask) & 1;
        const cd amp = par ? -i_half : i_half;
        out[b2] += amp * in[b];
        out[b] += std::conj(amp) * in[b2];
      }
    }
  }
}

Eigen::VectorXcd LatticeHamiltonian::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out;
  apply(in, out);
  return out;
}

Eigen::SparseMatrix<cd> LatticeHamiltonian::sector_matrix(
    const std::vector<std::uint64_t>& basis) const {
  const int n = params_.n_sites;
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = int(i);

  std::vector<Eigen::Triplet<cd>> trips;
  const cd i_half(0.0, 0.5);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint64_t b = basis[col];
    trips.emplace_back(int(col), int(col), cd(diag_[b]));
    for (int s = 0; s < n; ++s) {
      const int t = (s + 1) % n;
      const std::uint64_t bs = std::uint64_t{1} << s;
      const std::uint64_t bt = std::uint64_t{1} << t;
      // hop s -> t contributes (i/2) * string sign
      if ((b & bs) && !(b & bt)) {
        const std::uint64_t b2 = (b ^ bs) | bt;
        cd amp = i_half;
        if (s == n - 1) {
          const std::uint64_t string_mask = ((std::uint64_t{1} << (n - 1)) - 2);
          if (std::popcount(b & string_mask) & 1) amp = -amp;
        }
        trips.emplace_back(index.at(b2), int(col), amp);
        // reverse hop handled when iterating from b2's column
      }
      if (!(b & bs) && (b & bt)) {
        const std::uint64_t b2 = (b ^ bt) | bs;
        cd amp = -i_half;
        if (s == n - 1) {
          const std::uint64_t string_mask = ((std::uint64_t{1} << (n - 1)) - 2);
          if (std::popcount(b & string_mask) & 1) amp = -amp;
        }
        trips.emplace_back(index.at(b2), int(col), amp);
      }
    }
  }
  Eigen::SparseMatrix<cd> h(basis.size(), basis.size());
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

}  // namespace thirring
