#include "thirring/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace thirring {

namespace {

// single-site products P1*P2 -> (phase, P)
struct SiteProd {
  cd phase;
  char op;
};

SiteProd site_product(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  const cd i(0.0, 1.0);
  // cyclic: XY=iZ, YZ=iX, ZX=iY; reversed order picks up -1
  if (a == 'X' && b == 'Y') return {i, 'Z'};
  if (a == 'Y' && b == 'Z') return {i, 'X'};
  if (a == 'Z' && b == 'X') return {i, 'Y'};
  if (a == 'Y' && b == 'X') return {-i, 'Z'};
  if (a == 'Z' && b == 'Y') return {-i, 'X'};
  if (a == 'X' && b == 'Z') return {-i, 'Y'};
  throw std::invalid_argument("invalid Pauli label");
}

void check_op_string(const std::string& ops) {
  for (char c : ops) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("invalid Pauli string: " + ops);
    }
  }
}

}  // namespace

PauliStringAction::PauliStringAction(const std::string& ops) {
  check_op_string(ops);
  int n_y = 0;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    const char c = ops[q];
    if (c == 'X' || c == 'Y') flip_mask |= (std::uint64_t{1} << q);
    if (c == 'Y' || c == 'Z') z_mask |= (std::uint64_t{1} << q);
    if (c == 'Y') ++n_y;
  }
  const cd i(0.0, 1.0);
  prefactor = 1.0;
  for (int k = 0; k < (n_y & 3); ++k) prefactor *= i;
}

cd PauliStringAction::phase(std::uint64_t basis_in) const {
  const int par = std::popcount(basis_in & z_mask) & 1;
  return par ? -prefactor : prefactor;
}

bool SparseOperator::is_hermitian(double tol) const {
  Eigen::SparseMatrix<cd> d = mat - Eigen::SparseMatrix<cd>(mat.adjoint());
  for (int k = 0; k < d.outerSize(); ++k) {
    for (Eigen::SparseMatrix<cd>::InnerIterator it(d, k); it; ++it) {
      if (std::abs(it.value()) > tol) return false;
    }
  }
  return true;
}

std::string SparseOperator::serialize() const {
  std::ostringstream out;
  out.precision(17);
  for (int k = 0; k < mat.outerSize(); ++k) {
    for (Eigen::SparseMatrix<cd>::InnerIterator it(mat, k); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
    }
  }
  return out.str();
}

SparseOperator SparseOperator::parse(const std::string& text, int n_sites) {
  const std::int64_t dim = std::int64_t{1} << n_sites;
  std::vector<Eigen::Triplet<cd>> trips;
  std::istringstream in(text);
  std::int64_t r, c;
  double re, im;
  while (in >> r >> c >> re >> im) {
    trips.emplace_back(r, c, cd(re, im));
  }
  SparseOperator op;
  op.n_sites = n_sites;
  op.mat.resize(dim, dim);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

PauliSum PauliSum::identity(int n_sites, cd c) {
  PauliSum p(n_sites);
  p.add_term(c, std::string(n_sites, 'I'));
  return p;
}

PauliSum PauliSum::single(int n_sites, int site, char op, cd c) {
  if (site < 0 || site >= n_sites) throw std::out_of_range("pauli site");
  PauliSum p(n_sites);
  std::string ops(n_sites, 'I');
  ops[site] = op;
  p.add_term(c, std::move(ops));
  return p;
}

PauliSum PauliSum::sigma_plus(int n_sites, int site) {
  PauliSum p = single(n_sites, site, 'X', 0.5);
  p += single(n_sites, site, 'Y', cd(0.0, 0.5));
  return p;
}

PauliSum PauliSum::sigma_minus(int n_sites, int site) {
  PauliSum p = single(n_sites, site, 'X', 0.5);
  p += single(n_sites, site, 'Y', cd(0.0, -0.5));
  return p;
}

void PauliSum::add_term(cd coeff, std::string ops) {
  if (static_cast<int>(ops.size()) != n_sites_) {
    throw std::invalid_argument("Pauli string length mismatch");
  }
  check_op_string(ops);
  terms_.push_back({coeff, std::move(ops)});
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (n_sites_ != other.n_sites_) throw std::invalid_argument("size mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  return *this += other * cd(-1.0);
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  PauliSum r = *this;
  r += other;
  return r;
}

PauliSum PauliSum::operator-(const PauliSum& other) const {
  PauliSum r = *this;
  r -= other;
  return r;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (n_sites_ != other.n_sites_) throw std::invalid_argument("size mismatch");
  PauliSum r(n_sites_);
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      cd coeff = a.coeff * b.coeff;
      std::string ops(n_sites_, 'I');
      for (int q = 0; q < n_sites_; ++q) {
        const SiteProd sp = site_product(a.ops[q], b.ops[q]);
        coeff *= sp.phase;
        ops[q] = sp.op;
      }
      r.terms_.push_back({coeff, std::move(ops)});
    }
  }
  r.canonicalize();
  return r;
}

PauliSum PauliSum::operator*(cd scalar) const {
  PauliSum r = *this;
  for (auto& t : r.terms_) t.coeff *= scalar;
  return r;
}

PauliSum PauliSum::adjoint() const {
  PauliSum r = *this;
  for (auto& t : r.terms_) t.coeff = std::conj(t.coeff);
  return r;
}

void PauliSum::canonicalize(double drop_tol) {
  std::map<std::string, cd> merged;
  for (const auto& t : terms_) merged[t.ops] += t.coeff;
  terms_.clear();
  for (const auto& [ops, coeff] : merged) {
    if (std::abs(coeff) >= drop_tol) terms_.push_back({coeff, ops});
  }
}

bool PauliSum::is_hermitian(double tol) const {
  PauliSum d = *this - adjoint();
  d.canonicalize(tol);
  return d.terms_.empty();
}

SparseOperator PauliSum::to_sparse() const {
  const std::int64_t dim = std::int64_t{1} << n_sites_;
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(terms_.size() * dim);
  for (const auto& t : terms_) {
    const PauliStringAction act(t.ops);
    for (std::int64_t b = 0; b < dim; ++b) {
      const std::int64_t row = b ^ static_cast<std::int64_t>(act.flip_mask);
      trips.emplace_back(row, b, t.coeff * act.phase(b));
    }
  }
  SparseOperator op;
  op.n_sites = n_sites_;
  op.mat.resize(dim, dim);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

void PauliSum::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const std::int64_t dim = std::int64_t{1} << n_sites_;
  if (in.size() != dim) throw std::invalid_argument("dimension mismatch");
  out.setZero(dim);
  for (const auto& t : terms_) {
    const PauliStringAction act(t.ops);
    for (std::int64_t b = 0; b < dim; ++b) {
      const std::int64_t row = b ^ static_cast<std::int64_t>(act.flip_mask);
      out[row] += t.coeff * act.phase(b) * in[b];
    }
  }
}

std::string PauliSum::serialize() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) {
    out << t.coeff.real() << ' ' << t.coeff.imag() << ' ' << t.ops << '\n';
  }
  return out.str();
}

PauliSum PauliSum::parse(const std::string& text) {
  std::istringstream in(text);
  double re, im;
  std::string ops;
  std::vector<PauliTerm> terms;
  while (in >> re >> im >> ops) terms.push_back({cd(re, im), ops});
  if (terms.empty()) throw std::invalid_argument("empty PauliSum text");
  PauliSum p(static_cast<int>(terms.front().ops.size()));
  for (auto& t : terms) p.add_term(t.coeff, std::move(t.ops));
  return p;
}

}  // namespace thirring
