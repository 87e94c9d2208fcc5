#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace thirring {

using cd = std::complex<double>;

/// Sparse operator on the 2^N qubit space.
struct SparseOperator {
  int n_sites = 0;
  Eigen::SparseMatrix<cd> mat;

  std::int64_t dim() const { return mat.rows(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat); }
  bool is_hermitian(double tol = 1e-12) const;

  // coordinate-triplet text: one "row col re im" line per stored entry
  std::string serialize() const;
  static SparseOperator parse(const std::string& text, int n_sites);
};

struct PauliTerm {
  cd coeff;
  std::string ops;  // length N over {I,X,Y,Z}; ops[q] acts on qubit q
};

/// Weighted sum of N-qubit Pauli strings with Pauli-algebra arithmetic.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_sites) : n_sites_(n_sites) {}

  static PauliSum identity(int n_sites, cd c = 1.0);
  static PauliSum single(int n_sites, int site, char op, cd c = 1.0);
  // (X_q + i Y_q)/2 and (X_q - i Y_q)/2
  static PauliSum sigma_plus(int n_sites, int site);
  static PauliSum sigma_minus(int n_sites, int site);

  int n_sites() const { return n_sites_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(cd coeff, std::string ops);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator-(const PauliSum& other) const;
  PauliSum operator*(const PauliSum& other) const;
  PauliSum operator*(cd scalar) const;
  PauliSum adjoint() const;

  // lexicographic order, merged coefficients, |c| < drop_tol removed
  void canonicalize(double drop_tol = 1e-15);
  bool is_hermitian(double tol = 1e-12) const;

  SparseOperator to_sparse() const;
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

  // line-oriented text: "<re> <im> <string>"
  std::string serialize() const;
  static PauliSum parse(const std::string& text);

 private:
  int n_sites_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Action of one Pauli string on a basis index: |b> -> phase * |b ^ flip_mask>.
struct PauliStringAction {
  std::uint64_t flip_mask = 0;  // bits where op is X or Y
  std::uint64_t z_mask = 0;     // bits where op is Y or Z (sign from input bit)
  cd prefactor = 1.0;           // i^(#Y)

  explicit PauliStringAction(const std::string& ops);
  cd phase(std::uint64_t basis_in) const;
};

}  // namespace thirring
