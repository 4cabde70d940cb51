#pragma once

#include <string>
#include <vector>

namespace tcqsim::linalg {

/// Dense square real matrix, row-major, with a free-form basis tag.
/// Operators and Hamiltonians are carried in this one type; symmetry is a
/// property checked where contracts require it, not a storage invariant.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(int dim, std::string basis_tag = {});
  OperatorMatrix(int dim, std::vector<double> entries,
                 std::string basis_tag = {});

  static OperatorMatrix identity(int dim, std::string basis_tag = {});
  static OperatorMatrix diagonal(const std::vector<double>& values,
                                 std::string basis_tag = {});

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[size_t(i) * dim_ + j]; }
  double& operator()(int i, int j) { return a_[size_t(i) * dim_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  const std::string& basis_tag() const { return tag_; }
  void set_basis_tag(std::string tag) { tag_ = std::move(tag); }

  double max_abs() const;
  double trace() const;
  /// max_ij |a_ij - a_ji|
  double symmetry_defect() const;
  bool is_symmetric(double rel_tol = 1e-12) const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(double scale);
  /// *this += scale * other
  OperatorMatrix& add_scaled(double scale, const OperatorMatrix& other);

 private:
  int dim_ = 0;
  std::vector<double> a_;
  std::string tag_;
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

/// Throws NumericsError if m is not symmetric to 1e-12 * max|entry|.
void require_symmetric(const OperatorMatrix& m, const std::string& what);

/// Result of a symmetric eigendecomposition.  `vectors` is square with the
/// k-th eigenvector in column k; columns are orthonormal, values ascending,
/// and each column's largest-magnitude component is positive.
struct EighResult {
  std::vector<double> values;
  OperatorMatrix vectors;

  double value(int k) const { return values[size_t(k)]; }
  double component(int i, int k) const { return vectors(i, k); }
  /// <bra| op |ket> in the original basis.
  double matrix_element(const OperatorMatrix& op, int bra, int ket) const;
};

/// Symmetric eigendecomposition by Householder tridiagonalization followed
/// by implicit-shift QL.  Throws NumericsError on non-symmetric input or if
/// an eigenvalue fails to converge within the sweep budget (the message
/// carries the residual off-diagonal norm).
EighResult eigh(const OperatorMatrix& m);

/// Kronecker product; (i*dim_b + k, j*dim_b + l) = a(i,j) * b(k,l).
/// Throws InvalidParameter if the result dimension exceeds max_dim.
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b,
                    int max_dim = 4096);

/// B^T m B where B is the first `keep` columns of `basis` (all columns when
/// keep < 0).  Columns must be orthonormal to a Gram deviation of 1e-8.
OperatorMatrix congruence_transform(const OperatorMatrix& m,
                                    const OperatorMatrix& basis,
                                    int keep = -1);

/// Cholesky inverse of a symmetric positive-definite matrix.
/// Throws NumericsError if the factorization breaks down.
OperatorMatrix spd_inverse(const OperatorMatrix& m);

/// True iff the Cholesky factorization of m succeeds.
bool is_positive_definite(const OperatorMatrix& m);

}  // namespace tcqsim::linalg
