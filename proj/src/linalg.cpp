#include "tcqsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tcqsim/error.hpp"

namespace tcqsim::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction of a symmetric matrix (row-major, destroyed) to
// tridiagonal form with accumulation of the orthogonal transform, which is
// left in `a` on return.  d receives the diagonal, e the subdiagonal
// (e[0] unused).
void householder_reduce(int n, std::vector<double>& a, std::vector<double>& d,
                        std::vector<double>& e) {
  auto A = [&](int i, int j) -> double& { return a[size_t(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          A(j, i) = A(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          const double* row_i = &a[size_t(i) * n];
          double* row_j = &a[size_t(j) * n];
          for (int k = 0; k <= j; ++k) row_j[k] -= f * e[k] + g * row_i[k];
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
        for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
      }
    }
    d[i] = A(i, i);
    A(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) {
      A(j, i) = 0.0;
      A(i, j) = 0.0;
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e); applies the rotations to the
// columns of zc, stored column-major so each rotation touches two
// contiguous stripes.  Throws if any eigenvalue needs more than the sweep
// budget.
void ql_implicit_shift(int n, std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& zc) {
  constexpr int kMaxSweeps = 50;

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          double offnorm = 0.0;
          for (int k = 0; k < n - 1; ++k) offnorm += e[k] * e[k];
          std::ostringstream msg;
          msg << "eigh: QL failed to converge for eigenvalue " << l << " in "
              << kMaxSweeps << " sweeps; residual off-diagonal norm "
              << std::sqrt(offnorm);
          throw NumericsError(msg.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double* zi = &zc[size_t(i) * n];
          double* zi1 = &zc[size_t(i + 1) * n];
          for (int k = 0; k < n; ++k) {
            f = zi1[k];
            zi1[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

OperatorMatrix::OperatorMatrix(int dim, std::string basis_tag)
    : dim_(dim), a_(size_t(dim) * size_t(dim), 0.0), tag_(std::move(basis_tag)) {
  if (dim < 0) throw InvalidParameter("OperatorMatrix: negative dimension");
}

OperatorMatrix::OperatorMatrix(int dim, std::vector<double> entries,
                               std::string basis_tag)
    : dim_(dim), a_(std::move(entries)), tag_(std::move(basis_tag)) {
  if (dim < 0) throw InvalidParameter("OperatorMatrix: negative dimension");
  if (a_.size() != size_t(dim) * size_t(dim))
    throw InvalidParameter("OperatorMatrix: entry count does not match dim^2");
}

OperatorMatrix OperatorMatrix::identity(int dim, std::string basis_tag) {
  OperatorMatrix m(dim, std::move(basis_tag));
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::diagonal(const std::vector<double>& values,
                                        std::string basis_tag) {
  OperatorMatrix m(int(values.size()), std::move(basis_tag));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[size_t(i)];
  return m;
}

double OperatorMatrix::max_abs() const {
  double mx = 0.0;
  for (double v : a_) mx = std::max(mx, std::abs(v));
  return mx;
}

double OperatorMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double OperatorMatrix::symmetry_defect() const {
  double mx = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      mx = std::max(mx, std::abs((*this)(i, j) - (*this)(j, i)));
  return mx;
}

bool OperatorMatrix::is_symmetric(double rel_tol) const {
  return symmetry_defect() <= rel_tol * std::max(max_abs(), 1e-300);
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (other.dim_ != dim_) throw InvalidParameter("matrix add: dim mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  if (other.dim_ != dim_) throw InvalidParameter("matrix sub: dim mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(double scale) {
  for (double& v : a_) v *= scale;
  return *this;
}

OperatorMatrix& OperatorMatrix::add_scaled(double scale,
                                           const OperatorMatrix& other) {
  if (other.dim_ != dim_) throw InvalidParameter("add_scaled: dim mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += scale * other.a_[i];
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidParameter("matmul: dim mismatch");
  const int n = a.dim();
  OperatorMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

void require_symmetric(const OperatorMatrix& m, const std::string& what) {
  const double defect = m.symmetry_defect();
  const double tol = 1e-12 * std::max(m.max_abs(), 1e-300);
  if (defect > tol) {
    std::ostringstream msg;
    msg << what << ": matrix not symmetric (defect " << defect
        << ", tolerance " << tol << ")";
    throw NumericsError(msg.str());
  }
}

double EighResult::matrix_element(const OperatorMatrix& op, int bra,
                                  int ket) const {
  const int n = vectors.dim();
  double out = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += op(i, j) * vectors(j, ket);
    out += vectors(i, bra) * row;
  }
  return out;
}

EighResult eigh(const OperatorMatrix& m) {
  require_symmetric(m, "eigh");
  const int n = m.dim();
  if (n == 0) return {{}, OperatorMatrix(0)};

  // Work on the exactly symmetrized copy so QL sees one well-defined matrix.
  std::vector<double> a(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[size_t(i) * n + j] = 0.5 * (m(i, j) + m(j, i));

  std::vector<double> d(static_cast<size_t>(n)), e(static_cast<size_t>(n));
  householder_reduce(n, a, d, e);

  // Column-major copy of the accumulated transform for the rotation sweeps.
  std::vector<double> zc(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) zc[size_t(k) * n + i] = a[size_t(i) * n + k];

  ql_implicit_shift(n, d, e, zc);

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return d[size_t(x)] < d[size_t(y)]; });

  EighResult out;
  out.values.resize(size_t(n));
  out.vectors = OperatorMatrix(n, m.basis_tag());
  for (int k = 0; k < n; ++k) {
    const int src = order[size_t(k)];
    out.values[size_t(k)] = d[size_t(src)];
    const double* col = &zc[size_t(src) * n];
    // Sign convention: largest-magnitude component positive.
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
    const double sign = col[imax] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * col[i];
  }
  return out;
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b,
                    int max_dim) {
  const long long nd = static_cast<long long>(a.dim()) * b.dim();
  if (nd > max_dim) {
    std::ostringstream msg;
    msg << "kron: result dimension " << nd << " exceeds limit " << max_dim;
    throw InvalidParameter(msg.str());
  }
  const int na = a.dim(), nb = b.dim();
  OperatorMatrix out(static_cast<int>(nd));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

OperatorMatrix congruence_transform(const OperatorMatrix& m,
                                    const OperatorMatrix& basis, int keep) {
  const int n = m.dim();
  if (basis.dim() != n)
    throw InvalidParameter("congruence_transform: basis dim mismatch");
  const int k = keep < 0 ? n : keep;
  if (k > n)
    throw InvalidParameter("congruence_transform: keep exceeds dimension");

  double gram_dev = 0.0;
  for (int p = 0; p < k; ++p)
    for (int q = p; q < k; ++q) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += basis(i, p) * basis(i, q);
      gram_dev = std::max(gram_dev, std::abs(dot - (p == q ? 1.0 : 0.0)));
    }
  if (gram_dev > 1e-8) {
    std::ostringstream msg;
    msg << "congruence_transform: basis not orthonormal (Gram deviation "
        << gram_dev << ")";
    throw NumericsError(msg.str());
  }

  // T = m * B, then out = B^T * T.
  std::vector<double> t(size_t(n) * k, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double mij = m(i, j);
      if (mij == 0.0) continue;
      for (int p = 0; p < k; ++p) t[size_t(i) * k + p] += mij * basis(j, p);
    }
  OperatorMatrix out(k, m.basis_tag());
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += basis(i, p) * t[size_t(i) * k + q];
      out(p, q) = sum;
    }
  if (m.is_symmetric()) {
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q) {
        const double avg = 0.5 * (out(p, q) + out(q, p));
        out(p, q) = avg;
        out(q, p) = avg;
      }
  }
  return out;
}

namespace {

// Lower-triangular Cholesky factor; false if not positive definite.
bool cholesky(const OperatorMatrix& m, std::vector<double>& l) {
  const int n = m.dim();
  l.assign(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = m(i, j);
      for (int k = 0; k < j; ++k)
        sum -= l[size_t(i) * n + k] * l[size_t(j) * n + k];
      if (i == j) {
        if (sum <= 0.0) return false;
        l[size_t(i) * n + j] = std::sqrt(sum);
      } else {
        l[size_t(i) * n + j] = sum / l[size_t(j) * n + j];
      }
    }
  }
  return true;
}

}  // namespace

bool is_positive_definite(const OperatorMatrix& m) {
  std::vector<double> l;
  return m.is_symmetric(1e-10) && cholesky(m, l);
}

OperatorMatrix spd_inverse(const OperatorMatrix& m) {
  require_symmetric(m, "spd_inverse");
  const int n = m.dim();
  std::vector<double> l;
  if (!cholesky(m, l))
    throw NumericsError(
        "spd_inverse: matrix not positive definite "
        "(network disconnected from ground?)");
  OperatorMatrix inv(n, m.basis_tag());
  std::vector<double> col(static_cast<size_t>(n));
  for (int rhs = 0; rhs < n; ++rhs) {
    // forward solve L y = e_rhs
    for (int i = 0; i < n; ++i) {
      double sum = i == rhs ? 1.0 : 0.0;
      for (int k = 0; k < i; ++k) sum -= l[size_t(i) * n + k] * col[size_t(k)];
      col[size_t(i)] = sum / l[size_t(i) * n + i];
    }
    // backward solve L^T x = y
    for (int i = n - 1; i >= 0; --i) {
      double sum = col[size_t(i)];
      for (int k = i + 1; k < n; ++k)
        sum -= l[size_t(k) * n + i] * col[size_t(k)];
      col[size_t(i)] = sum / l[size_t(i) * n + i];
    }
    for (int i = 0; i < n; ++i) inv(i, rhs) = col[size_t(i)];
  }
  // Exact symmetry for downstream checks.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = avg;
      inv(j, i) = avg;
    }
  return inv;
}

}  // namespace tcqsim::linalg
