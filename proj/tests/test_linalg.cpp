#include <cmath>
#include <random>

#include "doctest.h"
#include "tcqsim/error.hpp"
#include "tcqsim/linalg.hpp"

using namespace tcqsim;
using linalg::OperatorMatrix;

namespace {

OperatorMatrix random_symmetric(int n, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  OperatorMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = dist(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Number of eigenvalues of a strictly below x, by Sylvester inertia of the
// shifted matrix under symmetric Gaussian elimination.  Independent of the
// QL solver path.
int eigenvalues_below(OperatorMatrix a, double x) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i) a(i, i) -= x;
  int count = 0;
  for (int k = 0; k < n; ++k) {
    double pivot = a(k, k);
    if (std::abs(pivot) < 1e-300) pivot = 1e-300;
    if (pivot < 0.0) ++count;
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return count;
}

// k-th smallest eigenvalue by bisection on the inertia count.
double bisection_eigenvalue(const OperatorMatrix& m, int k) {
  const int n = m.dim();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    lo = std::min(lo, m(i, i) - radius);
    hi = std::max(hi, m(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eigenvalues_below(m, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double residual_norm(const OperatorMatrix& m, const linalg::EighResult& es,
                     int k) {
  const int n = m.dim();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) r += m(i, j) * es.vectors(j, k);
    r -= es.values[size_t(k)] * es.vectors(i, k);
    sum += r * r;
  }
  return std::sqrt(sum);
}

double matrix_norm_upper(const OperatorMatrix& m) {
  // Frobenius norm as a convenient upper bound on the spectral norm.
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("eigh on Pauli-X is analytic") {
  OperatorMatrix x(2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const auto es = linalg::eigh(x);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(es.vectors(0, 0) == doctest::Approx(s).epsilon(1e-12));
  CHECK(es.vectors(1, 0) == doctest::Approx(-s).epsilon(1e-12));
  CHECK(es.vectors(0, 1) == doctest::Approx(s).epsilon(1e-12));
  CHECK(es.vectors(1, 1) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("eigh on a diagonal matrix is exact") {
  const auto m = OperatorMatrix::diagonal({3.0, 1.0, 2.0});
  const auto es = linalg::eigh(m);
  CHECK(es.values[0] == 1.0);
  CHECK(es.values[1] == 2.0);
  CHECK(es.values[2] == 3.0);
  CHECK(es.vectors(1, 0) == 1.0);
  CHECK(es.vectors(2, 1) == 1.0);
  CHECK(es.vectors(0, 2) == 1.0);

  // Idempotence within 1e-12 on random diagonals.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<double> diag(12);
  for (auto& v : diag) v = dist(rng);
  const auto es2 = linalg::eigh(OperatorMatrix::diagonal(diag));
  std::sort(diag.begin(), diag.end());
  for (int k = 0; k < 12; ++k)
    CHECK(std::abs(es2.values[size_t(k)] - diag[size_t(k)]) <= 1e-12 * 5.0);
}

TEST_CASE("eigh matches the inertia-bisection oracle on random 6x6") {
  for (unsigned seed = 1; seed <= 8; ++seed) {
    const auto m = random_symmetric(6, seed);
    const auto es = linalg::eigh(m);
    for (int k = 0; k < 6; ++k) {
      const double oracle = bisection_eigenvalue(m, k);
      CHECK(es.values[size_t(k)] == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("eigh residuals, orthonormality, trace preservation") {
  const auto m = random_symmetric(40, 42, 3.0);
  const auto es = linalg::eigh(m);
  const double norm = matrix_norm_upper(m);
  for (int k = 0; k < 40; ++k)
    CHECK(residual_norm(m, es, k) <= 1e-9 * norm);
  for (int p = 0; p < 40; ++p)
    for (int q = p; q < 40; ++q) {
      double dot = 0.0;
      for (int i = 0; i < 40; ++i) dot += es.vectors(i, p) * es.vectors(i, q);
      CHECK(std::abs(dot - (p == q ? 1.0 : 0.0)) <= 1e-10);
    }
  double value_sum = 0.0;
  for (double v : es.values) value_sum += v;
  CHECK(value_sum ==
        doctest::Approx(m.trace()).epsilon(1e-9));
}

TEST_CASE("eigh enforces ascending order and the sign convention") {
  const auto m = random_symmetric(25, 99);
  const auto es = linalg::eigh(m);
  for (int k = 1; k < 25; ++k)
    CHECK(es.values[size_t(k)] >= es.values[size_t(k - 1)]);
  for (int k = 0; k < 25; ++k) {
    int imax = 0;
    for (int i = 1; i < 25; ++i)
      if (std::abs(es.vectors(i, k)) > std::abs(es.vectors(imax, k))) imax = i;
    CHECK(es.vectors(imax, k) > 0.0);
  }
}

TEST_CASE("eigh rejects non-symmetric input") {
  OperatorMatrix m(3);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(linalg::eigh(m), NumericsError);
}

TEST_CASE("eigh is deterministic") {
  const auto m = random_symmetric(30, 5);
  const auto a = linalg::eigh(m);
  const auto b = linalg::eigh(m);
  CHECK(a.values == b.values);
  CHECK(a.vectors.data() == b.vectors.data());
}

TEST_CASE("kron identities and trace multiplicativity") {
  const auto i2 = OperatorMatrix::identity(2);
  const auto i3 = OperatorMatrix::identity(3);
  const auto k = linalg::kron(i2, i3);
  CHECK(k.dim() == 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(k(i, j) == (i == j ? 1.0 : 0.0));

  const auto a = random_symmetric(3, 11);
  const auto b = random_symmetric(3, 12);
  const auto ab = linalg::kron(a, b);
  CHECK(ab.trace() == doctest::Approx(a.trace() * b.trace()).epsilon(1e-13));

  // kron(a, I) has a's eigenvalues with multiplicity dim(I).
  const auto ka = linalg::kron(a, i3);
  const auto es_a = linalg::eigh(a);
  const auto es_ka = linalg::eigh(ka);
  for (int k2 = 0; k2 < 3; ++k2)
    for (int rep = 0; rep < 3; ++rep)
      CHECK(es_ka.values[size_t(3 * k2 + rep)] ==
            doctest::Approx(es_a.values[size_t(k2)]).epsilon(1e-12));
}

TEST_CASE("kron assembly is deterministic and associative") {
  const auto a = random_symmetric(2, 21);
  const auto b = random_symmetric(3, 22);
  const auto c = random_symmetric(2, 23);
  const auto left = linalg::kron(linalg::kron(a, b), c);
  const auto right = linalg::kron(a, linalg::kron(b, c));
  // A fixed assembly order is bit-stable; regrouping agrees to rounding.
  const auto left_again = linalg::kron(linalg::kron(a, b), c);
  CHECK(left.data() == left_again.data());
  REQUIRE(left.dim() == right.dim());
  for (int i = 0; i < left.dim(); ++i)
    for (int j = 0; j < left.dim(); ++j)
      CHECK(left(i, j) == doctest::Approx(right(i, j)).epsilon(1e-15));
}

TEST_CASE("kron dimension guard") {
  const auto i70 = OperatorMatrix::identity(70);
  CHECK_THROWS_AS(linalg::kron(i70, i70), InvalidParameter);
  CHECK_NOTHROW(linalg::kron(i70, i70, 4900));
}

TEST_CASE("congruence transform basics") {
  const auto m = random_symmetric(17, 31);
  const auto id = OperatorMatrix::identity(17);
  const auto same = linalg::congruence_transform(m, id);
  for (int i = 0; i < 17; ++i)
    for (int j = 0; j < 17; ++j)
      CHECK(same(i, j) == doctest::Approx(m(i, j)).epsilon(1e-13));

  const auto es = linalg::eigh(m);
  const auto one = linalg::congruence_transform(m, es.vectors, 1);
  CHECK(one.dim() == 1);
  CHECK(one(0, 0) == doctest::Approx(es.values[0]).epsilon(1e-12));

  const auto eight = linalg::congruence_transform(m, es.vectors, 8);
  CHECK(eight.dim() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(eight(i, i) == doctest::Approx(es.values[size_t(i)]).epsilon(1e-11));
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(eight(i, j)) <= 1e-9);
  }
}

TEST_CASE("congruence rejects non-orthonormal bases") {
  const auto m = random_symmetric(5, 77);
  OperatorMatrix bad = OperatorMatrix::identity(5);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(linalg::congruence_transform(m, bad), NumericsError);
}

TEST_CASE("congruence onto leading eigenvectors interlaces the spectrum") {
  for (unsigned seed = 60; seed < 63; ++seed) {
    const auto m = random_symmetric(10, seed);
    const auto es = linalg::eigh(m);
    const auto sub = linalg::congruence_transform(m, es.vectors, 6);
    const auto es_sub = linalg::eigh(sub);
    // Cauchy interlacing: lambda_k(M) <= lambda_k(sub) <= lambda_{k+4}(M).
    for (int k = 0; k < 6; ++k) {
      CHECK(es_sub.values[size_t(k)] >= es.values[size_t(k)] - 1e-10);
      CHECK(es_sub.values[size_t(k)] <= es.values[size_t(k + 4)] + 1e-10);
    }
  }
}

TEST_CASE("spd_inverse inverts and flags indefinite input") {
  const auto a = random_symmetric(6, 101);
  OperatorMatrix spd(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 6; ++k) dot += a(k, i) * a(k, j);
      spd(i, j) = dot;
    }
    spd(i, i) += 1.0;
  }
  const auto inv = linalg::spd_inverse(spd);
  const auto prod = spd * inv;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));

  OperatorMatrix indef = OperatorMatrix::identity(3);
  indef(2, 2) = -1.0;
  CHECK(!linalg::is_positive_definite(indef));
  CHECK_THROWS_AS(linalg::spd_inverse(indef), NumericsError);
}
