#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "lrlab/eigen_sym.hpp"
#include "lrlab/landscape.hpp"

using lrlab::Matrix;

TEST_CASE("identity and diagonal matrices") {
  Matrix eye(3, 3);
  for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
  const auto sys = lrlab::eigendecompose(eye);
  for (double v : sys.eigenvalues) CHECK(v == doctest::Approx(1.0));

  Matrix diag(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const auto sorted = lrlab::eigendecompose(diag);
  CHECK(sorted.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sorted.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(sorted.eigenvalues[2] == doctest::Approx(3.0));
  // canonical basis vectors up to sign
  CHECK(std::fabs(sorted.eigenvector(0)[1]) == doctest::Approx(1.0));
  CHECK(std::fabs(sorted.eigenvector(1)[2]) == doctest::Approx(1.0));
  CHECK(std::fabs(sorted.eigenvector(2)[0]) == doctest::Approx(1.0));
}

TEST_CASE("reconstruction and orthonormality on a random instance") {
  const int n = 50;
  const Matrix a = lrlab::scaled_couplings(lrlab::sample_sk(n, 314));
  const auto sys = lrlab::eigendecompose(a);

  double max_err = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double rec = 0.0;
      for (int k = 0; k < n; ++k)
        rec += sys.eigenvalues[k] * sys.vectors(k, i) * sys.vectors(k, j);
      max_err = std::max(max_err, std::fabs(rec - a(i, j)));
    }
  }
  CHECK(max_err <= 1e-8 * std::max(1.0, a.max_abs()));

  double max_ortho = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += sys.vectors(p, i) * sys.vectors(q, i);
      max_ortho = std::max(max_ortho, std::fabs(dot - (p == q ? 1.0 : 0.0)));
    }
  }
  CHECK(max_ortho <= 1e-10);

  for (int k = 1; k < n; ++k)
    CHECK(sys.eigenvalues[k] >= sys.eigenvalues[k - 1]);
}

TEST_CASE("values-only path matches the full decomposition") {
  const Matrix a = lrlab::scaled_couplings(lrlab::sample_sk(40, 2718));
  const auto sys = lrlab::eigendecompose(a);
  const auto values = lrlab::sym_eigenvalues(a);
  REQUIRE(values.size() == sys.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    CHECK(values[k] == doctest::Approx(sys.eigenvalues[k]).epsilon(1e-10));
}

TEST_CASE("non-symmetric input rejected") {
  Matrix bad(3, 3);
  bad(0, 1) = 1.0;
  bad(1, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(lrlab::eigendecompose(bad), std::invalid_argument);
}

TEST_CASE("eigenbasis round trip") {
  const Matrix a = lrlab::scaled_couplings(lrlab::sample_sk(20, 5));
  const auto sys = lrlab::eigendecompose(a);
  std::vector<double> x(20);
  for (int i = 0; i < 20; ++i) x[i] = std::sin(i + 1.0);
  const auto c = sys.to_eigenbasis(x);
  const auto back = sys.from_eigenbasis(c);
  for (int i = 0; i < 20; ++i)
    CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-10));
}
