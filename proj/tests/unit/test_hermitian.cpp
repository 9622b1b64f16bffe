#include <doctest.h>

#include <cmath>
#include <random>

#include "fockdim/hermitian.hpp"
#include "fockdim/wirtinger.hpp"
#include "oracles.hpp"

using namespace fockdim;
using cd = std::complex<double>;

TEST_SUITE("spectral") {

TEST_CASE("small examples") {
  const double d12[2] = {1.0, 2.0};
  CHECK(min_eigenvalue(HermitianMatrix::diagonal(d12)) == 1.0);
  CHECK(det(HermitianMatrix::identity(2)) == doctest::Approx(1.0));
  // z^* z at z = (1, i) has rank one.
  const HermitianMatrix r1(2, {1.0, cd(0, 1), cd(0, -1), 1.0});
  CHECK(std::abs(min_eigenvalue(r1)) < 1e-15);
  CHECK(min_eigenvalue(HermitianMatrix(1, {cd(-2.5)})) == -2.5);
}

TEST_CASE("determinant witnesses") {
  const cd p[2] = {1.0, 0.0};
  const WeightExpr zw = parse("abs2(z1)+2*log(1+abs2(z2))") - log_norm_weight(3.0, 2);
  CHECK(det(levi(zw, p)) == doctest::Approx(-1.0).epsilon(1e-10));
  const WeightExpr p3 = parse("abs2(z1^3+z2^3)") - log_norm_weight(1.0, 2);
  CHECK(det(levi(p3, p)) == doctest::Approx(-9.0).epsilon(1e-10));
}

TEST_CASE("is_psd tolerances") {
  CHECK(is_psd(HermitianMatrix::identity(3), 0.0));
  const double a[2] = {1.0, -1e-3};
  const double b[2] = {1.0, -1e-9};
  CHECK_FALSE(is_psd(HermitianMatrix::diagonal(a), 1e-6));
  CHECK(is_psd(HermitianMatrix::diagonal(b), 1e-6));
  CHECK(default_psd_tol(HermitianMatrix::identity(2)) == doctest::Approx(2e-9));
}

TEST_CASE("construction symmetrizes") {
  const HermitianMatrix h(2, {1.0, cd(2, 1), cd(0, 0), 3.0});
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(0, 1) == cd(1.0, 0.5));
  CHECK(h(0, 0).imag() == 0.0);
}

TEST_CASE("eigenvalues agree with a dense reference solver") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const auto a = oracle::random_hermitian(n, rng);
    const auto ref = oracle::eigenvalues(a, n);
    const auto ev = eigenvalues(HermitianMatrix(n, a));
    const HermitianMatrix h(n, a);
    for (int i = 0; i < n; ++i) CHECK(std::abs(ev[i] - ref[i]) <= 1e-10 * (1.0 + h.norm_inf()));
  }
}

TEST_CASE("determinant equals the product of eigenvalues") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const auto a = oracle::random_hermitian(n, rng);
    const HermitianMatrix h(n, a);
    double prod = 1.0;
    for (double v : eigenvalues(h)) prod *= v;
    const double d = det(h);
    CHECK(std::abs(d - prod) <= 1e-10 * std::max(1.0, std::abs(prod)));
    CHECK(std::abs(d - oracle::det(a, n)) <= 1e-10 * std::max(1.0, std::abs(prod)));
  }
}

TEST_CASE("minimum eigenvalue bounds every Rayleigh quotient") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const HermitianMatrix h(n, oracle::random_hermitian(n, rng));
    const double lo = min_eigenvalue(h);
    for (int i = 0; i < 100; ++i) {
      std::vector<cd> v(static_cast<std::size_t>(n));
      for (auto& c : v) c = cd(g(rng), g(rng));
      CHECK(lo <= rayleigh(h, v) + 1e-12);
    }
  }
}

TEST_CASE("unitary invariance") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto a = oracle::random_hermitian(n, rng);
    const auto u = oracle::random_unitary(n, rng);
    const Eigen::MatrixXcd A = oracle::to_eigen(a, n);
    const Eigen::MatrixXcd U = oracle::to_eigen(u, n);
    const Eigen::MatrixXcd B = U.adjoint() * A * U;
    std::vector<cd> b(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) b[j * n + k] = B(j, k);
    CHECK(std::abs(min_eigenvalue(HermitianMatrix(n, a)) - min_eigenvalue(HermitianMatrix(n, b))) < 1e-10);
  }
}

TEST_CASE("nearly degenerate and badly scaled matrices") {
  const double d[4] = {1e-12, 1.0, 1.0 + 1e-14, 1e6};
  const auto ev = eigenvalues(HermitianMatrix::diagonal(d));
  CHECK(ev[0] == doctest::Approx(1e-12));
  CHECK(ev[3] == doctest::Approx(1e6));
  const HermitianMatrix z(3);
  CHECK(min_eigenvalue(z) == 0.0);
  CHECK(det(z) == 0.0);
}

}
