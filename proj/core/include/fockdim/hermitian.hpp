#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fockdim {

/// Dense n x n complex Hermitian matrix, row-major. Hermitian by construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n = 1);
  /// Replaces `entries` by its Hermitian part (A + A^H)/2.
  HermitianMatrix(int n, std::vector<std::complex<double>> entries);

  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(std::span<const double> d);

  int n() const noexcept { return n_; }
  const std::complex<double>& operator()(int j, int k) const noexcept {
    return a_[static_cast<std::size_t>(j * n_ + k)];
  }
  const std::vector<std::complex<double>>& entries() const noexcept { return a_; }

  /// Max absolute row sum.
  double norm_inf() const noexcept;

  HermitianMatrix scaled(double c) const;
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  int n_;
  std::vector<std::complex<double>> a_;
};

/// All eigenvalues, ascending. n <= 2 closed form, cyclic Jacobi otherwise.
std::vector<double> eigenvalues(const HermitianMatrix& h);

double min_eigenvalue(const HermitianMatrix& h);

double det(const HermitianMatrix& h);

/// 1e-9 * (1 + ||H||_inf).
double default_psd_tol(const HermitianMatrix& h);

bool is_psd(const HermitianMatrix& h, double tol);
bool is_psd(const HermitianMatrix& h);

/// v^H H v / v^H v.
double rayleigh(const HermitianMatrix& h, std::span<const std::complex<double>> v);

}  // namespace fockdim
