#include "fockdim/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "fockdim/error.hpp"

namespace fockdim {

namespace {

constexpr int kMaxDim = 16;
constexpr double kJacobiTol = 1e-12;
constexpr int kMaxSweeps = 64;

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw InvalidArgument("matrix dimension must be in 1..16");
}

}  // namespace

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  check_dim(n);
  a_.assign(static_cast<std::size_t>(n * n), {});
}

HermitianMatrix::HermitianMatrix(int n, std::vector<std::complex<double>> entries)
    : n_(n), a_(std::move(entries)) {
  check_dim(n);
  if (a_.size() != static_cast<std::size_t>(n * n))
    throw InvalidArgument("entry count does not match dimension");
  for (int j = 0; j < n; ++j) {
    auto& d = a_[static_cast<std::size_t>(j * n + j)];
    d = d.real();
    for (int k = j + 1; k < n; ++k) {
      auto& u = a_[static_cast<std::size_t>(j * n + k)];
      auto& l = a_[static_cast<std::size_t>(k * n + j)];
      const std::complex<double> m = 0.5 * (u + std::conj(l));
      u = m;
      l = std::conj(m);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(int n) {
  HermitianMatrix h(n);
  for (int j = 0; j < n; ++j) h.a_[static_cast<std::size_t>(j * n + j)] = 1.0;
  return h;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  HermitianMatrix h(n);
  for (int j = 0; j < n; ++j) h.a_[static_cast<std::size_t>(j * n + j)] = d[static_cast<std::size_t>(j)];
  return h;
}

double HermitianMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    double row = 0.0;
    for (int k = 0; k < n_; ++k) row += std::abs((*this)(j, k));
    best = std::max(best, row);
  }
  return best;
}

HermitianMatrix HermitianMatrix::scaled(double c) const {
  HermitianMatrix out = *this;
  for (auto& x : out.a_) x *= c;
  return out;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n_ != b.n_) throw InvalidArgument("dimension mismatch");
  HermitianMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
  return out;
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n_ != b.n_) throw InvalidArgument("dimension mismatch");
  HermitianMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
  return out;
}

namespace {

std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h) {
  const int n = h.n();
  std::vector<std::complex<double>> a = h.entries();
  auto at = [&](int j, int k) -> std::complex<double>& {
    return a[static_cast<std::size_t>(j * n + k)];
  };
  double total = 0.0;
  for (const auto& x : a) total += std::norm(x);
  const double scale = std::sqrt(total);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(at(p, q));
    if (std::sqrt(2.0 * off) <= kJacobiTol * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const std::complex<double> b = at(p, q);
        const double beta = std::abs(b);
        if (beta == 0.0) continue;
        const std::complex<double> phase = b / beta;  // e^{i phi}
        const double ap = at(p, p).real();
        const double aq = at(q, q).real();
        const double zeta = (aq - ap) / (2.0 * beta);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const std::complex<double> sp = s * std::conj(phase);  // s e^{-i phi}
        for (int r = 0; r < n; ++r) {
          const std::complex<double> x = at(r, p);
          const std::complex<double> y = at(r, q);
          at(r, p) = c * x - sp * y;
          at(r, q) = s * x + c * std::conj(phase) * y;
        }
        for (int r = 0; r < n; ++r) {
          const std::complex<double> x = at(p, r);
          const std::complex<double> y = at(q, r);
          at(p, r) = c * x - std::conj(sp) * y;
          at(q, r) = s * x + c * phase * y;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ev[static_cast<std::size_t>(j)] = at(j, j).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

std::vector<double> eigenvalues(const HermitianMatrix& h) {
  if (h.n() == 1) return {h(0, 0).real()};
  if (h.n() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return {mean - rad, mean + rad};
  }
  return jacobi_eigenvalues(h);
}

double min_eigenvalue(const HermitianMatrix& h) { return eigenvalues(h).front(); }

double det(const HermitianMatrix& h) {
  const int n = h.n();
  if (n == 1) return h(0, 0).real();
  if (n == 2) return h(0, 0).real() * h(1, 1).real() - std::norm(h(0, 1));
  std::vector<std::complex<double>> a = h.entries();
  auto at = [&](int j, int k) -> std::complex<double>& {
    return a[static_cast<std::size_t>(j * n + k)];
  };
  std::complex<double> d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
    if (at(piv, col) == std::complex<double>(0.0)) return 0.0;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(at(piv, k), at(col, k));
      d = -d;
    }
    d *= at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const std::complex<double> f = at(r, col) / at(col, col);
      for (int k = col; k < n; ++k) at(r, k) -= f * at(col, k);
    }
  }
  return d.real();
}

double default_psd_tol(const HermitianMatrix& h) { return 1e-9 * (1.0 + h.norm_inf()); }

bool is_psd(const HermitianMatrix& h, double tol) {
  if (tol < 0) throw InvalidArgument("tolerance must be non-negative");
  return min_eigenvalue(h) >= -tol;
}

bool is_psd(const HermitianMatrix& h) { return is_psd(h, default_psd_tol(h)); }

double rayleigh(const HermitianMatrix& h, std::span<const std::complex<double>> v) {
  const int n = h.n();
  if (v.size() != static_cast<std::size_t>(n)) throw InvalidArgument("vector length mismatch");
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    std::complex<double> hv = 0.0;
    for (int k = 0; k < n; ++k) hv += h(j, k) * v[static_cast<std::size_t>(k)];
    num += std::conj(v[static_cast<std::size_t>(j)]) * hv;
    den += std::norm(v[static_cast<std::size_t>(j)]);
  }
  if (den == 0.0) throw InvalidArgument("zero vector");
  return num.real() / den;
}

}  // namespace fockdim
