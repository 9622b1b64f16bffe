#pragma once

// Reference computations that share no code with the library.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Fn = std::function<double(const std::vector<cd>&)>;

/// d^2 f / dz_j dzbar_k from central differences in (x, y), Richardson-extrapolated.
inline std::vector<cd> levi_fd(const Fn& f, const std::vector<cd>& z, double h = 1e-4) {
  const std::size_t n = z.size();
  const std::size_t m = 2 * n;
  auto shifted = [&](std::size_t a, double da, std::size_t b, double db) {
    std::vector<cd> w = z;
    auto bump = [&](std::size_t idx, double d) {
      if (idx % 2 == 0) w[idx / 2] += cd(d, 0.0);
      else w[idx / 2] += cd(0.0, d);
    };
    bump(a, da);
    bump(b, db);
    return f(w);
  };
  auto hessian = [&](double s) {
    std::vector<double> H(m * m);
    const double f0 = f(z);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        double v;
        if (a == b) {
          v = (shifted(a, s, a, 0.0) - 2.0 * f0 + shifted(a, -s, a, 0.0)) / (s * s);
        } else {
          v = (shifted(a, s, b, s) - shifted(a, s, b, -s) - shifted(a, -s, b, s) + shifted(a, -s, b, -s)) /
              (4.0 * s * s);
        }
        H[a * m + b] = H[b * m + a] = v;
      }
    return H;
  };
  const auto H1 = hessian(h);
  const auto H2 = hessian(h / 2);
  std::vector<double> H(m * m);
  for (std::size_t i = 0; i < m * m; ++i) H[i] = (4.0 * H2[i] - H1[i]) / 3.0;
  // d_j dbar_k = 1/4 (f_xjxk + f_yjyk) + i/4 (f_xjyk - f_yjxk)
  std::vector<cd> L(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double xx = H[(2 * j) * m + 2 * k];
      const double yy = H[(2 * j + 1) * m + 2 * k + 1];
      const double xy = H[(2 * j) * m + 2 * k + 1];
      const double yx = H[(2 * j + 1) * m + 2 * k];
      L[j * n + k] = cd(0.25 * (xx + yy), 0.25 * (xy - yx));
    }
  return L;
}

inline Eigen::MatrixXcd to_eigen(const std::vector<cd>& a, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = a[static_cast<std::size_t>(j * n + k)];
  return m;
}

/// Ascending eigenvalues of the Hermitian part.
inline std::vector<double> eigenvalues(const std::vector<cd>& a, int n) {
  Eigen::MatrixXcd m = to_eigen(a, n);
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

inline double det(const std::vector<cd>& a, int n) { return to_eigen(a, n).determinant().real(); }

/// Random Hermitian matrix with entries of size ~ scale.
inline std::vector<cd> random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cd> a(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j) {
    a[static_cast<std::size_t>(j * n + j)] = g(rng);
    for (int k = j + 1; k < n; ++k) {
      const cd v(g(rng), g(rng));
      a[static_cast<std::size_t>(j * n + k)] = v;
      a[static_cast<std::size_t>(k * n + j)] = std::conj(v);
    }
  }
  return a;
}

inline std::vector<cd> random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  std::vector<cd> out(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(j * n + k)] = q(j, k);
  return out;
}

/// A weight as text together with an independent implementation.
struct Weight {
  std::string text;
  Fn fn;
  int n = 1;
};

/// Random smooth real weights on C^n built from a fixed menu of terms.
inline Weight random_weight(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_term(0, 7);
  std::uniform_int_distribution<int> pick_var(1, n);
  std::uniform_real_distribution<double> coef(0.25, 2.0);
  const int terms = 1 + static_cast<int>(rng() % 3);
  Weight w{"", [](const std::vector<cd>&) { return 0.0; }, n};
  for (int t = 0; t < terms; ++t) {
    const int j = pick_var(rng);
    const int k = pick_var(rng);
    const double c = std::round(coef(rng) * 100.0) / 100.0;
    const std::string zj = "z" + std::to_string(j);
    const std::string zk = "z" + std::to_string(k);
    const std::string cs = std::to_string(c).substr(0, 4);
    const double cv = std::stod(cs);
    const std::size_t a = static_cast<std::size_t>(j - 1);
    const std::size_t b = static_cast<std::size_t>(k - 1);
    std::string text;
    Fn term;
    switch (pick_term(rng)) {
      case 0:
        text = cs + "*abs2(" + zj + ")";
        term = [=](const std::vector<cd>& z) { return cv * std::norm(z[a]); };
        break;
      case 1:
        text = cs + "*log(1+abs2(" + zj + "))";
        term = [=](const std::vector<cd>& z) { return cv * std::log(1.0 + std::norm(z[a])); };
        break;
      case 2:
        text = "abs2(" + zj + "^2+" + cs + "*" + zk + ")";
        term = [=](const std::vector<cd>& z) { return std::norm(z[a] * z[a] + cv * z[b]); };
        break;
      case 3:
        text = "(1+abs2(" + zj + ")+abs2(" + zk + "))^1.5";
        term = [=](const std::vector<cd>& z) {
          return std::pow(1.0 + std::norm(z[a]) + std::norm(z[b]), 1.5);
        };
        break;
      case 4:
        text = "exp(" + cs + "*abs2(" + zj + "))";
        term = [=](const std::vector<cd>& z) { return std::exp(cv * std::norm(z[a])); };
        break;
      case 5:
        text = "abs2(conj(" + zj + ")*" + zk + "+" + cs + ")";
        term = [=](const std::vector<cd>& z) { return std::norm(std::conj(z[a]) * z[b] + cv); };
        break;
      case 6:
        text = "log(1+normsq(" + std::to_string(n) + "))^1.5";
        term = [=](const std::vector<cd>& z) {
          double s = 0.0;
          for (const auto& c : z) s += std::norm(c);
          return std::pow(std::log(1.0 + s), 1.5);
        };
        break;
      default:
        text = cs + "*abs(" + zj + "+" + zk + "+3)";
        term = [=](const std::vector<cd>& z) { return cv * std::abs(z[a] + z[b] + 3.0); };
        break;
    }
    w.text += (w.text.empty() ? "" : "+") + text;
    w.fn = [prev = w.fn, term](const std::vector<cd>& z) { return prev(z) + term(z); };
  }
  return w;
}

inline std::vector<cd> random_point(int n, std::mt19937_64& rng, double radius = 1.2) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cd> z(static_cast<std::size_t>(n));
  for (auto& c : z) c = cd(u(rng), u(rng));
  return z;
}

/// A radial profile phi(t) with closed-form phi' and phi''.
struct Profile {
  std::string text;
  std::function<double(double)> d1, d2;
};

inline Profile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const double a = std::round(u(rng) * 10) / 10;
  const std::string as = std::to_string(a).substr(0, 3);
  switch (rng() % 5) {
    case 0: return {as + "*t", [=](double) { return a; }, [](double) { return 0.0; }};
    case 1:
      return {as + "*log(1+t)", [=](double t) { return a / (1 + t); },
              [=](double t) { return -a / ((1 + t) * (1 + t)); }};
    case 2:
      return {"log(1+t)^1.5",
              [](double t) { return 1.5 * std::sqrt(std::log1p(t)) / (1 + t); },
              [](double t) {
                const double L = std::log1p(t);
                return (0.75 / std::sqrt(L) - 1.5 * std::sqrt(L)) / ((1 + t) * (1 + t));
              }};
    case 3:
      return {"(1+t)^" + as, [=](double t) { return a * std::pow(1 + t, a - 1); },
              [=](double t) { return a * (a - 1) * std::pow(1 + t, a - 2); }};
    default:
      return {"t^2+" + as + "*t", [=](double t) { return 2 * t + a; }, [](double) { return 2.0; }};
  }
}

}  // namespace oracle
