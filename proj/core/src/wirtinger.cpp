#include "fockdim/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fockdim {

namespace {

template <class T>
std::vector<std::complex<double>> to_double_point(std::span<const std::complex<T>> z) {
  std::vector<std::complex<double>> out;
  out.reserve(z.size());
  for (const auto& x : z)
    out.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  return out;
}

// Flat per-node storage: value, gradient pair and mixed Hessian.
template <class T>
class Workspace {
 public:
  using C = std::complex<T>;

  Workspace(std::size_t nodes, int n)
      : n_(n),
        nn_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)),
        val_(nodes),
        dz_(nodes * static_cast<std::size_t>(n)),
        dzbar_(nodes * static_cast<std::size_t>(n)),
        h_(nodes * nn_) {}

  C& val(std::int32_t i) { return val_[static_cast<std::size_t>(i)]; }
  C* dz(std::int32_t i) { return dz_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_); }
  C* dzbar(std::int32_t i) {
    return dzbar_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
  }
  C* h(std::int32_t i) { return h_.data() + static_cast<std::size_t>(i) * nn_; }

  CJet2<T> extract(std::int32_t i) {
    CJet2<T> j;
    j.n = n_;
    j.val = val(i);
    j.dz.assign(dz(i), dz(i) + n_);
    j.dzbar.assign(dzbar(i), dzbar(i) + n_);
    j.dzdzbar.assign(h(i), h(i) + nn_);
    return j;
  }

 private:
  int n_;
  std::size_t nn_;
  std::vector<C> val_, dz_, dzbar_, h_;
};

template <class T>
CJet2<T> jet_eval_impl(const WeightExpr& expr, std::span<const std::complex<T>> z) {
  using C = std::complex<T>;
  if (expr.is_radial_profile()) throw TypeError("radial profile evaluated at a complex point");
  const int n = expr.nvars();
  if (z.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("point has " + std::to_string(z.size()) + " coordinates, weight has " +
                          std::to_string(n));
  const auto& tape = expr.tape();
  Workspace<T> w(tape.size(), n);
  const int nn = n * n;

  auto fail = [&](const std::string& what) {
    throw DomainError(what, to_double_point(z));
  };

  // out = F(u) given F(u), F'(u), F''(u) (holomorphic in u, or real for real u).
  auto chain = [&](std::int32_t out, std::int32_t u, C F, C F1, C F2) {
    w.val(out) = F;
    const C* ud = w.dz(u);
    const C* ub = w.dzbar(u);
    const C* uh = w.h(u);
    C* od = w.dz(out);
    C* ob = w.dzbar(out);
    C* oh = w.h(out);
    for (int j = 0; j < n; ++j) {
      od[j] = F1 * ud[j];
      ob[j] = F1 * ub[j];
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) oh[j * n + k] = F1 * uh[j * n + k] + F2 * ud[j] * ub[k];
  };

  // As `chain`, with the curvature term written as G * (u_j/u)(u_kbar/u),
  // G = F''(u) u^2, so that large |u| does not overflow.
  auto chain_scaled = [&](std::int32_t out, std::int32_t u, C F, C F1, C G) {
    w.val(out) = F;
    const C uv = w.val(u);
    const C* ud = w.dz(u);
    const C* ub = w.dzbar(u);
    const C* uh = w.h(u);
    C* od = w.dz(out);
    C* ob = w.dzbar(out);
    C* oh = w.h(out);
    for (int j = 0; j < n; ++j) {
      od[j] = F1 * ud[j];
      ob[j] = F1 * ub[j];
    }
    for (int j = 0; j < n; ++j) {
      const C aj = ud[j] / uv;
      for (int k = 0; k < n; ++k) oh[j * n + k] = F1 * uh[j * n + k] + G * aj * (ub[k] / uv);
    }
  };

  auto product = [&](std::int32_t out, C fv, const C* fd, const C* fb, const C* fh, C gv,
                     const C* gd, const C* gb, const C* gh) {
    C* od = w.dz(out);
    C* ob = w.dzbar(out);
    C* oh = w.h(out);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        oh[j * n + k] =
            fh[j * n + k] * gv + fd[j] * gb[k] + fb[k] * gd[j] + fv * gh[j * n + k];
    for (int j = 0; j < n; ++j) {
      od[j] = fd[j] * gv + fv * gd[j];
      ob[j] = fb[j] * gv + fv * gb[j];
    }
    w.val(out) = fv * gv;
  };

  std::vector<C> conj_d(static_cast<std::size_t>(n)), conj_b(static_cast<std::size_t>(n)),
      conj_h(static_cast<std::size_t>(nn));

  for (std::int32_t i = 0; i < static_cast<std::int32_t>(tape.size()); ++i) {
    const Node& node = tape[static_cast<std::size_t>(i)];
    const std::int32_t a = node.lhs;
    const std::int32_t b = node.rhs;
    C* od = w.dz(i);
    C* ob = w.dzbar(i);
    C* oh = w.h(i);
    switch (node.op) {
      case Op::Var:
        w.val(i) = z[static_cast<std::size_t>(node.ival - 1)];
        od[node.ival - 1] = C(1);
        break;
      case Op::Param:
        throw TypeError("radial profile evaluated at a complex point");
      case Op::Const:
        w.val(i) = C(static_cast<T>(node.dval));
        break;
      case Op::NormSq: {
        T s = 0;
        for (int j = 0; j < node.ival; ++j) {
          const C zj = z[static_cast<std::size_t>(j)];
          s += std::norm(zj);
          od[j] = std::conj(zj);
          ob[j] = zj;
          oh[j * n + j] = C(1);
        }
        w.val(i) = C(s);
        break;
      }
      case Op::Add:
      case Op::Sub: {
        const T sign = node.op == Op::Add ? T(1) : T(-1);
        w.val(i) = w.val(a) + sign * w.val(b);
        for (int j = 0; j < n; ++j) {
          od[j] = w.dz(a)[j] + sign * w.dz(b)[j];
          ob[j] = w.dzbar(a)[j] + sign * w.dzbar(b)[j];
        }
        for (int j = 0; j < nn; ++j) oh[j] = w.h(a)[j] + sign * w.h(b)[j];
        break;
      }
      case Op::Mul:
        product(i, w.val(a), w.dz(a), w.dzbar(a), w.h(a), w.val(b), w.dz(b), w.dzbar(b), w.h(b));
        break;
      case Op::Neg:
        w.val(i) = -w.val(a);
        for (int j = 0; j < n; ++j) {
          od[j] = -w.dz(a)[j];
          ob[j] = -w.dzbar(a)[j];
        }
        for (int j = 0; j < nn; ++j) oh[j] = -w.h(a)[j];
        break;
      case Op::Conj:
        w.val(i) = std::conj(w.val(a));
        for (int j = 0; j < n; ++j) {
          od[j] = std::conj(w.dzbar(a)[j]);
          ob[j] = std::conj(w.dz(a)[j]);
        }
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) oh[j * n + k] = std::conj(w.h(a)[k * n + j]);
        break;
      case Op::Abs2: {
        const C* fh = w.h(a);
        for (int j = 0; j < n; ++j) {
          conj_d[static_cast<std::size_t>(j)] = std::conj(w.dzbar(a)[j]);
          conj_b[static_cast<std::size_t>(j)] = std::conj(w.dz(a)[j]);
        }
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            conj_h[static_cast<std::size_t>(j * n + k)] = std::conj(fh[k * n + j]);
        product(i, w.val(a), w.dz(a), w.dzbar(a), fh, std::conj(w.val(a)), conj_d.data(),
                conj_b.data(), conj_h.data());
        w.val(i) = C(std::norm(w.val(a)));
        break;
      }
      case Op::Abs: {
        // |f| = sqrt(|f|^2); the Abs2 jet is built in place first.
        const C* fh = w.h(a);
        for (int j = 0; j < n; ++j) {
          conj_d[static_cast<std::size_t>(j)] = std::conj(w.dzbar(a)[j]);
          conj_b[static_cast<std::size_t>(j)] = std::conj(w.dz(a)[j]);
        }
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            conj_h[static_cast<std::size_t>(j * n + k)] = std::conj(fh[k * n + j]);
        product(i, w.val(a), w.dz(a), w.dzbar(a), fh, std::conj(w.val(a)), conj_d.data(),
                conj_b.data(), conj_h.data());
        const T u = std::norm(w.val(a));
        if (!(u > 0)) fail("abs is not differentiable at a zero of its argument");
        w.val(i) = C(u);
        const T r = std::sqrt(u);
        // In-place chain on node i: F = sqrt, F' = 1/(2r), F'' u^2 = -r/4.
        const C F1 = C(T(1) / (2 * r));
        const C G = C(-r / 4);
        for (int j = 0; j < n; ++j) {
          const C aj = od[j] / C(u);
          for (int k = 0; k < n; ++k) oh[j * n + k] = F1 * oh[j * n + k] + G * aj * (ob[k] / C(u));
        }
        for (int j = 0; j < n; ++j) {
          od[j] *= F1;
          ob[j] *= F1;
        }
        w.val(i) = C(r);
        break;
      }
      case Op::IntPow: {
        const C u = w.val(a);
        const int k = node.ival;
        if (k == 0) {
          w.val(i) = C(1);
          break;
        }
        if (k < 0 && u == C(0)) fail("negative power of zero");
        auto ipow = [](C base, int e) {
          const bool inv = e < 0;
          unsigned m = static_cast<unsigned>(inv ? -e : e);
          C r(1);
          while (m) {
            if (m & 1u) r *= base;
            base *= base;
            m >>= 1u;
          }
          return inv ? C(1) / r : r;
        };
        const C F = ipow(u, k);
        const C F1 = T(k) * ipow(u, k - 1);
        const C F2 = (k == 1) ? C(0) : T(k) * T(k - 1) * ipow(u, k - 2);
        chain(i, a, F, F1, F2);
        break;
      }
      case Op::RealPow: {
        const T u = w.val(a).real();
        if (!(u > 0)) fail("non-positive base of a real power");
        const T p = static_cast<T>(node.dval);
        const T F = std::pow(u, p);
        chain_scaled(i, a, C(F), C(p * F / u), C(p * (p - 1) * F));
        break;
      }
      case Op::Log: {
        const T u = w.val(a).real();
        if (!(u > 0)) fail("logarithm of a non-positive value");
        chain_scaled(i, a, C(std::log(u)), C(T(1) / u), C(-1));
        break;
      }
      case Op::Exp: {
        const T e = std::exp(w.val(a).real());
        chain(i, a, C(e), C(e), C(e));
        break;
      }
    }
    if (node.real) {
      w.val(i) = C(w.val(i).real());
      for (int j = 0; j < n; ++j) ob[j] = std::conj(od[j]);
    }
  }
  return w.extract(static_cast<std::int32_t>(tape.size()) - 1);
}

template <class T>
void check_hermitian(const CJet2<T>& jet) {
  const int n = jet.n;
  T dev = 0;
  T norm = 0;
  for (int j = 0; j < n; ++j) {
    T row = 0;
    for (int k = 0; k < n; ++k) {
      row += std::abs(jet.h(j, k));
      dev = std::max(dev, std::abs(jet.h(j, k) - std::conj(jet.h(k, j))));
    }
    norm = std::max(norm, row);
  }
  if (!(dev <= T(1e-12) * (1 + norm)))
    throw std::logic_error("Levi matrix is not Hermitian: deviation " +
                           std::to_string(static_cast<double>(dev)));
}

}  // namespace

CJet2<double> jet_eval(const WeightExpr& expr, std::span<const std::complex<double>> z) {
  return jet_eval_impl<double>(expr, z);
}

CJet2<long double> jet_eval(const WeightExpr& expr, std::span<const std::complex<long double>> z) {
  return jet_eval_impl<long double>(expr, z);
}

HermitianMatrix levi(const WeightExpr& expr, std::span<const std::complex<double>> z) {
  CJet2<double> jet = jet_eval(expr, z);
  check_hermitian(jet);
  return HermitianMatrix(jet.n, std::move(jet.dzdzbar));
}

ScaledLevi levi_scaled(const WeightExpr& expr, std::span<const std::complex<long double>> z) {
  const CJet2<long double> jet = jet_eval(expr, z);
  // A relative Hermitian check: the absolute one is meaningless at these scales.
  long double scale = 0;
  for (const auto& x : jet.dzdzbar) scale = std::max(scale, std::abs(x));
  ScaledLevi out{HermitianMatrix(jet.n), scale};
  if (scale == 0) return out;
  std::vector<std::complex<double>> m(jet.dzdzbar.size());
  long double dev = 0;
  for (int j = 0; j < jet.n; ++j)
    for (int k = 0; k < jet.n; ++k) {
      const auto x = jet.h(j, k) / scale;
      dev = std::max(dev, std::abs(x - std::conj(jet.h(k, j) / scale)));
      m[static_cast<std::size_t>(j * jet.n + k)] = {static_cast<double>(x.real()),
                                                    static_cast<double>(x.imag())};
    }
  if (!(dev <= 1e-12L * (1 + jet.n)))
    throw std::logic_error("Levi matrix is not Hermitian: relative deviation " +
                           std::to_string(static_cast<double>(dev)));
  out.matrix = HermitianMatrix(jet.n, std::move(m));
  return out;
}

double laplacian1(const WeightExpr& expr, std::complex<double> z) {
  if (expr.nvars() != 1) throw InvalidArgument("laplacian1 requires a one-variable weight");
  const std::complex<double> p[1] = {z};
  return 4.0 * jet_eval(expr, p).h(0, 0).real();
}

RJet2 radial_jet(const WeightExpr& profile, double t) {
  const auto& tape = profile.tape();
  std::vector<RJet2> v(tape.size());
  auto fail = [&](const std::string& what) {
    throw DomainError(what + " at t = " + std::to_string(t));
  };
  auto chain = [](const RJet2& u, double F, double F1, double F2) {
    return RJet2{F, F1 * u.d1, F1 * u.d2 + F2 * u.d1 * u.d1};
  };
  for (std::size_t i = 0; i < tape.size(); ++i) {
    const Node& node = tape[i];
    const RJet2 a = node.lhs >= 0 ? v[static_cast<std::size_t>(node.lhs)] : RJet2{};
    const RJet2 b = node.rhs >= 0 ? v[static_cast<std::size_t>(node.rhs)] : RJet2{};
    RJet2 out;
    switch (node.op) {
      case Op::Var:
      case Op::NormSq:
        throw TypeError("radial_jet expects a profile in the real variable t");
      case Op::Param:
        out = {t, 1.0, 0.0};
        break;
      case Op::Const:
        out = {node.dval, 0.0, 0.0};
        break;
      case Op::Add:
        out = {a.val + b.val, a.d1 + b.d1, a.d2 + b.d2};
        break;
      case Op::Sub:
        out = {a.val - b.val, a.d1 - b.d1, a.d2 - b.d2};
        break;
      case Op::Mul:
        out = {a.val * b.val, a.d1 * b.val + a.val * b.d1,
               a.d2 * b.val + 2.0 * a.d1 * b.d1 + a.val * b.d2};
        break;
      case Op::Neg:
        out = {-a.val, -a.d1, -a.d2};
        break;
      case Op::Conj:
        out = a;
        break;
      case Op::Abs2:
        out = chain(a, a.val * a.val, 2.0 * a.val, 2.0);
        break;
      case Op::Abs:
        if (a.val == 0.0) fail("abs is not differentiable at zero");
        out = chain(a, std::abs(a.val), a.val > 0 ? 1.0 : -1.0, 0.0);
        break;
      case Op::IntPow: {
        const int k = node.ival;
        if (k < 0 && a.val == 0.0) fail("negative power of zero");
        if (k == 0) {
          out = {1.0, 0.0, 0.0};
          break;
        }
        const double F = std::pow(a.val, k);
        const double F1 = k * std::pow(a.val, k - 1);
        const double F2 = k == 1 ? 0.0 : double(k) * (k - 1) * std::pow(a.val, k - 2);
        out = chain(a, F, F1, F2);
        break;
      }
      case Op::RealPow: {
        if (!(a.val > 0)) fail("non-positive base of a real power");
        const double p = node.dval;
        const double F = std::pow(a.val, p);
        out = chain(a, F, p * F / a.val, p * (p - 1) * F / (a.val * a.val));
        break;
      }
      case Op::Log:
        if (!(a.val > 0)) fail("logarithm of a non-positive value");
        out = chain(a, std::log(a.val), 1.0 / a.val, -1.0 / (a.val * a.val));
        break;
      case Op::Exp: {
        const double e = std::exp(a.val);
        out = chain(a, e, e, e);
        break;
      }
    }
    v[i] = out;
  }
  return v.back();
}

}  // namespace fockdim
