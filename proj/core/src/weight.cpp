#include "fockdim/weight.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fockdim {

namespace {

constexpr int kMaxVars = 16;

std::string format_point(std::span<const std::complex<double>> z) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j) os << ", ";
    os << z[j].real() << (z[j].imag() < 0 ? "-" : "+") << std::abs(z[j].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

template <class T>
T int_power(T base, std::int32_t k) {
  const bool invert = k < 0;
  auto e = static_cast<std::uint32_t>(invert ? -static_cast<std::int64_t>(k) : k);
  T result{1};
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return invert ? T{1} / result : result;
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Param: return "param";
    case Op::Const: return "const";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Neg: return "neg";
    case Op::Conj: return "conj";
    case Op::Abs2: return "abs2";
    case Op::Abs: return "abs";
    case Op::IntPow: return "intpow";
    case Op::RealPow: return "realpow";
    case Op::Log: return "log";
    case Op::Exp: return "exp";
    case Op::NormSq: return "normsq";
  }
  return "?";
}

SyntaxError::SyntaxError(SourcePos pos, const std::string& message)
    : Error("syntax error at offset " + std::to_string(pos.offset) + " (line " +
            std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
            "): " + message),
      pos_(pos),
      detail_(message) {}

DomainError::DomainError(const std::string& message, std::vector<std::complex<double>> point)
    : Error(message + " at z = " + format_point(point)), point_(std::move(point)) {}

WeightExpr::WeightExpr(std::vector<Node> tape) : tape_(std::move(tape)) {
  if (tape_.empty()) throw InvalidArgument("empty expression tape");
  bool has_param = false;
  bool has_coord = false;
  int max_index = 0;
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    Node& node = tape_[i];
    const auto child_ok = [&](std::int32_t c) {
      return c >= 0 && static_cast<std::size_t>(c) < i;
    };
    auto need = [&](std::int32_t c) -> const Node& {
      if (!child_ok(c)) throw InvalidArgument("malformed expression tape");
      return tape_[static_cast<std::size_t>(c)];
    };
    switch (node.op) {
      case Op::Var:
        if (node.ival < 1 || node.ival > kMaxVars)
          throw TypeError("variable index out of range 1.." + std::to_string(kMaxVars));
        node.real = false;
        has_coord = true;
        max_index = std::max(max_index, node.ival);
        break;
      case Op::Param:
        node.real = true;
        has_param = true;
        break;
      case Op::Const:
        node.real = true;
        break;
      case Op::NormSq:
        if (node.ival < 1 || node.ival > kMaxVars)
          throw TypeError("normsq dimension out of range 1.." + std::to_string(kMaxVars));
        node.real = true;
        has_coord = true;
        max_index = std::max(max_index, node.ival);
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
        node.real = need(node.lhs).real && need(node.rhs).real;
        break;
      case Op::Neg:
      case Op::Conj:
      case Op::IntPow:
        node.real = need(node.lhs).real;
        break;
      case Op::Abs2:
      case Op::Abs:
        need(node.lhs);
        node.real = true;
        break;
      case Op::RealPow:
      case Op::Log:
      case Op::Exp:
        if (!need(node.lhs).real)
          throw TypeError(std::string(op_name(node.op)) +
                          " requires a real-valued argument; complex logarithms and powers are "
                          "not supported");
        node.real = true;
        break;
    }
  }
  if (!tape_.back().real) throw TypeError("weight must be real-valued; wrap complex terms in abs2()");
  if (has_param && has_coord)
    throw TypeError("radial profiles in t cannot also use complex coordinates");
  radial_ = has_param;
  nvars_ = std::max(1, max_index);
}

WeightExpr WeightExpr::constant(double c, int nvars) {
  Node n;
  n.op = Op::Const;
  n.dval = c;
  return WeightExpr({n}).widened(nvars);
}

WeightExpr WeightExpr::widened(int n) const {
  if (n > kMaxVars) throw InvalidArgument("at most 16 complex variables are supported");
  if (radial_ && n > 1) throw TypeError("a radial profile has no complex dimension to widen");
  WeightExpr copy = *this;
  copy.nvars_ = std::max(nvars_, n);
  return copy;
}

bool operator==(const WeightExpr& a, const WeightExpr& b) {
  if (a.nvars_ != b.nvars_ || a.radial_ != b.radial_ || a.tape_.size() != b.tape_.size())
    return false;
  for (std::size_t i = 0; i < a.tape_.size(); ++i) {
    const Node& x = a.tape_[i];
    const Node& y = b.tape_[i];
    if (x.op != y.op || x.lhs != y.lhs || x.rhs != y.rhs || x.ival != y.ival || x.dval != y.dval)
      return false;
  }
  return true;
}

namespace {

// Shared evaluator; `t` is only read by Param nodes.
double evaluate(const WeightExpr& expr, std::span<const std::complex<double>> z, double t) {
  const auto& tape = expr.tape();
  thread_local std::vector<std::complex<double>> v;
  v.resize(tape.size());
  auto fail = [&](const std::string& what) -> void {
    if (expr.is_radial_profile())
      throw DomainError(what + " at t = " + std::to_string(t));
    throw DomainError(what, std::vector<std::complex<double>>(z.begin(), z.end()));
  };
  for (std::size_t i = 0; i < tape.size(); ++i) {
    const Node& n = tape[i];
    const auto a = [&] { return v[static_cast<std::size_t>(n.lhs)]; };
    const auto b = [&] { return v[static_cast<std::size_t>(n.rhs)]; };
    std::complex<double> out;
    switch (n.op) {
      case Op::Var:
        out = z[static_cast<std::size_t>(n.ival - 1)];
        break;
      case Op::Param:
        out = t;
        break;
      case Op::Const:
        out = n.dval;
        break;
      case Op::NormSq: {
        double s = 0.0;
        for (int j = 0; j < n.ival; ++j) s += std::norm(z[static_cast<std::size_t>(j)]);
        out = s;
        break;
      }
      case Op::Add:
        out = n.real ? std::complex<double>(a().real() + b().real()) : a() + b();
        break;
      case Op::Sub:
        out = n.real ? std::complex<double>(a().real() - b().real()) : a() - b();
        break;
      case Op::Mul:
        out = n.real ? std::complex<double>(a().real() * b().real()) : a() * b();
        break;
      case Op::Neg:
        out = -a();
        break;
      case Op::Conj:
        out = std::conj(a());
        break;
      case Op::Abs2:
        out = std::norm(a());
        break;
      case Op::Abs:
        out = std::abs(a());
        break;
      case Op::IntPow:
        if (n.ival < 0 && a() == std::complex<double>(0.0)) fail("negative power of zero");
        out = n.real ? std::complex<double>(int_power(a().real(), n.ival)) : int_power(a(), n.ival);
        break;
      case Op::RealPow:
        if (!(a().real() > 0.0)) fail("non-positive base of a real power");
        out = std::pow(a().real(), n.dval);
        break;
      case Op::Log:
        if (!(a().real() > 0.0)) fail("logarithm of a non-positive value");
        out = std::log(a().real());
        break;
      case Op::Exp:
        out = std::exp(a().real());
        break;
    }
    v[i] = out;
  }
  return v.back().real();
}

}  // namespace

double eval(const WeightExpr& expr, std::span<const std::complex<double>> z) {
  if (expr.is_radial_profile()) throw TypeError("radial profile evaluated at a complex point");
  if (z.size() < static_cast<std::size_t>(expr.nvars()))
    throw InvalidArgument("point has " + std::to_string(z.size()) + " coordinates, weight needs " +
                          std::to_string(expr.nvars()));
  return evaluate(expr, z, 0.0);
}

double eval_profile(const WeightExpr& profile, double t) {
  if (!profile.is_radial_profile() && profile.tape().size() > 1)
    throw TypeError("expected a radial profile in the variable t");
  return evaluate(profile, {}, t);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Level : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kPrimary = 5 };

std::string format_double(double x, bool force_fraction) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, end);
  if (force_fraction && s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

struct Printed {
  std::string text;
  int level;
};

Printed print_node(const std::vector<Node>& tape, std::int32_t idx) {
  const Node& n = tape[static_cast<std::size_t>(idx)];
  auto wrap = [](const Printed& p, bool parens) {
    return parens ? "(" + p.text + ")" : p.text;
  };
  auto call = [&](const char* fn) {
    return Printed{std::string(fn) + "(" + print_node(tape, n.lhs).text + ")", kPrimary};
  };
  switch (n.op) {
    case Op::Var:
      return {"z" + std::to_string(n.ival), kPrimary};
    case Op::Param:
      return {"t", kPrimary};
    case Op::Const:
      if (n.dval < 0 || std::signbit(n.dval)) return {"-" + format_double(-n.dval, false), kUnary};
      return {format_double(n.dval, false), kPrimary};
    case Op::NormSq:
      return {"normsq(" + std::to_string(n.ival) + ")", kPrimary};
    case Op::Add:
    case Op::Sub: {
      const Printed l = print_node(tape, n.lhs);
      const Printed r = print_node(tape, n.rhs);
      return {wrap(l, l.level < kSum) + (n.op == Op::Add ? " + " : " - ") + wrap(r, r.level <= kSum),
              kSum};
    }
    case Op::Mul: {
      const Printed l = print_node(tape, n.lhs);
      const Printed r = print_node(tape, n.rhs);
      return {wrap(l, l.level < kProduct) + "*" + wrap(r, r.level <= kProduct), kProduct};
    }
    case Op::Neg: {
      const Printed c = print_node(tape, n.lhs);
      return {"-" + wrap(c, c.level < kUnary), kUnary};
    }
    case Op::Conj:
      return call("conj");
    case Op::Abs2:
      return call("abs2");
    case Op::Abs:
      return call("abs");
    case Op::Log:
      return call("log");
    case Op::Exp:
      return call("exp");
    case Op::IntPow:
    case Op::RealPow: {
      const Printed b = print_node(tape, n.lhs);
      const std::string exponent = n.op == Op::IntPow ? std::to_string(n.ival)
                                                      : format_double(n.dval, true);
      return {wrap(b, b.level < kPrimary) + "^" + exponent, kPower};
    }
  }
  return {"?", kPrimary};
}

}  // namespace

std::string to_string(const WeightExpr& expr) {
  return print_node(expr.tape(), expr.root()).text;
}

// ---------------------------------------------------------------------------
// Combinators

namespace {

std::int32_t append_tape(std::vector<Node>& out, const std::vector<Node>& src) {
  const auto offset = static_cast<std::int32_t>(out.size());
  for (Node n : src) {
    if (n.lhs >= 0) n.lhs += offset;
    if (n.rhs >= 0) n.rhs += offset;
    out.push_back(n);
  }
  return static_cast<std::int32_t>(out.size()) - 1;
}

WeightExpr combine(Op op, const WeightExpr& a, const WeightExpr& b) {
  if (a.is_radial_profile() != b.is_radial_profile() &&
      a.tape().size() > 1 && b.tape().size() > 1)
    throw TypeError("cannot combine a radial profile with a weight on C^n");
  std::vector<Node> tape;
  tape.reserve(a.tape().size() + b.tape().size() + 1);
  Node n;
  n.op = op;
  n.lhs = append_tape(tape, a.tape());
  n.rhs = append_tape(tape, b.tape());
  tape.push_back(n);
  WeightExpr out(std::move(tape));
  if (out.is_radial_profile()) return out;
  return out.widened(std::max(a.nvars(), b.nvars()));
}

}  // namespace

WeightExpr operator+(const WeightExpr& a, const WeightExpr& b) { return combine(Op::Add, a, b); }
WeightExpr operator-(const WeightExpr& a, const WeightExpr& b) { return combine(Op::Sub, a, b); }

WeightExpr operator*(double c, const WeightExpr& a) {
  Node k;
  k.op = Op::Const;
  k.dval = c;
  WeightExpr lhs({k});
  return combine(Op::Mul, lhs, a);
}

WeightExpr radial_weight(const WeightExpr& profile, int n) {
  if (n < 1 || n > kMaxVars) throw InvalidArgument("dimension must be in 1..16");
  std::vector<Node> tape = profile.tape();
  for (Node& node : tape) {
    if (node.op == Op::Param) {
      node.op = Op::NormSq;
      node.ival = n;
    } else if (node.op == Op::Var || node.op == Op::NormSq) {
      throw TypeError("radial_weight expects a profile in t");
    }
  }
  return WeightExpr(std::move(tape)).widened(n);
}

WeightExpr log_norm_weight(double M, int n) {
  std::vector<Node> tape(4);
  tape[0].op = Op::Const;
  tape[0].dval = M;
  tape[1].op = Op::NormSq;
  tape[1].ival = n;
  tape[2].op = Op::Log;
  tape[2].lhs = 1;
  tape[3].op = Op::Mul;
  tape[3].lhs = 0;
  tape[3].rhs = 2;
  return WeightExpr(std::move(tape));
}

WeightExpr monomial_modulus(std::span<const int> alpha) {
  if (alpha.empty() || alpha.size() > static_cast<std::size_t>(kMaxVars))
    throw InvalidArgument("multi-index must have 1..16 entries");
  std::vector<Node> tape;
  std::int32_t acc = -1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] < 0) throw InvalidArgument("multi-index entries must be non-negative");
    if (alpha[j] == 0) continue;
    Node var;
    var.op = Op::Var;
    var.ival = static_cast<std::int32_t>(j + 1);
    tape.push_back(var);
    Node mod;
    mod.op = Op::Abs2;
    mod.lhs = static_cast<std::int32_t>(tape.size()) - 1;
    tape.push_back(mod);
    std::int32_t term = static_cast<std::int32_t>(tape.size()) - 1;
    if (alpha[j] > 1) {
      Node pw;
      pw.op = Op::IntPow;
      pw.lhs = term;
      pw.ival = alpha[j];
      tape.push_back(pw);
      term = static_cast<std::int32_t>(tape.size()) - 1;
    }
    if (acc >= 0) {
      Node mul;
      mul.op = Op::Mul;
      mul.lhs = acc;
      mul.rhs = term;
      tape.push_back(mul);
      term = static_cast<std::int32_t>(tape.size()) - 1;
    }
    acc = term;
  }
  if (tape.empty()) return WeightExpr::constant(1.0, static_cast<int>(alpha.size()));
  return WeightExpr(std::move(tape)).widened(static_cast<int>(alpha.size()));
}

}  // namespace fockdim
