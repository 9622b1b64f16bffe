#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "fockdim/weight.hpp"

namespace fockdim {

namespace {

constexpr std::int32_t kMaxIntExponent = 1 << 20;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WeightExpr run() {
    skip_ws();
    if (at_end()) fail(pos_, "empty expression");
    parse_sum();
    skip_ws();
    if (!at_end()) fail(pos_, std::string("unexpected '") + text_[pos_] + "'");
    if (used_w_ && max_var_ > 2)
      throw TypeError("'w' aliases z2 and is only allowed in two-variable weights");
    return WeightExpr(std::move(tape_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Node> tape_;
  bool used_w_ = false;
  int max_var_ = 0;

  [[noreturn]] void fail(std::size_t offset, const std::string& message) const {
    SourcePos p;
    p.offset = offset;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    throw SyntaxError(p, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(pos_, std::string("expected '") + c + "' before end of input");
      fail(pos_, std::string("expected '") + c + "'");
    }
  }

  std::int32_t push(Node n) {
    tape_.push_back(n);
    return static_cast<std::int32_t>(tape_.size()) - 1;
  }

  std::int32_t binary(Op op, std::int32_t l, std::int32_t r) {
    Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    return push(n);
  }

  std::int32_t unary(Op op, std::int32_t c) {
    Node n;
    n.op = op;
    n.lhs = c;
    return push(n);
  }

  std::int32_t parse_sum() {
    std::int32_t lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_product() {
    std::int32_t lhs = parse_unary();
    while (accept('*')) lhs = binary(Op::Mul, lhs, parse_unary());
    return lhs;
  }

  std::int32_t parse_unary() {
    if (accept('-')) return unary(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  std::int32_t parse_power() {
    std::int32_t base = parse_primary();
    while (accept('^')) {
      skip_ws();
      bool negative = false;
      if (!at_end() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
        skip_ws();
      }
      const std::size_t start = pos_;
      bool integral = false;
      const double value = scan_number(integral);
      Node n;
      n.lhs = base;
      if (integral) {
        if (value > kMaxIntExponent) fail(start, "integer exponent too large");
        n.op = Op::IntPow;
        n.ival = static_cast<std::int32_t>(value) * (negative ? -1 : 1);
      } else {
        n.op = Op::RealPow;
        n.dval = negative ? -value : value;
      }
      base = push(n);
    }
    return base;
  }

  // Reads an unsigned decimal literal at pos_. `integral` is set when the
  // literal is written with digits only.
  double scan_number(bool& integral) {
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digits = [&] {
      const std::size_t s = i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      return i - s;
    };
    std::size_t mantissa = digits();
    integral = true;
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      mantissa += digits();
      integral = false;
    }
    if (mantissa == 0) {
      if (start >= text_.size()) fail(start, "expected a number before end of input");
      fail(start, "expected a number");
    }
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      const std::size_t exp_start = j;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      if (j == exp_start) fail(j, "malformed exponent in numeric literal");
      i = j;
      integral = false;
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + i, value);
    if (ec != std::errc() || end != text_.data() + i || !std::isfinite(value))
      fail(start, "numeric literal out of range");
    pos_ = i;
    return value;
  }

  std::int32_t parse_primary() {
    skip_ws();
    if (at_end()) fail(pos_, "expected an expression before end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const std::int32_t inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      bool integral = false;
      Node n;
      n.op = Op::Const;
      n.dval = scan_number(integral);
      return push(n);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(pos_, std::string("unexpected '") + c + "'");
  }

  std::int32_t variable(int index, std::size_t at) {
    if (index < 1 || index > 16) fail(at, "variable index must be in 1..16");
    max_var_ = std::max(max_var_, index);
    Node n;
    n.op = Op::Var;
    n.ival = index;
    return push(n);
  }

  std::int32_t parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "z") return variable(1, start);
    if (name == "w") {
      used_w_ = true;
      return variable(2, start);
    }
    if (name == "t") {
      Node n;
      n.op = Op::Param;
      return push(n);
    }
    if (name.size() > 1 && name[0] == 'z') {
      int index = 0;
      const auto [end, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec == std::errc() && end == name.data() + name.size() && name[1] != '0')
        return variable(index, start);
      fail(start, "malformed variable '" + std::string(name) + "'");
    }

    Op op;
    if (name == "abs2") {
      op = Op::Abs2;
    } else if (name == "abs") {
      op = Op::Abs;
    } else if (name == "log") {
      op = Op::Log;
    } else if (name == "exp") {
      op = Op::Exp;
    } else if (name == "conj") {
      op = Op::Conj;
    } else if (name == "normsq") {
      expect('(');
      skip_ws();
      const std::size_t at = pos_;
      bool integral = false;
      const double m = scan_number(integral);
      if (!integral || m < 1 || m > 16) fail(at, "normsq expects an integer dimension in 1..16");
      expect(')');
      Node n;
      n.op = Op::NormSq;
      n.ival = static_cast<std::int32_t>(m);
      max_var_ = std::max(max_var_, n.ival);
      return push(n);
    } else {
      fail(start, "unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    const std::int32_t arg = parse_sum();
    expect(')');
    return unary(op, arg);
  }
};

}  // namespace

WeightExpr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace fockdim
