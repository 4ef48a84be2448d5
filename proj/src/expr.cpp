#include "dmsscale/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "dmsscale/errors.hpp"

namespace dmsscale {

std::string_view category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Syntax: return "syntax";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Range: return "range";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Codegen: return "codegen";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t numerator, std::int64_t denominator) : num(numerator), den(denominator) {
  if (den == 0) {
    throw Error(ErrorCategory::Domain, "rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::optional<Rational> Rational::from_double(double value, std::int64_t max_den) {
  if (!std::isfinite(value) || std::fabs(value) > 1e12) {
    return std::nullopt;
  }
  // Continued-fraction convergents.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) {
      break;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - value) <= 1e-12 * std::max(1.0, std::fabs(value))) {
      return Rational(p1, q1);
    }
    const double frac = x - a;
    if (frac == 0.0) {
      break;
    }
    x = 1.0 / frac;
  }
  return std::nullopt;
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }

// ---------------------------------------------------------------------------
// Expression nodes

struct Expression::Node {
  NodeKind kind = NodeKind::Number;
  double value = 0.0;
  std::string name;
  Rational exponent;
  std::vector<Expression> children;
};

namespace {

std::shared_ptr<const Expression::Node> make_node(NodeKind kind, std::vector<Expression> children) {
  auto node = std::make_shared<Expression::Node>();
  node->kind = kind;
  node->children = std::move(children);
  return node;
}

}  // namespace

Expression::Expression() {
  static const auto zero = std::make_shared<const Node>();
  node_ = zero;
}

Expression Expression::number(double value) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Number;
  node->value = value;
  return Expression(std::move(node));
}

Expression Expression::constant(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Constant;
  node->name = std::move(name);
  return Expression(std::move(node));
}

Expression Expression::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Variable;
  node->name = std::move(name);
  return Expression(std::move(node));
}

Expression Expression::add(Expression lhs, Expression rhs) {
  return Expression(make_node(NodeKind::Add, {std::move(lhs), std::move(rhs)}));
}
Expression Expression::subtract(Expression lhs, Expression rhs) {
  return Expression(make_node(NodeKind::Subtract, {std::move(lhs), std::move(rhs)}));
}
Expression Expression::multiply(Expression lhs, Expression rhs) {
  return Expression(make_node(NodeKind::Multiply, {std::move(lhs), std::move(rhs)}));
}
Expression Expression::divide(Expression lhs, Expression rhs) {
  return Expression(make_node(NodeKind::Divide, {std::move(lhs), std::move(rhs)}));
}

Expression Expression::power(Expression base, Rational exponent) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Power;
  node->exponent = exponent;
  node->children.push_back(std::move(base));
  return Expression(std::move(node));
}

Expression Expression::sqrt(Expression operand) {
  return Expression(make_node(NodeKind::Sqrt, {std::move(operand)}));
}

NodeKind Expression::kind() const noexcept { return node_->kind; }
double Expression::value() const noexcept { return node_->value; }
const std::string& Expression::name() const noexcept { return node_->name; }
Rational Expression::exponent() const noexcept { return node_->exponent; }
const Expression& Expression::lhs() const noexcept { return node_->children[0]; }
const Expression& Expression::rhs() const noexcept { return node_->children[1]; }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) {
    return false;
  }
  switch (x.kind) {
    case NodeKind::Number:
      return x.value == y.value && std::signbit(x.value) == std::signbit(y.value);
    case NodeKind::Constant:
    case NodeKind::Variable:
      return x.name == y.name;
    case NodeKind::Power:
      return x.exponent == y.exponent && x.children[0] == y.children[0];
    default:
      break;
  }
  if (x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_number(double value, int significant_digits) {
  std::array<char, 64> buf{};
  std::to_chars_result res{};
  if (significant_digits <= 0) {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  } else {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                        significant_digits);
  }
  return std::string(buf.data(), res.ptr);
}

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Subtract:
      return 1;
    case NodeKind::Multiply:
    case NodeKind::Divide:
      return 2;
    case NodeKind::Number:
      return std::signbit(e.value()) ? 3 : 5;
    case NodeKind::Power:
      return 4;
    default:
      return 5;
  }
}

class Printer {
 public:
  explicit Printer(const PrintOptions& options) : opt_(options) {}

  void print(const Expression& e, std::string& out) const {
    switch (e.kind()) {
      case NodeKind::Number:
        out += number(e.value());
        return;
      case NodeKind::Constant:
      case NodeKind::Variable:
        out += e.name();
        return;
      case NodeKind::Sqrt:
        out += "sqrt(";
        print(e.lhs(), out);
        out += ')';
        return;
      case NodeKind::Power:
        print_power(e, out);
        return;
      case NodeKind::Add: binary(e, " + ", out); return;
      case NodeKind::Subtract: binary(e, " - ", out); return;
      case NodeKind::Multiply: binary(e, "*", out); return;
      case NodeKind::Divide: binary(e, "/", out); return;
    }
  }

 private:
  std::string number(double v) const {
    std::string s = format_number(v, opt_.significant_digits);
    if (opt_.style == PrintStyle::C && s.find_first_of(".eEn") == std::string::npos) {
      s += ".0";
    }
    return s;
  }

  void child(const Expression& c, bool parens, std::string& out) const {
    if (parens) {
      out += '(';
    }
    print(c, out);
    if (parens) {
      out += ')';
    }
  }

  void binary(const Expression& e, const char* op, std::string& out) const {
    const int p = precedence(e);
    child(e.lhs(), precedence(e.lhs()) < p, out);
    out += op;
    child(e.rhs(), precedence(e.rhs()) <= p, out);
  }

  void print_power(const Expression& e, std::string& out) const {
    const Rational r = e.exponent();
    if (opt_.style == PrintStyle::C) {
      out += "pow(";
      print(e.lhs(), out);
      out += ", ";
      if (r.is_integer()) {
        out += number(static_cast<double>(r.num));
      } else {
        out += '(' + number(static_cast<double>(r.num)) + '/' + number(static_cast<double>(r.den)) + ')';
      }
      out += ')';
      return;
    }
    child(e.lhs(), precedence(e.lhs()) <= 4, out);
    out += '^';
    if (r.is_integer()) {
      out += std::to_string(r.num);
    } else {
      out += '(' + std::to_string(r.num) + '/' + std::to_string(r.den) + ')';
    }
  }

  PrintOptions opt_;
};

}  // namespace

std::string to_string(const Expression& expr, const PrintOptions& options) {
  std::string out;
  Printer(options).print(expr, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double power_value(double base, Rational r, const Expression& where) {
  if (r.is_integer()) {
    return std::pow(base, static_cast<double>(r.num));
  }
  if (base < 0.0) {
    throw Error(ErrorCategory::Domain,
                "negative base " + format_number(base) + " under fractional power in " + to_string(where));
  }
  return std::pow(base, r.to_double());
}

double sqrt_value(double operand, const Expression& where) {
  if (operand < 0.0) {
    throw Error(ErrorCategory::Domain,
                "negative radicand " + format_number(operand) + " in " + to_string(where));
  }
  return std::sqrt(operand);
}

template <typename Lookup>
double eval(const Expression& e, const Lookup& lookup) {
  switch (e.kind()) {
    case NodeKind::Number:
      return e.value();
    case NodeKind::Constant:
    case NodeKind::Variable:
      return lookup(e.name());
    case NodeKind::Add:
      return eval(e.lhs(), lookup) + eval(e.rhs(), lookup);
    case NodeKind::Subtract:
      return eval(e.lhs(), lookup) - eval(e.rhs(), lookup);
    case NodeKind::Multiply:
      return eval(e.lhs(), lookup) * eval(e.rhs(), lookup);
    case NodeKind::Divide:
      return eval(e.lhs(), lookup) / eval(e.rhs(), lookup);
    case NodeKind::Power:
      return power_value(eval(e.lhs(), lookup), e.exponent(), e);
    case NodeKind::Sqrt:
      return sqrt_value(eval(e.lhs(), lookup), e);
  }
  return 0.0;
}

[[noreturn]] void unbound(const std::string& name) {
  throw Error(ErrorCategory::Domain, "unbound symbol '" + name + "'");
}

}  // namespace

double evaluate(const Expression& expr, const Bindings& bindings) {
  return eval(expr, [&](const std::string& name) {
    const auto it = bindings.find(name);
    if (it == bindings.end()) {
      unbound(name);
    }
    return it->second;
  });
}

double evaluate_at(const Expression& expr, std::string_view variable, double value) {
  return eval(expr, [&](const std::string& name) {
    if (name != variable) {
      unbound(name);
    }
    return value;
  });
}

// ---------------------------------------------------------------------------
// Simplifying builders

namespace {

Expression folded(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCategory::Domain, "constant folding produced a non-finite value");
  }
  return Expression::number(v);
}

}  // namespace

Expression sum(Expression a, Expression b) {
  if (a.is_number() && b.is_number()) return folded(a.value() + b.value());
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  return Expression::add(std::move(a), std::move(b));
}

Expression difference(Expression a, Expression b) {
  if (a.is_number() && b.is_number()) return folded(a.value() - b.value());
  if (b.is_number(0.0)) return a;
  return Expression::subtract(std::move(a), std::move(b));
}

Expression product(Expression a, Expression b) {
  if (a.is_number() && b.is_number()) return folded(a.value() * b.value());
  if (a.is_number(0.0) || b.is_number(0.0)) return Expression::number(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (b.is_number()) std::swap(a, b);
  if (a.is_number() && b.kind() == NodeKind::Multiply && b.lhs().is_number()) {
    return product(folded(a.value() * b.lhs().value()), b.rhs());
  }
  return Expression::multiply(std::move(a), std::move(b));
}

Expression quotient(Expression a, Expression b) {
  if (a.is_number() && b.is_number()) return folded(a.value() / b.value());
  if (a.is_number(0.0)) return Expression::number(0.0);
  if (b.is_number(1.0)) return a;
  return Expression::divide(std::move(a), std::move(b));
}

Expression raise(Expression base, Rational exponent) {
  if (exponent.num == 0) return Expression::number(1.0);
  if (exponent == Rational(1)) return base;
  if (base.is_number()) {
    const Expression shell = Expression::power(base, exponent);
    return folded(power_value(base.value(), exponent, shell));
  }
  return Expression::power(std::move(base), exponent);
}

Expression square_root(Expression operand) {
  if (operand.is_number()) {
    return folded(sqrt_value(operand.value(), Expression::sqrt(operand)));
  }
  return Expression::sqrt(std::move(operand));
}

namespace {

template <typename Leaf>
Expression rebuild(const Expression& e, const Leaf& leaf) {
  switch (e.kind()) {
    case NodeKind::Number:
    case NodeKind::Constant:
    case NodeKind::Variable:
      return leaf(e);
    case NodeKind::Add: return sum(rebuild(e.lhs(), leaf), rebuild(e.rhs(), leaf));
    case NodeKind::Subtract: return difference(rebuild(e.lhs(), leaf), rebuild(e.rhs(), leaf));
    case NodeKind::Multiply: return product(rebuild(e.lhs(), leaf), rebuild(e.rhs(), leaf));
    case NodeKind::Divide: return quotient(rebuild(e.lhs(), leaf), rebuild(e.rhs(), leaf));
    case NodeKind::Power: return raise(rebuild(e.lhs(), leaf), e.exponent());
    case NodeKind::Sqrt: return square_root(rebuild(e.lhs(), leaf));
  }
  return e;
}

}  // namespace

Expression simplify(const Expression& expr) {
  return rebuild(expr, [](const Expression& leaf) { return leaf; });
}

Expression bind_constants(const Expression& expr, const Bindings& bindings) {
  return rebuild(expr, [&](const Expression& leaf) {
    if (leaf.kind() == NodeKind::Constant) {
      const auto it = bindings.find(leaf.name());
      if (it != bindings.end()) {
        return Expression::number(it->second);
      }
    }
    return leaf;
  });
}

Expression substitute(const Expression& expr, std::string_view variable, const Expression& replacement) {
  return rebuild(expr, [&](const Expression& leaf) {
    if (leaf.kind() == NodeKind::Variable && leaf.name() == variable) {
      return replacement;
    }
    return leaf;
  });
}

// ---------------------------------------------------------------------------
// Differentiation

Expression differentiate(const Expression& e, std::string_view v) {
  switch (e.kind()) {
    case NodeKind::Number:
    case NodeKind::Constant:
      return Expression::number(0.0);
    case NodeKind::Variable:
      return Expression::number(e.name() == v ? 1.0 : 0.0);
    case NodeKind::Add:
      return sum(differentiate(e.lhs(), v), differentiate(e.rhs(), v));
    case NodeKind::Subtract:
      return difference(differentiate(e.lhs(), v), differentiate(e.rhs(), v));
    case NodeKind::Multiply:
      return sum(product(differentiate(e.lhs(), v), e.rhs()),
                 product(e.lhs(), differentiate(e.rhs(), v)));
    case NodeKind::Divide: {
      const Expression da = differentiate(e.lhs(), v);
      const Expression db = differentiate(e.rhs(), v);
      if (db.is_number(0.0)) {
        return quotient(da, e.rhs());
      }
      return quotient(difference(product(da, e.rhs()), product(e.lhs(), db)), raise(e.rhs(), Rational(2)));
    }
    case NodeKind::Power: {
      const Rational r = e.exponent();
      const Expression outer = product(Expression::number(r.to_double()), raise(e.lhs(), r - Rational(1)));
      return product(outer, differentiate(e.lhs(), v));
    }
    case NodeKind::Sqrt:
      return quotient(differentiate(e.lhs(), v), product(Expression::number(2.0), e));
  }
  return Expression::number(0.0);
}

// ---------------------------------------------------------------------------
// Symbol queries

namespace {

void collect(const Expression& e, NodeKind kind, std::set<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::Number:
      return;
    case NodeKind::Constant:
    case NodeKind::Variable:
      if (e.kind() == kind) out.insert(e.name());
      return;
    case NodeKind::Power:
    case NodeKind::Sqrt:
      collect(e.lhs(), kind, out);
      return;
    default:
      collect(e.lhs(), kind, out);
      collect(e.rhs(), kind, out);
  }
}

}  // namespace

std::set<std::string> variables(const Expression& expr) {
  std::set<std::string> out;
  collect(expr, NodeKind::Variable, out);
  return out;
}

std::set<std::string> constants(const Expression& expr) {
  std::set<std::string> out;
  collect(expr, NodeKind::Constant, out);
  return out;
}

bool depends_on(const Expression& expr, std::string_view variable) {
  return variables(expr).count(std::string(variable)) > 0;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& options) : src_(src), opt_(options) {}

  Expression run() {
    skip_ws();
    if (pos_ == src_.size()) {
      throw SyntaxError(pos_, "expression", "empty expression");
    }
    Expression e = expr();
    skip_ws();
    if (pos_ != src_.size()) {
      throw SyntaxError(pos_, "operator or end of input",
                        std::string("unexpected '") + src_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw SyntaxError(pos_, std::string("'") + c + "'", std::string("expected '") + c + "'");
    }
  }

  static Expression fold(NodeKind kind, Expression a, Expression b, std::size_t at) {
    if (a.is_number() && b.is_number()) {
      double v = 0.0;
      switch (kind) {
        case NodeKind::Add: v = a.value() + b.value(); break;
        case NodeKind::Subtract: v = a.value() - b.value(); break;
        case NodeKind::Multiply: v = a.value() * b.value(); break;
        default: v = a.value() / b.value(); break;
      }
      if (!std::isfinite(v)) {
        throw SyntaxError(at, "finite constant", "constant subexpression is not finite");
      }
      return Expression::number(v);
    }
    switch (kind) {
      case NodeKind::Add: return Expression::add(std::move(a), std::move(b));
      case NodeKind::Subtract: return Expression::subtract(std::move(a), std::move(b));
      case NodeKind::Multiply: return Expression::multiply(std::move(a), std::move(b));
      default: return Expression::divide(std::move(a), std::move(b));
    }
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = fold(NodeKind::Add, std::move(lhs), term(), at);
      } else if (accept('-')) {
        lhs = fold(NodeKind::Subtract, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  Expression term() {
    Expression lhs = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = fold(NodeKind::Multiply, std::move(lhs), unary(), at);
      } else if (accept('/')) {
        lhs = fold(NodeKind::Divide, std::move(lhs), unary(), at);
      } else {
        return lhs;
      }
    }
  }

  Expression unary() {
    if (accept('-')) {
      Expression operand = unary();
      if (operand.is_number()) {
        return Expression::number(-operand.value());
      }
      return Expression::multiply(Expression::number(-1.0), std::move(operand));
    }
    return power();
  }

  Rational rational_exponent(const Expression& e, std::size_t at) const {
    if (!e.is_number()) {
      throw SyntaxError(at, "rational literal", "exponent must be a rational literal");
    }
    const auto r = Rational::from_double(e.value());
    if (!r) {
      throw SyntaxError(at, "rational literal", "exponent " + format_number(e.value()) + " is not rational");
    }
    return *r;
  }

  Expression make_power(Expression base, Rational r, std::size_t at) const {
    if (base.is_number()) {
      try {
        return folded(power_value(base.value(), r, Expression::power(base, r)));
      } catch (const Error& err) {
        throw SyntaxError(at, "valid constant power", err.what());
      }
    }
    return Expression::power(std::move(base), r);
  }

  Expression power() {
    Expression base = primary();
    skip_ws();
    const std::size_t at = pos_;
    if (accept('^')) {
      skip_ws();
      const std::size_t exp_at = pos_;
      const Expression exponent = unary();
      return make_power(std::move(base), rational_exponent(exponent, exp_at), at);
    }
    return base;
  }

  Expression primary() {
    skip_ws();
    if (pos_ >= src_.size()) {
      throw SyntaxError(pos_, "number, identifier or '('", "unexpected end of input");
    }
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') {
      return number_literal();
    }
    if (is_ident_start(c)) {
      return identifier();
    }
    throw SyntaxError(pos_, "number, identifier or '('", std::string("unexpected '") + c + "'");
  }

  Expression number_literal() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(v)) {
      throw SyntaxError(start, "number", "malformed number");
    }
    return Expression::number(v);
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (name == "sqrt" || name == "pow") {
      if (!call) {
        throw SyntaxError(pos_, "'('", "expected '(' after " + name);
      }
      ++pos_;
      Expression arg = expr();
      if (name == "sqrt") {
        expect(')');
        if (arg.is_number()) {
          if (arg.value() < 0.0) {
            throw SyntaxError(start, "non-negative radicand", "negative constant radicand");
          }
          return Expression::number(std::sqrt(arg.value()));
        }
        return Expression::sqrt(std::move(arg));
      }
      expect(',');
      skip_ws();
      const std::size_t exp_at = pos_;
      const Expression exponent = expr();
      expect(')');
      return make_power(std::move(arg), rational_exponent(exponent, exp_at), start);
    }
    if (call) {
      throw SyntaxError(start, "sqrt or pow", "unknown function '" + name + "'");
    }
    if (opt_.constants.count(name) > 0) {
      return Expression::constant(std::move(name));
    }
    if (variable_ && *variable_ != name) {
      throw SyntaxError(start, "single variable",
                        "multiple distinct variables '" + *variable_ + "' and '" + name + "'");
    }
    variable_ = name;
    return Expression::variable(std::move(name));
  }

  std::string_view src_;
  const ParseOptions& opt_;
  std::size_t pos_ = 0;
  std::optional<std::string> variable_;
};

}  // namespace

Expression parse(std::string_view source, const ParseOptions& options) {
  return Parser(source, options).run();
}

}  // namespace dmsscale
