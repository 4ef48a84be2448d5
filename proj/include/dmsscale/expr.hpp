#pragma once

// Single-variable arithmetic expressions: the DSL in which static
// characteristics are written.
//
// Grammar (whitespace insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | identifier | '(' expr ')'
//            | 'sqrt' '(' expr ')' | 'pow' '(' expr ',' expr ')'
//
// Exponents must fold to a rational literal. Numeric-literal subtrees are
// folded while parsing, so printing and re-parsing is the identity on trees.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace dmsscale {

/// Exact rational number with a positive denominator, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }

  /// Best rational with denominator <= max_den within 1e-12 of value, if any.
  static std::optional<Rational> from_double(double value, std::int64_t max_den = 1000);

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class NodeKind { Number, Constant, Variable, Add, Subtract, Multiply, Divide, Power, Sqrt };

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  struct Node;

  Expression();  // the number 0

  static Expression number(double value);
  static Expression constant(std::string name);
  static Expression variable(std::string name);
  static Expression add(Expression lhs, Expression rhs);
  static Expression subtract(Expression lhs, Expression rhs);
  static Expression multiply(Expression lhs, Expression rhs);
  static Expression divide(Expression lhs, Expression rhs);
  static Expression power(Expression base, Rational exponent);
  static Expression sqrt(Expression operand);

  NodeKind kind() const noexcept;
  bool is_number() const noexcept { return kind() == NodeKind::Number; }
  bool is_number(double v) const noexcept { return is_number() && value() == v; }

  double value() const noexcept;             // Number
  const std::string& name() const noexcept;  // Constant, Variable
  Rational exponent() const noexcept;        // Power
  const Expression& lhs() const noexcept;    // binary nodes; Power base; Sqrt operand
  const Expression& rhs() const noexcept;    // binary nodes

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Bindings = std::map<std::string, double, std::less<>>;

struct ParseOptions {
  /// Identifiers parsed as named constants; every other identifier is the
  /// variable, and at most one distinct variable may appear.
  std::set<std::string, std::less<>> constants;
};

Expression parse(std::string_view source, const ParseOptions& options = {});

enum class PrintStyle {
  Dsl,  // canonical DSL text, re-parseable
  C,    // C89 expression: pow() for powers, integral literals as "2.0"
};

struct PrintOptions {
  int significant_digits = 0;  // 0 prints the shortest round-trip form
  PrintStyle style = PrintStyle::Dsl;
};

std::string to_string(const Expression& expr, const PrintOptions& options = {});

/// Locale-independent number formatting shared by all text outputs.
std::string format_number(double value, int significant_digits = 0);

double evaluate(const Expression& expr, const Bindings& bindings);
double evaluate_at(const Expression& expr, std::string_view variable, double value);

Expression differentiate(const Expression& expr, std::string_view variable);

/// Replace named constants by their bound values and fold.
Expression bind_constants(const Expression& expr, const Bindings& bindings);

/// Replace every occurrence of `variable` by `replacement` and simplify.
Expression substitute(const Expression& expr, std::string_view variable,
                      const Expression& replacement);

/// Constant folding plus the 0/1 identities.
Expression simplify(const Expression& expr);

std::set<std::string> variables(const Expression& expr);
std::set<std::string> constants(const Expression& expr);
bool depends_on(const Expression& expr, std::string_view variable);

// Simplifying builders: fold numeric operands and apply x+0, x*1, x*0, x^1.
Expression sum(Expression a, Expression b);
Expression difference(Expression a, Expression b);
Expression product(Expression a, Expression b);
Expression quotient(Expression a, Expression b);
Expression raise(Expression base, Rational exponent);
Expression square_root(Expression operand);

}  // namespace dmsscale
