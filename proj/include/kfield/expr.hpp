#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "kfield/errors.hpp"

namespace kfield {

// Values of the coordinates (and any named parameters) at one point.
using PointBinding = std::map<std::string, double>;

// Immutable scalar expression tree over named variables. Supported nodes:
// constants, variables, negation, sums, products, quotients, integer powers,
// sin, cos and exp. Construction goes through light-folding builders, so
// trees produced by differentiation come out already trimmed of 0- and
// 1-factors. Equality of expressions is a semantic notion here and is always
// decided by evaluation, never structurally.
class Expression {
public:
  enum class Kind { Constant, Variable, Negate, Sum, Product, Quotient, Power, Sin, Cos, Exp };

  Expression() : node_(constant_node(0.0)) {}

  static Expression constant(double value) { return Expression(constant_node(value)); }

  static Expression variable(std::string name) {
    if (name.empty()) throw Error("variable name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return Expression(std::move(n));
  }

  Kind kind() const { return node_->kind; }

  bool is_constant() const { return node_->kind == Kind::Constant; }

  bool is_constant(double value) const {
    return node_->kind == Kind::Constant && node_->value == value;
  }

  double constant_value() const { return node_->value; }

  const std::string& variable_name() const { return node_->name; }

  double evaluate(const PointBinding& binding) const { return eval(*node_, binding); }

  Expression differentiate(const std::string& var) const {
    return Expression(diff(node_, var));
  }

  Expression simplified() const { return Expression(rebuild(node_)); }

  Expression substitute(const std::string& var, const Expression& replacement) const {
    return Expression(subst(node_, var, replacement.node_));
  }

  void free_variables(std::set<std::string>& out) const { collect(*node_, out); }

  std::set<std::string> free_variables() const {
    std::set<std::string> out;
    collect(*node_, out);
    return out;
  }

  bool depends_on(const std::string& var) const { return mentions(*node_, var); }

  std::string str() const {
    std::string out;
    print(*node_, out, 0);
    return out;
  }

  friend Expression operator+(const Expression& a, const Expression& b) {
    return Expression(sum_node(a.node_, b.node_));
  }
  friend Expression operator-(const Expression& a, const Expression& b) {
    return Expression(sum_node(a.node_, negate_node(b.node_)));
  }
  friend Expression operator*(const Expression& a, const Expression& b) {
    return Expression(product_node(a.node_, b.node_));
  }
  friend Expression operator/(const Expression& a, const Expression& b) {
    return Expression(quotient_node(a.node_, b.node_));
  }
  friend Expression operator-(const Expression& a) { return Expression(negate_node(a.node_)); }

  friend Expression pow(const Expression& base, int exponent) {
    return Expression(power_node(base.node_, exponent));
  }
  friend Expression sin(const Expression& a) { return Expression(unary_node(Kind::Sin, a.node_)); }
  friend Expression cos(const Expression& a) { return Expression(unary_node(Kind::Cos, a.node_)); }
  friend Expression exp(const Expression& a) { return Expression(unary_node(Kind::Exp, a.node_)); }

private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind = Kind::Constant;
    double value = 0.0;     // Constant
    std::string name;       // Variable
    int exponent = 0;       // Power
    NodePtr a, b;           // children
  };

  explicit Expression(NodePtr node) : node_(std::move(node)) {}

  static NodePtr constant_node(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    return n;
  }

  static bool is_const(const NodePtr& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
  }

  static NodePtr sum_node(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
      return constant_node(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  static NodePtr product_node(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
      return constant_node(a->value * b->value);
    if (b->kind == Kind::Constant) std::swap(a, b);  // constants lead
    if (a->kind == Kind::Constant) {
      if (a->value == 0.0) return a;
      if (a->value == 1.0) return b;
      if (a->value == -1.0) return negate_node(b);
      // fold nested leading constants: c1*(c2*x) -> (c1*c2)*x
      if (b->kind == Kind::Product && b->a->kind == Kind::Constant)
        return product_node(constant_node(a->value * b->a->value), b->b);
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  static NodePtr quotient_node(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return a;
    if (is_const(b, 1.0)) return a;
    if (is_const(b, -1.0)) return negate_node(a);
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && b->value != 0.0)
      return constant_node(a->value / b->value);
    // cancel a shared integer coefficient: (c1*x)/(c2*y) -> (c1/g*x)/(c2/g*y)
    double ca = leading_coefficient(a), cb = leading_coefficient(b);
    if (cb != 1.0 && is_integral(ca) && is_integral(cb)) {
      long long g = std::gcd(static_cast<long long>(std::llabs(static_cast<long long>(ca))),
                             static_cast<long long>(std::llabs(static_cast<long long>(cb))));
      if (g > 1) {
        NodePtr num = product_node(constant_node(ca / static_cast<double>(g)), strip_coefficient(a));
        NodePtr den = product_node(constant_node(cb / static_cast<double>(g)), strip_coefficient(b));
        return quotient_raw(std::move(num), std::move(den));
      }
    }
    return quotient_raw(std::move(a), std::move(b));
  }

  static NodePtr quotient_raw(NodePtr a, NodePtr b) {
    if (is_const(b, 1.0)) return a;
    if (is_const(b, -1.0)) return negate_node(a);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Quotient;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  static bool is_integral(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15;
  }

  static double leading_coefficient(const NodePtr& n) {
    if (n->kind == Kind::Constant) return n->value;
    if (n->kind == Kind::Product && n->a->kind == Kind::Constant) return n->a->value;
    return 1.0;
  }

  static NodePtr strip_coefficient(const NodePtr& n) {
    if (n->kind == Kind::Constant) return constant_node(1.0);
    if (n->kind == Kind::Product && n->a->kind == Kind::Constant) return n->b;
    return n;
  }

  static NodePtr power_node(NodePtr base, int exponent) {
    if (exponent == 0) return constant_node(1.0);
    if (exponent == 1) return base;
    if (base->kind == Kind::Constant && !(base->value == 0.0 && exponent < 0))
      return constant_node(ipow(base->value, exponent));
    if (base->kind == Kind::Power) return power_node(base->a, base->exponent * exponent);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->exponent = exponent;
    n->a = std::move(base);
    return n;
  }

  static NodePtr negate_node(NodePtr a) {
    if (a->kind == Kind::Constant) return constant_node(-a->value);
    if (a->kind == Kind::Negate) return a->a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->a = std::move(a);
    return n;
  }

  static NodePtr unary_node(Kind kind, NodePtr a) {
    if (a->kind == Kind::Constant) {
      switch (kind) {
        case Kind::Sin: return constant_node(std::sin(a->value));
        case Kind::Cos: return constant_node(std::cos(a->value));
        case Kind::Exp: return constant_node(std::exp(a->value));
        default: break;
      }
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    return n;
  }

  static double ipow(double base, int exponent) {
    if (exponent < 0) return 1.0 / ipow(base, -exponent);
    double r = 1.0, b = base;
    for (int e = exponent; e > 0; e >>= 1) {
      if (e & 1) r *= b;
      b *= b;
    }
    return r;
  }

  static double eval(const Node& n, const PointBinding& binding) {
    switch (n.kind) {
      case Kind::Constant: return n.value;
      case Kind::Variable: {
        auto it = binding.find(n.name);
        if (it == binding.end()) throw UnboundVariable(n.name);
        return it->second;
      }
      case Kind::Negate: return -eval(*n.a, binding);
      case Kind::Sum: return eval(*n.a, binding) + eval(*n.b, binding);
      case Kind::Product: return eval(*n.a, binding) * eval(*n.b, binding);
      case Kind::Quotient: {
        double den = eval(*n.b, binding);
        if (den == 0.0) throw DivisionByZero();
        return eval(*n.a, binding) / den;
      }
      case Kind::Power: {
        double base = eval(*n.a, binding);
        if (base == 0.0 && n.exponent < 0) throw DivisionByZero();
        return ipow(base, n.exponent);
      }
      case Kind::Sin: return std::sin(eval(*n.a, binding));
      case Kind::Cos: return std::cos(eval(*n.a, binding));
      case Kind::Exp: return std::exp(eval(*n.a, binding));
    }
    throw Error("corrupt expression node");
  }

  static NodePtr diff(const NodePtr& n, const std::string& var) {
    switch (n->kind) {
      case Kind::Constant: return constant_node(0.0);
      case Kind::Variable: return constant_node(n->name == var ? 1.0 : 0.0);
      case Kind::Negate: return negate_node(diff(n->a, var));
      case Kind::Sum: return sum_node(diff(n->a, var), diff(n->b, var));
      case Kind::Product:
        return sum_node(product_node(diff(n->a, var), n->b),
                        product_node(n->a, diff(n->b, var)));
      case Kind::Quotient: {
        if (!mentions(*n->b, var)) return quotient_node(diff(n->a, var), n->b);
        NodePtr num = sum_node(product_node(diff(n->a, var), n->b),
                               negate_node(product_node(n->a, diff(n->b, var))));
        return quotient_node(std::move(num), power_node(n->b, 2));
      }
      case Kind::Power:
        return product_node(
            product_node(constant_node(static_cast<double>(n->exponent)),
                         power_node(n->a, n->exponent - 1)),
            diff(n->a, var));
      case Kind::Sin: return product_node(unary_node(Kind::Cos, n->a), diff(n->a, var));
      case Kind::Cos:
        return negate_node(product_node(unary_node(Kind::Sin, n->a), diff(n->a, var)));
      case Kind::Exp: return product_node(unary_node(Kind::Exp, n->a), diff(n->a, var));
    }
    throw Error("corrupt expression node");
  }

  static NodePtr rebuild(const NodePtr& n) {
    switch (n->kind) {
      case Kind::Constant:
      case Kind::Variable: return n;
      case Kind::Negate: return negate_node(rebuild(n->a));
      case Kind::Sum: return sum_node(rebuild(n->a), rebuild(n->b));
      case Kind::Product: return product_node(rebuild(n->a), rebuild(n->b));
      case Kind::Quotient: return quotient_node(rebuild(n->a), rebuild(n->b));
      case Kind::Power: return power_node(rebuild(n->a), n->exponent);
      case Kind::Sin:
      case Kind::Cos:
      case Kind::Exp: return unary_node(n->kind, rebuild(n->a));
    }
    throw Error("corrupt expression node");
  }

  static NodePtr subst(const NodePtr& n, const std::string& var, const NodePtr& repl) {
    switch (n->kind) {
      case Kind::Constant: return n;
      case Kind::Variable: return n->name == var ? repl : n;
      case Kind::Negate: return negate_node(subst(n->a, var, repl));
      case Kind::Sum: return sum_node(subst(n->a, var, repl), subst(n->b, var, repl));
      case Kind::Product: return product_node(subst(n->a, var, repl), subst(n->b, var, repl));
      case Kind::Quotient: return quotient_node(subst(n->a, var, repl), subst(n->b, var, repl));
      case Kind::Power: return power_node(subst(n->a, var, repl), n->exponent);
      case Kind::Sin:
      case Kind::Cos:
      case Kind::Exp: return unary_node(n->kind, subst(n->a, var, repl));
    }
    throw Error("corrupt expression node");
  }

  static void collect(const Node& n, std::set<std::string>& out) {
    if (n.kind == Kind::Variable) out.insert(n.name);
    if (n.a) collect(*n.a, out);
    if (n.b) collect(*n.b, out);
  }

  static bool mentions(const Node& n, const std::string& var) {
    if (n.kind == Kind::Variable) return n.name == var;
    if (n.a && mentions(*n.a, var)) return true;
    if (n.b && mentions(*n.b, var)) return true;
    return false;
  }

  static std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

  // precedence: sum 1, product/quotient 2, negate 2, power 3, atoms 4
  static int precedence(const Node& n) {
    switch (n.kind) {
      case Kind::Sum: return 1;
      case Kind::Negate: return 2;
      case Kind::Product:
      case Kind::Quotient: return 2;
      case Kind::Power: return 3;
      default: return 4;
    }
  }

  static void print_child(const Node& child, std::string& out, int min_prec) {
    bool parens = precedence(child) < min_prec ||
                  (child.kind == Kind::Constant && child.value < 0.0 && min_prec > 1);
    if (parens) out += '(';
    print(child, out, 0);
    if (parens) out += ')';
  }

  static void print(const Node& n, std::string& out, int) {
    switch (n.kind) {
      case Kind::Constant: out += format_number(n.value); return;
      case Kind::Variable: out += n.name; return;
      case Kind::Negate:
        out += '-';
        print_child(*n.a, out, 3);
        return;
      case Kind::Sum:
        print_child(*n.a, out, 1);
        if (n.b->kind == Kind::Negate) {
          out += " - ";
          print_child(*n.b->a, out, 2);
        } else if (n.b->kind == Kind::Constant && n.b->value < 0.0) {
          out += " - ";
          out += format_number(-n.b->value);
        } else {
          out += " + ";
          print_child(*n.b, out, 2);
        }
        return;
      case Kind::Product:
        print_child(*n.a, out, 2);
        out += '*';
        print_child(*n.b, out, 3);
        return;
      case Kind::Quotient:
        print_child(*n.a, out, 2);
        out += '/';
        print_child(*n.b, out, 3);
        return;
      case Kind::Power:
        print_child(*n.a, out, 4);
        out += '^';
        if (n.exponent < 0) {
          out += '(';
          out += std::to_string(n.exponent);
          out += ')';
        } else {
          out += std::to_string(n.exponent);
        }
        return;
      case Kind::Sin: out += "sin("; print(*n.a, out, 0); out += ')'; return;
      case Kind::Cos: out += "cos("; print(*n.a, out, 0); out += ')'; return;
      case Kind::Exp: out += "exp("; print(*n.a, out, 0); out += ')'; return;
    }
  }

  NodePtr node_;
};

// Central difference (e(var + step) - e(var - step)) / (2*step); the
// numerical oracle paired with Expression::differentiate.
inline double finite_difference(const Expression& e, const PointBinding& binding,
                                const std::string& var, double step) {
  if (!(step > 0.0)) throw Error("finite_difference: step must be positive");
  PointBinding b = binding;
  auto it = b.find(var);
  if (it == b.end() && e.depends_on(var)) throw UnboundVariable(var);
  double center = it == b.end() ? 0.0 : it->second;
  b[var] = center + step;
  double hi = e.evaluate(b);
  b[var] = center - step;
  double lo = e.evaluate(b);
  return (hi - lo) / (2.0 * step);
}

}  // namespace kfield
