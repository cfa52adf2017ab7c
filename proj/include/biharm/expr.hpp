#pragma once

// A small expression language for profiles of one variable.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
//   func    := sin cos tan cot ln exp sqrt abs arctan arccos
//
// Numbers are decimal literals with an optional exponent. There is no
// implicit multiplication ("2r" is a syntax error).

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "biharm/profile.hpp"

namespace biharm {

enum class NodeKind { number, pi, variable, call, negate, add, sub, mul, div, pow };

enum class Func { sin, cos, tan, cot, ln, exp, sqrt, abs, arctan, arccos };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double number = 0.0;   // NodeKind::number
  Func func = Func::sin; // NodeKind::call
  std::vector<ExprPtr> children;
};

/// Structural equality of two trees.
bool equal(const ExprNode& a, const ExprNode& b);

struct ExprAst {
  ExprPtr root;
  std::string var;

  friend bool operator==(const ExprAst& a, const ExprAst& b) {
    return a.var == b.var && equal(*a.root, *b.root);
  }
};

/// Throws SyntaxError (code syntax_error or unknown_identifier) with the
/// byte offset of the offending token.
ExprAst parse_expr(std::string_view src, std::string_view var_name = "r");

/// Prints with minimal parentheses; parse_expr(print(ast)) == ast.
std::string print(const ExprAst& ast);

Jet4 evaluate(const ExprAst& ast, const Jet4& arg);

/// Jet-evaluating profile for the expression. Domain errors (log of a
/// non-positive value, division by zero, |.| exactly at a sign change) show up
/// as SingularPoint from Profile::jet.
Profile compile_profile(const ExprAst& ast, Interval domain, std::vector<double> singularities = {});

}  // namespace biharm
