#include "biharm/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numbers>
#include <utility>

namespace biharm {

namespace {

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr std::array<FuncName, 10> kFuncs = {{{"sin", Func::sin},
                                              {"cos", Func::cos},
                                              {"tan", Func::tan},
                                              {"cot", Func::cot},
                                              {"ln", Func::ln},
                                              {"exp", Func::exp},
                                              {"sqrt", Func::sqrt},
                                              {"abs", Func::abs},
                                              {"arctan", Func::arctan},
                                              {"arccos", Func::arccos}}};

std::string_view func_name(Func f) {
  for (const auto& fn : kFuncs)
    if (fn.func == f) return fn.name;
  return "?";
}

ExprPtr make(NodeKind kind, std::vector<ExprPtr> children = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  ExprPtr parse() {
    skip_space();
    if (pos_ >= src_.size()) fail("empty expression");
    ExprPtr e = expr();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, Errc code = Errc::syntax_error) const {
    throw SyntaxError(code, msg, pos_);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(NodeKind::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(NodeKind::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(NodeKind::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(NodeKind::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return make(NodeKind::negate, {unary()});
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return make(NodeKind::pow, {base, unary()});
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text == "." || end != text.c_str() + text.size()) {
      pos_ = start;
      fail("malformed number");
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::number;
    n->number = v;
    return n;
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);
    for (const auto& fn : kFuncs) {
      if (fn.name == id) {
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        ExprPtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::call;
        n->func = fn.func;
        n->children = {arg};
        return n;
      }
    }
    if (id == "pi") return make(NodeKind::pi);
    if (id == var_) return make(NodeKind::variable);
    pos_ = start;
    fail("unknown identifier '" + std::string(id) + "'", Errc::unknown_identifier);
  }

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer; higher binds tighter.
int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::negate: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print_node(const ExprNode& n, const std::string& var, int required, std::string& out) {
  const int prec = precedence(n.kind);
  const bool parens = prec < required || (n.kind == NodeKind::number && n.number < 0.0);
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::number: out += format_number(n.number); break;
    case NodeKind::pi: out += "pi"; break;
    case NodeKind::variable: out += var; break;
    case NodeKind::call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.children[0], var, 0, out);
      out += ')';
      break;
    case NodeKind::negate:
      out += '-';
      print_node(*n.children[0], var, 3, out);
      break;
    case NodeKind::pow:
      print_node(*n.children[0], var, 5, out);
      out += '^';
      print_node(*n.children[1], var, 3, out);
      break;
    default: {
      static constexpr std::array<char, 4> ops = {'+', '-', '*', '/'};
      const auto op = ops[static_cast<std::size_t>(n.kind) - static_cast<std::size_t>(NodeKind::add)];
      print_node(*n.children[0], var, prec, out);
      out += op;
      print_node(*n.children[1], var, prec + 1, out);
      break;
    }
  }
  if (parens) out += ')';
}

Jet4 eval_node(const ExprNode& n, const Jet4& x) {
  switch (n.kind) {
    case NodeKind::number: return Jet4(n.number);
    case NodeKind::pi: return Jet4(std::numbers::pi);
    case NodeKind::variable: return x;
    case NodeKind::negate: return -eval_node(*n.children[0], x);
    case NodeKind::add: return eval_node(*n.children[0], x) + eval_node(*n.children[1], x);
    case NodeKind::sub: return eval_node(*n.children[0], x) - eval_node(*n.children[1], x);
    case NodeKind::mul: return eval_node(*n.children[0], x) * eval_node(*n.children[1], x);
    case NodeKind::div: return eval_node(*n.children[0], x) / eval_node(*n.children[1], x);
    case NodeKind::pow: return pow(eval_node(*n.children[0], x), eval_node(*n.children[1], x));
    case NodeKind::call: {
      const Jet4 a = eval_node(*n.children[0], x);
      switch (n.func) {
        case Func::sin: return sin(a);
        case Func::cos: return cos(a);
        case Func::tan: return tan(a);
        case Func::cot: return cot(a);
        case Func::ln: return a[0] > 0.0 ? log(a) : Jet4::nan();
        case Func::exp: return exp(a);
        case Func::sqrt: return a[0] >= 0.0 ? sqrt(a) : Jet4::nan();
        case Func::abs: return abs(a);
        case Func::arctan: return atan(a);
        case Func::arccos: return acos(a);
      }
    }
  }
  return Jet4::nan();
}

}  // namespace

bool equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.kind == NodeKind::number && a.number != b.number) return false;
  if (a.kind == NodeKind::call && a.func != b.func) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(*a.children[i], *b.children[i])) return false;
  return true;
}

ExprAst parse_expr(std::string_view src, std::string_view var_name) {
  Parser p(src, var_name);
  return {p.parse(), std::string(var_name)};
}

std::string print(const ExprAst& ast) {
  std::string out;
  print_node(*ast.root, ast.var, 0, out);
  return out;
}

Jet4 evaluate(const ExprAst& ast, const Jet4& arg) { return eval_node(*ast.root, arg); }

Profile compile_profile(const ExprAst& ast, Interval domain, std::vector<double> singularities) {
  return Profile([ast](const Jet4& a) { return eval_node(*ast.root, a); }, domain,
                 std::move(singularities), print(ast));
}

}  // namespace biharm
