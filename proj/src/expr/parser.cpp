#include <cctype>
#include <charconv>
#include <string>

#include "divcalc/errors.hpp"
#include "divcalc/expr.hpp"

namespace divcalc::expr {
namespace {

NodePtr make_number(cplx v) {
  auto n = std::make_shared<Node>();
  n->op = Op::number;
  n->value = v;
  return n;
}

NodePtr make_unary(Op op, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(arg);
  return n;
}

NodePtr make_binary(Op op, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size())
        throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Op::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_binary(Op::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Op::mul, lhs, parse_unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        NodePtr rhs = parse_unary();
        if (rhs->op == Op::number && rhs->value == cplx(0.0))
          throw ParseError(at, "division by literal zero");
        lhs = make_binary(Op::div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_unary(Op::neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_base();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(start, "integer exponent expected after '^'");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      throw ParseError(start, "only integer exponents are supported");
    int k = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, k);
    if (ec != std::errc() || k > 4096) throw ParseError(start, "exponent out of range");
    (void)ptr;
    auto n = std::make_shared<Node>();
    n->op = Op::pow;
    n->exponent = negative ? -k : k;
    n->lhs = std::move(base);
    return n;
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // 'e' belongs to whatever follows; reported there
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      // Imaginary suffix, unless it starts an identifier.
      bool ident = pos_ + 1 < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_ + 1]));
      if (!ident) {
        ++pos_;
        return make_number(cplx(0.0, v));
      }
    }
    return make_number(cplx(v, 0.0));
  }

  NodePtr parse_base() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "z" || name == "x") {
        auto n = std::make_shared<Node>();
        n->op = Op::variable;
        return n;
      }
      if (name == "i") return make_number(cplx(0.0, 1.0));
      Op func;
      if (name == "exp") {
        func = Op::exp;
      } else if (name == "sin") {
        func = Op::sin;
      } else if (name == "cos") {
        func = Op::cos;
      } else if (name == "log") {
        func = Op::log;
      } else if (name == "sqrt") {
        func = Op::sqrt;
      } else {
        throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
      }
      expect('(');
      NodePtr arg = parse_expr();
      expect(')');
      return make_unary(func, std::move(arg));
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AnalyticFunction parse_expression(std::string_view text) {
  NodePtr root = Parser(text).parse();
  Entirety entirety = Entirety::entire;
  auto singularities = detail::derive_singularities(*root, entirety);
  return AnalyticFunction(std::move(root), std::move(singularities), entirety);
}

}  // namespace divcalc::expr
