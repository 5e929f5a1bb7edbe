#include "qslab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <vector>

namespace qslab::expr {

namespace {

using geom::Vec3;

struct Node {
  virtual ~Node() = default;
  virtual double eval(const Vec3& p) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct Const : Node {
  double c;
  explicit Const(double v) : c(v) {}
  double eval(const Vec3&) const override { return c; }
};
struct Coord : Node {
  int axis;
  explicit Coord(int a) : axis(a) {}
  double eval(const Vec3& p) const override { return p[axis]; }
};
struct Binary : Node {
  char op;
  NodePtr a, b;
  Binary(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
  double eval(const Vec3& p) const override {
    double x = a->eval(p), y = b->eval(p);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      case '/': return x / y;
      default: return std::pow(x, y);
    }
  }
};
struct Unary : Node {
  int fn;  // 0 neg, 1 sin, 2 cos, 3 exp, 4 sqrt, 5 abs
  NodePtr a;
  Unary(int f, NodePtr x) : fn(f), a(std::move(x)) {}
  double eval(const Vec3& p) const override {
    double x = a->eval(p);
    switch (fn) {
      case 0: return -x;
      case 1: return std::sin(x);
      case 2: return std::cos(x);
      case 3: return std::exp(x);
      case 4: return std::sqrt(x);
      default: return std::abs(x);
    }
  }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : src_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("field expression error at offset " + std::to_string(pos_) + ": " +
                                what);
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (consume('+'))
        e = std::make_shared<Binary>('+', e, term());
      else if (consume('-'))
        e = std::make_shared<Binary>('-', e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = power();
    for (;;) {
      if (consume('*'))
        e = std::make_shared<Binary>('*', e, power());
      else if (consume('/'))
        e = std::make_shared<Binary>('/', e, power());
      else
        return e;
    }
  }

  NodePtr power() {
    NodePtr base = unary();
    if (consume('^')) return std::make_shared<Binary>('^', base, unary());
    return base;
  }

  NodePtr unary() {
    if (consume('-')) return std::make_shared<Unary>(0, unary());
    if (consume('+')) return unary();
    return atom();
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!consume(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      double v = std::strtod(src_.c_str() + pos_, &end);
      if (end == src_.c_str() + pos_) fail("bad number");
      pos_ = end - src_.c_str();
      return std::make_shared<Const>(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string name = src_.substr(start, pos_ - start);
      if (name == "x") return std::make_shared<Coord>(0);
      if (name == "y") return std::make_shared<Coord>(1);
      if (name == "z") return std::make_shared<Coord>(2);
      if (name == "pi") return std::make_shared<Const>(3.14159265358979323846);
      int fn = name == "sin"    ? 1
               : name == "cos"  ? 2
               : name == "exp"  ? 3
               : name == "sqrt" ? 4
               : name == "abs"  ? 5
                                : -1;
      if (fn < 0) fail("unknown identifier '" + name + "'");
      if (!consume('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!consume(')')) fail("missing ')'");
      return std::make_shared<Unary>(fn, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

geom::SmoothFn compile(const std::string& source) {
  NodePtr root = Parser(source).parse();
  return [root](const Vec3& p) { return root->eval(p); };
}

}  // namespace qslab::expr
