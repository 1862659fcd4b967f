#ifndef MERO_EXPR_HPP
#define MERO_EXPR_HPP

// Expression trees for the integrands: parse, print, evaluate at complex
// arguments. Grammar (loosest to tightest): +,- ; *,/ ; unary +- ; ^
// (right associative, binds tighter than unary minus).

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mero {

using cplx = std::complex<double>;

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg) + " at position " + std::to_string(pos)),
        position(pos) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Map from variable name to complex value. Lookup of an absent name throws.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<const std::string, cplx>> init)
      : map_(init) {}

  Bindings& set(const std::string& name, cplx value) {
    map_[name] = value;
    return *this;
  }
  cplx get(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) throw EvalError("unbound variable '" + name + "'");
    return it->second;
  }
  bool has(const std::string& name) const { return map_.count(name) != 0; }

 private:
  std::map<std::string, cplx> map_;
};

class Expr {
 public:
  enum class Kind { Number, Constant, Variable, Unary, Binary, Call };

  Kind kind;
  double number = 0.0;          // Kind::Number
  std::string name;             // Constant, Variable, Call
  char op = 0;                  // Unary ('-','+'), Binary ('+','-','*','/','^')
  std::vector<ExprPtr> args;

  static ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
  }
  static ExprPtr make_constant(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr make_variable(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Variable;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr make_unary(char op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->op = op;
    e->args = {std::move(a)};
    return e;
  }
  static ExprPtr make_binary(char op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
  }
  static ExprPtr make_call(std::string fn, std::vector<ExprPtr> a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->name = std::move(fn);
    e->args = std::move(a);
    return e;
  }
};

inline bool struct_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::Unary:
    case Expr::Kind::Binary:
      if (a.op != b.op) return false;
      break;
    case Expr::Kind::Call:
      if (a.name != b.name) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!struct_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

namespace detail {

inline int builtin_arity(const std::string& fn) {
  static const std::map<std::string, int> table = {
      {"sin", 1}, {"cos", 1}, {"tan", 1},  {"cot", 1}, {"exp", 1},
      {"log", 1}, {"sqrt", 1}, {"abs", 1}, {"re", 1},  {"im", 1},
      {"conj", 1}};
  auto it = table.find(fn);
  return it == table.end() ? -1 : it->second;
}

inline bool is_constant_name(const std::string& n) {
  return n == "pi" || n == "e" || n == "i";
}

struct Token {
  enum class Type { Number, Ident, Op, LParen, RParen, Comma, End };
  Type type;
  double number = 0.0;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Token::Type::End, 0, "", start};
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.'))
        ++end;
      // exponent part
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
        if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
          ++e;
          while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
          end = e;
        }
      }
      std::string text(src_.substr(start, end - start));
      try {
        double v = std::stod(text);
        pos_ = end;
        return {Token::Type::Number, v, text, start};
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + text + "'", start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      std::string text(src_.substr(start, end - start));
      pos_ = end;
      return {Token::Type::Ident, 0, text, start};
    }
    ++pos_;
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        return {Token::Type::Op, 0, std::string(1, c), start};
      case '(': return {Token::Type::LParen, 0, "(", start};
      case ')': return {Token::Type::RParen, 0, ")", start};
      case ',': return {Token::Type::Comma, 0, ",", start};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    if (cur_.type != Token::Type::End)
      throw ParseError("unexpected token '" + cur_.text + "'", cur_.pos);
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool accept_op(char op) {
    if (cur_.type == Token::Type::Op && cur_.text[0] == op) {
      advance();
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept_op('+')) lhs = Expr::make_binary('+', lhs, parse_term());
      else if (accept_op('-')) lhs = Expr::make_binary('-', lhs, parse_term());
      else return lhs;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept_op('*')) lhs = Expr::make_binary('*', lhs, parse_unary());
      else if (accept_op('/')) lhs = Expr::make_binary('/', lhs, parse_unary());
      else return lhs;
    }
  }

  ExprPtr parse_unary() {
    if (accept_op('-')) return Expr::make_unary('-', parse_unary());
    if (accept_op('+')) return Expr::make_unary('+', parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept_op('^')) return Expr::make_binary('^', base, parse_unary());
    return base;
  }

  ExprPtr parse_atom() {
    if (cur_.type == Token::Type::Number) {
      double v = cur_.number;
      advance();
      return Expr::make_number(v);
    }
    if (cur_.type == Token::Type::Ident) {
      std::string name = cur_.text;
      std::size_t pos = cur_.pos;
      advance();
      if (cur_.type == Token::Type::LParen) {
        advance();
        std::vector<ExprPtr> args;
        args.push_back(parse_expr());
        while (cur_.type == Token::Type::Comma) {
          advance();
          args.push_back(parse_expr());
        }
        if (cur_.type != Token::Type::RParen)
          throw ParseError("expected ')'", cur_.pos);
        advance();
        int arity = builtin_arity(name);
        if (arity < 0) throw ParseError("unknown function '" + name + "'", pos);
        if (static_cast<std::size_t>(arity) != args.size())
          throw ParseError("function '" + name + "' expects " +
                               std::to_string(arity) + " argument(s), got " +
                               std::to_string(args.size()),
                           pos);
        return Expr::make_call(name, std::move(args));
      }
      if (is_constant_name(name)) return Expr::make_constant(name);
      return Expr::make_variable(name);
    }
    if (cur_.type == Token::Type::LParen) {
      advance();
      ExprPtr e = parse_expr();
      if (cur_.type != Token::Type::RParen)
        throw ParseError("expected ')'", cur_.pos);
      advance();
      return e;
    }
    throw ParseError("unexpected token '" +
                         (cur_.type == Token::Type::End ? std::string("<end>") : cur_.text) + "'",
                     cur_.pos);
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace detail

inline ExprPtr parse(std::string_view source) {
  if (source.empty()) throw ParseError("empty input", 0);
  return detail::Parser(source).parse();
}

inline cplx eval(const Expr& e, const Bindings& b) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return {e.number, 0.0};
    case Expr::Kind::Constant:
      if (e.name == "pi") return {M_PI, 0.0};
      if (e.name == "e") return {M_E, 0.0};
      return {0.0, 1.0};  // i
    case Expr::Kind::Variable:
      return b.get(e.name);
    case Expr::Kind::Unary: {
      cplx v = eval(*e.args[0], b);
      return e.op == '-' ? -v : v;
    }
    case Expr::Kind::Binary: {
      cplx l = eval(*e.args[0], b);
      cplx r = eval(*e.args[1], b);
      switch (e.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/':
          if (r == cplx(0.0, 0.0)) throw EvalError("division by zero");
          return l / r;
        case '^': {
          // integer exponents use exact repeated squaring
          if (r.imag() == 0.0 && r.real() == std::floor(r.real()) &&
              std::abs(r.real()) <= 1024.0) {
            long n = static_cast<long>(r.real());
            if (n == 0) return {1.0, 0.0};
            cplx base = l;
            bool inv = n < 0;
            unsigned long m = inv ? -static_cast<unsigned long>(n) : n;
            cplx acc{1.0, 0.0};
            while (m) {
              if (m & 1) acc *= base;
              base *= base;
              m >>= 1;
            }
            if (inv) {
              if (acc == cplx(0.0, 0.0)) throw EvalError("division by zero in power");
              return cplx(1.0, 0.0) / acc;
            }
            return acc;
          }
          if (l == cplx(0.0, 0.0)) throw EvalError("zero base with non-integer exponent");
          return std::pow(l, r);
        }
      }
      throw EvalError("bad binary op");
    }
    case Expr::Kind::Call: {
      cplx a = eval(*e.args[0], b);
      if (e.name == "sin") return std::sin(a);
      if (e.name == "cos") return std::cos(a);
      if (e.name == "tan") return std::tan(a);
      if (e.name == "cot") {
        cplx s = std::sin(a);
        if (s == cplx(0.0, 0.0)) throw EvalError("cot at a multiple of pi");
        return std::cos(a) / s;
      }
      if (e.name == "exp") return std::exp(a);
      if (e.name == "log") {
        if (a == cplx(0.0, 0.0)) throw EvalError("log of zero");
        return std::log(a);
      }
      if (e.name == "sqrt") return std::sqrt(a);
      if (e.name == "abs") return {std::abs(a), 0.0};
      if (e.name == "re") return {a.real(), 0.0};
      if (e.name == "im") return {a.imag(), 0.0};
      if (e.name == "conj") return std::conj(a);
      throw EvalError("unknown function '" + e.name + "'");
    }
  }
  throw EvalError("corrupt expression node");
}

inline cplx eval(const ExprPtr& e, const Bindings& b) { return eval(*e, b); }

namespace detail {
inline void print_to(const Expr& e, std::string& out);

inline void print_number(double v, std::string& out) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

inline void print_to(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Number:
      print_number(e.number, out);
      break;
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      out += e.name;
      break;
    case Expr::Kind::Unary:
      out += '(';
      out += e.op;
      print_to(*e.args[0], out);
      out += ')';
      break;
    case Expr::Kind::Binary:
      out += '(';
      print_to(*e.args[0], out);
      out += e.op;
      print_to(*e.args[1], out);
      out += ')';
      break;
    case Expr::Kind::Call:
      out += e.name;
      out += '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ',';
        print_to(*e.args[i], out);
      }
      out += ')';
      break;
  }
}
}  // namespace detail

// Fully parenthesized form; parse(print(e)) is structurally equal to e.
inline std::string print(const Expr& e) {
  std::string out;
  detail::print_to(e, out);
  return out;
}
inline std::string print(const ExprPtr& e) { return print(*e); }

// Helpers for building integrand products like f(t)*cos(k*t).
inline ExprPtr mul(ExprPtr a, ExprPtr b) {
  return Expr::make_binary('*', std::move(a), std::move(b));
}
inline ExprPtr call1(std::string fn, ExprPtr a) {
  return Expr::make_call(std::move(fn), {std::move(a)});
}
inline ExprPtr num(double v) { return Expr::make_number(v); }
inline ExprPtr var(std::string n) { return Expr::make_variable(std::move(n)); }

}  // namespace mero

#endif  // MERO_EXPR_HPP
