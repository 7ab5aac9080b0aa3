#include "spinphase/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinphase/random.hpp"

namespace spinphase {

namespace {

ExprPtr clone(const ExprNode& n) {
  auto out = std::make_unique<ExprNode>();
  out->op = n.op;
  out->literal = n.literal;
  out->exponent = n.exponent;
  if (n.lhs) out->lhs = clone(*n.lhs);
  if (n.rhs) out->rhs = clone(*n.rhs);
  return out;
}

bool equal(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op) return false;
  if (a.op == ExprOp::Literal && a.literal != b.literal) return false;
  if (a.op == ExprOp::Pow && a.exponent != b.exponent) return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !equal(*a.rhs, *b.rhs)) return false;
  return true;
}

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    skip_ws();
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
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

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        auto n = std::make_unique<ExprNode>();
        n->op = ExprOp::Add;
        n->lhs = std::move(lhs);
        n->rhs = parse_term();
        lhs = std::move(n);
      } else if (eat('-')) {
        auto n = std::make_unique<ExprNode>();
        n->op = ExprOp::Sub;
        n->lhs = std::move(lhs);
        n->rhs = parse_term();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (eat('*')) {
      auto n = std::make_unique<ExprNode>();
      n->op = ExprOp::Mul;
      n->lhs = std::move(lhs);
      n->rhs = parse_unary();
      lhs = std::move(n);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (eat('-')) {
      auto n = std::make_unique<ExprNode>();
      n->op = ExprOp::Neg;
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw ParseError("exponent must be a nonnegative integer", at);
      int exp = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        exp = exp * 10 + (src_[pos_] - '0');
        if (exp > 16) throw ParseError("exponent exceeds the cap of 16", at);
        ++pos_;
      }
      auto n = std::make_unique<ExprNode>();
      n->op = ExprOp::Pow;
      n->exponent = exp;
      n->lhs = std::move(base);
      return n;
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", at);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number(at);
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident(at);
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  ExprPtr parse_number(std::size_t at) {
    std::size_t end = pos_;
    bool seen_dot = false, seen_exp = false;
    while (end < src_.size()) {
      const char c = src_[end];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++end;
      } else if (c == '.' && !seen_dot && !seen_exp) {
        seen_dot = true;
        ++end;
      } else if ((c == 'e' || c == 'E') && !seen_exp && end + 1 < src_.size() &&
                 (std::isdigit(static_cast<unsigned char>(src_[end + 1])) ||
                  ((src_[end + 1] == '+' || src_[end + 1] == '-') &&
                   end + 2 < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[end + 2]))))) {
        seen_exp = true;
        end += (src_[end + 1] == '+' || src_[end + 1] == '-') ? 2 : 1;
      } else {
        break;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + at, src_.data() + end, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + end)
      throw ParseError("malformed number", at);
    pos_ = end;
    auto n = std::make_unique<ExprNode>();
    n->op = ExprOp::Literal;
    if (pos_ < src_.size() && src_[pos_] == 'i') {
      ++pos_;
      n->literal = cplx(0.0, value);
    } else {
      n->literal = cplx(value, 0.0);
    }
    return n;
  }

  ExprPtr parse_ident(std::size_t at) {
    std::size_t end = pos_;
    while (end < src_.size() &&
           std::isalnum(static_cast<unsigned char>(src_[end])))
      ++end;
    const std::string_view name = src_.substr(at, end - at);
    pos_ = end;
    auto n = std::make_unique<ExprNode>();
    if (name == "I") n->op = ExprOp::Identity;
    else if (name == "Jx") n->op = ExprOp::Jx;
    else if (name == "Jy") n->op = ExprOp::Jy;
    else if (name == "Jz") n->op = ExprOp::Jz;
    else if (name == "Jp") n->op = ExprOp::Jp;
    else if (name == "Jm") n->op = ExprOp::Jm;
    else if (name == "i") {
      n->op = ExprOp::Literal;
      n->literal = cplx(0.0, 1.0);
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", at);
    }
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Add:
    case ExprOp::Sub: return 1;
    case ExprOp::Mul: return 2;
    case ExprOp::Neg: return 3;
    case ExprOp::Pow: return 4;
    default: return 5;  // atoms
  }
}

// literals the tokenizer cannot produce directly print like compound
// expressions, so rank them accordingly when parenthesizing
int effective_precedence(const ExprNode& n) {
  if (n.op == ExprOp::Literal) {
    const double re = n.literal.real(), im = n.literal.imag();
    if (re != 0.0 && im != 0.0) return 1;              // prints as a sum
    if (re < 0.0 || im < 0.0) return precedence(ExprOp::Neg);
  }
  return precedence(n.op);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void print_literal(cplx v, std::string& out) {
  const double re = v.real(), im = v.imag();
  if (re != 0.0 && im != 0.0) {
    print_literal(cplx(re, 0.0), out);
    out += im > 0.0 ? " + " : " - ";
    print_literal(cplx(0.0, std::abs(im)), out);
    return;
  }
  if (re < 0.0 || im < 0.0) {
    out += '-';
    print_literal(-v, out);
    return;
  }
  if (im == 0.0) {
    out += format_number(re);
  } else if (im == 1.0) {
    out += "i";
  } else {
    out += format_number(im);
    out += "i";
  }
}

void print_node(const ExprNode& n, std::string& out) {
  auto child = [&out](const ExprNode& c, int min_prec) {
    if (effective_precedence(c) < min_prec) {
      out += '(';
      print_node(c, out);
      out += ')';
    } else {
      print_node(c, out);
    }
  };
  switch (n.op) {
    case ExprOp::Identity: out += "I"; break;
    case ExprOp::Jx: out += "Jx"; break;
    case ExprOp::Jy: out += "Jy"; break;
    case ExprOp::Jz: out += "Jz"; break;
    case ExprOp::Jp: out += "Jp"; break;
    case ExprOp::Jm: out += "Jm"; break;
    case ExprOp::Literal:
      print_literal(n.literal, out);
      break;
    case ExprOp::Neg:
      out += '-';
      child(*n.lhs, precedence(ExprOp::Neg));
      break;
    case ExprOp::Add:
      child(*n.lhs, 1);
      out += " + ";
      child(*n.rhs, 2);
      break;
    case ExprOp::Sub:
      child(*n.lhs, 1);
      out += " - ";
      child(*n.rhs, 2);
      break;
    case ExprOp::Mul:
      child(*n.lhs, 2);
      out += "*";
      child(*n.rhs, 3);
      break;
    case ExprOp::Pow:
      child(*n.lhs, 5);
      out += '^';
      out += std::to_string(n.exponent);
      break;
  }
}

OperatorMatrix eval_node(const ExprNode& n, Spin spin, const SpinMatrices& jm,
                         double scale) {
  switch (n.op) {
    case ExprOp::Identity: return OperatorMatrix::identity(spin);
    case ExprOp::Jx: return scale * jm.jx;
    case ExprOp::Jy: return scale * jm.jy;
    case ExprOp::Jz: return scale * jm.jz;
    case ExprOp::Jp: return scale * jm.jp;
    case ExprOp::Jm: return scale * jm.jm;
    case ExprOp::Literal: return n.literal * OperatorMatrix::identity(spin);
    case ExprOp::Neg: return cplx(-1.0) * eval_node(*n.lhs, spin, jm, scale);
    case ExprOp::Add:
      return eval_node(*n.lhs, spin, jm, scale) + eval_node(*n.rhs, spin, jm, scale);
    case ExprOp::Sub:
      return eval_node(*n.lhs, spin, jm, scale) - eval_node(*n.rhs, spin, jm, scale);
    case ExprOp::Mul:
      return eval_node(*n.lhs, spin, jm, scale) * eval_node(*n.rhs, spin, jm, scale);
    case ExprOp::Pow: {
      const OperatorMatrix base = eval_node(*n.lhs, spin, jm, scale);
      OperatorMatrix out = OperatorMatrix::identity(spin);
      for (int k = 0; k < n.exponent; ++k) out = out * base;
      return out;
    }
  }
  throw std::logic_error("eval_node: unhandled node");
}

// "M" or "M/2" -> 2m; used by ket: specs
int parse_twice_halfinteger(std::string_view s, std::size_t offset) {
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::size_t digits_begin = i;
  long v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    v = v * 10 + (s[i] - '0');
    ++i;
  }
  if (i == digits_begin) throw ParseError("expected a number", offset + i);
  long twice = 2 * v;
  if (i + 1 < s.size() && s[i] == '/' && s[i + 1] == '2') {
    twice = v;
    i += 2;
  }
  if (i != s.size()) throw ParseError("malformed half-integer", offset + i);
  return int(neg ? -twice : twice);
}

}  // namespace

OperatorExpr::OperatorExpr(const OperatorExpr& o) : root_(clone(*o.root_)) {}

OperatorExpr& OperatorExpr::operator=(const OperatorExpr& o) {
  if (this != &o) root_ = clone(*o.root_);
  return *this;
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
  return equal(*a.root_, *b.root_);
}

OperatorExpr parse_operator(std::string_view src) {
  return OperatorExpr(Parser(src).parse());
}

std::string to_string(const OperatorExpr& e) {
  std::string out;
  print_node(e.root(), out);
  return out;
}

OperatorMatrix eval_operator(const OperatorExpr& e, Spin spin,
                             double generator_scale) {
  const SpinMatrices jm = spin_matrices(spin);
  return eval_node(e.root(), spin, jm, generator_scale);
}

OperatorMatrix parse_state(std::string_view spec, Spin spin) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const std::size_t arg_off = colon == std::string_view::npos ? 0 : colon + 1;

  if (head == "mixed") {
    if (!arg.empty()) throw ParseError("mixed takes no argument", arg_off);
    OperatorMatrix rho = OperatorMatrix::identity(spin);
    rho *= 1.0 / spin.dim();
    return rho;
  }
  if (head == "ket") {
    const int two_m = parse_twice_halfinteger(arg, arg_off);
    if (std::abs(two_m) > spin.two_j() ||
        ((two_m & 1) != (spin.two_j() & 1)))
      throw ParseError("ket: m must satisfy |m| <= j with the parity of j", arg_off);
    StateVector psi(spin);
    psi.amplitudes[(spin.two_j() - two_m) / 2] = 1.0;
    return outer_product(psi);
  }
  if (head == "coherent") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("coherent needs theta,phi", arg_off);
    double theta = 0.0, phi = 0.0;
    try {
      theta = std::stod(std::string(arg.substr(0, comma)));
      phi = std::stod(std::string(arg.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError("coherent: malformed angles", arg_off);
    }
    if (theta < 0.0 || theta > std::numbers::pi || phi < 0.0 ||
        phi >= 2.0 * std::numbers::pi)
      throw ParseError("coherent: need theta in [0,pi], phi in [0,2pi)", arg_off);
    return outer_product(coherent_ket(spin, {theta, phi}));
  }
  if (head == "random_pure" || head == "random_density") {
    std::uint64_t seed = 0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (res.ec != std::errc() || res.ptr != arg.data() + arg.size())
      throw ParseError(std::string(head) + " needs an integer seed", arg_off);
    SeededRng rng(seed);
    if (head == "random_pure") return outer_product(random_pure_state(spin, rng));
    return random_density(spin, rng);
  }
  throw ParseError("unknown state spec '" + std::string(head) + "'", 0);
}

}  // namespace spinphase
