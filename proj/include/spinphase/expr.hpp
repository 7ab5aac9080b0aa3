// Small expression language for operators and states given on the command
// line. Grammar (whitespace-insensitive, no implicit multiplication):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' nonneg-int)?        exponent at most 16
//   atom    := 'I' | 'Jx' | 'Jy' | 'Jz' | 'Jp' | 'Jm' | literal | '(' expr ')'
//   literal := decimal number, optionally suffixed 'i'; bare 'i'
//
// Precedence ^ > unary- > * > +,-; +,-,* associate left. Complex values such
// as 1+2i are ordinary sums of a real and an imaginary literal.
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "spinphase/spin.hpp"

namespace spinphase {

// Syntax or lookup failure; position is a byte offset into the source.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at byte " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

enum class ExprOp { Identity, Jx, Jy, Jz, Jp, Jm, Literal, Neg, Add, Sub, Mul, Pow };

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprNode {
  ExprOp op;
  cplx literal{};   // Literal only
  int exponent = 0; // Pow only
  ExprPtr lhs, rhs;
};

class OperatorExpr {
public:
  explicit OperatorExpr(ExprPtr root) : root_(std::move(root)) {}
  OperatorExpr(const OperatorExpr& o);
  OperatorExpr(OperatorExpr&&) = default;
  OperatorExpr& operator=(const OperatorExpr& o);
  OperatorExpr& operator=(OperatorExpr&&) = default;

  const ExprNode& root() const { return *root_; }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

private:
  ExprPtr root_;
};

OperatorExpr parse_operator(std::string_view src);

// Canonical form; parsing it back yields the same tree.
std::string to_string(const OperatorExpr& e);

// Recursive evaluation over spin_matrices. generator_scale multiplies the
// five J identifiers (the moyal scan passes 1/j_c); the identity and
// literals are unscaled.
OperatorMatrix eval_operator(const OperatorExpr& e, Spin spin,
                             double generator_scale = 1.0);

// State specification -> density matrix (Hermitian, unit trace, PSD):
//   "ket:M"            |j,m><j,m|, M like 1, -2, 3/2
//   "coherent:T,P"     |n><n| at theta=T, phi=P
//   "mixed"            I/(2j+1)
//   "random_pure:SEED" seeded random pure state
//   "random_density:SEED"  G G^dag / tr(G G^dag), seeded gaussian G
OperatorMatrix parse_state(std::string_view spec, Spin spin);

}  // namespace spinphase
