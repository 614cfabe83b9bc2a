#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "starforge/functionals_states.hpp"

namespace starforge {

/// Syntax tree of the surface language.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+')? factor
///   factor := atom ('^' '-'? int)?
///   atom   := rational | 'I' | 'lam' | coord | 'gauss' '(' rational ')' | '(' expr ')'
///
/// Functional mode adds the atoms 'pi', 'exp' '(' rational ')',
/// 'delta' '(' point (';' multi-index)? ')', 'density' '(' expr ')' and
/// 'wigner' '(' expr ')'. '/' divides by an invertible monomial only.
struct Expr {
  enum class Kind { Number, Imag, Lambda, Coord, Gauss, Pi, Exp, Delta, Density, Wigner, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  std::size_t offset = 0;
  Rational value{0};            // Number, Gauss, Exp
  int index = 0;                // Coord
  int exponent = 0;             // Pow
  std::vector<Rational> point;  // Delta
  Monomial multi_index;         // Delta
  std::vector<Expr> kids;
};

Expr parse_expression(std::string_view text, const PhaseContext& ctx);
Expr parse_functional_expression(std::string_view text, const PhaseContext& ctx);

FormalFunction lower(const Expr& e, const PhaseContext& ctx);
FormalFunctional lower_functional(const Expr& e, const PhaseContext& ctx);

inline FormalFunction parse_function(std::string_view text, const PhaseContext& ctx) {
  return lower(parse_expression(text, ctx), ctx);
}
/// Coordinate-free expression; InvalidArgument otherwise.
FormalScalar parse_scalar(std::string_view text);
inline FormalFunctional parse_functional(std::string_view text, const PhaseContext& ctx) {
  return lower_functional(parse_functional_expression(text, ctx), ctx);
}

/// Surface rendering of a functional; reparses with parse_functional when
/// every weight is a pi power times a rational.
std::string render(const FormalFunctional& t, const PhaseContext& ctx);

}  // namespace starforge
