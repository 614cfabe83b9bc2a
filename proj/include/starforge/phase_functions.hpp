#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starforge/exact.hpp"

namespace starforge {

/// Flat phase space R^(2n) with canonical coordinates q_1..q_n, p_1..p_n.
/// Coordinate index i < n is q_(i+1), index n + i is p_(i+1). The volume
/// element is dq dp with unit normalisation.
class PhaseContext {
 public:
  explicit PhaseContext(int pairs = 1);

  int pairs() const { return pairs_; }
  int dimension() const { return 2 * pairs_; }

  /// "q"/"p" when n = 1, "q1".."qn"/"p1".."pn" otherwise. Throws UnknownCoordinate.
  int coordinate(std::string_view name) const;
  std::string coordinate_name(int index) const;

 private:
  int pairs_;
};

/// Exponent vector over (q_1..q_n, p_1..p_n).
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// Graded-lex order: total degree ascending, then lexicographically larger
/// exponent vectors first (q before p, q^2 before qp).
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of total degree <= max_degree in graded-lex order.
std::vector<Monomial> monomials_up_to(int pairs, int max_degree);

/// P(q, p) * exp(-alpha * sum(q_i^2 + p_i^2)) with exact complex coefficients.
///
/// The zero function is canonical: no stored terms and alpha = 0. Adding two
/// nonzero functions with different alpha leaves the class and is rejected.
class GaussPoly {
 public:
  using Terms = std::map<Monomial, ExactComplex, GradedLex>;

  GaussPoly() = default;
  explicit GaussPoly(int pairs, Rational alpha = 0);

  static GaussPoly constant(int pairs, const ExactComplex& c, Rational alpha = 0);
  static GaussPoly monomial(int pairs, Monomial exps, const ExactComplex& c = 1, Rational alpha = 0);
  static GaussPoly coordinate(int pairs, int index);
  static GaussPoly gaussian(int pairs, Rational alpha);

  /// 0 only for a default-constructed zero that has not been tied to a context.
  int pairs() const { return pairs_; }
  /// Gaussian rate; 0 for the zero function.
  const Rational& alpha() const;
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const { return sgn(alpha()) == 0; }
  bool is_real() const;
  /// Highest total degree of P (-1 for zero).
  int degree() const;
  ExactComplex coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const ExactComplex& c);

  GaussPoly& operator+=(const GaussPoly& o);
  GaussPoly& operator-=(const GaussPoly& o);
  friend GaussPoly operator+(GaussPoly a, const GaussPoly& b) { return a += b; }
  friend GaussPoly operator-(GaussPoly a, const GaussPoly& b) { return a -= b; }
  friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b);
  friend GaussPoly operator*(const ExactComplex& c, const GaussPoly& f) { return f.scaled(c); }
  GaussPoly operator-() const { return scaled(-1); }
  friend bool operator==(const GaussPoly& a, const GaussPoly& b);

  GaussPoly scaled(const ExactComplex& c) const;
  GaussPoly conj() const;
  /// Same polynomial under a different Gaussian rate.
  GaussPoly with_alpha(const Rational& alpha) const;

 private:
  void check_pairs(const GaussPoly& o) const;

  int pairs_ = 0;
  Rational alpha_{0};
  Terms terms_;
};

enum class ArithOp { Add, Mul, Scale, Conj };

/// Dispatching form of the ring operations (add needs equal alpha).
GaussPoly gp_arith(ArithOp op, const GaussPoly& f, const GaussPoly& g);
GaussPoly gp_arith(ArithOp op, const GaussPoly& f, const ExactComplex& c);

/// d/dx_var of P exp(-alpha r^2) = (dP - 2 alpha x_var P) exp(-alpha r^2).
GaussPoly gp_diff(const GaussPoly& f, int var);
/// Mixed partial derivative with the given multi-index.
GaussPoly gp_diff(const GaussPoly& f, const Monomial& multi_index);

struct PointValue {
  ExactComplex poly_value;  // P(point)
  Rational exp_argument;    // -alpha |point|^2
  PiRational value() const;
};

/// Exact evaluation; the Gaussian factor is returned as its exponent.
PointValue gp_eval(const GaussPoly& f, const std::vector<Rational>& point);

/// Exact integral over R^(2n) as rational * pi^n. Odd moments vanish;
/// int x^(2m) exp(-alpha x^2) dx = (2m-1)!! / (2 alpha)^m * sqrt(pi / alpha).
PiRational gp_integrate(const GaussPoly& f);

/// {f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).
GaussPoly gp_poisson(const GaussPoly& f, const GaussPoly& g);

std::string render(const GaussPoly& f, const PhaseContext& ctx);

namespace detail {
// One term of the surface syntax: coeff * lam^k * monomial * gauss(alpha).
std::string render_term(const ExactComplex& c, int lambda_power, const Monomial& m,
                        const Rational& alpha, const PhaseContext& ctx);
// Joins rendered terms with " + " / " - ".
std::string join_terms(const std::vector<std::string>& parts);
}  // namespace detail

}  // namespace starforge
