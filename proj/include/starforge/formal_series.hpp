#pragma once

#include <map>
#include <optional>
#include <string>

#include "starforge/lambda_scalars.hpp"
#include "starforge/phase_functions.hpp"

namespace starforge {

/// Finite sum of GaussPoly terms, one per Gaussian rate. This is the
/// coefficient of a single lambda power in a FormalFunction; it closes the
/// single-rate class under addition.
class GaussSum {
 public:
  using Parts = std::map<Rational, GaussPoly>;

  GaussSum() = default;
  GaussSum(const GaussPoly& f);

  static GaussSum constant(int pairs, const ExactComplex& c) { return GaussPoly::constant(pairs, c); }

  int pairs() const { return pairs_; }
  const Parts& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  bool is_real() const;
  /// Degree when this is a pure polynomial; nothing if any Gaussian part is present.
  std::optional<int> polynomial_degree() const;

  GaussSum& operator+=(const GaussSum& o);
  GaussSum& operator-=(const GaussSum& o);
  friend GaussSum operator+(GaussSum a, const GaussSum& b) { return a += b; }
  friend GaussSum operator-(GaussSum a, const GaussSum& b) { return a -= b; }
  friend GaussSum operator*(const GaussSum& a, const GaussSum& b);
  GaussSum operator-() const { return scaled(-1); }
  friend bool operator==(const GaussSum& a, const GaussSum& b) { return a.parts_ == b.parts_; }

  GaussSum scaled(const ExactComplex& c) const;
  GaussSum conj() const;
  GaussSum diff(int var) const;
  GaussSum diff(const Monomial& multi_index) const;
  PiRational integrate() const;
  PiRational eval(const std::vector<Rational>& point) const;

 private:
  void add(const GaussPoly& f);

  int pairs_ = 0;
  Parts parts_;
};

/// Formal Laurent series in lambda with GaussSum coefficients.
using FormalFunction = Laurent<GaussSum>;

FormalFunction fs_constant(int pairs, const ExactComplex& c);
FormalFunction fs_from(const GaussPoly& f, int lambda_power = 0);
/// Number of canonical pairs carried by the coefficients (0 for zero).
int fs_pairs(const FormalFunction& f);

/// c1 * F1 + c2 * F2 with graded Cauchy scalar action.
FormalFunction fs_linear_comb(const FormalScalar& c1, const FormalFunction& f1, const FormalScalar& c2,
                              const FormalFunction& f2);
FormalFunction fs_scale(const FormalScalar& c, const FormalFunction& f);

/// Commutative graded product with pointwise coefficient products.
FormalFunction fs_bullet(const FormalFunction& f, const FormalFunction& g);
FormalFunction fs_diff(const FormalFunction& f, int var);
FormalFunction fs_conj(const FormalFunction& f);
bool fs_is_real(const FormalFunction& f);

/// Termwise integral; NotIntegrable names the offending lambda power.
PiSeries fs_integrate(const FormalFunction& f);

/// Surface-syntax rendering: lambda power ascending, then Gaussian rate, then
/// graded-lex monomial order. Reparses to the same series.
std::string render(const FormalFunction& f, const PhaseContext& ctx);

}  // namespace starforge
