#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "starforge/exact.hpp"
#include "starforge/laurent.hpp"

namespace starforge {

/// Element of C[lambda^-1, lambda]] with Gaussian-rational coefficients.
using FormalScalar = Laurent<ExactComplex>;

/// Formal Laurent series whose coefficients carry pi / exp factors; the value
/// domain of integrals, traces and functional actions.
using PiSeries = Laurent<PiRational>;

/// Formal (lambda a symbol) or strict (lambda bound to a positive rational).
class LambdaBinding {
 public:
  static LambdaBinding formal() { return LambdaBinding(); }
  static LambdaBinding strict(const Rational& value);

  bool is_strict() const { return value_.has_value(); }
  /// Throws FormalMode when unbound.
  const Rational& value() const;

 private:
  std::optional<Rational> value_;
};

FormalScalar scalar_constant(const ExactComplex& c);
FormalScalar scalar_lambda_power(int k, const ExactComplex& c = 1);

inline FormalScalar scalar_add(const FormalScalar& a, const FormalScalar& b) { return a + b; }
FormalScalar scalar_mul(const FormalScalar& a, const FormalScalar& b);
FormalScalar scalar_conj(const FormalScalar& a);

/// Multiplicative inverse by the coefficient recurrence. The result is known
/// through power order - val(a), so that a * b agrees with 1 through `order`.
/// Exact when a is an exact monomial.
FormalScalar scalar_invert(const FormalScalar& a, int order);

/// Substitutes a strict lambda. Refuses formal bindings and truncated tails.
ExactComplex scalar_eval(const FormalScalar& a, const LambdaBinding& binding);

PiSeries to_pi_series(const FormalScalar& a);
PiSeries pi_mul(const PiSeries& a, const PiSeries& b);
PiSeries pi_conj(const PiSeries& a);
PiSeries pi_invert(const PiSeries& a, int order);
PiRational pi_eval(const PiSeries& a, const LambdaBinding& binding);
/// Partial sum  sum_{l <= m} lambda^l c_l  at a strict lambda; ignores the tail.
PiRational pi_partial_sum(const PiSeries& a, const Rational& lambda, int m);

/// Per-power convergence of a sequence of scalars to `limit`: the coefficient
/// of lambda^power is eventually equal to the limit's. Returns the index from
/// which the sampled sequence agrees, or nothing if its last entry disagrees.
std::optional<std::size_t> stabilization_index(std::span<const FormalScalar> sequence,
                                               const FormalScalar& limit, int power);
inline bool converges_at_power(std::span<const FormalScalar> sequence, const FormalScalar& limit,
                               int power) {
  return stabilization_index(sequence, limit, power).has_value();
}

std::string render(const FormalScalar& a);
std::string render(const PiSeries& a);

}  // namespace starforge
