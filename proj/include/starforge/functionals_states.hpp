#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "starforge/star_products.hpp"

namespace starforge {

/// weight * (-1)^|beta| * (d^beta phi)(point).
struct PointDeriv {
  std::vector<Rational> point;
  Monomial multi_index;
  PiRational weight{1};
  friend bool operator==(const PointDeriv&, const PointDeriv&) = default;
};

/// weight * integral of g phi. A dilated density stands for
/// lambda^-n g(x / sqrt(lambda)); it only has a meaning once lambda is bound,
/// and g may then carry only even-degree monomials.
struct Density {
  GaussPoly g;
  PiRational weight{1};  // a single transcendental monomial pi^k exp(rho), unit coefficient
  bool dilated = false;
  friend bool operator==(const Density&, const Density&) = default;
};

using FunctionalTerm = std::variant<PointDeriv, Density>;

/// Finite sum of functional terms: one coefficient T_l of a formal functional.
/// Point terms merge by (point, multi-index); densities merge by
/// (weight, rate, dilation), with the numeric part of the weight pushed into g.
class FunctionalSum {
 public:
  FunctionalSum() = default;
  FunctionalSum(FunctionalTerm t);

  const std::vector<FunctionalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_dilated() const;
  bool only_densities() const;
  /// Structural reality: real point weights, real densities.
  bool is_real() const;

  FunctionalSum& operator+=(const FunctionalSum& o);
  friend FunctionalSum operator+(FunctionalSum a, const FunctionalSum& b) { return a += b; }
  friend FunctionalSum operator-(FunctionalSum a, const FunctionalSum& b) { return a += -b; }
  FunctionalSum operator-() const { return scaled(PiRational(-1)); }
  friend bool operator==(const FunctionalSum& a, const FunctionalSum& b) { return a.terms_ == b.terms_; }

  FunctionalSum scaled(const PiRational& c) const;

  /// Plain action on one coefficient function. Throws FormalMode on a dilated
  /// density and NotIntegrable when a density meets a non-integrable product.
  PiRational act(const GaussSum& phi) const;

 private:
  void add(const FunctionalTerm& t);
  std::vector<FunctionalTerm> terms_;
};

/// sum_l lambda^l T_l with a finite principal part.
using FormalFunctional = Laurent<FunctionalSum>;

/// Builds a functional from a coefficient generator. `lowest` absent means the
/// generator prescribes every negative power; that series pairs to an
/// undefined sum and is rejected with InfinitePrincipalPart.
FormalFunctional functional_from_generator(const std::function<FunctionalSum(int)>& coeff,
                                           std::optional<int> lowest, int highest,
                                           std::optional<int> truncated_at = std::nullopt);

FormalFunctional delta(const std::vector<Rational>& point, int lambda_power = 0);
FormalFunctional point_deriv(const std::vector<Rational>& point, const Monomial& multi_index,
                             const PiRational& weight = 1, int lambda_power = 0);
FormalFunctional density(const GaussPoly& g, const PiRational& weight = 1, int lambda_power = 0);
/// lambda^-n g(x / sqrt(lambda)) with weight.
FormalFunctional dilated_density(const GaussPoly& g, const PiRational& weight = 1);

FormalFunctional func_scale(const PiSeries& c, const FormalFunctional& t);
FormalFunctional func_scale(const FormalScalar& c, const FormalFunctional& t);
int func_pairs(const FormalFunctional& t);

/// Replaces every dilated density by its value at the bound lambda.
/// Formal bindings with a dilated density raise FormalMode.
FormalFunctional resolve(const FormalFunctional& t, const LambdaBinding& binding);

/// <T, F> = sum lambda^(l+k) <T_l, phi_k>.
PiSeries func_action(const FormalFunctional& t, const FormalFunction& f);

enum class StarRoute {
  Automatic,  // reduction when the family allows it, explicit otherwise
  Reduction,  // lambda^-n <T, F>
  Explicit,   // densities via (psi * F) . t, point terms via the adjoint expansion
};

/// <T, F>_*. `order` caps the lambda power of the underlying star expansion
/// when it does not terminate.
PiSeries func_star_action(const StarFamily& s, const FormalFunctional& t, const FormalFunction& f,
                          std::optional<int> order = std::nullopt, StarRoute route = StarRoute::Automatic);

struct RealityReport {
  bool structural = false;
  bool witnessed = false;
  std::optional<std::size_t> failing_witness;
  bool real() const { return structural && witnessed; }
};

/// Witnesses must be real functions.
RealityReport reality_check(const FormalFunctional& t, const std::vector<FormalFunction>& witnesses);

/// Default lambda samples for the positivity definition.
std::vector<Rational> default_lambda_samples();

struct SampleVerdict {
  Rational lambda;
  /// Least m from which every partial sum  sum_{l <= m} lambda^l c_l  is >= 0,
  /// within the computed powers. Absent when the last partial sum is negative.
  std::optional<int> stable_from;
  PiRational value;       // last partial sum (the value when the series is exact)
  bool value_exact = false;
};

struct WitnessReport {
  std::size_t witness = 0;
  PiSeries series;  // <T, conj(f) * f>_*
  bool real = false;
  std::vector<SampleVerdict> samples;
};

struct NegativityWitness {
  std::size_t witness = 0;
  Rational lambda;
  int power = 0;  // last partial-sum index
  PiRational value;
};

struct PositivityReport {
  std::string family;
  std::vector<WitnessReport> witnesses;
  std::vector<Rational> lambda_samples;
  std::optional<int> order;
  std::optional<NegativityWitness> negative;
  bool nonreal = false;
  bool positive() const { return !negative && !nonreal; }
};

/// Series positivity: for each witness f and each sampled lambda the partial
/// sums of <T, conj(f) * f>_* are eventually nonnegative.
PositivityReport positivity_check(const StarFamily& s, const FormalFunctional& t,
                                  const std::vector<FormalFunction>& witnesses,
                                  const std::vector<Rational>& lambda_samples, std::optional<int> order);

/// Classical positivity  <T, |phi|^2> >= 0  on plain functions, each value
/// series evaluated at the sampled lambdas.
PositivityReport classical_positivity(const FormalFunctional& t, const std::vector<GaussSum>& witnesses,
                                      const std::vector<Rational>& lambda_samples);

/// Every coefficient real and >= 0. This reading forces <T, |phi|^2> = 0 and
/// is kept only to document why it is not the adopted definition.
bool per_power_nonnegative(const PiSeries& s);

struct Normalization {
  PiSeries factor;          // A[[lambda]]
  FormalFunctional normalized;
  PiSeries check;           // <T', 1>_*, equal to 1 through the order
};

/// A = <T, 1>_*^-1 through `order`, T' = A T. NotNormalizable when <T, 1>_*
/// vanishes or its leading coefficient is not invertible.
Normalization normalize_functional(const StarFamily& s, const FormalFunctional& t, int order);
/// Same with the plain pairing <T, 1> (no trace prefactor).
Normalization normalize_functional_plain(const FormalFunctional& t, int order);

enum class ProductSide { Left, Right, Bullet };
const char* side_name(ProductSide side);

/// xi o T, defined by its action:
///   left    <xi * T, phi>_* = <T, phi * xi>_*
///   right   <T * xi, phi>_* = <T, xi * phi>_*
///   bullet  <xi . T, phi>   = <T, phi . xi>
class FunctionalProduct {
 public:
  FunctionalProduct(const StarFamily& s, ProductSide side, FormalFunction xi, FormalFunctional t,
                    std::optional<int> order = std::nullopt);

  PiSeries act(const FormalFunction& phi) const;
  /// Explicit density form; only for density-only T under a closed family
  /// with unit trace density. Otherwise NotSupportedForm.
  FormalFunctional materialize() const;

 private:
  const StarFamily& s_;
  ProductSide side_;
  FormalFunction xi_;
  FormalFunctional t_;
  std::optional<int> order_;
};

struct EigenResidual {
  std::string test_function;
  PiSeries action;  // formal residual series
  std::optional<PiRational> value;  // strict residual
  bool zero = false;
};

struct EigenReport {
  std::string mode;  // "classical", "bullet", "formal" or "strict"
  std::vector<EigenResidual> residuals;
  std::vector<EigenResidual> commutation;
  std::optional<int> order;
  std::optional<std::size_t> first_failure;     // index into residuals
  std::optional<int> failure_power;             // lambda power of the first nonzero coefficient
  std::optional<std::size_t> first_commutation_failure;
  bool passed() const { return !first_failure && !first_commutation_failure; }
};

/// phi(point) = a, then <delta, (phi - a) psi> = 0 on every monomial psi of
/// degree <= test_degree.
EigenReport eigencheck_classical(const GaussPoly& phi, const ExactComplex& a, const std::vector<Rational>& point,
                                 int test_degree = 2);

/// <T, (xi - a) . psi> = 0 for every monomial psi of degree <= test_degree.
EigenReport eigencheck_bullet(const FormalFunction& xi, const FormalScalar& a, const FormalFunctional& t,
                              int test_degree);

/// <T, psi * (xi - a)>_* = 0 and <T, psi * xi - xi * psi>_* = 0 on monomials
/// psi of degree <= test_degree. Strict bindings evaluate at lambda exactly;
/// formal bindings compare through `order`.
EigenReport eigencheck_star(const StarFamily& s, const FormalFunction& xi, const FormalScalar& a,
                            const FormalFunctional& t, int test_degree, std::optional<int> order,
                            const LambdaBinding& binding);

struct RegionReport {
  Rational a, q0, p0;
  FormalFunction product;          // conj(f) * f
  FormalScalar minimum;            // -a lambda, attained at (q0, p0)
  FormalScalar semi_axis_q_sq;     // a lambda
  FormalScalar semi_axis_p_sq;     // lambda / a
  PiSeries area;                   // pi lambda
  std::optional<Rational> lambda;  // strict binding
  std::optional<Rational> minimum_value;
  std::optional<PiRational> area_value;
};

/// f must be (q - q0) + i a (p - p0) with rational a > 0 on one pair.
RegionReport negative_region(const FormalFunction& f, const LambdaBinding& binding);

}  // namespace starforge
