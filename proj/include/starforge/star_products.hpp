#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starforge/formal_series.hpp"

namespace starforge {

/// One summand  coeff * d^left f * d^right g  of a bidifferential operator.
struct BidiffTerm {
  ExactComplex coeff;
  Monomial left;
  Monomial right;
};

/// A family {B_k} of bidifferential operators with a trace density, defining
/// F * G = sum_k lambda^k B_k(F, G) on formal series. Every family here is
/// built from derivatives only, so it is local and bilinear by construction.
class StarFamily {
 public:
  explicit StarFamily(int pairs);
  virtual ~StarFamily() = default;

  virtual std::string name() const = 0;
  int pairs() const { return pairs_; }

  /// The summands of B_k. B_0 must be the single pointwise term.
  virtual std::vector<BidiffTerm> terms(int k) const = 0;

  /// Least K with B_k(f, g) = 0 for all k > K, given the polynomial degrees
  /// of f and g (nothing when a Gaussian factor is present). Nothing means
  /// the expansion does not terminate.
  virtual std::optional<int> termination_bound(std::optional<int> deg_f, std::optional<int> deg_g) const = 0;

  /// t[[lambda]]; 1 unless overridden.
  virtual FormalFunction trace_density() const;

  /// True when <T, phi>_* = lambda^-n <T, phi> holds identically, i.e. the
  /// family is closed with unit trace density.
  virtual bool reduces_star_action() const { return false; }

  GaussPoly apply(int k, const GaussPoly& f, const GaussPoly& g) const;
  GaussSum apply(int k, const GaussSum& f, const GaussSum& g) const;

 private:
  int pairs_;
};

/// B_k = (i/2)^k sum_{|a|+|b|=k} (-1)^|b| / (a! b!) d_q^a d_p^b f * d_p^a d_q^b g.
class MoyalFamily final : public StarFamily {
 public:
  explicit MoyalFamily(int pairs = 1) : StarFamily(pairs) {}
  std::string name() const override { return "moyal"; }
  std::vector<BidiffTerm> terms(int k) const override;
  std::optional<int> termination_bound(std::optional<int> deg_f, std::optional<int> deg_g) const override;
  bool reduces_star_action() const override { return true; }
};

/// The commutative family: B_0 pointwise, B_k = 0 for k >= 1.
class BulletFamily final : public StarFamily {
 public:
  explicit BulletFamily(int pairs = 1) : StarFamily(pairs) {}
  std::string name() const override { return "bullet"; }
  std::vector<BidiffTerm> terms(int k) const override;
  std::optional<int> termination_bound(std::optional<int>, std::optional<int>) const override { return 0; }
  bool reduces_star_action() const override { return true; }
};

/// "moyal" or "bullet"; anything else is InvalidArgument.
std::unique_ptr<StarFamily> make_family(const std::string& name, int pairs);

/// B_k(f, g) of the Moyal family.
GaussSum moyal_term(int k, const GaussPoly& f, const GaussPoly& g);

/// Graded product  sum lambda^(l+m+k) B_k(F_l, G_m). Exact when every
/// coefficient pair terminates and both inputs are exact; otherwise the
/// result is truncated at `order` (or the inputs' own truncation).
/// Non-terminating expansions with no order and exact inputs raise OrderRequired.
FormalFunction star_mul(const StarFamily& s, const FormalFunction& f, const FormalFunction& g,
                        std::optional<int> order = std::nullopt);
FormalFunction star_commutator(const StarFamily& s, const FormalFunction& f, const FormalFunction& g,
                               std::optional<int> order = std::nullopt);

/// Tr F = lambda^-n  integral of F . t[[lambda]].
PiSeries star_trace(const StarFamily& s, const FormalFunction& f);

struct ClosednessReport {
  PiRational pointwise;               // integral of f g
  std::vector<PiRational> integrals;  // integral of B_k(f, g), k = 0..maxk
  bool closed = false;                // integrals[0] == pointwise and the rest vanish
};

/// Requires alpha(f) + alpha(g) > 0.
ClosednessReport closedness_check(const StarFamily& s, const GaussPoly& f, const GaussPoly& g, int maxk);

enum class Verdict { Pass, Fail, ByConstruction };
const char* verdict_name(Verdict v);

struct AxiomCounterexample {
  std::vector<std::string> inputs;  // rendered generators
  int order = 0;                    // k of the offending B_k
  std::string lhs;
  std::string rhs;
};

struct AxiomResult {
  int axiom = 0;
  std::string title;
  Verdict verdict = Verdict::Pass;
  std::size_t checks = 0;  // number of identities evaluated
  std::optional<AxiomCounterexample> counterexample;
};

struct AxiomReport {
  std::string family;
  int pairs = 1;
  int degree_bound = 0;
  int order_bound = 0;
  std::size_t generator_count = 0;
  std::vector<AxiomResult> results;  // axioms 1..9 in order
  bool passed() const;
};

/// Checks axioms 1..9 on all monomials of total degree <= degree_bound and
/// every B_k with k <= order_bound. Failures are verdicts, never errors.
/// Extra generators (e.g. random ones) are appended to the monomial set.
AxiomReport axiom_suite(const StarFamily& s, int degree_bound, int order_bound,
                        const std::vector<GaussPoly>& extra_generators = {});

}  // namespace starforge
