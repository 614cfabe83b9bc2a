#include <doctest.h>

#include "starforge/expression.hpp"
#include "support.hpp"

using namespace starforge;
using sftest::random_function;

namespace {

const PhaseContext ctx(1);
const ExactComplex I = ExactComplex::imag_unit();
GaussPoly q() { return GaussPoly::coordinate(1, 0); }
GaussPoly p() { return GaussPoly::coordinate(1, 1); }
GaussPoly mono(int a, int b, ExactComplex c = 1, Rational alpha = 0) { return GaussPoly::monomial(1, {a, b}, c, alpha); }
GaussPoly g1() { return GaussPoly::gaussian(1, 1); }

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

ExactComplex half_i_power(int k) {
  ExactComplex r = 1;
  for (int i = 0; i < k; ++i) r *= ExactComplex(0, Rational(1, 2));
  return r;
}

// Independent one-pair oracle from the exponential form of the bidifferential:
// B_k = (i/2)^k / k! sum_j C(k,j) (-1)^j  d_q^(k-j) d_p^j f * d_p^(k-j) d_q^j g.
GaussSum oracle_term(int k, const GaussPoly& f, const GaussPoly& g) {
  GaussSum out;
  for (int j = 0; j <= k; ++j) {
    ExactComplex c = half_i_power(k) * ExactComplex(binomial(k, j) / factorial(k) * (j % 2 ? -1 : 1));
    out += GaussSum((gp_diff(f, Monomial{k - j, j}) * gp_diff(g, Monomial{j, k - j})).scaled(c));
  }
  return out;
}

// Moyal with B_1 doubled; breaks axiom 3 and axiom 6.
class DoubledFirstOrder final : public StarFamily {
 public:
  DoubledFirstOrder() : StarFamily(1), m_(1) {}
  std::string name() const override { return "moyal-2B1"; }
  std::vector<BidiffTerm> terms(int k) const override {
    auto ts = m_.terms(k);
    if (k == 1)
      for (auto& t : ts) t.coeff *= 2;
    return ts;
  }
  std::optional<int> termination_bound(std::optional<int> a, std::optional<int> b) const override {
    return m_.termination_bound(a, b);
  }

 private:
  MoyalFamily m_;
};

}  // namespace

TEST_CASE("Moyal bidifferential terms") {
  CHECK(moyal_term(0, q(), p()) == GaussSum(mono(1, 1)));
  CHECK(moyal_term(1, q(), p()) == GaussSum(GaussPoly::constant(1, ExactComplex(0, Rational(1, 2)))));
  CHECK(moyal_term(2, mono(2, 0), mono(0, 2)) == GaussSum(GaussPoly::constant(1, Rational(-1, 2))));
}

TEST_CASE("Moyal terms agree with the exponential-form oracle") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    GaussPoly f = i % 3 ? sftest::random_gauss(rng, 1, 3) : sftest::random_poly(rng, 1, 4);
    GaussPoly g = sftest::random_gauss(rng, 1, 3);
    for (int k = 0; k <= 5; ++k) CHECK(moyal_term(k, f, g) == oracle_term(k, f, g));
  }
}

TEST_CASE("termination on polynomials") {
  MoyalFamily m(1);
  std::mt19937_64 rng(32);
  for (int i = 0; i < 30; ++i) {
    GaussPoly f = sftest::random_poly(rng, 1, 3), g = sftest::random_poly(rng, 1, 2);
    int bound = std::min(f.degree(), g.degree());
    for (int k = bound + 1; k <= bound + 3; ++k) CHECK(moyal_term(k, f, g).is_zero());
    CHECK(star_mul(m, fs_from(f), fs_from(g)).is_exact());
  }
  CHECK(m.termination_bound(3, 2) == 2);
  CHECK(m.termination_bound(std::nullopt, 2) == 2);
  CHECK_FALSE(m.termination_bound(std::nullopt, std::nullopt).has_value());
}

TEST_CASE("star products") {
  MoyalFamily m(1);
  BulletFamily b(1);
  CHECK(star_mul(m, fs_from(q()), fs_from(p())) ==
        fs_from(mono(1, 1)) + fs_from(GaussPoly::constant(1, ExactComplex(0, Rational(1, 2))), 1));
  FormalFunction zbar = fs_from(q() - p().scaled(I)), z = fs_from(q() + p().scaled(I));
  CHECK(star_mul(m, zbar, z) == fs_from(mono(2, 0) + mono(0, 2)) - fs_constant(1, 1).shifted(1));
  CHECK(star_mul(m, fs_from(mono(2, 0)), fs_from(mono(0, 2))) ==
        fs_from(mono(2, 2)) + fs_from(mono(1, 1, ExactComplex(0, 2)), 1) + fs_from(GaussPoly::constant(1, Rational(-1, 2)), 2));
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    FormalFunction f = random_function(rng, 1, 3, true), g = random_function(rng, 1, 3, true);
    CHECK(star_mul(b, f, g) == fs_bullet(f, g));
  }
}

TEST_CASE("unbounded expansions need an order") {
  MoyalFamily m(1);
  FormalFunction f = fs_from(g1()), g = fs_from(p() * g1());
  try {
    star_mul(m, f, g);
    FAIL("expected OrderRequired");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderRequired);
  }
  FormalFunction h = star_mul(m, f, g, 3);
  CHECK(h.truncated_at() == 3);
  // A truncated input supplies the order itself.
  CHECK(star_mul(m, f.truncated(2), g).truncated_at() == 2);
  // A polynomial factor of degree 2 keeps a Gaussian product exact.
  CHECK(star_mul(m, fs_from(mono(2, 0) + mono(0, 2)), f).is_exact());
}

TEST_CASE("commutators") {
  MoyalFamily m(1);
  BulletFamily b(1);
  CHECK(star_commutator(m, fs_from(q()), fs_from(p())) == fs_constant(1, I).shifted(1));
  CHECK(star_commutator(m, fs_from(mono(2, 0)), fs_from(p())) == fs_from(q().scaled(ExactComplex(0, 2)), 1));
  std::mt19937_64 rng(34);
  for (int i = 0; i < 20; ++i) {
    GaussPoly f0 = sftest::random_gauss(rng, 1, 3), g0 = sftest::random_gauss(rng, 1, 3);
    FormalFunction f = fs_from(f0) + fs_from(sftest::random_poly(rng, 1, 2), 1);
    FormalFunction g = fs_from(g0) + fs_from(sftest::random_gauss(rng, 1, 2), 2);
    CHECK(star_commutator(b, f, g).is_zero());
    FormalFunction rest = star_commutator(m, f, g, 4) - fs_from(gp_poisson(f0, g0).scaled(I), 1);
    CHECK(rest.effective_valuation() >= 2);
  }
}

TEST_CASE("associativity and Hermiticity on random series") {
  MoyalFamily m(1);
  std::mt19937_64 rng(35);
  for (int i = 0; i < 12; ++i) {
    FormalFunction f = random_function(rng, 1, 2, true), g = random_function(rng, 1, 2, true),
                   h = random_function(rng, 1, 2, i % 2);
    FormalFunction lhs = star_mul(m, star_mul(m, f, g, 4), h, 4);
    FormalFunction rhs = star_mul(m, f, star_mul(m, g, h, 4), 4);
    CHECK(compare(lhs, rhs).equal);
    CHECK(compare(fs_conj(star_mul(m, f, g, 4)), star_mul(m, fs_conj(g), fs_conj(f), 4)).equal);
  }
}

TEST_CASE("two-pair Moyal product") {
  MoyalFamily m(2);
  FormalFunction q1 = sftest::coord(2, 0), q2 = sftest::coord(2, 1), p1 = sftest::coord(2, 2), p2 = sftest::coord(2, 3);
  CHECK(star_commutator(m, q1, p1) == fs_constant(2, I).shifted(1));
  CHECK(star_commutator(m, q2, p2) == fs_constant(2, I).shifted(1));
  CHECK(star_commutator(m, q1, p2).is_zero());
  CHECK(star_commutator(m, q1, q2).is_zero());
}

TEST_CASE("trace") {
  MoyalFamily m(1);
  CHECK(star_trace(m, fs_from(g1())) == PiSeries::monomial(PiRational::pi_power(1), -1));
  CHECK(star_trace(m, fs_from(q() * g1())).is_exact_zero());
  CHECK(star_trace(MoyalFamily(2), fs_from(GaussPoly::gaussian(2, 1))) == PiSeries::monomial(PiRational::pi_power(2), -2));
  std::mt19937_64 rng(36);
  for (int i = 0; i < 10; ++i) {
    FormalFunction f = random_function(rng, 1, 3, true), g = random_function(rng, 1, 3, true);
    PiSeries a = star_trace(m, star_mul(m, f, g, 4)), b = star_trace(m, star_mul(m, g, f, 4));
    CHECK(compare(a, b).equal);
  }
}

TEST_CASE("closedness") {
  MoyalFamily m1(1), m2(2);
  auto r = closedness_check(m1, mono(1, 0, 1, 1), mono(0, 1, 1, 1), 4);
  CHECK(r.closed);
  CHECK(r.integrals.size() == 5);
  CHECK(closedness_check(m1, g1(), g1(), 1).integrals[1].is_zero());
  CHECK_THROWS_AS(closedness_check(m1, mono(2, 0), mono(0, 2), 2), Error);
  for (const auto& [f, g] : sftest::closedness_corpus()) {
    auto rep = closedness_check(f.pairs() == 1 ? static_cast<const StarFamily&>(m1) : m2, f, g, 5);
    CHECK(rep.closed);
    CHECK(rep.integrals[0] == rep.pointwise);
    for (std::size_t k = 1; k < rep.integrals.size(); ++k) CHECK(rep.integrals[k].is_zero());
  }
}

TEST_CASE("axiom suite") {
  AxiomReport moyal = axiom_suite(MoyalFamily(1), 2, 3);
  CHECK(moyal.passed());
  REQUIRE(moyal.results.size() == 9);
  CHECK(moyal.results[1].verdict == Verdict::ByConstruction);
  CHECK(moyal.results[7].verdict == Verdict::ByConstruction);

  AxiomReport bullet = axiom_suite(BulletFamily(1), 2, 3);
  CHECK_FALSE(bullet.passed());
  for (const auto& r : bullet.results) {
    if (r.axiom == 6) {
      CHECK(r.verdict == Verdict::Fail);
      REQUIRE(r.counterexample);
      CHECK(r.counterexample->inputs == std::vector<std::string>{"q", "p"});
    } else {
      CHECK(r.verdict != Verdict::Fail);
    }
  }

  AxiomReport mutated = axiom_suite(DoubledFirstOrder(), 2, 3);
  bool caught = false;
  for (const auto& r : mutated.results)
    if ((r.axiom == 3 || r.axiom == 6) && r.verdict == Verdict::Fail) {
      caught = true;
      REQUIRE(r.counterexample);
      for (const auto& in : r.counterexample->inputs) CHECK(parse_function(in, ctx).coeffs().size() == 1);
    }
  CHECK(caught);
}

TEST_CASE("axiom suite with extra generators and two pairs") {
  std::mt19937_64 rng(37);
  std::vector<GaussPoly> extra{sftest::random_poly(rng, 2, 2), sftest::random_poly(rng, 2, 2)};
  CHECK(axiom_suite(MoyalFamily(2), 2, 2, extra).passed());
}
