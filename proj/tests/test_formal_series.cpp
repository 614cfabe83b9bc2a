#include <doctest.h>

#include "support.hpp"

using namespace starforge;
using sftest::random_function;

namespace {

const PhaseContext ctx(1);
GaussPoly q() { return GaussPoly::coordinate(1, 0); }
GaussPoly p() { return GaussPoly::coordinate(1, 1); }
GaussPoly g1() { return GaussPoly::gaussian(1, 1); }
FormalScalar lam(int k, ExactComplex c = 1) { return scalar_lambda_power(k, c); }

}  // namespace

TEST_CASE("linear combinations") {
  CHECK(fs_linear_comb(lam(1), fs_from(q(), -1), scalar_constant(1), fs_from(p())) == fs_from(q() + p()));
  CHECK(fs_linear_comb(scalar_constant(1) + lam(1), fs_from(q()), FormalScalar{}, FormalFunction{}) ==
        fs_from(q()) + fs_from(q(), 1));
  FormalFunction zero = fs_linear_comb(FormalScalar{}, fs_from(q(), 3), FormalScalar{}, fs_from(p(), -2));
  CHECK(zero.is_exact_zero());
  CHECK(zero.valuation() == 0);
}

TEST_CASE("mixed Gaussian rates share one power") {
  FormalFunction f = fs_from(q()) + fs_from(q() * g1());
  REQUIRE(f.coeffs().size() == 1);
  CHECK(f[0].parts().size() == 2);
  CHECK((f - fs_from(q())) == fs_from(q() * g1()));
}

TEST_CASE("bullet product") {
  CHECK(fs_bullet(fs_from(q(), -1), fs_from(p(), -1)) == fs_from(q() * p(), -2));
  FormalFunction a = fs_from(q()) + fs_from(p(), 1), b = fs_from(q()) - fs_from(p(), 1);
  CHECK(fs_bullet(a, b) == fs_from(q() * q()) - fs_from(p() * p(), 2));
  FormalFunction f = fs_from(q() * g1(), -1) + fs_from(p());
  CHECK(fs_bullet(fs_constant(1, 1), f) == f);
}

TEST_CASE("bullet algebra laws") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    FormalFunction f = random_function(rng, 1, 3, false), g = random_function(rng, 1, 3, false),
                   h = random_function(rng, 1, 3, false);
    FormalScalar c = sftest::random_scalar(rng), d = sftest::random_scalar(rng);
    CHECK(fs_bullet(f, g) == fs_bullet(g, f));
    CHECK(fs_bullet(fs_bullet(f, g), h) == fs_bullet(f, fs_bullet(g, h)));
    CHECK(fs_bullet(f, fs_linear_comb(c, g, d, h)) == fs_linear_comb(c, fs_bullet(f, g), d, fs_bullet(f, h)));
    if (!f.is_zero() && !g.is_zero()) CHECK(fs_bullet(f, g).valuation() == f.valuation() + g.valuation());
  }
}

TEST_CASE("derivatives") {
  CHECK(fs_diff(fs_from(q() * q()) + fs_from(q() * p(), 1), 0) == fs_from(q().scaled(2)) + fs_from(p(), 1));
  CHECK(fs_diff(fs_from(g1(), -1), 1) == fs_from(GaussPoly::monomial(1, {0, 1}, -2, 1), -1));
  FormalFunction x = fs_from(q());
  CHECK(fs_diff(fs_bullet(x, x), 0) == fs_bullet(fs_diff(x, 0), x) + fs_bullet(x, fs_diff(x, 0)));
  CHECK_THROWS_AS(fs_diff(x, 2), Error);
}

TEST_CASE("Leibniz rule on random series") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    FormalFunction f = random_function(rng, 2, 3, true), g = random_function(rng, 2, 3, i % 2);
    for (int v = 0; v < 4; ++v)
      CHECK(fs_diff(fs_bullet(f, g), v) == fs_bullet(fs_diff(f, v), g) + fs_bullet(f, fs_diff(g, v)));
  }
}

TEST_CASE("termwise integration") {
  PiSeries s = fs_integrate(fs_from(g1()) + fs_from(q() * q() * g1(), 1));
  CHECK(s == PiSeries::from_coeffs(0, {PiRational::pi_power(1), PiRational::pi_power(1, Rational(1, 2))}));
  CHECK(fs_integrate(fs_from(q() * g1(), -1)).is_exact_zero());
  try {
    fs_integrate(fs_from(g1()) + fs_from(q(), 2));
    FAIL("expected NotIntegrable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIntegrable);
    CHECK(std::string(e.what()).find("lambda^2") != std::string::npos);
  }
}

TEST_CASE("bullet trace symmetry") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    FormalFunction f = random_function(rng, 1, 3, true), g = random_function(rng, 1, 3, i % 2);
    CHECK(fs_integrate(fs_bullet(f, g)) == fs_integrate(fs_bullet(g, f)));
  }
}

TEST_CASE("truncation compatibility of the bullet product") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    FormalFunction f = random_function(rng, 1, 2, false) + fs_from(q(), 2) + fs_from(p(), 3);
    FormalFunction g = random_function(rng, 1, 2, true) + fs_from(p(), 2);
    for (int n = 0; n <= 4; ++n) {
      // Inputs known through n give the product through n + min valuation partner.
      FormalFunction lhs = fs_bullet(f.truncated(n), g.truncated(n));
      int through = n + std::min(f.valuation(), g.valuation());
      CHECK(lhs.truncated_at() == through);
      CHECK(compare(lhs, fs_bullet(f, g).truncated(through)).equal);
    }
  }
}

TEST_CASE("conjugation and reality") {
  const ExactComplex I = ExactComplex::imag_unit();
  FormalFunction f = fs_from(q() + p().scaled(I), -1);
  CHECK(fs_conj(f) == fs_from(q() - p().scaled(I), -1));
  CHECK_FALSE(fs_is_real(f));
  CHECK(fs_is_real(fs_bullet(fs_conj(f), f)));
}

TEST_CASE("rendering orders powers, rates and monomials") {
  FormalFunction f = fs_from(p(), 1) + fs_from(q() * g1()) + fs_from(q()) + fs_from(p());
  CHECK(render(f, ctx) == "q + p + q*gauss(1) + lam*p");
  CHECK(render(fs_from(q(), 0).truncated(2), ctx) == "q + O(lam^3)");
}
