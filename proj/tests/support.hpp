#pragma once

// Seeded generators shared by the property tests. Fixed seeds keep every run
// reproducible.

#include <random>

#include "starforge/functionals_states.hpp"

namespace sftest {

using namespace starforge;

inline ExactComplex random_complex(std::mt19937_64& rng, int span = 4) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 5);
  return ExactComplex(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

inline ExactComplex random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    ExactComplex c = random_complex(rng);
    if (!c.is_zero()) return c;
  }
}

/// Finite exact scalar with a nonzero leading coefficient.
inline FormalScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(-3, 3), len(1, 5);
  std::vector<ExactComplex> cs{random_nonzero(rng)};
  int n = len(rng);
  for (int i = 1; i < n; ++i) cs.push_back(random_complex(rng));
  return FormalScalar::from_coeffs(val(rng), cs);
}

inline GaussPoly random_poly(std::mt19937_64& rng, int pairs, int max_degree, Rational alpha = 0) {
  auto monos = monomials_up_to(pairs, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> count(1, 4);
  GaussPoly g(pairs, alpha);
  int k = count(rng);
  for (int i = 0; i < k; ++i) g.add_term(monos[pick(rng)], random_nonzero(rng));
  if (g.is_zero()) g.add_term(monos.front(), 1);
  return g.with_alpha(alpha);
}

/// Gaussian polynomial with rate drawn from {1/2, 1, 3/2}.
inline GaussPoly random_gauss(std::mt19937_64& rng, int pairs, int max_degree) {
  std::uniform_int_distribution<int> r(1, 3);
  return random_poly(rng, pairs, max_degree, Rational(r(rng), 2));
}

inline FormalFunction random_function(std::mt19937_64& rng, int pairs, int max_degree, bool gaussian) {
  std::uniform_int_distribution<int> val(-1, 1), len(1, 2);
  FormalFunction f;
  int v = val(rng), n = len(rng);
  for (int i = 0; i < n; ++i)
    f = f + fs_from(gaussian ? random_gauss(rng, pairs, max_degree) : random_poly(rng, pairs, max_degree), v + i);
  return f;
}

/// Fixed corpus of 20 integrable pairs: mixed rates, degrees 0..3, one and
/// two canonical pairs.
inline std::vector<std::pair<GaussPoly, GaussPoly>> closedness_corpus() {
  std::mt19937_64 rng(20);
  std::vector<std::pair<GaussPoly, GaussPoly>> out;
  for (int i = 0; i < 20; ++i) {
    int pairs = i < 14 ? 1 : 2;
    GaussPoly f = random_gauss(rng, pairs, 3);
    GaussPoly g = i % 4 == 3 ? random_poly(rng, pairs, 3) : random_gauss(rng, pairs, 3);
    out.emplace_back(f, g);
  }
  return out;
}

inline FormalFunction coord(int pairs, int index) { return fs_from(GaussPoly::coordinate(pairs, index)); }

}  // namespace sftest
