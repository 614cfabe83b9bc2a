#include "starforge/star_products.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace starforge {

StarFamily::StarFamily(int pairs) : pairs_(pairs) {
  if (pairs < 1) throw Error(ErrorCode::InvalidArgument, "a star family needs at least one canonical pair");
}

FormalFunction StarFamily::trace_density() const { return fs_constant(pairs_, 1); }

GaussPoly StarFamily::apply(int k, const GaussPoly& f, const GaussPoly& g) const {
  GaussPoly out(pairs_, f.alpha() + g.alpha());
  if (f.is_zero() || g.is_zero()) return GaussPoly(pairs_);
  std::map<Monomial, GaussPoly> df, dg;
  auto cached = [](std::map<Monomial, GaussPoly>& cache, const GaussPoly& h, const Monomial& m) -> const GaussPoly& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, gp_diff(h, m)).first;
    return it->second;
  };
  for (const auto& t : terms(k)) {
    const GaussPoly& a = cached(df, f, t.left);
    if (a.is_zero()) continue;
    const GaussPoly& b = cached(dg, g, t.right);
    if (b.is_zero()) continue;
    out += (a * b).scaled(t.coeff);
  }
  return out;
}

GaussSum StarFamily::apply(int k, const GaussSum& f, const GaussSum& g) const {
  GaussSum out = GaussSum::constant(pairs_, 0);
  for (const auto& [af, pf] : f.parts())
    for (const auto& [ag, pg] : g.parts()) out += apply(k, pf, pg);
  return out;
}

namespace {

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// All exponent vectors of length `slots` with entries summing to `total`.
void compositions(int slots, int total, std::vector<int>& cur, const std::function<void()>& emit) {
  if (static_cast<int>(cur.size()) == slots - 1) {
    cur.push_back(total);
    emit();
    cur.pop_back();
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur.push_back(v);
    compositions(slots, total - v, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<BidiffTerm> MoyalFamily::terms(int k) const {
  const int n = pairs();
  ExactComplex half_i(0, Rational(1, 2));
  ExactComplex scale = 1;
  for (int i = 0; i < k; ++i) scale *= half_i;

  std::vector<BidiffTerm> out;
  std::vector<int> ab;  // a_1..a_n, b_1..b_n
  compositions(2 * n, k, ab, [&] {
    Monomial left(2 * static_cast<std::size_t>(n)), right(2 * static_cast<std::size_t>(n));
    Rational denom = 1;
    int bsum = 0;
    for (int i = 0; i < n; ++i) {
      int a = ab[static_cast<std::size_t>(i)], b = ab[static_cast<std::size_t>(n + i)];
      left[static_cast<std::size_t>(i)] = a;
      left[static_cast<std::size_t>(n + i)] = b;
      right[static_cast<std::size_t>(i)] = b;
      right[static_cast<std::size_t>(n + i)] = a;
      denom *= factorial(a) * factorial(b);
      bsum += b;
    }
    Rational c = 1 / denom;
    if (bsum % 2) c = -c;
    out.push_back({scale * ExactComplex(c), std::move(left), std::move(right)});
  });
  return out;
}

std::optional<int> MoyalFamily::termination_bound(std::optional<int> deg_f, std::optional<int> deg_g) const {
  if (deg_f && deg_g) return std::max(0, std::min(*deg_f, *deg_g));
  if (deg_f) return std::max(0, *deg_f);
  if (deg_g) return std::max(0, *deg_g);
  return std::nullopt;
}

std::vector<BidiffTerm> BulletFamily::terms(int k) const {
  if (k != 0) return {};
  Monomial zero(2 * static_cast<std::size_t>(pairs()), 0);
  return {{ExactComplex(1), zero, zero}};
}

std::unique_ptr<StarFamily> make_family(const std::string& name, int pairs) {
  if (name == "moyal") return std::make_unique<MoyalFamily>(pairs);
  if (name == "bullet") return std::make_unique<BulletFamily>(pairs);
  throw Error(ErrorCode::InvalidArgument, "unknown product '" + name + "' (expected moyal or bullet)");
}

GaussSum moyal_term(int k, const GaussPoly& f, const GaussPoly& g) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "B_k needs k >= 0");
  MoyalFamily m(std::max({f.pairs(), g.pairs(), 1}));
  return GaussSum(m.apply(k, f, g));
}

FormalFunction star_mul(const StarFamily& s, const FormalFunction& f, const FormalFunction& g,
                        std::optional<int> order) {
  if (f.is_exact_zero() || g.is_exact_zero()) return {};
  std::optional<int> cap;
  if (f.truncated_at()) cap = *f.truncated_at() + g.effective_valuation();
  if (g.truncated_at()) {
    int t = *g.truncated_at() + f.effective_valuation();
    cap = cap ? std::min(*cap, t) : t;
  }

  const auto& fc = f.coeffs();
  const auto& gc = g.coeffs();
  std::vector<std::vector<std::optional<int>>> bound(fc.size(), std::vector<std::optional<int>>(gc.size()));
  bool unbounded = false;
  for (std::size_t i = 0; i < fc.size(); ++i)
    for (std::size_t j = 0; j < gc.size(); ++j) {
      bound[i][j] = s.termination_bound(fc[i].polynomial_degree(), gc[j].polynomial_degree());
      if (!bound[i][j]) unbounded = true;
    }
  if (unbounded) {
    if (order) cap = cap ? std::min(*cap, *order) : *order;
    else if (!cap)
      throw Error(ErrorCode::OrderRequired,
                  "the " + s.name() + " expansion of these factors does not terminate; pass an order");
  }

  std::map<int, GaussSum> acc;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i].is_zero()) continue;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      if (gc[j].is_zero()) continue;
      const int base = f.valuation() + g.valuation() + static_cast<int>(i + j);
      if (cap && base > *cap) continue;
      int kmax = bound[i][j] ? *bound[i][j] : *cap - base;
      if (cap) kmax = std::min(kmax, *cap - base);
      for (int k = 0; k <= kmax; ++k) {
        GaussSum term = s.apply(k, fc[i], gc[j]);
        if (!term.is_zero()) acc[base + k] += term;
      }
    }
  }
  if (acc.empty()) return cap ? FormalFunction::truncated_zero(*cap) : FormalFunction{};
  const int lo = acc.begin()->first;
  const int hi = acc.rbegin()->first;
  std::vector<GaussSum> out(static_cast<std::size_t>(hi - lo + 1));
  for (auto& [p, c] : acc) out[static_cast<std::size_t>(p - lo)] = std::move(c);
  return FormalFunction::from_coeffs(lo, std::move(out), cap);
}

FormalFunction star_commutator(const StarFamily& s, const FormalFunction& f, const FormalFunction& g,
                               std::optional<int> order) {
  return star_mul(s, f, g, order) - star_mul(s, g, f, order);
}

PiSeries star_trace(const StarFamily& s, const FormalFunction& f) {
  return fs_integrate(fs_bullet(f, s.trace_density())).shifted(-s.pairs());
}

ClosednessReport closedness_check(const StarFamily& s, const GaussPoly& f, const GaussPoly& g, int maxk) {
  if (sgn(f.alpha() + g.alpha()) <= 0)
    throw Error(ErrorCode::NotIntegrable, "closedness needs a Gaussian factor in f or g");
  ClosednessReport r;
  r.pointwise = gp_integrate(f * g);
  for (int k = 0; k <= maxk; ++k) r.integrals.push_back(GaussSum(s.apply(k, f, g)).integrate());
  r.closed = !r.integrals.empty() && r.integrals[0] == r.pointwise &&
             std::all_of(r.integrals.begin() + 1, r.integrals.end(), [](const PiRational& v) { return v.is_zero(); });
  return r;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ByConstruction: return "by_construction";
  }
  return "?";
}

bool AxiomReport::passed() const {
  return std::none_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.verdict == Verdict::Fail; });
}

namespace {

class AxiomRunner {
 public:
  AxiomRunner(const StarFamily& s, int order_bound, std::vector<GaussPoly> gens)
      : s_(s), ctx_(s.pairs()), kmax_(order_bound), gens_(std::move(gens)) {
    for (const auto& g : gens_) sums_.emplace_back(g);
  }

  GaussSum b(int k, const GaussSum& f, const GaussSum& g) const { return s_.apply(k, f, g); }

  std::string show(const GaussSum& f) const { return render(FormalFunction::monomial(f, 0), ctx_); }

  // Records a failure; returns false so the caller can stop scanning.
  bool check(AxiomResult& r, const GaussSum& lhs, const GaussSum& rhs, int k,
             std::initializer_list<GaussSum> inputs) const {
    ++r.checks;
    if (lhs == rhs) return true;
    r.verdict = Verdict::Fail;
    AxiomCounterexample cx;
    for (const auto& in : inputs) cx.inputs.push_back(show(in));
    cx.order = k;
    cx.lhs = show(lhs);
    cx.rhs = show(rhs);
    r.counterexample = std::move(cx);
    return false;
  }

  AxiomResult bilinearity() const {
    AxiomResult r{1, "bilinearity", Verdict::Pass, 0, std::nullopt};
    const ExactComplex c1 = 2, c2(Rational(1, 3), -1);
    const std::size_t n = sums_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const GaussSum& f1 = sums_[i];
      const GaussSum& f2 = sums_[(i + 1) % n];
      GaussSum mix = f1.scaled(c1) + f2.scaled(c2);
      for (const auto& g : sums_)
        for (int k = 0; k <= kmax_; ++k) {
          if (!check(r, b(k, mix, g), b(k, f1, g).scaled(c1) + b(k, f2, g).scaled(c2), k, {mix, g})) return r;
          if (!check(r, b(k, g, mix), b(k, g, f1).scaled(c1) + b(k, g, f2).scaled(c2), k, {g, mix})) return r;
        }
    }
    return r;
  }

  AxiomResult associativity() const {
    AxiomResult r{3, "associativity", Verdict::Pass, 0, std::nullopt};
    const std::size_t n = sums_.size();
    // pair[i][j][k] = B_k(g_i, g_j)
    std::vector<std::vector<std::vector<GaussSum>>> pair(n, std::vector<std::vector<GaussSum>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (int k = 0; k <= kmax_; ++k) pair[i][j].push_back(b(k, sums_[i], sums_[j]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t h = 0; h < n; ++h)
          for (int k = 0; k <= kmax_; ++k) {
            GaussSum lhs, rhs;
            for (int l = 0; l <= k; ++l) {
              lhs += b(l, pair[i][j][static_cast<std::size_t>(k - l)], sums_[h]);
              rhs += b(l, sums_[i], pair[j][h][static_cast<std::size_t>(k - l)]);
            }
            if (!check(r, lhs, rhs, k, {sums_[i], sums_[j], sums_[h]})) return r;
          }
    return r;
  }

  AxiomResult pointwise_leading() const {
    AxiomResult r{4, "B_0 is the pointwise product", Verdict::Pass, 0, std::nullopt};
    for (const auto& f : sums_)
      for (const auto& g : sums_)
        if (!check(r, b(0, f, g), f * g, 0, {f, g})) return r;
    return r;
  }

  AxiomResult identity() const {
    AxiomResult r{5, "1 is the identity", Verdict::Pass, 0, std::nullopt};
    const GaussSum one = GaussSum::constant(s_.pairs(), 1);
    for (const auto& f : sums_)
      for (int k = 0; k <= kmax_; ++k) {
        GaussSum expect = k == 0 ? f : GaussSum::constant(s_.pairs(), 0);
        if (!check(r, b(k, one, f), expect, k, {one, f})) return r;
        if (!check(r, b(k, f, one), expect, k, {f, one})) return r;
      }
    return r;
  }

  AxiomResult commutator() const {
    AxiomResult r{6, "B_1(f,g) - B_1(g,f) = i{f,g}", Verdict::Pass, 0, std::nullopt};
    const ExactComplex i = ExactComplex::imag_unit();
    for (std::size_t a = 0; a < gens_.size(); ++a)
      for (std::size_t c = 0; c < gens_.size(); ++c) {
        const GaussSum &f = sums_[a], &g = sums_[c];
        if (!check(r, b(1, f, g) - b(1, g, f), GaussSum(gp_poisson(gens_[a], gens_[c])).scaled(i), 1, {f, g}))
          return r;
      }
    return r;
  }

  AxiomResult hermiticity() const {
    AxiomResult r{7, "conj B_k(f,g) = B_k(conj g, conj f)", Verdict::Pass, 0, std::nullopt};
    const ExactComplex i = ExactComplex::imag_unit();
    const std::size_t n = sums_.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        GaussSum f = sums_[a] + sums_[(a + 1) % n].scaled(i);
        GaussSum g = sums_[c] - sums_[(c + 2) % n].scaled(ExactComplex(0, 2));
        for (int k = 0; k <= kmax_; ++k)
          if (!check(r, b(k, f, g).conj(), b(k, g.conj(), f.conj()), k, {f, g})) return r;
      }
    return r;
  }

  // B_k((x - x0)^beta, g)(x0) = 0 whenever |beta| > k, in either slot.
  AxiomResult naturality(int degree_bound) const {
    AxiomResult r{9, "B_k has order <= k in each argument", Verdict::Pass, 0, std::nullopt};
    const int n = s_.pairs();
    std::vector<std::vector<Rational>> points;
    points.emplace_back(2 * static_cast<std::size_t>(n), Rational(0));
    std::vector<Rational> shifted;
    for (int v = 0; v < 2 * n; ++v) shifted.push_back(v % 2 ? Rational(-1, 2) : Rational(1));
    points.push_back(shifted);

    for (const auto& x0 : points) {
      for (const auto& beta : monomials_up_to(n, degree_bound)) {
        GaussPoly f = GaussPoly::constant(n, 1);
        for (int v = 0; v < 2 * n; ++v) {
          GaussPoly factor = GaussPoly::coordinate(n, v) - GaussPoly::constant(n, x0[static_cast<std::size_t>(v)]);
          for (int e = 0; e < beta[static_cast<std::size_t>(v)]; ++e) f = f * factor;
        }
        const GaussSum fs(f);
        for (int k = 0; k < std::min(kmax_ + 1, total_degree(beta)); ++k) {
          for (const auto& g : sums_) {
            for (bool left : {true, false}) {
              GaussSum val = left ? b(k, fs, g) : b(k, g, fs);
              ++r.checks;
              if (val.eval(x0).is_zero()) continue;
              r.verdict = Verdict::Fail;
              AxiomCounterexample cx;
              cx.inputs = left ? std::vector<std::string>{show(fs), show(g)} : std::vector<std::string>{show(g), show(fs)};
              cx.order = k;
              std::string at;
              for (const auto& x : x0) at += (at.empty() ? "" : ",") + to_string(x);
              cx.lhs = "B_" + std::to_string(k) + "(...)(" + at + ")";
              cx.rhs = val.eval(x0).str();
              r.counterexample = std::move(cx);
              return r;
            }
          }
        }
      }
    }
    return r;
  }

 private:
  const StarFamily& s_;
  PhaseContext ctx_;
  int kmax_;
  std::vector<GaussPoly> gens_;
  std::vector<GaussSum> sums_;
};

}  // namespace

AxiomReport axiom_suite(const StarFamily& s, int degree_bound, int order_bound,
                        const std::vector<GaussPoly>& extra_generators) {
  if (degree_bound < 1 || order_bound < 1)
    throw Error(ErrorCode::InvalidArgument, "axiom suite needs degree and order bounds >= 1");
  std::vector<GaussPoly> gens;
  for (const auto& m : monomials_up_to(s.pairs(), degree_bound)) gens.push_back(GaussPoly::monomial(s.pairs(), m));
  for (const auto& g : extra_generators) gens.push_back(g);

  AxiomReport rep;
  rep.family = s.name();
  rep.pairs = s.pairs();
  rep.degree_bound = degree_bound;
  rep.order_bound = order_bound;
  rep.generator_count = gens.size();

  AxiomRunner run(s, order_bound, gens);
  rep.results.push_back(run.bilinearity());
  rep.results.push_back({2, "locality", Verdict::ByConstruction, 0, std::nullopt});
  rep.results.push_back(run.associativity());
  rep.results.push_back(run.pointwise_leading());
  rep.results.push_back(run.identity());
  rep.results.push_back(run.commutator());
  rep.results.push_back(run.hermiticity());
  rep.results.push_back({8, "bidifferential", Verdict::ByConstruction, 0, std::nullopt});
  rep.results.push_back(run.naturality(degree_bound));
  return rep;
}

}  // namespace starforge
