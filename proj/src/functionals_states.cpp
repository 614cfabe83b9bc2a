#include "starforge/functionals_states.hpp"

#include <algorithm>
#include <map>

namespace starforge {

namespace {

int compare_points(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

const PiRational::Key& weight_key(const PiRational& w) { return w.terms().begin()->first; }

// Canonical order: point terms by (point, multi-index), then densities by
// (dilation, weight key, rate).
bool term_less(const FunctionalTerm& x, const FunctionalTerm& y) {
  if (x.index() != y.index()) return x.index() < y.index();
  if (const auto* a = std::get_if<PointDeriv>(&x)) {
    const auto& b = std::get<PointDeriv>(y);
    if (int c = compare_points(a->point, b.point)) return c < 0;
    return a->multi_index < b.multi_index;
  }
  const auto& a = std::get<Density>(x);
  const auto& b = std::get<Density>(y);
  if (a.dilated != b.dilated) return !a.dilated;
  if (!(weight_key(a.weight) == weight_key(b.weight))) return weight_key(a.weight) < weight_key(b.weight);
  return a.g.alpha() < b.g.alpha();
}

bool same_slot(const FunctionalTerm& x, const FunctionalTerm& y) { return !term_less(x, y) && !term_less(y, x); }

int degree_sign(const Monomial& m) { return total_degree(m) % 2 ? -1 : 1; }

}  // namespace

// ---------------------------------------------------------------- FunctionalSum

FunctionalSum::FunctionalSum(FunctionalTerm t) { add(t); }

void FunctionalSum::add(const FunctionalTerm& t) {
  std::vector<FunctionalTerm> pieces;
  if (const auto* pd = std::get_if<PointDeriv>(&t)) {
    if (pd->weight.is_zero()) return;
    pieces.push_back(*pd);
  } else {
    const auto& d = std::get<Density>(t);
    if (d.g.is_zero()) return;
    for (const auto& [key, c] : d.weight.terms()) {
      Density piece{d.g.scaled(c), PiRational::term(key, 1), d.dilated};
      if (!piece.g.is_zero()) pieces.push_back(std::move(piece));
    }
  }
  for (auto& piece : pieces) {
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const FunctionalTerm& x) { return same_slot(x, piece); });
    if (it == terms_.end()) {
      terms_.insert(std::upper_bound(terms_.begin(), terms_.end(), piece, term_less), std::move(piece));
      continue;
    }
    bool vanished;
    if (auto* pd = std::get_if<PointDeriv>(&*it)) {
      pd->weight += std::get<PointDeriv>(piece).weight;
      vanished = pd->weight.is_zero();
    } else {
      auto& d = std::get<Density>(*it);
      d.g += std::get<Density>(piece).g;
      vanished = d.g.is_zero();
    }
    if (vanished) terms_.erase(it);
  }
}

bool FunctionalSum::has_dilated() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const FunctionalTerm& t) {
    const auto* d = std::get_if<Density>(&t);
    return d && d->dilated;
  });
}

bool FunctionalSum::only_densities() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const FunctionalTerm& t) { return std::holds_alternative<Density>(t); });
}

bool FunctionalSum::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const FunctionalTerm& t) {
    if (const auto* pd = std::get_if<PointDeriv>(&t)) return pd->weight.is_real();
    const auto& d = std::get<Density>(t);
    return d.g.is_real() && d.weight.is_real();
  });
}

FunctionalSum& FunctionalSum::operator+=(const FunctionalSum& o) {
  for (const auto& t : o.terms_) add(t);
  return *this;
}

FunctionalSum FunctionalSum::scaled(const PiRational& c) const {
  FunctionalSum out;
  if (c.is_zero()) return out;
  for (const auto& t : terms_) {
    if (const auto* pd = std::get_if<PointDeriv>(&t)) {
      PointDeriv s = *pd;
      s.weight *= c;
      out.add(s);
    } else {
      Density s = std::get<Density>(t);
      s.weight *= c;
      out.add(s);
    }
  }
  return out;
}

PiRational FunctionalSum::act(const GaussSum& phi) const {
  PiRational sum;
  for (const auto& t : terms_) {
    if (const auto* pd = std::get_if<PointDeriv>(&t)) {
      PiRational v = phi.diff(pd->multi_index).eval(pd->point) * pd->weight;
      sum += degree_sign(pd->multi_index) < 0 ? -v : v;
      continue;
    }
    const auto& d = std::get<Density>(t);
    if (d.dilated)
      throw Error(ErrorCode::FormalMode,
                  "a lambda-dilated density has no formal-series action; bind lambda to a value");
    if (phi.is_zero()) continue;
    sum += (GaussSum(d.g) * phi).integrate() * d.weight;
  }
  return sum;
}

// ---------------------------------------------------------------- constructors

FormalFunctional functional_from_generator(const std::function<FunctionalSum(int)>& coeff,
                                           std::optional<int> lowest, int highest,
                                           std::optional<int> truncated_at) {
  if (!lowest)
    throw Error(ErrorCode::InfinitePrincipalPart,
                "a functional series with infinitely many negative powers does not act on formal series");
  std::vector<FunctionalSum> cs;
  for (int l = *lowest; l <= highest; ++l) cs.push_back(coeff(l));
  return FormalFunctional::from_coeffs(*lowest, std::move(cs), truncated_at);
}

FormalFunctional delta(const std::vector<Rational>& point, int lambda_power) {
  return point_deriv(point, Monomial(point.size(), 0), 1, lambda_power);
}

FormalFunctional point_deriv(const std::vector<Rational>& point, const Monomial& multi_index,
                             const PiRational& weight, int lambda_power) {
  if (point.empty() || point.size() % 2 || multi_index.size() != point.size())
    throw Error(ErrorCode::DimensionMismatch, "point and multi-index need 2n entries");
  return FormalFunctional::monomial(FunctionalSum(PointDeriv{point, multi_index, weight}), lambda_power);
}

FormalFunctional density(const GaussPoly& g, const PiRational& weight, int lambda_power) {
  return FormalFunctional::monomial(FunctionalSum(Density{g, weight, false}), lambda_power);
}

FormalFunctional dilated_density(const GaussPoly& g, const PiRational& weight) {
  for (const auto& [m, c] : g.terms())
    if (total_degree(m) % 2)
      throw Error(ErrorCode::InvalidArgument, "a dilated density may only contain even-degree monomials");
  return FormalFunctional::monomial(FunctionalSum(Density{g, weight, true}), 0);
}

FormalFunctional func_scale(const PiSeries& c, const FormalFunctional& t) {
  return cauchy(c, t, [](const PiRational& x, const FunctionalSum& y) { return y.scaled(x); });
}

FormalFunctional func_scale(const FormalScalar& c, const FormalFunctional& t) {
  return func_scale(to_pi_series(c), t);
}

int func_pairs(const FormalFunctional& t) {
  int n = 0;
  for (const auto& c : t.coeffs())
    for (const auto& term : c.terms()) {
      if (const auto* pd = std::get_if<PointDeriv>(&term)) n = std::max(n, static_cast<int>(pd->point.size() / 2));
      else n = std::max(n, std::get<Density>(term).g.pairs());
    }
  return n;
}

FormalFunctional resolve(const FormalFunctional& t, const LambdaBinding& binding) {
  bool dilated = std::any_of(t.coeffs().begin(), t.coeffs().end(), [](const FunctionalSum& c) { return c.has_dilated(); });
  if (!dilated) return t;
  if (!binding.is_strict())
    throw Error(ErrorCode::FormalMode,
                "a density of width sqrt(lambda) expands with arbitrarily negative powers of lambda; "
                "it is a functional only at a bound lambda");
  const Rational& lam = binding.value();
  return t.map([&](const FunctionalSum& c) {
    FunctionalSum out;
    for (const auto& term : c.terms()) {
      const auto* d = std::get_if<Density>(&term);
      if (!d || !d->dilated) {
        out += FunctionalSum(term);
        continue;
      }
      const int n = d->g.pairs();
      GaussPoly g(n, d->g.alpha() / lam);
      for (const auto& [m, coeff] : d->g.terms()) {
        Rational s = 1;
        for (int j = 0; j < total_degree(m) / 2 + n; ++j) s /= lam;
        g.add_term(m, coeff * ExactComplex(s));
      }
      out += FunctionalSum(Density{g, d->weight, false});
    }
    return out;
  });
}

// ---------------------------------------------------------------- actions

PiSeries func_action(const FormalFunctional& t, const FormalFunction& f) {
  return cauchy(t, f, [](const FunctionalSum& x, const GaussSum& phi) { return x.act(phi); });
}

namespace {

FormalFunction fs_diff_multi(FormalFunction f, const Monomial& m) {
  for (std::size_t v = 0; v < m.size(); ++v)
    for (int e = 0; e < m[v]; ++e) f = fs_diff(f, static_cast<int>(v));
  return f;
}

// H with  integral of B_m(psi, phi) t = integral of psi h_m(phi)  for every psi:
// h_m(phi) = sum c (-1)^|L| d^L(d^R phi . t). Returns sum lambda^m h_m(F).
FormalFunction adjoint_expansion(const StarFamily& s, const FormalFunction& f, std::optional<int> order) {
  const FormalFunction t = s.trace_density();
  std::optional<int> cap;
  if (f.truncated_at()) cap = *f.truncated_at() + t.effective_valuation();
  bool unbounded = false;
  for (const auto& c : f.coeffs())
    if (!c.is_zero() && !s.termination_bound(std::nullopt, c.polynomial_degree())) unbounded = true;
  if (unbounded) {
    if (order) cap = cap ? std::min(*cap, *order) : *order;
    else if (!cap)
      throw Error(ErrorCode::OrderRequired, "the " + s.name() + " expansion does not terminate; pass an order");
  }
  FormalFunction out;
  for (int k = f.valuation(); k <= f.top_power(); ++k) {
    const GaussSum phi = f[k];
    if (phi.is_zero()) continue;
    std::optional<int> bound = s.termination_bound(std::nullopt, phi.polynomial_degree());
    int mmax = bound ? *bound : *cap - k;
    if (cap) mmax = std::min(mmax, *cap - k);
    for (int m = 0; m <= mmax; ++m) {
      for (const auto& term : s.terms(m)) {
        FormalFunction x = fs_bullet(FormalFunction::monomial(phi.diff(term.right), k + m), t);
        x = fs_diff_multi(x, term.left);
        ExactComplex c = degree_sign(term.left) < 0 ? -term.coeff : term.coeff;
        out = out + fs_scale(scalar_constant(c), x);
      }
    }
  }
  if (cap) out = out.truncated(*cap);
  return out;
}

FormalFunctional split(const FormalFunctional& t, bool densities) {
  return t.map([densities](const FunctionalSum& c) {
    FunctionalSum out;
    for (const auto& term : c.terms())
      if (std::holds_alternative<Density>(term) == densities) out += FunctionalSum(term);
    return out;
  });
}

PiSeries explicit_star_action(const StarFamily& s, const FormalFunctional& t, const FormalFunction& f,
                              std::optional<int> order) {
  const int n = s.pairs();
  const FormalFunction trace = s.trace_density();
  PiSeries total;
  if (!t.is_exact()) total = PiSeries::truncated_zero(*t.truncated_at() + f.effective_valuation() - n);

  for (int l = t.valuation(); l <= t.top_power(); ++l) {
    const FunctionalSum tl = t[l];
    for (const auto& term : tl.terms()) {
      const auto* d = std::get_if<Density>(&term);
      if (!d) continue;
      if (d->dilated)
        throw Error(ErrorCode::FormalMode,
                    "a lambda-dilated density has no formal-series action; bind lambda to a value");
      FormalFunction prod = star_mul(s, fs_from(d->g), f, order);
      PiSeries v = fs_integrate(fs_bullet(prod, trace));
      const PiRational w = d->weight;
      total = total + v.map([&w](const PiRational& x) { return x * w; }).shifted(l - n);
    }
  }
  FormalFunctional points = split(t, false);
  if (!points.is_zero()) total = total + func_action(points, adjoint_expansion(s, f, order)).shifted(-n);
  return total;
}

}  // namespace

PiSeries func_star_action(const StarFamily& s, const FormalFunctional& t, const FormalFunction& f,
                          std::optional<int> order, StarRoute route) {
  if (route == StarRoute::Automatic) route = s.reduces_star_action() ? StarRoute::Reduction : StarRoute::Explicit;
  if (route == StarRoute::Reduction) {
    if (!s.reduces_star_action())
      throw Error(ErrorCode::InvalidArgument, "the " + s.name() + " family does not reduce to the plain action");
    return func_action(t, f).shifted(-s.pairs());
  }
  return explicit_star_action(s, t, f, order);
}

// ---------------------------------------------------------------- reality

RealityReport reality_check(const FormalFunctional& t, const std::vector<FormalFunction>& witnesses) {
  RealityReport r;
  r.structural = std::all_of(t.coeffs().begin(), t.coeffs().end(), [](const FunctionalSum& c) { return c.is_real(); });
  r.witnessed = true;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (!fs_is_real(witnesses[i]))
      throw Error(ErrorCode::InvalidArgument, "reality witnesses must be real functions");
    PiSeries v = func_action(t, witnesses[i]);
    bool real = std::all_of(v.coeffs().begin(), v.coeffs().end(), [](const PiRational& c) { return c.is_real(); });
    if (!real) {
      r.witnessed = false;
      r.failing_witness = i;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------- positivity

std::vector<Rational> default_lambda_samples() { return {Rational(1, 10), Rational(1, 2), Rational(1), Rational(2)}; }

namespace {

bool series_is_real(const PiSeries& s) {
  return std::all_of(s.coeffs().begin(), s.coeffs().end(), [](const PiRational& c) { return c.is_real(); });
}

void sample_series(PositivityReport& rep, std::size_t index, const PiSeries& value) {
  WitnessReport w;
  w.witness = index;
  w.series = value;
  w.real = series_is_real(value);
  if (!w.real) {
    rep.nonreal = true;
    rep.witnesses.push_back(std::move(w));
    return;
  }
  for (const auto& lam : rep.lambda_samples) {
    SampleVerdict sv;
    sv.lambda = lam;
    sv.value_exact = value.is_exact();
    if (value.is_zero()) {
      sv.stable_from = value.valuation();
      w.samples.push_back(sv);
      continue;
    }
    const int lo = value.valuation(), hi = value.top_power();
    std::optional<int> stable;
    PiRational last;
    for (int m = hi; m >= lo; --m) {
      PiRational partial = pi_partial_sum(value, lam, m);
      if (m == hi) last = partial;
      if (partial.sign() < 0) break;
      stable = m;
    }
    sv.stable_from = stable;
    sv.value = last;
    if (!stable && !rep.negative) rep.negative = NegativityWitness{index, lam, hi, last};
    w.samples.push_back(sv);
  }
  rep.witnesses.push_back(std::move(w));
}

}  // namespace

PositivityReport positivity_check(const StarFamily& s, const FormalFunctional& t,
                                  const std::vector<FormalFunction>& witnesses,
                                  const std::vector<Rational>& lambda_samples, std::optional<int> order) {
  if (lambda_samples.empty()) throw Error(ErrorCode::InvalidArgument, "positivity needs at least one lambda sample");
  for (const auto& l : lambda_samples)
    if (sgn(l) <= 0) throw Error(ErrorCode::InvalidArgument, "lambda samples must be positive");
  PositivityReport rep;
  rep.family = s.name();
  rep.lambda_samples = lambda_samples;
  rep.order = order;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    FormalFunction sq = star_mul(s, fs_conj(witnesses[i]), witnesses[i], order);
    sample_series(rep, i, func_star_action(s, t, sq, order));
  }
  return rep;
}

PositivityReport classical_positivity(const FormalFunctional& t, const std::vector<GaussSum>& witnesses,
                                      const std::vector<Rational>& lambda_samples) {
  PositivityReport rep;
  rep.family = "classical";
  rep.lambda_samples = lambda_samples;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    FormalFunction sq = FormalFunction::monomial(witnesses[i].conj() * witnesses[i], 0);
    sample_series(rep, i, func_action(t, sq));
  }
  return rep;
}

bool per_power_nonnegative(const PiSeries& s) {
  return std::all_of(s.coeffs().begin(), s.coeffs().end(),
                     [](const PiRational& c) { return c.is_real() && c.sign() >= 0; });
}

// ---------------------------------------------------------------- normalization

namespace {

Normalization normalize_with(const PiSeries& pairing, const FormalFunctional& t, int order,
                             const std::function<PiSeries(const FormalFunctional&)>& pair) {
  if (pairing.is_zero())
    throw Error(ErrorCode::NotNormalizable, "<T, 1> vanishes through the represented powers");
  const PiRational& lead = pairing.coeffs().front();
  if (!lead.is_unit())
    throw Error(ErrorCode::NotNormalizable,
                "leading coefficient " + lead.str() + " of <T, 1> is not invertible in the exact value domain");
  // Terms of T below the valuation of <T, 1> pair to zero yet still cost depth
  // in A T; deepen the inverse until the check is known through `order`.
  Normalization out;
  int depth = order;
  std::optional<int> reached;
  for (;;) {
    out.factor = pi_invert(pairing, depth);
    out.normalized = func_scale(out.factor, t);
    out.check = pair(out.normalized);
    std::optional<int> now = out.check.truncated_at();
    if (!now || *now >= order || (reached && *now <= *reached)) break;
    reached = now;
    depth += order - *now;
  }
  return out;
}

}  // namespace

Normalization normalize_functional(const StarFamily& s, const FormalFunctional& t, int order) {
  const FormalFunction one = fs_constant(s.pairs(), 1);
  auto pair = [&](const FormalFunctional& x) { return func_star_action(s, x, one, order); };
  return normalize_with(pair(t), t, order, pair);
}

Normalization normalize_functional_plain(const FormalFunctional& t, int order) {
  const FormalFunction one = fs_constant(std::max(func_pairs(t), 1), 1);
  auto pair = [&](const FormalFunctional& x) { return func_action(x, one); };
  return normalize_with(pair(t), t, order, pair);
}

// ---------------------------------------------------------------- functional products

const char* side_name(ProductSide side) {
  switch (side) {
    case ProductSide::Left: return "left";
    case ProductSide::Right: return "right";
    case ProductSide::Bullet: return "bullet";
  }
  return "?";
}

FunctionalProduct::FunctionalProduct(const StarFamily& s, ProductSide side, FormalFunction xi, FormalFunctional t,
                                     std::optional<int> order)
    : s_(s), side_(side), xi_(std::move(xi)), t_(std::move(t)), order_(order) {}

PiSeries FunctionalProduct::act(const FormalFunction& phi) const {
  switch (side_) {
    case ProductSide::Left: return func_star_action(s_, t_, star_mul(s_, phi, xi_, order_), order_);
    case ProductSide::Right: return func_star_action(s_, t_, star_mul(s_, xi_, phi, order_), order_);
    case ProductSide::Bullet: return func_action(t_, fs_bullet(phi, xi_));
  }
  return {};
}

FormalFunctional FunctionalProduct::materialize() const {
  if (side_ != ProductSide::Bullet && !s_.reduces_star_action())
    throw Error(ErrorCode::NotSupportedForm, "explicit form needs a closed family with unit trace density");
  FormalFunctional out;
  if (!t_.is_exact()) out = FormalFunctional::truncated_zero(*t_.truncated_at() + xi_.effective_valuation());
  for (int l = t_.valuation(); l <= t_.top_power(); ++l) {
    const FunctionalSum tl = t_[l];
    for (const auto& term : tl.terms()) {
      const auto* d = std::get_if<Density>(&term);
      if (!d || d->dilated)
        throw Error(ErrorCode::NotSupportedForm, "explicit form exists only for plain density functionals");
      const FormalFunction psi = fs_from(d->g);
      FormalFunction prod = side_ == ProductSide::Left    ? star_mul(s_, xi_, psi, order_)
                            : side_ == ProductSide::Right ? star_mul(s_, psi, xi_, order_)
                                                          : fs_bullet(xi_, psi);
      const PiRational w = d->weight;
      FormalFunctional piece = prod.map([&w](const GaussSum& c) {
        FunctionalSum fsum;
        for (const auto& [alpha, g] : c.parts()) fsum += FunctionalSum(Density{g, w, false});
        return fsum;
      });
      out = out + piece.shifted(l);
    }
  }
  return out;
}

// ---------------------------------------------------------------- eigenvalue checks

namespace {

void record(EigenReport& rep, EigenResidual r, bool commutation) {
  auto& list = commutation ? rep.commutation : rep.residuals;
  auto& first = commutation ? rep.first_commutation_failure : rep.first_failure;
  if (!r.zero && !first) {
    first = list.size();
    if (!commutation && !r.action.is_zero()) rep.failure_power = r.action.valuation();
  }
  list.push_back(std::move(r));
}

std::string monomial_text(const Monomial& m, const PhaseContext& ctx) {
  return render(GaussPoly::monomial(ctx.pairs(), m), ctx);
}

FormalFunction minus_scalar(const FormalFunction& xi, const FormalScalar& a, int pairs) {
  return xi - fs_scale(a, fs_constant(pairs, 1));
}

}  // namespace

EigenReport eigencheck_classical(const GaussPoly& phi, const ExactComplex& a, const std::vector<Rational>& point,
                                 int test_degree) {
  if (point.size() % 2 || point.empty()) throw Error(ErrorCode::DimensionMismatch, "point needs 2n coordinates");
  const int n = static_cast<int>(point.size() / 2);
  PhaseContext ctx(n);
  EigenReport rep;
  rep.mode = "classical";
  const GaussSum shifted = GaussSum(phi) - GaussSum::constant(n, a);
  for (const auto& m : monomials_up_to(n, test_degree)) {
    PiRational v = (shifted * GaussSum(GaussPoly::monomial(n, m))).eval(point);
    EigenResidual r{monomial_text(m, ctx), PiSeries::monomial(v, 0), v, v.is_zero()};
    record(rep, std::move(r), false);
  }
  return rep;
}

EigenReport eigencheck_bullet(const FormalFunction& xi, const FormalScalar& a, const FormalFunctional& t,
                              int test_degree) {
  const int n = std::max({fs_pairs(xi), func_pairs(t), 1});
  PhaseContext ctx(n);
  EigenReport rep;
  rep.mode = "bullet";
  const FormalFunction shifted = minus_scalar(xi, a, n);
  for (const auto& m : monomials_up_to(n, test_degree)) {
    PiSeries v = func_action(t, fs_bullet(shifted, fs_from(GaussPoly::monomial(n, m))));
    EigenResidual r{monomial_text(m, ctx), v, std::nullopt, v.is_zero()};
    record(rep, std::move(r), false);
  }
  return rep;
}

EigenReport eigencheck_star(const StarFamily& s, const FormalFunction& xi, const FormalScalar& a,
                            const FormalFunctional& t, int test_degree, std::optional<int> order,
                            const LambdaBinding& binding) {
  const int n = s.pairs();
  const FormalFunctional resolved = resolve(t, binding);
  if (!binding.is_strict() && !t.is_exact())
    throw Error(ErrorCode::InvalidArgument, "formal eigenchecks need a functional with an exact tail");
  PhaseContext ctx(n);
  EigenReport rep;
  rep.mode = binding.is_strict() ? "strict" : "formal";
  rep.order = order;
  const FormalFunction shifted = minus_scalar(xi, a, n);

  auto residual = [&](const std::string& name, const FormalFunction& arg) {
    PiSeries v = func_star_action(s, resolved, arg, order);
    EigenResidual r{name, v, std::nullopt, false};
    if (binding.is_strict()) {
      r.value = pi_eval(v, binding);
      r.zero = r.value->is_zero();
    } else {
      r.zero = v.is_zero();
    }
    return r;
  };

  for (const auto& m : monomials_up_to(n, test_degree)) {
    const FormalFunction psi = fs_from(GaussPoly::monomial(n, m));
    const std::string name = monomial_text(m, ctx);
    record(rep, residual(name, star_mul(s, psi, shifted, order)), false);
    record(rep, residual(name, star_commutator(s, psi, xi, order)), true);
  }
  return rep;
}

// ---------------------------------------------------------------- negative region

RegionReport negative_region(const FormalFunction& f, const LambdaBinding& binding) {
  auto unsupported = [] {
    return Error(ErrorCode::NotSupportedForm, "expected (q - q0) + I*a*(p - p0) with rational a > 0 on one pair");
  };
  if (!f.is_exact() || f.is_zero() || f.valuation() != 0 || f.coeffs().size() != 1 || fs_pairs(f) != 1)
    throw unsupported();
  const GaussSum& c = f.coeffs().front();
  if (c.polynomial_degree() != 1) throw unsupported();
  const GaussPoly& poly = c.parts().begin()->second;
  for (const auto& [m, coeff] : poly.terms())
    if (total_degree(m) > 1) throw unsupported();
  const ExactComplex cq = poly.coeff({1, 0}), cp = poly.coeff({0, 1}), c0 = poly.coeff({0, 0});
  if (!cq.is_one() || sgn(cp.re()) != 0 || sgn(cp.im()) <= 0) throw unsupported();

  RegionReport r;
  r.a = cp.im();
  r.q0 = -c0.re();
  r.p0 = -c0.im() / r.a;

  MoyalFamily moyal(1);
  r.product = star_mul(moyal, fs_conj(f), f);

  GaussPoly dq = GaussPoly::coordinate(1, 0) - GaussPoly::constant(1, r.q0);
  GaussPoly dp = GaussPoly::coordinate(1, 1) - GaussPoly::constant(1, r.p0);
  FormalFunction closed = fs_from(dq * dq + (dp * dp).scaled(Rational(r.a * r.a))) +
                          fs_from(GaussPoly::constant(1, Rational(-r.a)), 1);
  if (!(r.product == closed)) throw Error(ErrorCode::InvalidArgument, "internal: ellipse closed form mismatch");

  r.minimum = scalar_lambda_power(1, Rational(-r.a));
  r.semi_axis_q_sq = scalar_lambda_power(1, r.a);
  r.semi_axis_p_sq = scalar_lambda_power(1, Rational(1 / r.a));
  r.area = PiSeries::monomial(PiRational::pi_power(1), 1);
  if (binding.is_strict()) {
    r.lambda = binding.value();
    r.minimum_value = Rational(-r.a * *r.lambda);
    r.area_value = PiRational::pi_power(1, *r.lambda);
  }
  return r;
}

}  // namespace starforge
