#include "starforge/phase_functions.hpp"

#include <algorithm>
#include <numeric>

#include "starforge/errors.hpp"

namespace starforge {

PhaseContext::PhaseContext(int pairs) : pairs_(pairs) {
  if (pairs < 1) throw Error(ErrorCode::InvalidArgument, "phase space needs at least one canonical pair");
}

int PhaseContext::coordinate(std::string_view name) const {
  if (name.size() >= 1 && (name[0] == 'q' || name[0] == 'p')) {
    int offset = name[0] == 'q' ? 0 : pairs_;
    if (name.size() == 1 && pairs_ == 1) return offset;
    if (name.size() > 1) {
      int idx = 0;
      bool ok = true;
      for (char ch : name.substr(1)) {
        if (ch < '0' || ch > '9') { ok = false; break; }
        idx = idx * 10 + (ch - '0');
        if (idx > 1000000) { ok = false; break; }
      }
      if (ok && name[1] != '0' && idx >= 1 && idx <= pairs_) return offset + idx - 1;
    }
  }
  throw Error(ErrorCode::UnknownCoordinate,
              "unknown coordinate '" + std::string(name) + "' for " + std::to_string(pairs_) + " canonical pair(s)");
}

std::string PhaseContext::coordinate_name(int index) const {
  if (index < 0 || index >= 2 * pairs_)
    throw Error(ErrorCode::UnknownCoordinate, "coordinate index " + std::to_string(index) + " out of range");
  char letter = index < pairs_ ? 'q' : 'p';
  if (pairs_ == 1) return std::string(1, letter);
  return letter + std::to_string(index % pairs_ + 1);
}

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Monomial> monomials_up_to(int pairs, int max_degree) {
  const int dim = 2 * pairs;
  std::vector<Monomial> out;
  Monomial m(static_cast<std::size_t>(dim), 0);
  // Enumerate exponent vectors with bounded total degree.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      m[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, remaining - e);
    }
    m[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

// -------------------------------------------------------------------- GaussPoly

GaussPoly::GaussPoly(int pairs, Rational alpha) : pairs_(pairs), alpha_(std::move(alpha)) {
  alpha_.canonicalize();
  if (sgn(alpha_) < 0) throw Error(ErrorCode::InvalidArgument, "Gaussian rate alpha must be nonnegative");
}

GaussPoly GaussPoly::constant(int pairs, const ExactComplex& c, Rational alpha) {
  return monomial(pairs, Monomial(static_cast<std::size_t>(2 * pairs), 0), c, std::move(alpha));
}

GaussPoly GaussPoly::monomial(int pairs, Monomial exps, const ExactComplex& c, Rational alpha) {
  if (static_cast<int>(exps.size()) != 2 * pairs)
    throw Error(ErrorCode::DimensionMismatch, "monomial has wrong number of exponents");
  GaussPoly f(pairs, std::move(alpha));
  f.add_term(exps, c);
  return f;
}

GaussPoly GaussPoly::coordinate(int pairs, int index) {
  Monomial m(static_cast<std::size_t>(2 * pairs), 0);
  if (index < 0 || index >= 2 * pairs)
    throw Error(ErrorCode::UnknownCoordinate, "coordinate index " + std::to_string(index) + " out of range");
  m[static_cast<std::size_t>(index)] = 1;
  return monomial(pairs, std::move(m));
}

GaussPoly GaussPoly::gaussian(int pairs, Rational alpha) { return constant(pairs, 1, std::move(alpha)); }

const Rational& GaussPoly::alpha() const {
  static const Rational zero{0};
  return terms_.empty() ? zero : alpha_;
}

bool GaussPoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

int GaussPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

ExactComplex GaussPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactComplex{} : it->second;
}

void GaussPoly::add_term(const Monomial& m, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void GaussPoly::check_pairs(const GaussPoly& o) const {
  if (pairs_ != 0 && o.pairs_ != 0 && pairs_ != o.pairs_)
    throw Error(ErrorCode::DimensionMismatch, "functions live on phase spaces of different dimension");
}

GaussPoly& GaussPoly::operator+=(const GaussPoly& o) {
  check_pairs(o);
  if (o.is_zero()) {
    pairs_ = std::max(pairs_, o.pairs_);
    return *this;
  }
  if (is_zero()) {
    int p = std::max(pairs_, o.pairs_);
    *this = o;
    pairs_ = p;
    return *this;
  }
  if (alpha_ != o.alpha_)
    throw Error(ErrorCode::AlphaMismatch, "cannot add Gaussian rates " + to_string(alpha_) + " and " +
                                              to_string(o.alpha_) + " within one GaussPoly");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GaussPoly& GaussPoly::operator-=(const GaussPoly& o) { return *this += -o; }

GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
  a.check_pairs(b);
  const int pairs = std::max(a.pairs_, b.pairs_);
  if (a.is_zero() || b.is_zero()) return GaussPoly(pairs);
  GaussPoly r(pairs, a.alpha_ + b.alpha_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

bool operator==(const GaussPoly& a, const GaussPoly& b) {
  return a.alpha() == b.alpha() && a.terms_ == b.terms_;
}

GaussPoly GaussPoly::scaled(const ExactComplex& c) const {
  if (c.is_zero()) return GaussPoly(pairs_);
  GaussPoly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

GaussPoly GaussPoly::conj() const {
  GaussPoly r = *this;
  for (auto& [m, v] : r.terms_) v = v.conj();
  return r;
}

GaussPoly GaussPoly::with_alpha(const Rational& alpha) const {
  GaussPoly r = *this;
  if (sgn(alpha) < 0) throw Error(ErrorCode::InvalidArgument, "Gaussian rate alpha must be nonnegative");
  if (!r.is_zero()) {
    r.alpha_ = alpha;
    r.alpha_.canonicalize();
  }
  return r;
}

GaussPoly gp_arith(ArithOp op, const GaussPoly& f, const GaussPoly& g) {
  switch (op) {
    case ArithOp::Add: return f + g;
    case ArithOp::Mul: return f * g;
    case ArithOp::Conj: return f.conj();
    case ArithOp::Scale: break;
  }
  throw Error(ErrorCode::InvalidArgument, "scale takes a complex scalar operand");
}

GaussPoly gp_arith(ArithOp op, const GaussPoly& f, const ExactComplex& c) {
  switch (op) {
    case ArithOp::Scale: return f.scaled(c);
    case ArithOp::Conj: return f.conj();
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "add and mul take a GaussPoly operand");
}

GaussPoly gp_diff(const GaussPoly& f, int var) {
  if (f.pairs() != 0 && (var < 0 || var >= 2 * f.pairs()))
    throw Error(ErrorCode::UnknownCoordinate, "coordinate index " + std::to_string(var) + " out of range");
  GaussPoly r(f.pairs(), f.alpha());
  const auto v = static_cast<std::size_t>(var);
  const ExactComplex chain = ExactComplex(-2 * f.alpha());
  for (const auto& [m, c] : f.terms()) {
    if (m[v] > 0) {
      Monomial d = m;
      d[v] -= 1;
      r.add_term(d, c * ExactComplex(m[v]));
    }
    if (sgn(f.alpha()) != 0) {
      Monomial up = m;
      up[v] += 1;
      r.add_term(up, c * chain);
    }
  }
  return r;
}

GaussPoly gp_diff(const GaussPoly& f, const Monomial& multi_index) {
  GaussPoly r = f;
  for (std::size_t var = 0; var < multi_index.size(); ++var)
    for (int k = 0; k < multi_index[var]; ++k) {
      r = gp_diff(r, static_cast<int>(var));
      if (r.is_zero()) return r;
    }
  return r;
}

PiRational PointValue::value() const {
  return PiRational::term(PiRational::Key{0, exp_argument}, poly_value);
}

PointValue gp_eval(const GaussPoly& f, const std::vector<Rational>& point) {
  if (f.pairs() != 0 && static_cast<int>(point.size()) != 2 * f.pairs())
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(point.size()) +
                                                  " coordinates, phase space has " + std::to_string(2 * f.pairs()));
  PointValue out;
  for (const auto& [m, c] : f.terms()) {
    Rational v = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) v *= point[i];
    out.poly_value += c * ExactComplex(v);
  }
  Rational r2 = 0;
  for (const auto& x : point) r2 += x * x;
  out.exp_argument = sgn(f.alpha()) == 0 ? Rational(0) : Rational(-f.alpha() * r2);
  return out;
}

PiRational gp_integrate(const GaussPoly& f) {
  if (f.is_zero()) return {};
  if (f.is_polynomial())
    throw Error(ErrorCode::NotIntegrable, "a nonzero polynomial is not integrable over phase space");
  const Rational& alpha = f.alpha();
  ExactComplex sum;
  for (const auto& [m, c] : f.terms()) {
    Rational factor = 1;
    bool odd = false;
    for (int e : m) {
      if (e % 2 != 0) {
        odd = true;
        break;
      }
      // (e-1)!! / (2 alpha)^(e/2)
      for (int j = e - 1; j > 0; j -= 2) factor *= j;
      for (int j = 0; j < e / 2; ++j) factor /= 2 * alpha;
    }
    if (!odd) sum += c * ExactComplex(factor);
  }
  // prod over 2n coordinates of sqrt(pi/alpha) = (pi/alpha)^n
  Rational norm = 1;
  for (int i = 0; i < f.pairs(); ++i) norm /= alpha;
  return PiRational::pi_power(f.pairs(), sum * ExactComplex(norm));
}

GaussPoly gp_poisson(const GaussPoly& f, const GaussPoly& g) {
  const int pairs = std::max(f.pairs(), g.pairs());
  GaussPoly r(pairs);
  for (int i = 0; i < pairs; ++i) {
    r += gp_diff(f, i) * gp_diff(g, pairs + i);
    r -= gp_diff(f, pairs + i) * gp_diff(g, i);
  }
  return r;
}

namespace detail {

std::string render_term(const ExactComplex& c, int lambda_power, const Monomial& m, const Rational& alpha,
                        const PhaseContext& ctx) {
  std::vector<std::string> factors;
  if (lambda_power == 1) factors.push_back("lam");
  else if (lambda_power != 0) factors.push_back("lam^" + std::to_string(lambda_power));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    std::string name = ctx.coordinate_name(static_cast<int>(i));
    factors.push_back(m[i] == 1 ? name : name + "^" + std::to_string(m[i]));
  }
  if (sgn(alpha) != 0) factors.push_back("gauss(" + to_string(alpha) + ")");
  std::string body;
  for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
  if (body.empty()) return c.str();
  if (c.is_one()) return body;
  if (c == ExactComplex(-1)) return "-" + body;
  return c.str() + "*" + body;
}

std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i][0] == '-') out += " - " + parts[i].substr(1);
    else out += " + " + parts[i];
  }
  return out;
}

}  // namespace detail

std::string render(const GaussPoly& f, const PhaseContext& ctx) {
  std::vector<std::string> parts;
  for (const auto& [m, c] : f.terms()) parts.push_back(detail::render_term(c, 0, m, f.alpha(), ctx));
  return detail::join_terms(parts);
}

}  // namespace starforge
