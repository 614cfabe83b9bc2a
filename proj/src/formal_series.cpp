#include "starforge/formal_series.hpp"

#include <algorithm>

namespace starforge {

GaussSum::GaussSum(const GaussPoly& f) : pairs_(f.pairs()) { add(f); }

void GaussSum::add(const GaussPoly& f) {
  if (f.pairs() != 0 && pairs_ != 0 && f.pairs() != pairs_)
    throw Error(ErrorCode::DimensionMismatch, "functions live on phase spaces of different dimension");
  pairs_ = std::max(pairs_, f.pairs());
  if (f.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(f.alpha(), f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

bool GaussSum::is_real() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.second.is_real(); });
}

std::optional<int> GaussSum::polynomial_degree() const {
  if (parts_.empty()) return -1;
  if (parts_.size() == 1 && sgn(parts_.begin()->first) == 0) return parts_.begin()->second.degree();
  return std::nullopt;
}

GaussSum& GaussSum::operator+=(const GaussSum& o) {
  if (o.parts_.empty()) pairs_ = std::max(pairs_, o.pairs_);
  for (const auto& [a, f] : o.parts_) add(f);
  return *this;
}

GaussSum& GaussSum::operator-=(const GaussSum& o) { return *this += -o; }

GaussSum operator*(const GaussSum& a, const GaussSum& b) {
  GaussSum r;
  r.pairs_ = std::max(a.pairs_, b.pairs_);
  for (const auto& [aa, fa] : a.parts_)
    for (const auto& [ab, fb] : b.parts_) r.add(fa * fb);
  return r;
}

GaussSum GaussSum::scaled(const ExactComplex& c) const {
  GaussSum r;
  r.pairs_ = pairs_;
  if (c.is_zero()) return r;
  for (const auto& [a, f] : parts_) r.parts_.emplace(a, f.scaled(c));
  return r;
}

GaussSum GaussSum::conj() const {
  GaussSum r;
  r.pairs_ = pairs_;
  for (const auto& [a, f] : parts_) r.parts_.emplace(a, f.conj());
  return r;
}

GaussSum GaussSum::diff(int var) const {
  GaussSum r;
  r.pairs_ = pairs_;
  for (const auto& [a, f] : parts_) r.add(gp_diff(f, var));
  return r;
}

GaussSum GaussSum::diff(const Monomial& multi_index) const {
  GaussSum r;
  r.pairs_ = pairs_;
  for (const auto& [a, f] : parts_) r.add(gp_diff(f, multi_index));
  return r;
}

PiRational GaussSum::integrate() const {
  PiRational sum;
  for (const auto& [a, f] : parts_) sum += gp_integrate(f);
  return sum;
}

PiRational GaussSum::eval(const std::vector<Rational>& point) const {
  PiRational sum;
  for (const auto& [a, f] : parts_) sum += gp_eval(f, point).value();
  return sum;
}

// ---------------------------------------------------------------- FormalFunction

FormalFunction fs_constant(int pairs, const ExactComplex& c) {
  return FormalFunction::monomial(GaussSum::constant(pairs, c), 0);
}

FormalFunction fs_from(const GaussPoly& f, int lambda_power) {
  return FormalFunction::monomial(GaussSum(f), lambda_power);
}

int fs_pairs(const FormalFunction& f) {
  int pairs = 0;
  for (const auto& c : f.coeffs()) pairs = std::max(pairs, c.pairs());
  return pairs;
}

FormalFunction fs_scale(const FormalScalar& c, const FormalFunction& f) {
  return cauchy(c, f, [](const ExactComplex& x, const GaussSum& g) { return g.scaled(x); });
}

FormalFunction fs_linear_comb(const FormalScalar& c1, const FormalFunction& f1, const FormalScalar& c2,
                              const FormalFunction& f2) {
  return fs_scale(c1, f1) + fs_scale(c2, f2);
}

FormalFunction fs_bullet(const FormalFunction& f, const FormalFunction& g) {
  return cauchy(f, g, [](const GaussSum& a, const GaussSum& b) { return a * b; });
}

FormalFunction fs_diff(const FormalFunction& f, int var) {
  const int pairs = fs_pairs(f);
  if (pairs != 0 && (var < 0 || var >= 2 * pairs))
    throw Error(ErrorCode::UnknownCoordinate, "coordinate index " + std::to_string(var) + " out of range");
  return f.map([var](const GaussSum& c) { return c.diff(var); });
}

FormalFunction fs_conj(const FormalFunction& f) {
  return f.map([](const GaussSum& c) { return c.conj(); });
}

bool fs_is_real(const FormalFunction& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](const GaussSum& c) { return c.is_real(); });
}

PiSeries fs_integrate(const FormalFunction& f) {
  std::vector<PiRational> out;
  for (int p = f.valuation(); p <= f.top_power(); ++p) {
    try {
      out.push_back(f[p].integrate());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotIntegrable) throw;
      throw Error(ErrorCode::NotIntegrable,
                  "coefficient of lambda^" + std::to_string(p) + " is not integrable: " + e.what());
    }
  }
  return PiSeries::from_coeffs(f.valuation(), std::move(out), f.truncated_at());
}

std::string render(const FormalFunction& f, const PhaseContext& ctx) {
  std::vector<std::string> parts;
  for (int p = f.valuation(); p <= f.top_power(); ++p) {
    const GaussSum c = f[p];
    for (const auto& [alpha, poly] : c.parts())
      for (const auto& [m, c] : poly.terms()) parts.push_back(detail::render_term(c, p, m, alpha, ctx));
  }
  std::string out = detail::join_terms(parts);
  if (f.truncated_at()) {
    std::string tail = "O(lam^" + std::to_string(*f.truncated_at() + 1) + ")";
    out = parts.empty() ? tail : out + " + " + tail;
  }
  return out;
}

}  // namespace starforge
