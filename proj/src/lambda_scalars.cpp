#include "starforge/lambda_scalars.hpp"

#include <vector>

namespace starforge {

LambdaBinding LambdaBinding::strict(const Rational& value) {
  if (sgn(value) <= 0)
    throw Error(ErrorCode::InvalidArgument, "strict lambda must be positive, got " + to_string(value));
  LambdaBinding b;
  b.value_ = value;
  return b;
}

const Rational& LambdaBinding::value() const {
  if (!value_) throw Error(ErrorCode::FormalMode, "lambda is formal; no numeric value is bound");
  return *value_;
}

FormalScalar scalar_constant(const ExactComplex& c) { return FormalScalar::monomial(c, 0); }

FormalScalar scalar_lambda_power(int k, const ExactComplex& c) { return FormalScalar::monomial(c, k); }

FormalScalar scalar_mul(const FormalScalar& a, const FormalScalar& b) {
  return cauchy(a, b, [](const ExactComplex& x, const ExactComplex& y) { return x * y; });
}

FormalScalar scalar_conj(const FormalScalar& a) {
  return a.map([](const ExactComplex& c) { return c.conj(); });
}

namespace {

template <class C>
Laurent<C> invert_series(const Laurent<C>& a, int order) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroNotInvertible, "zero series has no inverse");
  const int va = a.valuation();
  const auto& ac = a.coeffs();
  if (a.is_exact() && ac.size() == 1) return Laurent<C>::monomial(ac.front().inverse(), -va);

  // b is known through power `top`, i.e. relative index top + va.
  int top = order - va;
  if (a.truncated_at()) top = std::min(top, *a.truncated_at() - 2 * va);
  int count = top + va + 1;
  if (count <= 0) return Laurent<C>::truncated_zero(top);
  C lead_inv = ac.front().inverse();
  std::vector<C> b(static_cast<std::size_t>(count));
  b[0] = lead_inv;
  for (int m = 1; m < count; ++m) {
    C acc{};
    for (int j = 1; j <= m && j < static_cast<int>(ac.size()); ++j)
      acc = acc + ac[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(m - j)];
    b[static_cast<std::size_t>(m)] = -(lead_inv * acc);
  }
  return Laurent<C>::from_coeffs(-va, std::move(b), top);
}

template <class V>
V power_of(const Rational& lambda, int k) {
  Rational r = 1;
  Rational base = k >= 0 ? lambda : Rational(1 / lambda);
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return V(ExactComplex(r));
}

}  // namespace

FormalScalar scalar_invert(const FormalScalar& a, int order) { return invert_series(a, order); }

ExactComplex scalar_eval(const FormalScalar& a, const LambdaBinding& binding) {
  const Rational& lambda = binding.value();
  if (!a.is_exact())
    throw Error(ErrorCode::TruncatedTail,
                "series is truncated at lambda^" + std::to_string(*a.truncated_at()) +
                    "; its value at a strict lambda is unknown");
  ExactComplex sum;
  for (int p = a.valuation(); p <= a.top_power(); ++p) sum += a[p] * power_of<ExactComplex>(lambda, p);
  return sum;
}

PiSeries to_pi_series(const FormalScalar& a) {
  return a.map([](const ExactComplex& c) { return PiRational(c); });
}

PiSeries pi_mul(const PiSeries& a, const PiSeries& b) {
  return cauchy(a, b, [](const PiRational& x, const PiRational& y) { return x * y; });
}

PiSeries pi_conj(const PiSeries& a) {
  return a.map([](const PiRational& c) { return c.conj(); });
}

PiSeries pi_invert(const PiSeries& a, int order) { return invert_series(a, order); }

PiRational pi_eval(const PiSeries& a, const LambdaBinding& binding) {
  const Rational& lambda = binding.value();
  if (!a.is_exact())
    throw Error(ErrorCode::TruncatedTail,
                "series is truncated at lambda^" + std::to_string(*a.truncated_at()) +
                    "; its value at a strict lambda is unknown");
  return pi_partial_sum(a, lambda, a.top_power());
}

PiRational pi_partial_sum(const PiSeries& a, const Rational& lambda, int m) {
  PiRational sum;
  for (int p = a.valuation(); p <= std::min(m, a.top_power()); ++p)
    sum += a[p] * power_of<PiRational>(lambda, p);
  return sum;
}

std::optional<std::size_t> stabilization_index(std::span<const FormalScalar> sequence,
                                               const FormalScalar& limit, int power) {
  if (sequence.empty()) return std::nullopt;
  const ExactComplex target = limit[power];
  std::size_t k = sequence.size();
  while (k > 0 && sequence[k - 1][power] == target) --k;
  if (k == sequence.size()) return std::nullopt;
  return k;
}

namespace {

std::string lambda_factor(int p) {
  if (p == 0) return "";
  if (p == 1) return "lam";
  return "lam^" + std::to_string(p);
}

template <class C>
std::string render_series(const Laurent<C>& a) {
  std::vector<std::string> parts;
  for (int p = a.valuation(); p <= a.top_power(); ++p) {
    C c = a[p];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    std::string lf = lambda_factor(p);
    if (lf.empty()) parts.push_back(cs);
    else if (cs == "1") parts.push_back(lf);
    else if (cs == "-1") parts.push_back("-" + lf);
    else parts.push_back(cs + "*" + lf);
  }
  if (a.truncated_at()) parts.push_back("O(lam^" + std::to_string(*a.truncated_at() + 1) + ")");
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i][0] == '-') out += " - " + parts[i].substr(1);
    else out += " + " + parts[i];
  }
  return out;
}

}  // namespace

std::string render(const FormalScalar& a) { return render_series(a); }
std::string render(const PiSeries& a) { return render_series(a); }

}  // namespace starforge
