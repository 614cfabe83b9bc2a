#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "starforge/errors.hpp"

namespace starforge {

/// Result of comparing two possibly truncated series. `depth` is the highest
/// power through which the comparison was decidable (absent when both sides
/// are exact and the comparison covers every power).
struct SeriesComparison {
  bool equal = false;
  std::optional<int> depth;
  explicit operator bool() const { return equal; }
};

/// Formal Laurent series  sum_{l >= valuation} lambda^l c_l  with a finite
/// principal part, stored as the finitely many known coefficients plus a tail
/// marker. With `truncated_at() == N` every power <= N is known and nothing is
/// claimed beyond N; an exact series is zero past its last stored coefficient.
///
/// The coefficient type needs a value-initialised zero, `is_zero()`, binary
/// `+`, `-` and unary `-`.
template <class C>
class Laurent {
 public:
  using coefficient_type = C;

  Laurent() = default;

  static Laurent from_coeffs(int valuation, std::vector<C> coeffs,
                             std::optional<int> truncated_at = std::nullopt) {
    Laurent s;
    s.valuation_ = valuation;
    s.coeffs_ = std::move(coeffs);
    s.trunc_ = truncated_at;
    s.canonicalize();
    return s;
  }

  static Laurent monomial(C c, int power, std::optional<int> truncated_at = std::nullopt) {
    std::vector<C> v;
    v.push_back(std::move(c));
    return from_coeffs(power, std::move(v), truncated_at);
  }

  /// O(lambda^(N+1)): zero through power N, unknown beyond.
  static Laurent truncated_zero(int n) { return from_coeffs(0, {}, n); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact_zero() const { return coeffs_.empty() && !trunc_; }
  bool is_exact() const { return !trunc_; }
  std::optional<int> truncated_at() const { return trunc_; }

  /// Lowest power with a nonzero coefficient; 0 for a zero series.
  int valuation() const { return valuation_; }

  /// Lowest power that may carry a nonzero coefficient. For O(lambda^(N+1))
  /// this is N+1; it is what valuation shifts in products are computed from.
  int effective_valuation() const {
    if (coeffs_.empty() && trunc_) return *trunc_ + 1;
    return valuation_;
  }

  /// Highest stored power (valuation - 1 when empty).
  int top_power() const { return valuation_ + static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<C>& coeffs() const { return coeffs_; }

  /// Coefficient of lambda^power. Asking past the truncation order is an error.
  C operator[](int power) const {
    if (trunc_ && power > *trunc_)
      throw Error(ErrorCode::TruncatedTail,
                  "coefficient of lambda^" + std::to_string(power) + " lies beyond truncation order " +
                      std::to_string(*trunc_));
    if (power < valuation_ || power > top_power()) return C{};
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
  }

  /// Drops every power above n and tags the tail.
  Laurent truncated(int n) const {
    Laurent s = *this;
    s.trunc_ = trunc_ ? std::min(*trunc_, n) : n;
    s.canonicalize();
    return s;
  }

  /// Multiplication by lambda^k.
  Laurent shifted(int k) const {
    Laurent s = *this;
    s.valuation_ += k;
    if (s.trunc_) *s.trunc_ += k;
    if (s.coeffs_.empty()) s.valuation_ = 0;
    return s;
  }

  /// Coefficientwise image; valuation and tail marker carry over.
  template <class F>
  auto map(F&& f) const -> Laurent<std::decay_t<std::invoke_result_t<F, const C&>>> {
    using R = std::decay_t<std::invoke_result_t<F, const C&>>;
    std::vector<R> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Laurent<R>::from_coeffs(valuation_, std::move(out), trunc_);
  }

  Laurent operator-() const {
    return map([](const C& c) { return C(-c); });
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }

  /// Structural equality: same coefficients and same tail marker.
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.valuation_ == b.valuation_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

  /// Value comparison through the lower of the two truncation orders.
  friend SeriesComparison compare(const Laurent& a, const Laurent& b) {
    Laurent d = a - b;
    return {d.is_zero(), d.trunc_};
  }

 private:
  template <class>
  friend class Laurent;

  static Laurent combine(const Laurent& a, const Laurent& b, bool subtract) {
    std::optional<int> t;
    if (a.trunc_ && b.trunc_) t = std::min(*a.trunc_, *b.trunc_);
    else t = a.trunc_ ? a.trunc_ : b.trunc_;
    if (a.coeffs_.empty() && b.coeffs_.empty()) return from_coeffs(0, {}, t);
    int lo = std::min(a.coeffs_.empty() ? b.valuation_ : a.valuation_,
                      b.coeffs_.empty() ? a.valuation_ : b.valuation_);
    int hi = std::max(a.top_power(), b.top_power());
    if (t) hi = std::min(hi, *t);
    std::vector<C> out;
    for (int p = lo; p <= hi; ++p) {
      C x = a.raw(p);
      if (subtract) out.push_back(x - b.raw(p));
      else out.push_back(x + b.raw(p));
    }
    return from_coeffs(lo, std::move(out), t);
  }

  C raw(int power) const {
    if (power < valuation_ || power > top_power()) return C{};
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
  }

  void canonicalize() {
    if (trunc_) {
      int keep = *trunc_ - valuation_ + 1;
      if (keep < 0) keep = 0;
      if (static_cast<std::size_t>(keep) < coeffs_.size()) coeffs_.resize(static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) valuation_ = 0;
  }

  int valuation_ = 0;
  std::vector<C> coeffs_;
  std::optional<int> trunc_;
};

/// Graded Cauchy product  (sum a_l lambda^l)(sum b_k lambda^k) with a
/// caller-supplied coefficient product. Truncation propagates as
/// min(N_a + val(b), N_b + val(a)).
template <class A, class B, class Mul>
auto cauchy(const Laurent<A>& a, const Laurent<B>& b, Mul&& mul)
    -> Laurent<std::decay_t<std::invoke_result_t<Mul, const A&, const B&>>> {
  using R = std::decay_t<std::invoke_result_t<Mul, const A&, const B&>>;
  if (a.is_exact_zero() || b.is_exact_zero()) return {};
  std::optional<int> t;
  if (a.truncated_at()) t = *a.truncated_at() + b.effective_valuation();
  if (b.truncated_at()) {
    int tb = *b.truncated_at() + a.effective_valuation();
    t = t ? std::min(*t, tb) : tb;
  }
  if (a.is_zero() || b.is_zero()) return Laurent<R>::truncated_zero(*t);
  int lo = a.valuation() + b.valuation();
  int hi = a.top_power() + b.top_power();
  if (t) hi = std::min(hi, *t);
  if (hi < lo) return Laurent<R>::truncated_zero(*t);
  std::vector<R> out(static_cast<std::size_t>(hi - lo + 1));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      int p = lo + static_cast<int>(i + j);
      if (p > hi) break;
      if (bc[j].is_zero()) continue;
      auto& slot = out[static_cast<std::size_t>(p - lo)];
      slot = slot + mul(ac[i], bc[j]);
    }
  }
  return Laurent<R>::from_coeffs(lo, std::move(out), t);
}

}  // namespace starforge
