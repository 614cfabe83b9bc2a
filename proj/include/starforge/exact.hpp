#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace starforge {

using Rational = mpq_class;

/// Parses "a" or "a/b" (optional leading '-') into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Gaussian rational re + i*im. Both parts are kept in lowest terms; the
/// two-argument mpq_class constructor alone does not guarantee that.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  ExactComplex(long v) : re_(v), im_(0) {}
  ExactComplex(int v) : re_(v), im_(0) {}

  static ExactComplex imag_unit() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  ExactComplex conj() const { return {re_, -im_}; }
  ExactComplex inverse() const;

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    return a * b.inverse();
  }
  ExactComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Surface-syntax rendering: "3/2", "-I", "1/2*I", "(1-2*I)".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Exact value of the form  sum_j c_j * pi^(k_j) * exp(rho_j).
///
/// Gaussian integrals produce the pi powers, point evaluation of a Gaussian
/// produces the exp factors. Distinct (k, rho) keys are kept apart, so the
/// value is a finite combination over independent transcendental monomials.
/// The common case is a single key, the rational-times-pi^n value of an
/// integral over R^(2n).
class PiRational {
 public:
  struct Key {
    int pi_power = 0;
    Rational exp_arg{0};
    friend bool operator<(const Key& a, const Key& b) {
      if (a.pi_power != b.pi_power) return a.pi_power < b.pi_power;
      return a.exp_arg < b.exp_arg;
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.pi_power == b.pi_power && a.exp_arg == b.exp_arg;
    }
  };
  using Terms = std::map<Key, ExactComplex>;

  PiRational() = default;
  PiRational(const ExactComplex& c);
  PiRational(long v) : PiRational(ExactComplex(v)) {}
  PiRational(int v) : PiRational(ExactComplex(v)) {}

  static PiRational pi_power(int k, const ExactComplex& coeff = 1);
  static PiRational term(const Key& key, const ExactComplex& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// A single nonzero term, hence invertible.
  bool is_unit() const { return terms_.size() == 1; }
  /// Present when the value has no transcendental factor.
  std::optional<ExactComplex> as_complex() const;
  /// Coefficient of pi^k with no exp factor.
  ExactComplex coeff_of_pi(int k) const;

  PiRational conj() const;
  PiRational inverse() const;
  PiRational real_part() const;
  PiRational imag_part() const;

  /// Exact sign of a real value: -1, 0 or +1. Multi-term values are decided
  /// by outward-rounded interval evaluation with increasing precision.
  int sign() const;
  /// Round-to-nearest double, for display only.
  double approx() const;

  PiRational& operator+=(const PiRational& o);
  PiRational& operator-=(const PiRational& o);
  PiRational& operator*=(const PiRational& o);
  friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
  friend PiRational operator-(PiRational a, const PiRational& b) { return a -= b; }
  friend PiRational operator*(PiRational a, const PiRational& b) { return a *= b; }
  PiRational operator-() const;
  friend bool operator==(const PiRational& a, const PiRational& b) { return a.terms_ == b.terms_; }

  /// Renders as e.g. "pi*1/3", "-pi^-1", "exp(-1)*2", "(pi*1/2 + 1)".
  std::string str() const;

 private:
  void add_term(const Key& key, const ExactComplex& c);
  Terms terms_;
};

}  // namespace starforge
