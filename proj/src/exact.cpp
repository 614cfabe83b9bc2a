#include "starforge/exact.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "starforge/errors.hpp"

namespace starforge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroNotInvertible: return "ZeroNotInvertible";
    case ErrorCode::FormalMode: return "FormalModeError";
    case ErrorCode::TruncatedTail: return "TruncatedTailError";
    case ErrorCode::AlphaMismatch: return "AlphaMismatch";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::OrderRequired: return "OrderRequired";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::NotSupportedForm: return "NotSupportedForm";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InfinitePrincipalPart: return "InfinitePrincipalPart";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Undecidable: return "Undecidable";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + s + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- ExactComplex

ExactComplex ExactComplex::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroNotInvertible, "division by exact zero");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string ExactComplex::str() const {
  auto imag = [](const Rational& v) -> std::string {
    if (v == 1) return "I";
    if (v == -1) return "-I";
    return to_string(v) + "*I";
  };
  if (sgn(im_) == 0) return to_string(re_);
  if (sgn(re_) == 0) return imag(im_);
  std::string im_part = imag(im_);
  if (im_part[0] != '-') im_part = "+" + im_part;
  return "(" + to_string(re_) + im_part + ")";
}

// ------------------------------------------------------------------ PiRational

PiRational::PiRational(const ExactComplex& c) {
  if (!c.is_zero()) terms_.emplace(Key{}, c);
}

PiRational PiRational::pi_power(int k, const ExactComplex& coeff) {
  return term(Key{k, 0}, coeff);
}

PiRational PiRational::term(const Key& key, const ExactComplex& coeff) {
  PiRational r;
  r.add_term(key, coeff);
  return r;
}

void PiRational::add_term(const Key& key, const ExactComplex& c) {
  if (c.is_zero()) return;
  Key k = key;
  k.exp_arg.canonicalize();
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PiRational::is_real() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

std::optional<ExactComplex> PiRational::as_complex() const {
  if (terms_.empty()) return ExactComplex{};
  if (terms_.size() == 1 && terms_.begin()->first == Key{}) return terms_.begin()->second;
  return std::nullopt;
}

ExactComplex PiRational::coeff_of_pi(int k) const {
  auto it = terms_.find(Key{k, 0});
  return it == terms_.end() ? ExactComplex{} : it->second;
}

PiRational PiRational::conj() const {
  PiRational r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.conj());
  return r;
}

PiRational PiRational::real_part() const {
  PiRational r;
  for (const auto& [k, c] : terms_) r.add_term(k, ExactComplex(c.re()));
  return r;
}

PiRational PiRational::imag_part() const {
  PiRational r;
  for (const auto& [k, c] : terms_) r.add_term(k, ExactComplex(c.im()));
  return r;
}

PiRational PiRational::inverse() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroNotInvertible, "division by exact zero");
  if (terms_.size() != 1)
    throw Error(ErrorCode::ZeroNotInvertible,
                "value " + str() + " mixes transcendental monomials and has no exact inverse");
  const auto& [k, c] = *terms_.begin();
  return term(Key{-k.pi_power, -k.exp_arg}, c.inverse());
}

PiRational PiRational::operator-() const {
  PiRational r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

PiRational& PiRational::operator+=(const PiRational& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PiRational& PiRational::operator-=(const PiRational& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PiRational& PiRational::operator*=(const PiRational& o) {
  PiRational r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      r.add_term(Key{ka.pi_power + kb.pi_power, ka.exp_arg + kb.exp_arg}, ca * cb);
  terms_ = std::move(r.terms_);
  return *this;
}

namespace {

// RAII holder for an mpfr_t.
struct Mpfr {
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_t v;
};

// Positive enclosure [lo, hi] of pi^k * exp(rho).
void transcendental_bounds(const PiRational::Key& key, Mpfr& lo, Mpfr& hi, mpfr_prec_t prec) {
  Mpfr pi_lo(prec), pi_hi(prec), t(prec), r_lo(prec), r_hi(prec);
  mpfr_const_pi(pi_lo.v, MPFR_RNDD);
  mpfr_const_pi(pi_hi.v, MPFR_RNDU);
  unsigned long k = static_cast<unsigned long>(std::abs(key.pi_power));
  if (key.pi_power >= 0) {
    mpfr_pow_ui(lo.v, pi_lo.v, k, MPFR_RNDD);
    mpfr_pow_ui(hi.v, pi_hi.v, k, MPFR_RNDU);
  } else {
    mpfr_pow_ui(t.v, pi_hi.v, k, MPFR_RNDU);
    mpfr_ui_div(lo.v, 1, t.v, MPFR_RNDD);
    mpfr_pow_ui(t.v, pi_lo.v, k, MPFR_RNDD);
    mpfr_ui_div(hi.v, 1, t.v, MPFR_RNDU);
  }
  if (sgn(key.exp_arg) != 0) {
    mpfr_set_q(r_lo.v, key.exp_arg.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r_hi.v, key.exp_arg.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(r_lo.v, r_lo.v, MPFR_RNDD);
    mpfr_exp(r_hi.v, r_hi.v, MPFR_RNDU);
    mpfr_mul(lo.v, lo.v, r_lo.v, MPFR_RNDD);
    mpfr_mul(hi.v, hi.v, r_hi.v, MPFR_RNDU);
  }
}

}  // namespace

int PiRational::sign() const {
  if (!is_real()) throw Error(ErrorCode::InvalidArgument, "sign of a non-real value " + str());
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second.re());
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    Mpfr sum_lo(prec), sum_hi(prec), lo(prec), hi(prec), c_lo(prec), c_hi(prec), t(prec);
    mpfr_set_zero(sum_lo.v, 1);
    mpfr_set_zero(sum_hi.v, 1);
    for (const auto& [key, c] : terms_) {
      transcendental_bounds(key, lo, hi, prec);
      mpfr_set_q(c_lo.v, c.re().get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(c_hi.v, c.re().get_mpq_t(), MPFR_RNDU);
      if (sgn(c.re()) >= 0) {
        mpfr_mul(t.v, c_lo.v, lo.v, MPFR_RNDD);
        mpfr_add(sum_lo.v, sum_lo.v, t.v, MPFR_RNDD);
        mpfr_mul(t.v, c_hi.v, hi.v, MPFR_RNDU);
        mpfr_add(sum_hi.v, sum_hi.v, t.v, MPFR_RNDU);
      } else {
        mpfr_mul(t.v, c_lo.v, hi.v, MPFR_RNDD);
        mpfr_add(sum_lo.v, sum_lo.v, t.v, MPFR_RNDD);
        mpfr_mul(t.v, c_hi.v, lo.v, MPFR_RNDU);
        mpfr_add(sum_hi.v, sum_hi.v, t.v, MPFR_RNDU);
      }
    }
    if (mpfr_sgn(sum_lo.v) > 0) return 1;
    if (mpfr_sgn(sum_hi.v) < 0) return -1;
  }
  throw Error(ErrorCode::Undecidable, "cannot separate " + str() + " from zero");
}

double PiRational::approx() const {
  double v = 0;
  for (const auto& [key, c] : terms_)
    v += c.re().get_d() * std::pow(M_PI, key.pi_power) * std::exp(key.exp_arg.get_d());
  return v;
}

std::string PiRational::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [key, c] : terms_) {
    std::string factors;
    if (key.pi_power == 1) factors = "pi";
    else if (key.pi_power != 0) factors = "pi^" + std::to_string(key.pi_power);
    if (sgn(key.exp_arg) != 0) {
      if (!factors.empty()) factors += "*";
      factors += "exp(" + to_string(key.exp_arg) + ")";
    }
    if (factors.empty()) {
      parts.push_back(c.str());
      continue;
    }
    bool negative = c.is_real() && sgn(c.re()) < 0;
    ExactComplex shown = negative ? -c : c;
    std::string s = negative ? "-" : "";
    s += factors;
    if (!shown.is_one()) s += "*" + shown.str();
    parts.push_back(s);
  }
  if (parts.size() == 1) return parts.front();
  std::string out = "(" + parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i][0] == '-') out += " - " + parts[i].substr(1);
    else out += " + " + parts[i];
  }
  return out + ")";
}

}  // namespace starforge
