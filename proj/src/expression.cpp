#include "starforge/expression.hpp"

#include <cctype>
#include <variant>

namespace starforge {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const PhaseContext& ctx, bool functional)
      : s_(text), ctx_(ctx), functional_(functional) {}

  Expr parse_all() {
    Expr e = expr();
    ws();
    if (pos_ != s_.size()) fail("operator or end of input");
    return e;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, expected,
                     "parse error at offset " + std::to_string(pos_) + ": expected " + expected + ", found " + found);
  }

  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("'") + c + "'");
  }

  Expr node(Expr::Kind k, std::size_t at, std::vector<Expr> kids = {}) {
    Expr e;
    e.kind = k;
    e.offset = at;
    e.kids = std::move(kids);
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      ws();
      std::size_t at = pos_;
      if (eat('+')) lhs = node(Expr::Kind::Add, at, {std::move(lhs), term()});
      else if (eat('-')) lhs = node(Expr::Kind::Sub, at, {std::move(lhs), term()});
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      ws();
      std::size_t at = pos_;
      if (eat('*')) lhs = node(Expr::Kind::Mul, at, {std::move(lhs), unary()});
      else if (eat('/')) lhs = node(Expr::Kind::Div, at, {std::move(lhs), unary()});
      else return lhs;
    }
  }

  Expr unary() {
    ws();
    std::size_t at = pos_;
    if (eat('-')) return node(Expr::Kind::Neg, at, {factor()});
    if (eat('+')) return factor();
    return factor();
  }

  Expr factor() {
    Expr base = atom();
    ws();
    std::size_t at = pos_;
    if (!eat('^')) return base;
    Expr e = node(Expr::Kind::Pow, at, {std::move(base)});
    e.exponent = integer(true);
    return e;
  }

  std::string digits() {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer");
    return std::string(s_.substr(start, pos_ - start));
  }

  int integer(bool allow_sign) {
    ws();
    bool negative = allow_sign && eat('-');
    std::size_t at = pos_;
    std::string d = digits();
    if (d.size() > 6) {
      pos_ = at;
      fail("integer of at most 6 digits");
    }
    int v = std::stoi(d);
    return negative ? -v : v;
  }

  // digits ('/' digits)?, the slash only when a digit follows it directly.
  Rational rational_literal() {
    std::string text = digits();
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      std::size_t at = pos_;
      std::string den = digits();
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = at;
        fail("nonzero denominator");
      }
      text += "/" + den;
    }
    return parse_rational(text);
  }

  Rational signed_rational() {
    ws();
    bool negative = eat('-');
    Rational r = rational_literal();
    return negative ? Rational(-r) : r;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr atom() {
    ws();
    const std::size_t at = pos_;
    if (pos_ >= s_.size()) fail("number, 'I', 'lam', coordinate, 'gauss' or '('");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Expr e = node(Expr::Kind::Number, at);
      e.value = rational_literal();
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("number, 'I', 'lam', coordinate, 'gauss' or '('");
    const std::string id = identifier();
    if (id == "I") return node(Expr::Kind::Imag, at);
    if (id == "lam") return node(Expr::Kind::Lambda, at);
    if (id == "gauss") {
      expect('(');
      Expr e = node(Expr::Kind::Gauss, at);
      e.value = signed_rational();
      if (sgn(e.value) < 0)
        throw Error(ErrorCode::InvalidArgument, "Gaussian rate must be nonnegative (offset " + std::to_string(at) + ")");
      expect(')');
      return e;
    }
    if (functional_) {
      if (id == "pi") return node(Expr::Kind::Pi, at);
      if (id == "exp") {
        expect('(');
        Expr e = node(Expr::Kind::Exp, at);
        e.value = signed_rational();
        expect(')');
        return e;
      }
      if (id == "delta") return delta(at);
      if (id == "density" || id == "wigner") {
        expect('(');
        bool saved = functional_;
        functional_ = false;
        Expr inner = expr();
        functional_ = saved;
        expect(')');
        return node(id == "density" ? Expr::Kind::Density : Expr::Kind::Wigner, at, {std::move(inner)});
      }
    }
    Expr e = node(Expr::Kind::Coord, at);
    try {
      e.index = ctx_.coordinate(id);
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " (offset " + std::to_string(at) + ")");
    }
    return e;
  }

  Expr delta(std::size_t at) {
    Expr e = node(Expr::Kind::Delta, at);
    expect('(');
    e.point.push_back(signed_rational());
    while (eat(',')) e.point.push_back(signed_rational());
    if (eat(';')) {
      e.multi_index.push_back(integer(false));
      while (eat(',')) e.multi_index.push_back(integer(false));
    }
    expect(')');
    const std::size_t dim = static_cast<std::size_t>(ctx_.dimension());
    if (e.point.size() != dim || (!e.multi_index.empty() && e.multi_index.size() != dim))
      throw Error(ErrorCode::DimensionMismatch,
                  "delta at offset " + std::to_string(at) + " needs " + std::to_string(dim) + " coordinates");
    if (e.multi_index.empty()) e.multi_index.assign(dim, 0);
    return e;
  }

  std::string_view s_;
  const PhaseContext& ctx_;
  bool functional_;
  std::size_t pos_ = 0;
};

Error at_offset(ErrorCode code, const std::string& what, std::size_t offset) {
  return Error(code, what + " (offset " + std::to_string(offset) + ")");
}

// Nonzero constant c lambda^k, when f is one.
std::optional<std::pair<ExactComplex, int>> as_unit_monomial(const FormalFunction& f) {
  if (!f.is_exact() || f.coeffs().size() != 1) return std::nullopt;
  const GaussSum& c = f.coeffs().front();
  if (c.polynomial_degree() != 0) return std::nullopt;
  const GaussPoly& g = c.parts().begin()->second;
  return std::make_pair(g.terms().begin()->second, f.valuation());
}

FormalFunction power(const FormalFunction& base, int e, int pairs) {
  FormalFunction r = fs_constant(pairs, 1);
  for (int i = 0; i < e; ++i) r = fs_bullet(r, base);
  return r;
}

}  // namespace

Expr parse_expression(std::string_view text, const PhaseContext& ctx) { return Parser(text, ctx, false).parse_all(); }

Expr parse_functional_expression(std::string_view text, const PhaseContext& ctx) {
  return Parser(text, ctx, true).parse_all();
}

FormalFunction lower(const Expr& e, const PhaseContext& ctx) {
  const int n = ctx.pairs();
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number: return fs_constant(n, e.value);
    case K::Imag: return fs_constant(n, ExactComplex::imag_unit());
    case K::Lambda: return FormalFunction::monomial(GaussSum::constant(n, 1), 1);
    case K::Coord: return fs_from(GaussPoly::coordinate(n, e.index));
    case K::Gauss: return fs_from(GaussPoly::gaussian(n, e.value));
    case K::Neg: return -lower(e.kids[0], ctx);
    case K::Add: return lower(e.kids[0], ctx) + lower(e.kids[1], ctx);
    case K::Sub: return lower(e.kids[0], ctx) - lower(e.kids[1], ctx);
    case K::Mul: return fs_bullet(lower(e.kids[0], ctx), lower(e.kids[1], ctx));
    case K::Div: {
      auto d = as_unit_monomial(lower(e.kids[1], ctx));
      if (!d) throw at_offset(ErrorCode::InvalidArgument, "division needs a nonzero c*lam^k divisor", e.offset);
      FormalFunction inv = FormalFunction::monomial(GaussSum::constant(n, d->first.inverse()), -d->second);
      return fs_bullet(lower(e.kids[0], ctx), inv);
    }
    case K::Pow: {
      FormalFunction base = lower(e.kids[0], ctx);
      if (e.exponent >= 0) return power(base, e.exponent, n);
      auto d = as_unit_monomial(base);
      if (!d) throw at_offset(ErrorCode::InvalidArgument, "negative powers need a nonzero c*lam^k base", e.offset);
      return power(FormalFunction::monomial(GaussSum::constant(n, d->first.inverse()), -d->second), -e.exponent, n);
    }
    default:
      throw at_offset(ErrorCode::InvalidArgument, "functional syntax inside a function expression", e.offset);
  }
}

namespace {

using FValue = std::variant<PiSeries, FormalFunctional>;

PiSeries pi_unit_power(const PiSeries& base, int e, std::size_t offset) {
  PiSeries b = base;
  if (e < 0) {
    if (!b.is_exact() || b.coeffs().size() != 1 || !b.coeffs().front().is_unit())
      throw at_offset(ErrorCode::InvalidArgument, "negative powers need an invertible monomial base", offset);
    b = PiSeries::monomial(b.coeffs().front().inverse(), -b.valuation());
    e = -e;
  }
  PiSeries r = PiSeries::monomial(PiRational(1), 0);
  for (int i = 0; i < e; ++i) r = pi_mul(r, b);
  return r;
}

FValue lower_f(const Expr& e, const PhaseContext& ctx) {
  using K = Expr::Kind;
  auto scalar = [](const PiRational& v, int power = 0) { return FValue(PiSeries::monomial(v, power)); };
  switch (e.kind) {
    case K::Number: return scalar(PiRational(ExactComplex(e.value)));
    case K::Imag: return scalar(PiRational(ExactComplex::imag_unit()));
    case K::Lambda: return scalar(PiRational(1), 1);
    case K::Pi: return scalar(PiRational::pi_power(1));
    case K::Exp: return scalar(PiRational::term({0, e.value}, 1));
    case K::Delta: return point_deriv(e.point, e.multi_index);
    case K::Density: {
      FormalFunction f = lower(e.kids[0], ctx);
      return FValue(f.map([](const GaussSum& c) {
        FunctionalSum s;
        for (const auto& [alpha, g] : c.parts()) s += FunctionalSum(Density{g, 1, false});
        return s;
      }));
    }
    case K::Wigner: {
      FormalFunction f = lower(e.kids[0], ctx);
      if (!f.is_exact() || f.valuation() != 0 || f.coeffs().size() != 1 || f.coeffs().front().parts().size() != 1)
        throw at_offset(ErrorCode::InvalidArgument, "wigner(...) takes one lambda-free Gaussian polynomial", e.offset);
      return dilated_density(f.coeffs().front().parts().begin()->second);
    }
    case K::Neg: {
      FValue v = lower_f(e.kids[0], ctx);
      return std::visit([](const auto& x) { return FValue(-x); }, v);
    }
    case K::Add:
    case K::Sub: {
      FValue a = lower_f(e.kids[0], ctx), b = lower_f(e.kids[1], ctx);
      if (a.index() != b.index())
        throw at_offset(ErrorCode::InvalidArgument, "cannot add a number to a functional", e.offset);
      if (auto* x = std::get_if<PiSeries>(&a)) {
        const auto& y = std::get<PiSeries>(b);
        return e.kind == K::Add ? FValue(*x + y) : FValue(*x - y);
      }
      const auto& x = std::get<FormalFunctional>(a);
      const auto& y = std::get<FormalFunctional>(b);
      return e.kind == K::Add ? FValue(x + y) : FValue(x - y);
    }
    case K::Mul: {
      FValue a = lower_f(e.kids[0], ctx), b = lower_f(e.kids[1], ctx);
      if (std::holds_alternative<FormalFunctional>(a) && std::holds_alternative<FormalFunctional>(b))
        throw at_offset(ErrorCode::InvalidArgument, "cannot multiply two functionals", e.offset);
      if (auto* x = std::get_if<PiSeries>(&a)) {
        if (auto* y = std::get_if<PiSeries>(&b)) return pi_mul(*x, *y);
        return func_scale(*x, std::get<FormalFunctional>(b));
      }
      return func_scale(std::get<PiSeries>(b), std::get<FormalFunctional>(a));
    }
    case K::Div: {
      FValue a = lower_f(e.kids[0], ctx), b = lower_f(e.kids[1], ctx);
      auto* d = std::get_if<PiSeries>(&b);
      if (!d) throw at_offset(ErrorCode::InvalidArgument, "cannot divide by a functional", e.offset);
      PiSeries inv = pi_unit_power(*d, -1, e.offset);
      if (auto* x = std::get_if<PiSeries>(&a)) return pi_mul(*x, inv);
      return func_scale(inv, std::get<FormalFunctional>(a));
    }
    case K::Pow: {
      FValue a = lower_f(e.kids[0], ctx);
      auto* x = std::get_if<PiSeries>(&a);
      if (!x) throw at_offset(ErrorCode::InvalidArgument, "cannot raise a functional to a power", e.offset);
      return pi_unit_power(*x, e.exponent, e.offset);
    }
    case K::Coord:
    case K::Gauss:
      throw at_offset(ErrorCode::InvalidArgument, "a function must be wrapped in density(...) here", e.offset);
  }
  return PiSeries{};
}

}  // namespace

FormalFunctional lower_functional(const Expr& e, const PhaseContext& ctx) {
  FValue v = lower_f(e, ctx);
  if (auto* t = std::get_if<FormalFunctional>(&v)) return *t;
  if (std::get<PiSeries>(v).is_zero()) return {};
  throw Error(ErrorCode::InvalidArgument, "expected a functional, got a number");
}

FormalScalar parse_scalar(std::string_view text) {
  PhaseContext ctx(1);
  FormalFunction f = parse_function(text, ctx);
  return f.map([](const GaussSum& c) {
    if (c.is_zero()) return ExactComplex();
    if (c.polynomial_degree() != 0)
      throw Error(ErrorCode::InvalidArgument, "expected a coordinate-free scalar");
    return c.parts().begin()->second.terms().begin()->second;
  });
}

std::string render(const FormalFunctional& t, const PhaseContext& ctx) {
  std::vector<std::string> parts;
  auto join = [](const std::string& coeff, const std::string& lam, const std::string& body) {
    std::string head = lam.empty() ? body : lam + "*" + body;
    if (coeff == "1") return head;
    if (coeff == "-1") return "-" + head;
    return coeff + "*" + head;
  };
  for (int l = t.valuation(); l <= t.top_power(); ++l) {
    const FunctionalSum c = t[l];
    const std::string lam = l == 0 ? "" : l == 1 ? "lam" : "lam^" + std::to_string(l);
    for (const auto& term : c.terms()) {
      if (const auto* pd = std::get_if<PointDeriv>(&term)) {
        std::string body = "delta(";
        for (std::size_t i = 0; i < pd->point.size(); ++i) body += (i ? "," : "") + to_string(pd->point[i]);
        if (total_degree(pd->multi_index) > 0) {
          body += ";";
          for (std::size_t i = 0; i < pd->multi_index.size(); ++i)
            body += (i ? "," : "") + std::to_string(pd->multi_index[i]);
        }
        parts.push_back(join(pd->weight.str(), lam, body + ")"));
      } else {
        const auto& d = std::get<Density>(term);
        std::string body = std::string(d.dilated ? "wigner(" : "density(") + render(d.g, ctx) + ")";
        parts.push_back(join(d.weight.str(), lam, body));
      }
    }
  }
  std::string out = detail::join_terms(parts);
  if (t.truncated_at()) {
    std::string tail = "O(lam^" + std::to_string(*t.truncated_at() + 1) + ")";
    out = parts.empty() ? tail : out + " + " + tail;
  }
  return out;
}

}  // namespace starforge
