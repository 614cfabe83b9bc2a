#include "starforge/json_io.hpp"

namespace starforge {

namespace {

Json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from(const Json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  throw Error(ErrorCode::InvalidArgument, "expected an integer or a decimal string");
}

Json rational(const Rational& r) { return Json::array({integer(r.get_num()), integer(r.get_den())}); }

Rational rational_from(const Json& num, const Json& den) {
  mpz_class d = integer_from(den);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(integer_from(num), d);
  r.canonicalize();
  return r;
}

Json tail(const std::optional<int>& t) {
  if (!t) return "exact";
  return Json{{"truncated_at", *t}};
}

std::optional<int> tail_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "exact") return std::nullopt;
  if (j.is_object() && j.contains("truncated_at")) return j.at("truncated_at").get<int>();
  throw Error(ErrorCode::InvalidArgument, "tail must be \"exact\" or {\"truncated_at\": N}");
}

template <class C, class F>
Json series(const Laurent<C>& s, F&& coeff) {
  Json cs = Json::array();
  for (const auto& c : s.coeffs()) cs.push_back(coeff(c));
  return Json{{"valuation", s.valuation()}, {"coeffs", cs}, {"tail", tail(s.truncated_at())}};
}

Json term_json(const FunctionalTerm& t) {
  if (const auto* pd = std::get_if<PointDeriv>(&t)) {
    Json pt = Json::array();
    for (const auto& x : pd->point) pt.push_back(rational(x));
    return Json{{"kind", "point"}, {"point", pt}, {"multi_index", pd->multi_index}, {"weight", to_json(pd->weight)}};
  }
  const auto& d = std::get<Density>(t);
  return Json{{"kind", "density"}, {"g", to_json(d.g)}, {"weight", to_json(d.weight)}, {"dilated", d.dilated}};
}

Json residuals(const std::vector<EigenResidual>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) {
    Json j{{"test_function", r.test_function}, {"action", render(r.action)}, {"zero", r.zero}};
    if (r.value) j["value"] = r.value->str();
    out.push_back(j);
  }
  return out;
}

}  // namespace

Json to_json(const ExactComplex& c) {
  return Json::array({integer(c.re().get_num()), integer(c.re().get_den()), integer(c.im().get_num()),
                      integer(c.im().get_den())});
}

Json to_json(const PiRational& v) {
  Json terms = Json::array();
  for (const auto& [key, c] : v.terms())
    terms.push_back(Json{{"pi_power", key.pi_power}, {"exp_arg", rational(key.exp_arg)}, {"coeff", to_json(c)}});
  return Json{{"terms", terms}, {"text", v.str()}};
}

Json to_json(const FormalScalar& s) {
  return series(s, [](const ExactComplex& c) { return to_json(c); });
}

Json to_json(const PiSeries& s) {
  return series(s, [](const PiRational& c) { return to_json(c); });
}

Json to_json(const GaussPoly& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back(Json{{"exps", m}, {"coeff", to_json(c)}});
  return Json{{"alpha", rational(f.alpha())}, {"terms", terms}};
}

Json to_json(const FormalFunction& f) {
  return series(f, [](const GaussSum& c) {
    Json parts = Json::array();
    for (const auto& [alpha, g] : c.parts()) parts.push_back(to_json(g));
    return parts;
  });
}

Json to_json(const FormalFunctional& t) {
  return series(t, [](const FunctionalSum& c) {
    Json terms = Json::array();
    for (const auto& term : c.terms()) terms.push_back(term_json(term));
    return terms;
  });
}

Json to_json(const AxiomReport& r) {
  Json scope{{"generators", "monomials of total degree <= " + std::to_string(r.degree_bound)},
             {"generator_count", r.generator_count},
             {"degree_bound", r.degree_bound},
             {"order_bound", r.order_bound},
             {"pairs", r.pairs}};
  Json axioms = Json::array();
  for (const auto& a : r.results) {
    Json j{{"axiom", a.axiom}, {"title", a.title}, {"verdict", verdict_name(a.verdict)}};
    if (a.verdict == Verdict::ByConstruction) j["scope"] = Json{{"basis", "operators are built from derivatives only"}};
    else j["scope"] = Json{{"degree_bound", r.degree_bound}, {"order_bound", r.order_bound}, {"checks", a.checks}};
    if (a.counterexample) {
      const auto& cx = *a.counterexample;
      j["counterexample"] = Json{{"inputs", cx.inputs}, {"order", cx.order}, {"lambda_power", cx.order},
                                 {"lhs", cx.lhs}, {"rhs", cx.rhs}};
    }
    axioms.push_back(j);
  }
  return Json{{"family", r.family}, {"passed", r.passed()}, {"scope", scope}, {"axioms", axioms}};
}

Json to_json(const ClosednessReport& r) {
  Json ints = Json::array();
  for (const auto& v : r.integrals) ints.push_back(v.str());
  return Json{{"pointwise", r.pointwise.str()}, {"integrals", ints}, {"closed", r.closed}};
}

Json to_json(const PositivityReport& r) {
  Json samples = Json::array();
  for (const auto& l : r.lambda_samples) samples.push_back(to_string(l));
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json ss = Json::array();
    for (const auto& s : w.samples) {
      Json j{{"lambda", to_string(s.lambda)}, {"value", s.value.str()}, {"value_exact", s.value_exact}};
      j["stable_from"] = s.stable_from ? Json(*s.stable_from) : Json(nullptr);
      j["value_approx"] = s.value.is_real() ? Json(s.value.approx()) : Json(nullptr);
      ss.push_back(j);
    }
    ws.push_back(Json{{"witness", w.witness}, {"series", render(w.series)}, {"real", w.real}, {"samples", ss}});
  }
  Json out{{"family", r.family}, {"positive", r.positive()}, {"real", !r.nonreal}, {"lambda_samples", samples}};
  out["order"] = r.order ? Json(*r.order) : Json(nullptr);
  out["witnesses"] = ws;
  if (r.negative)
    out["negative"] = Json{{"witness", r.negative->witness},
                           {"lambda", to_string(r.negative->lambda)},
                           {"partial_sum_power", r.negative->power},
                           {"value", r.negative->value.str()}};
  return out;
}

Json to_json(const Normalization& n, const PhaseContext& ctx) {
  return Json{{"factor", render(n.factor)},
              {"normalized", render(n.normalized, ctx)},
              {"check", render(n.check)},
              {"factor_series", to_json(n.factor)}};
}

Json to_json(const EigenReport& r) {
  Json out{{"mode", r.mode}, {"passed", r.passed()}};
  out["order"] = r.order ? Json(*r.order) : Json(nullptr);
  out["residuals"] = residuals(r.residuals);
  out["commutation"] = residuals(r.commutation);
  if (r.first_failure) {
    Json f{{"test_function", r.residuals[*r.first_failure].test_function}};
    f["lambda_power"] = r.failure_power ? Json(*r.failure_power) : Json(nullptr);
    out["first_failure"] = f;
  }
  if (r.first_commutation_failure)
    out["first_commutation_failure"] = Json{{"test_function", r.commutation[*r.first_commutation_failure].test_function}};
  return out;
}

Json to_json(const RegionReport& r, const PhaseContext& ctx) {
  Json out{{"a", to_string(r.a)},
           {"center", Json::array({to_string(r.q0), to_string(r.p0)})},
           {"product", render(r.product, ctx)},
           {"minimum", render(r.minimum)},
           {"semi_axes_squared", Json::array({render(r.semi_axis_q_sq), render(r.semi_axis_p_sq)})},
           {"area", render(r.area)}};
  if (r.lambda) {
    out["lambda"] = to_string(*r.lambda);
    out["minimum_value"] = to_string(*r.minimum_value);
    out["area_value"] = r.area_value->str();
  }
  return out;
}

ExactComplex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::InvalidArgument, "complex value needs 4 integers");
  return {rational_from(j[0], j[1]), rational_from(j[2], j[3])};
}

FormalScalar scalar_from_json(const Json& j) {
  std::vector<ExactComplex> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(complex_from_json(c));
  return FormalScalar::from_coeffs(j.at("valuation").get<int>(), std::move(cs), tail_from(j.at("tail")));
}

GaussPoly gauss_from_json(const Json& j, int pairs) {
  const auto& a = j.at("alpha");
  GaussPoly f(pairs, rational_from(a.at(0), a.at(1)));
  for (const auto& t : j.at("terms")) {
    Monomial m = t.at("exps").get<Monomial>();
    if (static_cast<int>(m.size()) != 2 * pairs)
      throw Error(ErrorCode::DimensionMismatch, "exponent vector length does not match 2n");
    f.add_term(m, complex_from_json(t.at("coeff")));
  }
  return f;
}

FormalFunction function_from_json(const Json& j, int pairs) {
  std::vector<GaussSum> cs;
  for (const auto& c : j.at("coeffs")) {
    GaussSum s = GaussSum::constant(pairs, 0);
    for (const auto& g : c) s += GaussSum(gauss_from_json(g, pairs));
    cs.push_back(s);
  }
  return FormalFunction::from_coeffs(j.at("valuation").get<int>(), std::move(cs), tail_from(j.at("tail")));
}

}  // namespace starforge
