#include "starforge/starforge.h"

#include <cstring>
#include <memory>
#include <random>
#include <sstream>

#include "starforge/json_io.hpp"

using namespace starforge;

struct sf_context {
  PhaseContext phase;
  std::unique_ptr<StarFamily> family;
  LambdaBinding binding = LambdaBinding::formal();
  std::optional<int> order;
};

struct sf_series {
  FormalFunction value;
};

struct sf_functional {
  FormalFunctional value;
};

struct sf_report {
  bool passed = true;
  Json payload;
};

namespace {

thread_local std::string last_error;
thread_local long last_offset = -1;

template <class F>
sf_status guarded(F&& body) {
  last_error.clear();
  last_offset = -1;
  try {
    body();
    return SF_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    last_offset = static_cast<long>(e.offset());
    return SF_PARSE_ERROR;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<sf_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return SF_INTERNAL;
  }
}

sf_status null_argument() {
  last_error = "null argument";
  last_offset = -1;
  return SF_NULL_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

FormalScalar as_scalar(const FormalFunction& f) {
  return f.map([](const GaussSum& c) {
    if (c.is_zero()) return ExactComplex();
    if (c.polynomial_degree() != 0) throw Error(ErrorCode::InvalidArgument, "expected a coordinate-free scalar");
    return c.parts().begin()->second.terms().begin()->second;
  });
}

Json number_result(const PiSeries& s, const sf_context* ctx) {
  Json j{{"result", render(s)}, {"exact", s.is_exact()}};
  if (ctx->binding.is_strict() && s.is_exact()) j["value"] = pi_eval(s, ctx->binding).str();
  j["series"] = to_json(s);
  return j;
}

std::vector<Rational> parse_samples(const char* text) {
  if (!text) return default_lambda_samples();
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

GaussPoly random_generator(std::mt19937_64& rng, int pairs, int degree) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), terms(1, 3);
  auto monos = monomials_up_to(pairs, degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  GaussPoly g(pairs);
  const int count = terms(rng);
  for (int i = 0; i < count; ++i) {
    int re = num(rng), rd = den(rng), im = num(rng), id = den(rng);
    g.add_term(monos[pick(rng)], ExactComplex(Rational(re, rd), Rational(im, id)));
  }
  return g;
}

}  // namespace

extern "C" {

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_NULL_ARGUMENT: return "null_argument";
    case SF_INTERNAL: return "internal";
    default: break;
  }
  int code = static_cast<int>(status);
  if (code >= 1 && code <= 14) return error_code_name(static_cast<ErrorCode>(code));
  return "unknown";
}

const char* sf_last_error(void) { return last_error.c_str(); }
long sf_last_error_offset(void) { return last_offset; }
void sf_string_free(char* s) { std::free(s); }

sf_status sf_context_create(int pairs, sf_context** out) {
  if (!out) return null_argument();
  return guarded([&] {
    auto ctx = std::make_unique<sf_context>(sf_context{PhaseContext(pairs), make_family("moyal", pairs), LambdaBinding::formal(), std::nullopt});
    *out = ctx.release();
  });
}

void sf_context_destroy(sf_context* ctx) { delete ctx; }

sf_status sf_context_set_product(sf_context* ctx, const char* name) {
  if (!ctx || !name) return null_argument();
  return guarded([&] { ctx->family = make_family(name, ctx->phase.pairs()); });
}

sf_status sf_context_set_lambda(sf_context* ctx, const char* value) {
  if (!ctx) return null_argument();
  return guarded([&] {
    ctx->binding = value ? LambdaBinding::strict(parse_rational(value)) : LambdaBinding::formal();
  });
}

sf_status sf_context_set_order(sf_context* ctx, int order) {
  if (!ctx) return null_argument();
  ctx->order = order < 0 ? std::nullopt : std::optional<int>(order);
  return SF_OK;
}

sf_status sf_series_parse(const sf_context* ctx, const char* text, sf_series** out) {
  if (!ctx || !text || !out) return null_argument();
  return guarded([&] { *out = new sf_series{parse_function(text, ctx->phase)}; });
}

void sf_series_destroy(sf_series* s) { delete s; }

sf_status sf_series_render(const sf_context* ctx, const sf_series* s, char** out) {
  if (!ctx || !s || !out) return null_argument();
  return guarded([&] { *out = copy_string(render(s->value, ctx->phase)); });
}

sf_status sf_series_to_json(const sf_series* s, char** out) {
  if (!s || !out) return null_argument();
  return guarded([&] { *out = copy_string(to_json(s->value).dump()); });
}

int sf_series_is_exact(const sf_series* s) { return s && s->value.is_exact() ? 1 : 0; }

sf_status sf_star(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out) {
  if (!ctx || !a || !b || !out) return null_argument();
  return guarded([&] { *out = new sf_series{star_mul(*ctx->family, a->value, b->value, ctx->order)}; });
}

sf_status sf_bullet(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out) {
  if (!ctx || !a || !b || !out) return null_argument();
  return guarded([&] { *out = new sf_series{fs_bullet(a->value, b->value)}; });
}

sf_status sf_commutator(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out) {
  if (!ctx || !a || !b || !out) return null_argument();
  return guarded([&] { *out = new sf_series{star_commutator(*ctx->family, a->value, b->value, ctx->order)}; });
}

sf_status sf_trace(const sf_context* ctx, const sf_series* a, char** out_json) {
  if (!ctx || !a || !out_json) return null_argument();
  return guarded([&] { *out_json = copy_string(number_result(star_trace(*ctx->family, a->value), ctx).dump()); });
}

sf_status sf_integrate(const sf_context* ctx, const sf_series* a, char** out_json) {
  if (!ctx || !a || !out_json) return null_argument();
  return guarded([&] { *out_json = copy_string(number_result(fs_integrate(a->value), ctx).dump()); });
}

sf_status sf_functional_parse(const sf_context* ctx, const char* text, sf_functional** out) {
  if (!ctx || !text || !out) return null_argument();
  return guarded([&] { *out = new sf_functional{parse_functional(text, ctx->phase)}; });
}

void sf_functional_destroy(sf_functional* t) { delete t; }

sf_status sf_functional_render(const sf_context* ctx, const sf_functional* t, char** out) {
  if (!ctx || !t || !out) return null_argument();
  return guarded([&] { *out = copy_string(render(t->value, ctx->phase)); });
}

int sf_report_passed(const sf_report* r) { return r && r->passed ? 1 : 0; }

sf_status sf_report_json(const sf_report* r, char** out) {
  if (!r || !out) return null_argument();
  return guarded([&] { *out = copy_string(r->payload.dump()); });
}

void sf_report_destroy(sf_report* r) { delete r; }

sf_status sf_axioms(const sf_context* ctx, int degree_bound, int order_bound, unsigned long seed, int random_count,
                    sf_report** out) {
  if (!ctx || !out) return null_argument();
  return guarded([&] {
    std::vector<GaussPoly> extra;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i) extra.push_back(random_generator(rng, ctx->phase.pairs(), degree_bound));
    AxiomReport rep = axiom_suite(*ctx->family, degree_bound, order_bound, extra);
    Json j = to_json(rep);
    if (random_count > 0) {
      j["scope"]["seed"] = seed;
      j["scope"]["random_generators"] = random_count;
    }
    *out = new sf_report{rep.passed(), std::move(j)};
  });
}

sf_status sf_positivity(const sf_context* ctx, const sf_functional* t, const sf_series* const* witnesses,
                        size_t witness_count, const char* lambda_samples, sf_report** out) {
  if (!ctx || !t || !out || (witness_count > 0 && !witnesses)) return null_argument();
  return guarded([&] {
    std::vector<FormalFunction> ws;
    for (size_t i = 0; i < witness_count; ++i) {
      if (!witnesses[i]) throw Error(ErrorCode::InvalidArgument, "null witness");
      ws.push_back(witnesses[i]->value);
    }
    PositivityReport rep = positivity_check(*ctx->family, resolve(t->value, ctx->binding), ws,
                                            parse_samples(lambda_samples), ctx->order);
    *out = new sf_report{rep.positive(), to_json(rep)};
  });
}

sf_status sf_normalize(const sf_context* ctx, const sf_functional* t, int plain, sf_report** out) {
  if (!ctx || !t || !out) return null_argument();
  return guarded([&] {
    const int order = ctx->order.value_or(4);
    FormalFunctional resolved = resolve(t->value, ctx->binding);
    Normalization n = plain ? normalize_functional_plain(resolved, order)
                            : normalize_functional(*ctx->family, resolved, order);
    Json j = to_json(n, ctx->phase);
    j["order"] = order;
    *out = new sf_report{true, std::move(j)};
  });
}

sf_status sf_eigencheck(const sf_context* ctx, const sf_series* xi, const sf_series* a, const sf_functional* t,
                        int test_degree, sf_report** out) {
  if (!ctx || !xi || !a || !t || !out) return null_argument();
  return guarded([&] {
    FormalScalar value = as_scalar(a->value);
    EigenReport rep = ctx->family->name() == "bullet"
                          ? eigencheck_bullet(xi->value, value, resolve(t->value, ctx->binding), test_degree)
                          : eigencheck_star(*ctx->family, xi->value, value, t->value, test_degree, ctx->order,
                                            ctx->binding);
    *out = new sf_report{rep.passed(), to_json(rep)};
  });
}

sf_status sf_region(const sf_context* ctx, const sf_series* f, sf_report** out) {
  if (!ctx || !f || !out) return null_argument();
  return guarded([&] {
    RegionReport rep = negative_region(f->value, ctx->binding);
    *out = new sf_report{true, to_json(rep, ctx->phase)};
  });
}

}  // extern "C"
