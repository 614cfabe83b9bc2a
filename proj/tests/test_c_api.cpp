#include <doctest.h>
#include <json.hpp>

#include <string>

#include "starforge/starforge.h"

namespace {

using Json = nlohmann::ordered_json;

std::string take(char* s) {
  std::string out(s);
  sf_string_free(s);
  return out;
}

struct Fixture {
  sf_context* ctx = nullptr;
  Fixture() { REQUIRE(sf_context_create(1, &ctx) == SF_OK); }
  ~Fixture() { sf_context_destroy(ctx); }

  sf_series* parse(const char* text) {
    sf_series* s = nullptr;
    REQUIRE(sf_series_parse(ctx, text, &s) == SF_OK);
    return s;
  }
  std::string show(const sf_series* s) {
    char* out = nullptr;
    REQUIRE(sf_series_render(ctx, s, &out) == SF_OK);
    return take(out);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "star products through the C interface") {
  sf_series *q = parse("q"), *p = parse("p"), *r = nullptr;
  REQUIRE(sf_commutator(ctx, q, p, &r) == SF_OK);
  CHECK(show(r) == "I*lam");
  CHECK(sf_series_is_exact(r) == 1);
  sf_series_destroy(r);
  REQUIRE(sf_star(ctx, q, p, &r) == SF_OK);
  CHECK(show(r) == "q*p + 1/2*I*lam");
  sf_series_destroy(r);
  REQUIRE(sf_context_set_product(ctx, "bullet") == SF_OK);
  REQUIRE(sf_star(ctx, q, p, &r) == SF_OK);
  CHECK(show(r) == "q*p");
  sf_series_destroy(r);
  sf_series_destroy(q);
  sf_series_destroy(p);
}

TEST_CASE_FIXTURE(Fixture, "errors map to status codes") {
  sf_series* s = nullptr;
  CHECK(sf_series_parse(ctx, "q +* p", &s) == SF_PARSE_ERROR);
  CHECK(s == nullptr);
  CHECK(sf_last_error_offset() == 3);
  CHECK(std::string(sf_last_error()).find("offset 3") != std::string::npos);
  CHECK(std::string(sf_status_name(SF_PARSE_ERROR)) == "ParseError");
  CHECK(sf_series_parse(ctx, "q2", &s) == SF_UNKNOWN_COORDINATE);
  CHECK(sf_series_parse(nullptr, "q", &s) == SF_NULL_ARGUMENT);
  CHECK(sf_context_set_product(ctx, "weyl") == SF_INVALID_ARGUMENT);
  CHECK(sf_context_set_lambda(ctx, "-1") == SF_INVALID_ARGUMENT);

  sf_series *g = parse("gauss(1)"), *h = parse("p*gauss(1)"), *r = nullptr;
  CHECK(sf_star(ctx, g, h, &r) == SF_ORDER_REQUIRED);
  REQUIRE(sf_context_set_order(ctx, 2) == SF_OK);
  REQUIRE(sf_star(ctx, g, h, &r) == SF_OK);
  CHECK(sf_series_is_exact(r) == 0);
  CHECK(std::string(sf_last_error()).empty());
  sf_series_destroy(r);
  sf_series_destroy(g);
  sf_series_destroy(h);
}

TEST_CASE_FIXTURE(Fixture, "trace values in strict mode") {
  sf_series* g = parse("gauss(1)");
  char* out = nullptr;
  REQUIRE(sf_trace(ctx, g, &out) == SF_OK);
  Json j = Json::parse(take(out));
  CHECK(j["result"] == "pi*lam^-1");
  CHECK_FALSE(j.contains("value"));
  REQUIRE(sf_context_set_lambda(ctx, "1/2") == SF_OK);
  REQUIRE(sf_trace(ctx, g, &out) == SF_OK);
  CHECK(Json::parse(take(out))["value"] == "pi*2");
  sf_series* q = parse("q");
  CHECK(sf_integrate(ctx, q, &out) == SF_NOT_INTEGRABLE);
  sf_series_destroy(q);
  sf_series_destroy(g);
}

TEST_CASE_FIXTURE(Fixture, "reports") {
  sf_report* rep = nullptr;
  REQUIRE(sf_axioms(ctx, 2, 2, 0, 0, &rep) == SF_OK);
  CHECK(sf_report_passed(rep) == 1);
  sf_report_destroy(rep);

  sf_functional* t = nullptr;
  REQUIRE(sf_functional_parse(ctx, "delta(0,0)", &t) == SF_OK);
  sf_series* w = parse("q + I*p");
  const sf_series* ws[] = {w};
  REQUIRE(sf_positivity(ctx, t, ws, 1, "1/2,3", &rep) == SF_OK);
  CHECK(sf_report_passed(rep) == 0);
  char* js = nullptr;
  REQUIRE(sf_report_json(rep, &js) == SF_OK);
  Json j = Json::parse(take(js));
  CHECK(j["negative"]["value"] == "-1");
  CHECK(j["lambda_samples"] == Json::array({"1/2", "3"}));
  sf_report_destroy(rep);

  REQUIRE(sf_normalize(ctx, t, 0, &rep) == SF_OK);
  REQUIRE(sf_report_json(rep, &js) == SF_OK);
  CHECK(Json::parse(take(js))["factor"] == "lam");
  sf_report_destroy(rep);

  sf_series *xi = parse("q"), *a = parse("0");
  REQUIRE(sf_eigencheck(ctx, xi, a, t, 2, &rep) == SF_OK);
  CHECK(sf_report_passed(rep) == 0);
  sf_report_destroy(rep);
  sf_series* bad = parse("q");
  CHECK(sf_eigencheck(ctx, xi, bad, t, 2, &rep) == SF_INVALID_ARGUMENT);

  sf_series_destroy(bad);
  sf_series_destroy(xi);
  sf_series_destroy(a);
  sf_series_destroy(w);
  sf_functional_destroy(t);
}

TEST_CASE_FIXTURE(Fixture, "region report") {
  REQUIRE(sf_context_set_lambda(ctx, "1/3") == SF_OK);
  sf_series* f = parse("(q - 1) + 2*I*(p + 1/2)");
  sf_report* rep = nullptr;
  REQUIRE(sf_region(ctx, f, &rep) == SF_OK);
  char* js = nullptr;
  REQUIRE(sf_report_json(rep, &js) == SF_OK);
  Json j = Json::parse(take(js));
  CHECK(j["minimum_value"] == "-2/3");
  CHECK(j["area_value"] == "pi*1/3");
  CHECK(j["center"] == Json::array({"1", "-1/2"}));
  sf_report_destroy(rep);
  sf_series_destroy(f);
}

TEST_CASE("destroy accepts null") {
  sf_context_destroy(nullptr);
  sf_series_destroy(nullptr);
  sf_functional_destroy(nullptr);
  sf_report_destroy(nullptr);
  sf_string_free(nullptr);
  CHECK(sf_report_passed(nullptr) == 0);
}
