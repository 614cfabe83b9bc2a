// starforge: command-line front end over the C interface.
//
// Every command prints one line of canonical JSON. Exit status: 0 success or
// passing verdict, 1 failing verdict, 2 usage or engine error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starforge/starforge.h"

namespace {

using Json = nlohmann::ordered_json;

struct EngineError {
  sf_status status;
  std::string message;
  long offset;
};

void check(sf_status s) {
  if (s != SF_OK) throw EngineError{s, sf_last_error(), sf_last_error_offset()};
}

struct Deleter {
  void operator()(sf_context* p) const { sf_context_destroy(p); }
  void operator()(sf_series* p) const { sf_series_destroy(p); }
  void operator()(sf_functional* p) const { sf_functional_destroy(p); }
  void operator()(sf_report* p) const { sf_report_destroy(p); }
};
template <class T>
using Handle = std::unique_ptr<T, Deleter>;

std::string take(char* s) {
  std::string out(s);
  sf_string_free(s);
  return out;
}

struct Options {
  int pairs = 1;
  std::optional<int> order;
  std::optional<std::string> lambda;
  std::string product = "moyal";
  bool json = false;
  std::optional<unsigned long> seed;
};

class Session {
 public:
  explicit Session(const Options& o) : opts_(o) {
    sf_context* raw = nullptr;
    check(sf_context_create(o.pairs, &raw));
    ctx_.reset(raw);
    check(sf_context_set_product(ctx_.get(), o.product.c_str()));
    if (o.lambda) check(sf_context_set_lambda(ctx_.get(), o.lambda->c_str()));
    if (o.order) check(sf_context_set_order(ctx_.get(), *o.order));
  }

  Handle<sf_series> series(const std::string& text) const {
    sf_series* raw = nullptr;
    check(sf_series_parse(ctx_.get(), text.c_str(), &raw));
    return Handle<sf_series>(raw);
  }

  Handle<sf_functional> functional(const std::string& text) const {
    sf_functional* raw = nullptr;
    check(sf_functional_parse(ctx_.get(), text.c_str(), &raw));
    return Handle<sf_functional>(raw);
  }

  Json describe(const sf_series* s) const {
    char* text = nullptr;
    check(sf_series_render(ctx_.get(), s, &text));
    Json j{{"result", take(text)}, {"exact", sf_series_is_exact(s) == 1}};
    if (opts_.json) {
      char* js = nullptr;
      check(sf_series_to_json(s, &js));
      j["series"] = Json::parse(take(js));
    }
    return j;
  }

  Json number(char* payload) const {
    Json j = Json::parse(take(payload));
    if (!opts_.json) j.erase("series");
    return j;
  }

  // Report payload plus verdict-derived exit status.
  std::pair<Json, int> report(sf_report* raw, bool verdict) const {
    Handle<sf_report> r(raw);
    char* js = nullptr;
    check(sf_report_json(r.get(), &js));
    int status = verdict && !sf_report_passed(r.get()) ? 1 : 0;
    return {Json::parse(take(js)), status};
  }

  sf_context* ctx() const { return ctx_.get(); }

 private:
  const Options& opts_;
  Handle<sf_context> ctx_;
};

int emit(Json out, int status) {
  std::cout << out.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starforge: exact formal-series deformation quantization"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--pairs", opts.pairs, "number of canonical pairs")->check(CLI::PositiveNumber);
  app.add_option("--order", opts.order, "truncation order (axioms: order bound)");
  app.add_option("--lambda", opts.lambda, "bind lambda to a positive rational (strict mode)");
  app.add_option("--product", opts.product, "star family")->check(CLI::IsMember({"moyal", "bullet"}));
  app.add_flag("--json", opts.json, "include structured series payloads");
  app.add_option("--seed", opts.seed, "seed for randomized generators");

  std::string a, b, c;
  std::vector<std::string> rest;
  int degree = -1;
  bool plain = false;
  std::optional<std::string> samples;

  auto* star = app.add_subcommand("star", "F * G");
  star->add_option("F", a)->required();
  star->add_option("G", b)->required();
  auto* bullet = app.add_subcommand("bullet", "F . G");
  bullet->add_option("F", a)->required();
  bullet->add_option("G", b)->required();
  auto* commutator = app.add_subcommand("commutator", "F * G - G * F");
  commutator->add_option("F", a)->required();
  commutator->add_option("G", b)->required();
  auto* trace = app.add_subcommand("trace", "lambda^-n integral of F . t");
  trace->add_option("F", a)->required();
  auto* integrate = app.add_subcommand("integrate", "termwise integral of F");
  integrate->add_option("F", a)->required();
  auto* axioms = app.add_subcommand("axioms", "check the star-product axioms on monomial generators");
  axioms->add_option("--degree", degree, "generator degree bound (default 3)");
  auto* positivity = app.add_subcommand("positivity", "series positivity of a functional on witnesses");
  positivity->add_option("T", a)->required();
  positivity->add_option("witnesses", rest)->required();
  positivity->add_option("--samples", samples, "comma-separated lambda samples");
  auto* normalize = app.add_subcommand("normalize", "solve <A T, 1>_* = 1 for A");
  normalize->add_option("T", a)->required();
  normalize->add_flag("--plain", plain, "use the plain pairing <T, 1>");
  auto* eigencheck = app.add_subcommand("eigencheck", "check xi * T = a T on test monomials");
  eigencheck->add_option("xi", a)->required();
  eigencheck->add_option("a", b)->required();
  eigencheck->add_option("T", c)->required();
  eigencheck->add_option("--degree", degree, "test monomial degree bound (default 2)");
  auto* region = app.add_subcommand("region", "negative region of conj(f) * f");
  region->add_option("f", a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Json out{{"command", name}};
  try {
    Session s(opts);
    auto binary = [&](sf_status (*op)(const sf_context*, const sf_series*, const sf_series*, sf_series**)) {
      auto f = s.series(a), g = s.series(b);
      sf_series* raw = nullptr;
      check(op(s.ctx(), f.get(), g.get(), &raw));
      Handle<sf_series> r(raw);
      out.update(s.describe(r.get()));
      return emit(out, 0);
    };
    auto merge = [&](std::pair<Json, int> rep) {
      out.update(rep.first);
      return emit(out, rep.second);
    };

    if (name == "star") {
      out["product"] = opts.product;
      return binary(sf_star);
    }
    if (name == "bullet") return binary(sf_bullet);
    if (name == "commutator") {
      out["product"] = opts.product;
      return binary(sf_commutator);
    }
    if (name == "trace" || name == "integrate") {
      auto f = s.series(a);
      char* js = nullptr;
      check(name == "trace" ? sf_trace(s.ctx(), f.get(), &js) : sf_integrate(s.ctx(), f.get(), &js));
      out.update(s.number(js));
      return emit(out, 0);
    }
    if (name == "axioms") {
      sf_report* raw = nullptr;
      check(sf_axioms(s.ctx(), degree < 0 ? 3 : degree, opts.order.value_or(4), opts.seed.value_or(0),
                      opts.seed ? 3 : 0, &raw));
      return merge(s.report(raw, true));
    }
    if (name == "positivity") {
      auto t = s.functional(a);
      std::vector<Handle<sf_series>> ws;
      std::vector<const sf_series*> ptrs;
      for (const auto& w : rest) {
        ws.push_back(s.series(w));
        ptrs.push_back(ws.back().get());
      }
      sf_report* raw = nullptr;
      check(sf_positivity(s.ctx(), t.get(), ptrs.data(), ptrs.size(), samples ? samples->c_str() : nullptr, &raw));
      return merge(s.report(raw, true));
    }
    if (name == "normalize") {
      auto t = s.functional(a);
      sf_report* raw = nullptr;
      check(sf_normalize(s.ctx(), t.get(), plain ? 1 : 0, &raw));
      return merge(s.report(raw, false));
    }
    if (name == "eigencheck") {
      auto xi = s.series(a), value = s.series(b);
      auto t = s.functional(c);
      sf_report* raw = nullptr;
      check(sf_eigencheck(s.ctx(), xi.get(), value.get(), t.get(), degree < 0 ? 2 : degree, &raw));
      return merge(s.report(raw, true));
    }
    if (name == "region") {
      auto f = s.series(a);
      sf_report* raw = nullptr;
      check(sf_region(s.ctx(), f.get(), &raw));
      return merge(s.report(raw, false));
    }
  } catch (const EngineError& e) {
    Json err{{"code", sf_status_name(e.status)}, {"message", e.message}};
    if (e.offset >= 0) err["offset"] = e.offset;
    out["error"] = err;
    std::cerr << "starforge: " << e.message << "\n";
    return emit(out, 2);
  }
  return 2;
}
