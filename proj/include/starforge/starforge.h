/* Stable C interface to the starforge engine.
 *
 * Handles are opaque and owned by the caller; every *_create / *_parse /
 * operation that returns a handle must be released with the matching
 * *_destroy. Strings returned through char** are released with
 * sf_string_free. On any status other than SF_OK the out-parameter is left
 * untouched and sf_last_error() describes the failure (per thread).
 */
#ifndef STARFORGE_H
#define STARFORGE_H

#include <stddef.h>

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sf_context sf_context;
typedef struct sf_series sf_series;
typedef struct sf_functional sf_functional;
typedef struct sf_report sf_report;

/* Values 1..14 coincide with the engine's error codes. */
typedef enum sf_status {
  SF_OK = 0,
  SF_ZERO_NOT_INVERTIBLE = 1,
  SF_FORMAL_MODE = 2,
  SF_TRUNCATED_TAIL = 3,
  SF_ALPHA_MISMATCH = 4,
  SF_UNKNOWN_COORDINATE = 5,
  SF_DIMENSION_MISMATCH = 6,
  SF_NOT_INTEGRABLE = 7,
  SF_ORDER_REQUIRED = 8,
  SF_NOT_NORMALIZABLE = 9,
  SF_NOT_SUPPORTED_FORM = 10,
  SF_PARSE_ERROR = 11,
  SF_INFINITE_PRINCIPAL_PART = 12,
  SF_INVALID_ARGUMENT = 13,
  SF_UNDECIDABLE = 14,
  SF_NULL_ARGUMENT = 98,
  SF_INTERNAL = 99
} sf_status;

SF_API const char* sf_status_name(sf_status status);
/* Message of the last failed call on this thread; "" when none. */
SF_API const char* sf_last_error(void);
/* Offset of the last parse error on this thread, or -1. */
SF_API long sf_last_error_offset(void);
SF_API void sf_string_free(char* s);

/* Context: pair count, product family, lambda binding and truncation order. */
SF_API sf_status sf_context_create(int pairs, sf_context** out);
SF_API void sf_context_destroy(sf_context* ctx);
/* "moyal" (default) or "bullet". */
SF_API sf_status sf_context_set_product(sf_context* ctx, const char* name);
/* Positive rational such as "1/3"; NULL restores the formal mode. */
SF_API sf_status sf_context_set_lambda(sf_context* ctx, const char* value);
/* Truncation order for non-terminating expansions; negative clears it. */
SF_API sf_status sf_context_set_order(sf_context* ctx, int order);

SF_API sf_status sf_series_parse(const sf_context* ctx, const char* text, sf_series** out);
SF_API void sf_series_destroy(sf_series* s);
SF_API sf_status sf_series_render(const sf_context* ctx, const sf_series* s, char** out);
SF_API sf_status sf_series_to_json(const sf_series* s, char** out);
SF_API int sf_series_is_exact(const sf_series* s);

SF_API sf_status sf_star(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out);
SF_API sf_status sf_bullet(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out);
SF_API sf_status sf_commutator(const sf_context* ctx, const sf_series* a, const sf_series* b, sf_series** out);

/* Number-valued results come back as JSON text with "result" and "series". */
SF_API sf_status sf_trace(const sf_context* ctx, const sf_series* a, char** out_json);
SF_API sf_status sf_integrate(const sf_context* ctx, const sf_series* a, char** out_json);

SF_API sf_status sf_functional_parse(const sf_context* ctx, const char* text, sf_functional** out);
SF_API void sf_functional_destroy(sf_functional* t);
SF_API sf_status sf_functional_render(const sf_context* ctx, const sf_functional* t, char** out);

/* Reports carry a verdict and a JSON payload. */
SF_API int sf_report_passed(const sf_report* r);
SF_API sf_status sf_report_json(const sf_report* r, char** out);
SF_API void sf_report_destroy(sf_report* r);

/* Extra random generators are drawn from `seed` when random_count > 0. */
SF_API sf_status sf_axioms(const sf_context* ctx, int degree_bound, int order_bound, unsigned long seed,
                           int random_count, sf_report** out);
/* lambda_samples: comma-separated positive rationals, NULL for the default set. */
SF_API sf_status sf_positivity(const sf_context* ctx, const sf_functional* t, const sf_series* const* witnesses,
                               size_t witness_count, const char* lambda_samples, sf_report** out);
/* plain != 0 normalizes with the plain pairing instead of the star pairing. */
SF_API sf_status sf_normalize(const sf_context* ctx, const sf_functional* t, int plain, sf_report** out);
/* Bullet product: bullet eigen system. Moyal: star eigen system in the
 * context's lambda binding. `a` must be coordinate-free. */
SF_API sf_status sf_eigencheck(const sf_context* ctx, const sf_series* xi, const sf_series* a,
                               const sf_functional* t, int test_degree, sf_report** out);
SF_API sf_status sf_region(const sf_context* ctx, const sf_series* f, sf_report** out);

#ifdef __cplusplus
}
#endif

#endif /* STARFORGE_H */
