#ifndef MODINV_H
#define MODINV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MODINV_API __declspec(dllexport)
#else
#define MODINV_API __attribute__((visibility("default")))
#endif

typedef struct modinv_field modinv_field;
typedef struct modinv_poly modinv_poly;
typedef struct modinv_group modinv_group;

typedef enum modinv_status {
  MODINV_OK = 0,
  MODINV_INVALID_ARGUMENT = 1,
  MODINV_FIELD_MISMATCH = 2,
  MODINV_DIVISION_BY_ZERO = 3,
  MODINV_INEXACT_DIVISION = 4,
  MODINV_DIMENSION_MISMATCH = 5,
  MODINV_CAP_EXCEEDED = 6,
  MODINV_CLOSURE_VIOLATION = 7,
  MODINV_INVARIANCE_FAILURE = 8,
  MODINV_PARSE = 9,
  MODINV_BUDGET = 10,
  MODINV_UNSUPPORTED = 11,
  MODINV_INTERNAL = 100
} modinv_status;

/* Message for the last non-OK status on this thread; never NULL. */
MODINV_API const char* modinv_last_error(void);
MODINV_API const char* modinv_status_name(modinv_status status);
MODINV_API const char* modinv_version(void);
/* Frees any string returned through a char** out-parameter. */
MODINV_API void modinv_string_free(char* s);

MODINV_API modinv_status modinv_field_new(uint32_t p, uint32_t r, modinv_field** out);
MODINV_API modinv_status modinv_field_from_order(uint64_t q, modinv_field** out);
MODINV_API void modinv_field_free(modinv_field* field);
MODINV_API uint64_t modinv_field_order(const modinv_field* field);
MODINV_API modinv_status modinv_field_describe(const modinv_field* field, char** out);

/* space is "generic:n", "symplectic:m" or "gluing:m,n". */
MODINV_API modinv_status modinv_poly_parse(const modinv_field* field, const char* space, const char* text,
                                           modinv_poly** out);
MODINV_API void modinv_poly_free(modinv_poly* poly);
MODINV_API modinv_status modinv_poly_to_string(const modinv_poly* poly, char** out);
MODINV_API modinv_status modinv_poly_to_json(const modinv_poly* poly, char** out);
MODINV_API modinv_status modinv_poly_degree(const modinv_poly* poly, int64_t* out);
MODINV_API modinv_status modinv_poly_equal(const modinv_poly* a, const modinv_poly* b, int* out);
/* Sets *out to 1 when every generator of the group fixes the polynomial. */
MODINV_API modinv_status modinv_poly_is_invariant(const modinv_poly* poly, const modinv_group* group, int* out);

MODINV_API modinv_status modinv_dickson(const modinv_field* field, size_t n, size_t i, modinv_poly** out);
MODINV_API modinv_status modinv_xi(const modinv_field* field, size_t m, int64_t i, modinv_poly** out);
/* N_k evaluated at t, a polynomial in the symplectic space of rank m. */
MODINV_API modinv_status modinv_nk(const modinv_poly* t, size_t k, size_t m, modinv_poly** out);
/* Product of l + v over the F_q-span of basis[0..count). */
MODINV_API modinv_status modinv_orbit_product(const modinv_poly* l, const modinv_poly* const* basis, size_t count,
                                              modinv_poly** out);

/* JSON group spec, e.g. {"kind":"sp","m":2}. */
MODINV_API modinv_status modinv_group_new(const modinv_field* field, const char* spec_json, modinv_group** out);
/* JSON gluing spec, e.g. {"type":"glue","g1":{...},"g2":{...},"module":{"kind":"full"}}. */
MODINV_API modinv_status modinv_gluing_new(const modinv_field* field, const char* spec_json, modinv_group** out);
MODINV_API void modinv_group_free(modinv_group* group);
MODINV_API modinv_status modinv_group_order(modinv_group* group, uint64_t cap, uint64_t* out);
MODINV_API modinv_status modinv_group_to_json(const modinv_group* group, char** out);
/* For gluings: block sizes, orders and the psi(y_j) images. */
MODINV_API modinv_status modinv_gluing_describe(modinv_group* group, uint64_t cap, char** out);

MODINV_API modinv_status modinv_family_json(const modinv_field* field, const char* name, const char* params_json,
                                            char** out);
MODINV_API modinv_status modinv_family_names(char** out);

/* Runs one check and writes its report as a JSON object. */
MODINV_API modinv_status modinv_verify(const char* check, const char* params_json, uint64_t cap,
                                       uint32_t degree_bound, uint64_t seed, char** out);
/* Newline-separated check names. */
MODINV_API modinv_status modinv_check_names(char** out);

typedef struct modinv_run_options {
  /* Zero leaves the scenario's own setting in place. */
  uint64_t cap;
  uint32_t degree_bound;
  uint64_t seed;
  unsigned workers;
  /* Nonzero when the corresponding field above overrides the scenario. */
  int has_seed;
} modinv_run_options;

/* Runs a scenario; *jsonl receives one report per line and *summary the table. */
MODINV_API modinv_status modinv_run_scenario(const char* text, const modinv_run_options* options, char** jsonl,
                                             char** summary, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* MODINV_H */
