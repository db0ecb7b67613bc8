/* SPDX-License-Identifier: Apache-2.0 */
#ifndef HIER_HIER_H
#define HIER_HIER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HIER_BUILDING)
#    define HIER_API __declspec(dllexport)
#  else
#    define HIER_API __declspec(dllimport)
#  endif
#else
#  define HIER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hier_status {
  HIER_OK = 0,
  HIER_E_VALIDATION = 1, /* malformed input */
  HIER_E_DOMAIN = 2,     /* well-formed input outside the operation's domain */
  HIER_E_ARITY = 3,      /* operands of different arity */
  HIER_E_ARGUMENT = 4,   /* null pointer or bad scalar argument */
  HIER_E_INTERNAL = 5    /* invariant violation inside the library */
} hier_status;

/* Message for the last failing call on this thread; never NULL. */
HIER_API const char* hier_last_error(void);
/* Releases any char* returned through an out parameter. */
HIER_API void hier_string_free(char* s);

/* ---- elements (prefix-exchange tables) ---- */

typedef struct hier_element hier_element;

HIER_API hier_status hier_element_parse(const char* text, hier_element** out);
HIER_API hier_status hier_element_identity(int arity, hier_element** out);
HIER_API hier_status hier_element_random(int arity, size_t budget, uint64_t seed,
                                         hier_element** out);
HIER_API hier_status hier_element_translation(int arity, hier_element** out);
HIER_API void hier_element_free(hier_element* g);

HIER_API hier_status hier_element_serialize(const hier_element* g, char** out);
HIER_API int hier_element_arity(const hier_element* g);

/* out = g after h */
HIER_API hier_status hier_element_compose(const hier_element* g, const hier_element* h,
                                          hier_element** out);
HIER_API hier_status hier_element_invert(const hier_element* g, hier_element** out);
HIER_API hier_status hier_element_equals(const hier_element* g, const hier_element* h,
                                         int* out);
HIER_API hier_status hier_element_is_automorphism(const hier_element* g, int* out);
/* Common (|v| - |u|) mod 2 of the table rows, or -1 when the rows disagree. */
HIER_API hier_status hier_element_parity(const hier_element* g, int* out);
HIER_API hier_status hier_element_coset_code(const hier_element* g, char** out);
/* Text (or DOT when dot != 0) of the bi-thorn, reduced when reduced != 0. */
HIER_API hier_status hier_element_bithorn(const hier_element* g, int reduced, int dot,
                                          char** out);
/* "word -> image" for every word of the given length. */
HIER_API hier_status hier_element_truncated_action(const hier_element* g, size_t depth,
                                                   char** out);

HIER_API size_t hier_thompson_generator_count(void);
/* name may be NULL; otherwise receives the generator name. */
HIER_API hier_status hier_thompson_generator(size_t index, hier_element** out, char** name);

/* ---- clopen sets and thorns ---- */

typedef struct hier_clopen hier_clopen;

HIER_API hier_status hier_clopen_parse(const char* text, hier_clopen** out);
HIER_API void hier_clopen_free(hier_clopen* omega);
HIER_API hier_status hier_clopen_serialize(const hier_clopen* omega, char** out);
HIER_API hier_status hier_clopen_upsilon(const hier_clopen* omega, int* out);
HIER_API hier_status hier_clopen_classify(const hier_clopen* omega, char** token);
/* The reduced thorn of omega as sub-thorn text (or DOT when dot != 0). */
HIER_API hier_status hier_clopen_thorn(const hier_clopen* omega, int dot, char** out);
HIER_API hier_status hier_clopen_act(const hier_element* g, const hier_clopen* omega,
                                     hier_clopen** out);

/* Embeddings of a thorn class meeting a region given as sub-thorn text; one
 * "vertices ... ; spikes ..." line per embedding. */
HIER_API hier_status hier_enum_thorns(const char* pattern_token, const char* region_text,
                                      int radius, char** out);
/* Tokens of reduced classes with at most max_vertices vertices; iota < 0
 * means any residue. One "token vertices spikes" line per class. */
HIER_API hier_status hier_reduced_classes(int arity, int max_vertices, int iota, char** out);

/* ---- orbit transition counts ---- */

/* table_text: "arity", "iota", "classes" lines (a spherical spec also works).
 * brute_depth > 0 selects the brute-force oracle with that depth cap. */
HIER_API hier_status hier_theta(const hier_element* g, const char* table_text, int brute_depth,
                                char** out);

/* ---- spherical functions ---- */

typedef struct hier_phi hier_phi;

HIER_API hier_status hier_spec_validate(const char* spec_text, double tol, int* valid,
                                        char** report);
HIER_API hier_status hier_phi_nessonov(const char* spec_text, hier_phi** out);
HIER_API hier_status hier_phi_tensor(const char* tensor_text, hier_phi** out);
HIER_API hier_status hier_phi_l2(hier_phi** out);
HIER_API hier_status hier_phi_product(const hier_phi* a, const hier_phi* b, hier_phi** out);
HIER_API void hier_phi_free(hier_phi* phi);
HIER_API hier_status hier_phi_eval(const hier_phi* phi, const hier_element* g, double* out);
/* Tensor value plus the flag raised when a class above the cap was involved. */
HIER_API hier_status hier_tensor_eval(const char* tensor_text, const hier_element* g,
                                      double* value, int* cap_lumped);
HIER_API hier_status hier_gram_check(const hier_phi* phi, const hier_element* const* elements,
                                     size_t count, double tol, int* pass, char** report);

#ifdef __cplusplus
}
#endif

#endif /* HIER_HIER_H */
