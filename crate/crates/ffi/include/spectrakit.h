#ifndef SPECTRAKIT_H
#define SPECTRAKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes. `SK_STATUS_OK` is zero; every other value is a failure.
typedef enum sk_status {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_UTF8 = 2,
  SK_STATUS_NOT_HYPERBOLIC = 3,
  SK_STATUS_DOMAIN = 4,
  SK_STATUS_DEGENERATE_SURFACE = 5,
  SK_STATUS_INCONSISTENT_DATA = 6,
  SK_STATUS_NO_SOLUTION = 7,
  SK_STATUS_BUDGET_EXHAUSTED = 8,
  SK_STATUS_INCOMPARABLE_CUTOFFS = 9,
  SK_STATUS_UNCERTIFIED = 10,
  SK_STATUS_CUTOFF_EXCEEDED = 11,
  SK_STATUS_INDISTINGUISHABLE = 12,
  SK_STATUS_NO_CANDIDATE_MATCHES = 13,
  SK_STATUS_INVALID_CONTEXT = 14,
  SK_STATUS_WORD = 15,
  SK_STATUS_IO = 16,
  SK_STATUS_FORMAT = 17,
  SK_STATUS_OUT_OF_RANGE = 18,
  SK_STATUS_PANIC = 19,
} sk_status;

typedef struct sk_oracle sk_oracle;

typedef struct sk_spectrum sk_spectrum;

// A surface together with its Fuchsian group.
typedef struct sk_surface sk_surface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *sk_last_error(void);

// Library version as a static NUL-terminated string.
const char *sk_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void sk_string_free(char *s);

// One-holed torus with interior curve length, twist and boundary length.
//
// # Safety
// `out` must be a valid pointer.
enum sk_status sk_surface_torus(double interior_length,
                                double twist,
                                double boundary_length,
                                struct sk_surface **out);

// Closed genus-2 surface from three cuff lengths and three twists.
//
// # Safety
// `cuffs` and `twists` must point to three doubles each; `out` must be valid.
enum sk_status sk_surface_genus2(const double *cuffs,
                                 const double *twists,
                                 struct sk_surface **out);

// Surface from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid.
enum sk_status sk_surface_from_json(const char *json, struct sk_surface **out);

// # Safety
// `s` must be null or a handle from this library, not yet freed.
void sk_surface_free(struct sk_surface *s);

// Genus of the surface (1 for a one-holed torus), or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
uint64_t sk_surface_genus(const struct sk_surface *s);

// Length of the closed geodesic of a word such as `"ABab"`.
//
// # Safety
// `s` must be a live handle, `word` a NUL-terminated string, `out` valid.
enum sk_status sk_surface_curve_length(const struct sk_surface *s, const char *word, double *out);

// Certified length spectrum up to `cutoff`. `workers == 0` uses all cores.
//
// # Safety
// `s` must be a live handle and `out` valid.
enum sk_status sk_spectrum_compute(const struct sk_surface *s,
                                   double cutoff,
                                   uintptr_t max_word_length,
                                   uintptr_t workers,
                                   struct sk_spectrum **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be valid.
enum sk_status sk_spectrum_from_json(const char *json, struct sk_spectrum **out);

// # Safety
// `sp` must be a live handle; `out` must be valid.
enum sk_status sk_spectrum_to_json(const struct sk_spectrum *sp, char **out);

// # Safety
// `sp` must be null or a live handle.
void sk_spectrum_free(struct sk_spectrum *sp);

// Number of distinct lengths, or 0 for a null handle.
//
// # Safety
// `sp` must be null or a live handle.
uintptr_t sk_spectrum_len(const struct sk_spectrum *sp);

// # Safety
// `sp` must be null or a live handle.
double sk_spectrum_cutoff(const struct sk_spectrum *sp);

// # Safety
// `sp` must be null or a live handle.
bool sk_spectrum_certified(const struct sk_spectrum *sp);

// Entry `i` in increasing length order.
//
// # Safety
// `sp` must be a live handle; `length` and `multiplicity` must be valid.
enum sk_status sk_spectrum_entry(const struct sk_spectrum *sp,
                                 uintptr_t i,
                                 double *length,
                                 uint64_t *multiplicity);

// Compares two spectra up to `cutoff`. `first_discrepancy` receives the
// 1-based index of the first differing expanded entry, or 0.
//
// # Safety
// Handles must be live and output pointers valid.
enum sk_status sk_spectrum_compare(const struct sk_spectrum *a,
                                   const struct sk_spectrum *b,
                                   double cutoff,
                                   double tolerance,
                                   bool *isospectral,
                                   uintptr_t *first_discrepancy);

// # Safety
// `out` must be valid.
enum sk_status sk_mu(double x, double y, double z, double *out);

// # Safety
// `out` must be valid.
enum sk_status sk_eta(double x, double y, double z, double *out);

// `1 − Σ μ(x, ℓ, ℓ)` over simple geodesics up to `cutoff` on a one-holed torus.
//
// # Safety
// `s` must be a live handle; `deficit` must be valid; `terms` may be null.
enum sk_status sk_mcshane_deficit(const struct sk_surface *s,
                                  double cutoff,
                                  double *deficit,
                                  uintptr_t *terms);

// Every named bound at genus `g`, as a JSON object.
//
// # Safety
// `out` must be valid.
enum sk_status sk_bounds_json(uint32_t g, char **out);

// `ln g^{154 g}`.
//
// # Safety
// `out` must be valid.
enum sk_status sk_bounds_maincount(uint32_t g, double *out);

// Oracle over a copy of a certified spectrum.
//
// # Safety
// `sp` must be a live handle and `out` valid.
enum sk_status sk_oracle_new(const struct sk_spectrum *sp, struct sk_oracle **out);

// Smallest value of the spectrum after removing `n` excluded values.
//
// # Safety
// `o` must be a live handle; `exclusions` must point to `n` doubles (or be
// null when `n` is 0); `answer` must be valid.
enum sk_status sk_oracle_ask(struct sk_oracle *o,
                             const double *exclusions,
                             uintptr_t n,
                             double *answer);

// Questions answered so far, or 0 for a null handle.
//
// # Safety
// `o` must be null or a live handle.
uint64_t sk_oracle_questions(const struct sk_oracle *o);

// # Safety
// `o` must be null or a live handle.
void sk_oracle_free(struct sk_oracle *o);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRAKIT_H */
