#ifndef LENGENLAB_H
#define LENGENLAB_H

#include <stddef.h>

#ifndef LGL_EXPORT
#define LGL_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgl_status {
  LGL_OK = 0,
  LGL_ERR_ARGUMENT = 1,        /* bad argument or malformed input */
  LGL_ERR_CONFIG = 2,          /* desk-scale cap exceeded without force */
  LGL_ERR_UNDECIDABLE = 3,     /* request needs an undecidable procedure */
  LGL_ERR_NO_INTERPOLANT = 4,  /* nothing within the cap fits the data */
  LGL_ERR_INCONSISTENT = 5,    /* data violates the state-count promise */
  LGL_ERR_BUDGET = 6,          /* DP oracle exceeded LENGENLAB_MEM_MB */
  LGL_ERR_PIPELINE = 7,        /* distinguisher pipeline invariant broke */
  LGL_ERR_INTERNAL = 99
} lgl_status;

typedef struct lgl_model lgl_model;
typedef struct lgl_dataset lgl_dataset;

/* Message for the last failing call on this thread; never NULL. */
LGL_EXPORT const char* lgl_last_error(void);
LGL_EXPORT const char* lgl_version(void);
/* Every char* handed out by the library is released with this. */
LGL_EXPORT void lgl_string_free(char* s);

/* kind: "dfa", "cfg", "crasp1", "crasp2", or NULL to infer it from the JSON. */
LGL_EXPORT lgl_status lgl_model_from_json(const char* json, const char* kind, lgl_model** out);
LGL_EXPORT void lgl_model_free(lgl_model* m);
LGL_EXPORT lgl_status lgl_model_to_json(const lgl_model* m, char** out);
LGL_EXPORT lgl_status lgl_model_kind(const lgl_model* m, char** out);
/* bits: '0'/'1' characters; "" or "EPS" is the empty string. */
LGL_EXPORT lgl_status lgl_model_eval(const lgl_model* m, const char* bits, int* out);
LGL_EXPORT lgl_status lgl_model_complexity(const lgl_model* m, long long* out);

LGL_EXPORT lgl_status lgl_dataset_build(const lgl_model* m, int horizon, lgl_dataset** out);
/* CSV with header "string,label". */
LGL_EXPORT lgl_status lgl_dataset_from_csv(const char* csv, lgl_dataset** out);
LGL_EXPORT lgl_status lgl_dataset_to_csv(const lgl_dataset* d, char** out);
LGL_EXPORT lgl_status lgl_dataset_horizon(const lgl_dataset* d, int* out);
LGL_EXPORT void lgl_dataset_free(lgl_dataset* d);

/* Minimum-complexity interpolator over the class "dfa" (cap = states <= 4),
   "crasp1" (cap = T) or "crasp2" (cap = T, heads = K). */
LGL_EXPORT lgl_status lgl_learn_mci(const lgl_dataset* d, const char* kind, int cap, int heads, lgl_model** out);
/* depth < 0 selects the default suffix depth n - 2. */
LGL_EXPORT lgl_status lgl_learn_dfa(const lgl_dataset* d, int n, int depth, lgl_model** out);

/* CSV "c,N_value,witness_f,witness_g,witness_x", one row per level 1..param.
   With per_hypothesis set, the CSV instead lists each ground truth's MCI
   convergence length at level param. */
LGL_EXPORT lgl_status lgl_length_complexity(const char* kind, int param, int heads, int jobs, int per_hypothesis,
                                            int force, char** out);

/* mode "pipeline": the class's own construction (C-RASP^2 certificate,
   C-RASP^1 lattice point, DFA product search); JSON has "equal".
   mode "brute": shortest, then least, witness up to max_n; JSON has "found". */
LGL_EXPORT lgl_status lgl_distinguish(const lgl_model* f, const lgl_model* g, const char* mode, long long max_n,
                                      char** out);

typedef struct lgl_experiment {
  const char* kind; /* dfa | crasp1 | crasp2 | cfg */
  int lo, hi;       /* c for DFAs, T for C-RASP */
  int heads;        /* K, C-RASP^2 only */
  size_t sample;    /* 0 = exhaustive */
  int jobs;
  unsigned long long seed;
  int force;
} lgl_experiment;

/* csv: class,parameter,empirical_N,bound,pass,note. all_pass is 1 iff every
   row passed. Either output pointer may be NULL. */
LGL_EXPORT lgl_status lgl_verify_bounds(const lgl_experiment* cfg, char** csv, char** summary_json, int* all_pass);

/* JSON list of {"curves": ..., "M": ...} for the basis schemas on k lines. */
LGL_EXPORT lgl_status lgl_schema_list(int k, char** out);
/* slopes: comma-separated "num/den" values in (0,1). */
LGL_EXPORT lgl_status lgl_discretize(const char* slopes, const char* schema_json, const char* lengths_json,
                                     long long n, char** out);

#ifdef __cplusplus
}
#endif

#endif
