/* C interface of the confsym engine. Every result is a UTF-8 JSON document
 * returned through an out-parameter and released with confsym_free_string.
 * Rationals are passed as strings "a" or "a/b". */
#ifndef CONFSYM_H
#define CONFSYM_H

#include <stddef.h>

#if defined(_WIN32)
#define CONFSYM_API __declspec(dllexport)
#else
#define CONFSYM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum confsym_status {
  CONFSYM_OK = 0,
  /* The computation ran; the document reports a failed verification. */
  CONFSYM_VERIFICATION_FAILED = 1,
  CONFSYM_E_USAGE = 2,
  CONFSYM_E_PARSE = 3,
  CONFSYM_E_DIMENSION = 4,
  CONFSYM_E_INDEX = 5,
  CONFSYM_E_RESONANCE = 6,
  CONFSYM_E_WEIGHT = 7,
  CONFSYM_E_DEGREE = 8,
  CONFSYM_E_NO_SOLUTION = 9,
  CONFSYM_E_INTERNAL = 10
} confsym_status;

typedef struct confsym_session confsym_session;

CONFSYM_API const char* confsym_version(void);
CONFSYM_API const char* confsym_status_name(confsym_status status);

/* Signature (p, q) with p + q >= 3. Returns NULL on invalid input and stores
 * the reason in *status when status is non-NULL. */
CONFSYM_API confsym_session* confsym_session_new(int p, int q, confsym_status* status);
CONFSYM_API void confsym_session_free(confsym_session* session);
/* Message of the last failing call on this session ("" if none). */
CONFSYM_API const char* confsym_last_error(const confsym_session* session);
/* Cap on symbol degrees accepted by later calls; <= 0 removes the cap. */
CONFSYM_API void confsym_set_max_degree(confsym_session* session, int max_degree);

CONFSYM_API void confsym_free_string(char* text);

/* Generator count, bracket closure and Killing determinant. */
CONFSYM_API confsym_status confsym_algebra_check(confsym_session* s, char** out_json);

/* Invariant operators S_{k,s} -> S_{kp,sp}; s or sp < 0 selects the full
 * space. bound <= 0 uses the default search bound. */
CONFSYM_API confsym_status confsym_classify(confsym_session* s, int k, int sub, int kp, int subp, const char* delta,
                                            const char* delta_p, int bound, char** out_json);

/* PhasePoly document -> DiffOp document with weights (lambda, mu). */
CONFSYM_API confsym_status confsym_quantize(confsym_session* s, const char* lambda, const char* mu,
                                            const char* symbol_json, char** out_json);
/* DiffOp document -> PhasePoly document. */
CONFSYM_API confsym_status confsym_dequantize(confsym_session* s, const char* op_json, char** out_json);
/* QuantMap document for degree k at shift delta; tracefree != 0 restricts to
 * trace-free symbols. */
CONFSYM_API confsym_status confsym_quantize_solve(confsym_session* s, int k, const char* delta, const char* lambda,
                                                  int tracefree, char** out_json);

/* KillingBasis document; bound < 0 uses the default. */
CONFSYM_API confsym_status confsym_ckt(confsym_session* s, int k, int sub, int bound, char** out_json);
/* SymmetryCheck document for a PhasePoly (or KillingBasis: every element). */
CONFSYM_API confsym_status confsym_symmetry_verify(confsym_session* s, int ell, const char* symbol_json,
                                                   char** out_json);

/* StarComponent document for B_m(a, b). */
CONFSYM_API confsym_status confsym_star(confsym_session* s, const char* lambda, int m, const char* a_json,
                                        const char* b_json, char** out_json);
CONFSYM_API confsym_status confsym_star_check(confsym_session* s, const char* lambda, int max_degree,
                                              char** out_json);

/* which: "I2", "Jlambda2" or "joseph". lambda may be NULL for I2 and joseph
 * (the latter then uses (n-2)/2n). */
CONFSYM_API confsym_status confsym_ideal(confsym_session* s, const char* which, const char* lambda,
                                         char** out_json);

/* Acceptance criteria (ids in 1..11; count 0 runs all). */
CONFSYM_API confsym_status confsym_report(confsym_session* s, const int* ids, size_t count, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
