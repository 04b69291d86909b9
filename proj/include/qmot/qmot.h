#ifndef QMOT_QMOT_H
#define QMOT_QMOT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QMOT_BUILDING_LIBRARY)
#define QMOT_API __attribute__((visibility("default")))
#else
#define QMOT_API
#endif

typedef enum qmot_status {
  QMOT_OK = 0,
  QMOT_VERDICT_FAIL = 1,
  QMOT_INVALID_INPUT = 2,
  QMOT_RESOURCE = 3,
  QMOT_INTERNAL = 4
} qmot_status;

typedef struct qmot_context qmot_context;
typedef struct qmot_correspondence qmot_correspondence;

QMOT_API const char* qmot_version(void);
/* Message of the last failing call on this thread; empty after success. */
QMOT_API const char* qmot_last_error(void);
/* Strings returned through char** are owned by the caller. */
QMOT_API void qmot_string_free(char* s);

QMOT_API qmot_status qmot_context_from_json(const char* json, qmot_context** out);
QMOT_API qmot_status qmot_context_to_json(const qmot_context* ctx, char** out);
QMOT_API void qmot_context_free(qmot_context* ctx);

QMOT_API qmot_status qmot_correspondence_from_json(const char* json, qmot_correspondence** out);
QMOT_API qmot_status qmot_correspondence_to_json(const qmot_correspondence* c, char** out);
QMOT_API void qmot_correspondence_free(qmot_correspondence* c);

/* Idempotent mod 2 -> idempotent mod 2^n, rational in ctx. */
QMOT_API qmot_status qmot_lift_mod2_to_mod2n(const qmot_correspondence* pi, const qmot_context* ctx,
                                             qmot_correspondence** out);
/* Idempotent mod 2^n -> integral idempotent. */
QMOT_API qmot_status qmot_lift_projector(const qmot_correspondence* tau, const qmot_context* ctx,
                                         qmot_correspondence** out);
/* On success *isomorphic is 1 and iso/inverse are set, or 0 with a reason
   in *reason. Any out pointer may be NULL. */
QMOT_API qmot_status qmot_lift_isomorphism(const qmot_correspondence* rho, const qmot_correspondence* sigma,
                                           const qmot_correspondence* alpha, const qmot_context* ctx,
                                           int* isomorphic, qmot_correspondence** iso,
                                           qmot_correspondence** inverse, char** reason);

QMOT_API qmot_status qmot_classify_json(const qmot_correspondence* projector, const qmot_context* ctx,
                                        char** out_json);
/* Idempotents mod 2 on the first quadric of ctx. */
QMOT_API qmot_status qmot_enumerate_idempotents_json(const qmot_context* ctx, char** out_json);
/* witt < 0 runs every isotropy level. Returns QMOT_VERDICT_FAIL with a
   report when the check fails. A nonzero use_seed adds a seeded random
   algebra sample to the report. */
QMOT_API qmot_status qmot_verify_json(int dim_max, int n, int galois_r, int witt, int use_seed,
                                      unsigned long long seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
