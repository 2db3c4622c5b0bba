#ifndef VORBLOCH_H
#define VORBLOCH_H

#include <stddef.h>

#if defined(_WIN32)
#define VB_API __declspec(dllexport)
#else
#define VB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  VB_OK = 0,
  VB_FAIL = 1,          /* a checked identity is falsified */
  VB_INCONCLUSIVE = 2,  /* undecided at the requested precision or outside exact scope */
  VB_BUDGET = 3,        /* enumeration budget exhausted */
  VB_INPUT = 4,         /* malformed input or schema violation */
  VB_INTERNAL = 5
} vb_status;

typedef struct vb_field vb_field;
/* A validated JSON artifact (classes, complex, bloch, report or a pipeline summary). */
typedef struct vb_doc vb_doc;

VB_API const char* vb_version(void);
/* Message for the last non-OK status on this thread; empty when none. */
VB_API const char* vb_last_error(void);

VB_API vb_status vb_field_parse(const char* json_text, vb_field** out);
VB_API vb_status vb_field_load(const char* path, vb_field** out);
VB_API void vb_field_free(vb_field* f);
VB_API int vb_field_degree(const vb_field* f);
VB_API int vb_field_r2(const vb_field* f);
/* Canonical specification JSON, as embedded in artifacts; owned by the field. */
VB_API const char* vb_field_canonical(const vb_field* f);
/* Decimal discriminant; returns the length needed including the terminator. */
VB_API size_t vb_field_discriminant(const vb_field* f, char* buf, size_t len);

/* kind: "classes", "complex", "bloch" or "report"; NULL skips validation. */
VB_API vb_status vb_doc_parse(const char* json_text, const char* kind, vb_doc** out);
VB_API vb_status vb_doc_load(const char* path, const char* kind, vb_doc** out);
VB_API vb_status vb_doc_save(const vb_doc* d, const char* path);
/* Pretty JSON text and content hash; owned by the document. */
VB_API const char* vb_doc_text(const vb_doc* d);
VB_API const char* vb_doc_hash(const vb_doc* d);
VB_API void vb_doc_free(vb_doc* d);

/* Perfect form classes of dimension m over the field (all symmetric forms when the field is Q).
   Returns VB_BUDGET with a resumable partial document when the class budget runs out. */
VB_API vb_status vb_classes(const vb_field* f, int m, size_t budget, int reverse_traversal, const vb_doc* resume,
                            vb_doc** out);
/* Cell complex, homology and H_3 generators from complete m = 2 classes. */
VB_API vb_status vb_complex(const vb_doc* classes, int reversed_vertex_order, vb_doc** out);
/* Bloch elements of the H_3 generators with their verification certificates. */
VB_API vb_status vb_bloch(const vb_doc* complex, vb_doc** out);

typedef struct {
  int precision;
  long prime_bound;
  long k2, k3tor; /* <= 0: look up in k_table */
  const char* k_table; /* NULL: bundled table */
  double tolerance;
} vb_regulator_options;

VB_API void vb_regulator_options_init(vb_regulator_options* o);
VB_API vb_status vb_regulator(const vb_doc* bloch, const vb_regulator_options* o, vb_doc** out);

typedef struct {
  const char* field_path;
  const char* out_dir;
  const char* stop_after; /* "classes", "complex", "bloch" or "report" */
  int m;
  size_t class_budget;
  size_t equiv_budget;
  int reverse_traversal;
  int reversed_vertex_order;
  int use_cache;
  vb_regulator_options regulator;
} vb_pipeline_options;

VB_API void vb_pipeline_options_init(vb_pipeline_options* o);
/* Runs the stages with content-hash caching in out_dir; the summary lists stages and the final artifact. */
VB_API vb_status vb_verify(const vb_pipeline_options* o, vb_doc** summary);

/* Bloch-Wigner D at re + i im (decimal or p/q strings); value and certified radius as doubles. */
VB_API vb_status vb_dilog(const char* re, const char* im, int precision, double* value, double* radius);

#ifdef __cplusplus
}
#endif

#endif
