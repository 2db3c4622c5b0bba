#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "vorbloch.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s (%s)\n", __FILE__, __LINE__, \
              #cond, vb_last_error());                                 \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static char fields[1024], out[1024];

static const char* path(char* buf, const char* dir, const char* name) {
  if (snprintf(buf, 1024, "%s/%s", dir, name) >= 1024) {
    fprintf(stderr, "path too long\n");
    exit(2);
  }
  return buf;
}

static void field_basics(void) {
  char p[1024], disc[32];
  vb_field* f = NULL;
  EXPECT(vb_field_load(path(p, fields, "gaussian.json"), &f) == VB_OK);
  EXPECT(vb_field_degree(f) == 2);
  EXPECT(vb_field_r2(f) == 1);
  EXPECT(vb_field_discriminant(f, disc, sizeof disc) == 3);
  EXPECT(strcmp(disc, "-4") == 0);
  EXPECT(strstr(vb_field_canonical(f), "min_poly") != NULL);
  vb_field_free(f);

  f = NULL;
  EXPECT(vb_field_parse("{\"min_poly\": [\"-1\", \"0\", \"1\"]}", &f) == VB_INPUT);
  EXPECT(f == NULL);
  EXPECT(strlen(vb_last_error()) > 0);
  EXPECT(vb_field_parse("{ nope", &f) == VB_INPUT);
  EXPECT(vb_field_load(path(p, fields, "absent.json"), &f) == VB_INPUT);
  EXPECT(vb_field_parse(NULL, &f) == VB_INPUT);
  EXPECT(strlen(vb_version()) > 0);
}

static void stages(void) {
  char p[1024];
  vb_field* f = NULL;
  vb_doc *classes = NULL, *cx = NULL, *bl = NULL, *rep = NULL, *again = NULL;
  vb_regulator_options ro;
  EXPECT(vb_field_load(path(p, fields, "eisenstein.json"), &f) == VB_OK);
  EXPECT(vb_classes(f, 2, 100, 0, NULL, &classes) == VB_OK);
  EXPECT(vb_complex(classes, 0, &cx) == VB_OK);
  EXPECT(vb_bloch(cx, &bl) == VB_OK);
  vb_regulator_options_init(&ro);
  ro.prime_bound = 20000;
  ro.tolerance = 1e-3;
  EXPECT(vb_regulator(bl, &ro, &rep) == VB_OK);
  EXPECT(rep != NULL && strstr(vb_doc_text(rep), "\"verdict_A\"") != NULL);

  EXPECT(vb_doc_save(cx, path(p, out, "complex.json")) == VB_OK);
  EXPECT(vb_doc_load(p, "complex", &again) == VB_OK);
  EXPECT(again && strcmp(vb_doc_hash(again), vb_doc_hash(cx)) == 0);
  vb_doc_free(again);
  again = NULL;
  EXPECT(vb_doc_load(p, "bloch", &again) == VB_INPUT);

  {
    /* flip one digit of the stored text and reparse */
    char* text = strdup(vb_doc_text(classes));
    char* at = strstr(text, "\"min\": \"1\"");
    if (at) at[8] = '2';
    EXPECT(at != NULL);
    EXPECT(vb_doc_parse(text, "classes", &again) == VB_INPUT);
    EXPECT(strstr(vb_last_error(), "hash") != NULL);
    free(text);
  }

  ro.k2 = 0;
  ro.k_table = path(p, out, "absent-table.json");
  EXPECT(vb_regulator(bl, &ro, &again) == VB_INPUT);

  vb_doc_free(rep);
  vb_doc_free(bl);
  vb_doc_free(cx);
  vb_doc_free(classes);
  vb_field_free(f);
}

static void budget_and_resume(void) {
  vb_field* q = NULL;
  vb_doc *part = NULL, *full = NULL;
  EXPECT(vb_field_parse("{\"min_poly\": [\"0\", \"1\"]}", &q) == VB_OK);
  EXPECT(vb_classes(q, 4, 1, 0, NULL, &part) == VB_BUDGET);
  EXPECT(part != NULL && strstr(vb_doc_text(part), "\"complete\": false") != NULL);
  EXPECT(vb_classes(q, 4, 100, 0, part, &full) == VB_OK);
  EXPECT(full != NULL && strstr(vb_doc_text(full), "\"complete\": true") != NULL);
  EXPECT(vb_classes(q, 4, 0, 0, NULL, &full) == VB_INPUT);
  vb_doc_free(part);
  vb_doc_free(full);
  vb_field_free(q);
}

static void verify(void) {
  char p[1024], dir[1024];
  vb_pipeline_options o;
  vb_doc* s = NULL;
  vb_pipeline_options_init(&o);
  o.field_path = path(p, fields, "disc-7.json");
  o.out_dir = path(dir, out, "disc-7");
  o.regulator.prime_bound = 20000;
  o.regulator.tolerance = 1e-3;
  EXPECT(vb_verify(&o, &s) == VB_OK);
  EXPECT(s != NULL && strstr(vb_doc_text(s), "\"kind\": \"summary\"") != NULL);
  vb_doc_free(s);
  s = NULL;
  o.field_path = path(p, fields, "absent.json");
  EXPECT(vb_verify(&o, &s) == VB_INPUT);
  vb_doc_free(s);
  EXPECT(vb_verify(NULL, &s) == VB_INPUT);
}

static void dilog(void) {
  double v = 0, r = 0;
  EXPECT(vb_dilog("0", "1", 60, &v, &r) == VB_OK);
  EXPECT(fabs(v - 0.915965594177219015) < 1e-14);
  EXPECT(r < 1e-15);
  EXPECT(vb_dilog("1/2", "0", 60, &v, &r) == VB_OK);
  EXPECT(fabs(v) < 1e-15);
  EXPECT(vb_dilog("0.5", "2.25", 2, &v, &r) == VB_INPUT);
  EXPECT(vb_dilog("x", "1", 60, &v, &r) == VB_INPUT);
}

int main(int argc, char** argv) {
  if (argc != 3) {
    fprintf(stderr, "usage: test_capi FIELDS_DIR OUT_DIR\n");
    return 2;
  }
  snprintf(fields, sizeof fields, "%s", argv[1]);
  snprintf(out, sizeof out, "%s", argv[2]);
  {
    /* the pipeline creates the directory; reuse it for the stage-level files */
    vb_pipeline_options o;
    vb_doc* s = NULL;
    char p[1024];
    vb_pipeline_options_init(&o);
    o.field_path = path(p, fields, "gaussian.json");
    o.out_dir = out;
    o.stop_after = "classes";
    vb_verify(&o, &s);
    vb_doc_free(s);
  }
  field_basics();
  stages();
  budget_and_resume();
  verify();
  dilog();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("all C API checks passed\n");
  return failures ? 1 : 0;
}
