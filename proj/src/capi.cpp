#include "vorbloch.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "vorbloch/pipeline.hpp"

using namespace vorbloch;

struct vb_field {
  NumberField F;
  std::string canonical;
};

struct vb_doc {
  json doc;
  std::string text, hash;
};

namespace {

thread_local std::string last_error;

vb_status fail(vb_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

vb_doc* make_doc(json d) {
  auto* p = new vb_doc;
  p->text = d.dump(1) + "\n";
  p->hash = d.contains("hash") && d["hash"].is_string() ? d["hash"].get<std::string>() : content_hash(d);
  p->doc = std::move(d);
  return p;
}

Rational parse_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return parse_rational(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  Integer den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  Rational q(parse_integer(digits), den);
  q.canonicalize();
  return q;
}

template <class Fn>
vb_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const StageError& e) {
    return fail(static_cast<vb_status>(e.code), e.what());
  } catch (const SchemaError& e) {
    return fail(VB_INPUT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(VB_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(VB_INTERNAL, e.what());
  }
}

RegulatorParams regulator_params(const vb_regulator_options* o) {
  vb_regulator_options d;
  vb_regulator_options_init(&d);
  if (!o) o = &d;
  RegulatorParams p;
  p.precision = o->precision;
  p.prime_bound = o->prime_bound;
  if (o->k2 > 0) p.k2 = o->k2;
  if (o->k3tor > 0) p.k3tor = o->k3tor;
  if (o->k_table) p.k_table = o->k_table;
  p.tolerance = o->tolerance;
  return p;
}

}  // namespace

extern "C" {

const char* vb_version(void) { return "0.1.0"; }

const char* vb_last_error(void) { return last_error.c_str(); }

vb_status vb_field_parse(const char* json_text, vb_field** out) {
  return guarded([&] {
    if (!json_text || !out) return fail(VB_INPUT, "null argument");
    json j;
    try {
      j = json::parse(json_text);
    } catch (const json::parse_error& e) {
      return fail(VB_INPUT, std::string("$: invalid JSON: ") + e.what());
    }
    NumberField F = field_from_json(j);
    *out = new vb_field{F, field_to_json(F).dump()};
    return VB_OK;
  });
}

vb_status vb_field_load(const char* path, vb_field** out) {
  return guarded([&] {
    if (!path || !out) return fail(VB_INPUT, "null argument");
    NumberField F = field_from_json(read_json_file(path));
    *out = new vb_field{F, field_to_json(F).dump()};
    return VB_OK;
  });
}

void vb_field_free(vb_field* f) { delete f; }

int vb_field_degree(const vb_field* f) { return f ? f->F.degree() : 0; }

int vb_field_r2(const vb_field* f) { return f ? f->F.r2() : 0; }

const char* vb_field_canonical(const vb_field* f) { return f ? f->canonical.c_str() : ""; }

size_t vb_field_discriminant(const vb_field* f, char* buf, size_t len) {
  if (!f) return 0;
  std::string s = to_string(f->F.disc());
  if (buf && len) {
    std::strncpy(buf, s.c_str(), len - 1);
    buf[len - 1] = '\0';
  }
  return s.size() + 1;
}

vb_status vb_doc_parse(const char* json_text, const char* kind, vb_doc** out) {
  return guarded([&] {
    if (!json_text || !out) return fail(VB_INPUT, "null argument");
    json j;
    try {
      j = json::parse(json_text);
    } catch (const json::parse_error& e) {
      return fail(VB_INPUT, std::string("$: invalid JSON: ") + e.what());
    }
    if (kind) validate(j, kind);
    *out = make_doc(std::move(j));
    return VB_OK;
  });
}

vb_status vb_doc_load(const char* path, const char* kind, vb_doc** out) {
  return guarded([&] {
    if (!path || !out) return fail(VB_INPUT, "null argument");
    json j = read_json_file(path);
    if (kind) validate(j, kind);
    *out = make_doc(std::move(j));
    return VB_OK;
  });
}

vb_status vb_doc_save(const vb_doc* d, const char* path) {
  return guarded([&] {
    if (!d || !path) return fail(VB_INPUT, "null argument");
    write_json_file(path, d->doc);
    return VB_OK;
  });
}

const char* vb_doc_text(const vb_doc* d) { return d ? d->text.c_str() : ""; }

const char* vb_doc_hash(const vb_doc* d) { return d ? d->hash.c_str() : ""; }

void vb_doc_free(vb_doc* d) { delete d; }

vb_status vb_classes(const vb_field* f, int m, size_t budget, int reverse_traversal, const vb_doc* resume, vb_doc** out) {
  return guarded([&] {
    if (!f || !out) return fail(VB_INPUT, "null argument");
    if (budget == 0) return fail(VB_INPUT, "budget must be positive");
    ClassesParams p;
    p.m = m;
    p.enumeration.budget = budget;
    p.enumeration.reverse_rays = reverse_traversal != 0;
    json d = stage_classes(f->F, p, resume ? &resume->doc : nullptr);
    bool complete = d["complete"];
    *out = make_doc(std::move(d));
    return complete ? VB_OK : fail(VB_BUDGET, "class budget exhausted");
  });
}

vb_status vb_complex(const vb_doc* classes, int reversed_vertex_order, vb_doc** out) {
  return guarded([&] {
    if (!classes || !out) return fail(VB_INPUT, "null argument");
    json d = stage_complex(classes->doc, reversed_vertex_order ? VertexOrder::Reversed : VertexOrder::Canonical);
    bool ok = d["dd_zero"].get<bool>() && !d["h3"].empty();
    *out = make_doc(std::move(d));
    return ok ? VB_OK : fail(VB_FAIL, "d o d != 0 or H_3 without generator");
  });
}

vb_status vb_bloch(const vb_doc* complex, vb_doc** out) {
  return guarded([&] {
    if (!complex || !out) return fail(VB_INPUT, "null argument");
    json d = stage_bloch(complex->doc);
    vb_status s = VB_OK;
    for (const auto& e : d["elements"])
      if (!e["certificate"]["passed"].get<bool>())
        s = e["certificate"]["regime"] == "exact" ? VB_FAIL : VB_INCONCLUSIVE;
    *out = make_doc(std::move(d));
    return s == VB_OK ? s : fail(s, "Bloch verification did not pass");
  });
}

void vb_regulator_options_init(vb_regulator_options* o) {
  if (!o) return;
  o->precision = 60;
  o->prime_bound = 10000000;
  o->k2 = 0;
  o->k3tor = 0;
  o->k_table = nullptr;
  o->tolerance = 1e-6;
}

vb_status vb_regulator(const vb_doc* bloch, const vb_regulator_options* o, vb_doc** out) {
  return guarded([&] {
    if (!bloch || !out) return fail(VB_INPUT, "null argument");
    RegulatorParams p = regulator_params(o);
    if (p.precision < 8) return fail(VB_INPUT, "precision must be at least 8 bits");
    if (p.prime_bound < 17) return fail(VB_INPUT, "prime bound must be at least 17");
    json d = stage_report(bloch->doc, p);
    int code = d["exit_code"];
    *out = make_doc(std::move(d));
    return code == 0 ? VB_OK : fail(static_cast<vb_status>(code), "report verdicts did not all pass");
  });
}

void vb_pipeline_options_init(vb_pipeline_options* o) {
  if (!o) return;
  o->field_path = nullptr;
  o->out_dir = ".";
  o->stop_after = "report";
  o->m = 2;
  o->class_budget = 1000;
  o->equiv_budget = 5000000;
  o->reverse_traversal = 0;
  o->reversed_vertex_order = 0;
  o->use_cache = 1;
  vb_regulator_options_init(&o->regulator);
}

vb_status vb_verify(const vb_pipeline_options* o, vb_doc** summary) {
  return guarded([&] {
    if (!o || !o->field_path || !summary) return fail(VB_INPUT, "null argument");
    PipelineConfig c;
    c.field_path = o->field_path;
    c.out_dir = o->out_dir ? o->out_dir : ".";
    c.stop_after = o->stop_after ? o->stop_after : "report";
    c.m = o->m;
    c.class_budget = o->class_budget;
    c.equiv_budget = o->equiv_budget;
    c.reverse_traversal = o->reverse_traversal != 0;
    c.order = o->reversed_vertex_order ? VertexOrder::Reversed : VertexOrder::Canonical;
    c.use_cache = o->use_cache != 0;
    c.regulator = regulator_params(&o->regulator);
    PipelineResult r = run_pipeline(c);
    json stages = json::array();
    for (const auto& s : r.stages)
      stages.push_back({{"stage", s.stage}, {"path", s.path}, {"hash", s.hash}, {"cached", s.cached}, {"seconds", s.seconds}});
    json d = {{"kind", "summary"}, {"exit_code", r.exit_code}, {"stages", stages}, {"error", r.error},
              {"error_stage", r.error_stage}, {"final", r.report}};
    *summary = make_doc(std::move(d));
    return r.exit_code == 0 ? VB_OK : fail(static_cast<vb_status>(r.exit_code), r.error.empty() ? "verdicts did not all pass" : r.error);
  });
}

vb_status vb_dilog(const char* re, const char* im, int precision, double* value, double* radius) {
  return guarded([&] {
    if (!re || !im || !value) return fail(VB_INPUT, "null argument");
    if (precision < 8 || precision > 4096) return fail(VB_INPUT, "precision out of range");
    mpfr_prec_t wp = precision + 64;
    CBall z(Ball::from_rational(parse_decimal(re), wp), Ball::from_rational(parse_decimal(im), wp));
    Ball d(wp);
    try {
      d = bloch_wigner_D(z, precision);
    } catch (const std::domain_error&) {
      if (z.im.contains_zero()) d = Ball::from_int(0, wp);
      else throw;
    }
    *value = d.mid_d();
    if (radius) *radius = d.rad.to_double();
    return VB_OK;
  });
}

}  // extern "C"
