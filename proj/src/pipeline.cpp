#include "vorbloch/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>

namespace vorbloch {

namespace {

json strip_name(json f) {
  f.erase("name");
  return f;
}

std::string inputs_hash(const json& inputs) { return sha256_hex(inputs.dump()); }

json classes_inputs(const NumberField& F, const ClassesParams& p) {
  return {{"stage", "classes"},
          {"field", strip_name(field_to_json(F))},
          {"m", p.m},
          {"budget", p.enumeration.budget},
          {"traversal", p.enumeration.reverse_rays ? "reverse" : "forward"},
          {"equiv_budget", p.enumeration.equiv_budget}};
}

json complex_inputs(const json& classes, VertexOrder order) {
  return {{"stage", "complex"}, {"classes", classes.at("hash")}, {"order", order == VertexOrder::Canonical ? "canonical" : "reversed"}};
}

json bloch_inputs(const json& complex) { return {{"stage", "bloch"}, {"complex", complex.at("hash")}}; }

json report_inputs(const json& bloch, const RegulatorParams& p, long k2, long k3tor) {
  return {{"stage", "report"},
          {"bloch", bloch.at("hash")},
          {"precision", p.precision},
          {"prime_bound", p.prime_bound},
          {"k2", k2},
          {"k3tor", k3tor},
          {"tolerance", p.tolerance}};
}

NumberField artifact_field(const json& doc) {
  try {
    return field_from_json(doc.at("field"));
  } catch (const SchemaError& e) {
    throw SchemaError("$.field" + e.path.substr(1), e.what());
  }
}

std::string default_k_table() { return std::string(VORBLOCH_DATA_DIR) + "/k_groups.json"; }

std::pair<long, long> resolve_k(const NumberField& F, const RegulatorParams& p, std::string* source) {
  if (p.k2 && p.k3tor) {
    *source = "command line";
    return {*p.k2, *p.k3tor};
  }
  auto t = lookup_k_groups(p.k_table.empty() ? default_k_table() : p.k_table, F.disc(), source);
  if (!t) throw StageError(kExitInput, "report", "no K-group orders for discriminant " + to_string(F.disc()) + "; pass --k2 and --k3tor");
  long k2 = p.k2.value_or(t->first), k3 = p.k3tor.value_or(t->second);
  if (p.k2 || p.k3tor) *source += " with command-line override";
  return {k2, k3};
}

}  // namespace

json stage_classes(const NumberField& F, const ClassesParams& p, const json* resume) {
  if (p.m < 1) throw StageError(kExitInput, "classes", "dimension must be positive");
  TSubspace T;
  try {
    T = t_subspace(F, p.m);
  } catch (const std::domain_error& e) {
    throw StageError(kExitInput, "classes", e.what());
  }
  RatMat A0 = F.degree() == 1 ? first_perfect_form(p.m) : initial_t_perfect(T, trace_form(F, hermitian_identity(F, p.m)));
  std::optional<VoronoiGraph> prev;
  if (resume) {
    validate(*resume, "classes");
    if (strip_name((*resume)["field"]) != strip_name(field_to_json(F)) || (*resume)["m"] != p.m)
      throw StageError(kExitInput, "classes", "resume file belongs to another field or dimension");
    prev = classes_from_json(T, *resume);
  }
  VoronoiGraph g = enumerate_perfect(F, T, A0, p.enumeration, prev ? &*prev : nullptr);
  return classes_to_json(F, p.m, T, g, p.enumeration, inputs_hash(classes_inputs(F, p)));
}

json stage_complex(const json& classes, VertexOrder order) {
  validate(classes, "classes");
  NumberField F = artifact_field(classes);
  if (classes["m"] != 2) throw StageError(kExitInput, "complex", "the cell complex needs m = 2 classes");
  if (!classes["complete"]) throw StageError(kExitBudget, "complex", "perfect form enumeration is incomplete");
  TSubspace T = t_subspace(F, 2);
  VoronoiGraph g = classes_from_json(T, classes);
  ComplexOptions opt;
  opt.order = order;
  VoronoiComplex cx;
  try {
    cx = build_complex(F, T, g, opt);
  } catch (const std::domain_error& e) {
    throw StageError(kExitInconclusive, "complex", std::string("unsupported: ") + e.what());
  }
  NReport N = compute_N(F, &cx);
  ComplexHomology h = complex_homology(cx, N.theorem_bound);
  TriangulatedHomology th = triangulated_homology(F, cx, h.h3.empty() ? nullptr : &h.h3[0]);
  return complex_to_json(F, cx, h, N, th, inputs_hash(complex_inputs(classes, order)));
}

json stage_bloch(const json& complex) {
  validate(complex, "complex");
  NumberField F = artifact_field(complex);
  ComplexSummary s = complex_from_json(F, complex);
  if (s.h3.empty()) throw StageError(kExitFail, "bloch", "complex has no H_3 generator");
  json elems = json::array();
  for (size_t i = 0; i < s.h3.size(); ++i) {
    PreBlochElement beta = bloch_from_cycle(F, s.cx, s.h3[i]);
    BlochCertificate c = verify_bloch(F, beta);
    elems.push_back({{"generator", i},
                     {"terms", pre_bloch_to_json(beta)},
                     {"certificate", {{"regime", c.regime}, {"passed", c.passed}, {"residue", c.residue_text}}}});
  }
  json j = {{"kind", "bloch"}, {"field", complex["field"]}, {"N", s.N}, {"elements", elems},
            {"inputs_hash", inputs_hash(bloch_inputs(complex))}};
  seal(j);
  return j;
}

std::optional<std::pair<long, long>> lookup_k_groups(const std::string& table, const Integer& disc, std::string* source) {
  json t = read_json_file(table);
  std::string key = to_string(disc);
  if (!t.contains("fields") || !t["fields"].contains(key)) return std::nullopt;
  const json& e = t["fields"][key];
  if (!e.contains("k2") || !e.contains("k3tor")) throw SchemaError("$.fields." + key, "k2 and k3tor required");
  if (source) *source = table + (t.contains("source") ? " (" + t["source"].get<std::string>() + ")" : "");
  return std::make_pair(e["k2"].get<long>(), e["k3tor"].get<long>());
}

json stage_report(const json& bloch, const RegulatorParams& p) {
  validate(bloch, "bloch");
  NumberField F = artifact_field(bloch);
  int r2 = F.r2();
  if (r2 == 0) throw StageError(kExitInput, "report", "field has no complex embedding");
  const json& elems = bloch["elements"];
  if (static_cast<int>(elems.size()) != r2)
    throw StageError(kExitInput, "report", "need " + std::to_string(r2) + " Bloch elements, found " + std::to_string(elems.size()));
  std::string source;
  auto [k2, k3tor] = resolve_k(F, p, &source);
  auto t0 = std::chrono::steady_clock::now();
  ZetaValue zeta = zeta_F_2(F, p.precision, p.prime_bound);
  std::vector<std::vector<Ball>> M(r2);
  bool verified = true, unsupported = false;
  for (int i = 0; i < r2; ++i) {
    const json& c = elems[i]["certificate"];
    verified = verified && c["passed"].get<bool>();
    unsupported = unsupported || c["regime"] == "unsupported";
    PreBlochElement beta = pre_bloch_from_json(F, elems[i]["terms"], "$.elements[" + std::to_string(i) + "].terms");
    for (int j = 0; j < r2; ++j) M[i].push_back(regulator_entry(F, beta, F.r1() + 1 + j, p.precision));
  }
  IndexReport r = index_report(F, M, zeta.value, bloch["N"].get<long>(), k2, k3tor, p.tolerance);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int code = kExitPass;
  if (!verified) code = unsupported ? kExitInconclusive : kExitFail;
  if (r.lemma == Verdict::Fail) code = kExitFail;
  if (r.lemma == Verdict::Inconclusive && code == kExitPass) code = kExitInconclusive;
  json mj = json::array();
  for (const auto& row : M) {
    json a = json::array();
    for (const auto& b : row) a.push_back(interval_json(b));
    mj.push_back(a);
  }
  char tol[32], tail[32];
  std::snprintf(tol, sizeof tol, "%.3e", p.tolerance);
  std::snprintf(tail, sizeof tail, "%.6e", zeta.tail_relative);
  json j = {{"kind", "report"},
            {"field", bloch["field"]},
            {"precision", p.precision},
            {"prime_bound", p.prime_bound},
            {"k2", k2},
            {"k3tor", k3tor},
            {"k_source", source},
            {"N", r.N},
            {"r2", r2},
            {"M", mj},
            {"det_M", interval_json(r.det_M)},
            {"zeta", {{"value", interval_json(zeta.value)}, {"prime_bound", zeta.prime_bound}, {"tail_relative", tail}}},
            {"vol", interval_json(r.vol)},
            {"verdict_A", {{"status", to_string(r.lemma)}, {"ratio", interval_json(r.lemma_ratio)}, {"tolerance", tol}}},
            {"verdict_B",
             {{"det_over_2pi", interval_json(r.det_over_2pi)},
              {"observed_index", interval_json(r.observed_index)},
              {"index_general", to_string(r.index_general)},
              {"index_example", to_string(r.index_example)},
              {"matches_literal", r.literal_matches},
              {"matches_observed", r.matches}}},
            {"bloch_verified", verified},
            {"exit_code", code},
            {"inputs_hash", inputs_hash(report_inputs(bloch, p, k2, k3tor))},
            {"timing", {{"seconds", secs}}}};
  seal(j);
  return j;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult res;
  static const std::vector<std::string> order{"classes", "complex", "bloch", "report"};
  auto stop = std::find(order.begin(), order.end(), cfg.stop_after);
  if (stop == order.end()) {
    res.exit_code = kExitInput;
    res.error = "unknown stage " + cfg.stop_after;
    return res;
  }
  size_t last = stop - order.begin();
  std::string stage = "field";
  try {
    NumberField F = field_from_json(read_json_file(cfg.field_path));
    std::filesystem::create_directories(cfg.out_dir);
    auto path_of = [&](const std::string& s) { return (std::filesystem::path(cfg.out_dir) / (s + ".json")).string(); };
    auto cached = [&](const std::string& s, const std::string& expect) -> std::optional<json> {
      if (!cfg.use_cache || !std::filesystem::exists(path_of(s))) return std::nullopt;
      try {
        json d = read_json_file(path_of(s));
        validate(d, s);
        if (d["inputs_hash"] == expect) return d;
      } catch (const std::exception&) {
      }
      return std::nullopt;
    };
    auto run = [&](const std::string& s, const std::string& expect, auto&& compute) {
      stage = s;
      auto t0 = std::chrono::steady_clock::now();
      StageLog log{s, path_of(s), "", false, 0};
      json d;
      if (auto c = cached(s, expect)) {
        d = std::move(*c);
        log.cached = true;
      } else {
        d = compute();
        write_json_file(path_of(s), d);
      }
      log.hash = d["hash"];
      log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      res.stages.push_back(log);
      res.report = d;
      return d;
    };

    ClassesParams cp;
    cp.m = cfg.m;
    cp.enumeration.budget = cfg.class_budget;
    cp.enumeration.equiv_budget = cfg.equiv_budget;
    cp.enumeration.reverse_rays = cfg.reverse_traversal;
    json classes = run("classes", inputs_hash(classes_inputs(F, cp)), [&] {
      std::optional<json> partial;
      if (std::filesystem::exists(path_of("classes"))) {
        try {
          json d = read_json_file(path_of("classes"));
          validate(d, "classes");
          if (!d["complete"] && d["traversal"] == (cp.enumeration.reverse_rays ? "reverse" : "forward")) partial = d;
        } catch (const std::exception&) {
        }
      }
      try {
        return stage_classes(F, cp, partial ? &*partial : nullptr);
      } catch (const StageError&) {
        if (!partial) throw;
        return stage_classes(F, cp);
      }
    });
    if (!classes["complete"]) {
      res.exit_code = kExitBudget;
      res.error_stage = "classes";
      res.error = "class budget exhausted; downstream stages poisoned";
      return res;
    }
    if (last < 1) return res;
    json complex = run("complex", inputs_hash(complex_inputs(classes, cfg.order)), [&] { return stage_complex(classes, cfg.order); });
    if (!complex["dd_zero"] || complex["h3"].empty()) {
      res.exit_code = kExitFail;
      res.error_stage = "complex";
      res.error = !complex["dd_zero"] ? "boundary maps do not compose to zero" : "H_3 has no generator";
      return res;
    }
    if (last < 2) return res;
    json bloch = run("bloch", inputs_hash(bloch_inputs(complex)), [&] { return stage_bloch(complex); });
    for (const auto& e : bloch["elements"])
      if (!e["certificate"]["passed"].get<bool>()) res.exit_code = e["certificate"]["regime"] == "exact" ? kExitFail : kExitInconclusive;
    if (last < 3) return res;
    std::string source;
    auto [k2, k3] = resolve_k(artifact_field(bloch), cfg.regulator, &source);
    json report = run("report", inputs_hash(report_inputs(bloch, cfg.regulator, k2, k3)), [&] { return stage_report(bloch, cfg.regulator); });
    res.exit_code = report["exit_code"];
  } catch (const StageError& e) {
    res.exit_code = e.code;
    res.error_stage = e.stage;
    res.error = e.what();
  } catch (const SchemaError& e) {
    res.exit_code = kExitInput;
    res.error_stage = stage;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.exit_code = stage == "field" ? kExitInput : kExitFail;
    res.error_stage = stage;
    res.error = e.what();
  }
  return res;
}

}  // namespace vorbloch
