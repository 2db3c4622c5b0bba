#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include "vorbloch.h"

using nlohmann::json;

namespace {

struct FieldDel {
  void operator()(vb_field* f) const { vb_field_free(f); }
};
struct DocDel {
  void operator()(vb_doc* d) const { vb_doc_free(d); }
};
using FieldPtr = std::unique_ptr<vb_field, FieldDel>;
using DocPtr = std::unique_ptr<vb_doc, DocDel>;

bool json_out = false;

int report_error(vb_status s) {
  std::cerr << "error (" << s << "): " << vb_last_error() << "\n";
  return s;
}

FieldPtr load_field(const std::string& path, vb_status* s) {
  vb_field* f = nullptr;
  *s = path.empty() ? vb_field_parse("{\"min_poly\": [\"0\", \"1\"]}", &f) : vb_field_load(path.c_str(), &f);
  return FieldPtr(f);
}

DocPtr load_doc(const std::string& path, const char* kind, vb_status* s) {
  vb_doc* d = nullptr;
  *s = vb_doc_load(path.c_str(), kind, &d);
  return DocPtr(d);
}

bool same_field(const vb_field* f, const vb_doc* d) {
  return json::parse(vb_doc_text(d))["field"] == json::parse(vb_field_canonical(f));
}

// Writes the artifact, prints it or a summary, and returns the status as exit code.
int finish(vb_status s, vb_doc* raw, const std::string& out, const std::function<void(const json&)>& summary) {
  DocPtr d(raw);
  if (!d) return report_error(s);
  if (!out.empty() && vb_doc_save(d.get(), out.c_str()) != VB_OK) return report_error(VB_INPUT);
  if (json_out) {
    std::cout << vb_doc_text(d.get());
  } else {
    summary(json::parse(vb_doc_text(d.get())));
    if (!out.empty()) std::cout << "wrote " << out << " (" << vb_doc_hash(d.get()) << ")\n";
  }
  if (s != VB_OK) std::cerr << "status " << s << ": " << vb_last_error() << "\n";
  return s;
}

void print_classes(const json& d) {
  std::cout << "m=" << d["m"] << " classes " << d["classes"].size() << (d["complete"] ? " (complete)" : " (incomplete)")
            << " traversal " << d["traversal"].get<std::string>() << "\n";
  for (size_t i = 0; i < d["classes"].size(); ++i) {
    const json& c = d["classes"][i];
    std::cout << "  #" << i << " |Min| " << c["min_vectors"].size() << " rays " << c["rays"].size() << " key "
              << c["key"].get<std::string>() << "\n";
  }
  for (const auto& a : d["anomalies"]) std::cout << "  anomaly: " << a.get<std::string>() << "\n";
}

std::string group_string(const json& g) {
  std::string s;
  if (g["betti"] == 0 && g["torsion"].empty()) return "0";
  if (g["betti"] != 0) s = "Z" + (g["betti"] == 1 ? std::string() : "^" + g["betti"].dump());
  for (const auto& t : g["torsion"]) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get<std::string>();
  return s;
}

void print_complex(const json& d) {
  std::cout << "cells";
  for (int k = 0; k < 4; ++k) std::cout << " " << d["cells"][k].size();
  std::cout << "  d o d = 0: " << (d["dd_zero"] ? "yes" : "no") << "  N = " << d["N"]["theorem_bound"] << "\n";
  for (size_t k = 0; k < d["homology"].size(); ++k) std::cout << "  H" << k << " = " << group_string(d["homology"][k]) << "\n";
  for (const auto& h : d["h3"]) std::cout << "  H3 generator weights " << h["weights"].dump() << "\n";
}

void print_bloch(const json& d) {
  for (const auto& e : d["elements"]) {
    std::cout << "beta_" << e["generator"] << ": " << e["terms"].size() << " terms, certificate "
              << e["certificate"]["regime"].get<std::string>() << " " << (e["certificate"]["passed"] ? "pass" : "FAIL")
              << "\n";
    if (!e["certificate"]["passed"]) std::cout << "  residue " << e["certificate"]["residue"].get<std::string>() << "\n";
  }
}

void print_report(const json& d) {
  auto iv = [](const json& x) { return x["mid"].get<std::string>() + " +- " + x["rad"].get<std::string>(); };
  std::cout << "zeta_F(2) = " << iv(d["zeta"]["value"]) << "\n"
            << "vol       = " << iv(d["vol"]) << "\n"
            << "det M     = " << iv(d["det_M"]) << "\n"
            << "A: |det M| / ((2N)^r2 vol) = " << iv(d["verdict_A"]["ratio"]) << "  "
            << d["verdict_A"]["status"].get<std::string>() << "\n"
            << "B: |det M| / (2pi)^r2 = " << iv(d["verdict_B"]["det_over_2pi"]) << " matches "
            << d["verdict_B"]["matches_literal"].get<std::string>() << "\n"
            << "   observed index = " << iv(d["verdict_B"]["observed_index"]) << " matches "
            << d["verdict_B"]["matches_observed"].get<std::string>() << " (general "
            << d["verdict_B"]["index_general"].get<std::string>() << ", example "
            << d["verdict_B"]["index_example"].get<std::string>() << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi complexes, Bloch elements and regulators"};
  app.require_subcommand(1);
  app.add_flag("--json", json_out, "machine-readable output on stdout");

  std::string field, out, classes_path, complex_path, bloch_path, order = "canonical", resume, k_table;
  int dim = 2;
  size_t budget = 1000;
  bool reverse = false;

  auto* pf = app.add_subcommand("perfect-forms", "perfect form classes (rational forms unless --field is given)");
  pf->add_option("--dim", dim, "dimension m")->required();
  pf->add_option("--field", field, "field specification");
  pf->add_option("--budget", budget, "class-count limit");
  pf->add_flag("--reverse", reverse, "reverse the ray traversal order");
  pf->add_option("--resume", resume, "continue a partial classes file");
  pf->add_option("--out", out, "classes JSON")->required();

  auto* tp = app.add_subcommand("tperfect", "T-perfect Hermitian form classes over a field");
  tp->add_option("--field", field, "field specification")->required();
  tp->add_option("--dim", dim, "dimension m");
  tp->add_option("--budget", budget, "class-count limit");
  tp->add_flag("--reverse", reverse, "reverse the ray traversal order");
  tp->add_option("--resume", resume, "continue a partial classes file");
  tp->add_option("--out", out, "classes JSON")->required();

  auto* cx = app.add_subcommand("complex", "cell complex, homology and H_3 generators");
  cx->add_option("--field", field, "field specification")->required();
  cx->add_option("--classes", classes_path, "classes JSON")->required();
  cx->add_option("--order", order, "global vertex order")->check(CLI::IsMember({"canonical", "reversed"}));
  cx->add_option("--out", out, "complex JSON")->required();

  auto* bl = app.add_subcommand("bloch", "Bloch elements of the H_3 generators");
  bl->add_option("--complex", complex_path, "complex JSON")->required();
  bl->add_option("--out", out, "bloch JSON")->required();

  vb_regulator_options ro;
  vb_regulator_options_init(&ro);
  auto add_regulator_options = [&](CLI::App* a) {
    a->add_option("--k2", ro.k2, "|K_2 O_F| (default: bundled table)");
    a->add_option("--k3tor", ro.k3tor, "|K_3(O_F)_tors| (default: bundled table)");
    a->add_option("--precision", ro.precision, "bits")->check(CLI::Range(8, 4096));
    a->add_option("--prime-bound", ro.prime_bound, "Euler product bound")->check(CLI::Range(17L, 2000000000L));
    a->add_option("--k-table", k_table, "K-group table JSON");
    a->add_option("--tolerance", ro.tolerance, "relative tolerance of verdict A");
  };
  auto* rg = app.add_subcommand("regulator", "regulator matrix, Borel volume and index report");
  rg->add_option("--bloch", bloch_path, "bloch JSON")->required();
  rg->add_option("--field", field, "field specification (checked against the artifact)");
  rg->add_option("--out", out, "report JSON")->required();
  add_regulator_options(rg);

  vb_pipeline_options po;
  vb_pipeline_options_init(&po);
  std::string out_dir = ".", stop_after = "report";
  bool no_cache = false;
  auto* vf = app.add_subcommand("verify", "run every stage with content-hash caching");
  vf->add_option("--field", field, "field specification")->required();
  vf->add_option("--out-dir", out_dir, "artifact directory");
  vf->add_option("--stop-after", stop_after, "last stage")->check(CLI::IsMember({"classes", "complex", "bloch", "report"}));
  vf->add_option("--budget", budget, "class-count limit");
  vf->add_flag("--reverse", reverse, "reverse the ray traversal order");
  vf->add_option("--order", order, "global vertex order")->check(CLI::IsMember({"canonical", "reversed"}));
  vf->add_flag("--no-cache", no_cache, "recompute every stage");
  add_regulator_options(vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }
  if (!k_table.empty()) ro.k_table = k_table.c_str();

  vb_status s = VB_OK;
  if (*pf || *tp) {
    FieldPtr f = load_field(field, &s);
    if (!f) return report_error(s);
    DocPtr prev;
    if (!resume.empty()) {
      prev = load_doc(resume, "classes", &s);
      if (!prev) return report_error(s);
    }
    vb_doc* d = nullptr;
    s = vb_classes(f.get(), dim, budget, reverse, prev.get(), &d);
    return finish(s, d, out, print_classes);
  }
  if (*cx) {
    DocPtr c = load_doc(classes_path, "classes", &s);
    if (!c) return report_error(s);
    FieldPtr f = load_field(field, &s);
    if (!f) return report_error(s);
    if (!same_field(f.get(), c.get())) {
      std::cerr << "error: " << classes_path << " was computed for another field\n";
      return VB_INPUT;
    }
    vb_doc* d = nullptr;
    s = vb_complex(c.get(), order == "reversed", &d);
    return finish(s, d, out, print_complex);
  }
  if (*bl) {
    DocPtr c = load_doc(complex_path, "complex", &s);
    if (!c) return report_error(s);
    vb_doc* d = nullptr;
    s = vb_bloch(c.get(), &d);
    return finish(s, d, out, print_bloch);
  }
  if (*rg) {
    DocPtr b = load_doc(bloch_path, "bloch", &s);
    if (!b) return report_error(s);
    if (!field.empty()) {
      FieldPtr f = load_field(field, &s);
      if (!f) return report_error(s);
      if (!same_field(f.get(), b.get())) {
        std::cerr << "error: " << bloch_path << " was computed for another field\n";
        return VB_INPUT;
      }
    }
    vb_doc* d = nullptr;
    s = vb_regulator(b.get(), &ro, &d);
    return finish(s, d, out, print_report);
  }
  po.field_path = field.c_str();
  po.out_dir = out_dir.c_str();
  po.stop_after = stop_after.c_str();
  po.class_budget = budget;
  po.reverse_traversal = reverse;
  po.reversed_vertex_order = order == "reversed";
  po.use_cache = !no_cache;
  po.regulator = ro;
  vb_doc* d = nullptr;
  s = vb_verify(&po, &d);
  return finish(s, d, "", [](const json& sum) {
    for (const auto& st : sum["stages"])
      std::cout << st["stage"].get<std::string>() << ": " << st["path"].get<std::string>()
                << (st["cached"] ? " (cached)" : "") << "\n";
    if (!sum["error"].get<std::string>().empty())
      std::cout << "stopped at " << sum["error_stage"].get<std::string>() << ": " << sum["error"].get<std::string>() << "\n";
    const json& fin = sum["final"];
    if (fin.is_object() && fin.value("kind", "") == "report") print_report(fin);
    std::cout << "exit " << sum["exit_code"] << "\n";
  });
}
