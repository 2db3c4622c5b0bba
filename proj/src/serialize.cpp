#include "vorbloch/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "schemas.inc"

namespace vorbloch {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string content_hash(const json& doc) {
  json c = doc;
  if (c.is_object()) {
    c.erase("hash");
    c.erase("timing");
  }
  return sha256_hex(c.dump());
}

void seal(json& doc) { doc["hash"] = content_hash(doc); }

const json& schema(const std::string& name) {
  static const std::map<std::string, json> all = [] {
    std::map<std::string, json> m;
    for (const auto& [k, text] : embedded_schemas()) m[k] = json::parse(text);
    return m;
  }();
  auto it = all.find(name);
  if (it == all.end()) throw std::invalid_argument("unknown schema " + name);
  return it->second;
}

namespace {

bool type_ok(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

bool format_ok(const std::string& s, const std::string& f) {
  static const std::regex integer("-?[0-9]+"), rational("-?[0-9]+(/[0-9]*[1-9][0-9]*)?"), sha("[0-9a-f]{64}");
  if (f == "integer-string") return std::regex_match(s, integer);
  if (f == "rational-string") return std::regex_match(s, rational);
  if (f == "sha256") return std::regex_match(s, sha);
  if (f == "decimal-string") {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return *end == '\0' && s.find_first_of("nN") == std::string::npos;
  }
  return true;
}

void check(const json& v, const json& s, const json& root, const std::string& path) {
  if (s.contains("$ref")) {
    std::string r = s["$ref"];
    if (root.contains("definitions") && root["definitions"].contains(r)) return check(v, root["definitions"][r], root, path);
    const json& other = schema(r);
    return check(v, other, other, path);
  }
  if (s.contains("enum")) {
    for (const auto& e : s["enum"])
      if (e == v) return;
    throw SchemaError(path, "value " + v.dump() + " not among " + s["enum"].dump());
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_ok(v, t);
    } else {
      ok = type_ok(v, s["type"]);
    }
    if (!ok) throw SchemaError(path, "expected " + s["type"].dump() + ", found " + std::string(v.type_name()));
  }
  if (s.contains("format") && v.is_string() && !format_ok(v.get<std::string>(), s["format"]))
    throw SchemaError(path, "malformed " + s["format"].get<std::string>() + " " + v.dump());
  if (v.is_number_integer()) {
    if (s.contains("minimum") && v.get<long long>() < s["minimum"].get<long long>())
      throw SchemaError(path, "below minimum " + s["minimum"].dump());
    if (s.contains("maximum") && v.get<long long>() > s["maximum"].get<long long>())
      throw SchemaError(path, "above maximum " + s["maximum"].dump());
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<size_t>())
      throw SchemaError(path, "fewer than " + s["minItems"].dump() + " items");
    if (s.contains("items"))
      for (size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], root, path + "[" + std::to_string(i) + "]");
  }
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& k : s["required"])
        if (!v.contains(k.get<std::string>())) throw SchemaError(path + "." + k.get<std::string>(), "missing required member");
    if (s.contains("properties"))
      for (const auto& [k, sub] : s["properties"].items())
        if (v.contains(k)) check(v[k], sub, root, path + "." + k);
  }
}

Integer int_at(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    return parse_integer(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(path, "expected an integer");
  }
}

Rational rat_at(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<long long>())));
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(path, "expected a rational");
  }
}

IntVec intvec_at(const json& j, const std::string& path) {
  IntVec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(int_at(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

RatVec ratvec_at(const json& j, const std::string& path) {
  RatVec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(rat_at(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

json strings(const IntVec& v) { return json(to_strings(v)); }
json strings(const RatVec& v) { return json(to_strings(v)); }

json homology_json(const std::vector<HomologyGroup>& gs) {
  json a = json::array();
  for (const auto& g : gs) a.push_back({{"betti", g.betti}, {"torsion", strings(g.torsion)}});
  return a;
}

json cell_json(const Cell& c) {
  json v = json::array();
  for (const auto& u : c.vertices) v.push_back(cusp_json(u));
  return {{"vertices", v}, {"stabilizer_order", c.stabilizer_order}, {"top", c.top}};
}

}  // namespace

void validate(const json& doc, const std::string& name) {
  const json& s = schema(name);
  check(doc, s, s, "$");
  if (doc.is_object() && doc.contains("hash") && doc["hash"] != content_hash(doc))
    throw SchemaError("$.hash", "content hash mismatch");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(1) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path);
}

json interval_json(const Ball& b, int digits) {
  Ball c = b;
  c.add_error(c.abs_upper().to_double() * std::pow(10.0, 1 - digits));
  return {{"mid", mid_string(c, digits)}, {"rad", rad_string(c)}};
}

json cusp_json(const Cusp& c) { return {{"x", strings(c.x)}, {"y", strings(c.y)}}; }

Cusp cusp_from_json(const json& j, const std::string& path) {
  return Cusp{intvec_at(j.at("x"), path + ".x"), intvec_at(j.at("y"), path + ".y")};
}

json field_to_json(const NumberField& F, const std::string& name) {
  json j;
  if (!name.empty()) j["name"] = name;
  j["min_poly"] = strings(F.data().min_poly);
  if (F.data().basis_origin == "user-supplied") {
    json b = json::array();
    for (const auto& p : F.data().basis) b.push_back(strings(p));
    j["integral_basis"] = b;
  }
  return j;
}

NumberField field_from_json(const json& j) {
  validate(j, "field");
  Poly p = intvec_at(j["min_poly"], "$.min_poly");
  std::optional<std::vector<RatPoly>> basis;
  if (j.contains("integral_basis")) {
    basis.emplace();
    for (size_t i = 0; i < j["integral_basis"].size(); ++i)
      basis->push_back(ratvec_at(j["integral_basis"][i], "$.integral_basis[" + std::to_string(i) + "]"));
  }
  if (p.size() == 2 && p[1] == 1 && !basis) {
    if (p[0] != 0) throw SchemaError("$.min_poly", "use x for the rational field");
    return NumberField::rationals();
  }
  try {
    return NumberField::create(p, basis);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(basis ? "$.integral_basis" : "$.min_poly", e.what());
  }
}

json classes_to_json(const NumberField& F, int m, const TSubspace& T, const VoronoiGraph& g, const EnumOptions& opt,
                     const std::string& inputs_hash) {
  json cls = json::array();
  for (const auto& c : g.classes) {
    json mv = json::array(), rays = json::array();
    for (const auto& v : c.min_data.vectors) mv.push_back(strings(v));
    for (const auto& r : c.rays) rays.push_back(strings(r));
    cls.push_back({{"key", c.key},
                   {"t_coords", strings(c.coords)},
                   {"min", to_string(c.min_data.min)},
                   {"min_vectors", mv},
                   {"rays", rays},
                   {"dead_ends", c.dead_ends},
                   {"parent", c.parent},
                   {"parent_ray", c.parent_ray},
                   {"processed", c.processed}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"ray", e.ray}, {"rho", to_string(e.rho)}});
  json j = {{"kind", "classes"},
            {"field", field_to_json(F)},
            {"m", m},
            {"t_dim", T.dim()},
            {"complete", g.complete},
            {"budget", opt.budget},
            {"traversal", opt.reverse_rays ? "reverse" : "forward"},
            {"classes", cls},
            {"edges", edges},
            {"anomalies", g.anomalies},
            {"inputs_hash", inputs_hash},
            {"timing", {{"seconds", g.seconds}, {"dd_seconds", g.dd_seconds}}}};
  seal(j);
  return j;
}

VoronoiGraph classes_from_json(const TSubspace& T, const json& j) {
  validate(j, "classes");
  if (j["t_dim"].get<int>() != T.dim()) throw SchemaError("$.t_dim", "does not match the field and dimension");
  VoronoiGraph g;
  g.complete = j["complete"];
  g.anomalies = j["anomalies"].get<std::vector<std::string>>();
  for (size_t i = 0; i < j["classes"].size(); ++i) {
    const json& c = j["classes"][i];
    std::string p = "$.classes[" + std::to_string(i) + "]";
    PerfectClass pc;
    pc.key = c["key"];
    pc.coords = ratvec_at(c["t_coords"], p + ".t_coords");
    if (static_cast<int>(pc.coords.size()) != T.dim()) throw SchemaError(p + ".t_coords", "wrong length");
    pc.rep = t_matrix(T, pc.coords);
    pc.min_data.min = rat_at(c["min"], p + ".min");
    for (size_t k = 0; k < c["min_vectors"].size(); ++k)
      pc.min_data.vectors.push_back(intvec_at(c["min_vectors"][k], p + ".min_vectors"));
    if (!is_positive_definite(pc.rep)) throw SchemaError(p + ".t_coords", "form is not positive definite");
    MinData md = minimum(pc.rep);
    if (md.min != pc.min_data.min) throw SchemaError(p + ".min", "does not match the form");
    if (md.vectors != pc.min_data.vectors) throw SchemaError(p + ".min_vectors", "does not match the form");
    for (size_t k = 0; k < c["rays"].size(); ++k) pc.rays.push_back(intvec_at(c["rays"][k], p + ".rays"));
    pc.dead_ends = c["dead_ends"].get<std::vector<int>>();
    pc.parent = c["parent"];
    pc.parent_ray = c["parent_ray"];
    pc.processed = c["processed"];
    g.classes.push_back(std::move(pc));
  }
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    const json& e = j["edges"][i];
    VoronoiEdge ve{e["from"], e["to"], e["ray"], rat_at(e["rho"], "$.edges[" + std::to_string(i) + "].rho")};
    if (ve.from >= static_cast<int>(g.classes.size()) || ve.to >= static_cast<int>(g.classes.size()))
      throw SchemaError("$.edges[" + std::to_string(i) + "]", "class index out of range");
    g.edges.push_back(ve);
  }
  if (j.contains("timing")) {
    g.seconds = j["timing"].value("seconds", 0.0);
    g.dd_seconds = j["timing"].value("dd_seconds", 0.0);
  }
  return g;
}

json complex_to_json(const NumberField& F, const VoronoiComplex& cx, const ComplexHomology& h, const NReport& N,
                     const TriangulatedHomology& th, const std::string& inputs_hash) {
  json cells = json::array(), dropped = json::array();
  for (int k = 0; k < 4; ++k) {
    json a = json::array(), b = json::array();
    for (const auto& c : cx.cells[k]) a.push_back(cell_json(c));
    for (const auto& c : cx.dropped[k]) b.push_back(cell_json(c));
    cells.push_back(a);
    dropped.push_back(b);
  }
  json bd = json::array();
  for (int k = 1; k <= 3; ++k) {
    const IntMat& d = cx.d[k];
    json e = json::array();
    for (size_t r = 0; r < d.rows; ++r)
      for (size_t c = 0; c < d.cols; ++c)
        if (d(r, c) != 0) e.push_back({r, c, to_string(d(r, c))});
    bd.push_back({{"dim", k}, {"rows", d.rows}, {"cols", d.cols}, {"entries", e}});
  }
  json h3 = json::array();
  for (const auto& g : h.h3)
    h3.push_back({{"eps", g.eps}, {"weights", strings(g.weights)}, {"kernel", strings(g.kernel)},
                  {"kernel_matches", g.kernel_matches}});
  json tets = json::array();
  for (const auto& ts : cx.tetrahedra) {
    json a = json::array();
    for (const auto& t : ts) {
      json v = json::array();
      for (const auto& c : t.v) v.push_back(cusp_json(c));
      a.push_back({{"v", v}, {"sign", t.sign}});
    }
    tets.push_back(a);
  }
  json j = {{"kind", "complex"},
            {"field", field_to_json(F)},
            {"order", cx.order == VertexOrder::Canonical ? "canonical" : "reversed"},
            {"cells", cells},
            {"dropped", dropped},
            {"boundary", bd},
            {"homology", homology_json(h.groups)},
            {"dd_zero", h.dd_zero},
            {"N",
             {{"theorem_bound", N.theorem_bound},
              {"observed_lcm", N.observed_lcm},
              {"certain", N.certain},
              {"groups", N.groups},
              {"detail", N.detail}}},
            {"h3", h3},
            {"tetrahedra", tets},
            {"triangulated",
             {{"homology", homology_json(th.groups)},
              {"counts", th.counts},
              {"dd_zero", th.dd_zero},
              {"cycle_ok", th.cycle_ok},
              {"centres", th.centres}}},
            {"descent", cx.descent},
            {"notes", cx.notes},
            {"inputs_hash", inputs_hash}};
  seal(j);
  return j;
}

ComplexSummary complex_from_json(const NumberField& F, const json& j) {
  validate(j, "complex");
  ComplexSummary s;
  s.cx.cells.resize(4);
  s.cx.dropped.resize(4);
  s.cx.order = j["order"] == "canonical" ? VertexOrder::Canonical : VertexOrder::Reversed;
  for (int k = 0; k < 4; ++k)
    for (size_t i = 0; i < j["cells"][k].size(); ++i) {
      const json& c = j["cells"][k][i];
      std::string p = "$.cells[" + std::to_string(k) + "][" + std::to_string(i) + "]";
      Cell cell;
      cell.dim = k;
      for (size_t v = 0; v < c["vertices"].size(); ++v)
        cell.vertices.push_back(cusp_from_json(c["vertices"][v], p + ".vertices[" + std::to_string(v) + "]"));
      cell.stabilizer_order = c["stabilizer_order"];
      cell.top = c.value("top", -1);
      s.cx.cells[k].push_back(std::move(cell));
    }
  for (size_t i = 0; i < j["tetrahedra"].size(); ++i) {
    std::vector<Tetrahedron> ts;
    for (size_t t = 0; t < j["tetrahedra"][i].size(); ++t) {
      const json& o = j["tetrahedra"][i][t];
      std::string p = "$.tetrahedra[" + std::to_string(i) + "][" + std::to_string(t) + "]";
      Tetrahedron tet;
      for (int v = 0; v < 4; ++v) {
        tet.v[v] = cusp_from_json(o["v"][v], p + ".v[" + std::to_string(v) + "]");
        if (tet.v[v].x.size() != static_cast<size_t>(F.degree()) || tet.v[v].y.size() != static_cast<size_t>(F.degree()))
          throw SchemaError(p + ".v[" + std::to_string(v) + "]", "coordinate length differs from the field degree");
      }
      tet.sign = o["sign"];
      ts.push_back(tet);
    }
    s.cx.tetrahedra.push_back(std::move(ts));
  }
  if (s.cx.tetrahedra.size() != s.cx.cells[3].size()) throw SchemaError("$.tetrahedra", "one list per 3-cell expected");
  for (size_t i = 0; i < j["h3"].size(); ++i) {
    const json& g = j["h3"][i];
    std::string p = "$.h3[" + std::to_string(i) + "]";
    H3Generator h;
    h.eps = g["eps"].get<std::vector<int>>();
    h.weights = intvec_at(g["weights"], p + ".weights");
    h.kernel = intvec_at(g["kernel"], p + ".kernel");
    h.kernel_matches = g["kernel_matches"];
    if (h.weights.size() != s.cx.cells[3].size()) throw SchemaError(p + ".weights", "one weight per 3-cell expected");
    s.h3.push_back(std::move(h));
  }
  s.N = j["N"]["theorem_bound"];
  return s;
}

json pre_bloch_to_json(const PreBlochElement& b) {
  json a = json::array();
  for (const auto& [x, n] : b.terms) a.push_back({{"coefficient", to_string(n)}, {"argument", strings(x.coords())}});
  return a;
}

PreBlochElement pre_bloch_from_json(const NumberField& F, const json& terms, const std::string& path) {
  PreBlochElement b;
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    RatVec c = ratvec_at(terms[i].at("argument"), p + ".argument");
    if (c.size() != static_cast<size_t>(F.degree())) throw SchemaError(p + ".argument", "wrong length");
    FieldElement x = F.from_coords(c);
    if (x.is_zero() || x.is_one()) throw SchemaError(p + ".argument", "argument must avoid 0 and 1");
    b.add(x, int_at(terms[i].at("coefficient"), p + ".coefficient"));
  }
  return b;
}

}  // namespace vorbloch
