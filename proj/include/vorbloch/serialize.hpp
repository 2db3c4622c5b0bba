#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vorbloch/bloch.hpp"
#include "vorbloch/cell_complex.hpp"
#include "vorbloch/regulator.hpp"
#include "vorbloch/voronoi.hpp"

namespace vorbloch {

using json = nlohmann::json;

// Schema or consistency violation; `path` locates the offending value ("$.classes[2].rays").
struct SchemaError : std::runtime_error {
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path(path) {}
  std::string path;
};

std::string sha256_hex(const std::string& bytes);
// SHA-256 of the compact dump with the top-level "hash" and "timing" members removed.
std::string content_hash(const json& doc);
// Sets doc["hash"].
void seal(json& doc);

// Published schema by name: field, classes, complex, bloch, report.
const json& schema(const std::string& name);
// Throws SchemaError naming the first violation; also checks the "hash" member when present.
void validate(const json& doc, const std::string& name);

json read_json_file(const std::string& path);
// Deterministic pretty dump with a trailing newline.
void write_json_file(const std::string& path, const json& doc);

json interval_json(const Ball& b, int digits = 30);
json cusp_json(const Cusp& c);
Cusp cusp_from_json(const json& j, const std::string& path);

json field_to_json(const NumberField& F, const std::string& name = "");
NumberField field_from_json(const json& j);

json classes_to_json(const NumberField& F, int m, const TSubspace& T, const VoronoiGraph& g, const EnumOptions& opt,
                     const std::string& inputs_hash);
VoronoiGraph classes_from_json(const TSubspace& T, const json& j);

json complex_to_json(const NumberField& F, const VoronoiComplex& cx, const ComplexHomology& h, const NReport& N,
                     const TriangulatedHomology& th, const std::string& inputs_hash);

// The parts of a complex artifact the later stages consume.
struct ComplexSummary {
  VoronoiComplex cx;  // cells with stabilizer orders and tetrahedra only
  std::vector<H3Generator> h3;
  long N = 0;
};
ComplexSummary complex_from_json(const NumberField& F, const json& j);

json pre_bloch_to_json(const PreBlochElement& b);
PreBlochElement pre_bloch_from_json(const NumberField& F, const json& terms, const std::string& path);

}  // namespace vorbloch
