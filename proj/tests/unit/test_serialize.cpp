#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "vorbloch/pipeline.hpp"

using namespace vorbloch;
namespace fs = std::filesystem;

namespace {

const std::string kFields = std::string(VORBLOCH_DATA_DIR) + "/fields/";

std::string schema_error_path(const json& doc, const std::string& kind) {
  try {
    validate(doc, kind);
  } catch (const SchemaError& e) {
    return e.path;
  }
  return "";
}

json gaussian_classes() {
  return stage_classes(field_from_json(read_json_file(kFields + "gaussian.json")), ClassesParams{});
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("vorbloch_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("sha256 and content hash") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  json a = {{"x", 1}, {"timing", 3.5}};
  json b = {{"x", 1}, {"timing", 9.0}, {"hash", "00"}};
  CHECK(content_hash(a) == content_hash(b));
  json c = {{"x", 2}};
  CHECK(content_hash(a) != content_hash(c));
}

TEST_CASE("field specifications round trip") {
  for (const char* name : {"gaussian", "eisenstein", "disc-7", "zeta5", "rationals"}) {
    NumberField F = field_from_json(read_json_file(kFields + name + ".json"));
    json j = field_to_json(F);
    NumberField G = field_from_json(j);
    CHECK(G.disc() == F.disc());
    CHECK(field_to_json(G) == j);
  }
  CHECK_THROWS_AS(field_from_json(json{{"min_poly", {"1", "x"}}}), std::exception);
}

TEST_CASE("classes artifacts validate and detect tampering") {
  json d = gaussian_classes();
  CHECK_NOTHROW(validate(d, "classes"));
  json bad = d;
  bad["m"] = "two";
  CHECK(schema_error_path(bad, "classes") == "$.m");
  json tampered = d;
  tampered["classes"][0]["min"] = "2";
  CHECK(schema_error_path(tampered, "classes") == "$.hash");
  json missing = d;
  missing.erase("field");
  CHECK(schema_error_path(missing, "classes") == "$.field");
}

TEST_CASE("artifacts are deterministic") {
  json a = gaussian_classes(), b = gaussian_classes();
  CHECK(a["hash"] == b["hash"]);
  json ca = stage_complex(a), cb = stage_complex(b);
  CHECK(ca["hash"] == cb["hash"]);
  CHECK(stage_bloch(ca)["hash"] == stage_bloch(cb)["hash"]);
}

TEST_CASE("complex and bloch artifacts round trip") {
  json cx = stage_complex(gaussian_classes());
  CHECK_NOTHROW(validate(cx, "complex"));
  NumberField F = field_from_json(cx["field"]);
  ComplexSummary s = complex_from_json(F, cx);
  REQUIRE(s.h3.size() == 1);
  CHECK(s.N == 12);
  json bl = stage_bloch(cx);
  CHECK_NOTHROW(validate(bl, "bloch"));
  PreBlochElement beta = pre_bloch_from_json(F, bl["elements"][0]["terms"], "$.elements[0].terms");
  CHECK(pre_bloch_to_json(beta) == bl["elements"][0]["terms"]);
  CHECK(verify_bloch(F, beta).passed);
}

TEST_CASE("files") {
  fs::path dir = scratch("files");
  json d = {{"kind", "x"}, {"v", {1, 2}}};
  write_json_file((dir / "a.json").string(), d);
  CHECK(read_json_file((dir / "a.json").string()) == d);
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), std::invalid_argument);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS_AS(read_json_file((dir / "broken.json").string()), SchemaError);
}

TEST_CASE("pipeline caches by content hash") {
  fs::path dir = scratch("pipeline");
  PipelineConfig c;
  c.field_path = kFields + "gaussian.json";
  c.out_dir = dir.string();
  c.regulator.prime_bound = 20000;
  c.regulator.tolerance = 1e-3;
  PipelineResult first = run_pipeline(c);
  CHECK(first.exit_code == kExitPass);
  REQUIRE(first.stages.size() == 4);
  for (const auto& s : first.stages) CHECK_FALSE(s.cached);
  PipelineResult second = run_pipeline(c);
  REQUIRE(second.stages.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(second.stages[i].cached);
    CHECK(second.stages[i].hash == first.stages[i].hash);
  }
  c.regulator.prime_bound = 30000;
  PipelineResult third = run_pipeline(c);
  REQUIRE(third.stages.size() == 4);
  CHECK(third.stages[2].cached);
  CHECK_FALSE(third.stages[3].cached);
  CHECK(first.report["verdict_A"]["status"] == "pass");
}

TEST_CASE("pipeline input errors") {
  PipelineConfig c;
  c.field_path = kFields + "no-such-field.json";
  c.out_dir = scratch("errors").string();
  CHECK(run_pipeline(c).exit_code == kExitInput);
  c.field_path = kFields + "rationals.json";
  c.stop_after = "classes";
  c.m = 4;
  c.class_budget = 1;
  CHECK(run_pipeline(c).exit_code == kExitBudget);
}
