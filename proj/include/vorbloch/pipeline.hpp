#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorbloch/serialize.hpp"

namespace vorbloch {

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitInconclusive = 2, kExitBudget = 3, kExitInput = 4 };

// Stage failure with the exit code it maps to.
struct StageError : std::runtime_error {
  StageError(int code, const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), code(code), stage(stage) {}
  int code;
  std::string stage;
};

struct ClassesParams {
  int m = 2;
  EnumOptions enumeration;
};
json stage_classes(const NumberField& F, const ClassesParams& p, const json* resume = nullptr);

json stage_complex(const json& classes, VertexOrder order = VertexOrder::Canonical);

json stage_bloch(const json& complex);

struct RegulatorParams {
  int precision = 60;
  long prime_bound = 10000000;
  std::optional<long> k2, k3tor;
  std::string k_table;  // JSON table keyed by discriminant; empty uses the bundled one
  double tolerance = 1e-6;
};
// Throws StageError(kExitInput) when no K-group orders are known for the field.
json stage_report(const json& bloch, const RegulatorParams& p);

// K-group orders for a discriminant from a table file; returns the source description.
std::optional<std::pair<long, long>> lookup_k_groups(const std::string& table, const Integer& disc, std::string* source);

struct PipelineConfig {
  std::string field_path;
  std::string out_dir = ".";
  std::string stop_after = "report";  // classes, complex, bloch or report
  int m = 2;
  size_t class_budget = 1000;
  size_t equiv_budget = 5000000;
  bool reverse_traversal = false;
  VertexOrder order = VertexOrder::Canonical;
  RegulatorParams regulator;
  bool use_cache = true;
};

struct StageLog {
  std::string stage, path, hash;
  bool cached = false;
  double seconds = 0;
};

struct PipelineResult {
  int exit_code = kExitPass;
  std::vector<StageLog> stages;
  json report;  // last artifact produced
  std::string error, error_stage;
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace vorbloch
