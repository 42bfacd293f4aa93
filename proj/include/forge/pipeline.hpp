#pragma once

#include <string>
#include <vector>

#include "forge/gadget_compiler.hpp"
#include "forge/planarizer.hpp"
#include "forge/spin_model.hpp"

namespace forge {

struct PipelineOptions {
  double tol = 1e-10;
  // Exact-enumeration budget (log2 of configurations) for whole-artifact
  // verification; per-rewrite step checks inside the embedder run at
  // min(verify_cap, 20).
  int verify_cap = 26;
  int threads = 1;
  std::string trace_dir;
  EmbedOptions embed;  // placement hints; its verify knobs are overwritten
};

struct StageReport {
  std::string name;  // "encode", "compile", "embed"
  bool checked = false;  // an exact-Z comparison ran for this stage
  bool pass = false;
  double relative_error = 0.0;
  double elapsed_ms = 0.0;
};

struct PipelineResult {
  SpinModel model;    // validated input
  SpinModel encoded;  // pure-spin form (same object when already pure)
  CompileResult compiled;
  EmbedResult embedded;
  std::vector<StageReport> stages;
  // True when every stage was checked against an exact partition sum and
  // passed. When the grid outgrows the budget, the embedder's per-rewrite
  // checks stand in and verified_through_step records how far they reached
  // (-1 = all steps).
  bool end_to_end_verified = false;
  bool any_check_failed = false;
  int verified_through_step = -1;
};

PipelineResult run_pipeline(const SpinModel& model, const PipelineOptions& opts = {});

}  // namespace forge
