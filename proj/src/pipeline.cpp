#include "forge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "forge/errors.hpp"
#include "forge/evaluator.hpp"
#include "forge/potts.hpp"

namespace forge {

namespace {

double log2_model_cost(const SpinModel& m) {
  double bits = 0.0;
  for (const auto& s : m.sites) bits += std::log2(double(site_arity(s.kind)));
  return bits;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
}

void apply_check(StageReport& st, const ZValue& za, const ZValue& zb,
                 const Prefactor& pa, const Prefactor& pb, double tol) {
  const auto v = check_equivalence(za, zb, prefactor_mul(pb, pa.inverse()), tol);
  st.checked = true;
  st.pass = v.pass;
  st.relative_error = v.relative_error;
}

}  // namespace

PipelineResult run_pipeline(const SpinModel& model, const PipelineOptions& opts) {
  model.validate();

  PipelineResult res;
  res.model = model;
  const EvalOptions eval{opts.verify_cap, opts.threads};

  double t = now_ms();
  res.encoded = model.pure_spin() ? model : encode_potts(model);
  StageReport enc{"encode", false, false, 0.0, 0.0};
  const bool model_small = log2_model_cost(model) <= opts.verify_cap;
  const bool encoded_small = log2_model_cost(res.encoded) <= opts.verify_cap;
  if (model_small && encoded_small) {
    apply_check(enc, exact_z_model(model, eval).value,
                exact_z_model(res.encoded, eval).value, model.prefactor,
                res.encoded.prefactor, opts.tol);
  }
  enc.elapsed_ms = now_ms() - t;
  res.stages.push_back(enc);

  t = now_ms();
  res.compiled = compile_model(res.encoded);
  StageReport comp{"compile", false, false, 0.0, 0.0};
  if (encoded_small && res.compiled.graph.free_count() <= opts.verify_cap) {
    apply_check(comp, exact_z_model(res.encoded, eval).value,
                exact_z_ising(res.compiled.graph, eval).value,
                res.encoded.prefactor, res.compiled.graph.prefactor, opts.tol);
  }
  comp.elapsed_ms = now_ms() - t;
  res.stages.push_back(comp);

  t = now_ms();
  EmbedOptions eo = opts.embed;
  eo.tol = opts.tol;
  eo.threads = opts.threads;
  eo.trace_dir = opts.trace_dir;
  eo.verify_steps = true;
  eo.verify_cap = std::min(opts.verify_cap, 20);
  res.embedded = embed_grid(res.compiled.graph, eo);
  StageReport emb{"embed", false, false, 0.0, 0.0};
  const GridIsing& grid = res.embedded.grid;
  const int grid_free = grid.width * grid.height - grid.pinned_count();
  if (res.compiled.graph.free_count() <= opts.verify_cap &&
      grid_free <= opts.verify_cap) {
    apply_check(emb, exact_z_ising(res.compiled.graph, eval).value,
                exact_z_ising(grid_to_graph(grid), eval).value,
                res.compiled.graph.prefactor, grid.prefactor, opts.tol);
  }
  emb.elapsed_ms = now_ms() - t;
  res.stages.push_back(emb);

  res.end_to_end_verified = true;
  for (const auto& s : res.stages) {
    res.end_to_end_verified &= s.checked && s.pass;
    res.any_check_failed |= s.checked && !s.pass;
  }
  res.verified_through_step = res.embedded.stats.verified_through_step;
  return res;
}

}  // namespace forge
