#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "forge/complex_field.hpp"
#include "forge/constraint_system.hpp"
#include "forge/grid_ising.hpp"
#include "forge/ising_graph.hpp"
#include "forge/spin_model.hpp"

namespace forge {

struct EvalOptions {
  int max_free_spins = 28;  // enumeration refuses beyond 2^max_free_spins configs
  int threads = 1;
};

enum class ZMethod { BruteModel, BruteIsing, Constrained, Transfer };

std::string method_name(ZMethod m);

// Partition function kept in log form so prefactor arithmetic never overflows.
struct ZValue {
  bool is_zero = false;
  double log_magnitude = 0.0;
  double phase = 0.0;  // (-pi, pi]

  static ZValue zero();
  static ZValue from_complex(std::complex<double> c);
  static ZValue from_log(double log_mag, double ph);
  std::complex<double> as_complex() const;
  ZValue scaled_two_pow(int k) const;   // value * 2^k
  ZValue times(const Prefactor& p) const;
};

struct ZReport {
  ZValue value;
  std::int64_t n_configs = 0;  // -1 when it would not fit in 63 bits
  ZMethod method = ZMethod::BruteIsing;
  double elapsed_ms = 0.0;
};

// Sum over every joint site configuration (mixed radix over site arities).
ZReport exact_z_model(const SpinModel& model, const EvalOptions& opts = {});

// Sum over free spins of an arbitrary-graph Ising instance; pinned spins are
// folded into fields and a constant before enumeration. Gray-code updates in
// fixed 2^16-config blocks; block partials are summed in index order, so the
// result is bit-identical for every thread count.
ZReport exact_z_ising(const IsingGraph& g, const EvalOptions& opts = {});

// Sum over the GF(2) solution set of the constraint system, including the
// 2^overcount_exponent multiplicity factor.
ZReport exact_z_constrained(const ConstraintSystem& sys, const EvalOptions& opts = {});

// Row-to-row transfer contraction of a rectangular grid. Contracts along the
// shorter dimension; refuses grids with pinned cells or min(W,H) > 24.
ZReport transfer_z(const GridIsing& grid, const EvalOptions& opts = {});

struct EquivalenceVerdict {
  bool pass = false;
  double relative_error = 0.0;
};

// Checks z_source ~= prefactor_ratio * z_target at relative tolerance tol,
// with an absolute fallback of tol for near-zero values.
EquivalenceVerdict check_equivalence(const ZValue& z_source, const ZValue& z_target,
                                     const Prefactor& prefactor_ratio, double tol);

}  // namespace forge
