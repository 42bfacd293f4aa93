#pragma once

#include <string>
#include <vector>

#include "forge/constraint_system.hpp"
#include "forge/ising_graph.hpp"
#include "forge/spin_model.hpp"

namespace forge {

// One +-1 variable per term; product constraints = GF(2) left null space of
// the term/site incidence matrix (weight-reduced, deterministic order);
// overcount_exponent = n_sites - rank(incidence).
ConstraintSystem build_constraint_system(const SpinModel& pure_spin_model);

struct CompileResult {
  IsingGraph graph;
  ConstraintSystem system;
  // graph vertex -> human-readable origin ("T{a,b}" for term variables,
  // "C{0,2,5}" for constraint-star ancillas), used for the .prov sidecar.
  std::vector<std::string> vertex_names;
  int n_variables = 0;  // graph vertices [0, n_variables) are term variables
};

// Potts encoding (if needed) + constraint extraction + one star gadget per
// constraint. Z relation: Z(model) = model-adjusted prefactor * Z(graph),
// tracked in graph.prefactor.
CompileResult compile_model(const SpinModel& model);

}  // namespace forge
