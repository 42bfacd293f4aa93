#pragma once

#include <vector>

#include "forge/complex_field.hpp"

namespace forge {

// Intermediate form between a pure-spin model and the uniform-coupling graph:
// one +-1 variable per original term (its field = the term's coupling), a
// GF(2)-independent basis of product constraints (each listed subset's spin
// product must equal +1), and the overcount exponent
// n_original_sites - rank(incidence), so that
//   Z_model = 2^overcount_exponent * sum over constraint-satisfying
//             assignments of e^{sum_t field_t * T_t}.
struct ConstraintSystem {
  std::vector<ComplexField> variable_fields;
  std::vector<std::vector<int>> constraints;
  int overcount_exponent = 0;
};

}  // namespace forge
