#pragma once

#include <vector>

#include "forge/cyclo8.hpp"

namespace forge {

// Boundary semantics (sigma = boundary spins, s0 = summed ancilla):
//   Leaf           LHS = 1                      (arity 1)
//   Pin            LHS = [sigma1 = +1]          (arity 1)
//   Subdivide      LHS = zeta^{sigma1 sigma2}   (arity 2)
//   Merge          LHS = [sigma1 = sigma2]      (arity 2)
//   ConstraintStar LHS = [prod sigma = +1]      (arity m)
//   Crossing       LHS = zeta^{s1 s3 + s2 s4}   (arity 4)
// RHS = scalar * sum_{s0} zeta^{ancilla_q s0 + s0 Sum(sigma)} * zeta^{leg_q Sum(sigma)}
// with zeta = e^{i pi/4}; the Crossing RHS additionally carries the boundary
// cycle zeta^{s1s2 + s2s3 + s3s4 + s4s1} that replaces the crossing edges.
enum class TemplateShape { Leaf, Pin, Subdivide, Merge, ConstraintStar, Crossing };

struct GadgetTemplate {
  TemplateShape shape = TemplateShape::Leaf;
  int arity = 1;
  int ancilla_q = 0;  // ancilla field, units of i pi/4
  int leg_q = 0;      // boundary field shift, units of i pi/4
  Cyclo8 scalar = Cyclo8::one();
};

int shape_arity(TemplateShape shape, int star_size = 1);

struct TemplateCheck {
  bool pass = true;
  int first_bad_config = -1;  // bit j set <=> sigma_{j+1} = -1
};

// Exact ring check of LHS == scalar * RHS over all 2^arity boundary configs.
TemplateCheck check_template(const GadgetTemplate& t);
bool verify_template(const GadgetTemplate& t);

// Deterministic exhaustive search over ancilla_q, leg_q in [-3, 4] and
// scalar = 2^{k/2} zeta^q with k in [-8, 8], q in [-3, 4].
std::vector<GadgetTemplate> fit_all_solutions(TemplateShape shape, int star_size = 1);
GadgetTemplate fit_gadget_constants(TemplateShape shape, int star_size = 1);

}  // namespace forge
