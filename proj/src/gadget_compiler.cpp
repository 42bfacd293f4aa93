#include "forge/gadget_compiler.hpp"

#include <string>

#include "forge/errors.hpp"
#include "forge/gf2.hpp"
#include "forge/potts.hpp"

namespace forge {

ConstraintSystem build_constraint_system(const SpinModel& model) {
  model.validate();
  if (!model.pure_spin())
    throw PreconditionError("constraint extraction requires a pure spin model");

  const int n_terms = static_cast<int>(model.terms.size());
  const int n_sites = static_cast<int>(model.sites.size());
  BitMatrix incidence(n_terms, n_sites);
  for (int t = 0; t < n_terms; ++t)
    for (int s : model.terms[t].sites) incidence.set(t, s, true);

  ConstraintSystem sys;
  sys.variable_fields.reserve(n_terms);
  for (const Term& t : model.terms) sys.variable_fields.push_back(t.coupling);
  sys.constraints = gf2_left_null_space(incidence);
  sys.overcount_exponent = n_sites - gf2_rank(incidence);
  return sys;
}

CompileResult compile_model(const SpinModel& model) {
  const SpinModel spin_model = encode_potts(model);

  CompileResult result;
  result.system = build_constraint_system(spin_model);
  result.n_variables = static_cast<int>(result.system.variable_fields.size());

  IsingGraph& g = result.graph;
  g.prefactor = spin_model.prefactor;
  for (int t = 0; t < result.n_variables; ++t) {
    g.add_vertex(result.system.variable_fields[t]);
    std::string name = "T{";
    const Term& term = spin_model.terms[t];
    for (std::size_t i = 0; i < term.sites.size(); ++i) {
      if (i) name += ",";
      name += spin_model.sites[term.sites[i]].name;
    }
    name += "}";
    result.vertex_names.push_back(name);
  }

  // Spin configurations map 2^overcount-to-one onto term-variable
  // configurations that satisfy the constraints.
  g.prefactor = prefactor_mul(
      g.prefactor, Prefactor::half_power(2 * result.system.overcount_exponent, 0));

  for (const auto& constraint : result.system.constraints) {
    const int m = static_cast<int>(constraint.size());
    const int ancilla = g.add_vertex(ComplexField::quarter(-m));
    std::string name = "C{";
    for (std::size_t i = 0; i < constraint.size(); ++i) {
      if (i) name += ",";
      name += std::to_string(constraint[i]);
    }
    name += "}";
    result.vertex_names.push_back(name);
    for (int t : constraint) {
      g.add_edge(ancilla, t);
      g.vertices[t].field += ComplexField::quarter(-1);
    }
    // delta(prod T = 1) = 1/2 e^{i m pi/4} * (star gadget sum)
    g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-2, m));
  }

  for (auto& v : g.vertices) v.field = canonical(v.field);
  validate(g);
  return result;
}

}  // namespace forge
