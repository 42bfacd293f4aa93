#include "forge/gadget_fit.hpp"

#include <array>

#include "forge/errors.hpp"

namespace forge {

namespace {

constexpr int kMaxStar = 8;

Cyclo8 lhs_value(TemplateShape shape, const std::array<int, kMaxStar>& s, int arity) {
  switch (shape) {
    case TemplateShape::Leaf:
      return Cyclo8::one();
    case TemplateShape::Pin:
      return s[0] > 0 ? Cyclo8::one() : Cyclo8::zero();
    case TemplateShape::Subdivide:
      return Cyclo8::zeta_pow(s[0] * s[1]);
    case TemplateShape::Merge:
      return s[0] == s[1] ? Cyclo8::one() : Cyclo8::zero();
    case TemplateShape::ConstraintStar: {
      int prod = 1;
      for (int j = 0; j < arity; ++j) prod *= s[j];
      return prod > 0 ? Cyclo8::one() : Cyclo8::zero();
    }
    case TemplateShape::Crossing:
      return Cyclo8::zeta_pow(s[0] * s[2] + s[1] * s[3]);
  }
  return Cyclo8::zero();
}

// RHS without the scalar factor.
Cyclo8 rhs_sum(TemplateShape shape, const std::array<int, kMaxStar>& s, int arity,
               int ancilla_q, int leg_q) {
  int sum = 0;
  for (int j = 0; j < arity; ++j) sum += s[j];
  Cyclo8 total = Cyclo8::zeta_pow(ancilla_q + sum) + Cyclo8::zeta_pow(-ancilla_q - sum);
  total = total * Cyclo8::zeta_pow(leg_q * sum);
  if (shape == TemplateShape::Crossing) {
    const int cycle = s[0] * s[1] + s[1] * s[2] + s[2] * s[3] + s[3] * s[0];
    total = total * Cyclo8::zeta_pow(cycle);
  }
  return total;
}

void spins_of(int cfg, int arity, std::array<int, kMaxStar>& s) {
  for (int j = 0; j < arity; ++j) s[j] = (cfg >> j) & 1 ? -1 : 1;
}

}  // namespace

int shape_arity(TemplateShape shape, int star_size) {
  switch (shape) {
    case TemplateShape::Leaf:
    case TemplateShape::Pin:
      return 1;
    case TemplateShape::Subdivide:
    case TemplateShape::Merge:
      return 2;
    case TemplateShape::ConstraintStar:
      return star_size;
    case TemplateShape::Crossing:
      return 4;
  }
  return 1;
}

TemplateCheck check_template(const GadgetTemplate& t) {
  if (t.arity < 1 || t.arity > kMaxStar)
    throw PreconditionError("template arity must be in [1, 8]");
  std::array<int, kMaxStar> s{};
  for (int cfg = 0; cfg < (1 << t.arity); ++cfg) {
    spins_of(cfg, t.arity, s);
    const Cyclo8 lhs = lhs_value(t.shape, s, t.arity);
    const Cyclo8 rhs = t.scalar * rhs_sum(t.shape, s, t.arity, t.ancilla_q, t.leg_q);
    if (!(lhs == rhs)) return {false, cfg};
  }
  return {true, -1};
}

bool verify_template(const GadgetTemplate& t) { return check_template(t).pass; }

std::vector<GadgetTemplate> fit_all_solutions(TemplateShape shape, int star_size) {
  const int arity = shape_arity(shape, star_size);
  if (arity < 1 || arity > kMaxStar)
    throw PreconditionError("template arity must be in [1, 8]");

  const int n_cfg = 1 << arity;
  std::array<int, kMaxStar> s{};
  std::vector<Cyclo8> lhs(n_cfg);
  for (int cfg = 0; cfg < n_cfg; ++cfg) {
    spins_of(cfg, arity, s);
    lhs[cfg] = lhs_value(shape, s, arity);
  }

  std::vector<GadgetTemplate> found;
  std::vector<Cyclo8> rhs(n_cfg);
  for (int aq = -3; aq <= 4; ++aq) {
    for (int lq = -3; lq <= 4; ++lq) {
      for (int cfg = 0; cfg < n_cfg; ++cfg) {
        spins_of(cfg, arity, s);
        rhs[cfg] = rhs_sum(shape, s, arity, aq, lq);
      }
      for (int k = -8; k <= 8; ++k) {
        for (int q = -3; q <= 4; ++q) {
          const Cyclo8 c = Cyclo8::scalar(k, q);
          bool ok = true;
          for (int cfg = 0; cfg < n_cfg && ok; ++cfg) ok = lhs[cfg] == c * rhs[cfg];
          if (ok) found.push_back({shape, arity, aq, lq, c});
        }
      }
    }
  }
  return found;
}

GadgetTemplate fit_gadget_constants(TemplateShape shape, int star_size) {
  std::vector<GadgetTemplate> all = fit_all_solutions(shape, star_size);
  if (all.empty()) throw FitError("no exact template on the i pi/4 lattice");
  return all.front();
}

}  // namespace forge
