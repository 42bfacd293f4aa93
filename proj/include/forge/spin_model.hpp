#pragma once

#include <string>
#include <vector>

#include "forge/complex_field.hpp"

namespace forge {

enum class SiteKind { Spin, Potts3, Potts4 };

inline int site_arity(SiteKind k) {
  switch (k) {
    case SiteKind::Spin: return 2;
    case SiteKind::Potts3: return 3;
    case SiteKind::Potts4: return 4;
  }
  return 2;
}

struct Site {
  std::string name;
  SiteKind kind = SiteKind::Spin;
};

// A term couples a set of sites. For spin sites the weight is
// e^{J * prod(S_i)}; a delta term (exactly two Potts sites of equal arity)
// has weight e^{J * delta(q_i, q_j)}.
struct Term {
  std::vector<int> sites;  // sorted ascending, duplicate-free
  ComplexField coupling;
  bool is_delta = false;
};

struct SpinModel {
  std::vector<Site> sites;
  std::vector<Term> terms;
  // Cumulative constant: Z of the artifact this model was derived from equals
  // as_complex(prefactor) * Z(this model). Identity for hand-written models.
  Prefactor prefactor;

  int site_index(const std::string& name) const;
  bool pure_spin() const;
  int add_site(const std::string& name, SiteKind kind);
  // Adds a term with a sorted site list; merges coupling into an existing
  // term when an identical subset (and delta flag) is already present.
  void add_term(std::vector<int> term_sites, const ComplexField& j,
                bool is_delta = false);

  // Throws SemanticError on duplicate site names, out-of-range term members,
  // duplicate members inside a term, empty terms, or Potts misuse (Potts
  // sites outside delta terms; delta terms that are not exactly two
  // same-arity Potts sites).
  void validate() const;
};

// Renders to the model-description text; exact for couplings expressible in
// the grammar (pure quarter-turn or plain complex decimal).
std::string render_model(const SpinModel& m);

}  // namespace forge
