#include "forge/spin_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

int SpinModel::site_index(const std::string& name) const {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i].name == name) return static_cast<int>(i);
  return -1;
}

bool SpinModel::pure_spin() const {
  return std::all_of(sites.begin(), sites.end(),
                     [](const Site& s) { return s.kind == SiteKind::Spin; });
}

int SpinModel::add_site(const std::string& name, SiteKind kind) {
  if (site_index(name) >= 0)
    throw SemanticError("duplicate site " + name);
  sites.push_back({name, kind});
  return static_cast<int>(sites.size()) - 1;
}

void SpinModel::add_term(std::vector<int> term_sites, const ComplexField& j,
                         bool is_delta) {
  std::sort(term_sites.begin(), term_sites.end());
  for (auto& t : terms) {
    if (t.is_delta == is_delta && t.sites == term_sites) {
      t.coupling = canonical(t.coupling + j);
      return;
    }
  }
  terms.push_back({std::move(term_sites), canonical(j), is_delta});
}

void SpinModel::validate() const {
  std::set<std::string> names;
  for (const auto& s : sites)
    if (!names.insert(s.name).second)
      throw SemanticError("duplicate site " + s.name);
  for (const auto& t : terms) {
    if (t.sites.empty()) throw SemanticError("empty term");
    int prev = -1;
    for (int s : t.sites) {
      if (s < 0 || s >= static_cast<int>(sites.size()))
        throw SemanticError("term references unknown site index " +
                            std::to_string(s));
      if (s == prev)
        throw SemanticError("duplicate site in term: " + sites[s].name);
      prev = s;
    }
    if (t.is_delta) {
      if (t.sites.size() != 2)
        throw SemanticError("delta term must have exactly two sites");
      const Site& a = sites[t.sites[0]];
      const Site& b = sites[t.sites[1]];
      if (a.kind == SiteKind::Spin || a.kind != b.kind)
        throw SemanticError(
            "delta term requires two Potts sites of equal arity");
    } else {
      for (int s : t.sites)
        if (sites[s].kind != SiteKind::Spin)
          throw SemanticError("Potts site " + sites[s].name +
                              " used in a non-delta term");
    }
  }
}

namespace {
std::string render_coupling(const ComplexField& j) {
  if (j.on_quarter_lattice() && j.real_part == 0.0)
    return std::to_string(j.quarter_turns) + "*i*pi/4";
  std::ostringstream os;
  os << format_double(j.real_part);
  double im = j.imag();
  if (im != 0.0) {
    if (im > 0.0)
      os << "+" << format_double(im) << "i";
    else
      os << "-" << format_double(-im) << "i";
  }
  return os.str();
}
}  // namespace

std::string render_model(const SpinModel& m) {
  std::ostringstream os;
  for (const auto& s : m.sites) {
    os << "site " << s.name << " ";
    switch (s.kind) {
      case SiteKind::Spin: os << "spin"; break;
      case SiteKind::Potts3: os << "potts3"; break;
      case SiteKind::Potts4: os << "potts4"; break;
    }
    os << "\n";
  }
  for (const auto& t : m.terms) {
    os << "term ";
    if (t.is_delta) os << "delta ";
    os << "{";
    for (std::size_t i = 0; i < t.sites.size(); ++i) {
      if (i) os << " ";
      os << m.sites[t.sites[i]].name;
    }
    os << "} " << render_coupling(t.coupling) << "\n";
  }
  return os.str();
}

}  // namespace forge
