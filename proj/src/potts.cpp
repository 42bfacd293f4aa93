#include "forge/potts.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

int potts4_decode(int s, int sp) {
  return (s < 0 ? 2 : 0) + (sp < 0 ? 1 : 0);
}

int potts3_decode(int s, int sp) {
  if (s > 0 && sp > 0) return 0;
  if (s < 0 && sp < 0) return 2;
  return 1;
}

std::array<double, 16> delta_multilinear(SiteKind kind) {
  if (kind == SiteKind::Spin) throw PreconditionError("delta expansion is for Potts kinds");
  auto decode = kind == SiteKind::Potts4 ? potts4_decode : potts3_decode;
  std::array<double, 16> coeff{};
  for (int cfg = 0; cfg < 16; ++cfg) {
    int s[4];
    for (int b = 0; b < 4; ++b) s[b] = (cfg >> b) & 1 ? -1 : 1;
    if (decode(s[0], s[1]) != decode(s[2], s[3])) continue;
    for (int mask = 0; mask < 16; ++mask) {
      int monomial = 1;
      for (int b = 0; b < 4; ++b)
        if ((mask >> b) & 1 && s[b] < 0) monomial = -monomial;
      coeff[mask] += monomial / 16.0;
    }
  }
  return coeff;
}

SpinModel encode_potts(const SpinModel& model) {
  model.validate();
  SpinModel out;
  out.prefactor = model.prefactor;

  // site -> spin-site indices in the output ({idx, -1} for plain spins)
  std::vector<std::array<int, 2>> image(model.sites.size());
  for (std::size_t i = 0; i < model.sites.size(); ++i) {
    const Site& site = model.sites[i];
    if (site.kind == SiteKind::Spin) {
      image[i] = {out.add_site(site.name, SiteKind::Spin), -1};
    } else {
      const int a = out.add_site(site.name + ".a", SiteKind::Spin);
      const int b = out.add_site(site.name + ".b", SiteKind::Spin);
      image[i] = {a, b};
      if (site.kind == SiteKind::Potts3) {
        // Collapse the doubled middle state: weight 2^{-1/2} e^{(ln2/2) S S'}
        // is 1 on aligned pairs and 1/2 on each of the two anti-aligned ones.
        out.add_term({a, b}, ComplexField::real(std::numbers::ln2 / 2.0));
        out.prefactor = prefactor_mul(out.prefactor, Prefactor::half_power(-1, 0));
      }
    }
  }

  for (const Term& t : model.terms) {
    if (!t.is_delta) {
      std::vector<int> sites;
      sites.reserve(t.sites.size());
      for (int s : t.sites) sites.push_back(image[s][0]);
      out.add_term(sites, t.coupling);
      continue;
    }
    const SiteKind kind = model.sites[t.sites[0]].kind;
    const auto coeff = delta_multilinear(kind);
    const int legs[4] = {image[t.sites[0]][0], image[t.sites[0]][1],
                         image[t.sites[1]][0], image[t.sites[1]][1]};
    for (int mask = 0; mask < 16; ++mask) {
      const int num = static_cast<int>(std::lround(coeff[mask] * 16.0));
      if (num == 0) continue;
      const ComplexField scaled = t.coupling.scaled(num, 16);
      if (mask == 0) {
        out.prefactor.times_exp(scaled);
        continue;
      }
      std::vector<int> sites;
      for (int b = 0; b < 4; ++b)
        if ((mask >> b) & 1) sites.push_back(legs[b]);
      out.add_term(sites, scaled);
    }
  }

  out.validate();
  return out;
}

}  // namespace forge
