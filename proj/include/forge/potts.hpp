#pragma once

#include <array>

#include "forge/spin_model.hpp"

namespace forge {

// State read off a pair of +-1 spins (s, sp).
//   potts4: (+,+)->0 (+,-)->1 (-,+)->2 (-,-)->3
//   potts3: (+,+)->0 (+,-)->1 (-,+)->1 (-,-)->2   (state 1 doubly represented)
int potts4_decode(int s, int sp);
int potts3_decode(int s, int sp);

// Multilinear expansion of the same-state indicator over the four spins
// (Si, S'i, Sj, S'j). Entry [mask] is the coefficient of the monomial
// prod_{b in mask} spin_b, with bit0=Si, bit1=S'i, bit2=Sj, bit3=S'j.
// Every coefficient is an exact multiple of 1/16.
std::array<double, 16> delta_multilinear(SiteKind kind);

// Rewrites every Potts site as a pair of spin sites <name>.a/<name>.b and
// every delta term as its multilinear expansion, tracking the constant parts
// and the 3-state double-counting compensation in the model prefactor.
// Z(input) = prefactor-adjusted Z(output) exactly.
SpinModel encode_potts(const SpinModel& model);

}  // namespace forge
