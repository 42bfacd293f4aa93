#pragma once

#include <utility>
#include <vector>

#include "forge/ising_graph.hpp"

namespace forge {

// Every rewrite R maintains Z(source) = as_complex(g.prefactor) * BareZ(g):
// it mutates the graph and multiplies g.prefactor by the exact constant dP
// with BareZ(g_before) = dP * BareZ(g_after).

// New degree-1 vertex with field 0 attached to anchor; dP = 1/sqrt(2).
int attach_leaf(IsingGraph& g, int anchor);

// Splits v (degree >= 5): v keeps the edges not listed, a new vertex takes
// moved_neighbors, both joined through a merge-gadget ancilla (field i pi/2);
// both halves shifted by -i pi/4; dP = -i/2. Returns {new vertex, ancilla}.
std::pair<int, int> split_vertex(IsingGraph& g, int v, const std::vector<int>& moved_neighbors);

// Replaces edge (u, v) by a 2-path through a new vertex with field +i pi/4;
// endpoint fields reduced by i pi/4; dP = (1+i)^{-1}. Returns the midpoint.
int subdivide_edge(IsingGraph& g, int u, int v);

// Constrains free v to +1 while keeping it summed: ancilla with field -i pi/4
// attached, v's field reduced by i pi/4; dP = 1/2 e^{i pi/4}, relating the
// v-pinned partition sum to the rewritten free one. Returns the ancilla.
int pin_spin(IsingGraph& g, int v);

struct PlaquetteInsert {
  int center;
  int ancilla;
};

// New center vertex coupled to the four face vertices, held at +1 via
// pin_spin; the four fields reduced by i pi/4 each; Z unchanged except the
// pin_spin constant dP = 1/2 e^{i pi/4}.
PlaquetteInsert insert_plaquette_spin(IsingGraph& g, const std::vector<int>& face);

// Removes crossing edges (v1,v3), (v2,v4): ancilla (field 3i pi/4) connected
// to all four, boundary cycle edges (v1,v2),(v2,v3),(v3,v4),(v4,v1) added,
// each vi shifted by -3i pi/4; dP = i/sqrt(2). The cycle edges must not
// already exist (subdivide first when they do). Returns the ancilla.
int remove_crossing(IsingGraph& g, int v1, int v2, int v3, int v4);

}  // namespace forge
