#include "forge/rewrites.hpp"

#include <algorithm>
#include <set>

#include "forge/errors.hpp"

namespace forge {

int attach_leaf(IsingGraph& g, int anchor) {
  g.check_vertex(anchor, "attach_leaf");
  const int leaf = g.add_vertex(ComplexField{});
  g.add_edge(leaf, anchor);
  g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-1, 0));
  return leaf;
}

std::pair<int, int> split_vertex(IsingGraph& g, int v, const std::vector<int>& moved_neighbors) {
  g.check_vertex(v, "split_vertex");
  if (g.degree(v) < 5) throw PreconditionError("split_vertex requires degree >= 5");
  const std::set<int> moved(moved_neighbors.begin(), moved_neighbors.end());
  if (moved.size() != moved_neighbors.size())
    throw PreconditionError("split_vertex: repeated neighbor in partition");
  if (moved.empty() || moved.size() >= static_cast<std::size_t>(g.degree(v)))
    throw PreconditionError("split_vertex: partition groups must both be non-empty");
  for (int n : moved)
    if (!g.has_edge(v, n)) throw PreconditionError("split_vertex: listed vertex is not a neighbor");

  const int v2 = g.add_vertex(ComplexField::quarter(-1));
  const int ancilla = g.add_vertex(ComplexField::quarter(2));
  for (int n : moved) {
    g.remove_edge(v, n);
    g.add_edge(v2, n);
  }
  g.add_edge(v, ancilla);
  g.add_edge(ancilla, v2);
  g.vertices[v].field += ComplexField::quarter(-1);
  g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-2, -2));
  return {v2, ancilla};
}

int subdivide_edge(IsingGraph& g, int u, int v) {
  if (!g.has_edge(u, v)) throw PreconditionError("subdivide_edge: edge does not exist");
  g.remove_edge(u, v);
  const int mid = g.add_vertex(ComplexField::quarter(1));
  g.add_edge(u, mid);
  g.add_edge(mid, v);
  g.vertices[u].field += ComplexField::quarter(-1);
  g.vertices[v].field += ComplexField::quarter(-1);
  g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-1, -1));
  return mid;
}

int pin_spin(IsingGraph& g, int v) {
  g.check_vertex(v, "pin_spin");
  if (g.vertices[v].pinned != 0) throw PreconditionError("pin_spin requires an unpinned vertex");
  const int ancilla = g.add_vertex(ComplexField::quarter(-1));
  g.add_edge(ancilla, v);
  g.vertices[v].field += ComplexField::quarter(-1);
  g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-2, 1));
  return ancilla;
}

PlaquetteInsert insert_plaquette_spin(IsingGraph& g, const std::vector<int>& face) {
  if (face.size() != 4) throw PreconditionError("plaquette face must list four vertices");
  const std::set<int> distinct(face.begin(), face.end());
  if (distinct.size() != 4) throw PreconditionError("plaquette face has a repeated vertex");
  for (int v : face) g.check_vertex(v, "insert_plaquette_spin");

  const int center = g.add_vertex(ComplexField{});
  for (int v : face) {
    g.add_edge(center, v);
    g.vertices[v].field += ComplexField::quarter(-1);
  }
  const int ancilla = pin_spin(g, center);
  return {center, ancilla};
}

int remove_crossing(IsingGraph& g, int v1, int v2, int v3, int v4) {
  const int quad[4] = {v1, v2, v3, v4};
  const std::set<int> distinct(quad, quad + 4);
  if (distinct.size() != 4) throw PreconditionError("crossing vertices must be distinct");
  if (!g.has_edge(v1, v3) || !g.has_edge(v2, v4))
    throw PreconditionError("remove_crossing: crossing edges (v1,v3),(v2,v4) must exist");
  for (int i = 0; i < 4; ++i)
    if (g.has_edge(quad[i], quad[(i + 1) % 4]))
      throw PreconditionError("remove_crossing: boundary cycle edge already present");

  g.remove_edge(v1, v3);
  g.remove_edge(v2, v4);
  const int ancilla = g.add_vertex(ComplexField::quarter(3));
  for (int i = 0; i < 4; ++i) {
    g.add_edge(ancilla, quad[i]);
    g.add_edge(quad[i], quad[(i + 1) % 4]);
    g.vertices[quad[i]].field += ComplexField::quarter(-3);
  }
  g.prefactor = prefactor_mul(g.prefactor, Prefactor::half_power(-1, 2));
  return ancilla;
}

}  // namespace forge
