#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/grid_ising.hpp"
#include "forge/ising_graph.hpp"

namespace forge {

struct EmbedOptions {
  // Exact cell per input vertex. All-or-nothing: when non-empty it must cover
  // every vertex, the graph must already have max degree <= 4, and cells are
  // used literally (no dilation). Adjacent cells must carry a graph edge.
  std::map<int, std::pair<int, int>> placement_hints;

  // Verify Z after every individual rewrite while the intermediate graph
  // stays within verify_cap free spins.
  bool verify_steps = false;
  double tol = 1e-10;
  int verify_cap = 20;
  int threads = 1;

  // When non-empty, writes one serialized graph per rewrite step plus a log.
  std::string trace_dir;
};

struct RoutePath {
  int u = -1, v = -1;
  std::vector<std::pair<int, int>> cells;  // full path, endpoints included
};

struct GridLayout {
  std::vector<std::pair<int, int>> vertex_cell;  // per post-split vertex
  std::vector<RoutePath> routes;
  std::vector<std::pair<int, int>> crossings;
  int width = 0, height = 0;
};

struct EmbedStats {
  int splits = 0;
  int crossings = 0;
  int subdivisions = 0;
  int filler_pairs = 0;
  int residual_pins = 0;
  int grid_cells = 0;
  int steps = 0;
  // Index of the last step whose Z was checked, -1 when every step was
  // (or verification was off).
  int verified_through_step = -1;
};

struct EmbedResult {
  GridIsing grid;
  GridLayout layout;
  EmbedStats stats;
};

// Full pipeline: split to degree <= 4, place, route orthogonally (perpendicular
// crossings allowed), compact the layout, materialize crossings and route
// subdivisions as rewrites, densify every remaining cell with pinned fillers
// realized pairwise, canonicalize. Z(g) = grid.prefactor/g.prefactor * Z(grid)
// exactly, where unrealizable fillers stay as pinned (gray) grid cells.
EmbedResult embed_grid(const IsingGraph& g, const EmbedOptions& opts = {});

}  // namespace forge
