#pragma once

#include <string>
#include <vector>

#include "forge/complex_field.hpp"
#include "forge/ising_graph.hpp"

namespace forge {

// Rectangular Ising lattice: all 2*W*H - W - H nearest-neighbor couplings
// present and equal to i*pi/4, one complex field per cell. Cells listed
// row-major (index y*width + x).
//
// pinned marks residual gray cells: fillers whose frozen-+1 state admits no
// in-grid gadget realization (see planarizer notes). Empty for fully free
// grids; the evaluator folds pins exactly.
struct GridIsing {
  int width = 0;
  int height = 0;
  std::vector<ComplexField> fields;
  std::vector<std::uint8_t> pinned;
  Prefactor prefactor;

  static GridIsing make(int w, int h);
  int index(int x, int y) const { return y * width + x; }
  ComplexField& at(int x, int y) { return fields[index(x, y)]; }
  const ComplexField& at(int x, int y) const { return fields[index(x, y)]; }
  bool is_pinned(int x, int y) const { return pinned[index(x, y)] != 0; }
  int pinned_count() const;
};

// Equivalent IsingGraph: vertex y*W+x per cell, all nearest-neighbor edges.
IsingGraph grid_to_graph(const GridIsing& g);

std::string serialize_grid(const GridIsing& g);
GridIsing parse_grid(const std::string& text);

}  // namespace forge
