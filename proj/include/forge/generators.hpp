#pragma once

#include <string>

#include "forge/spin_model.hpp"

namespace forge {

enum class LatticeKind { Square, Triangular, Hexagonal, Triangular3Body };

LatticeKind lattice_kind_from_name(const std::string& name);

// Free-boundary lattice patches.
//   square:          rows x cols plaquettes, (rows+1)(cols+1) sites, one pair
//                    term per nearest-neighbor edge.
//   triangular:      rows strips of cols corner-sharing/edge-sharing
//                    triangles (a single strip is the zigzag chain: cols=1
//                    gives one triangle on 3 sites); pair term per edge.
//   hexagonal:       brick-wall honeycomb, rows x cols hexagons; pair term
//                    per edge (one hexagon: 6 sites, 6 edges).
//   triangular3body: same vertex geometry as triangular, one 3-site term per
//                    triangle instead of edge terms.
SpinModel gen_lattice(LatticeKind kind, int rows, int cols,
                      const ComplexField& J);

// "kind:RxC:J", e.g. "triangular:2x3:0.5" or "square:1x2:0.25+0.5i"; the
// coupling accepts the model-description grammar (including q* quarter
// turns).
SpinModel parse_gen_spec(const std::string& spec);

}  // namespace forge
