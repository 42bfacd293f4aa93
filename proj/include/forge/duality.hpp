#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "forge/complex_field.hpp"
#include "forge/ising_graph.hpp"

namespace forge {

// Sum over the center spin of a uniform-coupling star whose neighbor spins
// total m: F(m) = sum_{S=+-1} e^{(f0 + m*i*pi/4) * S}. The quarter-turn part
// stays on the exact unit table.
std::complex<double> star_sum(const ComplexField& f0, int m);

// Degree-2 decimation: F(s1,s2) = 2A e^{K s1 s2 + h1 s1 + h2 s2}.
// Uniform legs make the star symmetric, so h1 and h2 are one computed value
// (equal bit for bit). branch_* record the log sheet taken: value =
// principal/4 + branch * i*pi/2, chosen to minimize |Im| with ties resolved
// toward positive imaginary part; K additionally keeps the table exact, so
// its branch may sit half a turn off the minimal one.
struct DecimationFit {
  std::complex<double> a{}, k{}, h1{}, h2{};
  int branch_k = 0, branch_h1 = 0, branch_h2 = 0;
};

// Degree-1 analogue: F(s) = 2A e^{h s}.
struct LegFit {
  std::complex<double> a{};
  std::complex<double> h{};
  int branch_h = 0;
};

// Degree-3 star-triangle table: ln F(s1,s2,s3) expanded multilinearly.
// coeff[mask] multiplies prod_{bit b set in mask} s_{b+1}; coeff[7] is the
// emergent three-body coupling. exp of the expansion reproduces the eight
// table entries exactly by construction.
struct StarTriangleFit {
  std::array<std::complex<double>, 8> coeff{};
};

// All fits throw FitError when any star sum vanishes (within 1e-14 of the
// table's scale).
DecimationFit fit_star_pair(const ComplexField& f0);
LegFit fit_star_leg(const ComplexField& f0);
StarTriangleFit fit_star_triangle(const ComplexField& f0);

// Fit for summing out vertex v of g. pre: v free and of degree 2.
DecimationFit decimate_spin(const IsingGraph& g, int v);

struct DualBond {
  int w1 = 0, w2 = 0;
  std::complex<double> k{};
};

struct DualTriple {
  int w1 = 0, w2 = 0, w3 = 0;
  std::complex<double> c{};
};

// Per-black record kept for reporting; the member matching `degree` is the
// meaningful one.
struct BlackFit {
  int black = -1;
  int degree = 0;
  std::complex<double> constant{};  // degree 0
  LegFit leg;                       // degree 1
  DecimationFit pair;               // degree 2
  StarTriangleFit triangle;         // degree 3
};

// Result of summing out every black vertex of a bipartite graph: whites keep
// their own fields plus the per-fit shifts, fitted couplings become explicit
// bonds/triples, and the 2A factors accumulate in `constant` so that
//   BareZ(g) = as_complex(constant) * dual_model_z(this)   exactly.
struct DualModel {
  std::vector<int> white_vertex;  // dual site -> source graph vertex
  std::vector<std::complex<double>> fields;
  std::vector<DualBond> bonds;
  std::vector<DualTriple> triples;
  Prefactor constant;
  std::vector<BlackFit> fits;  // one per black, in vertex order
};

// Sums out vertices [0, n_blacks) of g. Every black must be free, of degree
// at most 3, and adjacent only to vertices >= n_blacks; whites must be free.
DualModel decimate_blacks(const IsingGraph& g, int n_blacks);

// Brute-force partition sum of the decimated model (<= 24 dual sites).
std::complex<double> dual_model_z(const DualModel& dm);

// Square-lattice duality probe on a rows x cols site patch (free boundary,
// uniform coupling J): compiles the patch, sums out the edge variables, and
// compares against the ideal uniform-K dual patch of (rows-1) x (cols-1)
// sites. All quantities are recorded; nothing is asserted here.
struct SquareDualityReport {
  int rows = 0, cols = 0, n_sites = 0;
  std::complex<double> j{};
  std::complex<double> k{};  // fitted when a shared edge exists, else -log(tanh J)/2
  bool k_from_fit = false;
  bool k_uniform = true;
  double closed_form_error = 0.0;   // |e^{-2K} - tanh J|
  double decomposition_error = 0.0; // Z(model) vs prefactor * 2A-product * Z(dual model)
  std::complex<double> z_source{};
  std::complex<double> z_dual_model{};
  std::complex<double> z_dual_ideal{};
  std::complex<double> measured_ratio{};  // z_source / ((2 sinh 2J)^N * z_dual_ideal)
};

// pre: rows, cols >= 2 and rows*cols <= 12 sites.
SquareDualityReport derive_square_duality(int rows, int cols, const ComplexField& J);

std::string render_duality_report(const SquareDualityReport& r);

}  // namespace forge
