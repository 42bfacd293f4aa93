#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

#include "forge/duality.hpp"
#include "forge/errors.hpp"
#include "forge/evaluator.hpp"
#include "forge/gadget_compiler.hpp"
#include "forge/generators.hpp"

using namespace forge;
using cx = std::complex<double>;

namespace {

ComplexField random_field(std::mt19937& rng) {
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  std::uniform_real_distribution<double> im(-0.7, 0.7);
  return canonical({re(rng), 0, im(rng)});
}

cx brute_star_sum(const ComplexField& f0, int m) {
  const cx x = f0.value() + cx(0.0, m * std::numbers::pi / 4);
  return std::exp(x) + std::exp(-x);
}

}  // namespace

TEST_CASE("star sum matches direct evaluation for all neighbor totals") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const ComplexField f0 = random_field(rng);
    for (int m = -8; m <= 8; ++m) {
      const cx got = star_sum(f0, m);
      const cx want = brute_star_sum(f0, m);
      CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("degree-2 fit reproduces the four-entry table") {
  std::mt19937 rng(11);
  int fitted = 0;
  for (int t = 0; t < 60; ++t) {
    const ComplexField f0 = random_field(rng);
    DecimationFit f;
    try {
      f = fit_star_pair(f0);
    } catch (const FitError&) {
      continue;
    }
    ++fitted;
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        const cx want = star_sum(f0, s1 + s2);
        const cx got = 2.0 * f.a *
                       std::exp(f.k * double(s1 * s2) + f.h1 * double(s1) + f.h2 * double(s2));
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
  }
  CHECK(fitted >= 55);
}

TEST_CASE("degree-1 fit reproduces the two-entry table") {
  std::mt19937 rng(12);
  for (int t = 0; t < 60; ++t) {
    const ComplexField f0 = random_field(rng);
    LegFit f;
    try {
      f = fit_star_leg(f0);
    } catch (const FitError&) {
      continue;
    }
    for (int s : {1, -1}) {
      const cx want = star_sum(f0, s);
      const cx got = 2.0 * f.a * std::exp(f.h * double(s));
      CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("degree-3 fit reproduces the eight-entry table and emits a three-body term") {
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    const ComplexField f0 = random_field(rng);
    StarTriangleFit f;
    try {
      f = fit_star_triangle(f0);
    } catch (const FitError&) {
      continue;
    }
    for (int cfg = 0; cfg < 8; ++cfg) {
      auto spin = [&](int b) { return (cfg >> b & 1) ? 1.0 : -1.0; };
      cx e{};
      for (int mask = 0; mask < 8; ++mask) {
        double prod = 1.0;
        for (int b = 0; b < 3; ++b)
          if (mask >> b & 1) prod *= spin(b);
        e += f.coeff[mask] * prod;
      }
      const cx want = star_sum(f0, int(spin(0) + spin(1) + spin(2)));
      const cx got = std::exp(e);
      CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
    }
  }
  const StarTriangleFit f = fit_star_triangle(canonical({0.3, -2, 0.0}));
  CHECK(std::abs(f.coeff[7]) > 0.1);
}

TEST_CASE("edge-variable decimation lands on the classical duality relations") {
  // An edge variable carries J - i pi/2 after compilation; summing it out
  // between two neighbor spins must give the textbook dual coupling.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> re(0.1, 1.2);
  std::uniform_real_distribution<double> im(-1.2, 1.2);
  const cx h_expected(0.0, std::numbers::pi / 4);
  int done = 0;
  while (done < 20) {
    const cx J(re(rng), im(rng));
    if (std::abs(std::sinh(2.0 * J)) < 0.05) continue;
    ++done;
    const DecimationFit f = fit_star_pair(canonical({J.real(), -2, J.imag()}));
    CHECK(f.h1 == f.h2);
    CHECK(f.h1 == h_expected);
    CHECK(std::abs(f.a * f.a + 0.5 * std::sinh(2.0 * J)) <= 1e-10);
    CHECK(std::abs(std::exp(-2.0 * f.k) - std::tanh(J)) <= 1e-10);
  }
}

TEST_CASE("self-dual fixed point of the square lattice") {
  // tanh J* = e^{-2 J*}  at  J* = ln(1 + sqrt 2)/2.
  const double jstar = 0.5 * std::log(1.0 + std::sqrt(2.0));
  const DecimationFit f = fit_star_pair(canonical({jstar, -2, 0.0}));
  CHECK(std::abs(f.k - jstar) <= 1e-10);
  CHECK(f.k.imag() == 0.0);
  CHECK(f.branch_k == 0);
}

TEST_CASE("fits refuse singular star tables") {
  CHECK_THROWS_AS(fit_star_pair(ComplexField{}), FitError);
  CHECK_THROWS_AS(fit_star_leg(ComplexField::quarter(1)), FitError);
  CHECK_THROWS_AS(fit_star_triangle(ComplexField::quarter(1)), FitError);
}

TEST_CASE("decimating one spin of a path preserves the bare sum") {
  IsingGraph g;
  g.add_vertex(canonical({0.15, 0, -0.1}));
  g.add_vertex(canonical({0.4, -2, 0.2}));
  g.add_vertex(canonical({-0.25, 1, 0.0}));
  g.add_edge(0, 1);
  g.add_edge(1, 2);

  const DecimationFit f = decimate_spin(g, 1);
  const cx f0 = g.vertices[0].field.value();
  const cx f2 = g.vertices[2].field.value();
  cx z{};
  for (int s0 : {1, -1})
    for (int s2 : {1, -1})
      z += std::exp(f0 * double(s0) + f2 * double(s2)) * 2.0 * f.a *
           std::exp(f.k * double(s0 * s2) + f.h1 * double(s0) + f.h2 * double(s2));
  const cx zg = exact_z_ising(g).value.as_complex();
  CHECK(std::abs(z - zg) <= 1e-12 * std::abs(zg));

  IsingGraph bad = g;
  bad.vertices[1].pinned = true;
  CHECK_THROWS_WITH_AS(decimate_spin(bad, 1),
                       "precondition violated: decimate_spin needs a free spin",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(decimate_spin(g, 0),
                       "precondition violated: decimate_spin needs a degree-2 spin",
                       PreconditionError);
}

TEST_CASE("black decimation is an exact factorization of the bare sum") {
  SUBCASE("compiled triangle: degree-1 blacks shift the constraint spin") {
    SpinModel m;
    m.add_site("a", SiteKind::Spin);
    m.add_site("b", SiteKind::Spin);
    m.add_site("c", SiteKind::Spin);
    m.add_term({0, 1}, ComplexField::real(0.3));
    m.add_term({1, 2}, ComplexField::real(0.4));
    m.add_term({0, 2}, canonical({0.2, 0, 0.1}));
    const CompileResult cr = compile_model(m);
    const DualModel dm = decimate_blacks(cr.graph, cr.n_variables);
    CHECK(dm.white_vertex.size() == 1);
    CHECK(dm.bonds.empty());
    CHECK(dm.triples.empty());
    const cx lhs = exact_z_ising(cr.graph).value.as_complex();
    const cx rhs = dm.constant.as_complex() * dual_model_z(dm);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
  SUBCASE("compiled two-plaquette patch: the shared edge becomes a dual bond") {
    const SpinModel m = gen_lattice(LatticeKind::Square, 1, 2, ComplexField::real(0.45));
    const CompileResult cr = compile_model(m);
    const DualModel dm = decimate_blacks(cr.graph, cr.n_variables);
    CHECK(dm.white_vertex.size() == 2);
    CHECK(dm.bonds.size() == 1);
    CHECK(dm.triples.empty());
    const cx lhs = exact_z_ising(cr.graph).value.as_complex();
    const cx rhs = dm.constant.as_complex() * dual_model_z(dm);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
  SUBCASE("degree-3 black emits bonds and a three-body triple") {
    IsingGraph g;
    g.add_vertex(canonical({0.3, -2, 0.05}));
    for (int i = 0; i < 3; ++i) g.add_vertex(canonical({0.1 + 0.1 * i, 0, -0.15}));
    for (int i = 1; i <= 3; ++i) g.add_edge(0, i);
    const DualModel dm = decimate_blacks(g, 1);
    CHECK(dm.white_vertex.size() == 3);
    CHECK(dm.bonds.size() == 3);
    CHECK(dm.triples.size() == 1);
    CHECK(std::abs(dm.triples[0].c) > 0.1);
    const cx lhs = exact_z_ising(g).value.as_complex();
    const cx rhs = dm.constant.as_complex() * dual_model_z(dm);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
  SUBCASE("degree-0 black contributes a pure constant") {
    IsingGraph g;
    g.add_vertex(canonical({0.35, 0, 0.05}));
    const DualModel dm = decimate_blacks(g, 1);
    CHECK(dm.white_vertex.empty());
    const cx lhs = exact_z_ising(g).value.as_complex();
    const cx rhs = dm.constant.as_complex() * dual_model_z(dm);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("black decimation preconditions") {
  IsingGraph pair;
  pair.add_vertex(canonical({0.2, 0, 0.0}));
  pair.add_vertex(canonical({0.3, 0, 0.0}));
  pair.add_edge(0, 1);
  CHECK_THROWS_WITH_AS(decimate_blacks(pair, 2),
                       "precondition violated: decimation needs a bipartite black/white split",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(decimate_blacks(pair, 3),
                       "precondition violated: black count out of range", PreconditionError);

  IsingGraph pinned_white = pair;
  pinned_white.vertices[1].pinned = true;
  CHECK_THROWS_WITH_AS(decimate_blacks(pinned_white, 1),
                       "precondition violated: decimation keeps white spins free",
                       PreconditionError);

  IsingGraph pinned_black = pair;
  pinned_black.vertices[0].pinned = true;
  CHECK_THROWS_WITH_AS(decimate_blacks(pinned_black, 1),
                       "precondition violated: cannot decimate a pinned spin",
                       PreconditionError);

  IsingGraph wide;
  wide.add_vertex(canonical({0.2, 0, 0.0}));
  for (int i = 0; i < 4; ++i) {
    wide.add_vertex(canonical({0.1, 0, 0.0}));
    wide.add_edge(0, i + 1);
  }
  CHECK_THROWS_WITH_AS(decimate_blacks(wide, 1),
                       "precondition violated: decimation handles degree <= 3 only",
                       PreconditionError);

  IsingGraph many;
  for (int i = 0; i < 25; ++i) many.add_vertex(canonical({0.1, 0, 0.0}));
  const DualModel dm = decimate_blacks(many, 0);
  CHECK_THROWS_AS(dual_model_z(dm), CapExceeded);
}

TEST_CASE("square duality report on small free-boundary patches") {
  const ComplexField J = ComplexField::real(0.5);

  SUBCASE("2x2 sites: one plaquette, closed-form dual coupling") {
    const SquareDualityReport r = derive_square_duality(2, 2, J);
    CHECK(r.n_sites == 4);
    CHECK(!r.k_from_fit);
    CHECK(r.k_uniform);
    CHECK(r.k.real() == doctest::Approx(0.38596841645265229).epsilon(1e-14));
    CHECK(r.closed_form_error <= 1e-12);
    CHECK(r.decomposition_error <= 1e-12);
    CHECK(r.measured_ratio.imag() == doctest::Approx(0.0));
  }
  SUBCASE("2x3 sites: the shared edge is fitted and uniform") {
    const SquareDualityReport r = derive_square_duality(2, 3, J);
    CHECK(r.n_sites == 6);
    CHECK(r.k_from_fit);
    CHECK(r.k_uniform);
    CHECK(r.k.real() == doctest::Approx(0.38596841645265229).epsilon(1e-14));
    CHECK(r.closed_form_error <= 1e-12);
    CHECK(r.decomposition_error <= 1e-12);
  }
  SUBCASE("the measurement is bit-for-bit reproducible") {
    for (auto [rows, cols] : {std::pair{2, 2}, std::pair{2, 3}}) {
      const SquareDualityReport a = derive_square_duality(rows, cols, J);
      const SquareDualityReport b = derive_square_duality(rows, cols, J);
      CHECK(a.k == b.k);
      CHECK(a.z_source == b.z_source);
      CHECK(a.z_dual_model == b.z_dual_model);
      CHECK(a.z_dual_ideal == b.z_dual_ideal);
      CHECK(a.measured_ratio == b.measured_ratio);
      CHECK(a.decomposition_error == b.decomposition_error);
    }
  }
  SUBCASE("patch size limits") {
    CHECK_THROWS_WITH_AS(derive_square_duality(1, 4, J),
                         "precondition violated: square duality needs at least 2x2 sites",
                         PreconditionError);
    CHECK_THROWS_WITH_AS(derive_square_duality(4, 4, J),
                         "precondition violated: square duality patch capped at 12 sites",
                         PreconditionError);
  }
  SUBCASE("rendered report names the coupling source") {
    const std::string closed = render_duality_report(derive_square_duality(2, 2, J));
    CHECK(closed.find("square duality probe: 2x2 sites") != std::string::npos);
    CHECK(closed.find("closed form") != std::string::npos);
    const std::string fitted = render_duality_report(derive_square_duality(2, 3, J));
    CHECK(fitted.find("fitted") != std::string::npos);
  }
}
