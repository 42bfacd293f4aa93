#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>

#include "forge/errors.hpp"
#include "forge/evaluator.hpp"
#include "forge/planarizer.hpp"

using namespace forge;

namespace {

IsingGraph cycle_graph(int n) {
  IsingGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(canonical({0.2 + 0.05 * i, 0, 0.1}));
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

IsingGraph complete_graph(int n) {
  IsingGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(canonical({0.1 * (i + 1), 0, 0.0}));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

// End-to-end check: the bare grid sum times the tracked prefactor ratio must
// reproduce the bare sum of the source graph.
void check_embed_z(const IsingGraph& src, const EmbedResult& r, double tol = 1e-10) {
  const IsingGraph gg = grid_to_graph(r.grid);
  REQUIRE(gg.free_count() <= 20);
  const ZReport z0 = exact_z_ising(src);
  const ZReport z1 = exact_z_ising(gg);
  const Prefactor ratio = prefactor_mul(r.grid.prefactor, src.prefactor.inverse());
  const EquivalenceVerdict v = check_equivalence(z0.value, z1.value, ratio, tol);
  CHECK(v.pass);
}

void check_stats_shape(const EmbedResult& r) {
  CHECK(r.stats.grid_cells == r.grid.width * r.grid.height);
  CHECK(r.grid.pinned_count() == r.stats.residual_pins);
  CHECK(static_cast<int>(r.layout.vertex_cell.size()) >= 0);
}

}  // namespace

TEST_CASE("hinted triangle lands on the two-by-two grid") {
  const IsingGraph src = cycle_graph(3);
  EmbedOptions opts;
  opts.placement_hints = {{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}};
  const EmbedResult r = embed_grid(src, opts);

  CHECK(r.grid.width == 2);
  CHECK(r.grid.height == 2);
  CHECK(r.grid.pinned_count() == 0);
  CHECK(r.stats.splits == 0);
  CHECK(r.stats.crossings == 0);
  CHECK(r.stats.subdivisions == 1);
  CHECK(r.stats.filler_pairs == 0);
  CHECK(r.stats.steps == 1);
  CHECK(r.stats.verified_through_step == -1);
  check_stats_shape(r);

  // Hints are honored literally.
  REQUIRE(r.layout.vertex_cell.size() == 3);
  CHECK(r.layout.vertex_cell[0] == std::pair<int, int>{0, 0});
  CHECK(r.layout.vertex_cell[1] == std::pair<int, int>{1, 0});
  CHECK(r.layout.vertex_cell[2] == std::pair<int, int>{0, 1});

  // One diagonal edge is subdivided: the midpoint carries +i pi/4 and both
  // endpoints are shifted by -i pi/4; the direct edges stay untouched.
  CHECK(r.grid.at(0, 0).quarter_turns == 0);
  CHECK(r.grid.at(0, 0).real_part == doctest::Approx(0.2));
  CHECK(r.grid.at(1, 0).quarter_turns == -1);
  CHECK(r.grid.at(1, 0).real_part == doctest::Approx(0.25));
  CHECK(r.grid.at(0, 1).quarter_turns == -1);
  CHECK(r.grid.at(0, 1).real_part == doctest::Approx(0.3));
  CHECK(r.grid.at(1, 1).quarter_turns == 1);
  CHECK(r.grid.at(1, 1).real_part == 0.0);
  CHECK(r.grid.at(1, 1).residual_imag == 0.0);

  // One subdivision multiplies the prefactor by (1 - i)/2.
  CHECK(r.grid.prefactor.log_magnitude ==
        doctest::Approx(-0.5 * std::numbers::ln2).epsilon(1e-14));
  CHECK(r.grid.prefactor.phase ==
        doctest::Approx(-std::numbers::pi / 4).epsilon(1e-14));

  check_embed_z(src, r);
}

TEST_CASE("hinted pentagon embeds on a three-by-three grid with one gray cell") {
  const IsingGraph src = cycle_graph(5);
  EmbedOptions opts;
  opts.placement_hints = {{0, {0, 0}}, {1, {2, 0}}, {2, {2, 2}}, {3, {0, 2}}, {4, {0, 1}}};
  const EmbedResult r = embed_grid(src, opts);

  CHECK(r.grid.width == 3);
  CHECK(r.grid.height == 3);
  CHECK(r.grid.pinned_count() == 1);
  CHECK(r.stats.subdivisions == 3);
  CHECK(r.stats.crossings == 0);
  CHECK(r.stats.filler_pairs == 0);
  CHECK(r.stats.residual_pins == 1);
  CHECK(r.stats.steps == 4);
  check_stats_shape(r);
  check_embed_z(src, r);
}

TEST_CASE("hinted crossing resolves to one crossing tile") {
  IsingGraph src;
  for (int i = 0; i < 4; ++i) src.add_vertex(canonical({0.3 + 0.1 * i, 0, -0.2}));
  src.add_edge(0, 2);
  src.add_edge(1, 3);
  EmbedOptions opts;
  opts.placement_hints = {{0, {1, 2}}, {1, {2, 1}}, {2, {1, 0}}, {3, {0, 1}}};
  const EmbedResult r = embed_grid(src, opts);

  CHECK(r.grid.width == 3);
  CHECK(r.grid.height == 3);
  CHECK(r.grid.pinned_count() == 0);
  CHECK(r.stats.crossings == 1);
  CHECK(r.stats.subdivisions == 4);
  CHECK(r.stats.steps == 5);
  CHECK(r.layout.crossings.size() == 1);
  check_stats_shape(r);
  check_embed_z(src, r);
}

TEST_CASE("automatic placement of small cycles") {
  SUBCASE("triangle") {
    const IsingGraph src = cycle_graph(3);
    const EmbedResult r = embed_grid(src, EmbedOptions{});
    CHECK(r.grid.width == 5);
    CHECK(r.grid.height == 5);
    CHECK(r.grid.pinned_count() == 7);
    CHECK(r.stats.splits == 0);
    CHECK(r.stats.crossings == 0);
    CHECK(r.stats.subdivisions == 13);
    CHECK(r.stats.filler_pairs == 1);
    CHECK(r.stats.residual_pins == 7);
    CHECK(r.stats.steps == 22);
    check_stats_shape(r);
    check_embed_z(src, r);
  }
  SUBCASE("pentagon") {
    const IsingGraph src = cycle_graph(5);
    const EmbedResult r = embed_grid(src, EmbedOptions{});
    CHECK(r.grid.width == 3);
    CHECK(r.grid.height == 3);
    CHECK(r.grid.pinned_count() == 1);
    CHECK(r.stats.steps == 4);
    check_stats_shape(r);
    check_embed_z(src, r);
  }
}

TEST_CASE("complete graph on four vertices routes through the comb fallback") {
  const IsingGraph src = complete_graph(4);
  const EmbedResult r = embed_grid(src, EmbedOptions{});

  CHECK(r.grid.width == 33);
  CHECK(r.grid.height == 23);
  CHECK(r.stats.splits == 0);
  CHECK(r.stats.crossings == 13);
  CHECK(r.stats.subdivisions == 291);
  CHECK(r.stats.filler_pairs == 61);
  CHECK(r.stats.residual_pins == 329);
  CHECK(r.stats.steps == 755);
  CHECK(r.grid.pinned_count() == 329);
  CHECK(grid_to_graph(r.grid).free_count() == 430);
  CHECK(r.layout.crossings.size() == 13);
  check_stats_shape(r);

  // The full grid is far beyond brute force, but every rewrite step is an
  // exact identity, so verify the prefix that still fits under the cap.
  EmbedOptions verified;
  verified.verify_steps = true;
  verified.verify_cap = 16;
  const EmbedResult rv = embed_grid(src, verified);
  CHECK(rv.stats.verified_through_step == 12);
  CHECK(rv.stats.steps == 755);
  CHECK(rv.grid.width == 33);
  CHECK(rv.grid.height == 23);
}

TEST_CASE("step verification covers every rewrite when the cap allows") {
  const IsingGraph src = cycle_graph(6);
  EmbedOptions opts;
  opts.verify_steps = true;
  opts.verify_cap = 12;
  const EmbedResult r = embed_grid(src, opts);
  CHECK(r.grid.width == 3);
  CHECK(r.grid.height == 3);
  CHECK(r.grid.pinned_count() == 1);
  CHECK(r.stats.steps == 3);
  CHECK(r.stats.verified_through_step == -1);
  check_embed_z(src, r);
}

TEST_CASE("step verification reports a cap exceeded before the first step") {
  EmbedOptions opts;
  opts.verify_steps = true;
  opts.verify_cap = 2;
  const EmbedResult r = embed_grid(cycle_graph(3), opts);
  CHECK(r.stats.verified_through_step == 0);
  CHECK(r.stats.steps == 22);
}

TEST_CASE("empty graph becomes a single gray cell") {
  const EmbedResult r = embed_grid(IsingGraph{}, EmbedOptions{});
  CHECK(r.grid.width == 1);
  CHECK(r.grid.height == 1);
  CHECK(r.grid.pinned_count() == 1);
  CHECK(r.stats.residual_pins == 1);
  CHECK(r.stats.steps == 0);
  check_embed_z(IsingGraph{}, r);
}

TEST_CASE("trace directory receives a start snapshot and one file per step") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "forge_embed_trace";
  std::filesystem::remove_all(dir);
  EmbedOptions opts;
  opts.placement_hints = {{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}};
  opts.trace_dir = dir.string();
  embed_grid(cycle_graph(3), opts);
  std::set<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    names.insert(e.path().filename().string());
  CHECK(names == std::set<std::string>{"embed_log.txt", "step_0000_start.txt",
                                       "step_0001_subdivide_edge.txt"});
  std::filesystem::remove_all(dir);
}

TEST_CASE("embedding rejects graphs with pinned spins") {
  IsingGraph g = cycle_graph(3);
  g.vertices[1].pinned = true;
  CHECK_THROWS_WITH_AS(embed_grid(g, EmbedOptions{}),
                       "precondition violated: grid embedding takes a graph of free spins only", PreconditionError);
}

TEST_CASE("placement hint validation") {
  const IsingGraph tri = cycle_graph(3);

  SUBCASE("hints must cover every vertex") {
    EmbedOptions o;
    o.placement_hints = {{0, {0, 0}}, {1, {1, 0}}};
    CHECK_THROWS_WITH_AS(embed_grid(tri, o),
                         "precondition violated: placement hints must cover every vertex exactly once",
                         PreconditionError);
  }
  SUBCASE("hints may not name unknown vertices") {
    EmbedOptions o;
    o.placement_hints = {{0, {0, 0}}, {1, {1, 0}}, {7, {0, 1}}};
    CHECK_THROWS_WITH_AS(embed_grid(tri, o), "precondition violated: placement hint names unknown vertex 7",
                         PreconditionError);
  }
  SUBCASE("hints may not share a cell") {
    EmbedOptions o;
    o.placement_hints = {{0, {0, 0}}, {1, {1, 0}}, {2, {1, 0}}};
    CHECK_THROWS_WITH_AS(embed_grid(tri, o), "precondition violated: two placement hints share a cell",
                         PreconditionError);
  }
  SUBCASE("adjacent hint cells need a matching edge") {
    IsingGraph path;
    for (int i = 0; i < 3; ++i) path.add_vertex(canonical({0.1, 0, 0.0}));
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    EmbedOptions o;
    o.placement_hints = {{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}};
    CHECK_THROWS_WITH_AS(embed_grid(path, o), "precondition violated: hint cells of 0 and 2 are adjacent without an edge",
                         PreconditionError);
  }
  SUBCASE("hints refuse graphs that still need degree splitting") {
    IsingGraph star;
    for (int i = 0; i < 6; ++i) star.add_vertex(canonical({0.1, 0, 0.0}));
    for (int i = 1; i < 6; ++i) star.add_edge(0, i);
    EmbedOptions o;
    o.placement_hints = {{0, {1, 1}}, {1, {0, 1}}, {2, {2, 1}},
                         {3, {1, 0}}, {4, {1, 2}}, {5, {3, 1}}};
    CHECK_THROWS_WITH_AS(embed_grid(star, o), "precondition violated: placement hints require a graph of max degree 4",
                         PreconditionError);
  }
}
