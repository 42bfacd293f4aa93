#include "forge/planarizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include "forge/errors.hpp"
#include "forge/evaluator.hpp"
#include "forge/rewrites.hpp"

namespace forge {
namespace {

using Pt = std::pair<int, int>;  // (x, y)

constexpr int kDirX[4] = {0, 1, 0, -1};  // N E S W
constexpr int kDirY[4] = {-1, 0, 1, 0};

Pt cell_step(Pt p, int d) { return {p.first + kDirX[d], p.second + kDirY[d]}; }

bool cells_adjacent(Pt a, Pt b) {
  return std::abs(a.first - b.first) + std::abs(a.second - b.second) == 1;
}

int manhattan(Pt a, Pt b) {
  return std::abs(a.first - b.first) + std::abs(a.second - b.second);
}

int chebyshev(Pt a, Pt b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

// ---------------------------------------------------------------------------
// Per-rewrite bookkeeping: step counting, optional trace snapshots, optional
// exact re-verification of Z after every rewrite while the graph is small.

struct StepMonitor {
  const EmbedOptions* opts = nullptr;
  EmbedStats* stats = nullptr;
  bool verifying = false;
  ZValue last_z;
  Prefactor last_p;
  std::filesystem::path dir;
  std::ofstream log;

  EvalOptions eval_options() const {
    EvalOptions e;
    e.max_free_spins = opts->verify_cap;
    e.threads = opts->threads;
    return e;
  }

  void begin(const IsingGraph& g) {
    if (!opts->trace_dir.empty()) {
      dir = opts->trace_dir;
      std::filesystem::create_directories(dir);
      log.open(dir / "embed_log.txt");
      snapshot(g, "start");
    }
    if (opts->verify_steps && g.free_count() <= opts->verify_cap) {
      verifying = true;
      last_z = exact_z_ising(g, eval_options()).value;
      last_p = g.prefactor;
    } else if (opts->verify_steps) {
      stats->verified_through_step = 0;
    }
  }

  void snapshot(const IsingGraph& g, const char* tag) {
    if (dir.empty()) return;
    char name[80];
    std::snprintf(name, sizeof name, "step_%04d_%s.txt", stats->steps, tag);
    std::ofstream(dir / name) << serialize_ising(g);
  }

  void note(const IsingGraph& g, const char* rule) {
    stats->steps += 1;
    snapshot(g, rule);
    if (log.is_open()) log << stats->steps << " " << rule << "\n";
    if (!verifying) return;
    if (g.free_count() > opts->verify_cap) {
      verifying = false;
      stats->verified_through_step = stats->steps - 1;
      return;
    }
    ZValue z = exact_z_ising(g, eval_options()).value;
    Prefactor ratio = prefactor_mul(g.prefactor, last_p.inverse());
    EquivalenceVerdict v = check_equivalence(last_z, z, ratio, opts->tol);
    if (!v.pass)
      throw MalformedGraph("step verification failed after " + std::string(rule) +
                           " (step " + std::to_string(stats->steps) +
                           ", relative error " + format_double(v.relative_error) + ")");
    last_z = z;
    last_p = g.prefactor;
  }
};

// ---------------------------------------------------------------------------
// Degree reduction: every vertex of degree >= 5 keeps its three smallest
// neighbors and hands the rest to a split twin; repeat until max degree 4.

void split_high_degree(IsingGraph& g, StepMonitor& mon, EmbedStats& stats) {
  bool again = true;
  while (again) {
    again = false;
    for (int v = 0; v < g.size(); ++v) {
      if (g.degree(v) <= 4) continue;
      std::vector<int> nb = g.neighbors(v);
      std::vector<int> moved(nb.begin() + 3, nb.end());
      split_vertex(g, v, moved);
      stats.splits += 1;
      mon.note(g, "split_vertex");
      again = true;
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Placement.

bool segment_blocked(Pt s, Pt t, const std::set<Pt>& used) {
  if (s.first == t.first) {
    int lo = std::min(s.second, t.second), hi = std::max(s.second, t.second);
    for (int y = lo + 1; y < hi; ++y)
      if (used.count({s.first, y})) return true;
  } else if (s.second == t.second) {
    int lo = std::min(s.first, t.first), hi = std::max(s.first, t.first);
    for (int x = lo + 1; x < hi; ++x)
      if (used.count({x, s.second})) return true;
  }
  return false;
}

bool l_route_blocked(Pt a, Pt b, Pt corner, const std::set<Pt>& used) {
  if (segment_blocked(a, corner, used)) return true;
  if (segment_blocked(corner, b, used)) return true;
  if (corner != a && corner != b && used.count(corner)) return true;
  return false;
}

bool both_l_routes_blocked(Pt c, Pt u, const std::set<Pt>& used) {
  return l_route_blocked(c, u, {c.first, u.second}, used) &&
         l_route_blocked(c, u, {u.first, c.second}, used);
}

std::map<int, Pt> place_component(const IsingGraph& g, const std::vector<int>& verts) {
  int start = verts[0];
  for (int v : verts)
    if (g.degree(v) > g.degree(start)) start = v;

  std::vector<int> order;
  std::set<int> seen{start};
  std::queue<int> q;
  q.push(start);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    for (int u : g.neighbors(v))
      if (seen.insert(u).second) q.push(u);
  }

  std::map<int, Pt> pos;
  std::set<Pt> used;
  pos[order[0]] = {0, 0};
  used.insert({0, 0});

  for (size_t i = 1; i < order.size(); ++i) {
    int v = order[i];
    std::vector<Pt> anchors;
    for (int u : g.neighbors(v)) {
      auto it = pos.find(u);
      if (it != pos.end()) anchors.push_back(it->second);
    }
    double cx = 0, cy = 0;
    for (Pt a : anchors) {
      cx += a.first;
      cy += a.second;
    }
    Pt cen{static_cast<int>(std::llround(cx / anchors.size())),
           static_cast<int>(std::llround(cy / anchors.size()))};
    int radius = 2;
    for (Pt a : anchors) radius = std::max(radius, chebyshev(cen, a) + 2);

    std::optional<std::tuple<int, int, int, int>> best_key;
    Pt best{};
    for (;; radius += 2) {
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          Pt c{cen.first + dx, cen.second + dy};
          if (used.count(c)) continue;
          int dist = 0, blocked = 0;
          for (Pt a : anchors) {
            dist += manhattan(c, a);
            if (both_l_routes_blocked(c, a, used)) blocked += 1;
          }
          std::tuple<int, int, int, int> key{dist, blocked, c.second, c.first};
          if (!best_key || key < *best_key) {
            best_key = key;
            best = c;
          }
        }
      }
      if (best_key) break;
    }
    pos[v] = best;
    used.insert(best);
  }
  return pos;
}

// Places every component on its own patch, scales by the dilation factor and
// lines the patches up left to right with a one-column gap.
std::vector<Pt> place_all(const IsingGraph& g, int scale) {
  int n = g.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::queue<int> q;
    q.push(v);
    comp[v] = id;
    while (!q.empty()) {
      int w = q.front();
      q.pop();
      comps[id].push_back(w);
      for (int u : g.neighbors(w))
        if (comp[u] < 0) {
          comp[u] = id;
          q.push(u);
        }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }

  std::vector<Pt> vc(n);
  int x_off = 0;
  for (const auto& verts : comps) {
    std::map<int, Pt> pos = place_component(g, verts);
    int minx = std::numeric_limits<int>::max(), miny = minx;
    int maxx = std::numeric_limits<int>::min(), maxy = maxx;
    for (const auto& [v, p] : pos) {
      minx = std::min(minx, p.first);
      maxx = std::max(maxx, p.first);
      miny = std::min(miny, p.second);
      maxy = std::max(maxy, p.second);
    }
    for (const auto& [v, p] : pos)
      vc[v] = {(p.first - minx) * scale + x_off, (p.second - miny) * scale};
    x_off += (maxx - minx) * scale + 2;
  }
  return vc;
}

std::vector<Pt> layout_from_hints(const IsingGraph& work, const EmbedOptions& opts,
                                  int splits) {
  if (splits > 0)
    throw PreconditionError("placement hints require a graph of max degree 4");
  if (static_cast<int>(opts.placement_hints.size()) != work.size())
    throw PreconditionError("placement hints must cover every vertex exactly once");
  std::vector<Pt> vc(work.size());
  std::set<Pt> seen;
  for (const auto& [v, cell] : opts.placement_hints) {
    if (v < 0 || v >= work.size())
      throw PreconditionError("placement hint names unknown vertex " + std::to_string(v));
    if (!seen.insert(cell).second)
      throw PreconditionError("two placement hints share a cell");
    vc[v] = cell;
  }
  for (int u = 0; u < work.size(); ++u)
    for (int v = u + 1; v < work.size(); ++v)
      if (cells_adjacent(vc[u], vc[v]) && !work.has_edge(u, v))
        throw PreconditionError("hint cells of " + std::to_string(u) + " and " +
                                std::to_string(v) + " are adjacent without an edge");
  return vc;
}

// ---------------------------------------------------------------------------
// Routing. Each edge is routed by a deterministic Dijkstra search over
// (cell, entry direction) states. Entering a free cell is legal only when its
// other occupied neighbors are vertex cells (each recorded as a pending
// adjacency that a later perpendicular crossing through that cell resolves);
// adjacency to committed route cells, reserved corners or this route's own
// source is never routable around, so those steps are rejected outright.
// A crossing is an atomic two-cell perpendicular move through a straight
// foreign route cell whose four diagonal corners are free; the corners are
// reserved for the cycle midpoints the crossing rewrite will need.

// Pending adjacencies that stay unresolved fail the whole attempt, so a
// second routing pass prices them out instead of growing the grid right away.
constexpr long kPendCost = 3;
constexpr long kPendProhibitive = 1000;
constexpr long kCrossCost = 4;

struct RouterState {
  std::map<Pt, int> vertex_at;
  std::map<Pt, std::pair<int, int>> route_at;  // intermediate cell -> (route, pos)
  std::set<Pt> crossing_at;
  std::vector<Pt> crossing_order;
  std::set<Pt> reserved;
  std::vector<std::pair<Pt, Pt>> pend;  // (route cell, vertex cell)
  std::vector<RoutePath> routes;
};

struct SearchKey {
  int x, y, d;
  bool operator<(const SearchKey& o) const {
    return std::tie(x, y, d) < std::tie(o.x, o.y, o.d);
  }
  bool operator==(const SearchKey& o) const {
    return x == o.x && y == o.y && d == o.d;
  }
};

std::optional<RoutePath> route_edge(const RouterState& rs, int u, int v, Pt su, Pt gv,
                                    long pend_cost) {
  if (cells_adjacent(su, gv)) return RoutePath{u, v, {su, gv}};

  int minx = std::min(su.first, gv.first), maxx = std::max(su.first, gv.first);
  int miny = std::min(su.second, gv.second), maxy = std::max(su.second, gv.second);
  auto widen = [&](Pt p) {
    minx = std::min(minx, p.first);
    maxx = std::max(maxx, p.first);
    miny = std::min(miny, p.second);
    maxy = std::max(maxy, p.second);
  };
  for (const auto& [p, w] : rs.vertex_at) widen(p);
  for (const auto& [p, rp] : rs.route_at) widen(p);
  for (Pt p : rs.reserved) widen(p);
  minx -= 3, maxx += 3, miny -= 3, maxy += 3;
  auto in_bounds = [&](Pt p) {
    return minx <= p.first && p.first <= maxx && miny <= p.second && p.second <= maxy;
  };

  auto occupied = [&](Pt p) { return rs.vertex_at.count(p) || rs.route_at.count(p); };

  // Pending-adjacency count for entering free cell n from p; -1 when illegal.
  auto entry_pends = [&](Pt n, Pt p) -> int {
    int pends = 0;
    for (int d = 0; d < 4; ++d) {
      Pt m = cell_step(n, d);
      if (m == p || m == gv) continue;
      if (m == su) return -1;
      if (rs.reserved.count(m)) return -1;
      if (rs.route_at.count(m)) return -1;
      if (rs.vertex_at.count(m)) pends += 1;
    }
    return pends;
  };

  std::map<SearchKey, long> dist;
  std::map<SearchKey, std::pair<SearchKey, int>> parent;  // prev, kind(0=step,1=cross)
  using QE = std::tuple<long, int, int, int>;             // cost, y, x, dir
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> open;

  SearchKey seed{su.first, su.second, 4};
  dist[seed] = 0;
  open.push({0, su.second, su.first, 4});

  auto relax = [&](SearchKey nk, long nc, SearchKey pk, int kind) {
    auto it = dist.find(nk);
    if (it != dist.end() && it->second <= nc) return;
    dist[nk] = nc;
    parent[nk] = {pk, kind};
    open.push({nc, nk.y, nk.x, nk.d});
  };

  std::optional<SearchKey> end;
  while (!open.empty()) {
    auto [cost, y, x, d] = open.top();
    open.pop();
    SearchKey k{x, y, d};
    auto dit = dist.find(k);
    if (dit == dist.end() || dit->second != cost) continue;
    Pt c{x, y};
    if (c == gv || (!(k == seed) && cells_adjacent(c, gv))) {
      end = k;
      break;
    }
    for (int nd = 0; nd < 4; ++nd) {
      Pt n = cell_step(c, nd);
      if (!in_bounds(n) || n == su || n == gv) continue;
      if (rs.reserved.count(n) || rs.vertex_at.count(n)) continue;
      auto rit = rs.route_at.find(n);
      if (rit == rs.route_at.end()) {
        int pd = entry_pends(n, c);
        if (pd < 0) continue;
        relax({n.first, n.second, nd}, cost + 1 + pend_cost * pd, k, 0);
        continue;
      }
      if (rs.crossing_at.count(n)) continue;
      const auto& path = rs.routes[rit->second.first].cells;
      int pos = rit->second.second;
      Pt rp = path[pos - 1], rn = path[pos + 1];
      bool vertical = rp.first == n.first && rn.first == n.first;
      bool horizontal = rp.second == n.second && rn.second == n.second;
      if (!(vertical || horizontal)) continue;          // bend: no crossing
      if (vertical && kDirY[nd] != 0) continue;         // must cross perpendicular
      if (horizontal && kDirX[nd] != 0) continue;
      bool corners_free = true;
      for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
          Pt q{n.first + sx, n.second + sy};
          if (occupied(q) || rs.reserved.count(q)) corners_free = false;
        }
      if (!corners_free) continue;
      Pt land = cell_step(n, nd);
      if (!in_bounds(land)) continue;
      if (land == gv) {
        relax({land.first, land.second, nd}, cost + 2 + kCrossCost, k, 1);
        continue;
      }
      if (land == su || occupied(land) || rs.reserved.count(land)) continue;
      int pd = entry_pends(land, n);
      if (pd < 0) continue;
      relax({land.first, land.second, nd}, cost + 2 + kCrossCost + pend_cost * pd, k, 1);
    }
  }
  if (!end) return std::nullopt;

  std::vector<Pt> rev;
  if (!(end->x == gv.first && end->y == gv.second)) rev.push_back(gv);
  SearchKey k = *end;
  while (!(k == seed)) {
    rev.push_back({k.x, k.y});
    auto [pk, kind] = parent.at(k);
    if (kind == 1) rev.push_back({k.x - kDirX[k.d], k.y - kDirY[k.d]});
    k = pk;
  }
  rev.push_back(su);
  std::reverse(rev.begin(), rev.end());
  return RoutePath{u, v, std::move(rev)};
}

bool commit_route(RouterState& rs, RoutePath rp) {
  const auto& cells = rp.cells;
  int n = static_cast<int>(cells.size());
  std::set<Pt> distinct(cells.begin(), cells.end());
  if (static_cast<int>(distinct.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (cells_adjacent(cells[i], cells[j])) return false;

  int idx = static_cast<int>(rs.routes.size());
  for (int pos = 1; pos + 1 < n; ++pos) {
    Pt c = cells[pos];
    if (rs.route_at.count(c)) {
      rs.crossing_at.insert(c);
      rs.crossing_order.push_back(c);
      for (int sx : {-1, 1})
        for (int sy : {-1, 1}) rs.reserved.insert({c.first + sx, c.second + sy});
      continue;
    }
    rs.route_at[c] = {idx, pos};
    for (int d = 0; d < 4; ++d) {
      Pt m = cell_step(c, d);
      if (m == cells[pos - 1] || m == cells[pos + 1]) continue;
      if (rs.vertex_at.count(m)) rs.pend.push_back({c, m});
    }
  }
  rs.routes.push_back(std::move(rp));
  return true;
}

bool route_all(const IsingGraph& g, const std::vector<Pt>& vc, RouterState& rs,
               long pend_cost) {
  for (int v = 0; v < g.size(); ++v) rs.vertex_at[vc[v]] = v;
  std::vector<std::pair<int, int>> es = g.edges();
  std::sort(es.begin(), es.end());
  for (auto [u, v] : es) {
    auto rp = route_edge(rs, u, v, vc[u], vc[v], pend_cost);
    if (!rp) return false;
    if (!commit_route(rs, std::move(*rp))) return false;
  }
  for (const auto& [routecell, vertexcell] : rs.pend)
    if (!rs.crossing_at.count(routecell)) return false;
  return true;
}

bool route_all_retrying(const IsingGraph& g, const std::vector<Pt>& vc, RouterState& rs) {
  for (long pend_cost : {kPendCost, kPendProhibitive}) {
    rs = RouterState{};
    if (route_all(g, vc, rs, pend_cost)) return true;
  }
  return false;
}

// Constructive last-resort layout that routes any max-degree-4 graph: vertices
// on one row sixteen cells apart, one exclusive track row per edge, and the up
// to four incident routes of a vertex fanned out through the N/E/W/S port
// cells of its private column zone. Every vertical run and every track lies on
// a multiple-of-4 coordinate, so drops meet foreign tracks only at
// perpendicular straight cells whose corner cells (odd offsets from the
// crossing) can never touch another crossing's corners, bends, or runs; no
// route cell ever sits next to a foreign vertex (zero pending adjacencies).
std::vector<Pt> comb_approach(Pt v, int port, int track) {
  std::vector<Pt> cells;
  const int x = v.first, y = v.second;
  switch (port) {
    case 0:  // N: straight up the vertex column
      for (int t = y + 1; t <= track; ++t) cells.push_back({x, t});
      break;
    case 1:  // E: sidestep, then up
      for (int dx = 1; dx <= 3; ++dx) cells.push_back({x + dx, y});
      for (int t = y; t <= track; ++t) cells.push_back({x + 4, t});
      break;
    case 2:  // W: mirror of E
      for (int dx = 1; dx <= 3; ++dx) cells.push_back({x - dx, y});
      for (int t = y; t <= track; ++t) cells.push_back({x - 4, t});
      break;
    default:  // S: dip under, swing right, rise in the outer column
      cells.push_back({x, y - 1});
      for (int dx = 0; dx <= 8; ++dx) cells.push_back({x + dx, y - 2});
      cells.push_back({x + 8, y - 1});
      for (int t = y; t <= track; ++t) cells.push_back({x + 8, t});
      break;
  }
  return cells;
}

bool comb_layout(const IsingGraph& g, std::vector<Pt>& vc, RouterState& rs) {
  rs = RouterState{};
  vc.assign(g.size(), Pt{0, 0});
  for (int v = 0; v < g.size(); ++v) {
    vc[v] = {16 * v, 0};
    rs.vertex_at[vc[v]] = v;
  }
  std::vector<std::pair<int, int>> es = g.edges();
  std::sort(es.begin(), es.end());
  std::vector<int> next_port(g.size(), 0);
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto [u, v] = es[i];
    if (next_port[u] > 3 || next_port[v] > 3) return false;
    const int track = 4 * (static_cast<int>(i) + 1);
    const std::vector<Pt> up = comb_approach(vc[u], next_port[u]++, track);
    const std::vector<Pt> down = comb_approach(vc[v], next_port[v]++, track);
    std::vector<Pt> cells{vc[u]};
    cells.insert(cells.end(), up.begin(), up.end());
    const int xa = up.back().first, xb = down.back().first;
    const int step = xb > xa ? 1 : -1;
    for (int x = xa + step; x != xb; x += step) cells.push_back({x, track});
    cells.insert(cells.end(), down.rbegin(), down.rend());
    cells.push_back(vc[v]);
    if (!commit_route(rs, RoutePath{u, v, std::move(cells)})) return false;
  }
  for (const auto& [routecell, vertexcell] : rs.pend)
    if (!rs.crossing_at.count(routecell)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Layout compaction: repeatedly delete any column every cell of which is a
// straight horizontal pass-through (empty columns included), provided no two
// occupied flanking cells would be glued together without the route that used
// to join them; rows symmetrically. Vertices, bends, crossings and reserved
// corners block deletion.

struct LayoutData {
  std::vector<Pt> vertex_cell;
  std::vector<RoutePath> routes;
  std::vector<Pt> crossings;
};

struct CellInfo {
  char kind = 0;  // 'v' vertex, 'r' route, 'x' crossing, 'c' reserved corner
  int route = -1;
  int pos = -1;
};

std::map<Pt, CellInfo> build_index(const LayoutData& lay) {
  std::map<Pt, CellInfo> idx;
  for (Pt p : lay.vertex_cell) idx[p] = {'v', -1, -1};
  for (Pt c : lay.crossings) {
    idx[c] = {'x', -1, -1};
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) idx[{c.first + sx, c.second + sy}] = {'c', -1, -1};
  }
  for (int r = 0; r < static_cast<int>(lay.routes.size()); ++r) {
    const auto& cells = lay.routes[r].cells;
    for (int pos = 1; pos + 1 < static_cast<int>(cells.size()); ++pos) {
      if (idx.count(cells[pos])) continue;  // crossing cell
      idx[cells[pos]] = {'r', r, pos};
    }
  }
  return idx;
}

// axis 0: deleting column at coordinate c (straight passes run horizontally);
// axis 1: deleting row.
bool line_deletable(const LayoutData& lay, const std::map<Pt, CellInfo>& idx, int axis,
                    int c, int lo, int hi) {
  auto coord = [&](Pt p) { return axis == 0 ? p.first : p.second; };
  auto other = [&](Pt p) { return axis == 0 ? p.second : p.first; };
  for (const auto& [p, ci] : idx) {
    if (coord(p) != c) continue;
    if (ci.kind != 'r') return false;
    const auto& cells = lay.routes[ci.route].cells;
    Pt pv = cells[ci.pos - 1], nx = cells[ci.pos + 1];
    if (other(pv) != other(p) || other(nx) != other(p)) return false;
  }
  for (int t = lo; t <= hi; ++t) {
    Pt left = axis == 0 ? Pt{c - 1, t} : Pt{t, c - 1};
    Pt right = axis == 0 ? Pt{c + 1, t} : Pt{t, c + 1};
    if (!idx.count(left) || !idx.count(right)) continue;
    Pt mid = axis == 0 ? Pt{c, t} : Pt{t, c};
    auto it = idx.find(mid);
    if (it == idx.end() || it->second.kind != 'r') return false;
  }
  return true;
}

void delete_line(LayoutData& lay, int axis, int c) {
  auto fix = [&](Pt& p) {
    int& a = axis == 0 ? p.first : p.second;
    if (a > c) a -= 1;
  };
  for (Pt& p : lay.vertex_cell) fix(p);
  for (Pt& p : lay.crossings) fix(p);
  for (auto& r : lay.routes) {
    std::vector<Pt> out;
    out.reserve(r.cells.size());
    for (Pt p : r.cells) {
      if ((axis == 0 ? p.first : p.second) == c) continue;
      fix(p);
      out.push_back(p);
    }
    r.cells = std::move(out);
  }
}

void compact_layout(LayoutData& lay) {
  for (;;) {
    auto idx = build_index(lay);
    int minx = std::numeric_limits<int>::max(), miny = minx;
    int maxx = std::numeric_limits<int>::min(), maxy = maxx;
    for (const auto& [p, ci] : idx) {
      minx = std::min(minx, p.first);
      maxx = std::max(maxx, p.first);
      miny = std::min(miny, p.second);
      maxy = std::max(maxy, p.second);
    }
    bool did = false;
    for (int x = minx + 1; x < maxx && !did; ++x)
      if (line_deletable(lay, idx, 0, x, miny, maxy)) {
        delete_line(lay, 0, x);
        did = true;
      }
    for (int y = miny + 1; y < maxy && !did; ++y)
      if (line_deletable(lay, idx, 1, y, minx, maxx)) {
        delete_line(lay, 1, y);
        did = true;
      }
    if (!did) break;
  }
}

// Shift so every cell (reserved corners included) lands in [0,W) x [0,H).
std::pair<int, int> normalize_layout(LayoutData& lay) {
  auto idx = build_index(lay);
  int minx = std::numeric_limits<int>::max(), miny = minx;
  int maxx = std::numeric_limits<int>::min(), maxy = maxx;
  for (const auto& [p, ci] : idx) {
    minx = std::min(minx, p.first);
    maxx = std::max(maxx, p.first);
    miny = std::min(miny, p.second);
    maxy = std::max(maxy, p.second);
  }
  auto fix = [&](Pt& p) { p = {p.first - minx, p.second - miny}; };
  for (Pt& p : lay.vertex_cell) fix(p);
  for (Pt& p : lay.crossings) fix(p);
  for (auto& r : lay.routes)
    for (Pt& p : r.cells) fix(p);
  return {maxx - minx + 1, maxy - miny + 1};
}

// ---------------------------------------------------------------------------
// Materialization: turn route cells into subdivision midpoints and crossing
// cells into crossing-rewrite ancillas whose cycle-edge midpoints land on the
// reserved diagonal corners.

void materialize(IsingGraph& g2, const LayoutData& lay, std::map<Pt, int>& cellv,
                 StepMonitor& mon, EmbedStats& stats) {
  for (int v = 0; v < static_cast<int>(lay.vertex_cell.size()); ++v)
    cellv[lay.vertex_cell[v]] = v;
  std::set<Pt> crossing_cells(lay.crossings.begin(), lay.crossings.end());

  for (const auto& r : lay.routes) {
    if (r.cells.size() <= 2) continue;
    int cur = r.u;
    for (size_t pos = 1; pos + 1 < r.cells.size(); ++pos) {
      Pt c = r.cells[pos];
      if (crossing_cells.count(c)) continue;
      cur = subdivide_edge(g2, cur, r.v);
      cellv[c] = cur;
      stats.subdivisions += 1;
      mon.note(g2, "subdivide_edge");
    }
  }

  for (Pt c : lay.crossings) {
    int vn = cellv.at({c.first, c.second - 1});
    int ve = cellv.at({c.first + 1, c.second});
    int vs = cellv.at({c.first, c.second + 1});
    int vw = cellv.at({c.first - 1, c.second});
    int anc = remove_crossing(g2, vn, ve, vs, vw);
    cellv[c] = anc;
    stats.crossings += 1;
    mon.note(g2, "remove_crossing");
    const std::pair<std::pair<int, int>, Pt> corners[4] = {
        {{vn, ve}, {c.first + 1, c.second - 1}},
        {{ve, vs}, {c.first + 1, c.second + 1}},
        {{vs, vw}, {c.first - 1, c.second + 1}},
        {{vw, vn}, {c.first - 1, c.second - 1}},
    };
    for (const auto& [pairv, corner] : corners) {
      int mid = subdivide_edge(g2, pairv.first, pairv.second);
      cellv[corner] = mid;
      stats.subdivisions += 1;
      mon.note(g2, "subdivide_edge");
    }
  }
}

// ---------------------------------------------------------------------------
// Densification. Every empty cell first becomes a pinned (+1) filler whose
// couplings are inserted with exact compensation: a -i pi/4 field shift on
// each free neighbor and an e^{-i pi/4} prefactor per filler-filler edge.
// Fillers are then realized in pairs (p, a): p turns free with field -i pi/4
// and a becomes a fresh ancilla with field -(1+K) i pi/4 coupled to p and to
// its K residual-filler neighbors, which multiplies Z by exactly 2 e^{-i pi/4}
// per pair (hence the 1/2 e^{i pi/4} prefactor step). The ancilla cell may
// touch only its partner, residual fillers and the boundary: contact with
// another pair's cells would couple the pair gadgets and break the exact
// delta identity. Unpairable fillers stay pinned: residual gray cells.

void densify(IsingGraph& g2, std::map<Pt, int>& cellv, int w, int h, StepMonitor& mon,
             EmbedStats& stats) {
  auto in_grid = [&](Pt p) {
    return 0 <= p.first && p.first < w && 0 <= p.second && p.second < h;
  };
  auto empty = [&](Pt p) { return !cellv.count(p); };

  std::set<Pt> acell, pcell;
  std::vector<std::pair<Pt, Pt>> pairs;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Pt c{x, y};
      if (!empty(c) || acell.count(c) || pcell.count(c)) continue;
      bool p_ok = true;
      for (int d = 0; d < 4; ++d) {
        Pt m = cell_step(c, d);
        if (in_grid(m) && acell.count(m)) p_ok = false;
      }
      if (!p_ok) continue;
      for (Pt cand : {Pt{x + 1, y}, Pt{x, y + 1}}) {
        if (!in_grid(cand) || !empty(cand) || acell.count(cand)) continue;
        bool ok = true;
        for (int d = 0; d < 4 && ok; ++d) {
          Pt m = cell_step(cand, d);
          if (m == c || !in_grid(m)) continue;
          if (!empty(m) || acell.count(m) || pcell.count(m)) ok = false;
        }
        if (!ok) continue;
        pairs.push_back({c, cand});
        pcell.insert(c);
        acell.insert(cand);
        break;
      }
    }

  int fillers = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Pt c{x, y};
      if (cellv.count(c) || acell.count(c)) continue;
      int dv = g2.add_vertex(ComplexField{}, +1);
      cellv[c] = dv;
      fillers += 1;
      for (int d = 0; d < 4; ++d) {
        Pt m = cell_step(c, d);
        if (!in_grid(m) || acell.count(m)) continue;
        auto it = cellv.find(m);
        if (it == cellv.end()) continue;  // filler not inserted yet
        g2.add_edge(dv, it->second);
        if (g2.vertices[it->second].pinned)
          g2.prefactor.times_exp(ComplexField::quarter(-1));
        else
          g2.vertices[it->second].field += ComplexField::quarter(-1);
      }
      mon.note(g2, "insert_filler");
    }

  for (const auto& [p, a] : pairs) {
    int pv = cellv.at(p);
    g2.vertices[pv].pinned = 0;
    g2.vertices[pv].field += ComplexField::quarter(-1);
    int k = 0;
    for (int d = 0; d < 4; ++d) {
      Pt m = cell_step(a, d);
      if (m != p && in_grid(m) && cellv.count(m)) k += 1;
    }
    int av = g2.add_vertex(ComplexField::quarter(-(1 + k)), 0);
    cellv[a] = av;
    g2.add_edge(pv, av);
    for (int d = 0; d < 4; ++d) {
      Pt m = cell_step(a, d);
      if (m == p || !in_grid(m)) continue;
      auto it = cellv.find(m);
      if (it != cellv.end() && it->second != av) g2.add_edge(av, it->second);
    }
    g2.prefactor *= Prefactor::half_power(-2, 1);
    stats.filler_pairs += 1;
    mon.note(g2, "realize_filler_pair");
  }
  stats.residual_pins = fillers - static_cast<int>(pairs.size());
}

GridIsing extract_grid(const IsingGraph& g2, const std::map<Pt, int>& cellv, int w,
                       int h) {
  GridIsing grid = GridIsing::make(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto it = cellv.find({x, y});
      if (it == cellv.end())
        throw MalformedGraph("internal: cell (" + std::to_string(x) + "," +
                             std::to_string(y) + ") left unfilled");
      int v = it->second;
      grid.fields[grid.index(x, y)] = canonical(g2.vertices[v].field);
      grid.pinned[grid.index(x, y)] = g2.vertices[v].pinned ? 1 : 0;
    }
  grid.prefactor = Prefactor::canonical_phase(g2.prefactor);

  std::set<std::pair<int, int>> want;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int a = cellv.at({x, y});
      if (x + 1 < w) {
        int b = cellv.at({x + 1, y});
        want.insert({std::min(a, b), std::max(a, b)});
      }
      if (y + 1 < h) {
        int b = cellv.at({x, y + 1});
        want.insert({std::min(a, b), std::max(a, b)});
      }
    }
  auto es = g2.edges();
  std::set<std::pair<int, int>> have(es.begin(), es.end());
  if (have != want)
    throw MalformedGraph("internal: materialized edges do not match grid adjacency");
  return grid;
}

}  // namespace

EmbedResult embed_grid(const IsingGraph& g, const EmbedOptions& opts) {
  validate(g);
  for (const auto& vx : g.vertices)
    if (vx.pinned != 0)
      throw PreconditionError("grid embedding takes a graph of free spins only");
  EmbedResult res;
  StepMonitor mon;
  mon.opts = &opts;
  mon.stats = &res.stats;

  if (g.size() == 0) {
    res.grid = GridIsing::make(1, 1);
    res.grid.pinned[0] = 1;
    res.grid.prefactor = Prefactor::canonical_phase(g.prefactor);
    res.layout.width = res.layout.height = 1;
    res.stats.grid_cells = 1;
    res.stats.residual_pins = 1;
    return res;
  }

  IsingGraph work = g;
  mon.begin(work);
  split_high_degree(work, mon, res.stats);

  std::vector<Pt> vc;
  RouterState rs;
  if (!opts.placement_hints.empty()) {
    vc = layout_from_hints(work, opts, res.stats.splits);
    if (!route_all_retrying(work, vc, rs))
      throw PreconditionError("could not route every edge of the hinted placement");
  } else {
    bool routed = false;
    for (int scale : {4, 6, 8, 12, 16}) {
      vc = place_all(work, scale);
      if (route_all_retrying(work, vc, rs)) {
        routed = true;
        break;
      }
    }
    if (!routed) routed = comb_layout(work, vc, rs);
    if (!routed)
      throw PreconditionError("could not embed the graph at any dilation");
  }

  LayoutData lay{std::move(vc), std::move(rs.routes), std::move(rs.crossing_order)};
  compact_layout(lay);
  auto [w, h] = normalize_layout(lay);

  std::map<Pt, int> cellv;
  materialize(work, lay, cellv, mon, res.stats);
  densify(work, cellv, w, h, mon, res.stats);
  res.grid = extract_grid(work, cellv, w, h);

  res.layout.vertex_cell = std::move(lay.vertex_cell);
  res.layout.routes = std::move(lay.routes);
  res.layout.crossings = std::move(lay.crossings);
  res.layout.width = w;
  res.layout.height = h;
  res.stats.grid_cells = w * h;
  return res;
}

}  // namespace forge
