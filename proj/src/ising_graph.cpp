#include "forge/ising_graph.hpp"

#include <algorithm>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

int IsingGraph::add_vertex(const ComplexField& field, int pinned) {
  vertices.push_back({field, pinned});
  adj_.emplace_back();
  return size() - 1;
}

void IsingGraph::check_vertex(int v, const char* who) const {
  if (v < 0 || v >= size())
    throw PreconditionError(std::string(who) + ": vertex " + std::to_string(v) +
                            " out of range");
}

bool IsingGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= size() || v < 0 || v >= size()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void IsingGraph::add_edge(int u, int v) {
  check_vertex(u, "add_edge");
  check_vertex(v, "add_edge");
  if (u == v) throw PreconditionError("add_edge: self loop");
  if (has_edge(u, v)) throw PreconditionError("add_edge: parallel edge");
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

void IsingGraph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) throw PreconditionError("remove_edge: no such edge");
  adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
  adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
}

std::vector<std::pair<int, int>> IsingGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int IsingGraph::edge_count() const {
  int total = 0;
  for (const auto& a : adj_) total += static_cast<int>(a.size());
  return total / 2;
}

int IsingGraph::free_count() const {
  int c = 0;
  for (const auto& v : vertices)
    if (v.pinned == 0) ++c;
  return c;
}

GraphDiagnostics validate(const IsingGraph& g) {
  GraphDiagnostics d;
  d.vertex_count = g.size();
  d.edge_count = g.edge_count();
  for (int v = 0; v < g.size(); ++v) {
    int deg = g.degree(v);
    if (deg >= static_cast<int>(d.degree_histogram.size()))
      d.degree_histogram.resize(deg + 1, 0);
    ++d.degree_histogram[deg];
    d.max_degree = std::max(d.max_degree, deg);
    if (g.vertices[v].pinned != 0) ++d.pinned_count;
    for (int u : g.neighbors(v)) {
      if (u == v) throw MalformedGraph("self loop at " + std::to_string(v));
      if (u < 0 || u >= g.size())
        throw MalformedGraph("dangling edge at " + std::to_string(v));
      if (!g.has_edge(u, v))
        throw MalformedGraph("asymmetric adjacency at " + std::to_string(v));
    }
  }
  std::vector<int> seen(g.size(), 0);
  for (int v = 0; v < g.size(); ++v) {
    if (seen[v]) continue;
    ++d.component_count;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(x))
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
  }
  d.nonplanar_by_euler =
      g.size() >= 3 && d.edge_count > 3 * g.size() - 6;
  return d;
}

std::string serialize_ising(const IsingGraph& g) {
  std::ostringstream os;
  os << "isinggraph " << g.size() << " " << g.edge_count() << "\n";
  for (int v = 0; v < g.size(); ++v) {
    const IsingVertex& vx = g.vertices[v];
    os << "v " << v << " " << format_double(vx.field.real_part) << " "
       << vx.field.quarter_turns << " "
       << format_double(vx.field.residual_imag);
    if (vx.pinned > 0)
      os << " +1";
    else if (vx.pinned < 0)
      os << " -1";
    os << "\n";
  }
  for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
  os << "prefactor " << format_double(g.prefactor.log_magnitude) << " "
     << format_double(g.prefactor.phase) << "\n";
  return os.str();
}

IsingGraph parse_ising(const std::string& text) {
  IsingGraph g;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  int declared_n = -1, declared_m = -1;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "isinggraph") {
      if (!(ls >> declared_n >> declared_m))
        throw ParseError(lineno, 1, "bad isinggraph header");
      for (int i = 0; i < declared_n; ++i) g.add_vertex();
    } else if (tag == "v") {
      int id, q;
      double re, res;
      if (!(ls >> id >> re >> q >> res))
        throw ParseError(lineno, 1, "bad vertex line");
      if (id < 0 || id >= g.size())
        throw ParseError(lineno, 1, "vertex id out of range");
      g.vertices[id].field = ComplexField{re, q, res};
      std::string pin;
      if (ls >> pin) {
        if (pin == "+1")
          g.vertices[id].pinned = 1;
        else if (pin == "-1")
          g.vertices[id].pinned = -1;
        else
          throw ParseError(lineno, 1, "bad pin marker " + pin);
      }
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw ParseError(lineno, 1, "bad edge line");
      g.add_edge(u, v);
    } else if (tag == "prefactor") {
      double lm, ph;
      if (!(ls >> lm >> ph)) throw ParseError(lineno, 1, "bad prefactor line");
      g.prefactor = Prefactor{lm, ph};
    } else {
      throw ParseError(lineno, 1, "unknown record " + tag);
    }
  }
  if (declared_n < 0) throw ParseError(1, 1, "missing isinggraph header");
  if (g.edge_count() != declared_m)
    throw ParseError(lineno, 1, "edge count mismatch");
  return g;
}

}  // namespace forge
