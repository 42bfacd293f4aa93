#pragma once

#include <string>
#include <utility>
#include <vector>

#include "forge/complex_field.hpp"

namespace forge {

// Vertex of the uniform-coupling Ising graph. pinned is 0 for a free
// (summed) spin, otherwise the frozen value +1 or -1.
struct IsingVertex {
  ComplexField field;
  int pinned = 0;
};

// Simple graph whose every edge carries the fixed coupling gamma = i*pi/4;
// all model content lives in the complex vertex fields and the prefactor.
struct IsingGraph {
  std::vector<IsingVertex> vertices;
  // Cumulative constant: Z(source artifact) = as_complex(prefactor) * Z(this).
  Prefactor prefactor;

  int size() const { return static_cast<int>(vertices.size()); }
  int add_vertex(const ComplexField& field = {}, int pinned = 0);
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;
  int free_count() const;
  void check_vertex(int v, const char* who) const;

private:
  std::vector<std::vector<int>> adj_;  // each list sorted ascending
};

struct GraphDiagnostics {
  int vertex_count = 0;
  int edge_count = 0;
  std::vector<int> degree_histogram;  // index = degree
  int max_degree = 0;
  int pinned_count = 0;
  int component_count = 0;
  // Euler quick check |E| > 3|V| - 6 (certainly nonplanar when true).
  bool nonplanar_by_euler = false;
};

GraphDiagnostics validate(const IsingGraph& g);

std::string serialize_ising(const IsingGraph& g);
IsingGraph parse_ising(const std::string& text);

}  // namespace forge
