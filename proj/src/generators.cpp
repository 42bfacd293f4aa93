#include "forge/generators.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/model_dsl.hpp"

namespace forge {

namespace {

constexpr int kSiteCap = 4096;

void check_size(long long sites) {
  if (sites > kSiteCap)
    throw CapExceeded("lattice would have " + std::to_string(sites) +
                      " sites (cap " + std::to_string(kSiteCap) + ")");
}

// Lazily numbered sites keyed by integer coordinates.
class SiteTable {
public:
  explicit SiteTable(SpinModel& m, std::string prefix)
      : m_(m), prefix_(std::move(prefix)) {}
  int get(int a, int b) {
    auto it = ids_.find({a, b});
    if (it != ids_.end()) return it->second;
    int id = m_.add_site(
        prefix_ + std::to_string(a) + "_" + std::to_string(b),
        SiteKind::Spin);
    ids_[{a, b}] = id;
    return id;
  }

private:
  SpinModel& m_;
  std::string prefix_;
  std::map<std::pair<int, int>, int> ids_;
};

void add_pair_once(SpinModel& m, std::set<std::pair<int, int>>& seen, int a,
                   int b, const ComplexField& J) {
  if (a > b) std::swap(a, b);
  if (!seen.insert({a, b}).second) return;
  m.add_term({a, b}, J);
}

// Strip-family triangle list shared by the pair and 3-body generators.
// Strip k sits between vertex rows k and k+1; its cols triangles form the
// zigzag chain b0 t0 b1 t1 ... (b = row k, t = row k+1).
std::vector<std::array<int, 3>> strip_triangles(SiteTable& sites, int rows,
                                                int cols) {
  std::vector<std::array<int, 3>> tris;
  for (int k = 0; k < rows; ++k) {
    for (int t = 0; t < cols; ++t) {
      int m = t / 2;
      if (t % 2 == 0)
        tris.push_back({sites.get(k, m), sites.get(k, m + 1),
                        sites.get(k + 1, m)});
      else
        tris.push_back({sites.get(k + 1, m), sites.get(k + 1, m + 1),
                        sites.get(k, m + 1)});
    }
  }
  return tris;
}

}  // namespace

LatticeKind lattice_kind_from_name(const std::string& name) {
  if (name == "square") return LatticeKind::Square;
  if (name == "triangular") return LatticeKind::Triangular;
  if (name == "hexagonal") return LatticeKind::Hexagonal;
  if (name == "triangular3body") return LatticeKind::Triangular3Body;
  throw SemanticError("unknown lattice kind " + name);
}

SpinModel gen_lattice(LatticeKind kind, int rows, int cols,
                      const ComplexField& J) {
  if (rows < 1 || cols < 1)
    throw PreconditionError("gen_lattice: rows and cols must be >= 1");
  SpinModel m;
  switch (kind) {
    case LatticeKind::Square: {
      check_size(static_cast<long long>(rows + 1) * (cols + 1));
      SiteTable sites(m, "s");
      for (int y = 0; y <= rows; ++y)
        for (int x = 0; x <= cols; ++x) {
          if (x < cols) m.add_term({sites.get(x, y), sites.get(x + 1, y)}, J);
          if (y < rows) m.add_term({sites.get(x, y), sites.get(x, y + 1)}, J);
        }
      break;
    }
    case LatticeKind::Triangular: {
      check_size(static_cast<long long>(rows + 1) * (cols / 2 + 2));
      SiteTable sites(m, "t");
      std::set<std::pair<int, int>> seen;
      for (const auto& tri : strip_triangles(sites, rows, cols)) {
        add_pair_once(m, seen, tri[0], tri[1], J);
        add_pair_once(m, seen, tri[1], tri[2], J);
        add_pair_once(m, seen, tri[0], tri[2], J);
      }
      break;
    }
    case LatticeKind::Triangular3Body: {
      check_size(static_cast<long long>(rows + 1) * (cols / 2 + 2));
      SiteTable sites(m, "t");
      for (const auto& tri : strip_triangles(sites, rows, cols)) {
        std::vector<int> t(tri.begin(), tri.end());
        m.add_term(std::move(t), J);
      }
      break;
    }
    case LatticeKind::Hexagonal: {
      check_size(6LL * rows * cols);
      SiteTable sites(m, "h");
      std::set<std::pair<int, int>> seen;
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
          int x0 = 2 * j + (i % 2);
          int y = i;
          // brick outline: two horizontal pairs top and bottom, two verticals
          for (int d = 0; d < 2; ++d) {
            add_pair_once(m, seen, sites.get(x0 + d, y), sites.get(x0 + d + 1, y), J);
            add_pair_once(m, seen, sites.get(x0 + d, y + 1),
                          sites.get(x0 + d + 1, y + 1), J);
          }
          add_pair_once(m, seen, sites.get(x0, y), sites.get(x0, y + 1), J);
          add_pair_once(m, seen, sites.get(x0 + 2, y), sites.get(x0 + 2, y + 1), J);
        }
      }
      break;
    }
  }
  m.validate();
  return m;
}

SpinModel parse_gen_spec(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw SemanticError("generator spec must look like kind:RxC:J, got '" + spec + "'");
  const std::string kind = spec.substr(0, c1);
  const std::string dims = spec.substr(c1 + 1, c2 - c1 - 1);
  const std::string coupling = spec.substr(c2 + 1);
  int rows = 0, cols = 0;
  char trail = 0;
  if (std::sscanf(dims.c_str(), "%dx%d%c", &rows, &cols, &trail) != 2 ||
      rows <= 0 || cols <= 0)
    throw SemanticError("bad generator dimensions '" + dims + "' (want RxC)");
  return gen_lattice(lattice_kind_from_name(kind), rows, cols,
                     parse_coupling(coupling));
}

}  // namespace forge
