#include "forge/grid_ising.hpp"

#include <sstream>

#include "forge/errors.hpp"

namespace forge {

GridIsing GridIsing::make(int w, int h) {
  GridIsing g;
  g.width = w;
  g.height = h;
  g.fields.assign(static_cast<std::size_t>(w) * h, ComplexField{});
  g.pinned.assign(static_cast<std::size_t>(w) * h, 0);
  return g;
}

int GridIsing::pinned_count() const {
  int c = 0;
  for (auto p : pinned) c += p != 0;
  return c;
}

IsingGraph grid_to_graph(const GridIsing& g) {
  IsingGraph out;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      out.add_vertex(g.at(x, y), g.is_pinned(x, y) ? 1 : 0);
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) {
      if (x + 1 < g.width) out.add_edge(g.index(x, y), g.index(x + 1, y));
      if (y + 1 < g.height) out.add_edge(g.index(x, y), g.index(x, y + 1));
    }
  out.prefactor = g.prefactor;
  return out;
}

std::string serialize_grid(const GridIsing& g) {
  std::ostringstream os;
  os << "gridising " << g.width << " " << g.height << "\n";
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) {
      const ComplexField& f = g.at(x, y);
      os << "c " << x << " " << y << " " << format_double(f.real_part) << " "
         << f.quarter_turns << " " << format_double(f.residual_imag) << "\n";
    }
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      if (g.is_pinned(x, y)) os << "pin " << x << " " << y << "\n";
  os << "prefactor " << format_double(g.prefactor.log_magnitude) << " "
     << format_double(g.prefactor.phase) << "\n";
  return os.str();
}

GridIsing parse_grid(const std::string& text) {
  GridIsing g;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "gridising") {
      int w, h;
      if (!(ls >> w >> h) || w <= 0 || h <= 0)
        throw ParseError(lineno, 1, "bad gridising header");
      g = GridIsing::make(w, h);
      have_header = true;
    } else if (tag == "c") {
      int x, y, q;
      double re, res;
      if (!have_header) throw ParseError(lineno, 1, "cell before header");
      if (!(ls >> x >> y >> re >> q >> res))
        throw ParseError(lineno, 1, "bad cell line");
      if (x < 0 || x >= g.width || y < 0 || y >= g.height)
        throw ParseError(lineno, 1, "cell out of range");
      g.at(x, y) = ComplexField{re, q, res};
    } else if (tag == "pin") {
      int x, y;
      if (!have_header) throw ParseError(lineno, 1, "pin before header");
      if (!(ls >> x >> y)) throw ParseError(lineno, 1, "bad pin line");
      if (x < 0 || x >= g.width || y < 0 || y >= g.height)
        throw ParseError(lineno, 1, "pin out of range");
      g.pinned[g.index(x, y)] = 1;
    } else if (tag == "prefactor") {
      double lm, ph;
      if (!(ls >> lm >> ph)) throw ParseError(lineno, 1, "bad prefactor line");
      g.prefactor = Prefactor{lm, ph};
    } else {
      throw ParseError(lineno, 1, "unknown record " + tag);
    }
  }
  if (!have_header) throw ParseError(1, 1, "missing gridising header");
  return g;
}

}  // namespace forge
