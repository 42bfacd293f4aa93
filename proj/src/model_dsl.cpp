#include "forge/model_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '{' || c == '}') {
      out.push_back({std::string(1, c), static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '{' && line[i] != '}' && line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool parse_double_prefix(const std::string& s, std::size_t& pos, double& out) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) return false;
  pos += static_cast<std::size_t>(end - begin);
  out = v;
  return true;
}

bool try_parse_quarter(const std::string& s, int& k) {
  // <int>*i*pi/4
  std::size_t star = s.find('*');
  if (star == std::string::npos) return false;
  if (s.substr(star) != "*i*pi/4") return false;
  std::string head = s.substr(0, star);
  if (head.empty()) return false;
  std::size_t idx = 0;
  try {
    k = std::stoi(head, &idx);
  } catch (...) {
    return false;
  }
  return idx == head.size();
}

ComplexField parse_coupling_at(const std::string& s, int line, int column) {
  int k = 0;
  if (try_parse_quarter(s, k)) return canonical(ComplexField::quarter(k));
  std::size_t pos = 0;
  double re = 0.0;
  if (!parse_double_prefix(s, pos, re))
    throw ParseError(line, column, "bad coupling literal '" + s + "'");
  if (pos == s.size()) return canonical(ComplexField::real(re));
  char sign = s[pos];
  if (sign != '+' && sign != '-')
    throw ParseError(line, column, "bad coupling literal '" + s + "'");
  double im = 0.0;
  std::size_t impos = pos;  // keep the sign for strtod
  if (!parse_double_prefix(s, impos, im) || impos + 1 != s.size() ||
      s[impos] != 'i')
    throw ParseError(line, column, "bad coupling literal '" + s + "'");
  return canonical(ComplexField{re, 0, im});
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

}  // namespace

ComplexField parse_coupling(const std::string& text) {
  return parse_coupling_at(text, 1, 1);
}

SpinModel parse_model(const std::string& text) {
  SpinModel m;
  std::set<std::pair<bool, std::vector<int>>> seen_terms;
  int lineno = 0;
  std::size_t start = 0;
  bool saw_any = false;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    ++lineno;
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;

    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    saw_any = true;
    const std::string& head = toks[0].text;
    if (head == "site") {
      if (toks.size() != 3)
        throw ParseError(lineno, toks[0].column, "expected: site <id> <kind>");
      if (!valid_id(toks[1].text))
        throw ParseError(lineno, toks[1].column, "bad site id");
      SiteKind kind;
      if (toks[2].text == "spin")
        kind = SiteKind::Spin;
      else if (toks[2].text == "potts3")
        kind = SiteKind::Potts3;
      else if (toks[2].text == "potts4")
        kind = SiteKind::Potts4;
      else
        throw ParseError(lineno, toks[2].column,
                         "unknown site kind " + toks[2].text);
      if (m.site_index(toks[1].text) >= 0)
        throw SemanticError("duplicate site " + toks[1].text);
      m.add_site(toks[1].text, kind);
    } else if (head == "term") {
      std::size_t i = 1;
      bool is_delta = false;
      if (i < toks.size() && toks[i].text == "delta") {
        is_delta = true;
        ++i;
      }
      if (i >= toks.size() || toks[i].text != "{")
        throw ParseError(lineno, i < toks.size() ? toks[i].column : 1,
                         "expected '{'");
      ++i;
      std::vector<int> members;
      while (i < toks.size() && toks[i].text != "}") {
        if (!valid_id(toks[i].text))
          throw ParseError(lineno, toks[i].column, "bad site id");
        int idx = m.site_index(toks[i].text);
        if (idx < 0) throw SemanticError("unknown site " + toks[i].text);
        members.push_back(idx);
        ++i;
      }
      if (i >= toks.size())
        throw ParseError(lineno, static_cast<int>(line.size()) + 1,
                         "expected '}'");
      ++i;  // consume '}'
      if (members.empty())
        throw ParseError(lineno, toks[0].column, "empty term");
      if (i != toks.size() - 1)
        throw ParseError(lineno,
                         i < toks.size() ? toks[i].column
                                         : static_cast<int>(line.size()) + 1,
                         "expected exactly one coupling after '}'");
      ComplexField j = parse_coupling_at(toks[i].text, lineno, toks[i].column);
      std::vector<int> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1])
          throw SemanticError("duplicate site in term: " +
                              m.sites[sorted[k]].name);
      if (!seen_terms.insert({is_delta, sorted}).second)
        throw SemanticError("duplicate term");
      m.add_term(std::move(sorted), j, is_delta);
    } else {
      throw ParseError(lineno, toks[0].column, "unknown directive " + head);
    }
  }
  if (!saw_any) throw ParseError(1, 1, "empty model");
  m.validate();
  return m;
}

}  // namespace forge
