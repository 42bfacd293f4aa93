#pragma once

#include <stdexcept>
#include <string>

namespace forge {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int column, const std::string& what_arg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + what_arg),
        line(line), column(column) {}
  int line;
  int column;
};

class SemanticError : public std::runtime_error {
public:
  explicit SemanticError(const std::string& what_arg)
      : std::runtime_error("semantic error: " + what_arg) {}
};

class PreconditionError : public std::logic_error {
public:
  explicit PreconditionError(const std::string& what_arg)
      : std::logic_error("precondition violated: " + what_arg) {}
};

class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what_arg)
      : std::runtime_error("enumeration cap exceeded: " + what_arg) {}
};

class MalformedGraph : public std::runtime_error {
public:
  explicit MalformedGraph(const std::string& what_arg)
      : std::runtime_error("malformed graph: " + what_arg) {}
};

class FitError : public std::runtime_error {
public:
  explicit FitError(const std::string& what_arg)
      : std::runtime_error("fit failed: " + what_arg) {}
};

}  // namespace forge
