#pragma once

#include <string>

#include "forge/spin_model.hpp"

namespace forge {

// Line-oriented grammar:
//   site <id> (spin|potts3|potts4)
//   term [delta] { <id>+ } <coupling>
//   # comment
// Coupling literal: <decimal>[(+|-)<decimal>i]  or  <int>*i*pi/4.
// Throws ParseError (syntax, with line and column) or SemanticError
// (unknown site, duplicate term, Potts misuse).
SpinModel parse_model(const std::string& text);

// Parses a coupling literal on its own (also used by the CLI --gen option).
ComplexField parse_coupling(const std::string& text);

}  // namespace forge
