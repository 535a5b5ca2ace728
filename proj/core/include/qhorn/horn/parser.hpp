#pragma once

#include <string>

#include "qhorn/horn/term.hpp"

namespace qhorn::horn {

// Throws ParseError with line and column on malformed input.
Program parse_program(const std::string& src);
// Comma-separated goals, optional trailing '.'.
Query parse_query(const std::string& src);
// A single term expression, for tests and the CLI.
TermPtr parse_term(const std::string& src);

}  // namespace qhorn::horn
