#ifndef CLMP_CI_FORMAT_HPP
#define CLMP_CI_FORMAT_HPP

#include <string>

#include "clmp/baselines.hpp"
#include "clmp/enumerate.hpp"
#include "clmp/graph.hpp"

namespace clmp {

// Stable line formats. Text: `X _||_ W1,W2 | Z1,Z2` with members sorted by
// name and the conditioning part omitted when empty. JSON: one object per
// line, {"x":...,"w":[...],"z":[...]}.

std::string ci_line_text(const CausalGraph& g, const CiStatement& s);
std::string ci_line_json(const CausalGraph& g, const CiStatement& s);

std::string gmp_line_text(const CausalGraph& g, const GmpStatement& s);
std::string gmp_line_json(const CausalGraph& g, const GmpStatement& s);

/// Parses the text CI line format back into a statement (used by tests and
/// the verify subcommand).
CiStatement parse_ci_line_text(const CausalGraph& g, const std::string& line);

}  // namespace clmp

#endif
