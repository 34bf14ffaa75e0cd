#pragma once

#include <string>

#include "profiles.hpp"

namespace stratprof {

// Graphviz rendering of an expansion: agents in ovals, payoffs in boxes,
// holes dashed, recorded choices drawn with a heavier edge.
std::string render_dot(const UnrolledPtr &tree, const std::string &graph_name = "profile");

std::string render_dot(const FiniteProfilePtr &tree, const std::string &graph_name = "profile");

}  // namespace stratprof
