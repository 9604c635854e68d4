#pragma once

#include <cstddef>
#include <string>

#include "qll/closure_space.hpp"

namespace qll {

/// Hasse diagram of an explicit space in Graphviz DOT. One node per closed
/// set in canonical order, one edge per cover pair (lower -> upper), drawn
/// bottom to top. Throws BudgetExceeded above `node_cap` closed sets.
std::string export_dot(const ClosureSpace& space, const std::string& graph_name = "lattice",
                       std::size_t node_cap = 5000);

}  // namespace qll
