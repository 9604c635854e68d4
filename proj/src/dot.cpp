#include "qll/dot.hpp"

#include <sstream>

namespace qll {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string set_label(const ClosureSpace& space, const AtomSet& a) {
  if (a.empty()) return "0";
  if (a.is_full() && a.size() > 1) return "1";
  const auto& labels = space.atom_labels();
  std::string s = "{";
  bool first = true;
  a.for_each([&](std::size_t p) {
    if (!first) s += ',';
    s += labels.empty() ? std::to_string(p) : labels[p];
    first = false;
  });
  return s + "}";
}

}  // namespace

std::string export_dot(const ClosureSpace& space, const std::string& graph_name, std::size_t node_cap) {
  const auto& fam = space.family();
  if (fam.size() > node_cap) throw BudgetExceeded("DOT node", node_cap);
  auto g = cover_graph(space);

  std::ostringstream os;
  os << "digraph " << quote(graph_name) << " {\n";
  os << "  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < fam.size(); ++i) os << "  n" << i << " [label=" << quote(set_label(space, fam[i])) << "];\n";

  // Same rank for every closed set of one cardinality.
  std::size_t i = 0;
  while (i < fam.size()) {
    std::size_t j = i;
    while (j < fam.size() && fam[j].size() == fam[i].size()) ++j;
    if (j - i > 1) {
      os << "  { rank=same;";
      for (std::size_t k = i; k < j; ++k) os << " n" << k << ';';
      os << " }\n";
    }
    i = j;
  }
  for (std::size_t lo = 0; lo < fam.size(); ++lo)
    for (auto hi : g.upper[lo]) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qll
