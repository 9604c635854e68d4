#include "qll/closure_space.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "qll/poset.hpp"

namespace qll {

const char* to_string(ValidationReport::Violation::Kind kind) {
  using K = ValidationReport::Violation::Kind;
  switch (kind) {
    case K::MissingEmpty: return "missing-empty";
    case K::MissingUniverse: return "missing-universe";
    case K::MissingSingleton: return "missing-singleton";
    case K::MissingIntersection: return "missing-intersection";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (valid()) return "valid simple closure space";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  std::size_t shown = 0;
  for (const auto& v : violations) {
    if (++shown > 8) {
      os << " ...";
      break;
    }
    os << ' ' << to_string(v.kind) << ' ' << v.witness.to_string();
    if (v.lhs && v.rhs) os << " = " << v.lhs->to_string() << " & " << v.rhs->to_string();
    os << ';';
  }
  return os.str();
}

ValidationReport validate_simple_closure_space(std::size_t universe_size,
                                               const std::vector<AtomSet>& family) {
  using K = ValidationReport::Violation::Kind;
  if (universe_size < 1) throw InputError("universe must contain at least one atom");
  for (const auto& a : family) {
    if (a.universe_size() != universe_size) {
      throw InputError("family member " + a.to_string() + " has universe size " +
                       std::to_string(a.universe_size()) + ", expected " +
                       std::to_string(universe_size));
    }
  }

  std::unordered_set<AtomSet, AtomSetHash> members(family.begin(), family.end());
  std::vector<AtomSet> distinct(members.begin(), members.end());
  canonicalize(distinct);

  ValidationReport report;
  if (!members.count(AtomSet(universe_size)))
    report.violations.push_back({K::MissingEmpty, AtomSet(universe_size), {}, {}});
  if (!members.count(AtomSet::full(universe_size)))
    report.violations.push_back({K::MissingUniverse, AtomSet::full(universe_size), {}, {}});
  for (std::size_t p = 0; p < universe_size; ++p) {
    auto s = AtomSet::singleton(universe_size, p);
    if (!members.count(s)) report.violations.push_back({K::MissingSingleton, s, {}, {}});
  }

  std::unordered_set<AtomSet, AtomSetHash> reported;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      auto x = distinct[i] & distinct[j];
      if (!members.count(x) && reported.insert(x).second)
        report.violations.push_back({K::MissingIntersection, x, distinct[i], distinct[j]});
    }
  }
  return report;
}

void canonicalize(std::vector<AtomSet>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

ClosureSpace ClosureSpace::from_family(std::size_t universe_size, std::vector<AtomSet> family,
                                       std::vector<std::string> atom_labels,
                                       std::uint64_t family_cap) {
  if (!atom_labels.empty() && atom_labels.size() != universe_size)
    throw InputError("atom_labels must name every atom");
  auto report = validate_simple_closure_space(universe_size, family);
  if (!report.valid()) throw InputError("not a simple closure space: " + report.summary());
  canonicalize(family);
  if (family.size() > family_cap) throw BudgetExceeded("family", family_cap);

  auto data = std::make_shared<ExplicitData>();
  data->family = std::move(family);
  data->index.reserve(data->family.size());
  for (std::size_t i = 0; i < data->family.size(); ++i) data->index.emplace(data->family[i], i);

  ClosureSpace s;
  s.n_ = universe_size;
  s.labels_ = std::move(atom_labels);
  s.explicit_ = std::move(data);
  return s;
}

ClosureSpace ClosureSpace::implicit(std::size_t universe_size, Membership membership,
                                    ClosureOp closure, std::vector<std::string> atom_labels) {
  if (universe_size < 1) throw InputError("universe must contain at least one atom");
  ClosureSpace s;
  s.n_ = universe_size;
  s.labels_ = std::move(atom_labels);
  s.implicit_ = std::make_shared<ImplicitData>(ImplicitData{std::move(membership), std::move(closure)});
  return s;
}

ClosureSpace ClosureSpace::boolean(std::size_t n) {
  if (n > 20) throw BudgetExceeded("family", Budgets{}.family_cap);
  std::vector<AtomSet> family;
  family.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AtomSet s(n);
    for (std::size_t p = 0; p < n; ++p)
      if ((mask >> p) & 1U) s.insert(p);
    family.push_back(s);
  }
  return from_family(n, std::move(family));
}

const std::vector<AtomSet>& ClosureSpace::family() const {
  if (!explicit_) throw Unsupported("operation requires an explicit family of closed sets");
  return explicit_->family;
}

void ClosureSpace::check_universe(const AtomSet& a) const {
  if (a.universe_size() != n_) {
    throw InputError("set " + a.to_string() + " over universe of size " +
                     std::to_string(a.universe_size()) + " used with space of size " +
                     std::to_string(n_));
  }
}

std::optional<std::size_t> ClosureSpace::index_of(const AtomSet& a) const {
  check_universe(a);
  if (!explicit_) throw Unsupported("index_of requires an explicit family");
  auto it = explicit_->index.find(a);
  if (it == explicit_->index.end()) return std::nullopt;
  return it->second;
}

bool ClosureSpace::contains(const AtomSet& a) const {
  check_universe(a);
  if (explicit_) return explicit_->index.count(a) != 0;
  return implicit_->membership(a);
}

AtomSet ClosureSpace::closure(const AtomSet& a) const {
  check_universe(a);
  if (implicit_) return implicit_->closure(a);
  AtomSet acc = universe();
  for (const auto& c : explicit_->family)
    if (a.is_subset_of(c)) acc &= c;
  return acc;
}

bool operator==(const ClosureSpace& a, const ClosureSpace& b) {
  return a.universe_size() == b.universe_size() && a.family() == b.family();
}

namespace {

void require_closed(const ClosureSpace& space, const AtomSet& a, const char* what) {
  if (!space.contains(a))
    throw ContractViolation(std::string(what) + ": " + a.to_string() + " is not closed");
}

}  // namespace

AtomSet join(const ClosureSpace& space, const AtomSet& a, const AtomSet& b) {
  require_closed(space, a, "join");
  require_closed(space, b, "join");
  return space.closure(a | b);
}

AtomSet meet(const ClosureSpace& space, const AtomSet& a, const AtomSet& b) {
  require_closed(space, a, "meet");
  require_closed(space, b, "meet");
  return a & b;
}

bool CoverGraph::covers(std::size_t lo, std::size_t hi) const {
  const auto& u = upper[lo];
  return std::find(u.begin(), u.end(), hi) != u.end();
}

std::size_t CoverGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& u : upper) e += u.size();
  return e;
}

CoverGraph cover_graph(const ClosureSpace& space) {
  const auto& fam = space.family();
  CoverGraph g;
  g.upper.resize(fam.size());
  g.lower.resize(fam.size());
  // Family is sorted by cardinality, so strict supersets of fam[i] appear
  // after i, and any closed set strictly between fam[i] and a candidate has
  // already been seen.
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      if (fam[j].size() == fam[i].size() || !fam[i].is_subset_of(fam[j])) continue;
      bool minimal = std::none_of(g.upper[i].begin(), g.upper[i].end(),
                                  [&](std::size_t k) { return fam[k].is_subset_of(fam[j]); });
      if (minimal) {
        g.upper[i].push_back(j);
        g.lower[j].push_back(i);
      }
    }
  }
  return g;
}

std::vector<AtomSet> upper_covers(const ClosureSpace& space, const AtomSet& a) {
  require_closed(space, a, "upper_covers");
  // Every cover of a is the closure of a plus one atom; covers are the
  // minimal such closures.
  std::vector<AtomSet> cands;
  for (std::size_t p = 0; p < space.universe_size(); ++p)
    if (!a.contains(p)) {
      auto c = a;
      c.insert(p);
      cands.push_back(space.closure(c));
    }
  canonicalize(cands);
  std::vector<AtomSet> out;
  for (const auto& c : cands) {
    bool minimal = std::none_of(cands.begin(), cands.end(), [&](const AtomSet& d) {
      return d.is_proper_subset_of(c);
    });
    if (minimal) out.push_back(c);
  }
  return out;
}

bool covers(const ClosureSpace& space, const AtomSet& a, const AtomSet& b) {
  require_closed(space, a, "covers");
  require_closed(space, b, "covers");
  if (!a.is_proper_subset_of(b)) return false;
  bool ok = true;
  (b - a).for_each([&](std::size_t p) {
    if (!ok) return;
    auto c = a;
    c.insert(p);
    if (space.closure(c) != b) ok = false;
  });
  return ok;
}

std::vector<AtomSet> coatoms(const ClosureSpace& space) {
  const auto& fam = space.family();
  auto top = space.universe();
  std::vector<AtomSet> out;
  for (const auto& c : fam) {
    if (c == top) continue;
    bool maximal = std::none_of(fam.begin(), fam.end(), [&](const AtomSet& d) {
      return d != top && c.is_proper_subset_of(d);
    });
    if (maximal) out.push_back(c);
  }
  return out;
}

std::optional<CoveringWitness> covering_failure(const ClosureSpace& space) {
  const auto& fam = space.family();
  const std::size_t n = space.universe_size();
  std::vector<AtomSet> joins(n);
  for (const auto& a : fam) {
    for (std::size_t p = 0; p < n; ++p) {
      if (a.contains(p)) continue;
      auto c = a;
      c.insert(p);
      joins[p] = space.closure(c);
    }
    // a v p covers a iff no a v r (r outside a) sits strictly below it.
    for (std::size_t p = 0; p < n; ++p) {
      if (a.contains(p)) continue;
      for (std::size_t r = 0; r < n; ++r) {
        if (a.contains(r) || r == p) continue;
        if (joins[r].is_proper_subset_of(joins[p])) return CoveringWitness{a, p, joins[p]};
      }
    }
  }
  return std::nullopt;
}

bool has_covering_property(const ClosureSpace& space) { return !covering_failure(space); }

bool is_atomistic(const ClosureSpace& space) {
  for (const auto& a : space.family()) {
    AtomSet j = space.empty_set();
    a.for_each([&](std::size_t p) { j = space.closure(j | space.atom(p)); });
    if (j != a) return false;
  }
  return true;
}

bool is_coatomistic(const ClosureSpace& space) {
  auto co = coatoms(space);
  for (const auto& a : space.family()) {
    AtomSet acc = space.universe();
    for (const auto& x : co)
      if (a.is_subset_of(x)) acc &= x;
    if (acc != a) return false;
  }
  return true;
}

bool is_dac(const ClosureSpace& space) {
  const auto& fam = space.family();
  auto order = Poset::from_leq(fam.size(), [&](std::size_t a, std::size_t b) {
    return fam[a].is_subset_of(fam[b]);
  });
  if (!order.is_atomistic() || !order.has_covering_property()) return false;
  auto dual = order.dual();
  return dual.is_atomistic() && dual.has_covering_property();
}

bool is_powerset(const ClosureSpace& space) {
  const auto n = space.universe_size();
  if (space.is_explicit()) return n < 64 && space.family().size() == (std::uint64_t{1} << n);
  if (n > 20) throw Unsupported("powerset test on an implicit space needs at most 20 atoms");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AtomSet s(n);
    for (std::size_t p = 0; p < n; ++p)
      if ((mask >> p) & 1U) s.insert(p);
    if (!space.contains(s)) return false;
  }
  return true;
}

}  // namespace qll
