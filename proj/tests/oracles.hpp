#pragma once

// Brute-force reference computations. Nothing here calls the library's
// constructors or searches; inputs are plain families of atom sets.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qll/atom_set.hpp"

namespace oracle {

using qll::AtomSet;
using Family = std::vector<AtomSet>;

inline AtomSet from_mask(std::size_t n, std::uint64_t mask) {
  AtomSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1U) s.insert(i);
  return s;
}

inline std::set<AtomSet> as_set(const Family& f) { return {f.begin(), f.end()}; }

// Smallest closed superset, found by scanning for the minimum-size superset.
inline AtomSet closure(const Family& family, const AtomSet& a) {
  const AtomSet* best = nullptr;
  for (const auto& c : family) {
    if (!a.is_subset_of(c)) continue;
    if (!best || c.size() < best->size()) best = &c;
  }
  return best ? *best : AtomSet::full(a.universe_size());
}

// Product atom (p1, p2) sits at p1 * n2 + p2.
struct Grid {
  std::size_t n1, n2;
  std::size_t at(std::size_t p1, std::size_t p2) const { return p1 * n2 + p2; }
  std::size_t size() const { return n1 * n2; }
  AtomSet row(const AtomSet& r, std::size_t p1) const {
    AtomSet out(n2);
    for (std::size_t j = 0; j < n2; ++j)
      if (r.contains(at(p1, j))) out.insert(j);
    return out;
  }
  AtomSet column(const AtomSet& r, std::size_t p2) const {
    AtomSet out(n1);
    for (std::size_t i = 0; i < n1; ++i)
      if (r.contains(at(i, p2))) out.insert(i);
    return out;
  }
  AtomSet cross(const AtomSet& a1, const AtomSet& a2) const {
    AtomSet out(size());
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        if (a1.contains(i) || a2.contains(j)) out.insert(at(i, j));
    return out;
  }
};

// Every subset R with R equal to the intersection of the generators above it.
inline Family generated_family(std::size_t n, const Family& generators) {
  Family out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto r = from_mask(n, mask);
    AtomSet meet = AtomSet::full(n);
    for (const auto& g : generators)
      if (r.is_subset_of(g)) meet &= g;
    if (meet == r) out.push_back(r);
  }
  return out;
}

inline Family sep_family(const Grid& g, const Family& f1, const Family& f2) {
  Family crosses;
  for (const auto& a : f1)
    for (const auto& b : f2) crosses.push_back(g.cross(a, b));
  return generated_family(g.size(), crosses);
}

inline Family top_family(const Grid& g, const Family& f1, const Family& f2) {
  const auto s1 = as_set(f1), s2 = as_set(f2);
  Family out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    const auto r = from_mask(g.size(), mask);
    bool ok = true;
    for (std::size_t i = 0; i < g.n1 && ok; ++i) ok = s2.count(g.row(r, i)) > 0;
    for (std::size_t j = 0; j < g.n2 && ok; ++j) ok = s1.count(g.column(r, j)) > 0;
    if (ok) out.push_back(r);
  }
  return out;
}

inline Family coatoms_of(const Family& f) {
  Family out;
  for (const auto& a : f) {
    if (a.is_full()) continue;
    bool maximal = true;
    for (const auto& b : f)
      if (a.is_proper_subset_of(b) && !b.is_full()) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

// Proper relations whose every row and column is a coatom or the full side.
inline Family star_generators(const Grid& g, const Family& f1, const Family& f2) {
  auto c1 = as_set(coatoms_of(f1)), c2 = as_set(coatoms_of(f2));
  c1.insert(AtomSet::full(g.n1));
  c2.insert(AtomSet::full(g.n2));
  Family out;
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << g.size()); ++mask) {
    const auto r = from_mask(g.size(), mask);
    bool ok = true;
    for (std::size_t i = 0; i < g.n1 && ok; ++i) ok = c2.count(g.row(r, i)) > 0;
    for (std::size_t j = 0; j < g.n2 && ok; ++j) ok = c1.count(g.column(r, j)) > 0;
    if (ok) out.push_back(r);
  }
  return out;
}

// Atom permutations preserving the family, by trying all n! of them.
inline std::vector<std::vector<std::size_t>> automorphisms(std::size_t n, const Family& f) {
  const auto s = as_set(f);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (const auto& a : f) {
      AtomSet img(n);
      a.for_each([&](std::size_t p) { img.insert(perm[p]); });
      if (!s.count(img)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Orthocomplementations as maps on the whole lattice, checked law by law.
// Only practical for very small families.
inline std::size_t count_orthocomplementations(const Family& f) {
  const std::size_t m = f.size();
  const std::size_t n = f.front().universe_size();
  const AtomSet bottom(n), top = AtomSet::full(n);
  std::vector<std::size_t> img(m, 0);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const auto& a = f[i];
      const auto& ac = f[img[i]];
      ok = img[img[i]] == i && (a & ac) == bottom && closure(f, a | ac) == top;
      for (std::size_t k = 0; k < m && ok; ++k)
        if (a.is_subset_of(f[k])) ok = f[img[k]].is_subset_of(ac);
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < m && ++img[pos] == m) img[pos++] = 0;
    if (pos == m) break;
  }
  return count;
}

inline AtomSet random_subset(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  AtomSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng)) s.insert(i);
  return s;
}

}  // namespace oracle
