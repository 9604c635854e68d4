#include "qll/poset.hpp"

namespace qll {

std::optional<std::size_t> Poset::least_of(const Bits& set) const {
  for (auto c = set.find_first(); c != Bits::npos; c = set.find_next(c))
    if (set.is_subset_of(up_[c])) return c;
  return std::nullopt;
}

std::optional<std::size_t> Poset::bottom() const {
  Bits all(size());
  all.set();
  return least_of(all);
}

std::optional<std::size_t> Poset::join(std::size_t a, std::size_t b) const {
  return least_of(up_[a] & up_[b]);
}

bool Poset::covers(std::size_t lo, std::size_t hi) const {
  if (lo == hi || !leq(lo, hi)) return false;
  return (up_[lo] & down_[hi]).count() == 2;
}

std::vector<std::size_t> Poset::atoms() const {
  std::vector<std::size_t> out;
  auto bot = bottom();
  if (!bot) return out;
  for (std::size_t a = 0; a < size(); ++a)
    if (covers(*bot, a)) out.push_back(a);
  return out;
}

bool Poset::is_atomistic() const {
  auto bot = bottom();
  if (!bot) return false;
  auto at = atoms();
  for (std::size_t a = 0; a < size(); ++a) {
    Bits bounds(size());
    bounds.set();
    for (auto p : at)
      if (leq(p, a)) bounds &= up_[p];
    auto least = least_of(bounds);
    if (!least || *least != a) return false;
  }
  return true;
}

bool Poset::has_covering_property() const {
  auto at = atoms();
  for (auto p : at) {
    for (std::size_t a = 0; a < size(); ++a) {
      if (leq(p, a)) continue;
      auto j = join(a, p);
      if (!j || !covers(a, *j)) return false;
    }
  }
  return true;
}

}  // namespace qll
