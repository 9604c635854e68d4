#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qll {

// Finite poset given by its full order relation. Used where an order-theoretic
// predicate has to be evaluated on a lattice that is not presented as a
// closure space, e.g. the order dual of a closure space.
class Poset {
 public:
  using Bits = boost::dynamic_bitset<>;

  template <typename Leq>
  static Poset from_leq(std::size_t n, Leq&& leq) {
    Poset p;
    p.up_.assign(n, Bits(n));
    p.down_.assign(n, Bits(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (leq(a, b)) {
          p.up_[a].set(b);
          p.down_[b].set(a);
        }
    return p;
  }

  std::size_t size() const noexcept { return up_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }

  Poset dual() const {
    Poset d;
    d.up_ = down_;
    d.down_ = up_;
    return d;
  }

  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> least_of(const Bits& set) const;
  std::optional<std::size_t> join(std::size_t a, std::size_t b) const;
  bool covers(std::size_t lo, std::size_t hi) const;
  std::vector<std::size_t> atoms() const;

  bool is_atomistic() const;
  bool has_covering_property() const;

 private:
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

}  // namespace qll
