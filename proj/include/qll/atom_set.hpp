#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "qll/errors.hpp"

namespace qll {

/// A subset of the finite universe {0, ..., universe_size - 1}.
///
/// Fixed capacity of kMaxAtoms atoms, stored as a packed bitset. Two sets
/// compare equal iff they share a universe and have the same members. The
/// total order is the canonical one used for families: by cardinality, then
/// lexicographically by sorted member list.
class AtomSet {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kMaxAtoms = 64 * kWords;

  AtomSet() = default;

  explicit AtomSet(std::size_t universe_size) : n_(checked(universe_size)) {}

  AtomSet(std::size_t universe_size, std::initializer_list<std::size_t> atoms)
      : AtomSet(universe_size) {
    for (auto a : atoms) insert(a);
  }

  static AtomSet full(std::size_t universe_size) {
    AtomSet s(universe_size);
    for (std::size_t w = 0; w < kWords; ++w) {
      std::size_t lo = 64 * w;
      if (universe_size <= lo) break;
      std::size_t bits = universe_size - lo;
      s.words_[w] = bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    }
    return s;
  }

  static AtomSet singleton(std::size_t universe_size, std::size_t atom) {
    AtomSet s(universe_size);
    s.insert(atom);
    return s;
  }

  static AtomSet from_members(std::size_t universe_size,
                              const std::vector<std::size_t>& members) {
    AtomSet s(universe_size);
    for (auto a : members) s.insert(a);
    return s;
  }

  std::size_t universe_size() const noexcept { return n_; }

  bool contains(std::size_t atom) const noexcept {
    return atom < n_ && ((words_[atom >> 6] >> (atom & 63)) & 1U);
  }

  void insert(std::size_t atom) {
    if (atom >= n_) {
      throw InputError("atom " + std::to_string(atom) + " outside universe of size " +
                       std::to_string(n_));
    }
    words_[atom >> 6] |= std::uint64_t{1} << (atom & 63);
  }

  void erase(std::size_t atom) noexcept {
    if (atom < n_) words_[atom >> 6] &= ~(std::uint64_t{1} << (atom & 63));
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_full() const noexcept { return size() == n_; }

  bool is_subset_of(const AtomSet& other) const noexcept {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  bool is_proper_subset_of(const AtomSet& other) const noexcept {
    return is_subset_of(other) && *this != other;
  }

  bool intersects(const AtomSet& other) const noexcept {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  AtomSet& operator&=(const AtomSet& o) noexcept {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  AtomSet& operator|=(const AtomSet& o) noexcept {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  AtomSet& operator-=(const AtomSet& o) noexcept {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend AtomSet operator&(AtomSet a, const AtomSet& b) noexcept { return a &= b; }
  friend AtomSet operator|(AtomSet a, const AtomSet& b) noexcept { return a |= b; }
  friend AtomSet operator-(AtomSet a, const AtomSet& b) noexcept { return a -= b; }

  AtomSet complement() const { return full(n_) - *this; }

  /// Smallest member, or universe_size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w]) return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return n_;
  }

  /// Smallest member strictly greater than `atom`, or universe_size().
  std::size_t next(std::size_t atom) const noexcept {
    std::size_t i = atom + 1;
    if (i >= n_) return n_;
    std::size_t w = i >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (word) return 64 * w + static_cast<std::size_t>(std::countr_zero(word));
      if (++w >= kWords) return n_;
      word = words_[w];
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto a = first(); a < n_; a = next(a)) out.push_back(a);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto a = first(); a < n_; a = next(a)) f(a);
  }

  const std::array<std::uint64_t, kWords>& words() const noexcept { return words_; }

  friend bool operator==(const AtomSet& a, const AtomSet& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  /// Canonical order: universe size, cardinality, then sorted member lists
  /// compared lexicographically.
  friend bool operator<(const AtomSet& a, const AtomSet& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    auto sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    // Equal cardinality: the set owning the smallest element of the
    // symmetric difference has the lexicographically smaller member list.
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff) return (a.words_[w] & (diff & -diff)) != 0;
    }
    return false;
  }
  friend bool operator!=(const AtomSet& a, const AtomSet& b) noexcept { return !(a == b); }
  friend bool operator>(const AtomSet& a, const AtomSet& b) noexcept { return b < a; }
  friend bool operator<=(const AtomSet& a, const AtomSet& b) noexcept { return !(b < a); }
  friend bool operator>=(const AtomSet& a, const AtomSet& b) noexcept { return !(a < b); }

  std::size_t hash() const noexcept {
    std::size_t h = n_;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x9E3779B97F4A7C15ULL;
    return h;
  }

  /// "{0,2,5}"
  std::string to_string() const {
    std::string s = "{";
    bool firstm = true;
    for_each([&](std::size_t a) {
      if (!firstm) s += ',';
      s += std::to_string(a);
      firstm = false;
    });
    return s + "}";
  }

 private:
  static std::uint32_t checked(std::size_t n) {
    if (n > kMaxAtoms) {
      throw InputError("universe of size " + std::to_string(n) + " exceeds capacity " +
                       std::to_string(kMaxAtoms));
    }
    return static_cast<std::uint32_t>(n);
  }

  std::uint32_t n_ = 0;
  std::array<std::uint64_t, kWords> words_{};
};

struct AtomSetHash {
  std::size_t operator()(const AtomSet& s) const noexcept { return s.hash(); }
};

}  // namespace qll

template <>
struct std::hash<qll::AtomSet> {
  std::size_t operator()(const qll::AtomSet& s) const noexcept { return s.hash(); }
};
