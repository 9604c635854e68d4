#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qll/atom_set.hpp"
#include "qll/errors.hpp"

namespace qll {

/// A bijection on atom ids {0..n-1}.
class AtomPermutation {
 public:
  AtomPermutation() = default;

  /// Throws InputError unless `image` is a permutation of 0..image.size()-1.
  explicit AtomPermutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
      if (v >= image_.size() || seen[v]) throw InputError("image is not a permutation");
      seen[v] = true;
    }
  }

  static AtomPermutation identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{0});
    return AtomPermutation(std::move(img));
  }

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t atom) const { return image_.at(atom); }
  const std::vector<std::size_t>& image() const noexcept { return image_; }

  AtomSet apply(const AtomSet& s) const {
    AtomSet out(s.universe_size());
    s.for_each([&](std::size_t a) { out.insert(image_[a]); });
    return out;
  }

  AtomPermutation inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return AtomPermutation(std::move(inv));
  }

  /// (this * other)(x) = this(other(x)).
  AtomPermutation compose(const AtomPermutation& other) const {
    if (other.size() != size()) throw InputError("composing permutations of different sizes");
    std::vector<std::size_t> img(size());
    for (std::size_t i = 0; i < size(); ++i) img[i] = image_[other.image_[i]];
    return AtomPermutation(std::move(img));
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  friend bool operator==(const AtomPermutation&, const AtomPermutation&) = default;
  friend auto operator<=>(const AtomPermutation& a, const AtomPermutation& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::vector<std::size_t> image_;
};

}  // namespace qll
