#ifndef TOPOGRP_ELEMENT_SET_HPP_
#define TOPOGRP_ELEMENT_SET_HPP_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace topo {

// Elements are numbered 0..|G|-1 and 0 is always the identity.
using ElementId = int;

// Hard limit on group order: an ElementSet is a single 64-bit word.
inline constexpr int kMaxOrder = 64;

// Element-indexed membership set, one bit per element. Meets and unions
// are single word operations.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ElementSet singleton(ElementId x) { return ElementSet(std::uint64_t{1} << x); }
  static constexpr ElementSet first_n(int n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(ElementId x) const { return (bits_ >> x) & 1U; }
  constexpr void insert(ElementId x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(ElementId x) { bits_ &= ~(std::uint64_t{1} << x); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ElementSet other) const { return (bits_ & other.bits_) != 0; }
  // Smallest member; undefined on the empty set.
  constexpr ElementId min() const { return std::countr_zero(bits_); }

  constexpr ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  constexpr ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  constexpr ElementSet operator-(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  constexpr ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }
  constexpr ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
  constexpr bool operator==(const ElementSet&) const = default;

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<ElementId>(std::countr_zero(b)));
  }

  std::vector<ElementId> to_vector() const {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](ElementId x) { out.push_back(x); });
    return out;
  }

  // "{0,2,5}"
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](ElementId x) {
      if (!first) s += ',';
      s += std::to_string(x);
      first = false;
    });
    return s + "}";
  }

 private:
  std::uint64_t bits_ = 0;
};

// Orders sets by their sorted member lists, lexicographically.
inline bool lexicographic_less(ElementSet a, ElementSet b) {
  // The first differing element decides: whichever set owns the smaller
  // differing element is the lexicographically smaller list, unless the
  // other list has already ended (prefix case).
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const int d = std::countr_zero(diff);
  const std::uint64_t higher_mask = d == 63 ? 0 : ~((std::uint64_t{1} << (d + 1)) - 1);
  if (a.contains(d)) {
    // a has d where b has something larger or nothing at all.
    return (b.bits() & higher_mask) != 0;
  }
  return (a.bits() & higher_mask) == 0;
}

}  // namespace topo

#endif  // TOPOGRP_ELEMENT_SET_HPP_
