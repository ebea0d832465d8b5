#ifndef TOPOGRP_INDEX_SET_HPP_
#define TOPOGRP_INDEX_SET_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace topo {

// Set of canonical subgroup indices over a lattice of fixed size.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(int universe) : universe_(universe), words_(static_cast<std::size_t>((universe + 63) / 64), 0) {}
  IndexSet(int universe, std::initializer_list<int> members) : IndexSet(universe) {
    for (int i : members) insert(i);
  }
  static IndexSet full(int universe) {
    IndexSet s(universe);
    for (int i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  int universe() const { return universe_; }
  bool contains(int i) const { return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; }
  void insert(int i) { words_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  void erase(int i) { words_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
  int size() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const { return size() == 0; }
  bool is_subset_of(const IndexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  IndexSet operator&(const IndexSet& o) const {
    IndexSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  IndexSet operator|(const IndexSet& o) const {
    IndexSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
    return r;
  }
  bool operator==(const IndexSet&) const = default;
  // Orders by sorted member list, lexicographically; used for canonical report order.
  bool operator<(const IndexSet& o) const { return to_vector() < o.to_vector(); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t b = words_[w]; b != 0; b &= b - 1)
        f(static_cast<int>(w * 64) + std::countr_zero(b));
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  // "{#0,#3,#5}"
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      s += (first ? "#" : ",#") + std::to_string(i);
      first = false;
    });
    return s + "}";
  }

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace topo

#endif  // TOPOGRP_INDEX_SET_HPP_
