#include "topogrp/oracles.hpp"

#include <algorithm>

namespace topo::oracle {

namespace {

bool closed_under_product(const FiniteGroup& g, ElementSet s) {
  const auto v = s.to_vector();
  for (ElementId a : v)
    for (ElementId b : v)
      if (!s.contains(g.mul(a, b))) return false;
  return true;
}

ElementSet closure(const FiniteGroup& g, ElementSet s) {
  s.insert(0);
  for (ElementSet prev; prev != s;) {
    prev = s;
    const auto v = s.to_vector();
    for (ElementId a : v)
      for (ElementId b : v) s.insert(g.mul(a, b));
  }
  return s;
}

bool sorted_less(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_vector() < b.to_vector();
}

}  // namespace

std::vector<ElementSet> subgroups_by_subsets(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<ElementSet> out;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const ElementSet s(1 | (rest << 1));
    if (closed_under_product(g, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), sorted_less);
  return out;
}

bool is_group_table(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    bool inv = false;
    for (int b = 0; b < n; ++b) inv = inv || (g.mul(a, b) == 0 && g.mul(b, a) == 0);
    if (!inv) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  }
  return true;
}

bool is_ultrafilter_by_families(const std::vector<ElementSet>& subgroups, const IndexSet& members) {
  const int m = static_cast<int>(subgroups.size());
  for (std::uint64_t family = 1; family < (std::uint64_t{1} << m); ++family) {
    ElementSet u;
    bool has_member = false;
    for (int i = 0; i < m; ++i)
      if ((family >> i) & 1U) {
        u |= subgroups[static_cast<std::size_t>(i)];
        has_member = has_member || members.contains(i);
      }
    const auto it = std::find(subgroups.begin(), subgroups.end(), u);
    if (it == subgroups.end()) continue;
    if (members.contains(static_cast<int>(it - subgroups.begin())) && !has_member) return false;
  }
  return true;
}

bool is_filter(const std::vector<ElementSet>& subgroups, const IndexSet& members) {
  const int m = static_cast<int>(subgroups.size());
  if (m < 2 || !members.contains(m - 1) || members.contains(0)) return false;
  for (int a = 0; a < m; ++a) {
    if (!members.contains(a)) continue;
    for (int b = 0; b < m; ++b) {
      const ElementSet sa = subgroups[static_cast<std::size_t>(a)], sb = subgroups[static_cast<std::size_t>(b)];
      if (sa.is_subset_of(sb) && !members.contains(b)) return false;
      if (members.contains(b)) {
        const auto it = std::find(subgroups.begin(), subgroups.end(), sa & sb);
        if (!members.contains(static_cast<int>(it - subgroups.begin()))) return false;
      }
    }
  }
  return true;
}

std::vector<IndexSet> all_filters(const std::vector<ElementSet>& subgroups) {
  const int m = static_cast<int>(subgroups.size());
  std::vector<IndexSet> out;
  if (m < 2) return out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
    // bits cover indices 1..m-1
    IndexSet s(m);
    for (int i = 1; i < m; ++i)
      if ((mask >> (i - 1)) & 1U) s.insert(i);
    if (is_filter(subgroups, s)) out.push_back(s);
  }
  return out;
}

bool is_toposystem(const FiniteGroup& g, const std::vector<ElementSet>& subgroups, const IndexSet& members) {
  const int m = static_cast<int>(subgroups.size());
  if (!members.contains(0) || !members.contains(m - 1)) return false;
  auto member_set = [&](ElementSet s) {
    const auto it = std::find(subgroups.begin(), subgroups.end(), s);
    return it != subgroups.end() && members.contains(static_cast<int>(it - subgroups.begin()));
  };
  const auto list = members.to_vector();
  for (int a : list)
    for (int b : list)
      if (!member_set(subgroups[static_cast<std::size_t>(a)] & subgroups[static_cast<std::size_t>(b)])) return false;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << list.size()); ++family) {
    ElementSet u;
    for (std::size_t i = 0; i < list.size(); ++i)
      if ((family >> i) & 1U) u |= subgroups[static_cast<std::size_t>(list[i])];
    if (!member_set(closure(g, u))) return false;
  }
  return true;
}

std::vector<IndexSet> all_toposystems(const FiniteGroup& g, const std::vector<ElementSet>& subgroups) {
  const int m = static_cast<int>(subgroups.size());
  std::vector<IndexSet> out;
  const int free = std::max(0, m - 2);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
    IndexSet s(m);
    s.insert(0);
    s.insert(m - 1);
    for (int i = 1; i < m - 1; ++i)
      if ((mask >> (i - 1)) & 1U) s.insert(i);
    if (is_toposystem(g, subgroups, s)) out.push_back(s);
  }
  return out;
}

}  // namespace topo::oracle
