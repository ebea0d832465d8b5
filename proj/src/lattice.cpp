#include "topogrp/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace topo {

Subgroup meet(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent) throw Error(ErrorCode::ParentMismatch, "meet of subgroups of different groups");
  return {a.parent, a.members & b.members};
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent) throw Error(ErrorCode::ParentMismatch, "join of subgroups of different groups");
  return {a.parent, subgroup_generated(*a.parent, a.members | b.members)};
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct Found {
  ElementSet members;
  std::vector<ElementId> generators;
};

// Closure of `base` (already a subgroup) together with x.
ElementSet extend(const FiniteGroup& g, const std::vector<ElementId>& gens, ElementId x) {
  ElementSet s;
  for (ElementId y : gens) s.insert(y);
  s.insert(x);
  return subgroup_generated(g, s);
}

}  // namespace

SubgroupLattice::SubgroupLattice(GroupPtr group) : group_(std::move(group)) {
  const FiniteGroup& g = *group_;
  const int n = g.order();

  std::unordered_map<std::uint64_t, std::vector<ElementId>> gens_of;
  std::vector<Found> found;
  std::vector<ElementId> cyclic_reps;  // one generator per distinct cyclic subgroup
  auto add = [&](ElementSet s, std::vector<ElementId> gens) {
    if (gens_of.contains(s.bits())) return false;
    gens_of.emplace(s.bits(), gens);
    found.push_back({s, std::move(gens)});
    return true;
  };
  for (ElementId x = 0; x < n; ++x) {
    const ElementSet c = cyclic_subgroup(g, x);
    if (add(c, x == 0 ? std::vector<ElementId>{} : std::vector<ElementId>{x})) cyclic_reps.push_back(x);
  }
  // Worklist closure under joins with cyclic subgroups.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (ElementId x : cyclic_reps) {
      if (found[i].members.contains(x)) continue;
      auto gens = found[i].generators;
      const ElementSet s = extend(g, gens, x);
      gens.push_back(x);
      add(s, std::move(gens));
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return lexicographic_less(a.members, b.members);
  });
  const int m = static_cast<int>(found.size());
  members_.reserve(found.size());
  for (int i = 0; i < m; ++i) {
    members_.push_back(found[static_cast<std::size_t>(i)].members);
    index_.emplace(members_.back().bits(), i);
  }

  cyclic_.resize(static_cast<std::size_t>(n));
  for (ElementId x = 0; x < n; ++x) cyclic_[static_cast<std::size_t>(x)] = index_.at(cyclic_subgroup(g, x).bits());

  meet_.assign(static_cast<std::size_t>(m * m), 0);
  join_.assign(static_cast<std::size_t>(m * m), 0);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const int mt = index_.at((members(a) & members(b)).bits());
      int jn;
      if (leq(a, b)) jn = b;
      else if (leq(b, a)) jn = a;
      else {
        ElementSet s;
        for (ElementId y : found[static_cast<std::size_t>(a)].generators) s.insert(y);
        for (ElementId y : found[static_cast<std::size_t>(b)].generators) s.insert(y);
        jn = index_.at(subgroup_generated(g, s).bits());
      }
      meet_[static_cast<std::size_t>(a * m + b)] = meet_[static_cast<std::size_t>(b * m + a)] = mt;
      join_[static_cast<std::size_t>(a * m + b)] = join_[static_cast<std::size_t>(b * m + a)] = jn;
    }
  }

  // Hasse covers. Supersets are visited by ascending index (hence
  // ascending order); j covers i unless an earlier cover already sits
  // below j.
  upper_.resize(static_cast<std::size_t>(m));
  lower_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& covers = upper_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      if (!leq(i, j) || i == j) continue;
      const bool above_cover = std::any_of(covers.begin(), covers.end(), [&](int c) { return leq(c, j); });
      if (!above_cover) covers.push_back(j);
    }
    for (int c : covers) lower_[static_cast<std::size_t>(c)].push_back(i);
  }
}

std::optional<int> SubgroupLattice::find(ElementSet set) const {
  const auto it = index_.find(set.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SubgroupLattice::index_of(ElementSet set) const {
  if (auto i = find(set)) return *i;
  throw Error(ErrorCode::BadParameter, set.to_string() + " is not a subgroup of " + group_->descriptor().to_string());
}

int SubgroupLattice::meet_all(const IndexSet& s) const {
  int r = top();
  s.for_each([&](int i) { r = meet(r, i); });
  return r;
}

int SubgroupLattice::join_all(const IndexSet& s) const {
  int r = trivial();
  s.for_each([&](int i) { r = join(r, i); });
  return r;
}

IndexSet SubgroupLattice::containing(ElementId x) const {
  IndexSet s(size());
  for (int i = 0; i < size(); ++i)
    if (members(i).contains(x)) s.insert(i);
  return s;
}

std::string SubgroupLattice::label(int i) const { return "#" + std::to_string(i) + " " + members(i).to_string(); }

LatticePtr enumerate_subgroups(GroupPtr group, int order_cap) {
  if (group->order() > std::min(order_cap, kMaxOrder))
    throw Error(ErrorCode::OrderCapExceeded,
                "lattice of a group of order " + std::to_string(group->order()) + " exceeds cap " +
                    std::to_string(order_cap));
  return std::make_shared<const SubgroupLattice>(std::move(group));
}

// ---------------------------------------------------------------------------
// subgroup algebra

namespace {

ElementSet conjugate_set(const FiniteGroup& g, ElementId by, ElementSet s) {
  ElementSet out;
  s.for_each([&](ElementId a) { out.insert(g.conjugate(by, a)); });
  return out;
}

}  // namespace

int core(const SubgroupLattice& l, int x) {
  const FiniteGroup& g = l.group();
  ElementSet c = l.members(x);
  for (ElementId h = 0; h < g.order(); ++h) c &= conjugate_set(g, h, l.members(x));
  return l.index_of(c);
}

int normalizer(const SubgroupLattice& l, int a) {
  const FiniteGroup& g = l.group();
  ElementSet n;
  for (ElementId h = 0; h < g.order(); ++h)
    if (conjugate_set(g, h, l.members(a)) == l.members(a)) n.insert(h);
  return l.index_of(n);
}

bool is_normal(const SubgroupLattice& l, int a) { return normalizer(l, a) == l.top(); }

int commutator_subgroup(const SubgroupLattice& l, int a, int b) {
  const FiniteGroup& g = l.group();
  ElementSet gens;
  l.members(a).for_each([&](ElementId x) {
    l.members(b).for_each([&](ElementId y) { gens.insert(g.commutator(x, y)); });
  });
  return l.index_of(subgroup_generated(g, gens));
}

std::vector<ElementId> generating_set(const FiniteGroup& g) {
  std::vector<ElementId> by_order(static_cast<std::size_t>(g.order()));
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](ElementId a, ElementId b) { return g.element_order(a) > g.element_order(b); });
  std::vector<ElementId> gens;
  ElementSet span = ElementSet::singleton(0);
  for (ElementId x : by_order) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    ElementSet s;
    for (ElementId y : gens) s.insert(y);
    span = subgroup_generated(g, s);
    if (span == g.all()) break;
  }
  return gens;
}

AutomorphismSet automorphisms(GroupPtr group, int order_cap) {
  const FiniteGroup& g = *group;
  if (g.order() > order_cap)
    throw Error(ErrorCode::OrderCapExceeded,
                "automorphisms of a group of order " + std::to_string(g.order()) + " exceed cap " +
                    std::to_string(order_cap));
  const int n = g.order();
  const auto gens = generating_set(g);
  AutomorphismSet result{group, {}};
  std::vector<ElementId> images(gens.size(), 0);

  // Extends the assignment gens[0..k) -> images over the subgroup they
  // generate, walking Cayley-graph edges. Returns false on an inconsistent
  // edge, i.e. when no homomorphism restricts to this assignment.
  auto extend = [&](std::size_t k, std::vector<ElementId>& map) {
    std::fill(map.begin(), map.end(), -1);
    map[0] = 0;
    std::vector<ElementId> frontier{0};
    while (!frontier.empty()) {
      std::vector<ElementId> next;
      for (ElementId x : frontier)
        for (std::size_t i = 0; i < k; ++i) {
          const ElementId y = g.mul(x, gens[i]);
          const ElementId fy = g.mul(map[static_cast<std::size_t>(x)], images[i]);
          auto& slot = map[static_cast<std::size_t>(y)];
          if (slot == -1) {
            slot = fy;
            next.push_back(y);
          } else if (slot != fy) {
            return false;
          }
        }
      frontier = std::move(next);
    }
    return true;
  };

  std::vector<ElementId> map(static_cast<std::size_t>(n));
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == gens.size()) {
      if (!extend(k, map)) return;
      ElementSet image;
      for (ElementId y : map) image.insert(y);
      if (image == g.all()) result.maps.push_back(map);
      return;
    }
    for (ElementId y = 0; y < n; ++y) {
      if (g.element_order(y) != g.element_order(gens[k])) continue;
      images[k] = y;
      if (extend(k + 1, map)) search(k + 1);
    }
  };
  search(0);
  return result;
}

bool is_characteristic(const SubgroupLattice& l, int a, const AutomorphismSet& aut) {
  const ElementSet s = l.members(a);
  for (const auto& map : aut.maps) {
    ElementSet image;
    s.for_each([&](ElementId x) { image.insert(map[static_cast<std::size_t>(x)]); });
    if (image != s) return false;
  }
  return true;
}

Variety Variety::parse(std::string_view text) {
  if (text == "abelian") return {Kind::Abelian, 0};
  for (std::string_view prefix : {"exponent:", "exponent-"}) {
    if (!text.starts_with(prefix)) continue;
    const std::string_view arg = text.substr(prefix.size());
    for (int n : {2, 3, 4, 6})
      if (arg == std::to_string(n)) return {Kind::Exponent, n};
  }
  throw Error(ErrorCode::UnsupportedVariety, "'" + std::string(text) + "'");
}

std::string Variety::to_string() const {
  return kind == Kind::Abelian ? "abelian" : "exponent-" + std::to_string(exponent);
}

int verbal_residual(const SubgroupLattice& l, const Variety& v) {
  const FiniteGroup& g = l.group();
  if (v.kind == Variety::Kind::Abelian) return commutator_subgroup(l, l.top(), l.top());
  if (v.exponent != 2 && v.exponent != 3 && v.exponent != 4 && v.exponent != 6)
    throw Error(ErrorCode::UnsupportedVariety, "exponent " + std::to_string(v.exponent));
  ElementSet powers;
  for (ElementId x = 0; x < g.order(); ++x) powers.insert(g.power(x, v.exponent));
  return l.index_of(subgroup_generated(g, powers));
}

// ---------------------------------------------------------------------------
// covers

namespace {

std::vector<int> greedy_cover(ElementSet target, std::span<const ElementSet> family) {
  std::vector<int> chosen;
  ElementSet left = target;
  while (!left.empty()) {
    int best = -1, gain = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const int g = (family[i] & left).size();
      if (g > gain) { gain = g; best = static_cast<int>(i); }
    }
    chosen.push_back(best);
    left = left - family[static_cast<std::size_t>(best)];
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::optional<CoverResult> minimal_cover(ElementSet target, std::span<const ElementSet> family) {
  ElementSet reachable;
  for (auto s : family) reachable |= s;
  if (!target.is_subset_of(reachable)) return std::nullopt;
  if (target.empty()) return CoverResult{};

  if (family.size() > static_cast<std::size_t>(kExactCoverLimit))
    return CoverResult{greedy_cover(target, family), false};

  // Branch on the uncovered element with the fewest candidate sets; the
  // greedy solution seeds the incumbent.
  std::vector<int> best = greedy_cover(target, family);
  std::vector<int> current;
  std::function<void(ElementSet)> search = [&](ElementSet left) {
    if (left.empty()) {
      if (current.size() < best.size()) best = current;
      return;
    }
    if (current.size() + 1 >= best.size()) return;
    ElementId pivot = -1;
    int fewest = 1 << 30;
    left.for_each([&](ElementId x) {
      int k = 0;
      for (auto s : family) k += s.contains(x);
      if (k < fewest) { fewest = k; pivot = x; }
    });
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!family[i].contains(pivot)) continue;
      current.push_back(static_cast<int>(i));
      search(left - family[i]);
      current.pop_back();
    }
  };
  search(target);
  std::sort(best.begin(), best.end());
  return CoverResult{best, true};
}

// ---------------------------------------------------------------------------
// derived groups

EmbeddedSubgroup subgroup_as_group(const SubgroupLattice& l, int h) {
  const FiniteGroup& g = l.group();
  const auto elems = l.members(h).to_vector();
  const int n = static_cast<int>(elems.size());
  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  for (int i = 0; i < n; ++i) local[static_cast<std::size_t>(elems[static_cast<std::size_t>(i)])] = i;
  std::vector<ElementId> table(static_cast<std::size_t>(n * n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a * n + b)] =
          local[static_cast<std::size_t>(g.mul(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]))];
    names.emplace_back(g.name(elems[static_cast<std::size_t>(a)]));
  }
  auto sub = std::make_shared<const FiniteGroup>(
      std::move(table), n,
      GroupDescriptor::derived("subgroup(" + g.descriptor().to_string() + ",#" + std::to_string(h) + ")", n),
      std::move(names));
  return {sub, Homomorphism{sub, l.group_ptr(), elems}};
}

QuotientGroup quotient_group(const SubgroupLattice& l, int n_index) {
  if (!is_normal(l, n_index))
    throw Error(ErrorCode::NotNormal, l.label(n_index) + " is not normal", {n_index});
  const FiniteGroup& g = l.group();
  const ElementSet normal = l.members(n_index);
  std::vector<int> coset_of(static_cast<std::size_t>(g.order()), -1);
  std::vector<ElementId> reps;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (coset_of[static_cast<std::size_t>(x)] != -1) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);
    normal.for_each([&](ElementId y) { coset_of[static_cast<std::size_t>(g.mul(x, y))] = c; });
  }
  const int q = static_cast<int>(reps.size());
  std::vector<ElementId> table(static_cast<std::size_t>(q * q));
  std::vector<std::string> names;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b)
      table[static_cast<std::size_t>(a * q + b)] =
          coset_of[static_cast<std::size_t>(g.mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
    names.push_back(std::string(g.name(reps[static_cast<std::size_t>(a)])) + "N");
  }
  auto quotient = std::make_shared<const FiniteGroup>(
      std::move(table), q,
      GroupDescriptor::derived("quotient(" + g.descriptor().to_string() + ",#" + std::to_string(n_index) + ")", q),
      std::move(names));
  return {quotient, Homomorphism{l.group_ptr(), quotient, coset_of}};
}

}  // namespace topo
