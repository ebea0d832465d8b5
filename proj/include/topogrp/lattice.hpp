#ifndef TOPOGRP_LATTICE_HPP_
#define TOPOGRP_LATTICE_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topogrp/group.hpp"
#include "topogrp/index_set.hpp"

namespace topo {

// A subgroup as a value: its member set plus the group it lives in.
struct Subgroup {
  GroupPtr parent;
  ElementSet members;

  int order() const { return members.size(); }
  bool operator==(const Subgroup& o) const { return parent == o.parent && members == o.members; }
};

// Value-level meet and join; both throw ParentMismatch across groups.
Subgroup meet(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);

class SubgroupLattice;
using LatticePtr = std::shared_ptr<const SubgroupLattice>;

// Every subgroup of a finite group, canonically ordered by (order, sorted
// member list). Index 0 is the trivial subgroup and the last index is G.
// Everything downstream refers to subgroups by these indices.
class SubgroupLattice {
 public:
  // Seeds with all cyclic subgroups, then closes under joins with cyclic
  // subgroups until nothing new appears (every subgroup is a join of
  // cyclic ones).
  explicit SubgroupLattice(GroupPtr group);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }

  int size() const { return static_cast<int>(members_.size()); }
  int trivial() const { return 0; }
  int top() const { return size() - 1; }
  ElementSet members(int i) const { return members_[static_cast<std::size_t>(i)]; }
  int order(int i) const { return members_[static_cast<std::size_t>(i)].size(); }
  Subgroup subgroup(int i) const { return {group_, members(i)}; }
  IndexSet empty_set() const { return IndexSet(size()); }

  // Canonical index of a subgroup, or nullopt when `set` is not one.
  std::optional<int> find(ElementSet set) const;
  // As find, but throws BadParameter for non-subgroups.
  int index_of(ElementSet set) const;

  int meet(int a, int b) const { return meet_[static_cast<std::size_t>(a * size() + b)]; }
  int join(int a, int b) const { return join_[static_cast<std::size_t>(a * size() + b)]; }
  bool leq(int a, int b) const { return members(a).is_subset_of(members(b)); }
  // Index of <x>.
  int cyclic(ElementId x) const { return cyclic_[static_cast<std::size_t>(x)]; }

  // Hasse diagram.
  const std::vector<int>& upper_covers(int i) const { return upper_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& lower_covers(int i) const { return lower_[static_cast<std::size_t>(i)]; }

  // Meet / join of an arbitrary index set (G / 1 for the empty set).
  int meet_all(const IndexSet& s) const;
  int join_all(const IndexSet& s) const;

  // Indices of subgroups containing x.
  IndexSet containing(ElementId x) const;

  // "#3 {0,2}" style label.
  std::string label(int i) const;

 private:
  GroupPtr group_;
  std::vector<ElementSet> members_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> meet_;
  std::vector<int> join_;
  std::vector<int> cyclic_;
  std::vector<std::vector<int>> upper_;
  std::vector<std::vector<int>> lower_;
};

// enumerate_subgroups with the order cap check.
LatticePtr enumerate_subgroups(GroupPtr group, int order_cap = kMaxOrder);

// Largest normal subgroup inside X: the intersection of all conjugates.
int core(const SubgroupLattice& l, int x);
int normalizer(const SubgroupLattice& l, int a);
bool is_normal(const SubgroupLattice& l, int a);
// <[a,b] : a in A, b in B>
int commutator_subgroup(const SubgroupLattice& l, int a, int b);

// All automorphisms, each as a full element map. Invariants: contains the
// identity, closed under composition and inverse.
struct AutomorphismSet {
  GroupPtr group;
  std::vector<std::vector<ElementId>> maps;

  int size() const { return static_cast<int>(maps.size()); }
};

inline constexpr int kAutomorphismOrderCap = 24;

// Backtracks over images of a greedily chosen generating set, pruning on
// element order and on partial-homomorphism consistency.
AutomorphismSet automorphisms(GroupPtr group, int order_cap = kAutomorphismOrderCap);
bool is_characteristic(const SubgroupLattice& l, int a, const AutomorphismSet& aut);

// Greedy generating set: scan elements by descending order, keep any not
// already generated.
std::vector<ElementId> generating_set(const FiniteGroup& g);

struct Variety {
  enum class Kind { Abelian, Exponent };
  Kind kind = Kind::Abelian;
  int exponent = 0;

  // "abelian", "exponent:n" or "exponent-n"; n in {2,3,4,6}.
  static Variety parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const Variety&) const = default;
};

// Smallest normal N with G/N in the variety: [G,G] or <g^n>.
int verbal_residual(const SubgroupLattice& l, const Variety& v);

struct CoverResult {
  std::vector<int> chosen;  // positions into the family, ascending
  bool exact = true;        // false when the greedy fallback was used
};

inline constexpr int kExactCoverLimit = 20;

// Minimum-cardinality subfamily whose union still contains `target`;
// nullopt when the whole family does not. Exact branch and bound up to
// kExactCoverLimit members, greedy (flagged) beyond.
std::optional<CoverResult> minimal_cover(ElementSet target, std::span<const ElementSet> family);

// Subgroup H of G as a group in its own right. Elements of H are renumbered
// by increasing parent id, so the identity stays at 0. Also returns the
// inclusion H -> G.
struct EmbeddedSubgroup {
  GroupPtr group;
  Homomorphism inclusion;
};
EmbeddedSubgroup subgroup_as_group(const SubgroupLattice& l, int h);

// G/N with cosets ordered by their least element id; also returns the
// natural map. Throws NotNormal.
struct QuotientGroup {
  GroupPtr group;
  Homomorphism projection;
};
QuotientGroup quotient_group(const SubgroupLattice& l, int n);

}  // namespace topo

#endif  // TOPOGRP_LATTICE_HPP_
