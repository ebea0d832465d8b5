#ifndef TOPOGRP_FILTERS_HPP_
#define TOPOGRP_FILTERS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "topogrp/toposys.hpp"

namespace topo {

// A filter of subgroups: non-trivial subgroups only, contains G, upward
// closed, closed under pairwise meets (so every finite meet is non-trivial).
class SubgroupFilter {
 public:
  // Throws NotAFilter with the failing witness.
  SubgroupFilter(LatticePtr lattice, IndexSet members);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const IndexSet& members() const { return members_; }
  bool contains(int i) const { return members_.contains(i); }
  // Meet of all members; itself a member.
  int kernel() const { return lattice_->meet_all(members_); }

  bool operator==(const SubgroupFilter& o) const { return members_ == o.members_; }

 private:
  LatticePtr lattice_;
  IndexSet members_;
};

ValidationReport check_filter_axioms(const SubgroupLattice& l, const IndexSet& members);

// Smallest filter containing S: finite meets of S, then everything above
// one of them. Throws NoFip (witness: the indices whose meet is trivial).
// The empty S generates {G}.
SubgroupFilter generate_filter(LatticePtr lattice, const IndexSet& s);

// F_x: the non-trivial subgroups containing x. Throws IdentityNotAllowed.
SubgroupFilter principal_filter(LatticePtr lattice, ElementId x);

// An ordinary filter on the set G, given by a base: X is a member iff some
// base set lies inside X.
struct OrdinaryFilter {
  int universe = 0;  // |G|
  std::vector<ElementSet> base;

  bool contains(ElementSet x) const;
};

// F1 = {X ⊆ G : A ⊆ X for some A ∈ F}, based on the members of F.
OrdinaryFilter ordinary_bridge(const SubgroupFilter& f);
// F1 ∩ Sub*(G).
SubgroupFilter restrict(const OrdinaryFilter& f1, LatticePtr lattice);
// The ordinary ultrafilter of all subsets containing x.
OrdinaryFilter principal_ordinary_ultrafilter(int universe, ElementId x);

struct UltrafilterCheck {
  bool ultra = true;
  std::optional<int> witness;  // member C that is a union of non-members below it
};
// F is ultra iff no member C is the union of the subgroups below C that are
// not in F (any union of non-members that lands in F is such a C, and the
// full family below C is the largest candidate).
UltrafilterCheck is_ultrafilter(const SubgroupFilter& f);

// F_x for x the least non-identity element of the kernel of F.
SubgroupFilter extend_to_ultrafilter(const SubgroupFilter& f);

// Every ultrafilter of subgroups on a finite group is F_x for some x != 1
// (derived lemma: an ultrafilter's kernel is a union of its cyclic
// subgroups, so some <x> is a member and F = F_x). Returns one F_x per
// distinct cyclic subgroup <x> != 1, ordered by least generator, each
// re-validated with is_ultrafilter. Throws TrivialGroup.
std::vector<SubgroupFilter> enumerate_ultrafilters(LatticePtr lattice);

// Literal pushforward {A <= H : f^-1(A) ∈ F}, including the trivial
// subgroup when ker f ∈ F.
IndexSet pushforward_family(const Homomorphism& f, const SubgroupFilter& filter, const SubgroupLattice& target);
// As above, but throws NotAFilter when the family contains the trivial
// subgroup (exactly when ker f ∈ F).
SubgroupFilter pushforward(const Homomorphism& f, const SubgroupFilter& filter, LatticePtr target);

struct ConvergenceCertificate {
  bool converges = true;
  ElementId target = 0;
  std::vector<int> checked;      // topens containing the target
  std::optional<int> offending;  // first checked topen outside F
};
// F -> y: every topen containing y is a member of F. The identity never
// qualifies: the trivial subgroup is topen and no filter contains it.
ConvergenceCertificate converges_to(const SubgroupFilter& f, const TopoSystem& t, ElementId y);
// Same test on a raw family (used for the literal pushforward).
ConvergenceCertificate converges_to(const IndexSet& family, const TopoSystem& t, ElementId y);

// All convergence points, grouped by <y>; classes ordered by least member.
std::vector<std::vector<ElementId>> convergence_set(const SubgroupFilter& f, const TopoSystem& t);

// A homomorphism with systems on both sides, for the continuity check.
struct TopoMap {
  Homomorphism map;
  const TopoSystem* source = nullptr;
  const TopoSystem* target = nullptr;
  std::string name;
};

struct TheoremReport {
  // (i) every ultrafilter converges somewhere
  bool compactness = true;
  std::optional<int> nonconvergent;  // ultrafilter position
  // (ii) Hausdorff <=> no ultrafilter converges to two cyclically distinct points
  bool hausdorff = true;
  bool hausdorff_equivalence = true;
  std::optional<int> two_point_filter;                  // ultrafilter position
  std::optional<std::pair<ElementId, ElementId>> two_points;
  // (iii) F -> x implies f_*(F) -> f(x) for every topomorphism f
  bool continuity = true;
  int continuity_checks = 0;
  int degenerate_pushforwards = 0;  // f(x) = 1: pushforward holds the trivial subgroup
  std::string failure;

  int ultrafilters = 0;
  bool passed() const { return compactness && hausdorff_equivalence && continuity; }
};

TheoremReport theorem_checks(const TopoSystem& t, const std::vector<TopoMap>& maps = {});

}  // namespace topo

#endif  // TOPOGRP_FILTERS_HPP_
