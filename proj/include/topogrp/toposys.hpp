#ifndef TOPOGRP_TOPOSYS_HPP_
#define TOPOGRP_TOPOSYS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topogrp/lattice.hpp"

namespace topo {

// A subgroup literal: `#k` (canonical index) or `gen{e1,e2,...}`
// (subgroup generated by element ids).
struct SubgroupRef {
  std::optional<int> index;
  ElementSet generators;

  static SubgroupRef parse(std::string_view text);
  static SubgroupRef of_index(int i) { return {i, {}}; }
  static SubgroupRef of_generators(ElementSet gens) { return {std::nullopt, gens}; }
  std::string to_string() const;
  int resolve(const SubgroupLattice& l) const;
};

struct TopoDescriptor {
  enum class Kind {
    Discrete, Trivial, Principal, Cofinite, Normal, Characteristic, Variety, Thk, Conj, Generated,
    Induced, Quotient, Product,  // provenance only; built by their own operations
  };

  Kind kind = Kind::Discrete;
  std::vector<SubgroupRef> subgroups;  // principal: B; thk: H,K; conj: H
  topo::Variety variety;
  std::vector<int> indices;  // generated seed

  // discrete|trivial|normal|characteristic|cofinite|principal:S|
  // variety:abelian|variety:exponent-n|thk:S:S|conj:S|generated:#i,#j,...
  static TopoDescriptor parse(std::string_view text);
  std::string to_string() const;
};

// A verified topo-system: a set of subgroup indices containing 1 and G,
// closed under joins and pairwise meets. Members are the topen subgroups.
class TopoSystem {
 public:
  // Throws BadParameter (with the verifier's witness) if `members` is not a
  // topo-system.
  TopoSystem(LatticePtr lattice, IndexSet members, std::string provenance, std::vector<std::string> notes = {});

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const FiniteGroup& group() const { return lattice_->group(); }
  const IndexSet& members() const { return members_; }
  bool contains(int i) const { return members_.contains(i); }
  const std::string& provenance() const { return provenance_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // Topens containing x, and the smallest of them (their meet, itself topen).
  IndexSet topens_containing(ElementId x) const;
  int neighbourhood(ElementId x) const { return neighbourhood_[static_cast<std::size_t>(x)]; }

 private:
  LatticePtr lattice_;
  IndexSet members_;
  std::string provenance_;
  std::vector<std::string> notes_;
  std::vector<int> neighbourhood_;
};

// Axioms: 1 and G present; pairwise meets present; joins present. For a
// finite lattice, closure under pairwise joins already gives the join of
// any subfamily (fold the family two at a time). Failure witnesses are
// the missing index or the offending pair.
ValidationReport verify_toposys(const SubgroupLattice& l, const IndexSet& members);

// `aut` is computed on demand for the characteristic family when null.
TopoSystem build_toposys(LatticePtr lattice, const TopoDescriptor& descriptor, const AutomorphismSet* aut = nullptr);

// Least topo-system containing `seed`: add 1 and G, then close under
// pairwise joins and meets until stable.
TopoSystem generate_toposys(LatticePtr lattice, const IndexSet& seed, std::string provenance = "generated");

struct InducedToposys {
  TopoSystem system;       // on H's own lattice
  Homomorphism inclusion;  // H -> G
};
// System on H generated by the traces A ∩ H, A topen.
InducedToposys induced_toposys(const TopoSystem& t, int h);

struct QuotientToposys {
  QuotientGroup quotient;
  LatticePtr lattice;
  IndexSet candidate;  // {AN/N : A topen}
  ValidationReport report;
  std::optional<TopoSystem> system;  // present iff the candidate verified
};
// Throws NotNormal.
QuotientToposys quotient_toposys(const TopoSystem& t, int n);

struct InteriorBoundary {
  int interior;         // join of the topens inside X
  ElementSet boundary;  // X minus its interior
};
InteriorBoundary interior_boundary(const TopoSystem& t, int x);
// Element-wise interior: x in X lying in some topen A <= X.
ElementSet interior_elements(const TopoSystem& t, int x);

struct ClosureResult {
  ElementSet limit_points;
  int closure;  // <X ∪ limit points>
};
// y is a limit point of X when every topen containing y meets X in at
// least two elements.
ClosureResult closure_and_limits(const TopoSystem& t, int x);

struct ClosedChecks {
  bool t_closed = true;
  bool weak_t_closed = true;
  std::optional<ElementId> t_closed_witness;  // least stuck x
  std::optional<ElementId> weak_witness;
};
// T-closed: every x outside A lies in a topen B with A ∩ B = 1.
// Weak: the same, but only for x with <x> ∩ A = 1 (and x in B required).
ClosedChecks t_closed_checks(const TopoSystem& t, int a);

struct SeparationWitness {
  ElementId x = 0;
  ElementId y = 0;
  int a = 0;  // topen around x
  int b = 0;  // topen around y
  bool separated = false;  // a ∩ b = 1, or else a, b are the smallest neighbourhoods and meet non-trivially
};
// Best attempt at separating x and y: their smallest neighbourhoods.
SeparationWitness separate(const TopoSystem& t, ElementId x, ElementId y);
bool cyclically_distinct(const SubgroupLattice& l, ElementId x, ElementId y);

struct HausdorffResult {
  bool hausdorff = true;
  std::optional<SeparationWitness> witness;  // the first inseparable pair
};
HausdorffResult is_hausdorff(const TopoSystem& t);

struct SubcoverCertificate {
  std::vector<int> subcover;  // lattice indices, ascending
  bool exact = true;          // minimum cardinality proven
  // A finite group is always topo-compact; the subcover is the witness.
  bool compact = true;
};
// Throws BadParameter if a cover member is not topen.
std::optional<SubcoverCertificate> find_finite_subcover(const TopoSystem& t, int x, std::span<const int> cover);

struct TopomorphismResult {
  bool continuous = true;
  std::optional<int> offending;  // target topen whose preimage is not topen
};
// `t` lives on f.source, `s` on f.target.
TopomorphismResult is_topomorphism(const Homomorphism& f, const TopoSystem& t, const TopoSystem& s);

// The topology on G whose basis is T: opens are unions of topens.
bool is_star_open(const TopoSystem& t, ElementSet x);

struct StarReport {
  bool never_hausdorff = true;
  bool trace_inclusion = true;  // (T*)_ind ⊆ (T_ind)* for every H
  int pairs_checked = 0;
  int traces_checked = 0;
  std::string failure;
  std::vector<int> witness;

  bool passed() const { return never_hausdorff && trace_inclusion; }
};
// never-Hausdorff: the smallest star-open neighbourhoods of any two points
// share the identity. Trace inclusion: for each H, every trace U ∩ H of a
// star-open U is star-open for the induced system on H; checked on the
// basis traces A ∩ H and on every union of them when T has at most
// kStarUnionLimit members.
inline constexpr int kStarUnionLimit = 10;
StarReport star_topology_checks(const TopoSystem& t);

}  // namespace topo

#endif  // TOPOGRP_TOPOSYS_HPP_
