#ifndef TOPOGRP_ORACLES_HPP_
#define TOPOGRP_ORACLES_HPP_

// Brute-force reference computations. They read only Cayley tables and
// element sets and never call the lattice/filter algorithms they are used
// to check.

#include <vector>

#include "topogrp/group.hpp"
#include "topogrp/index_set.hpp"

namespace topo::oracle {

// Every subset containing the identity that is closed under the product,
// sorted by (size, sorted member list). Exponential; |G| <= 20.
std::vector<ElementSet> subgroups_by_subsets(const FiniteGroup& g);

// The group axioms checked triple by triple.
bool is_group_table(const FiniteGroup& g);

// Literal ultrafilter test over subgroup sets `subgroups` (index 0 trivial):
// every family whose union is a member has a member. Exponential in the
// number of subgroups; <= 16.
bool is_ultrafilter_by_families(const std::vector<ElementSet>& subgroups, const IndexSet& members);

// Filter axioms with upward closure checked against every pair, no Hasse
// diagram.
bool is_filter(const std::vector<ElementSet>& subgroups, const IndexSet& members);

// Every filter on the lattice given by `subgroups` (index 0 trivial, last
// index G). <= 16 subgroups.
std::vector<IndexSet> all_filters(const std::vector<ElementSet>& subgroups);

// Topo-system axioms with (b) checked over every subfamily, joins taken by
// closure in the Cayley table.
bool is_toposystem(const FiniteGroup& g, const std::vector<ElementSet>& subgroups, const IndexSet& members);

// Every topo-system on the lattice; <= 12 subgroups.
std::vector<IndexSet> all_toposystems(const FiniteGroup& g, const std::vector<ElementSet>& subgroups);

}  // namespace topo::oracle

#endif  // TOPOGRP_ORACLES_HPP_
