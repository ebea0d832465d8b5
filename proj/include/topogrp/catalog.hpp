#ifndef TOPOGRP_CATALOG_HPP_
#define TOPOGRP_CATALOG_HPP_

#include <string>
#include <vector>

#include "topogrp/toposys.hpp"

namespace topo {

// Catalog group descriptors up to `max_order`, ordered by (order, descriptor).
std::vector<std::string> catalog_groups(int max_order = 24);

// Factor pairs (and two triples) for product checks; factors have order
// <= 6 and every product has order <= 36.
std::vector<std::vector<std::string>> catalog_products();

// The nine constructor families, instantiated for one lattice:
// discrete, trivial, principal at <x> (x the least non-identity element),
// cofinite, normal, characteristic, variety:abelian, variety:exponent-2,
// thk with (H,K) = (1,G) and (Z(G),G), conj at <x>. Sorted by descriptor
// text.
std::vector<TopoDescriptor> catalog_systems(const SubgroupLattice& l);

// Center of G as a lattice index.
int center(const SubgroupLattice& l);

}  // namespace topo

#endif  // TOPOGRP_CATALOG_HPP_
