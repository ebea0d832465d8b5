#ifndef TOPOGRP_GROUP_HPP_
#define TOPOGRP_GROUP_HPP_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topogrp/element_set.hpp"
#include "topogrp/error.hpp"

namespace topo {

// Which concrete construction a group came from. Element numbering is
// fixed per kind:
//   cyclic:n       k            <-> residue k mod n
//   abelian:n1x..  mixed radix, first factor most significant
//   dihedral:n     f*n + k      <-> s^f r^k (order 2n)
//   sym:n, alt:n   permutations of {1..n} in lexicographic order of their
//                  one-line form (alt keeps only even ones); p*q applies q first
//   quaternion:8   1,-1,i,-i,j,-j,k,-k
//   product(A,B)   a*|B| + b, first factor most significant
// Derived groups (subgroups and quotients built at runtime) carry a label
// and are not parseable.
struct GroupDescriptor {
  enum class Kind { Cyclic, Abelian, Dihedral, Symmetric, Alternating, Quaternion, Product, Derived };

  Kind kind = Kind::Cyclic;
  std::vector<int> params;
  std::vector<GroupDescriptor> factors;  // Product only
  std::string label;                     // Derived only

  static GroupDescriptor derived(std::string label, int order) {
    GroupDescriptor d;
    d.kind = Kind::Derived;
    d.params = {order};
    d.label = std::move(label);
    return d;
  }

  static GroupDescriptor parse(std::string_view text);
  std::string to_string() const;
  // Order of the group this descriptor builds, without building it.
  long long order() const;

  bool operator==(const GroupDescriptor&) const = default;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A group given by its full Cayley table. Immutable; the constructor
// rejects tables that fail verify_group_axioms.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<ElementId> table, int order, GroupDescriptor descriptor,
              std::vector<std::string> names = {});

  int order() const { return order_; }
  ElementId mul(ElementId a, ElementId b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  ElementId inverse(ElementId a) const { return inverse_[static_cast<std::size_t>(a)]; }
  ElementId power(ElementId a, long long k) const;
  int element_order(ElementId a) const { return element_order_[static_cast<std::size_t>(a)]; }
  ElementId conjugate(ElementId g, ElementId a) const { return mul(mul(g, a), inverse(g)); }
  // a b a^-1 b^-1
  ElementId commutator(ElementId a, ElementId b) const { return mul(mul(a, b), mul(inverse(a), inverse(b))); }

  ElementSet all() const { return ElementSet::first_n(order_); }
  const GroupDescriptor& descriptor() const { return descriptor_; }
  std::string_view name(ElementId a) const { return names_[static_cast<std::size_t>(a)]; }
  std::span<const ElementId> table() const { return table_; }
  // Name -> id, or -1.
  ElementId find(std::string_view name) const;

  bool same_as(const FiniteGroup& other) const {
    return descriptor_ == other.descriptor_ && table_ == other.table_;
  }

 private:
  int order_;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverse_;
  std::vector<int> element_order_;
  GroupDescriptor descriptor_;
  std::vector<std::string> names_;
};

// Builds the group named by `descriptor`. Throws OrderCapExceeded when the
// order exceeds `order_cap` (never more than kMaxOrder) and BadParameter on
// malformed parameters.
GroupPtr build_group(const GroupDescriptor& descriptor, int order_cap = kMaxOrder);
GroupPtr build_group(std::string_view descriptor, int order_cap = kMaxOrder);

// Checks a row-major n*n table for closure, identity at 0, inverses and
// associativity. Failure witnesses are (a,b) for closure/inverse issues and
// the triple (a,b,c) for associativity.
ValidationReport verify_group_axioms(std::span<const ElementId> table, int order);

// Smallest subgroup containing `generators`.
ElementSet subgroup_generated(const FiniteGroup& g, ElementSet generators);
inline ElementSet cyclic_subgroup(const FiniteGroup& g, ElementId x) {
  return subgroup_generated(g, ElementSet::singleton(x));
}
// Closed under product. Finite, so inverses follow.
bool is_subgroup(const FiniteGroup& g, ElementSet set);

int element_order(const FiniteGroup& g, ElementId x);

struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<ElementId> map;

  ElementId operator()(ElementId x) const { return map[static_cast<std::size_t>(x)]; }
  ElementSet image(ElementSet set) const;
  ElementSet preimage(ElementSet set) const;
  ElementSet kernel() const { return preimage(ElementSet::singleton(0)); }
};

// Throws NotAHomomorphism with witness (x,y) when map(xy) != map(x)map(y),
// or BadParameter when the map is not total or out of range.
Homomorphism make_homomorphism(GroupPtr source, GroupPtr target, std::vector<ElementId> map);

Homomorphism identity_homomorphism(GroupPtr g);

namespace detail {
// Mixed-radix direct product table, first factor most significant.
std::vector<ElementId> product_table(std::span<const GroupPtr> factors, int& order);
// Product group with tuple names "(a,b)".
GroupPtr make_product_group(std::span<const GroupPtr> factors, GroupDescriptor descriptor);
}  // namespace detail

}  // namespace topo

#endif  // TOPOGRP_GROUP_HPP_
