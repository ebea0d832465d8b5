#ifndef TOPOGRP_PRODUCT_HPP_
#define TOPOGRP_PRODUCT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "topogrp/filters.hpp"

namespace topo {

// Direct product on tuples. Elements use a mixed-radix encoding with
// factor 0 most significant, the same numbering build_group uses for
// product(...) descriptors.
struct ProductGroup {
  std::vector<GroupPtr> factors;
  GroupPtr group;
  std::vector<Homomorphism> projections;
  std::vector<Homomorphism> embeddings;

  ElementId encode(const std::vector<ElementId>& coords) const;
  std::vector<ElementId> decode(ElementId x) const;
  // ∏ A_i as an element set of the product.
  ElementSet box(const std::vector<ElementSet>& parts) const;
};

// Throws OrderCapExceeded.
ProductGroup direct_product(std::vector<GroupPtr> factors, int order_cap = kMaxOrder);

struct ProductToposys {
  TopoSystem system;
  std::vector<TopoSystem> factors;
};

// {∏ A_i : A_i topen in factor i}. With finitely many factors the
// "almost all A_i = G_i" restriction of the infinite construction is empty.
ProductToposys product_toposys(const ProductGroup& p, LatticePtr product_lattice, std::vector<TopoSystem> factors);

struct IdentityReport {
  bool meet_identity = true;
  bool join_identity = true;
  int meet_cases = 0;
  int join_cases = 0;
  std::string failure;
  std::vector<int> witness;

  bool passed() const { return meet_identity && join_identity; }
};

// Checks, with each side computed independently in the product lattice,
//   (∏A_i) ∩ (∏B_i) = ∏(A_i ∩ B_i)   for all pairs of boxes, and
//   <∏A_i, ∏B_i>   = ∏<A_i, B_i>     for all pairs of boxes.
IdentityReport product_identities_check(const ProductGroup& p, const SubgroupLattice& product_lattice,
                                        const std::vector<LatticePtr>& factor_lattices);

// A = ∏ π_i(A) when A has product form, else nullopt.
std::optional<std::vector<ElementSet>> decompose(const ProductGroup& p, ElementSet a);

struct FactorStep {
  IndexSet pushforward;     // (π_i)_*(F), literal
  bool degenerate = false;  // ker π_i ∈ F: the pushforward is all of Sub(G_i)
  bool ultra = false;       // pushforward verified as an ultrafilter (non-degenerate case)
  ElementId point = 0;      // x_i
};

struct TopenStep {
  int topen;                    // product lattice index of A ∋ x
  std::vector<int> components;  // factor lattice indices of A_i = π_i(A)
  std::vector<int> preimages;   // product lattice indices of π_i^-1(A_i), each in F
};

struct TychonoffCertificate {
  std::vector<FactorStep> factors;
  ElementId point = 0;  // x = (x_i)
  std::vector<TopenStep> topens;
};

// Replays the product compactness argument for the ultrafilter F:
// push F to each factor, pick the least convergence point x_i, set
// x = (x_i), and for every product topen A ∋ x check A = ∏A_i, A_i topen,
// π_i^-1(A_i) ∈ F and A = ∩ π_i^-1(A_i), concluding A ∈ F.
// When ker π_i ∈ F the literal pushforward also holds the trivial subgroup
// and is no ultrafilter; it still converges to the identity of G_i (every
// preimage contains ker π_i), which is the point used then.
// Throws CertificateFailure naming the step that broke.
TychonoffCertificate tychonoff_certificate(const ProductGroup& p, const ProductToposys& system,
                                           const SubgroupFilter& f);

}  // namespace topo

#endif  // TOPOGRP_PRODUCT_HPP_
