#include "topogrp/product.hpp"

#include <functional>

namespace topo {

ElementId ProductGroup::encode(const std::vector<ElementId>& coords) const {
  ElementId x = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i]->order() + coords[i];
  return x;
}

std::vector<ElementId> ProductGroup::decode(ElementId x) const {
  std::vector<ElementId> coords(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    coords[i] = x % factors[i]->order();
    x /= factors[i]->order();
  }
  return coords;
}

ElementSet ProductGroup::box(const std::vector<ElementSet>& parts) const {
  ElementSet out;
  for (ElementId x = 0; x < group->order(); ++x) {
    const auto c = decode(x);
    bool inside = true;
    for (std::size_t i = 0; i < factors.size() && inside; ++i) inside = parts[i].contains(c[i]);
    if (inside) out.insert(x);
  }
  return out;
}

ProductGroup direct_product(std::vector<GroupPtr> factors, int order_cap) {
  if (factors.empty()) throw Error(ErrorCode::BadParameter, "a product needs at least one factor");
  long long order = 1;
  bool parseable = true;
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::Product;
  for (const auto& f : factors) {
    order *= f->order();
    parseable = parseable && f->descriptor().kind != GroupDescriptor::Kind::Derived;
    d.factors.push_back(f->descriptor());
  }
  if (order > std::min(order_cap, kMaxOrder))
    throw Error(ErrorCode::OrderCapExceeded, "product of order " + std::to_string(order));
  if (!parseable) d = GroupDescriptor::derived(d.to_string(), static_cast<int>(order));

  ProductGroup p;
  p.factors = std::move(factors);
  p.group = detail::make_product_group(p.factors, d);
  const int n = p.group->order();
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    std::vector<ElementId> proj(static_cast<std::size_t>(n));
    for (ElementId x = 0; x < n; ++x) proj[static_cast<std::size_t>(x)] = p.decode(x)[i];
    std::vector<ElementId> embed(static_cast<std::size_t>(p.factors[i]->order()));
    for (ElementId y = 0; y < p.factors[i]->order(); ++y) {
      std::vector<ElementId> coords(p.factors.size(), 0);
      coords[i] = y;
      embed[static_cast<std::size_t>(y)] = p.encode(coords);
    }
    p.projections.push_back(make_homomorphism(p.group, p.factors[i], std::move(proj)));
    p.embeddings.push_back(make_homomorphism(p.factors[i], p.group, std::move(embed)));
  }
  return p;
}

namespace {

// Calls f with every choice of one index per factor list.
void for_each_choice(const std::vector<std::vector<int>>& lists, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> choice(lists.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == lists.size()) {
      f(choice);
      return;
    }
    for (int v : lists[i]) {
      choice[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

[[noreturn]] void fail(const std::string& step, std::vector<int> witness) {
  throw Error(ErrorCode::CertificateFailure, step, std::move(witness));
}

}  // namespace

ProductToposys product_toposys(const ProductGroup& p, LatticePtr product_lattice, std::vector<TopoSystem> factors) {
  if (factors.size() != p.factors.size())
    throw Error(ErrorCode::BadParameter, "need one topo-system per factor");
  std::vector<std::vector<int>> topens;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!factors[i].group().same_as(*p.factors[i]))
      throw Error(ErrorCode::ParentMismatch, "factor system " + std::to_string(i) + " lives on another group");
    topens.push_back(factors[i].members().to_vector());
  }
  IndexSet members(product_lattice->size());
  for_each_choice(topens, [&](const std::vector<int>& choice) {
    std::vector<ElementSet> parts;
    for (std::size_t i = 0; i < choice.size(); ++i) parts.push_back(factors[i].lattice().members(choice[i]));
    members.insert(product_lattice->index_of(p.box(parts)));
  });
  std::string provenance = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) provenance += (i ? "," : "") + factors[i].provenance();
  TopoSystem system(std::move(product_lattice), std::move(members), provenance + ")");
  return {std::move(system), std::move(factors)};
}

IdentityReport product_identities_check(const ProductGroup& p, const SubgroupLattice& pl,
                                        const std::vector<LatticePtr>& factor_lattices) {
  IdentityReport report;
  std::vector<std::vector<int>> all;
  for (const auto& l : factor_lattices) {
    std::vector<int> v(static_cast<std::size_t>(l->size()));
    for (int i = 0; i < l->size(); ++i) v[static_cast<std::size_t>(i)] = i;
    all.push_back(std::move(v));
  }
  auto box_of = [&](const std::vector<int>& idx) {
    std::vector<ElementSet> parts;
    for (std::size_t i = 0; i < idx.size(); ++i) parts.push_back(factor_lattices[i]->members(idx[i]));
    return pl.index_of(p.box(parts));
  };
  for_each_choice(all, [&](const std::vector<int>& a) {
    const int box_a = box_of(a);
    for_each_choice(all, [&](const std::vector<int>& b) {
      if (!report.passed()) return;
      const int box_b = box_of(b);
      std::vector<int> meets, joins;
      for (std::size_t i = 0; i < a.size(); ++i) {
        meets.push_back(factor_lattices[i]->meet(a[i], b[i]));
        joins.push_back(factor_lattices[i]->join(a[i], b[i]));
      }
      ++report.meet_cases;
      if (pl.index_of(pl.members(box_a) & pl.members(box_b)) != box_of(meets)) {
        report.meet_identity = false;
        report.failure = "meet identity fails";
        report.witness = {box_a, box_b};
      }
      ++report.join_cases;
      if (pl.index_of(subgroup_generated(*p.group, pl.members(box_a) | pl.members(box_b))) != box_of(joins)) {
        report.join_identity = false;
        report.failure = "join identity fails";
        report.witness = {box_a, box_b};
      }
    });
  });
  return report;
}

std::optional<std::vector<ElementSet>> decompose(const ProductGroup& p, ElementSet a) {
  std::vector<ElementSet> parts;
  for (const auto& proj : p.projections) parts.push_back(proj.image(a));
  if (p.box(parts) != a) return std::nullopt;
  return parts;
}

TychonoffCertificate tychonoff_certificate(const ProductGroup& p, const ProductToposys& system,
                                           const SubgroupFilter& f) {
  const SubgroupLattice& pl = system.system.lattice();
  if (!is_ultrafilter(f).ultra) fail("input filter is not an ultrafilter", {});

  TychonoffCertificate cert;
  std::vector<ElementId> coords;
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    const TopoSystem& ti = system.factors[i];
    const SubgroupLattice& li = ti.lattice();
    FactorStep step;
    step.pushforward = pushforward_family(p.projections[i], f, li);
    step.degenerate = step.pushforward.contains(li.trivial());
    if (step.degenerate) {
      step.point = 0;
      if (!converges_to(step.pushforward, ti, 0).converges)
        fail("degenerate pushforward to factor " + std::to_string(i) + " misses a topen at the identity",
             {static_cast<int>(i)});
    } else {
      const SubgroupFilter pushed(system.factors[i].lattice_ptr(), step.pushforward);
      step.ultra = is_ultrafilter(pushed).ultra;
      if (!step.ultra) fail("pushforward to factor " + std::to_string(i) + " is not an ultrafilter", {static_cast<int>(i)});
      const auto classes = convergence_set(pushed, ti);
      if (classes.empty()) fail("pushforward to factor " + std::to_string(i) + " converges nowhere", {static_cast<int>(i)});
      ElementId least = classes[0][0];
      for (const auto& c : classes) least = std::min(least, c[0]);
      step.point = least;
    }
    coords.push_back(step.point);
    cert.factors.push_back(std::move(step));
  }
  cert.point = p.encode(coords);

  system.system.topens_containing(cert.point).for_each([&](int a) {
    TopenStep step{a, {}, {}};
    const auto parts = decompose(p, pl.members(a));
    if (!parts) fail("product topen #" + std::to_string(a) + " is not a box", {a});
    ElementSet meet_of_preimages = p.group->all();
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
      const SubgroupLattice& li = system.factors[i].lattice();
      const int ai = li.index_of((*parts)[i]);
      if (!system.factors[i].contains(ai)) fail("component " + std::to_string(i) + " of #" + std::to_string(a) + " is not topen", {a, ai});
      const ElementSet pre = p.projections[i].preimage((*parts)[i]);
      const int pre_index = pl.index_of(pre);
      if (!f.contains(pre_index)) fail("preimage of component " + std::to_string(i) + " of #" + std::to_string(a) + " is not in F", {a, pre_index});
      meet_of_preimages &= pre;
      step.components.push_back(ai);
      step.preimages.push_back(pre_index);
    }
    if (meet_of_preimages != pl.members(a)) fail("#" + std::to_string(a) + " differs from the meet of its preimages", {a});
    if (!f.contains(a)) fail("#" + std::to_string(a) + " is not in F", {a});
    cert.topens.push_back(std::move(step));
  });
  return cert;
}

}  // namespace topo
