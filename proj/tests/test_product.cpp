#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "topogrp/catalog.hpp"
#include "topogrp/product.hpp"

using namespace topo;

namespace {

struct Setup {
  ProductGroup p;
  LatticePtr lattice;
  std::vector<LatticePtr> factor_lattices;
};

Setup setup(std::initializer_list<const char*> factors) {
  std::vector<GroupPtr> gs;
  for (const char* f : factors) gs.push_back(build_group(f));
  Setup s{direct_product(gs), nullptr, {}};
  s.lattice = enumerate_subgroups(s.p.group);
  for (const auto& g : s.p.factors) s.factor_lattices.push_back(enumerate_subgroups(g));
  return s;
}

ProductToposys systems(const Setup& s, std::initializer_list<const char*> descriptors) {
  std::vector<TopoSystem> ts;
  std::size_t i = 0;
  for (const char* d : descriptors) ts.push_back(build_toposys(s.factor_lattices[i++], TopoDescriptor::parse(d)));
  return product_toposys(s.p, s.lattice, std::move(ts));
}

}  // namespace

TEST_CASE("direct product encoding") {
  const Setup s = setup({"cyclic:2", "cyclic:3"});
  CHECK(s.p.group->order() == 6);
  CHECK(s.p.encode({1, 1}) == 4);
  CHECK(s.p.decode(4) == std::vector<ElementId>{1, 1});
  CHECK(s.p.group->element_order(4) == 6);
  CHECK(s.p.projections[0](4) == 1);
  CHECK(s.p.projections[1](4) == 1);
  CHECK(s.p.embeddings[1](2) == 2);
  // same numbering as the product(...) descriptor
  const auto g = build_group("product(cyclic:2,cyclic:3)");
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(g->mul(a, b) == s.p.group->mul(a, b));
  CHECK_THROWS_AS(direct_product({build_group("sym:4"), build_group("sym:3")}), Error);
}

TEST_CASE("decompose") {
  const Setup s = setup({"cyclic:2", "cyclic:2"});
  ElementSet diag;
  diag.insert(0);
  diag.insert(3);
  CHECK_FALSE(decompose(s.p, diag).has_value());
  const auto whole = decompose(s.p, s.p.group->all());
  REQUIRE(whole);
  CHECK(whole->size() == 2);
  ElementSet first;
  first.insert(0);
  first.insert(2);  // (1,0)
  const auto box = decompose(s.p, first);
  REQUIRE(box);
  CHECK((*box)[0].size() == 2);
  CHECK((*box)[1].size() == 1);
  CHECK(s.p.box(*box) == first);
}

TEST_CASE("product topo-systems") {
  const Setup v = setup({"cyclic:2", "cyclic:2"});
  CHECK(systems(v, {"trivial", "trivial"}).system.members().size() == 4);
  const auto dd = systems(v, {"discrete", "discrete"});
  CHECK(v.lattice->size() == 5);
  CHECK(dd.system.members().size() == 4);  // the diagonal is not a box
  CHECK(verify_toposys(*v.lattice, dd.system.members()).passed);

  const Setup c6 = setup({"cyclic:2", "cyclic:3"});
  const auto all = systems(c6, {"discrete", "discrete"});
  CHECK(all.system.members().size() == c6.lattice->size());
}

TEST_CASE("product identities") {
  for (const auto& pair : {std::vector<const char*>{"cyclic:4", "cyclic:6"}, {"cyclic:2", "cyclic:2"},
                           {"sym:3", "cyclic:2"}, {"cyclic:2", "cyclic:2", "cyclic:3"}}) {
    std::vector<GroupPtr> gs;
    for (const char* f : pair) gs.push_back(build_group(f));
    const ProductGroup p = direct_product(gs);
    const auto pl = enumerate_subgroups(p.group);
    std::vector<LatticePtr> fls;
    for (const auto& g : p.factors) fls.push_back(enumerate_subgroups(g));
    const auto r = product_identities_check(p, *pl, fls);
    CAPTURE(p.group->descriptor().to_string());
    CHECK(r.passed());
    CHECK(r.meet_cases > 0);
    CHECK(r.join_cases > 0);
  }
}

TEST_CASE("tychonoff certificate on the Klein diagonal") {
  const Setup v = setup({"cyclic:2", "cyclic:2"});
  const auto dd = systems(v, {"discrete", "discrete"});
  const auto f = principal_filter(v.lattice, 3);  // F_(1,1) = {diagonal, G}
  REQUIRE(f.members().size() == 2);
  const auto c = tychonoff_certificate(v.p, dd, f);
  CHECK(c.point == 3);
  REQUIRE(c.factors.size() == 2);
  for (const auto& step : c.factors) {
    CHECK_FALSE(step.degenerate);
    CHECK(step.ultra);
    CHECK(step.point == 1);
  }
  REQUIRE(c.topens.size() == 1);  // only G is a box around (1,1)
  CHECK(c.topens[0].topen == v.lattice->top());
  for (int pre : c.topens[0].preimages) CHECK(f.contains(pre));
}

TEST_CASE("tychonoff certificate with a degenerate factor") {
  const Setup s = setup({"cyclic:2", "cyclic:3"});
  const auto t = systems(s, {"discrete", "discrete"});
  const auto f = principal_filter(s.lattice, s.p.encode({0, 1}));  // ker of the first projection is in F
  const auto c = tychonoff_certificate(s.p, t, f);
  CHECK(c.factors[0].degenerate);
  CHECK(c.factors[0].point == 0);
  CHECK_FALSE(c.factors[1].degenerate);
  CHECK(c.point == s.p.encode({0, c.factors[1].point}));
  for (const auto& step : c.topens) CHECK(f.contains(step.topen));
}

TEST_CASE("tychonoff certificates on the catalog products") {
  for (const auto& names : catalog_products()) {
    std::vector<GroupPtr> gs;
    for (const auto& n : names) gs.push_back(build_group(n));
    const ProductGroup p = direct_product(gs);
    if (p.group->order() > 36) continue;
    const auto pl = enumerate_subgroups(p.group);
    std::vector<LatticePtr> fls;
    for (const auto& g : p.factors) fls.push_back(enumerate_subgroups(g));
    for (const char* d : {"discrete", "trivial", "normal"}) {
      std::vector<TopoSystem> ts;
      for (const auto& fl : fls) ts.push_back(build_toposys(fl, TopoDescriptor::parse(d)));
      const auto pt = product_toposys(p, pl, ts);
      CAPTURE(p.group->descriptor().to_string());
      CAPTURE(d);
      for (const auto& u : enumerate_ultrafilters(pl)) {
        const auto c = tychonoff_certificate(p, pt, u);
        CHECK(converges_to(u, pt.system, c.point).converges);
      }
    }
  }
}
