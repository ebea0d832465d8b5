#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "topogrp/catalog.hpp"
#include "topogrp/filters.hpp"
#include "topogrp/oracles.hpp"
#include "topogrp/product.hpp"

using namespace topo;

namespace {

LatticePtr lat(const char* d) { return enumerate_subgroups(build_group(d)); }
TopoSystem sys(const LatticePtr& l, const char* d) { return build_toposys(l, TopoDescriptor::parse(d)); }
std::vector<int> ids(const IndexSet& s) { return s.to_vector(); }

std::vector<ElementSet> member_sets(const SubgroupLattice& l) {
  std::vector<ElementSet> out;
  for (int i = 0; i < l.size(); ++i) out.push_back(l.members(i));
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadParameter;
}

}  // namespace

TEST_CASE("generate_filter") {
  const auto s3 = lat("sym:3");
  CHECK(ids(generate_filter(s3, s3->empty_set()).members()) == std::vector<int>{5});
  CHECK(ids(generate_filter(s3, IndexSet(6, {4})).members()) == std::vector<int>{4, 5});
  try {
    generate_filter(s3, IndexSet(6, {2, 3}));
    FAIL("expected NoFip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFip);
    CHECK_FALSE(e.witness().empty());
  }
  // the generated filter is the least one containing the seed
  const auto v = lat("abelian:2x2");
  const auto f = generate_filter(v, IndexSet(5, {1}));
  CHECK(ids(f.members()) == std::vector<int>{1, 4});
}

TEST_CASE("filter axioms are enforced") {
  const auto s3 = lat("sym:3");
  CHECK(code_of([&] { SubgroupFilter(s3, IndexSet(6, {0, 5})); }) == ErrorCode::NotAFilter);
  CHECK(code_of([&] { SubgroupFilter(s3, IndexSet(6, {4})); }) == ErrorCode::NotAFilter);       // G missing
  CHECK(code_of([&] { SubgroupFilter(s3, IndexSet(6, {2, 3, 5})); }) == ErrorCode::NotAFilter);  // meet is 1
  CHECK_FALSE(check_filter_axioms(*s3, IndexSet(6, {1, 2, 5})).passed);
  CHECK(check_filter_axioms(*s3, IndexSet(6, {1, 5})).passed);
}

TEST_CASE("principal filters") {
  const auto c4 = lat("cyclic:4");
  CHECK(ids(principal_filter(c4, 2).members()) == std::vector<int>{1, 2});
  CHECK(ids(principal_filter(c4, 1).members()) == std::vector<int>{2});
  const auto s3 = lat("sym:3");
  CHECK(ids(principal_filter(s3, 3).members()) == std::vector<int>{4, 5});
  CHECK(ids(principal_filter(s3, 2).members()) == std::vector<int>{2, 5});
  const auto v = lat("abelian:2x2");
  CHECK(ids(principal_filter(v, 1).members()) == std::vector<int>{1, 4});
  CHECK(code_of([&] { principal_filter(v, 0); }) == ErrorCode::IdentityNotAllowed);
  CHECK(principal_filter(s3, 3).kernel() == 4);
}

TEST_CASE("ordinary filter bridge round-trips") {
  for (const auto& d : catalog_groups(12)) {
    CAPTURE(d);
    const auto l = enumerate_subgroups(build_group(d));
    if (l->size() > 16) continue;
    for (const IndexSet& m : oracle::all_filters(member_sets(*l))) {
      const SubgroupFilter f(l, m);
      const OrdinaryFilter f1 = ordinary_bridge(f);
      CHECK(restrict(f1, l) == f);
      for (int i = 0; i < l->size(); ++i) CHECK(f1.contains(l->members(i)) == f.contains(i));
    }
    for (ElementId x = 1; x < l->group().order(); ++x)
      CHECK(restrict(principal_ordinary_ultrafilter(l->group().order(), x), l) == principal_filter(l, x));
  }
}

TEST_CASE("is_ultrafilter examples") {
  const auto v = lat("abelian:2x2");
  const auto top = generate_filter(v, v->empty_set());
  const auto r = is_ultrafilter(top);
  CHECK_FALSE(r.ultra);
  REQUIRE(r.witness);
  CHECK(*r.witness == 4);  // V = {0,1} ∪ {0,2} ∪ {0,3}

  const auto s3 = lat("sym:3");
  CHECK(is_ultrafilter(principal_filter(s3, 2)).ultra);
  const auto c4 = lat("cyclic:4");
  CHECK(is_ultrafilter(generate_filter(c4, c4->empty_set())).ultra);  // {Z4} = F_1
}

TEST_CASE("extend_to_ultrafilter") {
  const auto s3 = lat("sym:3");
  const auto a3 = generate_filter(s3, IndexSet(6, {4}));
  CHECK(extend_to_ultrafilter(a3) == a3);
  const auto v = lat("abelian:2x2");
  const auto e = extend_to_ultrafilter(generate_filter(v, v->empty_set()));
  CHECK(ids(e.members()) == std::vector<int>{1, 4});
}

TEST_CASE("enumerate_ultrafilters") {
  CHECK(enumerate_ultrafilters(lat("cyclic:4")).size() == 2);
  CHECK(enumerate_ultrafilters(lat("abelian:2x2")).size() == 3);
  const auto s3 = lat("sym:3");
  const auto us = enumerate_ultrafilters(s3);
  REQUIRE(us.size() == 4);
  CHECK(us[0] == principal_filter(s3, 1));
  CHECK(us[1] == principal_filter(s3, 2));
  CHECK(us[2] == principal_filter(s3, 3));
  CHECK(us[3] == principal_filter(s3, 5));
  CHECK(enumerate_ultrafilters(lat("cyclic:6")).size() == 3);
  CHECK(code_of([] { enumerate_ultrafilters(lat("cyclic:1")); }) == ErrorCode::TrivialGroup);
}

TEST_CASE("ultrafilter machinery agrees with the family oracle on small lattices") {
  int lattices = 0;
  for (const auto& d : catalog_groups(24)) {
    const auto l = enumerate_subgroups(build_group(d));
    if (l->size() > 6 || l->size() < 2) continue;
    CAPTURE(d);
    ++lattices;
    const auto subs = member_sets(*l);
    std::vector<SubgroupFilter> ultra;
    for (const IndexSet& m : oracle::all_filters(subs)) {
      const SubgroupFilter f(l, m);
      const bool fast = is_ultrafilter(f).ultra;
      CHECK(fast == oracle::is_ultrafilter_by_families(subs, m));
      if (fast) ultra.push_back(f);
      const SubgroupFilter e = extend_to_ultrafilter(f);
      CHECK(is_ultrafilter(e).ultra);
      CHECK(m.is_subset_of(e.members()));
    }
    auto listed = enumerate_ultrafilters(l);
    CHECK(listed.size() == ultra.size());
    for (const auto& u : ultra) CHECK(std::ranges::find(listed, u) != listed.end());
  }
  CHECK(lattices >= 5);
}

TEST_CASE("pushforward") {
  const auto g = build_group("sym:3");
  const auto s3 = enumerate_subgroups(g);
  const auto c2g = build_group("cyclic:2");
  const auto c2 = enumerate_subgroups(c2g);
  const Homomorphism sign = make_homomorphism(g, c2g, {0, 1, 1, 0, 0, 1});
  CHECK(ids(pushforward(sign, principal_filter(s3, 2), c2).members()) == std::vector<int>{1});
  // ker = A3 is in F_(123): the literal family holds the trivial subgroup
  CHECK(ids(pushforward_family(sign, principal_filter(s3, 3), *c2)) == std::vector<int>{0, 1});
  CHECK(code_of([&] { pushforward(sign, principal_filter(s3, 3), c2); }) == ErrorCode::NotAFilter);

  const ProductGroup p = direct_product({build_group("cyclic:2"), build_group("cyclic:3")});
  const auto pl = enumerate_subgroups(p.group);
  const ElementId x = p.encode({1, 1});
  CHECK(x == 4);
  const auto f = principal_filter(pl, x);
  const auto z2 = enumerate_subgroups(p.factors[0]);
  const auto pushed = pushforward(p.projections[0], f, z2);
  CHECK(ids(pushed.members()) == std::vector<int>{1});
  CHECK(is_ultrafilter(pushed).ultra);
}

TEST_CASE("convergence") {
  const auto s3 = lat("sym:3");
  const TopoSystem normal = sys(s3, "normal");
  const auto f = principal_filter(s3, 3);  // {A3, S3}
  for (ElementId y = 1; y < 6; ++y) CHECK(converges_to(f, normal, y).converges);
  const auto id = converges_to(f, normal, 0);
  CHECK_FALSE(id.converges);
  REQUIRE(id.offending);
  CHECK(*id.offending == 0);
  const auto classes = convergence_set(f, normal);
  CHECK(classes == std::vector<std::vector<ElementId>>{{1}, {2}, {3, 4}, {5}});

  const TopoSystem discrete = sys(s3, "discrete");
  CHECK(convergence_set(f, discrete) == std::vector<std::vector<ElementId>>{{3, 4}});
  const auto miss = converges_to(principal_filter(s3, 2), discrete, 1);
  CHECK_FALSE(miss.converges);
  CHECK(*miss.offending == 1);

  const TopoSystem trivial = sys(s3, "trivial");
  CHECK(converges_to(principal_filter(s3, 2), trivial, 1).converges);
}

TEST_CASE("theorem_checks") {
  const auto s3 = lat("sym:3");
  const TopoSystem normal = sys(s3, "normal");
  const auto r = theorem_checks(normal);
  CHECK(r.compactness);
  CHECK_FALSE(r.hausdorff);
  CHECK(r.hausdorff_equivalence);
  CHECK(r.ultrafilters == 4);
  REQUIRE(r.two_points);
  CHECK(cyclically_distinct(*s3, r.two_points->first, r.two_points->second));
  CHECK(r.passed());

  const auto disc = theorem_checks(sys(s3, "discrete"));
  CHECK(disc.hausdorff);
  CHECK(disc.passed());

  // identity into a coarser system is a topomorphism
  const TopoSystem trivial = sys(s3, "trivial");
  const TopoSystem discrete = sys(s3, "discrete");
  const std::vector<TopoMap> maps = {{identity_homomorphism(s3->group_ptr()), &discrete, &trivial, "id"}};
  const auto m = theorem_checks(discrete, maps);
  CHECK(m.continuity);
  CHECK(m.continuity_checks > 0);
}

TEST_CASE("theorems hold on every catalog cell") {
  for (const auto& d : catalog_groups(24)) {
    const auto l = enumerate_subgroups(build_group(d));
    if (l->size() < 2) continue;
    for (const auto& td : catalog_systems(*l)) {
      CAPTURE(d);
      CAPTURE(td.to_string());
      const TopoSystem t = build_toposys(l, td);
      const auto r = theorem_checks(t);
      CHECK(r.compactness);
      CHECK(r.hausdorff_equivalence);
      CHECK(r.hausdorff == is_hausdorff(t).hausdorff);
    }
  }
}
