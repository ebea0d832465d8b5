#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "topogrp/catalog.hpp"
#include "topogrp/oracles.hpp"
#include "topogrp/toposys.hpp"

using namespace topo;

namespace {

LatticePtr lat(const char* d) { return enumerate_subgroups(build_group(d)); }
TopoSystem sys(const LatticePtr& l, const char* d) { return build_toposys(l, TopoDescriptor::parse(d)); }

ElementSet set_of(std::initializer_list<int> xs) {
  ElementSet s;
  for (int x : xs) s.insert(x);
  return s;
}

std::vector<int> ids(const IndexSet& s) { return s.to_vector(); }

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

TEST_CASE("descriptor parsing") {
  for (const char* d : {"discrete", "trivial", "normal", "characteristic", "cofinite", "principal:#2",
                        "principal:gen{1,2}", "variety:abelian", "variety:exponent-2", "thk:#0:#5", "conj:gen{3}",
                        "generated:#1,#2"})
    CHECK(TopoDescriptor::parse(d).to_string() == d);
  CHECK(TopoDescriptor::parse("variety:exponent:4").to_string() == "variety:exponent-4");
  CHECK(TopoDescriptor::parse("generated:").indices.empty());
  CHECK(code_of([] { TopoDescriptor::parse("bogus"); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { TopoDescriptor::parse("principal"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { TopoDescriptor::parse("principal:3"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { TopoDescriptor::parse("thk:#0"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { TopoDescriptor::parse("variety:exponent-5"); }) == ErrorCode::UnsupportedVariety);

  const auto s3 = lat("sym:3");
  CHECK(SubgroupRef::parse("gen{2,5}").resolve(*s3) == 5);
  CHECK(SubgroupRef::parse("gen{}").resolve(*s3) == 0);
  CHECK(code_of([&] { SubgroupRef::parse("#9").resolve(*s3); }) == ErrorCode::BadParameter);
  CHECK(code_of([&] { SubgroupRef::parse("gen{7}").resolve(*s3); }) == ErrorCode::BadParameter);
}

TEST_CASE("constructor families") {
  const auto s3 = lat("sym:3");
  CHECK(ids(sys(s3, "normal").members()) == std::vector<int>{0, 4, 5});
  CHECK(ids(sys(s3, "conj:#4").members()) == std::vector<int>{0, 4, 5});
  CHECK(ids(sys(s3, "variety:abelian").members()) == std::vector<int>{0, 4, 5});
  CHECK(ids(sys(s3, "trivial").members()) == std::vector<int>{0, 5});
  CHECK(sys(s3, "discrete").members().size() == 6);
  CHECK(ids(sys(s3, "principal:#2").members()) == std::vector<int>{0, 2, 5});
  CHECK(ids(sys(s3, "conj:#0").members()) == ids(sys(s3, "discrete").members()));
  CHECK(ids(sys(s3, "characteristic").members()) == std::vector<int>{0, 4, 5});

  const auto v = lat("abelian:2x2");
  CHECK(ids(sys(v, "characteristic").members()) == std::vector<int>{0, 4});

  const auto q8 = lat("quaternion:8");
  CHECK(ids(sys(q8, "thk:#0:#5").members()) == std::vector<int>{0, 1, 5});

  const auto cof = sys(s3, "cofinite");
  CHECK(cof.members() == sys(s3, "discrete").members());
  CHECK_FALSE(cof.notes().empty());

  CHECK(code_of([&] { sys(s3, "thk:#4:#2"); }) == ErrorCode::BadParameter);  // H not inside K
  CHECK(code_of([&] { sys(s3, "principal:#6"); }) == ErrorCode::BadParameter);
}

TEST_CASE("variety system is principal-at-residual meet normal") {
  for (const auto& d : catalog_groups(24)) {
    CAPTURE(d);
    const auto l = enumerate_subgroups(build_group(d));
    const TopoSystem normal = build_toposys(l, TopoDescriptor::parse("normal"));
    for (const char* v : {"abelian", "exponent-2", "exponent-3", "exponent-4", "exponent-6"}) {
      const int residual = verbal_residual(*l, Variety::parse(v));
      TopoDescriptor pd;
      pd.kind = TopoDescriptor::Kind::Principal;
      pd.subgroups = {SubgroupRef::of_index(residual)};
      const TopoSystem principal = build_toposys(l, pd);
      const TopoSystem variety = build_toposys(l, TopoDescriptor::parse(std::string("variety:") + v));
      CHECK(variety.members() == (principal.members() & normal.members()));
    }
  }
}

TEST_CASE("verify_toposys") {
  const auto s3 = lat("sym:3");
  CHECK(verify_toposys(*s3, IndexSet(6, {0, 5})).passed);
  CHECK(verify_toposys(*s3, IndexSet::full(6)).passed);
  const auto r = verify_toposys(*s3, IndexSet(6, {0, 2, 3}));
  CHECK_FALSE(r.passed);
  CHECK(r.witness == std::vector<int>{2, 3, 5});
  CHECK(verify_toposys(*s3, IndexSet(6, {5})).witness == std::vector<int>{0});  // 1 missing
  CHECK(verify_toposys(*s3, IndexSet(6, {0})).witness == std::vector<int>{5});  // G missing
  // meet failure: <(12)> and A3 join to S3, fine; two order-2 subgroups of V4 meet in 1.
  const auto d4 = lat("dihedral:4");
  CHECK(code_of([&] { TopoSystem(s3, IndexSet(6, {0, 2, 3}), "bad"); }) == ErrorCode::BadParameter);
}

TEST_CASE("verify_toposys agrees with the subfamily oracle") {
  for (const char* d : {"cyclic:4", "abelian:2x2", "sym:3", "quaternion:8", "cyclic:8", "dihedral:4", "alt:4"}) {
    CAPTURE(d);
    const auto g = build_group(d);
    const auto l = enumerate_subgroups(g);
    std::vector<ElementSet> subs;
    for (int i = 0; i < l->size(); ++i) subs.push_back(l->members(i));
    const int free = l->size() - 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
      IndexSet s(l->size());
      s.insert(0);
      s.insert(l->top());
      for (int i = 1; i <= free; ++i)
        if ((mask >> (i - 1)) & 1U) s.insert(i);
      CHECK(verify_toposys(*l, s).passed == oracle::is_toposystem(*g, subs, s));
    }
  }
}

TEST_CASE("generate_toposys") {
  const auto s3 = lat("sym:3");
  CHECK(ids(generate_toposys(s3, s3->empty_set()).members()) == std::vector<int>{0, 5});
  CHECK(generate_toposys(s3, IndexSet::full(6)).members() == IndexSet::full(6));
  CHECK(ids(generate_toposys(s3, IndexSet(6, {2, 3})).members()) == std::vector<int>{0, 2, 3, 5});
  // meets are added too: in D4 two Klein subgroups meet in the center
  const auto d4 = lat("dihedral:4");
  int klein_a = -1, klein_b = -1;
  for (int i = 0; i < d4->size(); ++i)
    if (d4->order(i) == 4 && d4->cyclic(1) != i) (klein_a < 0 ? klein_a : klein_b) = i;
  const auto t = generate_toposys(d4, IndexSet(d4->size(), {klein_a, klein_b}));
  CHECK(t.contains(d4->meet(klein_a, klein_b)));
}

TEST_CASE("induced systems") {
  const auto s3 = lat("sym:3");
  const TopoSystem normal = sys(s3, "normal");
  CHECK(induced_toposys(normal, 5).system.members() == normal.members());
  const auto ind = induced_toposys(normal, 2);
  CHECK(ind.system.group().order() == 2);
  CHECK(ind.system.members().size() == 2);  // discrete on <(12)>

  const auto q8 = lat("quaternion:8");
  const auto iq = induced_toposys(sys(q8, "thk:#0:#5"), 2);
  CHECK(ind.inclusion.image(ind.system.group().all()) == s3->members(2));
  CHECK(ids(iq.system.members()) == std::vector<int>{0, 1, 2});
  CHECK(is_topomorphism(iq.inclusion, iq.system, sys(q8, "thk:#0:#5")).continuous);
}

TEST_CASE("quotient systems") {
  const auto s3 = lat("sym:3");
  const auto top = quotient_toposys(sys(s3, "discrete"), 5);
  REQUIRE(top.system);
  CHECK(top.quotient.group->order() == 1);
  CHECK(top.system->members().size() == 1);

  const auto disc = quotient_toposys(sys(s3, "discrete"), 4);
  REQUIRE(disc.system);
  CHECK(disc.system->members().size() == 2);
  const auto norm = quotient_toposys(sys(s3, "normal"), 4);
  REQUIRE(norm.system);
  CHECK(ids(norm.system->members()) == std::vector<int>{0, 1});
  CHECK(code_of([&] { quotient_toposys(sys(s3, "normal"), 2); }) == ErrorCode::NotNormal);

  // Natural map is not always continuous: with T = {1, G}, q^-1(1) = N is not topen.
  const auto triv = quotient_toposys(sys(s3, "trivial"), 4);
  REQUIRE(triv.system);
  const auto cont = is_topomorphism(triv.quotient.projection, sys(s3, "trivial"), *triv.system);
  CHECK_FALSE(cont.continuous);
  CHECK(cont.offending == 0);
}

TEST_CASE("quotient candidate can fail meet closure") {
  // Z2^4 with e1=8, e2=4, e3=2, e4=1. T generated by A=<e1,e2>, B=<e2+e4,e3>;
  // mod N=<e4> the images meet in <e2>N/N, which is no image of a topen.
  const auto g = build_group("abelian:2x2x2x2");
  const auto l = enumerate_subgroups(g);
  const int a = l->index_of(set_of({0, 4, 8, 12}));
  const int b = l->index_of(set_of({0, 2, 5, 7}));
  const int n = l->index_of(set_of({0, 1}));
  const TopoSystem t = generate_toposys(l, IndexSet(l->size(), {a, b}));
  CHECK(b < a);  // {0,2,5,7} sorts first
  CHECK(ids(t.members()) == std::vector<int>{0, b, a, l->top()});
  const auto q = quotient_toposys(t, n);
  CHECK_FALSE(q.report.passed);
  CHECK_FALSE(q.system.has_value());
  REQUIRE(q.report.witness.size() == 3);
  // the missing meet has order 2 in the quotient
  CHECK(q.lattice->order(q.report.witness[2]) == 2);
}

TEST_CASE("interior and boundary") {
  const auto s3 = lat("sym:3");
  const TopoSystem normal = sys(s3, "normal");
  const auto ib = interior_boundary(normal, 2);
  CHECK(ib.interior == 0);
  CHECK(ib.interior == core(*s3, 2));
  CHECK(ib.boundary == ElementSet::singleton(2));
  CHECK(interior_boundary(normal, 4).interior == 4);
  const TopoSystem discrete = sys(s3, "discrete");
  for (int x = 0; x < 6; ++x) {
    CHECK(interior_boundary(discrete, x).interior == x);
    CHECK(interior_boundary(discrete, x).boundary.empty());
    CHECK(interior_elements(normal, x) == s3->members(interior_boundary(normal, x).interior));
  }
}

TEST_CASE("interior equals core for the normal system on the catalog") {
  for (const auto& d : catalog_groups(24)) {
    CAPTURE(d);
    const auto l = enumerate_subgroups(build_group(d));
    const TopoSystem t = build_toposys(l, TopoDescriptor::parse("normal"));
    for (int x = 0; x < l->size(); ++x) CHECK(interior_boundary(t, x).interior == core(*l, x));
  }
}

TEST_CASE("limit points and closure") {
  const auto s3 = lat("sym:3");
  const auto d = closure_and_limits(sys(s3, "discrete"), 0);
  CHECK(d.limit_points.empty());
  CHECK(d.closure == 0);
  const TopoSystem normal = sys(s3, "normal");
  const auto a3 = closure_and_limits(normal, 4);
  CHECK(set_of({1, 2, 5}).is_subset_of(a3.limit_points));
  CHECK(a3.closure == 5);
  const auto one = closure_and_limits(normal, 0);
  CHECK(one.limit_points.empty());
  CHECK(one.closure == 0);
}

TEST_CASE("a closure that is not T-closed") {
  // Z2^3, principal at B = {0,1}, X = {0,2}: limits {2,3}, closure {0,1,2,3};
  // every non-trivial topen contains B, so 4 cannot be separated.
  const auto l = lat("abelian:2x2x2");
  const TopoSystem t = sys(l, "principal:#1");
  REQUIRE(l->members(1) == set_of({0, 1}));
  const int x = l->index_of(set_of({0, 2}));
  const auto cl = closure_and_limits(t, x);
  CHECK(cl.limit_points == set_of({2, 3}));
  CHECK(l->members(cl.closure) == set_of({0, 1, 2, 3}));
  const auto cc = t_closed_checks(t, cl.closure);
  CHECK_FALSE(cc.t_closed);
  CHECK(cc.t_closed_witness == 4);
}

TEST_CASE("T-closed and weak T-closed") {
  const auto s3 = lat("sym:3");
  const auto g = t_closed_checks(sys(s3, "normal"), 5);
  CHECK(g.t_closed);
  CHECK(g.weak_t_closed);
  const auto c8 = lat("cyclic:8");
  const auto two = t_closed_checks(sys(c8, "discrete"), c8->cyclic(2));
  CHECK_FALSE(two.t_closed);
  CHECK(two.t_closed_witness == 1);
  const auto a3 = t_closed_checks(sys(s3, "discrete"), 4);
  CHECK(a3.weak_t_closed);
  CHECK(a3.t_closed);
  // normal system: <(12)> is not weak T-closed ((23) only lies in S3)
  const auto w = t_closed_checks(sys(s3, "normal"), 2);
  CHECK_FALSE(w.weak_t_closed);
  CHECK(w.weak_witness == 1);
}

TEST_CASE("Hausdorff") {
  for (const char* d : {"sym:3", "cyclic:4", "quaternion:8", "dihedral:4"})
    CHECK(is_hausdorff(sys(lat(d), "discrete")).hausdorff);
  const auto s3 = lat("sym:3");
  const auto h = is_hausdorff(sys(s3, "normal"));
  CHECK_FALSE(h.hausdorff);
  REQUIRE(h.witness);
  CHECK(h.witness->x == 1);  // (23)
  CHECK(h.witness->y == 2);  // (12)
  CHECK(h.witness->a == 5);
  CHECK(h.witness->b == 5);
  CHECK(cyclically_distinct(*s3, h.witness->x, h.witness->y));
  CHECK(is_hausdorff(sys(lat("cyclic:4"), "trivial")).hausdorff);
  CHECK_FALSE(cyclically_distinct(*lat("cyclic:4"), 1, 2));

  const auto sep = separate(sys(s3, "discrete"), 2, 5);
  CHECK(sep.separated);
  CHECK(sep.a == 2);
  CHECK(sep.b == 3);
}

TEST_CASE("finite subcovers") {
  const auto s3 = lat("sym:3");
  const TopoSystem d = sys(s3, "discrete");
  std::vector<int> g = {5};
  CHECK(find_finite_subcover(d, 5, g)->subcover == std::vector<int>{5});
  std::vector<int> cyclic = {0, 1, 2, 3, 4};
  const auto four = find_finite_subcover(d, 5, cyclic);
  REQUIRE(four);
  CHECK(four->subcover == std::vector<int>{1, 2, 3, 4});
  CHECK(four->exact);
  CHECK(four->compact);
  std::vector<int> a3 = {4};
  CHECK_FALSE(find_finite_subcover(d, 5, a3).has_value());
  std::vector<int> not_topen = {2};
  CHECK(code_of([&] { find_finite_subcover(sys(s3, "normal"), 5, not_topen); }) == ErrorCode::BadParameter);
}

TEST_CASE("topomorphisms") {
  const auto g = build_group("sym:3");
  const auto s3 = enumerate_subgroups(g);
  const TopoSystem normal = build_toposys(s3, TopoDescriptor::parse("normal"));
  const TopoSystem discrete = build_toposys(s3, TopoDescriptor::parse("discrete"));
  CHECK(is_topomorphism(identity_homomorphism(g), normal, normal).continuous);
  const auto q = quotient_group(*s3, 4);
  const auto z2 = enumerate_subgroups(q.group);
  CHECK(is_topomorphism(q.projection, normal, build_toposys(z2, TopoDescriptor::parse("discrete"))).continuous);
  const auto r = is_topomorphism(identity_homomorphism(g), normal, discrete);
  CHECK_FALSE(r.continuous);
  CHECK(r.offending == 1);  // <(23)>, the least offending index
}

TEST_CASE("star topology") {
  const auto s3 = lat("sym:3");
  const TopoSystem normal = sys(s3, "normal");
  CHECK(is_star_open(normal, s3->members(4)));
  CHECK_FALSE(is_star_open(normal, set_of({0, 2, 3, 4})));
  CHECK(is_star_open(normal, ElementSet{}));
  for (const auto& d : catalog_groups(12)) {
    CAPTURE(d);
    const auto l = enumerate_subgroups(build_group(d));
    for (const auto& td : catalog_systems(*l)) {
      CAPTURE(td.to_string());
      const auto rep = star_topology_checks(build_toposys(l, td));
      CHECK(rep.passed());
    }
  }
}

TEST_CASE("catalog systems all verify") {
  for (const auto& d : catalog_groups(24)) {
    CAPTURE(d);
    const auto l = enumerate_subgroups(build_group(d));
    const auto systems = catalog_systems(*l);
    CHECK(systems.size() >= 9);
    for (const auto& td : systems) {
      CAPTURE(td.to_string());
      const TopoSystem t = build_toposys(l, td);
      CHECK(verify_toposys(*l, t.members()).passed);
      for (ElementId x = 0; x < l->group().order(); ++x) CHECK(t.contains(t.neighbourhood(x)));
    }
  }
}
