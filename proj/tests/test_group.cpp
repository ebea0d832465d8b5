#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "topogrp/catalog.hpp"
#include "topogrp/group.hpp"
#include "topogrp/oracles.hpp"

using namespace topo;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadParameter;
}

int count_order(const FiniteGroup& g, int k) {
  int c = 0;
  for (ElementId x = 0; x < g.order(); ++x) c += g.element_order(x) == k;
  return c;
}

}  // namespace

TEST_CASE("descriptor grammar round-trips") {
  for (const char* d : {"cyclic:4", "abelian:2x2x2", "dihedral:5", "sym:3", "alt:4", "quaternion:8",
                        "product(cyclic:2,sym:3)", "product(cyclic:2,cyclic:2,cyclic:3)"})
    CHECK(GroupDescriptor::parse(d).to_string() == d);
  CHECK(GroupDescriptor::parse("product(cyclic:2,sym:3)").order() == 12);
  CHECK(GroupDescriptor::parse("dihedral:6").order() == 12);
}

TEST_CASE("descriptor errors") {
  CHECK(code_of([] { GroupDescriptor::parse("foo:3"); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { build_group("sym:5"); }) == ErrorCode::OrderCapExceeded);  // 120 > 64
  CHECK(code_of([] { build_group("sym:0"); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { build_group("cyclic:65"); }) == ErrorCode::OrderCapExceeded);
  CHECK(code_of([] { build_group("cyclic:24", 12); }) == ErrorCode::OrderCapExceeded);
  CHECK(code_of([] { build_group("quaternion:16"); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { GroupDescriptor::parse("cyclic:"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { GroupDescriptor::parse("product(cyclic:2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { build_group("product(sym:4,sym:4)"); }) == ErrorCode::OrderCapExceeded);
}

TEST_CASE("build_group examples") {
  const auto c1 = build_group("cyclic:1");
  CHECK(c1->order() == 1);

  const auto c4 = build_group("cyclic:4");
  REQUIRE(c4->order() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(c4->mul(i, j) == (i + j) % 4);

  const auto s3 = build_group("sym:3");
  CHECK(s3->order() == 6);
  CHECK(count_order(*s3, 2) == 3);
  CHECK(count_order(*s3, 3) == 2);
  CHECK(s3->name(1) == "(23)");
  CHECK(s3->name(2) == "(12)");
  CHECK(s3->name(3) == "(123)");
  CHECK(s3->name(5) == "(13)");
  CHECK(s3->find("(13)") == 5);
  CHECK(s3->find("(1234)") == -1);

  const auto q8 = build_group("quaternion:8");
  CHECK(q8->name(2) == "i");
  CHECK(q8->mul(2, 4) == 6);  // ij = k
  CHECK(q8->mul(4, 2) == 7);  // ji = -k
  CHECK(q8->mul(2, 2) == 1);  // i^2 = -1
  CHECK(count_order(*q8, 4) == 6);

  const auto d4 = build_group("dihedral:4");
  CHECK(d4->order() == 8);
  CHECK(count_order(*d4, 2) == 5);
  // s r s^-1 = r^-1 with index f*n + k for s^f r^k
  CHECK(d4->conjugate(4, 1) == 3);

  const auto a4 = build_group("alt:4");
  CHECK(a4->order() == 12);
  CHECK(count_order(*a4, 2) == 3);
  CHECK(count_order(*a4, 3) == 8);

  CHECK(build_group("sym:4")->order() == 24);
  CHECK(count_order(*build_group("abelian:2x2x2"), 2) == 7);
}

TEST_CASE("product numbering is mixed radix, first factor most significant") {
  const auto p = build_group("product(cyclic:2,cyclic:3)");
  CHECK(p->name(4) == "(1,1)");
  CHECK(p->element_order(4) == 6);
  CHECK(p->mul(4, 4) == 2);  // (1,1)+(1,1) = (0,2)
}

TEST_CASE("verify_group_axioms") {
  const auto c4 = build_group("cyclic:4");
  CHECK(verify_group_axioms(c4->table(), 4).passed);
  CHECK(verify_group_axioms(build_group("sym:3")->table(), 6).passed);

  std::vector<ElementId> t(c4->table().begin(), c4->table().end());
  std::swap_ranges(t.begin(), t.begin() + 4, t.begin() + 4);  // swap rows 0 and 1
  const auto r = verify_group_axioms(t, 4);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.witness.empty());

  // Latin square that is not associative.
  const std::vector<ElementId> bad = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  const auto nr = verify_group_axioms(bad, 5);
  CHECK_FALSE(nr.passed);
  REQUIRE(nr.witness.size() == 3);
  const int a = nr.witness[0], b = nr.witness[1], c = nr.witness[2];
  CHECK(bad[static_cast<std::size_t>(bad[static_cast<std::size_t>(a * 5 + b)] * 5 + c)] !=
        bad[static_cast<std::size_t>(a * 5 + bad[static_cast<std::size_t>(b * 5 + c)])]);

  CHECK_FALSE(verify_group_axioms(std::vector<ElementId>{0, 1, 1, 2}, 2).passed);  // out of range
}

TEST_CASE("subgroup_generated and element_order") {
  const auto c4 = build_group("cyclic:4");
  CHECK(subgroup_generated(*c4, {}) == ElementSet::singleton(0));
  CHECK(subgroup_generated(*c4, ElementSet::singleton(2)).to_vector() == std::vector<int>{0, 2});
  const auto s3 = build_group("sym:3");
  CHECK(subgroup_generated(*s3, ElementSet::singleton(2) | ElementSet::singleton(5)) == s3->all());
  CHECK(element_order(*c4, 0) == 1);
  CHECK(element_order(*c4, 1) == 4);
  CHECK(element_order(*s3, 3) == 3);
  CHECK(is_subgroup(*s3, ElementSet::singleton(0) | ElementSet::singleton(3) | ElementSet::singleton(4)));
  CHECK_FALSE(is_subgroup(*s3, ElementSet::singleton(0) | ElementSet::singleton(3)));
}

TEST_CASE("homomorphisms") {
  const auto s3 = build_group("sym:3");
  const auto c2 = build_group("cyclic:2");
  CHECK_NOTHROW(identity_homomorphism(s3));
  // sign: transpositions 1,2,5 go to 1
  const Homomorphism sign = make_homomorphism(s3, c2, {0, 1, 1, 0, 0, 1});
  CHECK(sign.kernel().to_vector() == std::vector<int>{0, 3, 4});
  CHECK(sign.preimage(ElementSet::singleton(0)) == sign.kernel());
  CHECK(sign.image(s3->all()) == c2->all());

  try {
    make_homomorphism(s3, c2, {0, 0, 1, 1, 0, 0});  // (12) -> 1, (123) -> 1
    FAIL("expected NotAHomomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAHomomorphism);
    REQUIRE(e.witness().size() == 2);
    const int x = e.witness()[0], y = e.witness()[1];
    const std::vector<int> m = {0, 0, 1, 1, 0, 0};
    CHECK(m[static_cast<std::size_t>(s3->mul(x, y))] != (m[static_cast<std::size_t>(x)] + m[static_cast<std::size_t>(y)]) % 2);
  }
  CHECK(code_of([&] { make_homomorphism(s3, c2, {0, 1}); }) == ErrorCode::BadParameter);
  CHECK(code_of([&] { make_homomorphism(s3, c2, {0, 1, 1, 0, 0, 7}); }) == ErrorCode::BadParameter);
}

TEST_CASE("catalog groups satisfy the axioms, Lagrange and the preimage lemma") {
  for (const auto& d : catalog_groups(24)) {
    CAPTURE(d);
    const auto g = build_group(d);
    CHECK(verify_group_axioms(g->table(), g->order()).passed);
    CHECK(oracle::is_group_table(*g));
    for (ElementId x = 0; x < g->order(); ++x) {
      CHECK(g->order() % g->element_order(x) == 0);
      const ElementSet h = cyclic_subgroup(*g, x);
      CHECK(subgroup_generated(*g, h) == h);  // idempotent
    }
  }
  // preimage of every subgroup under sign is a subgroup
  const auto s3 = build_group("sym:3");
  const auto c2 = build_group("cyclic:2");
  const Homomorphism sign = make_homomorphism(s3, c2, {0, 1, 1, 0, 0, 1});
  for (ElementSet b : {ElementSet::singleton(0), c2->all()}) CHECK(is_subgroup(*s3, sign.preimage(b)));
}

TEST_CASE("catalog is ordered by order then descriptor") {
  const auto all = catalog_groups(24);
  CHECK(all.front() == "cyclic:1");
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto a = GroupDescriptor::parse(all[i - 1]).order(), b = GroupDescriptor::parse(all[i]).order();
    CHECK((a < b || (a == b && all[i - 1] < all[i])));
  }
  CHECK(catalog_groups(8).back() == "quaternion:8");
}
