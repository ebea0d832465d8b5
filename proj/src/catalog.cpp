#include "topogrp/catalog.hpp"

#include <algorithm>

namespace topo {

std::vector<std::string> catalog_groups(int max_order) {
  static const std::vector<std::string> kAll = {
      "cyclic:1",  "cyclic:2",  "cyclic:3",  "cyclic:4",  "abelian:2x2", "cyclic:5",  "cyclic:6",
      "dihedral:3", "sym:3",    "cyclic:7",  "cyclic:8",  "abelian:2x4", "abelian:2x2x2", "dihedral:4",
      "quaternion:8", "cyclic:9", "abelian:3x3", "cyclic:10", "dihedral:5", "cyclic:12", "abelian:2x6",
      "dihedral:6", "alt:4",    "product(cyclic:2,sym:3)", "cyclic:16", "abelian:4x4", "abelian:2x8",
      "abelian:2x2x4", "abelian:2x2x2x2", "dihedral:8", "product(quaternion:8,cyclic:2)",
      "product(dihedral:4,cyclic:2)", "dihedral:9", "product(cyclic:3,sym:3)", "sym:4", "dihedral:12",
      "product(cyclic:2,alt:4)", "product(quaternion:8,cyclic:3)",
  };
  std::vector<std::pair<long long, std::string>> keyed;
  for (const auto& d : kAll) {
    const long long n = GroupDescriptor::parse(d).order();
    if (n <= max_order) keyed.emplace_back(n, d);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [n, d] : keyed) out.push_back(std::move(d));
  return out;
}

std::vector<std::vector<std::string>> catalog_products() {
  static const std::vector<std::string> kFactors = {"cyclic:2", "cyclic:3", "abelian:2x2", "cyclic:4",
                                                    "cyclic:5", "cyclic:6", "sym:3"};
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < kFactors.size(); ++i)
    for (std::size_t j = i; j < kFactors.size(); ++j) out.push_back({kFactors[i], kFactors[j]});
  out.push_back({"cyclic:2", "cyclic:2", "cyclic:2"});
  out.push_back({"cyclic:2", "cyclic:2", "cyclic:3"});
  return out;
}

int center(const SubgroupLattice& l) {
  const FiniteGroup& g = l.group();
  ElementSet z;
  for (ElementId x = 0; x < g.order(); ++x) {
    bool central = true;
    for (ElementId y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.insert(x);
  }
  return l.index_of(z);
}

std::vector<TopoDescriptor> catalog_systems(const SubgroupLattice& l) {
  using K = TopoDescriptor::Kind;
  const int point = l.group().order() > 1 ? l.cyclic(1) : l.trivial();
  auto simple = [](K k) {
    TopoDescriptor d;
    d.kind = k;
    return d;
  };
  std::vector<TopoDescriptor> out;
  out.push_back(simple(K::Discrete));
  out.push_back(simple(K::Trivial));
  auto principal = simple(K::Principal);
  principal.subgroups = {SubgroupRef::of_index(point)};
  out.push_back(principal);
  out.push_back(simple(K::Cofinite));
  out.push_back(simple(K::Normal));
  out.push_back(simple(K::Characteristic));
  for (const char* v : {"abelian", "exponent-2"}) {
    auto d = simple(K::Variety);
    d.variety = Variety::parse(v);
    out.push_back(d);
  }
  for (int h : {l.trivial(), center(l)}) {
    auto d = simple(K::Thk);
    d.subgroups = {SubgroupRef::of_index(h), SubgroupRef::of_index(l.top())};
    out.push_back(d);
  }
  auto conj = simple(K::Conj);
  conj.subgroups = {SubgroupRef::of_index(point)};
  out.push_back(conj);
  std::sort(out.begin(), out.end(),
            [](const TopoDescriptor& a, const TopoDescriptor& b) { return a.to_string() < b.to_string(); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TopoDescriptor& a, const TopoDescriptor& b) { return a.to_string() == b.to_string(); }),
            out.end());
  return out;
}

}  // namespace topo
