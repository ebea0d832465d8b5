#include "topogrp/filters.hpp"

#include <algorithm>
#include <map>

namespace topo {

ValidationReport check_filter_axioms(const SubgroupLattice& l, const IndexSet& members) {
  if (members.universe() != l.size()) return ValidationReport::fail("member set is over a different lattice", {});
  if (l.size() == 1) return ValidationReport::fail("the trivial group has no subgroup filters", {0});
  if (!members.contains(l.top())) return ValidationReport::fail("G is not a member", {l.top()});
  if (members.contains(l.trivial())) return ValidationReport::fail("the trivial subgroup is a member", {l.trivial()});
  std::optional<ValidationReport> failure;
  members.for_each([&](int a) {
    if (failure) return;
    for (int b : l.upper_covers(a))
      if (!members.contains(b)) {
        failure = ValidationReport::fail("#" + std::to_string(b) + " lies above member #" + std::to_string(a) +
                                             " but is not a member",
                                         {a, b});
        return;
      }
    members.for_each([&](int b) {
      if (failure || b <= a) return;
      if (const int m = l.meet(a, b); !members.contains(m))
        failure = ValidationReport::fail("meet of #" + std::to_string(a) + " and #" + std::to_string(b) + " = #" +
                                             std::to_string(m) + " is not a member",
                                         {a, b, m});
    });
  });
  return failure ? *failure : ValidationReport::pass();
}

SubgroupFilter::SubgroupFilter(LatticePtr lattice, IndexSet members)
    : lattice_(std::move(lattice)), members_(std::move(members)) {
  if (auto report = check_filter_axioms(*lattice_, members_); !report)
    throw Error(ErrorCode::NotAFilter, report.reason, report.witness);
}

SubgroupFilter generate_filter(LatticePtr lattice, const IndexSet& s) {
  const SubgroupLattice& l = *lattice;
  IndexSet seed = s;
  if (seed.empty()) seed.insert(l.top());

  // S_*: all finite meets of members of S.
  IndexSet finite_meets = seed;
  std::vector<int> prefix;
  int running = l.top();
  seed.for_each([&](int i) {
    if (running == l.trivial()) return;
    prefix.push_back(i);
    running = l.meet(running, i);
  });
  if (running == l.trivial())
    throw Error(ErrorCode::NoFip, "finite meet of " + std::to_string(prefix.size()) + " generators is trivial",
                prefix);
  for (bool grew = true; grew;) {
    grew = false;
    const auto list = finite_meets.to_vector();
    for (int a : list)
      for (int b : list)
        if (const int m = l.meet(a, b); !finite_meets.contains(m)) {
          finite_meets.insert(m);
          grew = true;
        }
  }
  IndexSet members(l.size());
  for (int b = 0; b < l.size(); ++b) {
    bool above = false;
    finite_meets.for_each([&](int a) { above = above || l.leq(a, b); });
    if (above) members.insert(b);
  }
  return SubgroupFilter(std::move(lattice), std::move(members));
}

SubgroupFilter principal_filter(LatticePtr lattice, ElementId x) {
  if (x == 0) throw Error(ErrorCode::IdentityNotAllowed, "F_1 would need the trivial subgroup", {0});
  if (x < 0 || x >= lattice->group().order()) throw Error(ErrorCode::BadParameter, "element out of range", {x});
  IndexSet members = lattice->containing(x);
  return SubgroupFilter(std::move(lattice), std::move(members));
}

bool OrdinaryFilter::contains(ElementSet x) const {
  return std::any_of(base.begin(), base.end(), [&](ElementSet b) { return b.is_subset_of(x); });
}

OrdinaryFilter ordinary_bridge(const SubgroupFilter& f) {
  OrdinaryFilter out{f.lattice().group().order(), {}};
  f.members().for_each([&](int a) { out.base.push_back(f.lattice().members(a)); });
  return out;
}

SubgroupFilter restrict(const OrdinaryFilter& f1, LatticePtr lattice) {
  IndexSet members(lattice->size());
  for (int i = 1; i < lattice->size(); ++i)
    if (f1.contains(lattice->members(i))) members.insert(i);
  return SubgroupFilter(std::move(lattice), std::move(members));
}

OrdinaryFilter principal_ordinary_ultrafilter(int universe, ElementId x) {
  return {universe, {ElementSet::singleton(x)}};
}

UltrafilterCheck is_ultrafilter(const SubgroupFilter& f) {
  const SubgroupLattice& l = f.lattice();
  UltrafilterCheck out;
  f.members().for_each([&](int c) {
    if (!out.ultra) return;
    ElementSet union_of_outsiders;
    for (int a = 0; a < l.size(); ++a)
      if (!f.contains(a) && l.leq(a, c)) union_of_outsiders |= l.members(a);
    if (union_of_outsiders == l.members(c)) {
      out.ultra = false;
      out.witness = c;
    }
  });
  return out;
}

SubgroupFilter extend_to_ultrafilter(const SubgroupFilter& f) {
  const ElementSet kernel = f.lattice().members(f.kernel()) - ElementSet::singleton(0);
  return principal_filter(f.lattice_ptr(), kernel.min());
}

std::vector<SubgroupFilter> enumerate_ultrafilters(LatticePtr lattice) {
  if (lattice->group().order() < 2) throw Error(ErrorCode::TrivialGroup, "the trivial group has no ultrafilters");
  std::vector<SubgroupFilter> out;
  std::vector<bool> seen(static_cast<std::size_t>(lattice->size()), false);
  for (ElementId x = 1; x < lattice->group().order(); ++x) {
    const int c = lattice->cyclic(x);
    if (seen[static_cast<std::size_t>(c)]) continue;
    seen[static_cast<std::size_t>(c)] = true;
    auto f = principal_filter(lattice, x);
    if (auto check = is_ultrafilter(f); !check.ultra)
      throw Error(ErrorCode::CertificateFailure, "principal filter F_" + std::to_string(x) + " is not ultra",
                  {x, *check.witness});
    out.push_back(std::move(f));
  }
  return out;
}

IndexSet pushforward_family(const Homomorphism& f, const SubgroupFilter& filter, const SubgroupLattice& target) {
  const SubgroupLattice& source = filter.lattice();
  IndexSet out(target.size());
  for (int a = 0; a < target.size(); ++a)
    if (filter.contains(source.index_of(f.preimage(target.members(a))))) out.insert(a);
  return out;
}

SubgroupFilter pushforward(const Homomorphism& f, const SubgroupFilter& filter, LatticePtr target) {
  IndexSet family = pushforward_family(f, filter, *target);
  if (family.contains(target->trivial()))
    throw Error(ErrorCode::NotAFilter, "the kernel is a member, so the pushforward contains the trivial subgroup",
                {filter.lattice().index_of(f.kernel())});
  return SubgroupFilter(std::move(target), std::move(family));
}

ConvergenceCertificate converges_to(const IndexSet& family, const TopoSystem& t, ElementId y) {
  ConvergenceCertificate cert;
  cert.target = y;
  cert.checked = t.topens_containing(y).to_vector();
  for (int a : cert.checked)
    if (!family.contains(a)) {
      cert.converges = false;
      cert.offending = a;
      break;
    }
  return cert;
}

ConvergenceCertificate converges_to(const SubgroupFilter& f, const TopoSystem& t, ElementId y) {
  if (&f.lattice() != &t.lattice() && !f.lattice().group().same_as(t.group()))
    throw Error(ErrorCode::ParentMismatch, "filter and topo-system live on different groups");
  return converges_to(f.members(), t, y);
}

std::vector<std::vector<ElementId>> convergence_set(const SubgroupFilter& f, const TopoSystem& t) {
  std::vector<std::vector<ElementId>> classes;
  std::map<int, std::size_t> class_of;  // cyclic subgroup index -> position
  for (ElementId y = 0; y < t.group().order(); ++y) {
    if (!converges_to(f, t, y).converges) continue;
    const int c = t.lattice().cyclic(y);
    auto [it, fresh] = class_of.emplace(c, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(y);
  }
  return classes;
}

TheoremReport theorem_checks(const TopoSystem& t, const std::vector<TopoMap>& maps) {
  TheoremReport report;
  const SubgroupLattice& l = t.lattice();
  report.hausdorff = is_hausdorff(t).hausdorff;
  if (t.group().order() < 2) {
    // No ultrafilters: (i) and (iii) hold vacuously; the trivial group is Hausdorff.
    report.hausdorff_equivalence = report.hausdorff;
    return report;
  }
  const auto ultrafilters = enumerate_ultrafilters(t.lattice_ptr());
  report.ultrafilters = static_cast<int>(ultrafilters.size());

  bool some_two_point = false;
  for (std::size_t i = 0; i < ultrafilters.size(); ++i) {
    const auto classes = convergence_set(ultrafilters[i], t);
    if (classes.empty() && report.compactness) {
      report.compactness = false;
      report.nonconvergent = static_cast<int>(i);
      report.failure = "ultrafilter " + std::to_string(i) + " converges nowhere";
    }
    for (std::size_t a = 0; a < classes.size() && !some_two_point; ++a)
      for (std::size_t b = a + 1; b < classes.size() && !some_two_point; ++b)
        if (cyclically_distinct(l, classes[a][0], classes[b][0])) {
          some_two_point = true;
          report.two_point_filter = static_cast<int>(i);
          report.two_points = std::pair{classes[a][0], classes[b][0]};
        }
  }
  report.hausdorff_equivalence = report.hausdorff == !some_two_point;
  if (!report.hausdorff_equivalence && report.failure.empty())
    report.failure = report.hausdorff ? "Hausdorff system with a two-point ultrafilter"
                                      : "non-Hausdorff system without a two-point ultrafilter";

  for (const auto& m : maps) {
    if (!m.source->group().same_as(t.group())) continue;
    for (const auto& f : ultrafilters) {
      const IndexSet family = pushforward_family(m.map, f, m.target->lattice());
      for (ElementId x = 0; x < t.group().order(); ++x) {
        if (!converges_to(f, t, x).converges) continue;
        ++report.continuity_checks;
        if (family.contains(m.target->lattice().trivial())) ++report.degenerate_pushforwards;
        if (!converges_to(family, *m.target, m.map(x)).converges && report.continuity) {
          report.continuity = false;
          report.failure = "pushforward along " + m.name + " does not converge to f(" + std::to_string(x) + ")";
        }
      }
    }
  }
  return report;
}

}  // namespace topo
