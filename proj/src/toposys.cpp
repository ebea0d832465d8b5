#include "topogrp/toposys.hpp"

#include <algorithm>
#include <charconv>

namespace topo {

// ---------------------------------------------------------------------------
// descriptor grammar

namespace {

int parse_index(std::string_view s) {
  if (!s.starts_with("#")) throw Error(ErrorCode::ParseError, "expected #k, got '" + std::string(s) + "'");
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.size() == 1)
    throw Error(ErrorCode::ParseError, "bad index '" + std::string(s) + "'");
  return v;
}

// Splits at ':' outside braces.
std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    else if (s[i] == '}') --depth;
    else if (s[i] == ':' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace

SubgroupRef SubgroupRef::parse(std::string_view text) {
  if (text.starts_with("#")) return of_index(parse_index(text));
  if (!text.starts_with("gen{") || !text.ends_with("}"))
    throw Error(ErrorCode::ParseError, "expected gen{..} or #k, got '" + std::string(text) + "'");
  std::string_view body = text.substr(4, text.size() - 5);
  ElementSet gens;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v < 0 || v >= kMaxOrder)
      throw Error(ErrorCode::ParseError, "bad element id '" + std::string(item) + "'");
    gens.insert(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return of_generators(gens);
}

std::string SubgroupRef::to_string() const {
  if (index) return "#" + std::to_string(*index);
  std::string s = "gen{";
  bool first = true;
  generators.for_each([&](ElementId x) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  });
  return s + "}";
}

int SubgroupRef::resolve(const SubgroupLattice& l) const {
  if (index) {
    if (*index < 0 || *index >= l.size())
      throw Error(ErrorCode::BadParameter, "subgroup index #" + std::to_string(*index) + " out of range");
    return *index;
  }
  if (!generators.is_subset_of(l.group().all()))
    throw Error(ErrorCode::BadParameter, "generator outside the group in " + to_string());
  return l.index_of(subgroup_generated(l.group(), generators));
}

TopoDescriptor TopoDescriptor::parse(std::string_view text) {
  using K = Kind;
  TopoDescriptor d;
  const auto fields = split_fields(text);
  const std::string_view head = fields[0];
  auto expect_fields = [&](std::size_t n) {
    if (fields.size() != n) throw Error(ErrorCode::ParseError, "wrong number of fields in '" + std::string(text) + "'");
  };
  if (head == "discrete") { expect_fields(1); d.kind = K::Discrete; }
  else if (head == "trivial") { expect_fields(1); d.kind = K::Trivial; }
  else if (head == "normal") { expect_fields(1); d.kind = K::Normal; }
  else if (head == "characteristic") { expect_fields(1); d.kind = K::Characteristic; }
  else if (head == "cofinite") { expect_fields(1); d.kind = K::Cofinite; }
  else if (head == "principal") {
    expect_fields(2);
    d.kind = K::Principal;
    d.subgroups.push_back(SubgroupRef::parse(fields[1]));
  } else if (head == "variety") {
    d.kind = K::Variety;
    if (fields.size() == 3) d.variety = Variety::parse(std::string(fields[1]) + ":" + std::string(fields[2]));
    else { expect_fields(2); d.variety = Variety::parse(fields[1]); }
  } else if (head == "thk") {
    expect_fields(3);
    d.kind = K::Thk;
    d.subgroups.push_back(SubgroupRef::parse(fields[1]));
    d.subgroups.push_back(SubgroupRef::parse(fields[2]));
  } else if (head == "conj") {
    expect_fields(2);
    d.kind = K::Conj;
    d.subgroups.push_back(SubgroupRef::parse(fields[1]));
  } else if (head == "generated") {
    d.kind = K::Generated;
    if (fields.size() == 2 && !fields[1].empty()) {
      std::string_view body = fields[1];
      while (true) {
        const auto comma = body.find(',');
        d.indices.push_back(parse_index(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
    } else if (fields.size() > 2) {
      expect_fields(2);
    }
  } else {
    throw Error(ErrorCode::UnknownKind, "topo-system '" + std::string(text) + "'");
  }
  return d;
}

std::string TopoDescriptor::to_string() const {
  using K = Kind;
  switch (kind) {
    case K::Discrete: return "discrete";
    case K::Trivial: return "trivial";
    case K::Normal: return "normal";
    case K::Characteristic: return "characteristic";
    case K::Cofinite: return "cofinite";
    case K::Principal: return "principal:" + subgroups[0].to_string();
    case K::Variety: return "variety:" + variety.to_string();
    case K::Thk: return "thk:" + subgroups[0].to_string() + ":" + subgroups[1].to_string();
    case K::Conj: return "conj:" + subgroups[0].to_string();
    case K::Generated: {
      std::string s = "generated:";
      for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? ",#" : "#") + std::to_string(indices[i]);
      return s;
    }
    case K::Induced: return "induced";
    case K::Quotient: return "quotient";
    case K::Product: return "product";
  }
  return {};
}

// ---------------------------------------------------------------------------
// TopoSystem

TopoSystem::TopoSystem(LatticePtr lattice, IndexSet members, std::string provenance, std::vector<std::string> notes)
    : lattice_(std::move(lattice)), members_(std::move(members)), provenance_(std::move(provenance)),
      notes_(std::move(notes)) {
  if (auto report = verify_toposys(*lattice_, members_); !report)
    throw Error(ErrorCode::BadParameter, provenance_ + " is not a topo-system: " + report.reason, report.witness);
  const int n = lattice_->group().order();
  neighbourhood_.resize(static_cast<std::size_t>(n));
  for (ElementId x = 0; x < n; ++x) neighbourhood_[static_cast<std::size_t>(x)] = lattice_->meet_all(topens_containing(x));
}

IndexSet TopoSystem::topens_containing(ElementId x) const {
  IndexSet s(lattice_->size());
  members_.for_each([&](int i) {
    if (lattice_->members(i).contains(x)) s.insert(i);
  });
  return s;
}

ValidationReport verify_toposys(const SubgroupLattice& l, const IndexSet& members) {
  if (members.universe() != l.size()) return ValidationReport::fail("member set is over a different lattice", {});
  if (!members.contains(l.trivial()))
    return ValidationReport::fail("trivial subgroup #0 is not a member", {l.trivial()});
  const auto list = members.to_vector();
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      const int a = list[i], b = list[j];
      if (const int m = l.meet(a, b); !members.contains(m))
        return ValidationReport::fail("meet of #" + std::to_string(a) + " and #" + std::to_string(b) + " = #" +
                                          std::to_string(m) + " is not a member",
                                      {a, b, m});
      if (const int g = l.join(a, b); !members.contains(g))
        return ValidationReport::fail("join of #" + std::to_string(a) + " and #" + std::to_string(b) + " = #" +
                                          std::to_string(g) + " is not a member",
                                      {a, b, g});
    }
  if (!members.contains(l.top())) return ValidationReport::fail("G is not a member", {l.top()});
  return ValidationReport::pass();
}

TopoSystem generate_toposys(LatticePtr lattice, const IndexSet& seed, std::string provenance) {
  const SubgroupLattice& l = *lattice;
  IndexSet current = seed;
  current.insert(l.trivial());
  current.insert(l.top());
  // Each round adds pairwise meets and joins; a strictly growing chain of
  // subsets of the lattice stabilises within |lattice| rounds.
  for (bool grew = true; grew;) {
    grew = false;
    const auto list = current.to_vector();
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        for (int k : {l.meet(list[i], list[j]), l.join(list[i], list[j])}) {
          if (!current.contains(k)) {
            current.insert(k);
            grew = true;
          }
        }
      }
  }
  return TopoSystem(std::move(lattice), std::move(current), std::move(provenance));
}

TopoSystem build_toposys(LatticePtr lattice, const TopoDescriptor& d, const AutomorphismSet* aut) {
  using K = TopoDescriptor::Kind;
  const SubgroupLattice& l = *lattice;
  const FiniteGroup& g = l.group();
  IndexSet members(l.size());
  std::vector<std::string> notes;
  auto select = [&](auto&& predicate) {
    for (int i = 0; i < l.size(); ++i)
      if (predicate(i)) members.insert(i);
  };

  switch (d.kind) {
    case K::Discrete:
      members = IndexSet::full(l.size());
      break;
    case K::Trivial:
      members.insert(l.trivial());
      members.insert(l.top());
      break;
    case K::Principal: {
      const int b = d.subgroups.at(0).resolve(l);
      select([&](int i) { return i == l.trivial() || l.leq(b, i); });
      break;
    }
    case K::Cofinite:
      members = IndexSet::full(l.size());
      notes.emplace_back("every subgroup of a finite group has finite index, so cofinite = discrete");
      break;
    case K::Normal:
      select([&](int i) { return is_normal(l, i); });
      break;
    case K::Characteristic: {
      std::optional<AutomorphismSet> own;
      if (aut == nullptr) aut = &own.emplace(automorphisms(l.group_ptr()));
      select([&](int i) { return is_characteristic(l, i, *aut); });
      break;
    }
    case K::Variety: {
      // {A normal : G/A in the variety} ∪ {1}; G/A is in the variety
      // exactly when A contains the verbal residual.
      const int residual = verbal_residual(l, d.variety);
      select([&](int i) { return i == l.trivial() || (is_normal(l, i) && l.leq(residual, i)); });
      break;
    }
    case K::Thk: {
      const int h = d.subgroups.at(0).resolve(l);
      const int k = d.subgroups.at(1).resolve(l);
      if (!l.leq(h, k))
        throw Error(ErrorCode::BadParameter, "thk needs H <= K, got H=" + l.label(h) + " K=" + l.label(k), {h, k});
      const ElementSet hs = l.members(h), ks = l.members(k);
      select([&](int i) {
        if (i == l.top()) return true;
        bool inside = true;
        l.members(i).for_each([&](ElementId a) {
          ks.for_each([&](ElementId u) { inside = inside && hs.contains(g.commutator(a, u)); });
        });
        return inside;
      });
      break;
    }
    case K::Conj: {
      const int h = d.subgroups.at(0).resolve(l);
      select([&](int i) { return l.leq(h, normalizer(l, i)); });
      break;
    }
    case K::Generated: {
      IndexSet seed(l.size());
      for (int i : d.indices) {
        if (i < 0 || i >= l.size())
          throw Error(ErrorCode::BadParameter, "subgroup index #" + std::to_string(i) + " out of range", {i});
        seed.insert(i);
      }
      return generate_toposys(std::move(lattice), seed, d.to_string());
    }
    case K::Induced:
    case K::Quotient:
    case K::Product:
      throw Error(ErrorCode::BadParameter, d.to_string() + " systems are built by their own operation");
  }
  return TopoSystem(std::move(lattice), std::move(members), d.to_string(), std::move(notes));
}

InducedToposys induced_toposys(const TopoSystem& t, int h) {
  const SubgroupLattice& l = t.lattice();
  auto sub = subgroup_as_group(l, h);
  auto sub_lattice = enumerate_subgroups(sub.group);
  IndexSet seed(sub_lattice->size());
  t.members().for_each([&](int a) {
    seed.insert(sub_lattice->index_of(sub.inclusion.preimage(l.members(a))));
  });
  auto system = generate_toposys(std::move(sub_lattice), seed, "induced(" + t.provenance() + ",#" + std::to_string(h) + ")");
  return {std::move(system), std::move(sub.inclusion)};
}

QuotientToposys quotient_toposys(const TopoSystem& t, int n) {
  const SubgroupLattice& l = t.lattice();
  auto quotient = quotient_group(l, n);
  auto q_lattice = enumerate_subgroups(quotient.group);
  IndexSet candidate(q_lattice->size());
  t.members().for_each([&](int a) { candidate.insert(q_lattice->index_of(quotient.projection.image(l.members(a)))); });
  auto report = verify_toposys(*q_lattice, candidate);
  std::optional<TopoSystem> system;
  if (report) system.emplace(q_lattice, candidate, "quotient(" + t.provenance() + ",#" + std::to_string(n) + ")");
  return {std::move(quotient), std::move(q_lattice), std::move(candidate), std::move(report), std::move(system)};
}

// ---------------------------------------------------------------------------
// interior / closure

InteriorBoundary interior_boundary(const TopoSystem& t, int x) {
  const SubgroupLattice& l = t.lattice();
  int interior = l.trivial();
  t.members().for_each([&](int a) {
    if (l.leq(a, x)) interior = l.join(interior, a);
  });
  return {interior, l.members(x) - l.members(interior)};
}

ElementSet interior_elements(const TopoSystem& t, int x) {
  const SubgroupLattice& l = t.lattice();
  ElementSet out;
  t.members().for_each([&](int a) {
    if (l.leq(a, x)) out |= l.members(a);
  });
  return out;
}

ClosureResult closure_and_limits(const TopoSystem& t, int x) {
  const SubgroupLattice& l = t.lattice();
  const ElementSet xs = l.members(x);
  ElementSet limits;
  for (ElementId y = 0; y < t.group().order(); ++y) {
    bool limit = true;
    t.topens_containing(y).for_each([&](int a) { limit = limit && (l.members(a) & xs).size() >= 2; });
    if (limit) limits.insert(y);
  }
  return {limits, l.index_of(subgroup_generated(t.group(), xs | limits))};
}

ClosedChecks t_closed_checks(const TopoSystem& t, int a) {
  const SubgroupLattice& l = t.lattice();
  const ElementSet as = l.members(a);
  const ElementSet identity = ElementSet::singleton(0);
  auto separable = [&](ElementId x) {
    bool found = false;
    t.topens_containing(x).for_each([&](int b) { found = found || (l.members(b) & as) == identity; });
    return found;
  };
  ClosedChecks out;
  for (ElementId x = 0; x < t.group().order(); ++x) {
    const bool outside = !as.contains(x);
    const bool cyclically_apart = (l.members(l.cyclic(x)) & as) == identity;
    if (!outside && !cyclically_apart) continue;
    const bool ok = separable(x);
    if (outside && !ok && out.t_closed) {
      out.t_closed = false;
      out.t_closed_witness = x;
    }
    if (cyclically_apart && !ok && out.weak_t_closed) {
      out.weak_t_closed = false;
      out.weak_witness = x;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// separation

bool cyclically_distinct(const SubgroupLattice& l, ElementId x, ElementId y) {
  return l.meet(l.cyclic(x), l.cyclic(y)) == l.trivial();
}

SeparationWitness separate(const TopoSystem& t, ElementId x, ElementId y) {
  // Any topens A ∋ x, B ∋ y contain the smallest neighbourhoods, so the
  // pair is separable iff those two meet trivially.
  const int a = t.neighbourhood(x), b = t.neighbourhood(y);
  return {x, y, a, b, t.lattice().meet(a, b) == t.lattice().trivial()};
}

HausdorffResult is_hausdorff(const TopoSystem& t) {
  const SubgroupLattice& l = t.lattice();
  const int n = t.group().order();
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = x; y < n; ++y) {
      if (!cyclically_distinct(l, x, y)) continue;
      if (auto w = separate(t, x, y); !w.separated) return {false, w};
    }
  return {true, std::nullopt};
}

std::optional<SubcoverCertificate> find_finite_subcover(const TopoSystem& t, int x, std::span<const int> cover) {
  const SubgroupLattice& l = t.lattice();
  std::vector<ElementSet> family;
  for (int i : cover) {
    if (i < 0 || i >= l.size() || !t.contains(i))
      throw Error(ErrorCode::BadParameter, "cover member #" + std::to_string(i) + " is not topen", {i});
    family.push_back(l.members(i));
  }
  auto result = minimal_cover(l.members(x), family);
  if (!result) return std::nullopt;
  SubcoverCertificate cert;
  cert.exact = result->exact;
  for (int pos : result->chosen) cert.subcover.push_back(cover[static_cast<std::size_t>(pos)]);
  std::sort(cert.subcover.begin(), cert.subcover.end());
  cert.subcover.erase(std::unique(cert.subcover.begin(), cert.subcover.end()), cert.subcover.end());
  return cert;
}

TopomorphismResult is_topomorphism(const Homomorphism& f, const TopoSystem& t, const TopoSystem& s) {
  const SubgroupLattice& source = t.lattice();
  const SubgroupLattice& target = s.lattice();
  if (!source.group().same_as(*f.source) || !target.group().same_as(*f.target))
    throw Error(ErrorCode::ParentMismatch, "topo-systems do not live on the homomorphism's groups");
  TopomorphismResult out;
  s.members().for_each([&](int b) {
    if (!out.continuous) return;
    if (!t.contains(source.index_of(f.preimage(target.members(b))))) {
      out.continuous = false;
      out.offending = b;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// the point topology with basis T

bool is_star_open(const TopoSystem& t, ElementSet x) {
  const SubgroupLattice& l = t.lattice();
  ElementSet covered;
  t.members().for_each([&](int a) {
    if (l.members(a).is_subset_of(x)) covered |= l.members(a);
  });
  return covered == x;
}

StarReport star_topology_checks(const TopoSystem& t) {
  const SubgroupLattice& l = t.lattice();
  const int n = t.group().order();
  StarReport report;

  // Every star-open U ∋ x is a union of topens, one of which holds x and
  // hence contains the smallest neighbourhood of x. Two points are
  // separated iff those neighbourhoods are disjoint.
  for (ElementId x = 0; x < n && report.never_hausdorff; ++x)
    for (ElementId y = x + 1; y < n; ++y) {
      ++report.pairs_checked;
      const ElementSet nx = l.members(t.neighbourhood(x)), ny = l.members(t.neighbourhood(y));
      if (!is_star_open(t, nx) || !is_star_open(t, ny) || !nx.intersects(ny)) {
        report.never_hausdorff = false;
        report.failure = "points " + std::to_string(x) + " and " + std::to_string(y) + " are separated";
        report.witness = {x, y};
        break;
      }
    }

  const auto topens = t.members().to_vector();
  const bool all_unions = static_cast<int>(topens.size()) <= kStarUnionLimit;
  for (int h = 0; h < l.size() && report.trace_inclusion; ++h) {
    const auto induced = induced_toposys(t, h);
    auto local = [&](ElementSet s) { return induced.inclusion.preimage(s); };
    std::vector<ElementSet> traces;
    for (int a : topens) traces.push_back(local(l.members(a)));
    auto check = [&](ElementSet trace, std::uint64_t which) {
      ++report.traces_checked;
      if (is_star_open(induced.system, trace)) return true;
      report.trace_inclusion = false;
      report.failure = "trace on #" + std::to_string(h) + " is not open for the induced system";
      report.witness = {h, static_cast<int>(which)};
      return false;
    };
    if (all_unions) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << topens.size()); ++mask) {
        ElementSet u;
        for (std::size_t i = 0; i < topens.size(); ++i)
          if ((mask >> i) & 1U) u |= traces[i];
        if (!check(u, mask)) break;
      }
    } else {
      for (std::size_t i = 0; i < traces.size(); ++i)
        if (!check(traces[i], std::uint64_t{1} << (i % 64))) break;
    }
  }
  return report;
}

}  // namespace topo
