#include "topogrp/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "topogrp/catalog.hpp"
#include "topogrp/filters.hpp"
#include "topogrp/oracles.hpp"
#include "topogrp/product.hpp"

namespace topo {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Finding: return "finding";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> kNames = {
      // group level
      "group-axioms", "lattice-completeness", "lattice-laws", "pgroup-lemma", "ultrafilters", "filter-bridge",
      "generate-least",
      // (group, system) level
      "toposys-axioms", "interior-core", "interior-properties", "closure-closed", "closed-intersections",
      "prime-order", "weak-closed", "compactness", "hausdorff-equivalence", "continuity", "quotient-probe",
      "star-topology",
      // products
      "product-identities", "tychonoff",
  };
  return kNames;
}

namespace {

constexpr int kCompletenessLimit = 16;    // group order for the subset oracle
constexpr int kFamilyOracleLimit = 16;    // lattice size for the family oracle
constexpr int kSystemOracleLimit = 12;    // lattice size for the axiom oracle
constexpr int kGenerateLimit = 10;        // lattice size for the least-fixpoint check
constexpr int kProductOrderLimit = 36;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (const auto& s : out)
    if (auto t = trim(s); !t.empty()) trimmed.push_back(std::move(t));
  return trimmed;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p when n = p^k with k >= 1, else 0.
int prime_power_base(int n) {
  if (n < 2) return 0;
  int p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

std::vector<ElementSet> member_list(const SubgroupLattice& l) {
  std::vector<ElementSet> v;
  for (int i = 0; i < l.size(); ++i) v.push_back(l.members(i));
  return v;
}

IndexSet upset(const SubgroupLattice& l, int k) {
  IndexSet s = l.empty_set();
  for (int i = 0; i < l.size(); ++i)
    if (l.leq(k, i)) s.insert(i);
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// A check body fills status/witness/detail; Fail without a witness is a bug
// in the check and is reported as such.
using Body = std::function<void(CheckReport&)>;

void fail(CheckReport& r, std::vector<int> witness, std::string detail) {
  r.status = Status::Fail;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
}

void finding(CheckReport& r, std::vector<int> witness, std::string detail) {
  r.status = Status::Finding;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
}

class Emitter {
 public:
  explicit Emitter(const SuiteConfig& cfg) : cfg_(cfg) {}

  bool selected(std::string_view name) const {
    return cfg_.suites.empty() || std::find(cfg_.suites.begin(), cfg_.suites.end(), name) != cfg_.suites.end();
  }

  void run(const std::string& check, const std::string& group, const std::string& sys, const Body& body) {
    if (!selected(check)) return;
    CheckReport r{check, group, sys, Status::Pass, {}, {}, 0};
    const auto start = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      fail(r, e.witness().empty() ? std::vector<int>{-1} : e.witness(), e.what());
    } catch (const std::exception& e) {
      fail(r, {-1}, std::string("exception: ") + e.what());
    }
    if (r.status == Status::Fail && r.witness.empty()) {
      r.witness = {-1};
      r.detail += " (no witness)";
    }
    if (cfg_.timing)
      r.elapsed_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    reports_.push_back(std::move(r));
  }

  // Unconditional: construction failures are reported whatever is selected.
  void add(CheckReport r) { reports_.push_back(std::move(r)); }

  std::vector<CheckReport>& reports() { return reports_; }

 private:
  const SuiteConfig& cfg_;
  std::vector<CheckReport> reports_;
};

struct GroupData {
  std::string name;
  GroupPtr group;
  LatticePtr lattice;
  std::shared_ptr<const AutomorphismSet> aut;  // null above the automorphism cap
};

// ---------------------------------------------------------------------------
// group-level checks

void group_checks(const GroupData& d, Emitter& e) {
  const FiniteGroup& g = *d.group;
  const SubgroupLattice& l = *d.lattice;
  const int n = g.order();
  const std::string& name = d.name;

  e.run("group-axioms", name, "-", [&](CheckReport& r) {
    const auto report = verify_group_axioms(g.table(), n);
    const bool oracle = oracle::is_group_table(g);
    if (!report.passed || !oracle)
      return fail(r, report.witness.empty() ? std::vector<int>{0} : report.witness,
                  "verifier=" + yes_no(report.passed) + " oracle=" + yes_no(oracle));
    for (ElementId x = 0; x < n; ++x) {
      const int k = g.element_order(x);
      if (n % k || g.power(x, k) != 0 || g.mul(x, g.inverse(x)) != 0)
        return fail(r, {x}, "element order or inverse broken");
      if (element_order(g, x) != k) return fail(r, {x}, "element orders disagree");
    }
    std::string detail = "order=" + std::to_string(n);
    if (d.aut) {
      const auto& maps = d.aut->maps;
      std::vector<ElementId> id(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
      if (std::find(maps.begin(), maps.end(), id) == maps.end()) return fail(r, {0}, "identity automorphism missing");
      for (std::size_t m = 0; m < maps.size(); ++m)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (maps[m][static_cast<std::size_t>(g.mul(a, b))] !=
                g.mul(maps[m][static_cast<std::size_t>(a)], maps[m][static_cast<std::size_t>(b)]))
              return fail(r, {static_cast<int>(m), a, b}, "automorphism is not a homomorphism");
      if (maps.size() <= 64) {
        std::set<std::vector<ElementId>> all(maps.begin(), maps.end());
        if (all.size() != maps.size()) return fail(r, {0}, "duplicate automorphisms");
        for (std::size_t a = 0; a < maps.size(); ++a)
          for (std::size_t b = 0; b < maps.size(); ++b) {
            std::vector<ElementId> c(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x) c[static_cast<std::size_t>(x)] = maps[a][static_cast<std::size_t>(maps[b][static_cast<std::size_t>(x)])];
            if (!all.contains(c)) return fail(r, {static_cast<int>(a), static_cast<int>(b)}, "automorphisms not closed");
          }
      }
      detail += " automorphisms=" + std::to_string(maps.size());
    }
    r.detail = detail;
  });

  if (n <= kCompletenessLimit)
    e.run("lattice-completeness", name, "-", [&](CheckReport& r) {
      const auto expected = oracle::subgroups_by_subsets(g);
      const auto got = member_list(l);
      const std::size_t common = std::min(expected.size(), got.size());
      for (std::size_t i = 0; i < common; ++i)
        if (expected[i] != got[i])
          return fail(r, {static_cast<int>(i)}, "index " + std::to_string(i) + ": oracle " + expected[i].to_string() +
                                                    " lattice " + got[i].to_string());
      if (expected.size() != got.size())
        return fail(r, {static_cast<int>(common)},
                    "oracle " + std::to_string(expected.size()) + " lattice " + std::to_string(got.size()));
      r.detail = "subgroups=" + std::to_string(got.size());
    });

  e.run("lattice-laws", name, "-", [&](CheckReport& r) {
    const int m = l.size();
    if (l.members(0) != ElementSet::singleton(0) || l.members(l.top()) != g.all())
      return fail(r, {0, l.top()}, "trivial or top misplaced");
    for (int a = 0; a < m; ++a) {
      if (n % l.order(a)) return fail(r, {a}, "order does not divide |G|");
      if (a > 0 && !(l.order(a - 1) < l.order(a) ||
                     (l.order(a - 1) == l.order(a) && lexicographic_less(l.members(a - 1), l.members(a)))))
        return fail(r, {a - 1, a}, "not canonical");
      for (int b = 0; b < m; ++b) {
        const ElementSet ma = l.members(a), mb = l.members(b);
        if (l.members(l.meet(a, b)) != (ma & mb)) return fail(r, {a, b}, "meet table");
        if (l.members(l.join(a, b)) != subgroup_generated(g, ma | mb)) return fail(r, {a, b}, "join table");
        if (l.meet(a, b) != l.meet(b, a) || l.join(a, b) != l.join(b, a)) return fail(r, {a, b}, "commutativity");
        if (l.meet(a, l.join(a, b)) != a || l.join(a, l.meet(a, b)) != a) return fail(r, {a, b}, "absorption");
        if (l.leq(a, b) != (l.meet(a, b) == a)) return fail(r, {a, b}, "order vs meet");
      }
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          if (l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c))) return fail(r, {a, b, c}, "meet associativity");
          if (l.join(l.join(a, b), c) != l.join(a, l.join(b, c))) return fail(r, {a, b, c}, "join associativity");
        }
      for (int c : l.upper_covers(a)) {
        if (!l.leq(a, c) || a == c) return fail(r, {a, c}, "cover not above");
        for (int b = 0; b < m; ++b)
          if (b != a && b != c && l.leq(a, b) && l.leq(b, c)) return fail(r, {a, b, c}, "cover not minimal");
      }
    }
    // Normal-subgroup calculus.
    for (int a = 0; a < m; ++a) {
      const int c = core(l, a);
      if (!is_normal(l, c) || !l.leq(c, a)) return fail(r, {a, c}, "core not a normal subgroup of X");
      for (int nn = 0; nn < m; ++nn)
        if (is_normal(l, nn) && l.leq(nn, a) && !l.leq(nn, c)) return fail(r, {a, nn}, "core not largest");
      const int nz = normalizer(l, a);
      for (ElementId x = 0; x < n; ++x) {
        bool normalizes = true;
        l.members(a).for_each([&](ElementId y) { normalizes = normalizes && l.members(a).contains(g.conjugate(x, y)); });
        if (normalizes != l.members(nz).contains(x)) return fail(r, {a, x}, "normalizer");
      }
      if (is_normal(l, a) != (nz == l.top())) return fail(r, {a}, "is_normal vs normalizer");
    }
    const int derived = commutator_subgroup(l, l.top(), l.top());
    if (!is_normal(l, derived)) return fail(r, {derived}, "derived subgroup not normal");
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (!l.members(derived).contains(g.commutator(x, y))) return fail(r, {x, y}, "commutator outside [G,G]");
    if (verbal_residual(l, Variety{}) != derived) return fail(r, {derived}, "abelian residual is not [G,G]");
    r.detail = "subgroups=" + std::to_string(m);
  });

  if (const int p = prime_power_base(n); p)
    e.run("pgroup-lemma", name, "-", [&](CheckReport& r) {
      const int m = l.size();
      std::optional<std::pair<int, int>> disjoint;
      for (int a = 1; a < m && !disjoint; ++a)
        for (int b = a + 1; b < m && !disjoint; ++b)
          if (l.meet(a, b) == 0) disjoint = std::pair{a, b};
      int order_p = 0;
      for (int a = 0; a < m; ++a) order_p += l.order(a) == p;
      const bool lhs = !disjoint, rhs = order_p == 1;
      if (lhs != rhs)
        return fail(r, disjoint ? std::vector<int>{disjoint->first, disjoint->second} : std::vector<int>{order_p},
                    "pairwise-meet=" + yes_no(lhs) + " unique-order-p=" + yes_no(rhs));
      r.detail = "p=" + std::to_string(p) + " unique-order-p=" + yes_no(rhs);
    });

  e.run("ultrafilters", name, "-", [&](CheckReport& r) {
    if (n < 2) {
      try {
        enumerate_ultrafilters(d.lattice);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::TrivialGroup) {
          r.detail = "trivial group: no ultrafilters";
          return;
        }
        throw;
      }
      return fail(r, {0}, "trivial group enumerated ultrafilters");
    }
    const auto ufs = enumerate_ultrafilters(d.lattice);
    std::set<int> classes;
    for (ElementId x = 1; x < n; ++x) classes.insert(l.cyclic(x));
    if (ufs.size() != classes.size())
      return fail(r, {static_cast<int>(ufs.size())}, "expected one ultrafilter per cyclic subgroup");
    std::set<std::vector<int>> uf_members;
    for (std::size_t i = 0; i < ufs.size(); ++i) {
      if (!is_ultrafilter(ufs[i]).ultra) return fail(r, {static_cast<int>(i)}, "enumerated filter not ultra");
      uf_members.insert(ufs[i].members().to_vector());
    }
    for (ElementId x = 1; x < n; ++x)
      for (ElementId y = 1; y < n; ++y)
        if ((principal_filter(d.lattice, x) == principal_filter(d.lattice, y)) != (l.cyclic(x) == l.cyclic(y)))
          return fail(r, {x, y}, "F_x = F_y does not match <x> = <y>");
    // Every filter on a finite lattice is the up-set of its kernel.
    for (int k = 1; k < l.size(); ++k) {
      const SubgroupFilter f = generate_filter(d.lattice, IndexSet(l.size(), {k}));
      const SubgroupFilter u = extend_to_ultrafilter(f);
      if (!f.members().is_subset_of(u.members())) return fail(r, {k}, "extension does not contain its input");
      if (!is_ultrafilter(u).ultra) return fail(r, {k}, "extension not ultra");
    }
    std::string detail = "ultrafilters=" + std::to_string(ufs.size());
    if (l.size() <= kFamilyOracleLimit) {
      const auto subs = member_list(l);
      const auto filters = oracle::all_filters(subs);
      if (static_cast<int>(filters.size()) != l.size() - 1)
        return fail(r, {static_cast<int>(filters.size())}, "oracle filter count is not the non-trivial subgroup count");
      std::set<std::vector<int>> oracle_ultra;
      for (std::size_t i = 0; i < filters.size(); ++i) {
        const bool by_families = oracle::is_ultrafilter_by_families(subs, filters[i]);
        const bool ours = is_ultrafilter(SubgroupFilter(d.lattice, filters[i])).ultra;
        if (by_families != ours)
          return fail(r, filters[i].to_vector(), "is_ultrafilter=" + yes_no(ours) + " oracle=" + yes_no(by_families));
        if (ours) oracle_ultra.insert(filters[i].to_vector());
      }
      if (oracle_ultra != uf_members) return fail(r, {static_cast<int>(oracle_ultra.size())}, "enumeration differs from oracle");
      detail += " filters=" + std::to_string(filters.size()) + " oracle=families";
    }
    r.detail = detail;
  });

  e.run("filter-bridge", name, "-", [&](CheckReport& r) {
    const int m = l.size();
    for (int k = 1; k < m; ++k) {
      const SubgroupFilter f = generate_filter(d.lattice, IndexSet(m, {k}));
      if (f.members() != upset(l, k)) return fail(r, {k}, "generated filter is not the up-set");
      if (!(restrict(ordinary_bridge(f), d.lattice) == f)) return fail(r, {k}, "restrict(bridge(F)) != F");
    }
    for (ElementId x = 1; x < n; ++x)
      if (!(restrict(principal_ordinary_ultrafilter(n, x), d.lattice) == principal_filter(d.lattice, x)))
        return fail(r, {x}, "principal ordinary ultrafilter does not restrict to F_x");
    for (int a = 1; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const int mt = l.meet(a, b);
        if (mt == 0) {
          try {
            generate_filter(d.lattice, IndexSet(m, {a, b}));
          } catch (const Error& err) {
            if (err.code() == ErrorCode::NoFip) continue;
            throw;
          }
          return fail(r, {a, b}, "family without fip generated a filter");
        }
        if (generate_filter(d.lattice, IndexSet(m, {a, b})).members() != upset(l, mt))
          return fail(r, {a, b}, "generated filter is not the up-set of the meet");
      }
    // Pushforward along every quotient map.
    int degenerate = 0, pushed = 0;
    for (int nn = 0; nn < m; ++nn) {
      if (!is_normal(l, nn)) continue;
      const QuotientGroup q = quotient_group(l, nn);
      const LatticePtr ql = enumerate_subgroups(q.group);
      for (ElementId x = 1; x < n; ++x) {
        const SubgroupFilter fx = principal_filter(d.lattice, x);
        const IndexSet fam = pushforward_family(q.projection, fx, *ql);
        if (l.members(nn).contains(x)) {
          ++degenerate;
          if (!fam.contains(ql->trivial())) return fail(r, {nn, x}, "ker f in F but pushforward misses 1");
          continue;
        }
        ++pushed;
        const SubgroupFilter pf = pushforward(q.projection, fx, ql);
        if (!(pf == principal_filter(ql, q.projection(x)))) return fail(r, {nn, x}, "f_*(F_x) != F_f(x)");
        if (!is_ultrafilter(pf).ultra) return fail(r, {nn, x}, "pushforward not ultra");
      }
    }
    r.detail = "pushforwards=" + std::to_string(pushed) + " degenerate=" + std::to_string(degenerate);
  });

  if (l.size() <= kGenerateLimit)
    e.run("generate-least", name, "-", [&](CheckReport& r) {
      const int m = l.size();
      const auto subs = member_list(l);
      const auto systems = oracle::all_toposystems(g, subs);
      // verify_toposys against the oracle on every candidate.
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << std::max(0, m - 2)); ++mask) {
        IndexSet s(m);
        s.insert(0);
        s.insert(m - 1);
        for (int i = 1; i < m - 1; ++i)
          if ((mask >> (i - 1)) & 1U) s.insert(i);
        const bool ours = verify_toposys(l, s).passed;
        const bool theirs = std::find(systems.begin(), systems.end(), s) != systems.end();
        if (ours != theirs) return fail(r, s.to_vector(), "verify_toposys=" + yes_no(ours) + " oracle=" + yes_no(theirs));
      }
      int seeds = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          const IndexSet seed(m, {a, b});
          const TopoSystem gen = generate_toposys(d.lattice, seed);
          IndexSet least = IndexSet::full(m);
          for (const auto& s : systems)
            if (seed.is_subset_of(s)) least = least & s;
          if (gen.members() != least) return fail(r, {a, b}, "generated " + gen.members().to_string() + " least " + least.to_string());
          ++seeds;
        }
      r.detail = "systems=" + std::to_string(systems.size()) + " seeds=" + std::to_string(seeds);
    });
}

// ---------------------------------------------------------------------------
// (group, system) checks

struct Continuity {
  TheoremReport report;
  int maps = 0;
  int skipped_quotients = 0;  // q not a topomorphism for the quotient system
};

void system_checks(const GroupData& d, const TopoDescriptor& td, bool user_system, Emitter& e) {
  const FiniteGroup& g = *d.group;
  const SubgroupLattice& l = *d.lattice;
  const int n = g.order();
  const int m = l.size();
  const std::string sys = td.to_string();

  std::optional<TopoSystem> built;
  std::optional<Error> build_error;
  try {
    built.emplace(build_toposys(d.lattice, td, d.aut.get()));
  } catch (const Error& err) {
    build_error = err;
  }
  if (!built) {
    // A user-supplied descriptor that names a subgroup this group lacks is
    // not applicable here; anything else is a failed construction.
    CheckReport r{"toposys-axioms", d.name, sys, Status::Fail, {}, build_error->what(), 0};
    const bool inapplicable = user_system && build_error->code() == ErrorCode::BadParameter &&
                              std::string_view(build_error->what()).find("not a topo-system") == std::string_view::npos;
    if (inapplicable) {
      r.status = Status::Finding;
      r.detail = std::string("skipped: ") + build_error->what();
    }
    r.witness = build_error->witness().empty() ? std::vector<int>{-1} : build_error->witness();
    e.add(std::move(r));
    return;
  }
  const TopoSystem& t = *built;

  e.run("toposys-axioms", d.name, sys, [&](CheckReport& r) {
    const auto report = verify_toposys(l, t.members());
    if (!report) return fail(r, report.witness, report.reason);
    r.detail = "topens=" + std::to_string(t.members().size());
    if (m <= kSystemOracleLimit) {
      if (!oracle::is_toposystem(g, member_list(l), t.members())) return fail(r, t.members().to_vector(), "oracle rejects");
      r.detail += " oracle=subfamilies";
    }
  });

  if (td.kind == TopoDescriptor::Kind::Normal)
    e.run("interior-core", d.name, sys, [&](CheckReport& r) {
      for (int x = 0; x < m; ++x) {
        const int in = interior_boundary(t, x).interior, c = core(l, x);
        if (in != c) return fail(r, {x, in, c}, "interior differs from core");
      }
      r.detail = "subgroups=" + std::to_string(m);
    });

  e.run("interior-properties", d.name, sys, [&](CheckReport& r) {
    std::vector<int> in(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) {
      const auto ib = interior_boundary(t, x);
      const int i = ib.interior;
      in[static_cast<std::size_t>(x)] = i;
      if (!t.contains(i) || !l.leq(i, x)) return fail(r, {x, i}, "interior not a topen inside X");
      if (interior_boundary(t, i).interior != i) return fail(r, {x, i}, "interior not idempotent");
      if (interior_elements(t, x) != l.members(i)) return fail(r, {x, i}, "element-wise interior differs");
      if (ib.boundary != (l.members(x) - l.members(i))) return fail(r, {x}, "boundary is not X minus interior");
      if (td.kind == TopoDescriptor::Kind::Discrete && (i != x || !ib.boundary.empty()))
        return fail(r, {x}, "discrete interior is not X");
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        if (l.leq(x, y) && !l.leq(in[static_cast<std::size_t>(x)], in[static_cast<std::size_t>(y)]))
          return fail(r, {x, y}, "interior not monotone");
  });

  std::vector<ClosedChecks> closed;
  auto closed_checks = [&]() -> const std::vector<ClosedChecks>& {
    if (closed.empty())
      for (int a = 0; a < m; ++a) closed.push_back(t_closed_checks(t, a));
    return closed;
  };

  e.run("closure-closed", d.name, sys, [&](CheckReport& r) {
    const auto& cc = closed_checks();
    if (!cc[0].t_closed || !cc[static_cast<std::size_t>(l.top())].t_closed) return fail(r, {0, l.top()}, "1 or G not T-closed");
    int not_closed = 0;
    std::vector<int> first;
    for (int x = 0; x < m; ++x) {
      const auto cl = closure_and_limits(t, x);
      if (!l.leq(x, cl.closure) || !cl.limit_points.is_subset_of(l.members(cl.closure)))
        return fail(r, {x, cl.closure}, "closure does not contain X and its limit points");
      if (!cc[static_cast<std::size_t>(cl.closure)].t_closed) {
        if (first.empty()) first = {x, cl.closure, *cc[static_cast<std::size_t>(cl.closure)].t_closed_witness};
        ++not_closed;
      }
    }
    // "X-bar is T-closed" does not survive on finite groups: a counterexample
    // is reported as a finding with (X, closure, stuck element).
    if (not_closed)
      return finding(r, first, std::to_string(not_closed) + " closures are not T-closed; first: X=#" +
                                   std::to_string(first[0]) + " closure=#" + std::to_string(first[1]) +
                                   " stuck element " + std::to_string(first[2]));
  });

  e.run("closed-intersections", d.name, sys, [&](CheckReport& r) {
    const auto& cc = closed_checks();
    int count = 0;
    for (int a = 0; a < m; ++a) {
      if (!cc[static_cast<std::size_t>(a)].t_closed) continue;
      ++count;
      for (int b = a + 1; b < m; ++b)
        if (cc[static_cast<std::size_t>(b)].t_closed && !cc[static_cast<std::size_t>(l.meet(a, b))].t_closed)
          return fail(r, {a, b, l.meet(a, b)}, "intersection of T-closed subgroups not T-closed");
    }
    r.detail = "t-closed=" + std::to_string(count);
  });

  e.run("prime-order", d.name, sys, [&](CheckReport& r) {
    const auto& cc = closed_checks();
    std::optional<ElementId> not_closed, not_prime;
    for (ElementId x = 1; x < n; ++x) {
      if (!not_closed && !cc[static_cast<std::size_t>(l.cyclic(x))].t_closed) not_closed = x;
      if (!not_prime && !is_prime(g.element_order(x))) not_prime = x;
    }
    const bool premise = !not_closed;
    if (premise && not_prime)
      return fail(r, {*not_prime}, "all cyclic subgroups T-closed but element of order " +
                                       std::to_string(g.element_order(*not_prime)));
    if (premise && n > 1) r.detail = "instance=positive";
    else if (premise) r.detail = "instance=vacuous";
    else r.detail = "premise fails at x=" + std::to_string(*not_closed);
  });

  std::optional<HausdorffResult> haus;
  auto hausdorff = [&]() -> const HausdorffResult& {
    if (!haus) haus = is_hausdorff(t);
    return *haus;
  };

  e.run("weak-closed", d.name, sys, [&](CheckReport& r) {
    if (!hausdorff().hausdorff) {
      r.detail = "not hausdorff";
      return;
    }
    const auto& cc = closed_checks();
    for (int a = 0; a < m; ++a)
      if (!cc[static_cast<std::size_t>(a)].weak_t_closed)
        return fail(r, {a, *cc[static_cast<std::size_t>(a)].weak_witness}, "hausdorff but not weak T-closed");
    r.detail = "hausdorff; all " + std::to_string(m) + " weak T-closed";
  });

  const bool need_theorems =
      e.selected("compactness") || e.selected("hausdorff-equivalence") || e.selected("continuity");
  std::optional<TheoremReport> theorems;
  Continuity cont;
  // Maps out of T kept alive for the continuity check.
  std::deque<QuotientToposys> quotients;
  std::deque<InducedToposys> induced;
  if (need_theorems) {
    std::vector<TopoMap> maps;
    if (e.selected("continuity")) {
      maps.push_back({identity_homomorphism(d.group), &t, &t, "identity"});
      for (int nn = 0; nn < m; ++nn) {
        if (!is_normal(l, nn)) continue;
        quotients.push_back(quotient_toposys(t, nn));
        const auto& q = quotients.back();
        if (!q.system) continue;
        if (!is_topomorphism(q.quotient.projection, t, *q.system).continuous) {
          ++cont.skipped_quotients;
          continue;
        }
        maps.push_back({q.quotient.projection, &t, &*q.system, "quotient by #" + std::to_string(nn)});
      }
      cont.maps = static_cast<int>(maps.size());
    }
    theorems = theorem_checks(t, maps);
  }

  e.run("compactness", d.name, sys, [&](CheckReport& r) {
    if (!theorems->compactness)
      return fail(r, {theorems->nonconvergent.value_or(-1)}, theorems->failure);
    std::vector<int> cover = t.members().to_vector();
    const auto cert = find_finite_subcover(t, l.top(), cover);
    if (!cert || !cert->compact) return fail(r, {l.top()}, "no finite subcover of the full topen cover");
    ElementSet u;
    for (int i : cert->subcover) u |= l.members(i);
    if (!g.all().is_subset_of(u)) return fail(r, cert->subcover, "subcover does not cover G");
    r.detail = "ultrafilters=" + std::to_string(theorems->ultrafilters) +
               " subcover=" + std::to_string(cert->subcover.size());
  });

  e.run("hausdorff-equivalence", d.name, sys, [&](CheckReport& r) {
    const auto& th = *theorems;
    std::string detail = "hausdorff=" + yes_no(th.hausdorff);
    if (th.two_points)
      detail += " two-point=F#" + std::to_string(*th.two_point_filter) + "->(" + std::to_string(th.two_points->first) +
                "," + std::to_string(th.two_points->second) + ")";
    if (!th.hausdorff_equivalence) {
      std::vector<int> w;
      if (th.two_points) w = {*th.two_point_filter, th.two_points->first, th.two_points->second};
      else if (const auto& hw = hausdorff().witness) w = {hw->x, hw->y};
      return fail(r, w, th.failure + "; " + detail);
    }
    r.detail = detail;
  });

  e.run("continuity", d.name, sys, [&](CheckReport& r) {
    const auto& th = *theorems;
    if (!th.continuity) return fail(r, {th.continuity_checks}, th.failure);
    int checks = th.continuity_checks, degenerate = th.degenerate_pushforwards, inclusions = 0;
    // Inclusions H -> G with the induced system on H.
    for (int h = 1; h < m - 1; ++h) {
      induced.push_back(induced_toposys(t, h));
      const auto& ind = induced.back();
      if (!is_topomorphism(ind.inclusion, ind.system, t).continuous)
        return fail(r, {h}, "inclusion is not a topomorphism for the induced system");
      const auto sub = theorem_checks(ind.system, {TopoMap{ind.inclusion, &ind.system, &t, "inclusion"}});
      if (!sub.continuity) return fail(r, {h}, sub.failure);
      checks += sub.continuity_checks;
      degenerate += sub.degenerate_pushforwards;
      ++inclusions;
    }
    r.detail = "maps=" + std::to_string(cont.maps + inclusions) + " checks=" + std::to_string(checks) +
               " degenerate=" + std::to_string(degenerate) +
               " quotients-not-topomorphic=" + std::to_string(cont.skipped_quotients);
  });

  e.run("quotient-probe", d.name, sys, [&](CheckReport& r) {
    int normals = 0, verified = 0, violations = 0, discontinuous = 0;
    std::vector<int> first;
    std::string first_reason;
    for (int nn = 0; nn < m; ++nn) {
      if (!is_normal(l, nn)) continue;
      ++normals;
      const auto q = quotient_toposys(t, nn);
      if (!q.report.passed) {
        if (q.report.witness.empty()) return fail(r, {nn}, "quotient axiom failure without a witness");
        ++violations;
        if (first.empty()) {
          first = {nn};
          first.insert(first.end(), q.report.witness.begin(), q.report.witness.end());
          first_reason = "N=#" + std::to_string(nn) + ": " + q.report.reason;
        }
        continue;
      }
      ++verified;
      if (!is_topomorphism(q.quotient.projection, t, *q.system).continuous) {
        ++discontinuous;
        if (first.empty()) {
          const auto off = is_topomorphism(q.quotient.projection, t, *q.system).offending;
          first = {nn, off.value_or(-1)};
          first_reason = "N=#" + std::to_string(nn) + ": natural map not a topomorphism";
        }
      }
    }
    r.detail = "normals=" + std::to_string(normals) + " verified=" + std::to_string(verified) +
               " violations=" + std::to_string(violations) + " q-discontinuous=" + std::to_string(discontinuous);
    if (!first.empty()) finding(r, first, r.detail + "; first " + first_reason);
  });

  e.run("star-topology", d.name, sys, [&](CheckReport& r) {
    const auto s = star_topology_checks(t);
    if (!s.passed()) return fail(r, s.witness, s.failure);
    r.detail = "pairs=" + std::to_string(s.pairs_checked) + " traces=" + std::to_string(s.traces_checked);
  });
}

// ---------------------------------------------------------------------------
// product checks

void product_checks(const std::string& name, const std::vector<std::string>& factor_names,
                    const std::vector<TopoDescriptor>& user_systems, Emitter& e) {
  std::vector<GroupPtr> factors;
  std::vector<LatticePtr> lattices;
  for (const auto& f : factor_names) {
    factors.push_back(build_group(f));
    lattices.push_back(enumerate_subgroups(factors.back()));
  }
  const ProductGroup p = direct_product(factors);
  const LatticePtr pl = enumerate_subgroups(p.group);

  e.run("product-identities", name, "-", [&](CheckReport& r) {
    const auto rep = product_identities_check(p, *pl, lattices);
    if (!rep.passed()) return fail(r, rep.witness, rep.failure);
    r.detail = "meets=" + std::to_string(rep.meet_cases) + " joins=" + std::to_string(rep.join_cases);
  });

  e.run("tychonoff", name, "*", [&](CheckReport& r) {
    // Distinct systems per factor (descriptors that coincide on a small
    // factor give one system).
    std::vector<std::vector<TopoSystem>> per_factor;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::vector<TopoSystem> list;
      const auto descs = user_systems.empty() ? catalog_systems(*lattices[i]) : user_systems;
      for (const auto& td : descs) {
        std::optional<TopoSystem> s;
        try {
          s.emplace(build_toposys(lattices[i], td));
        } catch (const Error& err) {
          if (err.code() == ErrorCode::BadParameter && !user_systems.empty()) continue;
          throw;
        }
        const bool dup = std::any_of(list.begin(), list.end(), [&](const TopoSystem& o) { return o.members() == s->members(); });
        if (!dup) list.push_back(*s);
      }
      per_factor.push_back(std::move(list));
    }
    const auto ufs = enumerate_ultrafilters(pl);
    int combos = 0, certificates = 0, degenerate = 0, topens = 0;
    std::vector<std::size_t> pick(factors.size(), 0);
    for (;;) {
      std::vector<TopoSystem> chosen;
      for (std::size_t i = 0; i < pick.size(); ++i) chosen.push_back(per_factor[i][pick[i]]);
      const ProductToposys ps = product_toposys(p, pl, chosen);
      std::vector<int> combo(pick.begin(), pick.end());
      std::vector<TopoMap> projections;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!is_topomorphism(p.projections[i], ps.system, ps.factors[i]).continuous) {
          combo.push_back(static_cast<int>(i));
          return fail(r, combo, "projection " + std::to_string(i) + " is not a topomorphism");
        }
        projections.push_back({p.projections[i], &ps.system, &ps.factors[i], "pi" + std::to_string(i)});
      }
      // F -> x implies (pi_i)_*(F) -> x_i.
      if (const auto th = theorem_checks(ps.system, projections); !th.passed())
        return fail(r, combo, th.failure);
      for (std::size_t u = 0; u < ufs.size(); ++u) {
        TychonoffCertificate cert;
        try {
          cert = tychonoff_certificate(p, ps, ufs[u]);
        } catch (const Error& err) {
          combo.push_back(static_cast<int>(u));
          return fail(r, combo, err.what());
        }
        if (!converges_to(ufs[u], ps.system, cert.point).converges) {
          combo.push_back(static_cast<int>(u));
          return fail(r, combo, "certificate point is not a limit");
        }
        ++certificates;
        topens += static_cast<int>(cert.topens.size());
        for (const auto& step : cert.factors) degenerate += step.degenerate;
      }
      ++combos;
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == per_factor[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
    r.detail = "systems=" + std::to_string(combos) + " ultrafilters=" + std::to_string(ufs.size()) +
               " certificates=" + std::to_string(certificates) + " topen-steps=" + std::to_string(topens) +
               " degenerate-factors=" + std::to_string(degenerate);
  });
}

// ---------------------------------------------------------------------------
// cells

enum class CellKind { Group = 0, System = 1, Product = 2 };

struct Cell {
  long long order = 0;
  std::string group;
  CellKind kind = CellKind::Group;
  std::string system;  // System cells
  std::optional<TopoDescriptor> descriptor;
  std::vector<std::string> factors;  // Product cells
  std::size_t data = 0;              // index into the group data
};

bool cell_less(const Cell& a, const Cell& b) {
  return std::tie(a.order, a.group, a.kind, a.system) < std::tie(b.order, b.group, b.kind, b.system);
}

std::vector<std::string> factor_names(const GroupDescriptor& d) {
  std::vector<std::string> out;
  for (const auto& f : d.factors) out.push_back(f.to_string());
  return out;
}

}  // namespace

void SuiteConfig::validate() const {
  if (max_group_order < 1 || max_group_order > kMaxOrder)
    throw Error(ErrorCode::OrderCapExceeded, "max order must be in 1.." + std::to_string(kMaxOrder), {max_group_order});
  if (jobs < 1) throw Error(ErrorCode::BadParameter, "jobs must be positive", {jobs});
  for (const auto& g : groups) {
    const auto d = GroupDescriptor::parse(g);
    if (d.order() > max_group_order)
      throw Error(ErrorCode::OrderCapExceeded, g + " exceeds max order " + std::to_string(max_group_order),
                  {static_cast<int>(d.order())});
  }
  for (const auto& s : systems) TopoDescriptor::parse(s);
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw Error(ErrorCode::UnknownKind, "unknown suite '" + s + "'");
}

SuiteConfig load_config(std::istream& in, SuiteConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Whole-line comments only: '#' also starts subgroup literals.
    if (const std::string t = trim(line); t.empty() || t.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": expected key=value");
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    auto number = [&](const std::string& text) {
      try {
        std::size_t used = 0;
        const int x = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return x;
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": bad number '" + text + "'");
      }
    };
    if (k == "max_order" || k == "max_group_order") base.max_group_order = number(v);
    else if (k == "groups") base.groups = split(v, ';');
    else if (k == "systems" || k == "toposys") base.systems = split(v, ';');
    else if (k == "suites" || k == "suite") base.suites = split(v, ',');
    else if (k == "jobs") base.jobs = number(v);
    else if (k == "format") {
      if (v != "json" && v != "text")
        throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": format must be json or text");
      base.json = v == "json";
    } else if (k == "timing") {
      if (v != "true" && v != "false" && v != "1" && v != "0")
        throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": timing must be true or false");
      base.timing = v == "true" || v == "1";
    } else {
      throw Error(ErrorCode::UnknownKind, "config line " + std::to_string(lineno) + ": unknown key '" + k + "'");
    }
  }
  return base;
}

SuiteSummary run_suite(const SuiteConfig& config) {
  config.validate();

  std::vector<TopoDescriptor> user_systems;
  for (const auto& s : config.systems) user_systems.push_back(TopoDescriptor::parse(s));

  std::vector<std::string> group_names = config.groups;
  std::vector<std::vector<std::string>> products;
  if (group_names.empty()) {
    group_names = catalog_groups(config.max_group_order);
    for (auto& f : catalog_products()) {
      long long order = 1;
      bool fits = true;
      for (const auto& x : f) {
        const long long k = GroupDescriptor::parse(x).order();
        order *= k;
        fits = fits && k <= config.max_group_order;
      }
      if (fits && order <= kProductOrderLimit) products.push_back(f);
    }
  } else {
    for (const auto& gname : group_names) {
      const auto d = GroupDescriptor::parse(gname);
      if (d.kind == GroupDescriptor::Kind::Product) products.push_back(factor_names(d));
    }
  }

  // Group data is shared by every cell of a group; build it up front.
  std::vector<GroupData> data;
  std::vector<Cell> cells;
  for (const auto& gname : group_names) {
    GroupData gd;
    gd.group = build_group(gname, kMaxOrder);
    gd.name = gd.group->descriptor().to_string();
    gd.lattice = enumerate_subgroups(gd.group);
    if (gd.group->order() <= kAutomorphismOrderCap)
      gd.aut = std::make_shared<const AutomorphismSet>(automorphisms(gd.group));
    const long long order = gd.group->order();
    const std::size_t idx = data.size();
    cells.push_back({order, gd.name, CellKind::Group, "", std::nullopt, {}, idx});
    const auto systems = user_systems.empty() ? catalog_systems(*gd.lattice) : user_systems;
    std::set<std::string> seen;
    for (const auto& td : systems)
      if (seen.insert(td.to_string()).second) cells.push_back({order, gd.name, CellKind::System, td.to_string(), td, {}, idx});
    data.push_back(std::move(gd));
  }
  for (const auto& f : products) {
    std::string label = "product(";
    long long order = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      label += (i ? "," : "") + GroupDescriptor::parse(f[i]).to_string();
      order *= GroupDescriptor::parse(f[i]).order();
    }
    label += ")";
    cells.push_back({order, label, CellKind::Product, "*", std::nullopt, f, 0});
  }
  std::stable_sort(cells.begin(), cells.end(), cell_less);

  std::vector<std::vector<CheckReport>> results(cells.size());
  auto work = [&](std::size_t i) {
    Emitter e(config);
    const Cell& c = cells[i];
    switch (c.kind) {
      case CellKind::Group: group_checks(data[c.data], e); break;
      case CellKind::System: system_checks(data[c.data], *c.descriptor, !user_systems.empty(), e); break;
      case CellKind::Product:
        try {
          product_checks(c.group, c.factors, user_systems, e);
        } catch (const Error& err) {
          e.run(e.selected("tychonoff") ? "tychonoff" : "product-identities", c.group, "*",
                [&](CheckReport& r) { fail(r, err.witness().empty() ? std::vector<int>{-1} : err.witness(), err.what()); });
        }
        break;
    }
    results[i] = std::move(e.reports());
  };

  const int jobs = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) work(i);
      });
  }

  SuiteSummary summary;
  for (auto& rs : results)
    for (auto& r : rs) {
      switch (r.status) {
        case Status::Pass: ++summary.passed; break;
        case Status::Fail: ++summary.failed; break;
        case Status::Finding: ++summary.findings; break;
      }
      summary.reports.push_back(std::move(r));
    }
  return summary;
}

std::string to_json_line(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["group"] = r.group;
  j["toposys"] = r.toposys;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.witness);
  j["detail"] = r.detail;
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

std::string to_text_line(const CheckReport& r) {
  std::ostringstream os;
  std::string status(to_string(r.status));
  std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
  os << status << ' ' << r.check << ' ' << r.group << ' ' << r.toposys;
  if (!r.witness.empty()) {
    os << " witness=[";
    for (std::size_t i = 0; i < r.witness.size(); ++i) os << (i ? "," : "") << r.witness[i];
    os << ']';
  }
  if (!r.detail.empty()) os << "  " << r.detail;
  if (r.elapsed_ms) os << "  (" << r.elapsed_ms << " ms)";
  return os.str();
}

std::string summary_line(const SuiteSummary& s, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    j["summary"] = {{"pass", s.passed}, {"fail", s.failed}, {"finding", s.findings}};
    return j.dump();
  }
  return "summary: " + std::to_string(s.passed) + " pass, " + std::to_string(s.failed) + " fail, " +
         std::to_string(s.findings) + " finding";
}

}  // namespace topo
