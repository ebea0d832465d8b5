#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "topogrp/catalog.hpp"
#include "topogrp/filters.hpp"
#include "topogrp/product.hpp"
#include "topogrp/suite.hpp"

using namespace topo;
using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string group;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

std::string names(const FiniteGroup& g, ElementSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](ElementId x) {
    out += (first ? "" : ",") + std::string(g.name(x));
    first = false;
  });
  return out + "}";
}

// Element by id or by name ("(123)", "-i", ...).
ElementId parse_element(const FiniteGroup& g, const std::string& text) {
  if (const ElementId named = g.find(text); named >= 0) return named;
  try {
    std::size_t used = 0;
    const int x = std::stoi(text, &used);
    if (used == text.size() && x >= 0 && x < g.order()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::BadParameter, "no element '" + text + "' in " + g.descriptor().to_string());
}

// "#1,#3" or "1,3"
IndexSet parse_indices(const SubgroupLattice& l, const std::string& text) {
  IndexSet s = l.empty_set();
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const int i = SubgroupRef::parse(item.starts_with('#') ? item : "#" + item).resolve(l);
    s.insert(i);
  }
  return s;
}

// An ultrafilter's kernel is cyclic; its least generator names it.
ElementId least_generator(const SubgroupLattice& l, int k) {
  for (ElementId x = 1; x < l.group().order(); ++x)
    if (l.cyclic(x) == k) return x;
  return 0;
}

std::vector<int> to_ints(const IndexSet& s) { return s.to_vector(); }
std::vector<int> to_ints(ElementSet s) { return s.to_vector(); }

struct Context {
  GroupPtr group;
  LatticePtr lattice;
};

Context load(const std::string& descriptor) {
  Context c;
  c.group = build_group(descriptor);
  c.lattice = enumerate_subgroups(c.group);
  return c;
}

TopoSystem load_system(const Context& c, const std::string& sys) {
  return build_toposys(c.lattice, TopoDescriptor::parse(sys));
}

// Filter literal: principal:x | generated:#i,#j,... | cofinite
SubgroupFilter parse_filter(const Context& c, const std::string& text, std::vector<std::string>& notes) {
  if (text.starts_with("principal:")) return principal_filter(c.lattice, parse_element(*c.group, text.substr(10)));
  if (text.starts_with("generated:")) return generate_filter(c.lattice, parse_indices(*c.lattice, text.substr(10)));
  if (text == "cofinite") {
    notes.push_back("cofinite on a finite group: every subset is cofinite, so the family is all of Sub*");
    IndexSet all = IndexSet::full(c.lattice->size());
    all.erase(c.lattice->trivial());
    try {
      return generate_filter(c.lattice, all);
    } catch (const Error& e) {
      // Sub* is a filter only when G has a single minimal subgroup.
      if (e.code() != ErrorCode::NoFip) throw;
      throw Error(ErrorCode::NoFip, "cofinite = Sub* on a finite group, which is no filter here: two subgroups meet trivially",
                  e.witness());
    }
  }
  throw Error(ErrorCode::ParseError, "filter must be principal:x, generated:#i,... or cofinite, got '" + text + "'");
}

void emit(const Common& o, const json& j, const std::string& text) {
  if (o.json()) std::cout << j.dump() << '\n';
  else std::cout << text;
}

// ---------------------------------------------------------------------------

int cmd_lattice(const Common& o) {
  const Context c = load(o.group);
  const SubgroupLattice& l = *c.lattice;
  json j{{"group", c.group->descriptor().to_string()}, {"order", c.group->order()}, {"subgroups", json::array()}};
  std::ostringstream t;
  t << c.group->descriptor().to_string() << ": order " << c.group->order() << ", " << l.size() << " subgroups\n";
  for (int i = 0; i < l.size(); ++i) {
    const bool normal = is_normal(l, i);
    j["subgroups"].push_back({{"index", i},
                              {"order", l.order(i)},
                              {"members", to_ints(l.members(i))},
                              {"normal", normal},
                              {"upper_covers", l.upper_covers(i)}});
    t << "  #" << i << "  order " << l.order(i) << (normal ? "  normal " : "         ") << names(*c.group, l.members(i))
      << "\n";
  }
  emit(o, j, t.str());
  return 0;
}

int cmd_toposys(const Common& o, const std::string& sys, const std::string& members, bool verify) {
  const Context c = load(o.group);
  const SubgroupLattice& l = *c.lattice;
  if (sys.empty() == members.empty()) throw Error(ErrorCode::BadParameter, "give exactly one of --sys or --members");
  IndexSet set = l.empty_set();
  std::vector<std::string> notes;
  std::string label = sys.empty() ? "members" : sys;
  if (!sys.empty()) {
    const TopoSystem t = load_system(c, sys);
    set = t.members();
    notes = t.notes();
  } else {
    set = parse_indices(l, members);
  }
  const ValidationReport report = verify_toposys(l, set);
  json j{{"group", c.group->descriptor().to_string()}, {"toposys", label}, {"topens", to_ints(set)}, {"notes", notes}};
  std::ostringstream t;
  t << label << " on " << c.group->descriptor().to_string() << ": " << set.size() << " topens\n";
  set.for_each([&](int i) { t << "  #" << i << " " << names(*c.group, l.members(i)) << "\n"; });
  for (const auto& n : notes) t << "note: " << n << "\n";
  if (verify) {
    j["verify"] = {{"passed", report.passed}, {"reason", report.reason}, {"witness", report.witness}};
    t << (report.passed ? "PASS" : "FAIL");
    if (!report.passed) {
      t << " " << report.reason << " witness=[";
      for (std::size_t i = 0; i < report.witness.size(); ++i) t << (i ? "," : "") << report.witness[i];
      t << "]";
    }
    t << "\n";
  }
  emit(o, j, t.str());
  return verify && !report.passed ? 1 : 0;
}

int cmd_closure(const Common& o, const std::string& sys, const std::string& subgroup) {
  const Context c = load(o.group);
  const SubgroupLattice& l = *c.lattice;
  const TopoSystem t = load_system(c, sys);
  const int x = SubgroupRef::parse(subgroup).resolve(l);
  const auto ib = interior_boundary(t, x);
  const auto cl = closure_and_limits(t, x);
  const auto cc = t_closed_checks(t, x);
  json j{{"group", c.group->descriptor().to_string()},
         {"toposys", sys},
         {"subgroup", x},
         {"interior", ib.interior},
         {"boundary", to_ints(ib.boundary)},
         {"limit_points", to_ints(cl.limit_points)},
         {"closure", cl.closure},
         {"t_closed", cc.t_closed},
         {"weak_t_closed", cc.weak_t_closed}};
  j["t_closed_witness"] = cc.t_closed_witness ? json(*cc.t_closed_witness) : json(nullptr);
  j["weak_witness"] = cc.weak_witness ? json(*cc.weak_witness) : json(nullptr);
  std::ostringstream s;
  const FiniteGroup& g = *c.group;
  s << "X = #" << x << " " << names(g, l.members(x)) << "\n"
    << "interior      #" << ib.interior << " " << names(g, l.members(ib.interior)) << "\n"
    << "boundary      " << names(g, ib.boundary) << "\n"
    << "limit points  " << names(g, cl.limit_points) << "\n"
    << "closure       #" << cl.closure << " " << names(g, l.members(cl.closure)) << "\n"
    << "T-closed      " << (cc.t_closed ? "yes" : "no");
  if (cc.t_closed_witness) s << " (stuck at " << g.name(*cc.t_closed_witness) << ")";
  s << "\nweak T-closed " << (cc.weak_t_closed ? "yes" : "no");
  if (cc.weak_witness) s << " (stuck at " << g.name(*cc.weak_witness) << ")";
  s << "\n";
  emit(o, j, s.str());
  return 0;
}

int cmd_hausdorff(const Common& o, const std::string& sys) {
  const Context c = load(o.group);
  const TopoSystem t = load_system(c, sys);
  const auto h = is_hausdorff(t);
  json j{{"group", c.group->descriptor().to_string()}, {"toposys", sys}, {"hausdorff", h.hausdorff}};
  std::ostringstream s;
  s << "hausdorff: " << (h.hausdorff ? "yes" : "no") << "\n";
  if (h.witness) {
    const auto& w = *h.witness;
    j["witness"] = {{"x", w.x}, {"y", w.y}, {"a", w.a}, {"b", w.b}};
    s << "inseparable " << c.group->name(w.x) << ", " << c.group->name(w.y) << ": smallest neighbourhoods #" << w.a
      << " and #" << w.b << " meet in " << names(*c.group, c.lattice->members(c.lattice->meet(w.a, w.b))) << "\n";
  } else {
    j["witness"] = nullptr;
  }
  emit(o, j, s.str());
  return 0;
}

int cmd_cover(const Common& o, const std::string& sys, const std::string& subgroup, const std::string& cover) {
  const Context c = load(o.group);
  const SubgroupLattice& l = *c.lattice;
  const TopoSystem t = load_system(c, sys);
  const int x = subgroup.empty() ? l.top() : SubgroupRef::parse(subgroup).resolve(l);
  const std::vector<int> family = cover.empty() ? t.members().to_vector() : parse_indices(l, cover).to_vector();
  const auto cert = find_finite_subcover(t, x, family);
  json j{{"group", c.group->descriptor().to_string()}, {"toposys", sys}, {"subgroup", x}, {"cover", family}};
  std::ostringstream s;
  if (!cert) {
    j["subcover"] = nullptr;
    s << "the family does not cover #" << x << "\n";
    emit(o, j, s.str());
    return 1;
  }
  j["subcover"] = cert->subcover;
  j["exact"] = cert->exact;
  j["compact"] = cert->compact;
  s << "subcover of size " << cert->subcover.size() << (cert->exact ? " (minimum)" : " (greedy)") << ":";
  for (int i : cert->subcover) s << " #" << i;
  s << "\n";
  emit(o, j, s.str());
  return 0;
}

int cmd_filters(const Common& o, const std::string& filter) {
  const Context c = load(o.group);
  const SubgroupLattice& l = *c.lattice;
  json j{{"group", c.group->descriptor().to_string()}};
  std::ostringstream s;
  if (filter.empty()) {
    const auto ufs = enumerate_ultrafilters(c.lattice);
    j["ultrafilters"] = json::array();
    j["note"] = "derived lemma: every subgroup ultrafilter on a finite group is principal";
    s << ufs.size() << " ultrafilters (derived lemma: all principal)\n";
    for (const auto& f : ufs) {
      const int k = f.kernel();
      const ElementId x = least_generator(l, k);
      j["ultrafilters"].push_back({{"point", x}, {"kernel", k}, {"members", to_ints(f.members())}});
      s << "  F_" << c.group->name(x) << " = " << f.members().to_string() << "\n";
    }
    emit(o, j, s.str());
    return 0;
  }
  std::vector<std::string> notes;
  const SubgroupFilter f = parse_filter(c, filter, notes);
  const auto u = is_ultrafilter(f);
  const SubgroupFilter ext = extend_to_ultrafilter(f);
  j["filter"] = filter;
  j["members"] = to_ints(f.members());
  j["kernel"] = f.kernel();
  j["ultra"] = u.ultra;
  j["ultra_witness"] = u.witness ? json(*u.witness) : json(nullptr);
  j["extension"] = to_ints(ext.members());
  j["notes"] = notes;
  s << filter << " = " << f.members().to_string() << ", kernel #" << f.kernel() << "\n"
    << "ultra: " << (u.ultra ? "yes" : "no");
  if (u.witness) s << " (#" << *u.witness << " is a union of non-members)";
  s << "\nextension: " << ext.members().to_string() << "\n";
  for (const auto& n : notes) s << "note: " << n << "\n";
  emit(o, j, s.str());
  return 0;
}

int cmd_converge(const Common& o, const std::string& sys, const std::string& filter, const std::string& point) {
  const Context c = load(o.group);
  const TopoSystem t = load_system(c, sys);
  std::vector<std::string> notes;
  const SubgroupFilter f = parse_filter(c, filter, notes);
  json j{{"group", c.group->descriptor().to_string()}, {"toposys", sys}, {"filter", filter}, {"notes", notes}};
  std::ostringstream s;
  if (!point.empty()) {
    const ElementId y = parse_element(*c.group, point);
    const auto cert = converges_to(f, t, y);
    j["point"] = y;
    j["converges"] = cert.converges;
    j["checked"] = cert.checked;
    j["offending"] = cert.offending ? json(*cert.offending) : json(nullptr);
    s << filter << " -> " << c.group->name(y) << ": " << (cert.converges ? "yes" : "no");
    if (cert.offending) s << " (topen #" << *cert.offending << " not in F)";
    s << "\n";
  } else {
    const auto classes = convergence_set(f, t);
    j["convergence_classes"] = classes;
    s << filter << " converges to " << classes.size() << " cyclic classes:";
    for (const auto& cl : classes) {
      s << " {";
      for (std::size_t i = 0; i < cl.size(); ++i) s << (i ? "," : "") << c.group->name(cl[i]);
      s << "}";
    }
    s << "\n";
  }
  emit(o, j, s.str());
  return 0;
}

// "T1,T2": a comma starts a new factor unless the next token is a '#'
// continuation of generated:#i,#j.
std::vector<std::string> split_systems(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (ch == ',' && depth == 0 && (i + 1 >= text.size() || text[i + 1] != '#')) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

int cmd_product(const Common& o, const std::string& sys) {
  const GroupDescriptor d = GroupDescriptor::parse(o.group);
  if (d.kind != GroupDescriptor::Kind::Product) throw Error(ErrorCode::BadParameter, "--group must be product(D1,D2,...)");
  const auto systems = split_systems(sys);
  if (systems.size() != d.factors.size())
    throw Error(ErrorCode::BadParameter, "need one system per factor, got " + std::to_string(systems.size()));
  std::vector<GroupPtr> factors;
  std::vector<TopoSystem> factor_systems;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    factors.push_back(build_group(d.factors[i]));
    factor_systems.push_back(build_toposys(enumerate_subgroups(factors.back()), TopoDescriptor::parse(systems[i])));
  }
  const ProductGroup p = direct_product(factors);
  const LatticePtr pl = enumerate_subgroups(p.group);
  const ProductToposys ps = product_toposys(p, pl, factor_systems);
  json j{{"group", d.to_string()}, {"toposys", sys}, {"topens", to_ints(ps.system.members())}};
  std::ostringstream s;
  s << d.to_string() << " with " << sys << ": " << ps.system.members().size() << " product topens\n";
  bool ok = true;
  j["projections_continuous"] = json::array();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const bool cont = is_topomorphism(p.projections[i], ps.system, ps.factors[i]).continuous;
    ok = ok && cont;
    j["projections_continuous"].push_back(cont);
    s << "projection " << i << ": " << (cont ? "topomorphism" : "NOT a topomorphism") << "\n";
  }
  j["certificates"] = json::array();
  for (const auto& f : enumerate_ultrafilters(pl)) {
    const ElementId x = least_generator(*pl, f.kernel());
    try {
      const auto cert = tychonoff_certificate(p, ps, f);
      json steps = json::array();
      for (const auto& st : cert.factors) steps.push_back({{"point", st.point}, {"degenerate", st.degenerate}, {"ultra", st.ultra}});
      j["certificates"].push_back({{"ultrafilter", x}, {"point", cert.point}, {"factors", steps}, {"topens", cert.topens.size()}});
      s << "  F_" << p.group->name(x) << " -> " << p.group->name(cert.point) << " (" << cert.topens.size()
        << " topens checked)\n";
    } catch (const Error& e) {
      ok = false;
      j["certificates"].push_back({{"ultrafilter", x}, {"error", e.what()}});
      s << "  F_" << p.group->name(x) << ": FAILED " << e.what() << "\n";
    }
  }
  emit(o, j, s.str());
  return ok ? 0 : 1;
}

int cmd_theorems(SuiteConfig cfg, const std::string& config_file, const std::optional<int>& max_order,
                 const std::vector<std::string>& suites, const std::vector<std::string>& groups,
                 const std::vector<std::string>& systems, const std::string& format, std::optional<int> jobs, bool timing) {
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw Error(ErrorCode::BadParameter, "cannot read config file " + config_file);
    cfg = load_config(in, cfg);
  }
  // Command-line flags override the file.
  if (max_order) cfg.max_group_order = *max_order;
  if (!suites.empty()) cfg.suites = suites;
  if (!groups.empty()) cfg.groups = groups;
  if (!systems.empty()) cfg.systems = systems;
  if (!format.empty()) cfg.json = format == "json";
  if (jobs) cfg.jobs = *jobs;
  if (timing) cfg.timing = true;
  cfg.validate();
  const SuiteSummary summary = run_suite(cfg);
  for (const auto& r : summary.reports) std::cout << (cfg.json ? to_json_line(r) : to_text_line(r)) << '\n';
  std::cout << summary_line(summary, cfg.json) << '\n';
  return summary.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topo-systems on finite groups"};
  app.require_subcommand(1);

  Common common;
  auto add_group = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--group,-g", common.group, "group descriptor, e.g. sym:3 or product(cyclic:2,cyclic:3)");
    if (required) opt->required();
    sub->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  std::string sys, members, subgroup, cover, filter, point;
  bool verify = false;

  auto* lattice = app.add_subcommand("lattice", "list the subgroup lattice");
  add_group(lattice);

  auto* toposys = app.add_subcommand("toposys", "build or verify a topo-system");
  add_group(toposys);
  toposys->add_option("--sys", sys, "system descriptor");
  toposys->add_option("--members", members, "explicit topens, e.g. #0,#2,#5");
  toposys->add_flag("--verify", verify, "run the axiom verifier");

  auto* closure = app.add_subcommand("closure", "interior, boundary, limit points, closure, T-closedness");
  add_group(closure);
  closure->add_option("--sys", sys, "system descriptor")->required();
  closure->add_option("--subgroup,-x", subgroup, "#k or gen{..}")->required();

  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff check with an inseparable pair");
  add_group(hausdorff);
  hausdorff->add_option("--sys", sys, "system descriptor")->required();

  auto* covercmd = app.add_subcommand("cover", "minimum finite subcover");
  add_group(covercmd);
  covercmd->add_option("--sys", sys, "system descriptor")->required();
  covercmd->add_option("--subgroup,-x", subgroup, "subgroup to cover (default G)");
  covercmd->add_option("--cover", cover, "topen family (default: all topens)");

  auto* filters = app.add_subcommand("filters", "ultrafilters, or one filter's properties");
  add_group(filters);
  filters->add_option("--filter", filter, "principal:x | generated:#i,#j | cofinite");

  auto* converge = app.add_subcommand("converge", "convergence of a filter");
  add_group(converge);
  converge->add_option("--sys", sys, "system descriptor")->required();
  converge->add_option("--filter", filter, "filter literal")->required();
  converge->add_option("--point", point, "element id or name; omit for the convergence set");

  auto* product = app.add_subcommand("product", "product system and compactness certificates");
  add_group(product);
  product->add_option("--sys", sys, "factor systems T1,T2")->required();

  SuiteConfig cfg;
  std::string config_file, format;
  std::optional<int> max_order, jobs;
  std::vector<std::string> suites, groups, systems;
  bool timing = false;
  auto* theorems = app.add_subcommand("theorems", "run check suites over the catalog");
  theorems->add_option("--suite", suites, "suite name (repeatable)")->check(CLI::IsMember(suite_names()));
  theorems->add_option("--max-order", max_order, "largest catalog group order");
  theorems->add_option("--group", groups, "restrict to these groups (repeatable)");
  theorems->add_option("--system", systems, "restrict to these systems (repeatable)");
  theorems->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  theorems->add_option("--config", config_file, "key=value config file");
  theorems->add_option("--jobs,-j", jobs, "worker threads");
  theorems->add_flag("--timing", timing, "record elapsed milliseconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lattice) return cmd_lattice(common);
    if (*toposys) return cmd_toposys(common, sys, members, verify);
    if (*closure) return cmd_closure(common, sys, subgroup);
    if (*hausdorff) return cmd_hausdorff(common, sys);
    if (*covercmd) return cmd_cover(common, sys, subgroup, cover);
    if (*filters) return cmd_filters(common, filter);
    if (*converge) return cmd_converge(common, sys, filter, point);
    if (*product) return cmd_product(common, sys);
    if (*theorems) return cmd_theorems(cfg, config_file, max_order, suites, groups, systems, format, jobs, timing);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " witness=[";
      for (std::size_t i = 0; i < e.witness().size(); ++i) std::cerr << (i ? "," : "") << e.witness()[i];
      std::cerr << "]";
    }
    std::cerr << '\n';
    return 2;
  }
  return 2;
}
