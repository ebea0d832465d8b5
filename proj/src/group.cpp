#include "topogrp/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace topo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::UnsupportedVariety: return "UnsupportedVariety";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NoFip: return "NoFip";
    case ErrorCode::IdentityNotAllowed: return "IdentityNotAllowed";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::NotAFilter: return "NotAFilter";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// descriptor grammar

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::ParseError, "expected integer in '" + std::string(context) + "'");
  return value;
}

// Splits "A,B" at top-level commas (ignoring commas nested in parentheses).
std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  text = trim(text);
  GroupDescriptor d;
  if (text.starts_with("product(")) {
    if (!text.ends_with(")"))
      throw Error(ErrorCode::ParseError, "unbalanced parentheses in '" + std::string(text) + "'");
    d.kind = Kind::Product;
    for (auto part : split_top_level(text.substr(8, text.size() - 9)))
      d.factors.push_back(parse(part));
    if (d.factors.empty())
      throw Error(ErrorCode::BadParameter, "product needs at least one factor");
    return d;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::UnknownKind, "'" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (kind == "cyclic") d.kind = Kind::Cyclic;
  else if (kind == "abelian") d.kind = Kind::Abelian;
  else if (kind == "dihedral") d.kind = Kind::Dihedral;
  else if (kind == "sym") d.kind = Kind::Symmetric;
  else if (kind == "alt") d.kind = Kind::Alternating;
  else if (kind == "quaternion") d.kind = Kind::Quaternion;
  else throw Error(ErrorCode::UnknownKind, "'" + std::string(kind) + "'");

  if (d.kind == Kind::Abelian) {
    std::size_t start = 0;
    while (true) {
      const auto x = arg.find('x', start);
      d.params.push_back(parse_int(arg.substr(start, x - start), text));
      if (x == std::string_view::npos) break;
      start = x + 1;
    }
  } else {
    d.params.push_back(parse_int(arg, text));
  }

  for (int p : d.params)
    if (p < 1) throw Error(ErrorCode::BadParameter, "non-positive parameter in '" + std::string(text) + "'");
  if ((d.kind == Kind::Symmetric || d.kind == Kind::Alternating) && d.params[0] > 4)
    throw Error(ErrorCode::OrderCapExceeded, "symmetric/alternating degree is capped at 4");
  if (d.kind == Kind::Quaternion && d.params[0] != 8)
    throw Error(ErrorCode::BadParameter, "only quaternion:8 is supported");
  return d;
}

std::string GroupDescriptor::to_string() const {
  switch (kind) {
    case Kind::Cyclic: return "cyclic:" + std::to_string(params[0]);
    case Kind::Abelian: {
      std::string s = "abelian:";
      for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "x" : "") + std::to_string(params[i]);
      return s;
    }
    case Kind::Dihedral: return "dihedral:" + std::to_string(params[0]);
    case Kind::Symmetric: return "sym:" + std::to_string(params[0]);
    case Kind::Alternating: return "alt:" + std::to_string(params[0]);
    case Kind::Quaternion: return "quaternion:8";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].to_string();
      return s + ")";
    }
    case Kind::Derived: return label;
  }
  return {};
}

long long GroupDescriptor::order() const {
  auto factorial = [](int n) { long long f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; };
  switch (kind) {
    case Kind::Cyclic: return params[0];
    case Kind::Abelian: {
      long long n = 1;
      for (int p : params) { n *= p; if (n > (1LL << 40)) return n; }
      return n;
    }
    case Kind::Dihedral: return 2LL * params[0];
    case Kind::Symmetric: return factorial(params[0]);
    case Kind::Alternating: return params[0] < 2 ? 1 : factorial(params[0]) / 2;
    case Kind::Quaternion: return 8;
    case Kind::Derived: return params[0];
    case Kind::Product: {
      long long n = 1;
      for (const auto& f : factors) { n *= f.order(); if (n > (1LL << 40)) return n; }
      return n;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<ElementId> table, int order, GroupDescriptor descriptor,
                         std::vector<std::string> names)
    : order_(order), table_(std::move(table)), descriptor_(std::move(descriptor)), names_(std::move(names)) {
  if (order_ < 1 || order_ > kMaxOrder)
    throw Error(ErrorCode::OrderCapExceeded, "group order " + std::to_string(order_));
  if (table_.size() != static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_))
    throw Error(ErrorCode::BadParameter, "Cayley table is not square");
  if (auto report = verify_group_axioms(table_, order_); !report)
    throw Error(ErrorCode::BadParameter, "not a group: " + report.reason, report.witness);

  inverse_.assign(static_cast<std::size_t>(order_), 0);
  for (ElementId a = 0; a < order_; ++a)
    for (ElementId b = 0; b < order_; ++b)
      if (mul(a, b) == 0) inverse_[static_cast<std::size_t>(a)] = b;

  element_order_.assign(static_cast<std::size_t>(order_), 1);
  for (ElementId a = 0; a < order_; ++a) {
    int n = 1;
    for (ElementId p = a; p != 0; p = mul(p, a)) ++n;
    element_order_[static_cast<std::size_t>(a)] = a == 0 ? 1 : n;
  }
  if (names_.size() != static_cast<std::size_t>(order_)) {
    names_.clear();
    for (ElementId a = 0; a < order_; ++a) names_.push_back(std::to_string(a));
  }
}

ElementId FiniteGroup::power(ElementId a, long long k) const {
  const int n = element_order(a);
  k %= n;
  if (k < 0) k += n;
  ElementId r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

ElementId FiniteGroup::find(std::string_view name) const {
  for (ElementId a = 0; a < order_; ++a)
    if (names_[static_cast<std::size_t>(a)] == name) return a;
  return -1;
}

ValidationReport verify_group_axioms(std::span<const ElementId> table, int n) {
  if (n < 1 || table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    return ValidationReport::fail("table is not n*n", {n});
  auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a * n + b)]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (at(a, b) < 0 || at(a, b) >= n) return ValidationReport::fail("product out of range", {a, b});
  for (int a = 0; a < n; ++a) {
    if (at(0, a) != a) return ValidationReport::fail("row 0 is not the identity map", {0, a});
    if (at(a, 0) != a) return ValidationReport::fail("column 0 is not the identity map", {a, 0});
  }
  for (int a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < n && !has_inverse; ++b) has_inverse = at(a, b) == 0 && at(b, a) == 0;
    if (!has_inverse) return ValidationReport::fail("element has no two-sided inverse", {a});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = at(a, b);
      for (int c = 0; c < n; ++c)
        if (at(ab, c) != at(a, at(b, c))) return ValidationReport::fail("associativity fails", {a, b, c});
    }
  return ValidationReport::pass();
}

// ---------------------------------------------------------------------------
// constructions

namespace {

using Perm = std::vector<int>;

std::vector<Perm> permutations_of(int n, bool even_only) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
      if (inversions % 2) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Cycle notation on points 1..n, e.g. "(123)"; identity is "()".
std::string cycle_name(const Perm& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      s += std::to_string(j + 1);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

GroupPtr permutation_group(const GroupDescriptor& d, bool even_only) {
  const int degree = d.params[0];
  const auto perms = permutations_of(degree, even_only);
  const int n = static_cast<int>(perms.size());
  std::vector<ElementId> table(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Perm c(static_cast<std::size_t>(degree));
      for (int i = 0; i < degree; ++i)
        c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      const auto it = std::find(perms.begin(), perms.end(), c);
      table[static_cast<std::size_t>(a * n + b)] = static_cast<ElementId>(it - perms.begin());
    }
  std::vector<std::string> names;
  for (const auto& p : perms) names.push_back(cycle_name(p));
  return std::make_shared<const FiniteGroup>(std::move(table), n, d, std::move(names));
}

GroupPtr abelian_group(const GroupDescriptor& d) {
  const auto& radix = d.params;
  int n = 1;
  for (int r : radix) n *= r;
  auto decode = [&](int x) {
    std::vector<int> digits(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
      digits[i] = x % radix[i];
      x /= radix[i];
    }
    return digits;
  };
  std::vector<ElementId> table(static_cast<std::size_t>(n * n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    const auto da = decode(a);
    for (int b = 0; b < n; ++b) {
      const auto db = decode(b);
      int c = 0;
      for (std::size_t i = 0; i < radix.size(); ++i) c = c * radix[i] + (da[i] + db[i]) % radix[i];
      table[static_cast<std::size_t>(a * n + b)] = c;
    }
    if (radix.size() == 1) {
      names.push_back(std::to_string(a));
    } else {
      std::string s = "(";
      for (std::size_t i = 0; i < da.size(); ++i) s += (i ? "," : "") + std::to_string(da[i]);
      names.push_back(s + ")");
    }
  }
  return std::make_shared<const FiniteGroup>(std::move(table), n, d, std::move(names));
}

GroupPtr dihedral_group(const GroupDescriptor& d) {
  const int m = d.params[0];
  const int n = 2 * m;
  // s^a r^b * s^c r^d = s^(a+c) r^((-1)^c b + d)
  std::vector<ElementId> table(static_cast<std::size_t>(n * n));
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    const int a = x / m, b = x % m;
    for (int y = 0; y < n; ++y) {
      const int c = y / m, e = y % m;
      const int rot = ((c ? -b : b) + e) % m;
      table[static_cast<std::size_t>(x * n + y)] = ((a + c) % 2) * m + (rot + m) % m;
    }
    std::string s = a ? "s" : "";
    if (b) s += (a ? " " : "") + std::string("r^") + std::to_string(b);
    names.push_back(s.empty() ? "1" : s);
  }
  return std::make_shared<const FiniteGroup>(std::move(table), n, d, std::move(names));
}

GroupPtr quaternion_group(const GroupDescriptor& d) {
  // 1,-1,i,-i,j,-j,k,-k: unit u in {1,i,j,k} = index/2, sign = index%2.
  static constexpr int kUnitProduct[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kUnitSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<ElementId> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int sign = (x % 2 + y % 2 + kUnitSign[u][v]) % 2;
      table[static_cast<std::size_t>(x * 8 + y)] = kUnitProduct[u][v] * 2 + sign;
    }
  return std::make_shared<const FiniteGroup>(std::move(table), 8, d,
                                             std::vector<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace

namespace detail {

std::vector<ElementId> product_table(std::span<const GroupPtr> factors, int& order) {
  order = 1;
  for (const auto& f : factors) order *= f->order();
  const int n = order;
  std::vector<ElementId> table(static_cast<std::size_t>(n * n));
  std::vector<int> da(factors.size()), db(factors.size());
  auto decode = [&](int x, std::vector<int>& digits) {
    for (std::size_t i = factors.size(); i-- > 0;) {
      digits[i] = x % factors[i]->order();
      x /= factors[i]->order();
    }
  };
  for (int a = 0; a < n; ++a) {
    decode(a, da);
    for (int b = 0; b < n; ++b) {
      decode(b, db);
      int c = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) c = c * factors[i]->order() + factors[i]->mul(da[i], db[i]);
      table[static_cast<std::size_t>(a * n + b)] = c;
    }
  }
  return table;
}

GroupPtr make_product_group(std::span<const GroupPtr> factors, GroupDescriptor descriptor) {
  int n = 0;
  auto table = product_table(factors, n);
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    std::vector<std::string> parts(factors.size());
    int rest = x;
    for (std::size_t i = factors.size(); i-- > 0;) {
      parts[i] = std::string(factors[i]->name(rest % factors[i]->order()));
      rest /= factors[i]->order();
    }
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    names.push_back(s + ")");
  }
  return std::make_shared<const FiniteGroup>(std::move(table), n, std::move(descriptor), std::move(names));
}

}  // namespace detail

GroupPtr build_group(const GroupDescriptor& d, int order_cap) {
  order_cap = std::min(order_cap, kMaxOrder);
  if (d.order() > order_cap)
    throw Error(ErrorCode::OrderCapExceeded,
                d.to_string() + " has order " + std::to_string(d.order()) + " > cap " + std::to_string(order_cap));
  switch (d.kind) {
    case GroupDescriptor::Kind::Cyclic:
    case GroupDescriptor::Kind::Abelian: return abelian_group(d);
    case GroupDescriptor::Kind::Dihedral: return dihedral_group(d);
    case GroupDescriptor::Kind::Symmetric: return permutation_group(d, false);
    case GroupDescriptor::Kind::Alternating: return permutation_group(d, true);
    case GroupDescriptor::Kind::Quaternion: return quaternion_group(d);
    case GroupDescriptor::Kind::Product: {
      std::vector<GroupPtr> factors;
      for (const auto& f : d.factors) factors.push_back(build_group(f, order_cap));
      return detail::make_product_group(factors, d);
    }
    case GroupDescriptor::Kind::Derived: break;
  }
  throw Error(ErrorCode::UnknownKind, d.to_string());
}

GroupPtr build_group(std::string_view descriptor, int order_cap) {
  return build_group(GroupDescriptor::parse(descriptor), order_cap);
}

// ---------------------------------------------------------------------------
// element primitives

ElementSet subgroup_generated(const FiniteGroup& g, ElementSet generators) {
  ElementSet result = ElementSet::singleton(0);
  generators.erase(0);
  if (generators.empty()) return result;
  // Breadth-first closure under right multiplication by generators.
  std::vector<ElementId> frontier{0};
  const auto gens = generators.to_vector();
  while (!frontier.empty()) {
    std::vector<ElementId> next;
    for (ElementId x : frontier)
      for (ElementId s : gens) {
        const ElementId y = g.mul(x, s);
        if (!result.contains(y)) {
          result.insert(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return result;
}

bool is_subgroup(const FiniteGroup& g, ElementSet set) {
  if (!set.contains(0)) return false;
  bool closed = true;
  set.for_each([&](ElementId a) {
    if (!closed) return;
    set.for_each([&](ElementId b) {
      if (!set.contains(g.mul(a, b))) closed = false;
    });
  });
  return closed;
}

int element_order(const FiniteGroup& g, ElementId x) { return g.element_order(x); }

ElementSet Homomorphism::image(ElementSet set) const {
  ElementSet out;
  set.for_each([&](ElementId x) { out.insert(map[static_cast<std::size_t>(x)]); });
  return out;
}

ElementSet Homomorphism::preimage(ElementSet set) const {
  ElementSet out;
  for (ElementId x = 0; x < source->order(); ++x)
    if (set.contains(map[static_cast<std::size_t>(x)])) out.insert(x);
  return out;
}

Homomorphism make_homomorphism(GroupPtr source, GroupPtr target, std::vector<ElementId> map) {
  if (map.size() != static_cast<std::size_t>(source->order()))
    throw Error(ErrorCode::BadParameter, "homomorphism map is not total");
  for (ElementId y : map)
    if (y < 0 || y >= target->order()) throw Error(ErrorCode::BadParameter, "homomorphism image out of range");
  for (ElementId x = 0; x < source->order(); ++x)
    for (ElementId y = 0; y < source->order(); ++y) {
      const auto fx = map[static_cast<std::size_t>(x)], fy = map[static_cast<std::size_t>(y)];
      if (map[static_cast<std::size_t>(source->mul(x, y))] != target->mul(fx, fy))
        throw Error(ErrorCode::NotAHomomorphism,
                    "f(" + std::to_string(x) + "*" + std::to_string(y) + ") != f(x)f(y)", {x, y});
    }
  return Homomorphism{std::move(source), std::move(target), std::move(map)};
}

Homomorphism identity_homomorphism(GroupPtr g) {
  std::vector<ElementId> map(static_cast<std::size_t>(g->order()));
  std::iota(map.begin(), map.end(), 0);
  return Homomorphism{g, g, std::move(map)};
}

}  // namespace topo
