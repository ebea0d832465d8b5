#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "json.hpp"
#include "topogrp/error.hpp"
#include "topogrp/suite.hpp"

using namespace topo;

namespace {

std::string dump(const SuiteSummary& s) {
  std::string out;
  for (const auto& r : s.reports) out += to_json_line(r) + "\n";
  return out + summary_line(s, true) + "\n";
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

SuiteConfig parse(const std::string& text) {
  std::istringstream in(text);
  return load_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
  const SuiteConfig c = parse(
      "# comment\n"
      "max_order = 12\n"
      "groups = sym:3; cyclic:4\n"
      "systems = normal;principal:#1\n"
      "suites = prime-order,weak-closed\n"
      "jobs = 3\n"
      "format = json\n"
      "timing = false\n");
  CHECK(c.max_group_order == 12);
  CHECK(c.groups == std::vector<std::string>{"sym:3", "cyclic:4"});
  CHECK(c.systems == std::vector<std::string>{"normal", "principal:#1"});
  CHECK(c.suites == std::vector<std::string>{"prime-order", "weak-closed"});
  CHECK(c.jobs == 3);
  CHECK(c.json);
  CHECK_FALSE(c.timing);
  CHECK_NOTHROW(c.validate());

  SuiteConfig base;
  base.jobs = 4;
  std::istringstream in("max_order=6\n");
  const SuiteConfig merged = load_config(in, base);
  CHECK(merged.jobs == 4);
  CHECK(merged.max_group_order == 6);
}

TEST_CASE("config errors") {
  CHECK(code_of([] { parse("max_order\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("max_order=ten\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("colour=red\n"); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { parse("format=xml\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("groups=foo:3\n").validate(); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { parse("suites=nonsense\n").validate(); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { parse("max_order=65\n").validate(); }) == ErrorCode::OrderCapExceeded);
  CHECK(code_of([] { parse("max_order=6\ngroups=sym:4\n").validate(); }) == ErrorCode::OrderCapExceeded);
  CHECK(code_of([] { parse("jobs=0\n").validate(); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { parse("systems=bogus\n").validate(); }) == ErrorCode::UnknownKind);
}

TEST_CASE("a single cell") {
  SuiteConfig c;
  c.groups = {"sym:3"};
  c.systems = {"normal"};
  c.suites = {"hausdorff-equivalence"};
  const auto s = run_suite(c);
  REQUIRE(s.reports.size() == 1);
  const auto& r = s.reports[0];
  CHECK(r.check == "hausdorff-equivalence");
  CHECK(r.group == "sym:3");
  CHECK(r.toposys == "normal");
  CHECK(r.status == Status::Pass);
  CHECK(r.detail.find("hausdorff=no") != std::string::npos);
  CHECK(s.exit_code() == 0);
  CHECK(to_text_line(r).starts_with("PASS hausdorff-equivalence sym:3 normal"));
}

TEST_CASE("json schema") {
  SuiteConfig c;
  c.groups = {"cyclic:4"};
  c.suites = {"group-axioms", "toposys-axioms"};
  const auto s = run_suite(c);
  REQUIRE_FALSE(s.reports.empty());
  for (const auto& r : s.reports) {
    const auto j = nlohmann::json::parse(to_json_line(r));
    std::set<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.insert(k);
    CHECK(keys == std::set<std::string>{"check", "group", "toposys", "status", "witness", "detail", "elapsed_ms"});
    CHECK(j["elapsed_ms"] == 0);
    CHECK(j["status"] == "pass");
  }
  const auto sum = nlohmann::json::parse(summary_line(s, true));
  CHECK(sum["summary"]["fail"] == 0);
  CHECK(sum["summary"]["pass"] == static_cast<int>(s.reports.size()));
}

TEST_CASE("output is deterministic across runs and job counts") {
  SuiteConfig c;
  c.max_group_order = 8;
  const std::string first = dump(run_suite(c));
  CHECK(first == dump(run_suite(c)));
  c.jobs = 4;
  CHECK(first == dump(run_suite(c)));
}

TEST_CASE("default suite over small groups has no failures") {
  SuiteConfig c;
  c.max_group_order = 8;
  const auto s = run_suite(c);
  CHECK(s.failed == 0);
  CHECK(s.passed > 0);
  for (const auto& r : s.reports)
    if (r.status == Status::Fail) CHECK_FALSE(r.witness.empty());
}
