#ifndef TOPOGRP_SUITE_HPP_
#define TOPOGRP_SUITE_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace topo {

enum class Status { Pass, Fail, Finding };
std::string_view to_string(Status s);

// One line of suite output. A Fail always carries a witness; Finding is
// reserved for probes of claims that are checked rather than assumed.
struct CheckReport {
  std::string check;
  std::string group;
  std::string toposys;  // "-" for group-level checks
  Status status = Status::Pass;
  std::vector<int> witness;
  std::string detail;
  long long elapsed_ms = 0;  // 0 unless timing is enabled
};

struct SuiteConfig {
  int max_group_order = 24;
  std::vector<std::string> groups;   // empty: the catalog up to max_group_order
  std::vector<std::string> systems;  // empty: the catalog families per group
  std::vector<std::string> suites;   // empty: all
  bool json = false;
  int jobs = 1;
  // Wall-clock times in reports; off by default so reruns are byte-identical.
  bool timing = false;

  // Throws Error(ParseError/UnknownKind/BadParameter) on bad names or caps.
  void validate() const;
};

// key=value lines ('#' comments): max_order, groups (';'-separated),
// systems (';'-separated), suites (','-separated), format, jobs, timing.
// Keys present override `base`.
SuiteConfig load_config(std::istream& in, SuiteConfig base = {});

const std::vector<std::string>& suite_names();

struct SuiteSummary {
  std::vector<CheckReport> reports;
  int passed = 0;
  int failed = 0;
  int findings = 0;

  int exit_code() const { return failed ? 1 : 0; }
};

// Runs the selected suites cell by cell. Cells are ordered by group order,
// then descriptor text; with jobs > 1 cells run concurrently but reports
// still come out in that order.
SuiteSummary run_suite(const SuiteConfig& config);

std::string to_json_line(const CheckReport& r);
std::string to_text_line(const CheckReport& r);
std::string summary_line(const SuiteSummary& s, bool json);

}  // namespace topo

#endif  // TOPOGRP_SUITE_HPP_
