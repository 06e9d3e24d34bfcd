#ifndef BIL_SUITES_HPP
#define BIL_SUITES_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace bil {

struct CaseResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;  // sorted by id
  double seconds = 0;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

struct Case {
  std::string id;
  std::function<CaseResult()> run;
};

// Runs cases on up to `threads` workers (0: hardware concurrency).  A case
// that throws is recorded as a failure carrying the message.
std::vector<CaseResult> run_cases(const std::vector<Case>& cases, unsigned threads = 0);

// preservation, monotonicity, hennessy-milner, unravel-structure, schemas,
// types, fol-equiv
const std::vector<std::string>& suite_names();

// Acceptance criterion k (1..9) as a case list.
std::vector<Case> criterion_cases(int k, std::uint64_t seed);
SuiteReport run_criterion(int k, std::uint64_t seed, unsigned threads = 0);

// Named suite, or "all".  Throws InvalidArgument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, unsigned threads = 0);

// CASE lines followed by the TOTAL line.
void print_report(std::ostream& out, const SuiteReport& r);

}  // namespace bil

#endif  // BIL_SUITES_HPP
