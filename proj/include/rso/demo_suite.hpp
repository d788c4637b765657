#ifndef RSO_DEMO_SUITE_HPP
#define RSO_DEMO_SUITE_HPP

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rso {

// Per-call query budget of the local algorithms, as a multiple of ell^3.
inline constexpr int kLocalQueryConstant = 8;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool property_holds = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;  // measured values, one short line
  nlohmann::json data;

  bool pass() const { return property_holds && seconds <= budget_seconds; }
};

struct SuiteOptions {
  std::vector<int> only;  // empty means all fifteen
  int threads = 1;
  // Called after each criterion finishes (for streaming output).
  std::function<void(const CriterionResult&)> on_result;
};

// Runs the desk-scale acceptance battery. Every tolerance and time budget is
// fixed in the implementation; nothing here is configurable except which
// criteria run.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {});

// "[PASS]  7  local algorithms round-trip  (12.3 s of 120 s)  <detail>"
std::string format_result(const CriterionResult& r);

nlohmann::json suite_manifest(const std::vector<CriterionResult>& results);

}  // namespace rso

#endif
