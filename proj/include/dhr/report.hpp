#ifndef DHR_REPORT_HPP
#define DHR_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "dhr/connection.hpp"
#include "dhr/moduli.hpp"
#include "dhr/numint.hpp"
#include "dhr/qseries.hpp"

namespace dhr {

using Json = nlohmann::ordered_json;

Json to_json(const ODESystem &sys, bool include_reduced = true);
Json to_json(const IntersectionMatrix &omega);
Json to_json(const SeriesResidualReport &rep);
Json to_json(const PushforwardVerdict &v);
Json to_json(const CompatibilityReport &rep);
Json to_json(const FamilySpec &f);

// one "name' = expr" line per equation
std::string render_math(const ODESystem &sys, bool reduced = false);

// Golden files: DHR_GOLDEN_DIR when set, else the source tree's goldens/.
std::string golden_dir();

struct GoldenVerdict {
  std::string name;
  std::string status;  // match, mismatch, missing
  int first_difference = 0;  // 1-based line, 0 when matching
};

GoldenVerdict check_golden(const std::string &name, const std::string &text);
void write_golden(const std::string &name, const std::string &text);

// text of every golden the artifact freezes, keyed by file name
std::vector<std::pair<std::string, std::string>> golden_texts();
std::string field_golden(const ODESystem &sys, bool reduced);

// suite: ramanujan, darboux-halphen, darboux-halphen-sum, pushforward, halphen-specialization
struct SuiteResult {
  Json document;
  bool passed = false;
};
SuiteResult run_suite(const std::string &suite, int order);

struct ReportOptions {
  bool timings = false;  // wall-clock times break byte-identical output
  int series_order = 40;
};

struct ReportResult {
  Json document;
  int verdict_failures = 0;
  int hard_errors = 0;
};

ReportResult build_report(const ReportOptions &opt = {});

}  // namespace dhr

#endif
