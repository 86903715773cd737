#pragma once

/*! \file
 * \brief Runtime selection of domain and algorithm for a parsed program, and
 * text / JSON rendering of the outcome. Shared by the CLI and the Python
 * module.
 */

#include <ainv/program.hpp>

#include <string>
#include <vector>

namespace ainv {

struct AnalyzeRequest {
  std::string domain = "const";     // const | affine
  std::string algorithm = "forward"; // forward | backward
  std::vector<std::string> props;    // "qk: <literal>"
  std::size_t max_steps = 10000;
};

struct AnalysisReport {
  std::string domain;
  std::string algorithm;
  bool found = false;
  std::string kind; // least | greatest
  std::size_t steps = 0;
  std::string reason;
  std::vector<std::string> nodes;
  /// Rendered invariant (or offending iterate) per node.
  std::vector<std::string> invariant;
  std::vector<std::vector<std::string>> trace;
};

/// Throws Unsupported for a bad domain/sort/algorithm combination and
/// ParseError for malformed properties.
AnalysisReport analyze(const Program& p, const AnalyzeRequest& req);

std::string render_text(const AnalysisReport& r, bool with_trace);
std::string render_json(const AnalysisReport& r);

} // namespace ainv
