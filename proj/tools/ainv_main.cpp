#include <ainv/driver.hpp>
#include <ainv/errors.hpp>
#include <ainv/finite_oracle.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int run_analyze(const std::string& path, const ainv::AnalyzeRequest& req, bool trace,
                const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  ainv::AnalysisReport r;
  try {
    r = ainv::analyze(ainv::parse_program(buf.str()), req);
  } catch (const ainv::ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return 2;
  } catch (const ainv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << (format == "json" ? ainv::render_json(r) : ainv::render_text(r, trace));
  return r.found ? 0 : 1;
}

int run_oracle(const std::string& suite, std::uint64_t seed, std::size_t trials,
               const std::string& format) {
  std::vector<ainv::finite::SuiteReport> reports;
  try {
    reports = ainv::finite::run_suite(suite, seed, trials);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::size_t failures = 0;
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    failures += r.failures;
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["trials"] = r.trials;
    o["failures"] = r.failures;
    o["first_failure_seed"] = r.first_failure_seed ? nlohmann::ordered_json(*r.first_failure_seed)
                                                   : nlohmann::ordered_json(nullptr);
    j.push_back(o);
    if (format != "json") {
      std::cout << r.name << ": " << r.trials << " trials, " << r.failures << " failures";
      if (r.first_failure_seed) std::cout << " (first failing seed " << *r.first_failure_seed << ")";
      std::cout << "\n";
    }
  }
  if (format == "json") std::cout << j.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"abstract inductive invariant synthesis"};
  app.require_subcommand(1);

  ainv::AnalyzeRequest req;
  std::string path, format = "text";
  bool trace = false;
  auto* an = app.add_subcommand("analyze", "synthesize an invariant for a program");
  an->add_option("--program", path, "program file")->required();
  an->add_option("--domain", req.domain)->check(CLI::IsMember({"const", "affine"}));
  an->add_option("--alg", req.algorithm)->check(CLI::IsMember({"forward", "backward"}));
  an->add_option("--prop", req.props, "\"qk: <literal>\", repeatable");
  an->add_flag("--trace", trace, "print every iterate");
  an->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  an->add_option("--max-steps", req.max_steps, "iteration budget");

  std::string suite = "all", oformat = "text";
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  auto* orc = app.add_subcommand("oracle", "run the brute-force checkers on random finite instances");
  orc->add_option("--suite", suite);
  orc->add_option("--seed", seed);
  orc->add_option("--trials", trials);
  orc->add_option("--format", oformat)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (an->parsed()) return run_analyze(path, req, trace, format);
  return run_oracle(suite, seed, trials, oformat);
}
