#include <ainv/driver.hpp>
#include <ainv/synthesis.hpp>

#include <json.hpp>

#include <sstream>

namespace ainv {

namespace {

template <class A>
AnalysisReport run(const Program& p, const AnalyzeRequest& req) {
  std::vector<std::pair<std::size_t, Literal>> props;
  for (const auto& text : req.props) props.push_back(parse_node_literal(text, p));
  const auto pr = make_problem<A>(p, props);
  const IterationOptions opts{req.max_steps};

  SynthesisResult<typename A::Element> res;
  if (req.algorithm == "forward") {
    res = ainv_forward(pr, opts);
  } else {
    if constexpr (!A::has_backward)
      throw Unsupported(std::string("backward synthesis not supported for ") + A::name);
    else
      res = backward_gfp(pr, opts);
  }

  AnalysisReport r;
  r.domain = req.domain;
  r.algorithm = req.algorithm;
  r.found = res.found;
  r.kind = res.kind == InvariantKind::least ? "least" : "greatest";
  r.steps = res.step;
  r.reason = res.reason;
  r.nodes = p.nodes();
  for (const auto& v : res.invariant) r.invariant.push_back(pr.analysis.render(v));
  for (const auto& it : res.trace) {
    std::vector<std::string> row;
    for (const auto& v : it) row.push_back(pr.analysis.render(v));
    r.trace.push_back(std::move(row));
  }
  return r;
}

} // namespace

AnalysisReport analyze(const Program& p, const AnalyzeRequest& req) {
  if (req.algorithm != "forward" && req.algorithm != "backward")
    throw Unsupported("unknown algorithm '" + req.algorithm + "'");
  if (req.domain == "const") return run<ConstAnalysis>(p, req);
  if (req.domain == "affine") {
    if (req.algorithm == "backward")
      throw Unsupported("backward synthesis not supported for affine");
    return run<AffineAnalysis>(p, req);
  }
  throw Unsupported("unknown domain '" + req.domain + "'");
}

std::string render_text(const AnalysisReport& r, bool with_trace) {
  std::ostringstream out;
  if (with_trace) {
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      out << k << ":";
      for (std::size_t q = 0; q < r.nodes.size(); ++q)
        out << (q ? "; " : " ") << r.nodes[q] << "=" << r.trace[k][q];
      out << "\n";
    }
  }
  if (r.found) {
    out << "result: found (" << r.kind << ")\n";
  } else {
    out << "result: no abstract inductive invariant\n";
    out << "reason: " << r.reason << "\n";
  }
  out << "domain: " << r.domain << "\n";
  out << "algorithm: " << r.algorithm << "\n";
  out << "steps: " << r.steps << "\n";
  for (std::size_t q = 0; q < r.nodes.size(); ++q)
    out << r.nodes[q] << ": " << r.invariant[q] << "\n";
  return out.str();
}

std::string render_json(const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  auto by_node = [&](const std::vector<std::string>& vals) {
    json o = json::object();
    for (std::size_t q = 0; q < r.nodes.size(); ++q) o[r.nodes[q]] = vals[q];
    return o;
  };
  json j;
  j["algorithm"] = r.algorithm;
  j["domain"] = r.domain;
  j["result"] = r.found ? "found" : "not_found";
  j["kind"] = r.kind;
  j["steps"] = r.steps;
  if (!r.found) j["reason"] = r.reason;
  j["invariant"] = by_node(r.invariant);
  j["trace"] = json::array();
  for (const auto& it : r.trace) j["trace"].push_back(by_node(it));
  return j.dump(2) + "\n";
}

} // namespace ainv
