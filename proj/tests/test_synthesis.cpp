#include <ainv/driver.hpp>
#include <ainv/synthesis.hpp>

#include <doctest.h>
#include <json.hpp>

#include "random_programs.hpp"

#include <fstream>
#include <sstream>

using namespace ainv;
namespace fin = ainv::finite;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(AINV_DATA_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ConstVec cv(std::initializer_list<std::optional<long>> xs) {
  std::vector<ConstVal> s;
  for (auto x : xs) s.push_back(x ? ConstVal(Integer(*x)) : ConstVal());
  return ConstVec::of(s);
}

constexpr std::optional<long> T = std::nullopt;
const auto B = ConstVec::bottom(2);

using CState = StateVector<ConstVec>;

AnalysisProblem<ConstAnalysis> int_loop_problem(const Program& p, const std::string& prop) {
  return make_problem<ConstAnalysis>(p, {parse_node_literal(prop, p)});
}

// Concrete states reachable in a few rounds from a finite initial sample.
std::vector<PointSet> simulate(const Program& p, const std::vector<PointSet>& init, int rounds) {
  const std::vector<Rational> w{Rational(-1), Rational(0), Rational(2)};
  auto reach = init;
  for (int k = 0; k < rounds; ++k) {
    auto next = reach;
    for (const auto& e : p.edges()) {
      const auto img = apply_edge_concrete(e, reach[e.source], w);
      for (const auto& x : img)
        if (next[e.target].size() < 60) next[e.target].insert(x);
    }
    reach = std::move(next);
  }
  return reach;
}

std::vector<PointSet> sample_init(const Program& p, long r) {
  std::vector<PointSet> out(p.node_count());
  for (std::size_t q = 0; q < p.node_count(); ++q) {
    const auto& lit = p.init()[q];
    if (!lit) continue;
    if (const auto* pts = std::get_if<PointsLiteral>(&*lit))
      out[q].insert(pts->points.begin(), pts->points.end());
    else
      out[q] = gamma_box(const_abstract(*lit, p.vars()), r);
  }
  return out;
}

std::vector<std::pair<std::size_t, Literal>> random_props(fin::Rng& rng, const Program& p) {
  std::vector<std::pair<std::size_t, Literal>> props;
  if (rng.chance(1, 2)) {
    TupleLiteral t;
    for (std::size_t j = 0; j < p.vars(); ++j)
      t.slots.push_back(rng.chance(2, 3) ? std::optional<Rational>()
                                         : std::optional<Rational>(Rational(static_cast<long>(rng.below(3)))));
    props.emplace_back(rng.below(p.node_count()), t);
  }
  return props;
}

} // namespace

TEST_CASE("forward steps on the integer example") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto pr = int_loop_problem(p, "q2: (top,2)");
  const CState j0{cv({T, T}), B, B, B};
  const CState j1{cv({T, T}), cv({0, 2}), B, B};
  const CState j3{cv({T, T}), cv({T, 2}), cv({4, 1}), B};
  const CState j4{cv({T, T}), cv({T, 2}), cv({T, 1}), cv({T, 2})};
  CHECK(pr.init == j0);
  CHECK(abstract_post_step(pr, j0) == j1);
  CHECK(abstract_post_step(pr, j3) == j4);
  CHECK(abstract_post_step(pr, j4) == j4);
  const auto r = ainv_forward(pr);
  CHECK(r.found);
  CHECK(r.kind == InvariantKind::least);
  CHECK(r.step == 4);
  CHECK(r.invariant == j4);
  CHECK(r.trace.front() == j0);
  CHECK(r.trace.back() == j4);
}

TEST_CASE("backward steps on the integer example") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto pr = int_loop_problem(p, "q2: (top,2)");
  const CState i0(4, ConstVec::top(2));
  const CState i1{cv({T, T}), cv({T, 2}), cv({T, T}), cv({T, T})};
  const CState i2{cv({T, T}), cv({T, 2}), cv({T, 1}), cv({T, T})};
  CHECK(abstract_pret_step(pr, i0) == i1);
  CHECK(abstract_pret_step(pr, i1) == i2);
  CHECK(abstract_pret_step(pr, i2) == i2);
  const auto r = backward_gfp(pr);
  CHECK(r.found);
  CHECK(r.kind == InvariantKind::greatest);
  CHECK(r.step == 2);
  CHECK(r.trace == std::vector<CState>{i0, i1, i2});
}

TEST_CASE("verify_invariant") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto pr = int_loop_problem(p, "q2: (top,2)");
  CHECK(verify_invariant(pr, CState{cv({T, T}), cv({T, 2}), cv({T, 1}), cv({T, 2})}));
  CHECK(verify_invariant(pr, CState{cv({T, T}), cv({T, 2}), cv({T, 1}), cv({T, T})}));
  // not closed under the loop
  CHECK_FALSE(verify_invariant(pr, CState{cv({T, T}), cv({T, 2}), cv({4, 1}), cv({T, T})}));
  // misses the initial states
  CHECK_FALSE(verify_invariant(pr, CState{B, cv({T, 2}), cv({T, 1}), cv({T, T})}));
  // unsafe
  CHECK_FALSE(verify_invariant(pr, CState(4, ConstVec::top(2))));
}

TEST_CASE("no invariant") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto fwd = ainv_forward(int_loop_problem(p, "q2: (0,top)"));
  CHECK_FALSE(fwd.found);
  CHECK(fwd.step == 3);
  CHECK(fwd.invariant[1] == cv({T, 2}));
  // a bottom property at an initial node fails at the first descending step
  const auto back = backward_gfp(int_loop_problem(p, "q1: bot"));
  CHECK_FALSE(back.found);
  CHECK(back.step == 1);
  CHECK(back.reason == "iterate excludes initial states");
}

TEST_CASE("domain and sort checks") {
  const auto p2 = parse_program(read_data("int_loop.prog"));
  const auto p3 = parse_program(read_data("rat_branches.prog"));
  CHECK_THROWS_AS(ConstAnalysis{p3}, Unsupported);
  CHECK_THROWS_AS(AffineAnalysis{p2}, Unsupported);
  const auto pr = make_problem<AffineAnalysis>(p3);
  CHECK_THROWS_AS(abstract_pret_step(pr, pr.init), Unsupported);
  CHECK_THROWS_AS(backward_gfp(pr), Unsupported);
}

TEST_CASE("affine forward on the rational example") {
  const auto p = parse_program(read_data("rat_branches.prog"));
  const auto r = ainv_forward(make_problem<AffineAnalysis>(p));
  REQUIRE(r.found);
  CHECK(r.invariant[3] == AffSubspace::singleton(make_point({-2, 1, 1})));
  CHECK(r.invariant[0] == AffSubspace::universe(3));
}

TEST_CASE("forward and backward agree with each other and with execution") {
  int both = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    fin::Rng rng(seed);
    const auto p = testing::random_program(rng, Sort::integer, 3, 4);
    const auto pr = make_problem<ConstAnalysis>(p, random_props(rng, p));
    const auto prod = pr.product();
    const auto fwd = ainv_forward(pr);
    const auto back = backward_gfp(pr);
    INFO(print_program(p));
    if (fwd.found) {
      CHECK(verify_invariant(pr, fwd.invariant));
      CHECK(fwd.step <= prod.height());
      const auto reach = simulate(p, sample_init(p, 2), 3);
      for (std::size_t q = 0; q < p.node_count(); ++q)
        CHECK(pr.analysis.domain().leq(alpha_points(reach[q], p.vars()), fwd.invariant[q]));
    }
    if (back.found) {
      CHECK(verify_invariant(pr, back.invariant));
      // the least invariant lies below every invariant
      REQUIRE(fwd.found);
      CHECK(prod.leq(fwd.invariant, back.invariant));
      ++both;
    }
  }
  CHECK(both > 0);
}

TEST_CASE("affine forward contains executions") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    fin::Rng rng(seed);
    const auto p = testing::random_program(rng, Sort::rational, 3, 4);
    const auto pr = make_problem<AffineAnalysis>(p);
    const auto r = ainv_forward(pr);
    REQUIRE(r.found);
    CHECK(verify_invariant(pr, r.invariant));
    std::vector<PointSet> init(p.node_count());
    for (std::size_t q = 0; q < p.node_count(); ++q) {
      const auto& lit = p.init()[q];
      if (!lit) continue;
      if (const auto* pts = std::get_if<PointsLiteral>(&*lit))
        init[q].insert(pts->points.begin(), pts->points.end());
      else if (const auto* t = std::get_if<TupleLiteral>(&*lit)) {
        Point x(p.vars());
        for (std::size_t j = 0; j < p.vars(); ++j) x[j] = t->slots[j].value_or(Rational(1));
        init[q].insert(x);
      }
    }
    const auto reach = simulate(p, init, 3);
    for (std::size_t q = 0; q < p.node_count(); ++q)
      for (const auto& x : reach[q]) CHECK(r.invariant[q].contains(x));
  }
}

TEST_CASE("driver reports") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto rep = analyze(p, {"const", "forward", {"q2: (top,2)"}});
  CHECK(rep.found);
  CHECK(rep.kind == "least");
  CHECK(rep.steps == 4);
  CHECK(rep.nodes == std::vector<std::string>{"q1", "q2", "q3", "q4"});
  const auto text = render_text(rep, false);
  CHECK(text.find("result: found (least)") != std::string::npos);
  CHECK(text.find("q4: (top,2)") != std::string::npos);
  CHECK(render_text(rep, true).find("0: q1=(top,top); q2=bot") != std::string::npos);

  const auto j = nlohmann::json::parse(render_json(rep));
  CHECK(j["result"] == "found");
  CHECK(j["domain"] == "const");
  CHECK(j["steps"] == 4);
  CHECK(j["invariant"]["q3"] == "(top,1)");
  CHECK(j["trace"].size() == 5);
  CHECK_FALSE(j.contains("reason"));

  const auto bad = analyze(p, {"const", "forward", {"q2: (0,top)"}});
  const auto jb = nlohmann::json::parse(render_json(bad));
  CHECK(jb["result"] == "not_found");
  CHECK(jb.contains("reason"));
  CHECK(render_text(bad, false).find("result: no abstract inductive invariant") !=
        std::string::npos);

  CHECK_THROWS_AS(analyze(p, {"octagon", "forward", {}}), Unsupported);
  CHECK_THROWS_AS(analyze(p, {"const", "sideways", {}}), Unsupported);
  CHECK_THROWS_AS(analyze(p, {"const", "forward", {"q2 (top,2)"}}), ParseError);
  const auto p3 = parse_program(read_data("rat_branches.prog"));
  CHECK_THROWS_AS(analyze(p3, {"affine", "backward", {}}), Unsupported);
  const auto aff = analyze(p3, {"affine", "forward", {}});
  CHECK(aff.invariant[3] == "x1 + 2 = 0 /\\ x2 - 1 = 0 /\\ x3 - 1 = 0");
}
