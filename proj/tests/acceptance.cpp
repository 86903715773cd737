// One PASS/FAIL line per acceptance criterion.

#include "random_programs.hpp"

#include <ainv/driver.hpp>
#include <ainv/finite_oracle.hpp>
#include <ainv/synthesis.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace ainv;
namespace fin = ainv::finite;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(AINV_DATA_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- 1 ---------------------------------------------------------------------

Outcome int_loop_forward() {
  const auto t0 = Clock::now();
  const auto p = parse_program(read_file("int_loop.prog"));
  const auto r = analyze(p, {"const", "forward", {"q2: (top,2)"}});
  const double dt = seconds_since(t0);
  const std::vector<std::vector<std::string>> expect{
      {"(top,top)", "bot", "bot", "bot"},
      {"(top,top)", "(0,2)", "bot", "bot"},
      {"(top,top)", "(0,2)", "(4,1)", "bot"},
      {"(top,top)", "(top,2)", "(4,1)", "bot"},
      {"(top,top)", "(top,2)", "(top,1)", "(top,2)"}};
  const bool ok = r.found && r.kind == "least" && r.steps == 4 && r.trace == expect &&
                  r.invariant == expect.back() && dt < 0.1;
  return {ok, std::to_string(r.trace.size()) + " iterates, " + std::to_string(dt) + " s"};
}

// --- 2 ---------------------------------------------------------------------

AffSubspace aff(const std::string& text) {
  return affine_abstract(parse_literal(text, 3, Sort::rational), 3);
}

// 3x3 determinant by cofactor expansion
Rational det3(const std::vector<std::vector<Rational>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Point cramer3(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  const Rational d = det3(a);
  Point x(3);
  for (std::size_t c = 0; c < 3; ++c) {
    auto m = a;
    for (std::size_t r = 0; r < 3; ++r) m[r][c] = b[r];
    x[c] = det3(m) / d;
  }
  return x;
}

Outcome rat_branches_forward() {
  const auto t0 = Clock::now();
  const auto p = parse_program(read_file("rat_branches.prog"));
  const auto pr = make_problem<AffineAnalysis>(
      p, {parse_node_literal("q4: x1 + x2 + 1 = 0", p)});
  const auto r = ainv_forward(pr);
  const double dt = seconds_since(t0);

  const auto top = AffSubspace::universe(3), bot = AffSubspace::empty(3);
  const auto pt = aff("x1 + 2 = 0 /\\ x2 - 1 = 0 /\\ x3 - 1 = 0");
  const auto line = aff("x1 + 2*x2 = 0 /\\ x3 = 1");
  const std::vector<StateVector<AffSubspace>> expect_prefix{
      {top, bot, bot, bot}, {top, pt, bot, bot}, {top, pt, line, bot}};
  bool ok = r.found && r.trace.size() == 4 && dt < 0.1;
  for (std::size_t k = 0; ok && k < 3; ++k) ok = r.trace[k] == expect_prefix[k];
  if (!ok) return {false, "trace mismatch"};
  const auto& i3 = r.trace[3];
  ok = i3[0] == top && i3[1] == line && i3[2] == line;
  const auto printed = aff("x1 + x2 + 1 = 0 /\\ x3 = 1");
  const Point solved = cramer3({{1, 2, 0}, {0, 0, 1}, {1, 0, 2}}, {0, 1, 0});
  ok = ok && includes(printed, i3[3]) && i3[3] == AffSubspace::singleton(solved) &&
       solved == make_point({-2, 1, 1});
  return {ok, "q4 = " + to_string(i3[3]) + ", " + std::to_string(dt) + " s"};
}

// --- 3 ---------------------------------------------------------------------

Outcome int_loop_backward() {
  const auto t0 = Clock::now();
  const auto p = parse_program(read_file("int_loop.prog"));
  const auto pr = make_problem<ConstAnalysis>(p, {parse_node_literal("q2: (top,2)", p)});
  const auto back = backward_gfp(pr);
  const auto fwd = ainv_forward(pr);
  const double dt = seconds_since(t0);
  auto cv = [](std::vector<ConstVal> s) { return ConstVec::of(std::move(s)); };
  const ConstVal T;
  const StateVector<ConstVec> i0(4, ConstVec::top(2));
  const StateVector<ConstVec> i1{cv({T, T}), cv({T, 2}), cv({T, T}), cv({T, T})};
  const StateVector<ConstVec> i2{cv({T, T}), cv({T, 2}), cv({T, 1}), cv({T, T})};
  const auto prod = pr.product();
  const bool ok = back.found && back.kind == InvariantKind::greatest && back.step == 2 &&
                  back.trace == std::vector<StateVector<ConstVec>>{i0, i1, i2} &&
                  verify_invariant(pr, back.invariant) && prod.leq(fwd.invariant, back.invariant) &&
                  fwd.invariant != back.invariant && dt < 0.1;
  return {ok, std::to_string(back.trace.size()) + " iterates, " + std::to_string(dt) + " s"};
}

// --- 4 ---------------------------------------------------------------------

Outcome micro_examples() {
  // 4-chain 1<2<3<4 as indices 0..3; A = {2,4}
  const auto c4 = fin::FiniteLattice::chain(4);
  const auto gi4 = fin::gi_from_closed_subset(c4, {1, 3});
  const fin::Map f4{0, 1, 3, 3};
  const std::size_t la = fin::abstract_lfp(gi4, f4);
  bool ok = gi4.gamma[la] == 1;
  ok = ok && c4.leq(gi4.gamma[la], 2) && !c4.leq(gi4.gamma[la], 0);
  for (std::size_t c = 0; c < 4; ++c) ok = ok && fin::check_lemma1(gi4, f4, c);
  for (std::size_t a = 0; a < gi4.A.size(); ++a)
    ok = ok && fin::check_lemma1_abstract(gi4, f4, a) && gi4.A.leq(la, a);

  // 3-chain 1<2<3, f = {1->1, 2->3, 3->3}
  const auto c3 = fin::FiniteLattice::chain(3);
  const fin::Map f3{0, 2, 2};
  const auto r23 = fin::check_fixpoint_completeness_char(fin::gi_from_closed_subset(c3, {1, 2}), f3);
  ok = ok && !r23.plain && !r23.lemma5 && r23.consistent();
  const auto r13 = fin::check_fixpoint_completeness_char(fin::gi_from_closed_subset(c3, {0, 2}), f3);
  ok = ok && r13.plain && r13.lemma5 && r13.consistent();
  return {ok, "4-chain and both 3-chain closures"};
}

// --- 5 ---------------------------------------------------------------------

Outcome guard_incompleteness() {
  const PointSet x{make_point({1, 0}), make_point({-1, 0})};
  Guard g{{{LinExpr::variable(2, 0), Relation::eq}}, Junction::conj};
  const PointSet img = apply_transfer_concrete(g, x);
  const bool c_ok = alpha_points(img, 2) == ConstVec::bottom(2) &&
                    bca_guard(g, alpha_points(x, 2)) == ConstVec::of({Integer(0), Integer(0)});
  const bool a_ok = AffSubspace::hull(img, 2).is_empty() &&
                    bca_guard(g, AffSubspace::hull(x, 2)) ==
                        AffSubspace::singleton(make_point({0, 0}));
  return {c_ok && a_ok, std::string("const ") + (c_ok ? "ok" : "mismatch") + ", affine " +
                            (a_ok ? "ok" : "mismatch")};
}

// --- 6 ---------------------------------------------------------------------

Outcome oracle_suites() {
  const auto t0 = Clock::now();
  const auto reports = fin::run_suite("all", 0, 500);
  const double dt = seconds_since(t0);
  std::size_t failures = 0;
  std::string detail;
  for (const auto& r : reports) {
    failures += r.failures;
    detail += r.name + "=" + std::to_string(r.failures) + " ";
  }
  return {failures == 0 && dt < 60, detail + std::to_string(dt) + " s"};
}

// --- 7 ---------------------------------------------------------------------

PointSet random_points(fin::Rng& rng, std::size_t n) {
  PointSet x;
  const std::size_t k = rng.between(1, 5);
  while (x.size() < k) x.insert(testing::random_point(rng, n, 10));
  return x;
}

Outcome pointwise_completeness() {
  std::size_t const_bad = 0, const_unsound = 0, aff_bad = 0, nondet_bad = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    fin::Rng rng(seed);
    const std::size_t n = rng.between(1, 4);
    const auto x = random_points(rng, n);
    const auto t = testing::random_single_assign(rng, n, Sort::integer);
    const auto exact = alpha_points(apply_transfer_concrete(t, x), n);
    const auto abs = bca_parallel_assign(t, alpha_points(x, n));
    if (exact != abs) ++const_bad;
    if (!ConstDomain(n).leq(exact, abs)) ++const_unsound;
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    fin::Rng rng(seed + 100000);
    const std::size_t n = rng.between(1, 4);
    const auto x = random_points(rng, n);
    const auto t = testing::random_parallel_assign(rng, n, Sort::rational);
    if (AffSubspace::hull(apply_transfer_concrete(t, x), n) !=
        bca_parallel_assign(t, AffSubspace::hull(x, n)))
      ++aff_bad;
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    fin::Rng rng(seed + 200000);
    const std::size_t n = rng.between(1, 4);
    const auto x = random_points(rng, n);
    const NondetAssign t{static_cast<std::size_t>(rng.below(n))};
    const auto bca = bca_nondet_assign(t.target, AffSubspace::hull(x, n));
    const std::vector<Rational> base{0, 1};
    std::vector<Rational> extra = base;
    for (int i = 0; i < 3; ++i) extra.push_back(testing::random_point(rng, 1, 50)[0]);
    if (AffSubspace::hull(apply_transfer_concrete(t, x, base), n) != bca ||
        AffSubspace::hull(apply_transfer_concrete(t, x, extra), n) != bca)
      ++nondet_bad;
  }
  return {const_bad == 0 && aff_bad == 0 && nondet_bad == 0,
          "mismatches: const assign " + std::to_string(const_bad) + "/500 (unsound " +
              std::to_string(const_unsound) + "), affine assign " +
              std::to_string(aff_bad) + "/500, affine nondet " + std::to_string(nondet_bad) +
              "/500"};
}

// --- 8 ---------------------------------------------------------------------

template <class A>
bool within_bound(const Program& p, std::size_t per_node) {
  const auto pr = make_problem<A>(p);
  const auto r = ainv_forward(pr);
  const auto prod = pr.product();
  for (std::size_t k = 1; k < r.trace.size(); ++k)
    if (!prod.leq(r.trace[k - 1], r.trace[k]) || r.trace[k - 1] == r.trace[k]) return false;
  return r.found && r.step <= per_node * p.node_count() + 1;
}

Outcome termination_bounds() {
  std::size_t bad_c = 0, bad_a = 0, longest_c = 0, longest_a = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    fin::Rng rng(seed);
    const auto pc = testing::random_program(rng, Sort::integer, 5, 10);
    try {
      if (!within_bound<ConstAnalysis>(pc, 2 * pc.vars())) ++bad_c;
      longest_c = std::max(longest_c, ainv_forward(make_problem<ConstAnalysis>(pc)).step);
    } catch (const std::exception&) {
      ++bad_c;
    }
    const auto pa = testing::random_program(rng, Sort::rational, 5, 10);
    try {
      if (!within_bound<AffineAnalysis>(pa, pa.vars() + 1)) ++bad_a;
      longest_a = std::max(longest_a, ainv_forward(make_problem<AffineAnalysis>(pa)).step);
    } catch (const std::exception&) {
      ++bad_a;
    }
  }
  return {bad_c == 0 && bad_a == 0,
          "violations const " + std::to_string(bad_c) + "/200, affine " + std::to_string(bad_a) +
              "/200; longest runs " + std::to_string(longest_c) + " and " +
              std::to_string(longest_a) + " steps"};
}

} // namespace

// --allow-fail k: criterion k still prints FAIL but does not set the exit code.
int main(int argc, char** argv) {
  std::set<std::size_t> allowed;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--allow-fail") allowed.insert(std::stoul(argv[++i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"integer loop forward trace", int_loop_forward},
      {"rational branches affine forward trace", rat_branches_forward},
      {"integer loop backward trace", int_loop_backward},
      {"chain micro-examples", micro_examples},
      {"guard incompleteness witnesses", guard_incompleteness},
      {"oracle suites", oracle_suites},
      {"pointwise completeness of assignments", pointwise_completeness},
      {"forward termination bounds", termination_bounds}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok && !allowed.count(i + 1)) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " ("
              << o.detail << ")\n";
  }
  return failed == 0 ? 0 : 1;
}
