#include <ainv/errors.hpp>
#include <ainv/program.hpp>

#include <doctest.h>

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

LinExpr expr(std::initializer_list<long> coeffs, long constant) {
  LinExpr e;
  for (long c : coeffs) e.coeffs.emplace_back(c);
  e.constant = constant;
  return e;
}

std::string parse_error_of(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Edge labels in the shape the parser produces: assignment groups (one
// non-identity parallel assignment, then nondets on other variables)
// separated by guards.
std::vector<TransferFunction> canonical_label(fin::Rng& rng, std::size_t n, Sort sort) {
  std::vector<TransferFunction> steps;
  const std::size_t groups = rng.between(0, 3);
  bool last_was_assign = false;
  for (std::size_t g = 0; g < groups; ++g) {
    if (last_was_assign || rng.chance(1, 2)) {
      Guard gd = testing::random_guard(rng, n, sort);
      if (gd.atoms.size() == 1) gd.junction = Junction::conj;
      steps.emplace_back(gd);
      last_was_assign = false;
      continue;
    }
    auto pa = testing::random_parallel_assign(rng, n, sort);
    std::vector<bool> used(n);
    for (std::size_t j = 0; j < n; ++j) used[j] = pa.rows[j] != LinExpr::variable(n, j);
    if (!pa.is_identity()) steps.emplace_back(pa);
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && rng.chance(1, 4)) steps.emplace_back(NondetAssign{j});
    last_was_assign = true;
  }
  return steps;
}

Program canonical_program(fin::Rng& rng, Sort sort) {
  const std::size_t n = rng.between(1, 4), q = rng.between(1, 5);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < q; ++i) names.push_back("n" + std::to_string(i));
  Program p(n, sort, names);
  p.set_init(0, testing::random_init(rng, n));
  const std::size_t edges = rng.between(0, 6);
  for (std::size_t k = 0; k < edges; ++k)
    p.add_edge({static_cast<std::size_t>(rng.below(q)), static_cast<std::size_t>(rng.below(q)),
                canonical_label(rng, n, sort)});
  return p;
}

} // namespace

TEST_CASE("the integer example program") {
  const auto p = parse_program(read_data("int_loop.prog"));
  CHECK(p.node_count() == 4);
  CHECK(p.vars() == 2);
  CHECK(p.sort() == Sort::integer);
  REQUIRE(p.edges().size() == 4);
  const auto& loop = p.edges()[1];
  REQUIRE(loop.steps.size() == 1);
  const auto& pa = std::get<ParallelAssign>(loop.steps[0]);
  CHECK(pa.rows[0] == expr({1, 2}, 0));
  CHECK(pa.rows[1] == expr({0, 1}, -1));
  const auto& g = std::get<Guard>(p.edges()[2].steps[0]);
  CHECK(g.atoms[0].rel == Relation::ge);
  CHECK(g.atoms[0].expr == expr({1, 0}, -9));
  CHECK(p.init()[0] == std::optional<Literal>(TopLiteral{}));
  CHECK_FALSE(p.init()[1].has_value());
}

TEST_CASE("the rational example program") {
  const auto p = parse_program(read_data("rat_branches.prog"));
  CHECK(p.node_count() == 4);
  CHECK(p.vars() == 3);
  CHECK(p.sort() == Sort::rational);
  CHECK(p.edges().size() == 5);
  CHECK(p.edges()[4].steps.empty());
}

TEST_CASE("empty sections") {
  const auto p = parse_program("vars 1; sort int; nodes;");
  CHECK(p.node_count() == 0);
  CHECK(p.edges().empty());
  const auto q = parse_program("vars 2;\nsort rat;\nnodes a b;\n# nothing else\n");
  CHECK(q.node_count() == 2);
  CHECK(q.edges().empty());
}

TEST_CASE("parse errors carry line and column") {
  CHECK(parse_error_of("vars 1;\nsort int;\nnodes q1;\nedge q1 -> q9 : skip;\n") ==
        "4:12: unknown node 'q9'");
  CHECK(parse_error_of("vars 1; sort int; nodes q1; init q1: (1, 2);")
            .find("arity mismatch") != std::string::npos);
  CHECK(parse_error_of("vars 1; sort int; nodes q1; edge q1 -> q1 : assume x1 =< 0;")
            .find("unknown relation symbol '=<'") != std::string::npos);
  CHECK(parse_error_of("vars 1; sort int; nodes q1; edge q1 -> q1 : x3 := 0;")
            .find("unknown variable") != std::string::npos);
  CHECK(parse_error_of("vars 1; sort rat; nodes q1; edge q1 -> q1 : assume x1 < 0;")
            .find("inequality") != std::string::npos);
  CHECK(parse_error_of("vars 1; sort int; nodes q1; edge q1 -> q1 : x1 := 1/2;") != "");
  CHECK(parse_error_of("vars 1; sort int; nodes q1 q1;").find("duplicate node") !=
        std::string::npos);
  CHECK(parse_error_of("nodes q1; init q1: top;").find("'vars' must be declared first") != std::string::npos);
  CHECK(parse_error_of("vars 2; sort int; nodes q; edge q -> q : x1 := 1, x1 := 2;") != "");
  CHECK(parse_error_of("vars 2; sort int; nodes q; edge q -> q : assume x1 = 0 and x2 = 0 or x1 = 1;") != "");
}

TEST_CASE("label forms") {
  const auto p = parse_program(
      "vars 2; sort int; nodes a b;\n"
      "edge a -> b : x1 := ?, x2 := 2x1 + 3;\n"
      "edge a -> b : assume x1 != 0 or x2 > 1;\n"
      "edge a -> b : assume x1 = 0 and assume x2 <= 4, x1 := x1 - 1;\n"
      "edge a -> b;\n");
  const auto& e0 = p.edges()[0].steps;
  REQUIRE(e0.size() == 2);
  CHECK(std::get<ParallelAssign>(e0[0]).rows[1] == expr({2, 0}, 3));
  CHECK(std::get<NondetAssign>(e0[1]).target == 0);
  const auto& g1 = std::get<Guard>(p.edges()[1].steps[0]);
  CHECK(g1.junction == Junction::disj);
  CHECK(g1.atoms[1].rel == Relation::gt);
  const auto& e2 = p.edges()[2].steps;
  REQUIRE(e2.size() == 2);
  CHECK(std::get<Guard>(e2[0]).atoms.size() == 2);
  CHECK(std::holds_alternative<ParallelAssign>(e2[1]));
  CHECK(p.edges()[3].steps.empty());
}

TEST_CASE("literals") {
  CHECK(parse_literal("top", 2, Sort::integer) == Literal(TopLiteral{}));
  const auto t = std::get<TupleLiteral>(parse_literal("(top, -3)", 2, Sort::integer));
  CHECK_FALSE(t.slots[0].has_value());
  CHECK(*t.slots[1] == -3);
  const auto pts = std::get<PointsLiteral>(parse_literal("{(1,0); (-1,0)}", 2, Sort::integer));
  CHECK(pts.points.size() == 2);
  const auto eqs = std::get<EqualitiesLiteral>(
      parse_literal("x1 + 2x2 = 0 /\\ x3 = 1", 3, Sort::rational));
  CHECK(eqs.rows.size() == 2);
  CHECK(eqs.rows[1] == expr({0, 0, 1}, -1));
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto [q, lit] = parse_node_literal("q2: (top,2)", p);
  CHECK(q == 1);
  CHECK(std::holds_alternative<TupleLiteral>(lit));
  CHECK_THROWS_AS(parse_node_literal("q7: top", p), ParseError);
}

TEST_CASE("print then parse is the identity on canonical programs") {
  for (const char* f : {"int_loop.prog", "rat_branches.prog"}) {
    const auto p = parse_program(read_data(f));
    CHECK(parse_program(print_program(p)) == p);
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    fin::Rng rng(seed);
    const auto p = canonical_program(rng, seed % 2 ? Sort::integer : Sort::rational);
    const auto text = print_program(p);
    INFO(text);
    CHECK(parse_program(text) == p);
  }
}

TEST_CASE("collecting semantics examples") {
  const PointSet x{make_point({1, 0}), make_point({-1, 0})};
  const Guard g{{{expr({1, 0}, 0), Relation::eq}}, Junction::conj};
  CHECK(apply_transfer_concrete(g, x).empty());
  CHECK(apply_transfer_concrete(Identity{}, x) == x);
  ParallelAssign t = ParallelAssign::identity(2);
  t.rows[0] = expr({1, 2}, 0);
  t.rows[1] = expr({0, 1}, -1);
  CHECK(apply_transfer_concrete(t, {make_point({0, 2})}) == PointSet{make_point({4, 1})});
  const auto nd = apply_transfer_concrete(NondetAssign{1}, {make_point({3, 3})},
                                          {Rational(0), Rational(7)});
  CHECK(nd == PointSet{make_point({3, 0}), make_point({3, 7})});
}

TEST_CASE("guards only shrink their input") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    fin::Rng rng(seed);
    const std::size_t n = rng.between(1, 3);
    PointSet x;
    for (int i = 0; i < 6; ++i) x.insert(testing::random_point(rng, n, 3));
    const auto g = testing::random_guard(rng, n, Sort::integer);
    for (const auto& p : apply_transfer_concrete(g, x)) CHECK(x.count(p) == 1);
  }
}

TEST_CASE("post_edges_into") {
  const auto p = parse_program(read_data("int_loop.prog"));
  const auto into4 = post_edges_into(p, 3);
  REQUIRE(into4.size() == 1);
  CHECK(into4[0].source == 1);
  CHECK(std::get<Guard>(into4[0].steps[0]).atoms[0].expr == expr({1, 0}, -9));
  CHECK(post_edges_into(p, 0).empty());
  const auto r = parse_program(read_data("rat_branches.prog"));
  const auto into3 = post_edges_into(r, 2);
  REQUIRE(into3.size() == 2);
  CHECK(into3[0].source == 1);
  CHECK(into3[1].source == 1);
  // partition of the edge list by target
  std::size_t total = 0;
  for (std::size_t q = 0; q < r.node_count(); ++q) {
    for (const auto& e : post_edges_into(r, q)) CHECK(e.target == q);
    total += post_edges_into(r, q).size();
  }
  CHECK(total == r.edges().size());
}

TEST_CASE("program validation") {
  Program p(2, Sort::integer, {"a"});
  CHECK_THROWS_AS(p.add_edge({0, 1, {}}), std::invalid_argument);
  CHECK_THROWS_AS(p.add_edge({0, 0, {ParallelAssign::identity(3)}}), std::invalid_argument);
  CHECK(p.node_index("a") == 0);
  CHECK_FALSE(p.node_index("b").has_value());
}
