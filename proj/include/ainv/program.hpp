#pragma once

/*! \file
 * \brief Control-flow-graph programs <Q, n, V, T, ->: affine expressions,
 * transfer functions, edges, declared initial states, the text format and
 * the finite collecting semantics used by test oracles.
 */

#include <ainv/numeric.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ainv {

enum class Sort { integer, rational };

/// sum_i coeffs[i] * x_{i+1} + constant
struct LinExpr {
  std::vector<Rational> coeffs;
  Rational constant = 0;

  static LinExpr zero(std::size_t n) { return {std::vector<Rational>(n, 0), 0}; }
  static LinExpr variable(std::size_t n, std::size_t j);

  std::size_t dim() const { return coeffs.size(); }
  bool is_constant() const;
  Rational eval(const Point& p) const;

  friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

enum class Relation { eq, ne, lt, le, gt, ge };

Relation negate(Relation r);
bool holds(const Rational& value, Relation r); // value r 0
std::string_view to_string(Relation r);

/// expr rel 0
struct Constraint {
  LinExpr expr;
  Relation rel = Relation::eq;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

enum class Junction { conj, disj };

struct Identity {
  friend bool operator==(const Identity&, const Identity&) = default;
};

/// x := M x + b with all right-hand sides read from the old state.
/*! rows[j] is the new value of x_{j+1}; an unassigned variable has the
 * identity row. */
struct ParallelAssign {
  std::vector<LinExpr> rows;

  static ParallelAssign identity(std::size_t n);
  bool is_identity() const;

  friend bool operator==(const ParallelAssign&, const ParallelAssign&) = default;
};

/// x_{target+1} := ?
struct NondetAssign {
  std::size_t target = 0;

  friend bool operator==(const NondetAssign&, const NondetAssign&) = default;
};

/// Conjunction or disjunction of affine constraints.
struct Guard {
  std::vector<Constraint> atoms;
  Junction junction = Junction::conj;

  friend bool operator==(const Guard&, const Guard&) = default;
};

using TransferFunction = std::variant<Identity, ParallelAssign, NondetAssign, Guard>;

/// Edge label: transfer functions applied left to right. Empty = identity.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<TransferFunction> steps;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Domain-element literals shared by `init` declarations and safety
// properties. Each domain abstracts them into its own elements.
struct TopLiteral {
  friend bool operator==(const TopLiteral&, const TopLiteral&) = default;
};
struct BotLiteral {
  friend bool operator==(const BotLiteral&, const BotLiteral&) = default;
};
/// (c1, ..., cn) with nullopt for `top`.
struct TupleLiteral {
  std::vector<std::optional<Rational>> slots;
  friend bool operator==(const TupleLiteral&, const TupleLiteral&) = default;
};
/// {(v..); (v..)}: a finite point set.
struct PointsLiteral {
  std::vector<Point> points;
  friend bool operator==(const PointsLiteral&, const PointsLiteral&) = default;
};
/// e1 = 0 /\ e2 = 0 /\ ...
struct EqualitiesLiteral {
  std::vector<LinExpr> rows;
  friend bool operator==(const EqualitiesLiteral&, const EqualitiesLiteral&) = default;
};

using Literal = std::variant<TopLiteral, BotLiteral, TupleLiteral, PointsLiteral,
                             EqualitiesLiteral>;

class Program {
public:
  Program() = default;
  Program(std::size_t vars, Sort sort, std::vector<std::string> nodes);

  std::size_t vars() const { return vars_; }
  Sort sort() const { return sort_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Declared initial literal per node; nullopt means bottom.
  const std::vector<std::optional<Literal>>& init() const { return init_; }

  std::optional<std::size_t> node_index(std::string_view name) const;
  std::size_t require_node(std::string_view name) const;

  /// Throws std::invalid_argument on endpoint or dimension mismatch.
  void add_edge(Edge e);
  void set_init(std::size_t node, Literal lit);

  friend bool operator==(const Program&, const Program&) = default;

private:
  std::size_t vars_ = 0;
  Sort sort_ = Sort::integer;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::optional<Literal>> init_;
};

/// Parse the line-oriented program format; throws ParseError.
Program parse_program(std::string_view text);

/// Parse a domain-element literal for a program with n variables.
Literal parse_literal(std::string_view text, std::size_t n, Sort sort);

/// Parse "qk: <literal>" against a program.
std::pair<std::size_t, Literal> parse_node_literal(std::string_view text,
                                                   const Program& program);

std::string to_string(const LinExpr& e);
std::string to_string(const TransferFunction& t);
std::string to_string(const Literal& lit);
/// Canonical source text; parse_program(print_program(p)) == p.
std::string print_program(const Program& p);

/// Edges whose target is `target`, in declaration order.
std::vector<Edge> post_edges_into(const Program& p, std::size_t target);

// ---------------------------------------------------------------------------
// Finite collecting semantics

using PointSet = std::set<Point>;

/// Exact image of a finite point set under t. A nondeterministic assignment
/// only draws from `witnesses`, so its image is an under-sample of the true
/// (infinite) one.
PointSet apply_transfer_concrete(const TransferFunction& t, const PointSet& points,
                                 const std::vector<Rational>& witnesses = {});

PointSet apply_edge_concrete(const Edge& e, const PointSet& points,
                             const std::vector<Rational>& witnesses = {});

} // namespace ainv
