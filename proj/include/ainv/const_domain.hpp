#pragma once

/*! \file
 * \brief Constant propagation over integer variables: Const_n, its Galois
 * insertion with finite point sets and the best correct approximations of
 * affine assignments, nondeterministic assignments and linear guards.
 */

#include <ainv/lattice.hpp>
#include <ainv/program.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ainv {

/// A flat-lattice value: an integer, or nullopt for top.
using ConstVal = std::optional<Integer>;

/// Bottom, or an n-vector of ConstVal.
struct ConstVec {
  std::size_t dim = 0;
  bool is_bottom = true;
  std::vector<ConstVal> slots; // empty when is_bottom

  static ConstVec bottom(std::size_t n) { return {n, true, {}}; }
  static ConstVec top(std::size_t n) { return {n, false, std::vector<ConstVal>(n)}; }
  static ConstVec of(std::vector<ConstVal> slots);

  friend bool operator==(const ConstVec&, const ConstVec&) = default;
};

std::string to_string(const ConstVal& v);
/// `bot` or `(k|top, ...)`
std::string to_string(const ConstVec& a);

class ConstDomain {
public:
  using Element = ConstVec;

  explicit ConstDomain(std::size_t n) : n_(n) {}
  std::size_t dim() const { return n_; }

  bool leq(const ConstVec& a, const ConstVec& b) const;
  ConstVec join(const ConstVec& a, const ConstVec& b) const;
  ConstVec meet(const ConstVec& a, const ConstVec& b) const;
  ConstVec bottom() const { return ConstVec::bottom(n_); }
  ConstVec top() const { return ConstVec::top(n_); }
  ConstVec canonicalize(const ConstVec& a) const;
  std::optional<std::size_t> height() const { return 2 * n_; }

private:
  std::size_t n_;
};

ConstVec alpha_points(const PointSet& points, std::size_t n);

/// Points of gamma(a) inside the box [-r, r]^n (all of gamma(a) when every
/// slot is constant).
PointSet gamma_box(const ConstVec& a, long r);

/// Concrete side of the Const insertion: an explicit finite set, or a
/// symbolic gamma(a).
using ConstConcrete = std::variant<PointSet, ConstVec>;
GaloisInsertion<ConstConcrete, ConstVec> const_galois_insertion(std::size_t n);

/// Value of an expression over gamma(a).
struct ConstEval {
  enum class Kind { bottom, constant, top };
  Kind kind = Kind::bottom;
  Rational value = 0;
};

ConstEval eval_linexpr_abstract(const LinExpr& e, const ConstVec& a);

ConstVec bca_assign(std::size_t j, const LinExpr& e, const ConstVec& a);
ConstVec bca_parallel_assign(const ParallelAssign& t, const ConstVec& a);
ConstVec bca_nondet_assign(std::size_t j, const ConstVec& a);
/// e rel 0 for rel != eq.
ConstVec bca_rel_guard(const LinExpr& e, Relation rel, const ConstVec& a);
/// e = 0.
ConstVec bca_eq_guard(const LinExpr& e, const ConstVec& a);
ConstVec bca_atom(const Constraint& c, const ConstVec& a);
ConstVec bca_guard(const Guard& g, const ConstVec& a);
ConstVec bca_transfer(const TransferFunction& t, const ConstVec& a);
ConstVec bca_edge(const Edge& e, const ConstVec& a);

/// Over-approximation of alpha(pret_t(gamma(a'))): the states whose every
/// t-successor lies in gamma(a').
ConstVec pret_transfer(const TransferFunction& t, const ConstVec& post);
ConstVec pret_edge(const Edge& e, const ConstVec& post);

/// Abstraction of a declaration literal; throws Error for non-integer data.
ConstVec const_abstract(const Literal& lit, std::size_t n);

} // namespace ainv
