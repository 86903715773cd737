#pragma once

/*! \file
 * \brief Affine equalities over exact rationals. An element is empty
 * or p + span(B), stored in canonical form: B in reduced row-echelon form and
 * p zero on the pivot columns of B, so == is set equality.
 */

#include <ainv/lattice.hpp>
#include <ainv/linalg.hpp>
#include <ainv/program.hpp>

#include <optional>
#include <string>

namespace ainv {

class AffSubspace {
public:
  static AffSubspace empty(std::size_t n);
  static AffSubspace universe(std::size_t n);
  static AffSubspace singleton(const Point& p);
  /// p + span(directions); the directions need not be independent.
  static AffSubspace from_generators(const Point& p, linalg::Matrix directions);
  /// Affine hull of a finite point set.
  static AffSubspace hull(const PointSet& points, std::size_t n);

  std::size_t dim_ambient() const { return n_; }
  bool is_empty() const { return empty_; }
  /// -1 for the empty set.
  long dimension() const { return empty_ ? -1 : static_cast<long>(basis_.size()); }
  const Point& point() const { return point_; }
  const linalg::Matrix& basis() const { return basis_; }

  bool contains(const Point& x) const;
  /// v in span(B)
  bool spans(const linalg::Vector& v) const;

  friend bool operator==(const AffSubspace&, const AffSubspace&) = default;

private:
  AffSubspace() = default;
  void canonicalize();
  linalg::Vector reduce(linalg::Vector v) const;

  std::size_t n_ = 0;
  bool empty_ = true;
  Point point_;
  linalg::Matrix basis_;
};

/// {x | rows * x + constants = 0}, rows in reduced echelon form.
struct ConstraintForm {
  std::size_t n = 0;
  bool inconsistent = false; // the empty set
  linalg::Matrix rows;
  linalg::Vector constants;

  friend bool operator==(const ConstraintForm&, const ConstraintForm&) = default;
};

/// a' is a subset of a
bool includes(const AffSubspace& a, const AffSubspace& sub);
AffSubspace join(const AffSubspace& a, const AffSubspace& b);
AffSubspace meet(const AffSubspace& a, const AffSubspace& b);
/// a intersected with {x | e(x) = 0}
AffSubspace meet_hyperplane(const AffSubspace& a, const LinExpr& e);

ConstraintForm generators_to_constraints(const AffSubspace& a);
AffSubspace constraints_to_generators(const ConstraintForm& cf);

AffSubspace bca_parallel_assign(const ParallelAssign& t, const AffSubspace& a);
AffSubspace bca_nondet_assign(std::size_t j, const AffSubspace& a);
AffSubspace guard_neq_identity(const AffSubspace& a);
/// Throws Unsupported for <, <=, >, >=.
AffSubspace bca_guard(const Guard& g, const AffSubspace& a);
AffSubspace bca_transfer(const TransferFunction& t, const AffSubspace& a);
AffSubspace bca_edge(const Edge& e, const AffSubspace& a);

/// `bot`, `top`, or `x1 + 2*x2 = 0 /\ x3 - 1 = 0` with integer coefficients.
std::string to_string(const AffSubspace& a);

/// Abstraction of a declaration literal.
AffSubspace affine_abstract(const Literal& lit, std::size_t n);

class AffineDomain {
public:
  using Element = AffSubspace;

  explicit AffineDomain(std::size_t n) : n_(n) {}
  std::size_t dim() const { return n_; }

  bool leq(const AffSubspace& a, const AffSubspace& b) const { return includes(b, a); }
  AffSubspace join(const AffSubspace& a, const AffSubspace& b) const { return ainv::join(a, b); }
  AffSubspace meet(const AffSubspace& a, const AffSubspace& b) const { return ainv::meet(a, b); }
  AffSubspace bottom() const { return AffSubspace::empty(n_); }
  AffSubspace top() const { return AffSubspace::universe(n_); }
  AffSubspace canonicalize(const AffSubspace& a) const { return a; }
  std::optional<std::size_t> height() const { return n_ + 1; }

private:
  std::size_t n_;
};

} // namespace ainv
