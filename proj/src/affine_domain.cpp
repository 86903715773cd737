#include <ainv/affine_domain.hpp>
#include <ainv/errors.hpp>

#include <stdexcept>

namespace ainv {

using linalg::Matrix;
using linalg::Vector;

namespace {

std::size_t leading(const Vector& row) {
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) return i;
  return row.size();
}

} // namespace

AffSubspace AffSubspace::empty(std::size_t n) {
  AffSubspace a;
  a.n_ = n;
  return a;
}

AffSubspace AffSubspace::universe(std::size_t n) {
  Matrix dirs;
  for (std::size_t j = 0; j < n; ++j) dirs.push_back(linalg::unit(n, j));
  return from_generators(linalg::zeros(n), std::move(dirs));
}

AffSubspace AffSubspace::singleton(const Point& p) { return from_generators(p, {}); }

AffSubspace AffSubspace::from_generators(const Point& p, Matrix directions) {
  AffSubspace a;
  a.n_ = p.size();
  a.empty_ = false;
  a.point_ = p;
  for (const auto& d : directions)
    if (d.size() != a.n_) throw std::invalid_argument("direction arity mismatch");
  a.basis_ = std::move(directions);
  a.canonicalize();
  return a;
}

AffSubspace AffSubspace::hull(const PointSet& points, std::size_t n) {
  if (points.empty()) return empty(n);
  const Point& p0 = *points.begin();
  Matrix dirs;
  for (const auto& q : points)
    if (&q != &p0) dirs.push_back(linalg::sub(q, p0));
  return from_generators(p0, std::move(dirs));
}

void AffSubspace::canonicalize() {
  linalg::rref(basis_);
  point_ = reduce(point_);
}

Vector AffSubspace::reduce(Vector v) const {
  for (const auto& row : basis_) {
    const std::size_t piv = leading(row);
    if (v[piv] != 0) v = linalg::axpy(v, -v[piv], row);
  }
  return v;
}

bool AffSubspace::spans(const Vector& v) const { return linalg::is_zero(reduce(v)); }

bool AffSubspace::contains(const Point& x) const {
  return !empty_ && spans(linalg::sub(x, point_));
}

bool includes(const AffSubspace& a, const AffSubspace& sub) {
  if (sub.is_empty()) return true;
  if (a.is_empty()) return false;
  if (!a.spans(linalg::sub(sub.point(), a.point()))) return false;
  for (const auto& b : sub.basis())
    if (!a.spans(b)) return false;
  return true;
}

AffSubspace join(const AffSubspace& a, const AffSubspace& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  Matrix dirs = a.basis();
  dirs.insert(dirs.end(), b.basis().begin(), b.basis().end());
  dirs.push_back(linalg::sub(b.point(), a.point()));
  return AffSubspace::from_generators(a.point(), std::move(dirs));
}

AffSubspace meet_hyperplane(const AffSubspace& a, const LinExpr& e) {
  if (a.is_empty()) return a;
  if (e.dim() != a.dim_ambient()) throw std::invalid_argument("expression arity mismatch");
  const Rational ep = linalg::dot(e.coeffs, a.point()) + e.constant;
  const Matrix& B = a.basis();
  std::vector<Rational> rb;
  std::size_t k = B.size();
  for (std::size_t i = 0; i < B.size(); ++i) {
    rb.push_back(linalg::dot(e.coeffs, B[i]));
    if (k == B.size() && rb.back() != 0) k = i;
  }
  if (k == B.size()) return ep == 0 ? a : AffSubspace::empty(a.dim_ambient());
  // Move along B[k] to the hyperplane; make the other directions parallel to it.
  Point p = linalg::axpy(a.point(), -ep / rb[k], B[k]);
  Matrix dirs;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (i != k) dirs.push_back(linalg::axpy(B[i], -rb[i] / rb[k], B[k]));
  return AffSubspace::from_generators(p, std::move(dirs));
}

AffSubspace meet(const AffSubspace& a, const AffSubspace& b) {
  if (a.is_empty()) return a;
  if (b.is_empty()) return b;
  const ConstraintForm cf = generators_to_constraints(b);
  AffSubspace out = a;
  for (std::size_t i = 0; i < cf.rows.size(); ++i)
    out = meet_hyperplane(out, LinExpr{cf.rows[i], cf.constants[i]});
  return out;
}

ConstraintForm generators_to_constraints(const AffSubspace& a) {
  ConstraintForm cf;
  cf.n = a.dim_ambient();
  if (a.is_empty()) {
    cf.inconsistent = true;
    return cf;
  }
  cf.rows = linalg::nullspace(a.basis(), cf.n);
  for (const auto& r : cf.rows) cf.constants.push_back(-linalg::dot(r, a.point()));
  return cf;
}

AffSubspace constraints_to_generators(const ConstraintForm& cf) {
  if (cf.inconsistent) return AffSubspace::empty(cf.n);
  AffSubspace out = AffSubspace::universe(cf.n);
  for (std::size_t i = 0; i < cf.rows.size(); ++i)
    out = meet_hyperplane(out, LinExpr{cf.rows[i], cf.constants[i]});
  return out;
}

AffSubspace bca_parallel_assign(const ParallelAssign& t, const AffSubspace& a) {
  if (a.is_empty()) return a;
  Point p(t.rows.size());
  for (std::size_t j = 0; j < t.rows.size(); ++j) p[j] = t.rows[j].eval(a.point());
  Matrix dirs;
  for (const auto& b : a.basis()) {
    Vector d(t.rows.size());
    for (std::size_t j = 0; j < t.rows.size(); ++j) d[j] = linalg::dot(t.rows[j].coeffs, b);
    dirs.push_back(std::move(d));
  }
  return AffSubspace::from_generators(p, std::move(dirs));
}

AffSubspace bca_nondet_assign(std::size_t j, const AffSubspace& a) {
  const std::size_t n = a.dim_ambient();
  ParallelAssign to0 = ParallelAssign::identity(n);
  to0.rows.at(j) = LinExpr::zero(n);
  ParallelAssign to1 = to0;
  to1.rows[j].constant = 1;
  return join(bca_parallel_assign(to0, a), bca_parallel_assign(to1, a));
}

AffSubspace guard_neq_identity(const AffSubspace& a) { return a; }

namespace {

AffSubspace bca_atom(const Constraint& c, const AffSubspace& a) {
  switch (c.rel) {
  case Relation::eq: return meet_hyperplane(a, c.expr);
  case Relation::ne: return guard_neq_identity(a);
  default:
    throw Unsupported("inequality guard " + to_string(c.expr) + " " +
                      std::string(to_string(c.rel)) + " 0 has no affine abstraction");
  }
}

} // namespace

AffSubspace bca_guard(const Guard& g, const AffSubspace& a) {
  if (g.junction == Junction::disj) {
    AffSubspace out = AffSubspace::empty(a.dim_ambient());
    for (const auto& c : g.atoms) out = join(out, bca_atom(c, a));
    return out;
  }
  AffSubspace cur = a;
  for (const auto& c : g.atoms) cur = bca_atom(c, cur);
  return cur;
}

AffSubspace bca_transfer(const TransferFunction& t, const AffSubspace& a) {
  return std::visit(
      [&](const auto& x) -> AffSubspace {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Identity>)
          return a;
        else if constexpr (std::is_same_v<T, ParallelAssign>)
          return bca_parallel_assign(x, a);
        else if constexpr (std::is_same_v<T, NondetAssign>)
          return bca_nondet_assign(x.target, a);
        else
          return bca_guard(x, a);
      },
      t);
}

AffSubspace bca_edge(const Edge& e, const AffSubspace& a) {
  AffSubspace cur = a;
  for (const auto& t : e.steps) cur = bca_transfer(t, cur);
  return cur;
}

std::string to_string(const AffSubspace& a) {
  if (a.is_empty()) return "bot";
  if (a.dimension() == static_cast<long>(a.dim_ambient())) return "top";
  const ConstraintForm cf = generators_to_constraints(a);
  std::string out;
  for (std::size_t i = 0; i < cf.rows.size(); ++i) {
    Vector row = cf.rows[i];
    row.push_back(cf.constants[i]);
    const auto ints = linalg::clear_denominators(row);
    LinExpr e = LinExpr::zero(a.dim_ambient());
    for (std::size_t j = 0; j < e.coeffs.size(); ++j) e.coeffs[j] = Rational(ints[j]);
    e.constant = Rational(ints.back());
    if (i) out += " /\\ ";
    out += to_string(e) + " = 0";
  }
  return out;
}

AffSubspace affine_abstract(const Literal& lit, std::size_t n) {
  return std::visit(
      [n](const auto& x) -> AffSubspace {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TopLiteral>) {
          return AffSubspace::universe(n);
        } else if constexpr (std::is_same_v<T, BotLiteral>) {
          return AffSubspace::empty(n);
        } else if constexpr (std::is_same_v<T, TupleLiteral>) {
          if (x.slots.size() != n) throw Error("literal arity mismatch");
          AffSubspace out = AffSubspace::universe(n);
          for (std::size_t j = 0; j < n; ++j) {
            if (!x.slots[j]) continue;
            LinExpr e = LinExpr::variable(n, j);
            e.constant = -*x.slots[j];
            out = meet_hyperplane(out, e);
          }
          return out;
        } else if constexpr (std::is_same_v<T, PointsLiteral>) {
          for (const auto& p : x.points)
            if (p.size() != n) throw Error("literal arity mismatch");
          return AffSubspace::hull(PointSet(x.points.begin(), x.points.end()), n);
        } else {
          AffSubspace out = AffSubspace::universe(n);
          for (const auto& e : x.rows) {
            if (e.dim() != n) throw Error("literal arity mismatch");
            out = meet_hyperplane(out, e);
          }
          return out;
        }
      },
      lit);
}

} // namespace ainv
