#include <ainv/const_domain.hpp>
#include <ainv/errors.hpp>

#include <stdexcept>

namespace ainv {

ConstVec ConstVec::of(std::vector<ConstVal> slots) {
  const std::size_t n = slots.size();
  return {n, false, std::move(slots)};
}

std::string to_string(const ConstVal& v) { return v ? v->get_str() : "top"; }

std::string to_string(const ConstVec& a) {
  if (a.is_bottom) return "bot";
  std::string out = "(";
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.slots[i]);
  }
  return out + ")";
}

bool ConstDomain::leq(const ConstVec& a, const ConstVec& b) const {
  if (a.is_bottom) return true;
  if (b.is_bottom) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (b.slots[i] && a.slots[i] != b.slots[i]) return false;
  return true;
}

ConstVec ConstDomain::join(const ConstVec& a, const ConstVec& b) const {
  if (a.is_bottom) return b;
  if (b.is_bottom) return a;
  ConstVec out = a;
  for (std::size_t i = 0; i < n_; ++i)
    if (a.slots[i] != b.slots[i]) out.slots[i].reset();
  return out;
}

ConstVec ConstDomain::meet(const ConstVec& a, const ConstVec& b) const {
  if (a.is_bottom || b.is_bottom) return bottom();
  ConstVec out = a;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a.slots[i]) {
      out.slots[i] = b.slots[i];
    } else if (b.slots[i] && *a.slots[i] != *b.slots[i]) {
      return bottom();
    }
  }
  return out;
}

ConstVec ConstDomain::canonicalize(const ConstVec& a) const {
  if (a.is_bottom) return bottom();
  if (a.slots.size() != n_) throw std::invalid_argument("ConstVec arity mismatch");
  return a;
}

namespace {

Integer require_integer(const Rational& q) {
  if (!is_integral(q)) throw Error("non-integer value " + q.get_str() + " in an integer domain");
  return q.get_num();
}

} // namespace

ConstVec alpha_points(const PointSet& points, std::size_t n) {
  if (points.empty()) return ConstVec::bottom(n);
  ConstVec out = ConstVec::top(n);
  const Point& first = *points.begin();
  if (first.size() != n) throw std::invalid_argument("point arity mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    bool same = true;
    for (const auto& p : points) {
      if (p.size() != n) throw std::invalid_argument("point arity mismatch");
      if (p[i] != first[i]) {
        same = false;
        break;
      }
    }
    if (same) out.slots[i] = require_integer(first[i]);
  }
  return out;
}

PointSet gamma_box(const ConstVec& a, long r) {
  PointSet out;
  if (a.is_bottom) return out;
  Point cur(a.dim);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == a.dim) {
      out.insert(cur);
      return;
    }
    if (a.slots[i]) {
      cur[i] = Rational(*a.slots[i]);
      self(self, i + 1);
      return;
    }
    for (long v = -r; v <= r; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

GaloisInsertion<ConstConcrete, ConstVec> const_galois_insertion(std::size_t n) {
  return {[n](const ConstConcrete& c) -> ConstVec {
            if (const auto* pts = std::get_if<PointSet>(&c)) return alpha_points(*pts, n);
            return std::get<ConstVec>(c);
          },
          [](const ConstVec& a) -> ConstConcrete { return a; }};
}

ConstEval eval_linexpr_abstract(const LinExpr& e, const ConstVec& a) {
  if (a.is_bottom) return {};
  Rational v = e.constant;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] == 0) continue;
    if (!a.slots.at(i)) return {ConstEval::Kind::top, 0};
    v += e.coeffs[i] * Rational(*a.slots[i]);
  }
  return {ConstEval::Kind::constant, v};
}

namespace {

// Slot value of an assignment result; a non-integral constant has no
// integer state behind it.
std::optional<ConstVal> slot_value(const ConstEval& r) {
  if (r.kind == ConstEval::Kind::top) return ConstVal{};
  if (!is_integral(r.value)) return std::nullopt;
  return ConstVal{r.value.get_num()};
}

} // namespace

ConstVec bca_assign(std::size_t j, const LinExpr& e, const ConstVec& a) {
  if (a.is_bottom) return a;
  auto v = slot_value(eval_linexpr_abstract(e, a));
  if (!v) return ConstVec::bottom(a.dim);
  ConstVec out = a;
  out.slots.at(j) = *v;
  return out;
}

ConstVec bca_parallel_assign(const ParallelAssign& t, const ConstVec& a) {
  if (a.is_bottom) return a;
  ConstVec out = a;
  for (std::size_t j = 0; j < t.rows.size(); ++j) {
    auto v = slot_value(eval_linexpr_abstract(t.rows[j], a));
    if (!v) return ConstVec::bottom(a.dim);
    out.slots[j] = *v;
  }
  return out;
}

ConstVec bca_nondet_assign(std::size_t j, const ConstVec& a) {
  if (a.is_bottom) return a;
  ConstVec out = a;
  out.slots.at(j).reset();
  return out;
}

ConstVec bca_rel_guard(const LinExpr& e, Relation rel, const ConstVec& a) {
  const ConstEval r = eval_linexpr_abstract(e, a);
  switch (r.kind) {
  case ConstEval::Kind::bottom: return a;
  case ConstEval::Kind::top: return a;
  case ConstEval::Kind::constant: return holds(r.value, rel) ? a : ConstVec::bottom(a.dim);
  }
  return a;
}

ConstVec bca_eq_guard(const LinExpr& e, const ConstVec& a) {
  if (a.is_bottom) return a;
  Rational k = e.constant;
  std::vector<std::size_t> tops;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] == 0) continue;
    if (a.slots.at(i))
      k += e.coeffs[i] * Rational(*a.slots[i]);
    else
      tops.push_back(i);
  }
  if (tops.empty()) return k == 0 ? a : ConstVec::bottom(a.dim);

  // Clear denominators: sum_j M_j x_j + K = 0 over the top slots.
  Integer l = k.get_den();
  for (auto j : tops) l = lcm(l, Integer(e.coeffs[j].get_den()));
  const Integer K = Rational(k * Rational(l)).get_num();
  std::vector<Integer> M;
  for (auto j : tops) M.push_back(Rational(e.coeffs[j] * Rational(l)).get_num());

  if (tops.size() == 1) {
    if (K % M[0] != 0) return ConstVec::bottom(a.dim);
    ConstVec out = a;
    out.slots[tops[0]] = Integer(-K / M[0]);
    return out;
  }
  Integer g = 0;
  for (const auto& m : M) g = gcd(g, m);
  return K % g == 0 ? a : ConstVec::bottom(a.dim);
}

ConstVec bca_atom(const Constraint& c, const ConstVec& a) {
  if (c.rel == Relation::eq) return bca_eq_guard(c.expr, a);
  return bca_rel_guard(c.expr, c.rel, a);
}

ConstVec bca_guard(const Guard& g, const ConstVec& a) {
  if (a.is_bottom) return a;
  ConstDomain d(a.dim);
  if (g.junction == Junction::disj) {
    ConstVec out = d.bottom();
    for (const auto& c : g.atoms) out = d.join(out, bca_atom(c, a));
    return out;
  }
  ConstVec cur = a;
  for (;;) {
    ConstVec prev = cur;
    for (const auto& c : g.atoms) cur = bca_atom(c, cur);
    if (cur == prev) return cur;
  }
}

ConstVec bca_transfer(const TransferFunction& t, const ConstVec& a) {
  return std::visit(
      [&](const auto& x) -> ConstVec {
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

ConstVec bca_edge(const Edge& e, const ConstVec& a) {
  ConstVec cur = a;
  for (const auto& t : e.steps) cur = bca_transfer(t, cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Weakest liberal preconditions

namespace {

Guard negated(const Guard& g) {
  Guard out;
  out.junction = g.junction == Junction::conj ? Junction::disj : Junction::conj;
  for (const auto& c : g.atoms) out.atoms.push_back({c.expr, negate(c.rel)});
  return out;
}

} // namespace

ConstVec pret_transfer(const TransferFunction& t, const ConstVec& post) {
  const std::size_t n = post.dim;
  return std::visit(
      [&](const auto& x) -> ConstVec {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return post;
        } else if constexpr (std::is_same_v<T, ParallelAssign>) {
          if (post.is_bottom) return post;
          // {x | row_j(x) = k_j for every constant slot j of post}
          Guard g;
          for (std::size_t j = 0; j < n; ++j) {
            if (!post.slots[j]) continue;
            LinExpr e = x.rows[j];
            e.constant -= Rational(*post.slots[j]);
            g.atoms.push_back({std::move(e), Relation::eq});
          }
          return bca_guard(g, ConstVec::top(n));
        } else if constexpr (std::is_same_v<T, NondetAssign>) {
          if (post.is_bottom || post.slots[x.target]) return ConstVec::bottom(n);
          return post;
        } else {
          // pret_g(Y) = not g  union  Y
          return ConstDomain(n).join(bca_guard(negated(x), ConstVec::top(n)), post);
        }
      },
      t);
}

ConstVec pret_edge(const Edge& e, const ConstVec& post) {
  ConstVec cur = post;
  for (auto it = e.steps.rbegin(); it != e.steps.rend(); ++it) cur = pret_transfer(*it, cur);
  return cur;
}

ConstVec const_abstract(const Literal& lit, std::size_t n) {
  return std::visit(
      [n](const auto& x) -> ConstVec {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TopLiteral>) {
          return ConstVec::top(n);
        } else if constexpr (std::is_same_v<T, BotLiteral>) {
          return ConstVec::bottom(n);
        } else if constexpr (std::is_same_v<T, TupleLiteral>) {
          if (x.slots.size() != n) throw Error("literal arity mismatch");
          ConstVec out = ConstVec::top(n);
          for (std::size_t i = 0; i < n; ++i)
            if (x.slots[i]) out.slots[i] = require_integer(*x.slots[i]);
          return out;
        } else if constexpr (std::is_same_v<T, PointsLiteral>) {
          return alpha_points(PointSet(x.points.begin(), x.points.end()), n);
        } else {
          Guard g;
          for (const auto& e : x.rows) {
            if (e.dim() != n) throw Error("literal arity mismatch");
            g.atoms.push_back({e, Relation::eq});
          }
          return bca_guard(g, ConstVec::top(n));
        }
      },
      lit);
}

} // namespace ainv
