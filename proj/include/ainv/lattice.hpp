#pragma once

/*! \file
 * \brief Order-theoretic core: the abstract domain contract, Kleene
 * iteration for least/greatest fixpoints, inductive invariant checks,
 * closure operators, Galois insertions and Q-indexed product lattices.
 *
 * Everything here is generic over a domain object satisfying
 * ainv::AbstractDomain. Elements are values; every operation is pure.
 */

#include <ainv/errors.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ainv {

/// A domain object describing a complete lattice <A, leq>.
/*! Elements must be kept in canonical form so that == coincides with
 * semantic equality; canonicalize() is the explicit normalization step. */
template <class D>
concept AbstractDomain =
    std::equality_comparable<typename D::Element> &&
    requires(const D& d, const typename D::Element& a,
             const typename D::Element& b) {
      { d.leq(a, b) } -> std::convertible_to<bool>;
      { d.join(a, b) } -> std::same_as<typename D::Element>;
      { d.meet(a, b) } -> std::same_as<typename D::Element>;
      { d.bottom() } -> std::same_as<typename D::Element>;
      { d.top() } -> std::same_as<typename D::Element>;
      { d.canonicalize(a) } -> std::same_as<typename D::Element>;
      { d.height() } -> std::same_as<std::optional<std::size_t>>;
    };

template <AbstractDomain D> using ElementOf = typename D::Element;

template <AbstractDomain D>
bool is_finite_height(const D& d) {
  return d.height().has_value();
}

struct IterationOptions {
  std::size_t max_steps = 10000;
};

template <class E> struct Fixpoint {
  E value;
  /// Number of applications of f that produced a new iterate.
  std::size_t steps = 0;
  /// start, f(start), f^2(start), ... up to and including value.
  std::vector<E> iterates;
};

namespace detail {

template <AbstractDomain D>
std::size_t effective_budget(const D& d, const IterationOptions& opts) {
  std::size_t budget = opts.max_steps;
  // A strictly monotone chain in a lattice of height h has at most h steps.
  if (auto h = d.height()) budget = std::min(budget, *h);
  return budget;
}

} // namespace detail

/// Least fixpoint of a monotone f above start by Kleene iteration.
/*! Requires start <= f(start); start = bottom always qualifies. The number
 * of strict steps is bounded by the domain height when one is declared, and
 * by opts.max_steps otherwise; exceeding the bound throws
 * IterationBudgetExceeded. */
template <AbstractDomain D, class F>
  requires std::invocable<const F&, const ElementOf<D>&>
Fixpoint<ElementOf<D>> lfp_iterate(const D& d, const F& f,
                                   const ElementOf<D>& start,
                                   const IterationOptions& opts = {}) {
  const std::size_t budget = detail::effective_budget(d, opts);
  Fixpoint<ElementOf<D>> out{start, 0, {start}};
  for (;;) {
    ElementOf<D> next = f(out.value);
    if (out.steps == 0 && !d.leq(out.value, next))
      throw std::invalid_argument("lfp_iterate: start is not below f(start)");
    if (d.leq(next, out.value)) return out;
    if (out.steps == budget) throw IterationBudgetExceeded(budget);
    out.value = std::move(next);
    out.iterates.push_back(out.value);
    ++out.steps;
  }
}

/// Greatest fixpoint of a monotone f below start, dual of lfp_iterate.
template <AbstractDomain D, class F>
  requires std::invocable<const F&, const ElementOf<D>&>
Fixpoint<ElementOf<D>> gfp_iterate(const D& d, const F& f,
                                   const ElementOf<D>& start,
                                   const IterationOptions& opts = {}) {
  const std::size_t budget = detail::effective_budget(d, opts);
  Fixpoint<ElementOf<D>> out{start, 0, {start}};
  for (;;) {
    ElementOf<D> next = f(out.value);
    if (out.steps == 0 && !d.leq(next, out.value))
      throw std::invalid_argument("gfp_iterate: f(start) is not below start");
    if (d.leq(out.value, next)) return out;
    if (out.steps == budget) throw IterationBudgetExceeded(budget);
    out.value = std::move(next);
    out.iterates.push_back(out.value);
    ++out.steps;
  }
}

/// c <= i, f(i) <= i and i <= c_safe.
template <AbstractDomain D, class F>
bool check_inductive_invariant(const D& d, const F& f, const ElementOf<D>& c,
                               const ElementOf<D>& c_safe,
                               const ElementOf<D>& i) {
  return d.leq(c, i) && d.leq(f(i), i) && d.leq(i, c_safe);
}

// ---------------------------------------------------------------------------
// Closures and Galois insertions

enum class ClosureKind { upper, lower };

template <class C> struct ClosureOperator {
  std::function<C(const C&)> apply;
  ClosureKind kind = ClosureKind::upper;

  C operator()(const C& c) const { return apply(c); }
};

template <class C, class A> struct GaloisInsertion {
  std::function<A(const C&)> alpha;
  std::function<C(const A&)> gamma;
};

/// Closure laws checked on an enumerated (or sampled) carrier.
template <class C, class Leq>
bool is_closure(const ClosureOperator<C>& mu, std::span<const C> carrier,
                const Leq& leq) {
  for (const C& x : carrier) {
    const C mx = mu(x);
    if (!(mu(mx) == mx)) return false;
    const bool ok = mu.kind == ClosureKind::upper ? leq(x, mx) : leq(mx, x);
    if (!ok) return false;
    for (const C& y : carrier)
      if (leq(x, y) && !leq(mx, mu(y))) return false;
  }
  return true;
}

/// Adjunction alpha(c) <= a <=> c <= gamma(a) on all given pairs.
template <class C, class A, class LeqC, class LeqA>
bool adjunction_holds(const GaloisInsertion<C, A>& gi,
                      std::span<const C> concrete, std::span<const A> abstract,
                      const LeqC& leq_c, const LeqA& leq_a) {
  for (const C& c : concrete)
    for (const A& a : abstract)
      if (leq_a(gi.alpha(c), a) != leq_c(c, gi.gamma(a))) return false;
  return true;
}

/// alpha . gamma = id on the given abstract elements.
template <class C, class A>
bool is_insertion(const GaloisInsertion<C, A>& gi, std::span<const A> abstract) {
  return std::all_of(abstract.begin(), abstract.end(),
                     [&](const A& a) { return gi.alpha(gi.gamma(a)) == a; });
}

/// The closure gamma . alpha induced by a Galois insertion.
/*! Throws std::invalid_argument when alpha is not surjective onto the given
 * abstract carrier (equivalently alpha . gamma differs from the identity). */
template <class C, class A>
ClosureOperator<C> gi_to_closure(const GaloisInsertion<C, A>& gi,
                                 std::span<const A> abstract) {
  if (!is_insertion(gi, abstract))
    throw std::invalid_argument("gi_to_closure: not a Galois insertion");
  return {[gi](const C& c) { return gi.gamma(gi.alpha(c)); },
          ClosureKind::upper};
}

/// The insertion (C, mu, id, mu(C)) of an upper closure.
template <class C, class Leq>
GaloisInsertion<C, C> closure_to_gi(const ClosureOperator<C>& mu,
                                    std::span<const C> carrier, const Leq& leq) {
  if (mu.kind != ClosureKind::upper || !is_closure(mu, carrier, leq))
    throw std::invalid_argument("closure_to_gi: not an upper closure");
  return {mu.apply, [](const C& c) { return c; }};
}

/// mu(C) on an enumerated carrier, in carrier order without duplicates.
template <class C>
std::vector<C> closure_image(const ClosureOperator<C>& mu,
                             std::span<const C> carrier) {
  std::vector<C> image;
  for (const C& c : carrier) {
    C m = mu(c);
    if (std::find(image.begin(), image.end(), m) == image.end())
      image.push_back(std::move(m));
  }
  return image;
}

// ---------------------------------------------------------------------------
// Product lattice

/// One abstract element per control node, indexed by node position.
template <class E> using StateVector = std::vector<E>;

/// The Q-indexed product of a component domain; all operations pointwise.
template <AbstractDomain D> class ProductDomain {
public:
  using Element = StateVector<ElementOf<D>>;

  ProductDomain(D component, std::size_t nodes)
      : component_(std::move(component)), nodes_(nodes) {}

  const D& component() const { return component_; }
  std::size_t nodes() const { return nodes_; }

  bool leq(const Element& a, const Element& b) const {
    for (std::size_t q = 0; q < nodes_; ++q)
      if (!component_.leq(a[q], b[q])) return false;
    return true;
  }
  Element join(const Element& a, const Element& b) const {
    return zip(a, b, [&](const auto& x, const auto& y) {
      return component_.join(x, y);
    });
  }
  Element meet(const Element& a, const Element& b) const {
    return zip(a, b, [&](const auto& x, const auto& y) {
      return component_.meet(x, y);
    });
  }
  Element bottom() const { return Element(nodes_, component_.bottom()); }
  Element top() const { return Element(nodes_, component_.top()); }
  Element canonicalize(const Element& a) const {
    Element out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(component_.canonicalize(x));
    return out;
  }
  std::optional<std::size_t> height() const {
    if (auto h = component_.height()) return *h * nodes_;
    return std::nullopt;
  }

private:
  template <class Op>
  Element zip(const Element& a, const Element& b, Op op) const {
    Element out;
    out.reserve(nodes_);
    for (std::size_t q = 0; q < nodes_; ++q) out.push_back(op(a[q], b[q]));
    return out;
  }

  D component_;
  std::size_t nodes_;
};

} // namespace ainv
