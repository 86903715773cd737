#pragma once

/*! \file
 * \brief Invariant synthesis over a program's Q-indexed product lattice:
 * forward AInv (least invariant), backward co-inductive gfp iteration
 * (greatest invariant, Const only) and the inductiveness check.
 *
 * An Analysis bundles a domain with its per-edge transformers:
 *   Domain domain() const;
 *   Element post(const Edge&, const Element&) const;
 *   Element pret(const Edge&, const Element&) const;   // when has_backward
 *   Element abstract(const Literal&) const;
 *   std::string render(const Element&) const;
 */

#include <ainv/affine_domain.hpp>
#include <ainv/const_domain.hpp>
#include <ainv/errors.hpp>
#include <ainv/lattice.hpp>
#include <ainv/program.hpp>

#include <string>
#include <utility>
#include <vector>

namespace ainv {

class ConstAnalysis {
public:
  using Domain = ConstDomain;
  using Element = ConstVec;
  static constexpr bool has_backward = true;
  static constexpr const char* name = "const";

  /// Throws Unsupported unless the program is integer-sorted.
  explicit ConstAnalysis(const Program& p);

  Domain domain() const { return Domain(n_); }
  Element post(const Edge& e, const Element& a) const { return bca_edge(e, a); }
  Element pret(const Edge& e, const Element& a) const { return pret_edge(e, a); }
  Element abstract(const Literal& lit) const { return const_abstract(lit, n_); }
  std::string render(const Element& a) const { return to_string(a); }

private:
  std::size_t n_;
};

class AffineAnalysis {
public:
  using Domain = AffineDomain;
  using Element = AffSubspace;
  static constexpr bool has_backward = false;
  static constexpr const char* name = "affine";

  /// Throws Unsupported unless the program is rational-sorted.
  explicit AffineAnalysis(const Program& p);

  Domain domain() const { return Domain(n_); }
  Element post(const Edge& e, const Element& a) const { return bca_edge(e, a); }
  Element abstract(const Literal& lit) const { return affine_abstract(lit, n_); }
  std::string render(const Element& a) const { return to_string(a); }

private:
  std::size_t n_;
};

template <class A> struct AnalysisProblem {
  using Element = typename A::Element;

  const Program* program = nullptr;
  A analysis;
  StateVector<Element> init;   // Sigma0#
  StateVector<Element> safety; // P#

  ProductDomain<typename A::Domain> product() const {
    return {analysis.domain(), program->node_count()};
  }
};

/// Init from the program's declarations, safety top except at the given nodes.
template <class A>
AnalysisProblem<A> make_problem(const Program& p,
                                const std::vector<std::pair<std::size_t, Literal>>& props = {}) {
  AnalysisProblem<A> pr{&p, A(p), {}, {}};
  const auto d = pr.analysis.domain();
  for (std::size_t q = 0; q < p.node_count(); ++q) {
    const auto& lit = p.init()[q];
    pr.init.push_back(lit ? pr.analysis.abstract(*lit) : d.bottom());
    pr.safety.push_back(d.top());
  }
  for (const auto& [q, lit] : props) pr.safety.at(q) = d.meet(pr.safety[q], pr.analysis.abstract(lit));
  return pr;
}

enum class InvariantKind { least, greatest };

template <class E> struct SynthesisResult {
  bool found = false;
  InvariantKind kind = InvariantKind::least;
  /// The invariant when found, otherwise the offending iterate.
  StateVector<E> invariant;
  std::vector<StateVector<E>> trace;
  /// Found: number of strict steps. NotFound: index of the offending iterate.
  std::size_t step = 0;
  std::string reason;
};

/// Pure abstract successor: at q', the join over edges (q, t, q') of t#(v_q).
template <class A>
StateVector<typename A::Element> abstract_post(const AnalysisProblem<A>& pr,
                                               const StateVector<typename A::Element>& v) {
  const auto d = pr.analysis.domain();
  StateVector<typename A::Element> out(pr.program->node_count(), d.bottom());
  for (const auto& e : pr.program->edges())
    out[e.target] = d.join(out[e.target], pr.analysis.post(e, v[e.source]));
  return out;
}

/// Sigma0# joined with abstract_post.
template <class A>
StateVector<typename A::Element> abstract_post_step(const AnalysisProblem<A>& pr,
                                                    const StateVector<typename A::Element>& v) {
  return pr.product().join(pr.init, abstract_post(pr, v));
}

/// At q: (meet over edges (q, t, q') of pret#_t(v_q')) meet v_q meet P#_q.
template <class A>
StateVector<typename A::Element> abstract_pret_step(const AnalysisProblem<A>& pr,
                                                    const StateVector<typename A::Element>& v) {
  if constexpr (!A::has_backward) {
    throw Unsupported(std::string("backward synthesis not supported for ") + A::name);
  } else {
    const auto d = pr.analysis.domain();
    StateVector<typename A::Element> pre(pr.program->node_count(), d.top());
    for (const auto& e : pr.program->edges())
      pre[e.source] = d.meet(pre[e.source], pr.analysis.pret(e, v[e.target]));
    const auto prod = pr.product();
    return prod.meet(prod.meet(pre, v), pr.safety);
  }
}

template <class A>
bool verify_invariant(const AnalysisProblem<A>& pr, const StateVector<typename A::Element>& i) {
  const auto prod = pr.product();
  return prod.leq(pr.init, i) && prod.leq(abstract_post(pr, i), i) && prod.leq(i, pr.safety);
}

/// Least abstract inductive invariant by ascending iteration from Sigma0#.
template <class A>
SynthesisResult<typename A::Element> ainv_forward(const AnalysisProblem<A>& pr,
                                                  const IterationOptions& opts = {}) {
  const auto prod = pr.product();
  const std::size_t budget = detail::effective_budget(prod, opts);
  SynthesisResult<typename A::Element> r;
  r.kind = InvariantKind::least;
  auto i = pr.init;
  r.trace.push_back(i);
  for (;;) {
    if (!prod.leq(i, pr.safety)) {
      r.invariant = std::move(i);
      r.step = r.trace.size() - 1;
      r.reason = "iterate violates the property";
      return r;
    }
    auto next = abstract_post_step(pr, i);
    if (prod.leq(next, i)) {
      r.found = true;
      r.invariant = std::move(i);
      r.step = r.trace.size() - 1;
      return r;
    }
    if (r.trace.size() > budget) throw IterationBudgetExceeded(budget);
    i = std::move(next);
    r.trace.push_back(i);
  }
}

/// Greatest abstract inductive invariant by descending pret# iteration from
/// top; the stable iterate is re-checked with the forward transformers.
template <class A>
SynthesisResult<typename A::Element> backward_gfp(const AnalysisProblem<A>& pr,
                                                  const IterationOptions& opts = {}) {
  const auto prod = pr.product();
  const std::size_t budget = detail::effective_budget(prod, opts);
  SynthesisResult<typename A::Element> r;
  r.kind = InvariantKind::greatest;
  auto i = prod.top();
  r.trace.push_back(i);
  for (;;) {
    if (!prod.leq(pr.init, i)) {
      r.invariant = std::move(i);
      r.step = r.trace.size() - 1;
      r.reason = "iterate excludes initial states";
      return r;
    }
    auto next = abstract_pret_step(pr, i);
    if (next == i) {
      r.step = r.trace.size() - 1;
      r.found = verify_invariant(pr, i);
      if (!r.found) r.reason = "verification failed";
      r.invariant = std::move(i);
      return r;
    }
    if (r.trace.size() > budget) throw IterationBudgetExceeded(budget);
    i = std::move(next);
    r.trace.push_back(i);
  }
}

} // namespace ainv
