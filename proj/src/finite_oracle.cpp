#include <ainv/finite_oracle.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ainv::finite {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = g_();
    if (x >= threshold) return x % n;
  }
}

// ---------------------------------------------------------------------------
// FiniteLattice

FiniteLattice FiniteLattice::from_leq(std::vector<std::vector<bool>> le) {
  const std::size_t k = le.size();
  if (k == 0) throw std::invalid_argument("lattice must be nonempty");
  for (const auto& row : le)
    if (row.size() != k) throw std::invalid_argument("order table is not square");
  for (std::size_t i = 0; i < k; ++i) {
    if (!le[i][i]) throw std::invalid_argument("order is not reflexive");
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && le[i][j] && le[j][i]) throw std::invalid_argument("order is not antisymmetric");
      for (std::size_t m = 0; m < k; ++m)
        if (le[i][j] && le[j][m] && !le[i][m]) throw std::invalid_argument("order is not transitive");
    }
  }
  FiniteLattice l;
  l.le_ = std::move(le);
  l.join_.assign(k, std::vector<std::size_t>(k));
  l.meet_.assign(k, std::vector<std::size_t>(k));
  auto extremal = [&](std::size_t i, std::size_t j, bool upper) {
    std::optional<std::size_t> best;
    for (std::size_t u = 0; u < k; ++u) {
      const bool bound = upper ? (l.le_[i][u] && l.le_[j][u]) : (l.le_[u][i] && l.le_[u][j]);
      if (!bound) continue;
      if (!best || (upper ? l.le_[u][*best] : l.le_[*best][u])) best = u;
    }
    // best must be comparable with every bound
    for (std::size_t u = 0; u < k; ++u) {
      const bool bound = upper ? (l.le_[i][u] && l.le_[j][u]) : (l.le_[u][i] && l.le_[u][j]);
      if (bound && !(upper ? l.le_[*best][u] : l.le_[u][*best]))
        throw std::invalid_argument("missing lub or glb");
    }
    return *best;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      // every pair has the top/bottom candidates only if they exist
      bool has_upper = false, has_lower = false;
      for (std::size_t u = 0; u < k; ++u) {
        has_upper = has_upper || (l.le_[i][u] && l.le_[j][u]);
        has_lower = has_lower || (l.le_[u][i] && l.le_[u][j]);
      }
      if (!has_upper || !has_lower) throw std::invalid_argument("missing lub or glb");
      l.join_[i][j] = extremal(i, j, true);
      l.meet_[i][j] = extremal(i, j, false);
    }
  l.bottom_ = 0;
  l.top_ = 0;
  for (std::size_t i = 1; i < k; ++i) {
    l.bottom_ = l.meet_[l.bottom_][i];
    l.top_ = l.join_[l.top_][i];
  }
  // longest strict chain ending at each element
  std::vector<std::size_t> depth(k, 0);
  for (std::size_t round = 0; round < k; ++round)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && l.le_[j][i]) depth[i] = std::max(depth[i], depth[j] + 1);
  l.height_ = depth[l.top_];
  return l;
}

FiniteLattice FiniteLattice::chain(std::size_t k) {
  std::vector<std::vector<bool>> le(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) le[i][j] = true;
  return from_leq(std::move(le));
}

FiniteLattice FiniteLattice::powerset(std::size_t bits) {
  std::vector<std::uint64_t> family;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) family.push_back(m);
  return of_sets(family);
}

FiniteLattice FiniteLattice::of_sets(const std::vector<std::uint64_t>& family) {
  const std::size_t k = family.size();
  std::vector<std::vector<bool>> le(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) le[i][j] = subset(family[i], family[j]);
  return from_leq(std::move(le));
}

std::optional<std::size_t> FiniteLattice::height() const { return height_; }

std::vector<std::size_t> FiniteLattice::elements() const {
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

bool is_monotone(const FiniteLattice& l, const Map& f) {
  if (f.size() != l.size()) return false;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j)
      if (l.leq(i, j) && !l.leq(f[i], f[j])) return false;
  return true;
}

namespace {

void require_monotone(const FiniteLattice& l, const Map& f) {
  if (!is_monotone(l, f)) throw std::invalid_argument("function is not monotone");
}

} // namespace

std::size_t lfp(const FiniteLattice& l, const Map& f) {
  require_monotone(l, f);
  return lfp_iterate(l, [&](std::size_t x) { return f[x]; }, l.bottom()).value;
}

std::size_t gfp(const FiniteLattice& l, const Map& f) {
  require_monotone(l, f);
  return gfp_iterate(l, [&](std::size_t x) { return f[x]; }, l.top()).value;
}

Map compose(const Map& f, const Map& g) {
  Map out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f.at(g[x]);
  return out;
}

// ---------------------------------------------------------------------------
// Galois insertions

bool gi_laws(const FiniteGI& gi) {
  if (gi.alpha.size() != gi.C.size() || gi.gamma.size() != gi.A.size()) return false;
  for (std::size_t x = 0; x < gi.C.size(); ++x)
    for (std::size_t y = 0; y < gi.C.size(); ++y)
      if (gi.C.leq(x, y) && !gi.A.leq(gi.alpha[x], gi.alpha[y])) return false;
  for (std::size_t x = 0; x < gi.A.size(); ++x)
    for (std::size_t y = 0; y < gi.A.size(); ++y)
      if (gi.A.leq(x, y) && !gi.C.leq(gi.gamma[x], gi.gamma[y])) return false;
  for (std::size_t c = 0; c < gi.C.size(); ++c)
    for (std::size_t a = 0; a < gi.A.size(); ++a)
      if (gi.A.leq(gi.alpha[c], a) != gi.C.leq(c, gi.gamma[a])) return false;
  for (std::size_t a = 0; a < gi.A.size(); ++a)
    if (gi.alpha[gi.gamma[a]] != a) return false;
  return true;
}

FiniteGI gi_from_closed_subset(const FiniteLattice& c, const std::vector<std::size_t>& x) {
  std::vector<std::size_t> xs = x;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto in = [&](std::size_t v) { return std::binary_search(xs.begin(), xs.end(), v); };
  for (auto v : xs)
    if (v >= c.size()) throw std::invalid_argument("subset element out of range");
  if (!in(c.top())) throw std::invalid_argument("subset must contain top");
  for (auto u : xs)
    for (auto v : xs)
      if (!in(c.meet(u, v))) throw std::invalid_argument("subset is not meet-closed");
  std::vector<std::vector<bool>> le(xs.size(), std::vector<bool>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) le[i][j] = c.leq(xs[i], xs[j]);
  FiniteGI gi;
  gi.C = c;
  gi.A = FiniteLattice::from_leq(std::move(le));
  gi.gamma = xs;
  gi.alpha.resize(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) {
    std::size_t m = c.top();
    for (auto u : xs)
      if (c.leq(v, u)) m = c.meet(m, u);
    gi.alpha[v] = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), m) - xs.begin());
  }
  return gi;
}

Map closure_of(const FiniteGI& gi) { return compose(gi.gamma, gi.alpha); }

std::size_t abstract_lfp(const FiniteGI& gi, const Map& f) {
  return lfp(gi.A, compose(gi.alpha, compose(f, gi.gamma)));
}

namespace {

bool abstract_inductive(const FiniteGI& gi, const Map& f, std::size_t a) {
  return gi.C.leq(f[gi.gamma[a]], gi.gamma[a]);
}

// exists a in A inductive with gamma(a) <= bound
bool exists_witness_below(const FiniteGI& gi, const Map& f, std::size_t bound) {
  for (std::size_t a = 0; a < gi.A.size(); ++a)
    if (abstract_inductive(gi, f, a) && gi.C.leq(gi.gamma[a], bound)) return true;
  return false;
}

} // namespace

bool check_lemma1(const FiniteGI& gi, const Map& f, std::size_t c_safe) {
  require_monotone(gi.C, f);
  const bool lhs = gi.C.leq(gi.gamma[abstract_lfp(gi, f)], c_safe);
  return lhs == exists_witness_below(gi, f, c_safe);
}

bool check_lemma1_abstract(const FiniteGI& gi, const Map& f, std::size_t a_safe) {
  require_monotone(gi.C, f);
  const bool lhs = gi.A.leq(abstract_lfp(gi, f), a_safe);
  return lhs == exists_witness_below(gi, f, gi.gamma[a_safe]);
}

CompletenessReport check_fixpoint_completeness_char(const FiniteGI& gi, const Map& f) {
  require_monotone(gi.C, f);
  const std::size_t l = lfp(gi.C, f);
  const std::size_t la = abstract_lfp(gi, f);
  CompletenessReport r;
  r.strong = l == gi.gamma[la];
  r.plain = gi.alpha[l] == la;
  r.thm4a = true;
  for (std::size_t c = 0; c < gi.C.size(); ++c)
    if (gi.C.leq(l, c) != exists_witness_below(gi, f, c)) r.thm4a = false;
  r.thm4b = true;
  for (std::size_t a = 0; a < gi.A.size(); ++a)
    if (gi.C.leq(l, gi.gamma[a]) != exists_witness_below(gi, f, gi.gamma[a])) r.thm4b = false;
  r.lemma5 = exists_witness_below(gi, f, gi.gamma[gi.alpha[l]]);
  return r;
}

bool SafeInvReport::consistent() const {
  for (const auto& p : inv)
    if (!std::binary_search(safe.begin(), safe.end(), p)) return false;
  if (s_within_a && all_plain && !equal()) return false;
  if (s_is_gamma_a && equal() && !all_plain) return false;
  if (all_strong && !equal()) return false;
  if (s_is_c && equal() && !all_strong) return false;
  return true;
}

SafeInvReport check_safe_inv(const FiniteGI& gi, const std::vector<Map>& fs,
                             const std::vector<std::size_t>& s) {
  std::set<std::size_t> sset(s.begin(), s.end());
  std::set<std::size_t> image(gi.gamma.begin(), gi.gamma.end());
  SafeInvReport r;
  r.s_within_a = std::includes(image.begin(), image.end(), sset.begin(), sset.end());
  r.s_is_gamma_a = sset == image;
  r.s_is_c = sset.size() == gi.C.size();
  r.all_plain = r.all_strong = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto rep = check_fixpoint_completeness_char(gi, fs[i]);
    r.all_plain = r.all_plain && rep.plain;
    r.all_strong = r.all_strong && rep.strong;
    const std::size_t l = lfp(gi.C, fs[i]);
    for (auto v : sset) {
      if (gi.C.leq(l, v)) r.safe.emplace_back(i, v);
      if (exists_witness_below(gi, fs[i], v)) r.inv.emplace_back(i, v);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transition systems

void FiniteTS::validate() const {
  if (n > 64) throw std::invalid_argument("at most 64 states");
  if (succ.size() != n) throw std::invalid_argument("successor table size mismatch");
  const Set all = full_set(n);
  for (auto s : succ)
    if (!subset(s, all)) throw std::invalid_argument("transition to an unknown state");
  if (!subset(init, all) || !subset(safe, all)) throw std::invalid_argument("unknown state");
}

Set post(const FiniteTS& ts, Set x) {
  Set out = 0;
  for (std::size_t s = 0; s < ts.n; ++s)
    if (member(x, s)) out |= ts.succ[s];
  return out;
}

Set pre(const FiniteTS& ts, Set x) {
  Set out = 0;
  for (std::size_t s = 0; s < ts.n; ++s)
    if (ts.succ[s] & x) out |= singleton(s);
  return out;
}

Set pret(const FiniteTS& ts, Set x) {
  return ~pre(ts, ~x & full_set(ts.n)) & full_set(ts.n);
}

Set postt(const FiniteTS& ts, Set x) {
  return ~post(ts, ~x & full_set(ts.n)) & full_set(ts.n);
}

Transformers transformers(const FiniteTS& ts) {
  return {[ts](Set x) { return pre(ts, x); }, [ts](Set x) { return post(ts, x); },
          [ts](Set x) { return pret(ts, x); }, [ts](Set x) { return postt(ts, x); }};
}

Set reach(const FiniteTS& ts) {
  PowersetDomain d{ts.n};
  return lfp_iterate(d, [&](Set x) { return ts.init | post(ts, x); }, Set{0}).value;
}

bool check_adjunctions(const FiniteTS& ts) {
  const std::size_t m = std::size_t{1} << ts.n;
  std::vector<Set> po(m), pr(m), pe(m), pt(m);
  for (Set x = 0; x < m; ++x) {
    po[x] = post(ts, x);
    pr[x] = pret(ts, x);
    pe[x] = pre(ts, x);
    pt[x] = postt(ts, x);
  }
  for (Set x = 0; x < m; ++x)
    for (Set y = 0; y < m; ++y) {
      if (subset(po[x], y) != subset(x, pr[y])) return false;
      if (subset(pe[x], y) != subset(x, pt[y])) return false;
    }
  return true;
}

bool check_duality(const FiniteTS& ts) {
  PowersetDomain d{ts.n};
  const Set g = gfp_iterate(d, [&](Set x) { return pret(ts, x) & ts.safe; }, d.top()).value;
  return subset(reach(ts), ts.safe) == subset(ts.init, g);
}

bool is_inductive(const FiniteTS& ts, Set x) {
  return subset(ts.init, x) && subset(post(ts, x), x) && subset(x, ts.safe);
}

// ---------------------------------------------------------------------------
// Closure families

ClosureFamily ClosureFamily::make(std::size_t n, std::vector<Set> members) {
  if (n > 64) throw std::invalid_argument("at most 64 states");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  ClosureFamily l;
  l.n_ = n;
  l.members_ = std::move(members);
  const Set all = full_set(n);
  for (auto m : l.members_)
    if (!subset(m, all)) throw std::invalid_argument("member mentions an unknown state");
  if (!l.contains(all)) throw std::invalid_argument("family must contain the full set");
  for (auto a : l.members_)
    for (auto b : l.members_)
      if (!l.contains(a & b)) throw std::invalid_argument("family is not intersection-closed");
  return l;
}

ClosureFamily ClosureFamily::generated(std::size_t n, const std::vector<Set>& generators) {
  std::set<Set> fam(generators.begin(), generators.end());
  fam.insert(full_set(n));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Set> cur(fam.begin(), fam.end());
    for (auto a : cur)
      for (auto b : cur)
        if (fam.insert(a & b).second) grew = true;
  }
  return make(n, std::vector<Set>(fam.begin(), fam.end()));
}

ClosureFamily ClosureFamily::powerset(std::size_t n) {
  if (n > 20) throw std::invalid_argument("powerset family too large");
  std::vector<Set> all;
  for (Set x = 0; x < (Set{1} << n); ++x) all.push_back(x);
  return make(n, std::move(all));
}

ClosureFamily ClosureFamily::down_sets(const std::vector<std::vector<bool>>& le) {
  const std::size_t n = le.size();
  if (n > 20) throw std::invalid_argument("too many states for enumeration");
  std::vector<Set> out;
  for (Set x = 0; x < (Set{1} << n); ++x) {
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j) {
      if (!member(x, j)) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (le[i][j] && !member(x, i)) {
          closed = false;
          break;
        }
    }
    if (closed) out.push_back(x);
  }
  return make(n, std::move(out));
}

bool ClosureFamily::contains(Set x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

// Arbitrary unions include the empty one, so the empty set must be a member.
bool ClosureFamily::union_closed() const {
  if (!contains(0)) return false;
  for (auto a : members_)
    for (auto b : members_)
      if (!contains(a | b)) return false;
  return true;
}

Set ClosureFamily::upper(Set x) const {
  Set out = full_set(n_);
  for (auto m : members_)
    if (subset(x, m)) out &= m;
  return out;
}

Set ClosureFamily::lower(Set x) const {
  Set out = 0;
  for (auto m : members_)
    if (subset(m, x)) out |= m;
  return out;
}

Set avoid(const ClosureFamily& l, Set x) {
  Set out = 0;
  for (auto m : l.members())
    if ((m & x) == 0) out |= m;
  return out;
}

bool qo_leq(const ClosureFamily& l, std::size_t s, std::size_t s2) {
  for (auto m : l.members())
    if (member(m, s2) && !member(m, s)) return false;
  return true;
}

namespace {

// below[s'] = {s | s qo_leq s'}
std::vector<Set> down_masks(const ClosureFamily& l) {
  std::vector<Set> below(l.n(), 0);
  for (std::size_t s2 = 0; s2 < l.n(); ++s2)
    for (std::size_t s = 0; s < l.n(); ++s)
      if (qo_leq(l, s, s2)) below[s2] |= singleton(s);
  return below;
}

Set delta_with(const std::vector<Set>& below, Set x) {
  Set out = 0;
  for (std::size_t s = 0; s < below.size(); ++s)
    if (member(x, s)) out |= below[s];
  return out;
}

} // namespace

Set delta(const ClosureFamily& l, Set x) { return delta_with(down_masks(l), x); }

Lemma6Report check_lemma6(const FiniteTS& ts, const ClosureFamily& l) {
  if (l.n() != ts.n) throw std::invalid_argument("family and system disagree on states");
  Lemma6Report r;
  r.union_closed = l.union_closed();
  const auto below = down_masks(l);

  r.a = true;
  for (std::size_t s = 0; s < ts.n; ++s)
    for (std::size_t s2 = 0; s2 < ts.n; ++s2) {
      const bool lhs = member(below[s2], s);
      const bool rhs = subset(l.upper(singleton(s)), l.upper(singleton(s2)));
      if (lhs != rhs) r.a = false;
    }

  bool all_avoid_in = true;
  for (std::size_t s = 0; s < ts.n; ++s)
    if (!l.contains(avoid(l, singleton(s)))) all_avoid_in = false;
  r.c = all_avoid_in == r.union_closed;

  r.d = true;
  if (r.union_closed) {
    for (Set x = 0; x <= full_set(ts.n); ++x) {
      const Set dx = delta_with(below, x);
      if (dx != l.upper(x) || ((dx == x) != l.contains(x))) {
        r.d = false;
        break;
      }
    }
  }

  PowersetDomain d{ts.n};
  const Set by_delta =
      lfp_iterate(d, [&](Set x) { return ts.init | post(ts, x) | delta_with(below, x); }, Set{0})
          .value;
  const Set by_mu = lfp_iterate(d, [&](Set x) { return l.upper(ts.init | post(ts, x)); }, Set{0})
                        .value;
  r.e = r.union_closed ? by_delta == by_mu : subset(by_delta, by_mu);
  return r;
}

// ---------------------------------------------------------------------------
// Algorithms

std::size_t choose_min(Set candidates) {
  for (std::size_t s = 0; s < 64; ++s)
    if (member(candidates, s)) return s;
  throw std::invalid_argument("no candidate to choose");
}

Chooser random_chooser(Rng& rng) {
  return [&rng](Set candidates) {
    std::vector<std::size_t> xs;
    for (std::size_t s = 0; s < 64; ++s)
      if (member(candidates, s)) xs.push_back(s);
    if (xs.empty()) throw std::invalid_argument("no candidate to choose");
    return xs[rng.below(xs.size())];
  };
}

void require_union_closed(const ClosureFamily& l) {
  if (!l.union_closed()) throw std::invalid_argument("family is not closed under unions");
}

AlgoResult run_algorithm1(const FiniteTS& ts, const ClosureFamily& l) {
  require_union_closed(l);
  AlgoResult r;
  Set i = full_set(ts.n);
  r.trace.push_back(i);
  while (subset(ts.init, i)) {
    const Set next = l.lower(pret(ts, i) & i & ts.safe);
    if (next == i) {
      r.found = true;
      r.invariant = i;
      return r;
    }
    i &= next;
    r.trace.push_back(i);
  }
  r.invariant = i;
  return r;
}

namespace {

// Counterexamples to inductiveness of i, given init within i.
Set counterexamples(const FiniteTS& ts, Set i) {
  return i & ~(pret(ts, i) & ts.safe);
}

} // namespace

AlgoResult run_algorithm2_padon(const FiniteTS& ts, const ClosureFamily& l,
                                const Chooser& choose) {
  require_union_closed(l);
  AlgoResult r;
  Set i = full_set(ts.n);
  r.trace.push_back(i);
  while (!is_inductive(ts, i)) {
    if (!subset(ts.init, i)) {
      r.invariant = i;
      return r;
    }
    const std::size_t s = choose(counterexamples(ts, i));
    i &= avoid(l, singleton(s));
    r.trace.push_back(i);
  }
  r.found = true;
  r.invariant = i;
  return r;
}

AlgoResult run_algorithm3(const FiniteTS& ts, const ClosureFamily& l, const Chooser& choose) {
  require_union_closed(l);
  AlgoResult r;
  Set i = full_set(ts.n);
  r.trace.push_back(i);
  while (subset(ts.init, i)) {
    const Set cex = counterexamples(ts, i);
    if (cex == 0) {
      r.found = true;
      r.invariant = i;
      return r;
    }
    const std::size_t s = choose(cex);
    i &= l.lower(~singleton(s) & full_set(ts.n));
    r.trace.push_back(i);
  }
  r.invariant = i;
  return r;
}

ForwardGfpResult run_algorithm4(const FiniteTS& ts, const ClosureFamily& l) {
  require_union_closed(l);
  const Set all = full_set(ts.n);
  const Set bad = ~ts.safe & all;
  const Set not_init = ~ts.init & all;
  ForwardGfpResult r;
  Set i = all;
  r.trace.push_back(i);
  while (subset(bad, i)) {
    const Set next = l.lower(postt(ts, i) & i & not_init);
    if (next == i) {
      r.found = true;
      r.closed = i;
      r.invariant = ~i & all;
      return r;
    }
    i &= next;
    r.trace.push_back(i);
  }
  r.closed = i;
  r.invariant = ~i & all;
  return r;
}

std::optional<Set> greatest_invariant_in(const FiniteTS& ts, const ClosureFamily& l) {
  std::optional<Set> out;
  for (auto m : l.members())
    if (is_inductive(ts, m)) out = out.value_or(0) | m;
  return out;
}

bool check_corollary9(const FiniteTS& ts, const ClosureFamily& l) {
  bool exists = false;
  for (auto m : l.members())
    if (is_inductive(ts, m)) {
      exists = true;
      break;
    }
  PowersetDomain d{ts.n};
  const Set r = lfp_iterate(d, [&](Set x) { return l.upper(ts.init | post(ts, x)); }, Set{0}).value;
  return exists == subset(r, ts.safe);
}

// ---------------------------------------------------------------------------
// Random instances

FiniteTS random_ts(Rng& rng, const SizeParams& size) {
  if (size.max_states == 0 || size.max_states > 10)
    throw std::invalid_argument("state bound must be in [1, 10]");
  FiniteTS ts;
  ts.n = rng.between(1, size.max_states);
  const std::uint64_t density = rng.between(1, 4);
  ts.succ.assign(ts.n, 0);
  for (std::size_t s = 0; s < ts.n; ++s)
    for (std::size_t t = 0; t < ts.n; ++t)
      if (rng.chance(1, density + 1)) ts.succ[s] |= singleton(t);
  for (std::size_t s = 0; s < ts.n; ++s) {
    if (rng.chance(1, 3)) ts.init |= singleton(s);
    if (rng.chance(4, 5)) ts.safe |= singleton(s);
  }
  return ts;
}

ClosureFamily random_family(Rng& rng, std::size_t n, bool union_closed) {
  if (union_closed) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) le[i][j] = i == j || rng.chance(1, 4);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (le[i][k] && le[k][j]) le[i][j] = true;
    return ClosureFamily::down_sets(le);
  }
  std::vector<Set> gens;
  const std::uint64_t k = rng.between(0, 5);
  for (std::uint64_t g = 0; g < k; ++g) gens.push_back(rng.bits() & full_set(n));
  return ClosureFamily::generated(n, gens);
}

FiniteLattice random_lattice(Rng& rng, const SizeParams& size) {
  if (size.max_lattice == 0 || size.max_lattice > 12)
    throw std::invalid_argument("lattice bound must be in [1, 12]");
  const std::size_t cap = size.max_lattice;
  switch (rng.below(3)) {
  case 0: return FiniteLattice::chain(rng.between(1, cap));
  case 1: {
    std::size_t bits = rng.between(0, 3);
    while ((std::size_t{1} << bits) > cap) --bits;
    return FiniteLattice::powerset(bits);
  }
  default:
    for (;;) {
      const std::size_t m = rng.between(2, 4);
      std::vector<Set> gens;
      const std::uint64_t k = rng.between(1, 6);
      for (std::uint64_t g = 0; g < k; ++g) gens.push_back(rng.bits() & full_set(m));
      const auto fam = ClosureFamily::generated(m, gens).members();
      if (fam.size() <= cap) return FiniteLattice::of_sets(fam);
    }
  }
}

FiniteGI random_gi(Rng& rng, const FiniteLattice& c) {
  std::set<std::size_t> x{c.top()};
  for (std::size_t v = 0; v < c.size(); ++v)
    if (rng.chance(1, 2)) x.insert(v);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::size_t> cur(x.begin(), x.end());
    for (auto u : cur)
      for (auto v : cur)
        if (x.insert(c.meet(u, v)).second) grew = true;
  }
  return gi_from_closed_subset(c, std::vector<std::size_t>(x.begin(), x.end()));
}

Map random_monotone(Rng& rng, const FiniteLattice& l) {
  Map g(l.size());
  for (auto& v : g) v = rng.below(l.size());
  const bool upward = rng.chance(1, 2);
  Map f(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) {
    std::size_t acc = upward ? l.bottom() : l.top();
    for (std::size_t y = 0; y < l.size(); ++y) {
      if (upward && l.leq(y, x)) acc = l.join(acc, g[y]);
      if (!upward && l.leq(x, y)) acc = l.meet(acc, g[y]);
    }
    f[x] = acc;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

bool trial_lemma1(std::uint64_t seed) {
  Rng rng(seed);
  const auto c = random_lattice(rng);
  const auto gi = random_gi(rng, c);
  const auto f = random_monotone(rng, c);
  if (!gi_laws(gi)) return false;
  for (std::size_t v = 0; v < c.size(); ++v)
    if (!check_lemma1(gi, f, v)) return false;
  for (std::size_t a = 0; a < gi.A.size(); ++a)
    if (!check_lemma1_abstract(gi, f, a)) return false;
  return true;
}

bool trial_completeness(std::uint64_t seed) {
  Rng rng(seed);
  const auto c = random_lattice(rng);
  const auto gi = random_gi(rng, c);
  if (!check_fixpoint_completeness_char(gi, random_monotone(rng, c)).consistent()) return false;
  std::vector<Map> fs;
  const std::uint64_t k = rng.between(1, 3);
  for (std::uint64_t i = 0; i < k; ++i) fs.push_back(random_monotone(rng, c));
  std::vector<std::size_t> some;
  for (std::size_t v = 0; v < c.size(); ++v)
    if (rng.chance(1, 2)) some.push_back(v);
  for (const auto& s : {gi.gamma, c.elements(), some})
    if (!check_safe_inv(gi, fs, s).consistent()) return false;
  return true;
}

bool trial_lemma6(std::uint64_t seed) {
  Rng rng(seed);
  const auto ts = random_ts(rng);
  const auto l = random_family(rng, ts.n, rng.chance(1, 2));
  return check_lemma6(ts, l).ok();
}

bool trial_algorithms(std::uint64_t seed) {
  Rng rng(seed);
  const auto ts = random_ts(rng);
  const auto l = random_family(rng, ts.n, true);
  const auto best = greatest_invariant_in(ts, l);
  auto agrees = [&](const AlgoResult& r) {
    return r.found == best.has_value() && (!r.found || r.invariant == *best);
  };
  if (!agrees(run_algorithm1(ts, l))) return false;
  if (!agrees(run_algorithm2_padon(ts, l))) return false;
  if (!agrees(run_algorithm3(ts, l))) return false;
  for (int order = 0; order < 5; ++order) {
    Rng pick(seed * 31 + static_cast<std::uint64_t>(order) + 1);
    if (!agrees(run_algorithm2_padon(ts, l, random_chooser(pick)))) return false;
    if (!agrees(run_algorithm3(ts, l, random_chooser(pick)))) return false;
  }

  // forward gfp: greatest backward-closed member avoiding init
  const Set all = full_set(ts.n);
  Set closed = 0;
  for (auto m : l.members())
    if (subset(pre(ts, m), m) && (m & ts.init) == 0) closed |= m;
  const auto a4 = run_algorithm4(ts, l);
  const bool expect = subset(~ts.safe & all, closed);
  if (a4.found != expect || (expect && a4.closed != closed)) return false;
  if (a4.found && !is_inductive(ts, a4.invariant)) return false;

  const auto exact = run_algorithm4(ts, ClosureFamily::powerset(ts.n));
  return exact.found == subset(reach(ts), ts.safe);
}

bool trial_corollary9(std::uint64_t seed) {
  Rng rng(seed);
  const auto ts = random_ts(rng);
  return check_corollary9(ts, random_family(rng, ts.n, rng.chance(1, 2)));
}

bool trial_adjunctions(std::uint64_t seed) {
  Rng rng(seed);
  const auto ts = random_ts(rng);
  if (!check_adjunctions(ts) || !check_duality(ts)) return false;
  const auto c = random_lattice(rng);
  const auto gi = random_gi(rng, c);
  const auto cs = c.elements();
  const auto as = gi.A.elements();
  GaloisInsertion<std::size_t, std::size_t> g{[&](std::size_t x) { return gi.alpha[x]; },
                                              [&](std::size_t a) { return gi.gamma[a]; }};
  auto leq_c = [&](std::size_t x, std::size_t y) { return c.leq(x, y); };
  auto leq_a = [&](std::size_t x, std::size_t y) { return gi.A.leq(x, y); };
  if (!adjunction_holds(g, std::span<const std::size_t>(cs), std::span<const std::size_t>(as),
                        leq_c, leq_a))
    return false;
  const auto mu = gi_to_closure(g, std::span<const std::size_t>(as));
  if (!is_closure(mu, std::span<const std::size_t>(cs), leq_c)) return false;
  const auto back = closure_to_gi(mu, std::span<const std::size_t>(cs), leq_c);
  for (auto x : cs)
    if (back.gamma(back.alpha(x)) != gi.gamma[gi.alpha[x]]) return false;
  return true;
}

using Trial = bool (*)(std::uint64_t);

const std::map<std::string, Trial>& trials_by_name() {
  static const std::map<std::string, Trial> m{
      {"lemma1", trial_lemma1},       {"completeness", trial_completeness},
      {"lemma6", trial_lemma6},       {"algorithms", trial_algorithms},
      {"corollary9", trial_corollary9}, {"adjunctions", trial_adjunctions}};
  return m;
}

SuiteReport run_one(const std::string& name, Trial t, std::uint64_t seed, std::size_t trials) {
  SuiteReport r{name, trials, 0, std::nullopt};
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + i;
    bool ok = false;
    try {
      ok = t(s);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      ++r.failures;
      if (!r.first_failure_seed) r.first_failure_seed = s;
    }
  }
  return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1",     "completeness", "lemma6",
                                              "algorithms", "corollary9",   "adjunctions"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed,
                                   std::size_t trials) {
  const auto& m = trials_by_name();
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_one(n, m.at(n), seed, trials));
    return out;
  }
  auto it = m.find(name);
  if (it == m.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  out.push_back(run_one(name, it->second, seed, trials));
  return out;
}

} // namespace ainv::finite
