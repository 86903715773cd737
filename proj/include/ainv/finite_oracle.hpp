#pragma once

/*! \file
 * \brief Brute-force ground truth on small finite structures: explicit
 * lattices and Galois insertions, finite transition systems with their four
 * state transformers, closure families of state sets and the co-inductive
 * synthesis algorithms run exactly on them.
 */

#include <ainv/lattice.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ainv::finite {

// ---------------------------------------------------------------------------
// Deterministic randomness

/// mt19937_64 with a fixed bounded draw so instances are identical across
/// standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  std::uint64_t bits() { return g_(); }

private:
  std::mt19937_64 g_;
};

// ---------------------------------------------------------------------------
// Explicit finite lattices

/// Elements are 0..size()-1 ordered by an explicit table. Models
/// ainv::AbstractDomain with Element = std::size_t.
class FiniteLattice {
public:
  using Element = std::size_t;

  FiniteLattice() = default;
  /// Throws std::invalid_argument unless le is a partial order with all
  /// binary lubs and glbs.
  static FiniteLattice from_leq(std::vector<std::vector<bool>> le);
  /// 0 < 1 < ... < k-1
  static FiniteLattice chain(std::size_t k);
  /// Subsets of {0..bits-1}; element i is the bit mask i.
  static FiniteLattice powerset(std::size_t bits);
  /// A family of sets ordered by inclusion.
  static FiniteLattice of_sets(const std::vector<std::uint64_t>& family);

  std::size_t size() const { return le_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return le_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  std::size_t canonicalize(std::size_t a) const { return a; }
  std::optional<std::size_t> height() const;
  std::vector<std::size_t> elements() const;

  friend bool operator==(const FiniteLattice&, const FiniteLattice&) = default;

private:
  std::vector<std::vector<bool>> le_;
  std::vector<std::vector<std::size_t>> join_, meet_;
  std::size_t bottom_ = 0, top_ = 0, height_ = 0;
};

/// A function on a finite lattice as a table.
using Map = std::vector<std::size_t>;

bool is_monotone(const FiniteLattice& l, const Map& f);
std::size_t lfp(const FiniteLattice& l, const Map& f);
std::size_t gfp(const FiniteLattice& l, const Map& f);
Map compose(const Map& f, const Map& g); // f . g

struct FiniteGI {
  FiniteLattice C;
  FiniteLattice A;
  Map alpha; // C -> A
  Map gamma; // A -> C
};

/// Monotone adjoint maps with alpha . gamma = id.
bool gi_laws(const FiniteGI& gi);
/// The insertion onto a meet-closed subset X of C containing top, with
/// alpha(c) = meet{x in X | c <= x}. Throws std::invalid_argument otherwise.
FiniteGI gi_from_closed_subset(const FiniteLattice& c, const std::vector<std::size_t>& x);
/// gamma . alpha as a map on C.
Map closure_of(const FiniteGI& gi);

/// lfp of alpha f gamma in A.
std::size_t abstract_lfp(const FiniteGI& gi, const Map& f);

/// Concrete side of the invariant principle at c': gamma(lfp(alpha f gamma))
/// <= c' iff some abstract a has f(gamma a) <= gamma a <= c'. Throws on
/// non-monotone f.
bool check_lemma1(const FiniteGI& gi, const Map& f, std::size_t c_safe);
/// Same principle stated at an abstract a'.
bool check_lemma1_abstract(const FiniteGI& gi, const Map& f, std::size_t a_safe);

struct CompletenessReport {
  bool strong = false; // lfp f = gamma(lfp alpha f gamma)
  bool plain = false;  // alpha(lfp f) = lfp alpha f gamma
  bool thm4a = false;  // forall c' equivalence
  bool thm4b = false;  // forall a' equivalence
  bool lemma5 = false; // single witness below gamma alpha (lfp f)
  bool consistent() const { return thm4a == strong && thm4b == plain && lemma5 == plain; }
};
CompletenessReport check_fixpoint_completeness_char(const FiniteGI& gi, const Map& f);

struct SafeInvReport {
  std::vector<std::pair<std::size_t, std::size_t>> safe; // (function index, s)
  std::vector<std::pair<std::size_t, std::size_t>> inv;
  bool all_plain = false;
  bool all_strong = false;
  bool s_within_a = false; // S is a subset of gamma(A)
  bool s_is_gamma_a = false;
  bool s_is_c = false;
  bool equal() const { return safe == inv; }
  /// The implications that hold for this S (see README).
  bool consistent() const;
};
SafeInvReport check_safe_inv(const FiniteGI& gi, const std::vector<Map>& fs,
                             const std::vector<std::size_t>& s);

// ---------------------------------------------------------------------------
// Transition systems over at most 64 states

using Set = std::uint64_t;

inline Set full_set(std::size_t n) { return n >= 64 ? ~Set{0} : (Set{1} << n) - 1; }
inline bool subset(Set a, Set b) { return (a & ~b) == 0; }
inline Set singleton(std::size_t s) { return Set{1} << s; }
inline bool member(Set x, std::size_t s) { return (x >> s) & 1; }

/// Subsets of n states under inclusion; models ainv::AbstractDomain.
struct PowersetDomain {
  using Element = Set;
  std::size_t n = 0;

  bool leq(Set a, Set b) const { return subset(a, b); }
  Set join(Set a, Set b) const { return a | b; }
  Set meet(Set a, Set b) const { return a & b; }
  Set bottom() const { return 0; }
  Set top() const { return full_set(n); }
  Set canonicalize(Set a) const { return a & full_set(n); }
  std::optional<std::size_t> height() const { return n; }
};

struct FiniteTS {
  std::size_t n = 0;
  std::vector<Set> succ; // succ[s]: successors of s
  Set init = 0;
  Set safe = 0;

  /// Throws std::invalid_argument when a set mentions a state >= n.
  void validate() const;
};

Set post(const FiniteTS& ts, Set x);
Set pre(const FiniteTS& ts, Set x);
/// {s | every successor of s is in x}
Set pret(const FiniteTS& ts, Set x);
/// {s | every predecessor of s is in x}
Set postt(const FiniteTS& ts, Set x);

struct Transformers {
  std::function<Set(Set)> pre, post, pret, postt;
};
Transformers transformers(const FiniteTS& ts);

Set reach(const FiniteTS& ts);
/// post(X) <= Y iff X <= pret(Y), pre(X) <= Y iff X <= postt(Y), all pairs.
bool check_adjunctions(const FiniteTS& ts);
/// lfp(X. init u post X) <= P iff init <= gfp(X. pret X n P).
bool check_duality(const FiniteTS& ts);
bool is_inductive(const FiniteTS& ts, Set x);

// ---------------------------------------------------------------------------
// Closure families

/// An intersection-closed family of state sets containing the full set.
class ClosureFamily {
public:
  /// Throws std::invalid_argument when not intersection-closed or missing
  /// the full set.
  static ClosureFamily make(std::size_t n, std::vector<Set> members);
  /// Intersection closure of the generators plus the full set.
  static ClosureFamily generated(std::size_t n, const std::vector<Set>& generators);
  static ClosureFamily powerset(std::size_t n);
  /// Down-sets of the preorder le (le[i][j]: i below j).
  static ClosureFamily down_sets(const std::vector<std::vector<bool>>& le);

  std::size_t n() const { return n_; }
  const std::vector<Set>& members() const { return members_; }
  bool contains(Set x) const;
  /// Closed under arbitrary unions, the empty union included.
  bool union_closed() const;
  /// Smallest member above x.
  Set upper(Set x) const;
  /// Union of the members below x.
  Set lower(Set x) const;

private:
  std::size_t n_ = 0;
  std::vector<Set> members_; // sorted
};

/// Union of the members disjoint from x.
Set avoid(const ClosureFamily& l, Set x);
/// s below s' in the induced quasi-order.
bool qo_leq(const ClosureFamily& l, std::size_t s, std::size_t s2);
/// Down-closure of x under qo_leq.
Set delta(const ClosureFamily& l, Set x);

struct Lemma6Report {
  bool a = false;
  bool c = false;
  bool d = false; // vacuously true without union closure
  bool e = false; // equality under union closure, inclusion otherwise
  bool union_closed = false;
  bool ok() const { return a && c && d && e; }
};
Lemma6Report check_lemma6(const FiniteTS& ts, const ClosureFamily& l);

struct AlgoResult {
  bool found = false;
  Set invariant = 0;
  std::vector<Set> trace;
};

/// Picks a state from a nonempty candidate set.
using Chooser = std::function<std::size_t(Set)>;
std::size_t choose_min(Set candidates);
Chooser random_chooser(Rng& rng);

/// Greatest-fixpoint backward iteration with the lower closure of l.
AlgoResult run_algorithm1(const FiniteTS& ts, const ClosureFamily& l);
/// Counterexample-guided weakening via avoid sets.
AlgoResult run_algorithm2_padon(const FiniteTS& ts, const ClosureFamily& l,
                                const Chooser& choose = choose_min);
/// Backward iteration that removes one counterexample state per step.
AlgoResult run_algorithm3(const FiniteTS& ts, const ClosureFamily& l,
                          const Chooser& choose = choose_min);

struct ForwardGfpResult {
  bool found = false;
  Set closed = 0;    // member of l, backward-closed, disjoint from init
  Set invariant = 0; // complement of closed: the forward inductive invariant
  std::vector<Set> trace;
};
ForwardGfpResult run_algorithm4(const FiniteTS& ts, const ClosureFamily& l);

/// Union of all inductive members of l between init and safe, when any.
std::optional<Set> greatest_invariant_in(const FiniteTS& ts, const ClosureFamily& l);
bool check_corollary9(const FiniteTS& ts, const ClosureFamily& l);

/// Throws std::invalid_argument when l is not union-closed.
void require_union_closed(const ClosureFamily& l);

// ---------------------------------------------------------------------------
// Random instances

struct SizeParams {
  std::size_t max_states = 8;   // at most 10
  std::size_t max_lattice = 12; // at most 12
};

FiniteTS random_ts(Rng& rng, const SizeParams& size = {});
ClosureFamily random_family(Rng& rng, std::size_t n, bool union_closed);
FiniteLattice random_lattice(Rng& rng, const SizeParams& size = {});
FiniteGI random_gi(Rng& rng, const FiniteLattice& c);
Map random_monotone(Rng& rng, const FiniteLattice& l);

// ---------------------------------------------------------------------------
// Suites

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failure_seed;
};

const std::vector<std::string>& suite_names(); // without "all"
/// Trial i uses seed + i. Throws std::invalid_argument for an unknown name.
std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed,
                                   std::size_t trials);

} // namespace ainv::finite
