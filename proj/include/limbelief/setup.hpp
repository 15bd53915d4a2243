#ifndef LIMBELIEF_SETUP_HPP_
#define LIMBELIEF_SETUP_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "limbelief/clause.hpp"

namespace limbelief {

// A setup is a store of ground clauses closed under unit propagation.
// Valid clauses are never stored and invalid literals are stripped on add;
// this realizes the closure with all valid literals implicitly.  Propagation
// uses two watched literals per clause; unit clauses bypass watching and go
// straight to the per-term value index.  All additions are recorded on a
// trail so that mark/undo restores the store exactly (LIFO only).
//
// A Setup is single-writer: it may be moved between threads but not mutated
// concurrently.  Independent queries run on independent clones.
class Setup {
 public:
  enum class AddResult { kOk, kEmptyClause };

  struct Mark {
    std::size_t trail = 0;
    std::size_t depth = 0;
  };

  // Result of querying the value of a primitive term.
  struct TermValue {
    enum Kind { kValue, kForbidden, kUnknown } kind = kUnknown;
    TermId value;                    // set for kValue
    std::vector<TermId> forbidden;   // set for kForbidden, derivation order
  };

  explicit Setup(TermPool* pool) : pool_(pool), uid_(next_uid()) {}
  Setup(const Setup&) = delete;
  Setup& operator=(const Setup&) = delete;
  Setup(Setup&&) = default;
  Setup& operator=(Setup&&) = default;

  // Distinguishes setup instances across their lifetimes (addresses may be
  // reused by stack-allocated restrictions).
  std::uint64_t uid() const { return uid_; }

  const TermPool& pool() const { return *pool_; }

  // Adds c and restores unit closure.  Returns kEmptyClause iff the empty
  // clause became derivable (the flag is sticky until undone).
  AddResult add(const Clause& c);
  AddResult add_unit_literal(Literal l);

  // c is in VP(s): c is valid, or some clause of the unit-propagation
  // closure subsumes it.
  bool subsumes(const Clause& c) const;

  bool obviously_inconsistent() const { return empty_clause_; }

  // Obviously inconsistent, or the literal set of WP(s) contains two
  // complementary literals.  (The remaining conditions of the definition
  // cannot arise here: wrong-sorted literals are invalid and stripped on
  // add, and with an unbounded name supply no term can have all its values
  // excluded.)
  bool potentially_inconsistent() const;

  std::optional<TermId> determined_value(TermId t) const;
  TermValue determines(TermId t) const;

  // s|_T: the least subset of WP(s) whose clauses mention a term of T, are
  // empty, or share a term with an included clause.
  Setup restrict_to(std::span<const TermId> terms) const;

  // Like restrict_to but computed over the stored clauses without the WP
  // subsumption filtering: a superset of s|_T that is much cheaper on large
  // stores.  Returns nullopt when the component covers the whole store (the
  // restriction would be the identity).
  std::optional<Setup> restrict_reachable_opt(
      std::span<const TermId> terms) const;
  Setup restrict_reachable(std::span<const TermId> terms) const;

  Mark mark();
  void undo(Mark m);

  // Adds every literal over the candidate name universe that is isomorphic
  // to l (related to it by a sort-preserving name bijection) and whose
  // negation is not in VP of the setup extended with the additions made so
  // far.  Candidates are grouped by sort internally; consideration order is
  // deterministic (candidate list order).  The literals actually added are
  // appended to *added when given.
  AddResult add_isomorphic(Literal l, std::span<const TermId> candidates,
                           std::vector<Literal>* added = nullptr);

  // All distinct left-hand-side terms of stored literals, in interning
  // order.
  std::vector<TermId> lhs_terms() const;

  // Names n such that a literal t = n or t != n occurs among the stored
  // clauses or units, in derivation order (deduplicated).
  std::vector<TermId> names_paired_with(TermId t) const;

  // The clause-store part of names_paired_with (cacheable: only clause
  // additions change it).
  std::vector<TermId> stored_pair_names(TermId t) const;

  // Invokes f on every clause of the WP approximation (units and stored
  // clauses that survive subsumption filtering), in deterministic order.
  template <typename F>
  void for_each_wp_clause(F&& f) const;

  std::size_t num_clauses() const { return clauses_.size(); }
  std::size_t num_units() const { return units_.size(); }

 private:
  struct StoredClause {
    std::vector<Literal> lits;
    std::uint32_t watch[2];  // indices into lits
  };
  enum class TrailKind : std::uint8_t {
    kClauseAdded,
    kValueSet,
    kForbiddenPushed,
    kEmptyFlagSet,
  };
  struct TrailOp {
    TrailKind kind;
    TermId term;
  };
  struct TermState {
    TermId value;  // null if unset
    std::vector<TermId> forbidden;
  };

  bool killed(Literal l) const;
  bool unit_subsumes_literal(Literal l) const;
  AddResult enqueue_unit(Literal l);
  void propagate();
  void set_empty_flag();
  std::vector<Literal> live_literals(const StoredClause& sc) const;
  bool clause_wp_dropped(std::size_t idx,
                         const std::vector<Literal>& live) const;
  bool stored_subsumes(const Clause& c) const;

  static std::uint64_t next_uid() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  TermPool* pool_;
  std::uint64_t uid_ = 0;
  std::vector<StoredClause> clauses_;
  std::unordered_map<TermId, std::vector<std::uint32_t>, TermIdHash> watches_;
  std::unordered_map<TermId, std::vector<std::uint32_t>, TermIdHash> occurs_;
  std::unordered_map<TermId, TermState, TermIdHash> state_;
  std::vector<Literal> units_;  // derivation order, deduplicated
  std::vector<Literal> queue_;
  std::vector<TrailOp> trail_;
  std::vector<std::size_t> mark_stack_;
  bool empty_clause_ = false;
};

template <typename F>
void Setup::for_each_wp_clause(F&& f) const {
  if (empty_clause_) {
    // The empty clause subsumes everything else, so WP(s) is just {{}}.
    f(Clause{});
    return;
  }
  for (Literal u : units_) {
    if (!u.pos()) {
      // A negative unit subsumed by this term's positive value is dropped.
      auto it = state_.find(u.lhs());
      if (it != state_.end() && !it->second.value.null() &&
          it->second.value != u.rhs()) {
        continue;
      }
    }
    f(Clause{u});
  }
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    std::vector<Literal> live = live_literals(clauses_[i]);
    if (live.size() <= 1) continue;  // represented by the unit index
    if (clause_wp_dropped(i, live)) continue;
    f(Clause(std::move(live)));
  }
}

}  // namespace limbelief

#endif  // LIMBELIEF_SETUP_HPP_
