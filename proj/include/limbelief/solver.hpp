#ifndef LIMBELIEF_SOLVER_HPP_
#define LIMBELIEF_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "limbelief/formula.hpp"
#include "limbelief/oracle.hpp"

namespace limbelief {

enum class Outcome { kTrue, kFalse, kResourceLimit };

// Thrown when the node or time budget is exhausted; query() turns it into
// Outcome::kResourceLimit, direct known_value callers must handle it.
class resource_limit_error : public std::runtime_error {
 public:
  resource_limit_error() : std::runtime_error("resource budget exhausted") {}
};

struct SolveOptions {
  bool rewrite = true;
  // Node budget for the split search; exhausting it yields kResourceLimit,
  // never false.
  std::int64_t max_nodes = -1;
  std::int64_t time_limit_ms = -1;
};

struct SolveStats {
  std::int64_t splits = 0;
  std::int64_t nodes = 0;
  double millis = 0.0;
  int max_level = 0;
};

// Evaluation state for one query against one knowledge base: the grounding
// context, the grounded setup s0 (with restricted copies per G scope), the
// current split literals as trail marks on a working copy, and a memo for
// resolved ground belief subformulas.  Contexts are independent; one query
// runs per context at a time.
class QueryContext {
 public:
  QueryContext(TermPool& pool, const ProperPlusKB& kb,
               const Formula::Ptr& query, const SolveOptions& opts);

  // Decides O kb |= query for a subjective query without O.
  // Also accepts objective sentences (decided against s0 directly).
  Outcome run();

  const SolveStats& stats() const { return stats_; }
  const GroundingContext& ctx() const { return ctx_; }
  Setup& base_setup() { return s0_; }

  // The value of a primitive term known at the given belief level, if any:
  // the decision-procedure search for K_k(t = x), driven by the term-value
  // index at the leaves.  `kAny` reports an obviously inconsistent branch.
  // For each probe name p, not_probes records whether K_level(t != p) holds.
  struct Known {
    enum Kind { kNone, kValue, kAny } kind = kNone;
    TermId value;
    std::vector<bool> not_probes;
  };
  Known known_value(TermId term, int level,
                    std::span<const TermId> probes = {});

  // Restricts attention to the connected component of the given terms
  // before running known_value (the G wrapper used by the game agents).
  Known known_value_guarded(TermId term, int level,
                            std::span<const TermId> probes = {});

 private:
  struct Restriction {
    std::vector<TermId> terms;  // sorted; the T of s0|_T
    bool all = false;
  };
  // Marks the setup on construction and unwinds (including split-name
  // bookkeeping) on destruction, so the trail stays LIFO under exceptions.
  struct SplitScope;

  friend class SolverTestPeer;

  Formula::Ptr red(const Restriction& t, const Formula::Ptr& f);
  Formula::Ptr res(const Restriction& t, bool know, int level,
                   const Formula::Ptr& body);
  Known known_value_inner(Setup& s, TermId term, int level,
                          std::span<const TermId> probes);
  const std::vector<TermId>& stored_pairs(Setup& s, TermId term);
  bool eval_modal(const Restriction& t, bool know, int level,
                  const Formula::Ptr& body);
  bool eval_know(Setup& s, int level, const Formula::Ptr& body);
  bool eval_maybe(Setup& s, int level, const Formula::Ptr& body);
  bool eval_objective(Setup& s, const Formula::Ptr& f);
  bool eval_clause(Setup& s, const Clause& c);

  std::vector<TermId> split_terms(Setup& s, const Formula::Ptr& body);
  std::vector<TermId> split_names(Setup& s, TermId term,
                                  const Formula::Ptr& body);
  std::vector<TermId> quantifier_names(Setup& s, SortId sort,
                                       const Formula::Ptr& body);
  TermId fresh_for(SortId sort, const Formula::Ptr& body, Setup& s);
  std::vector<TermId> formula_terms(const Formula::Ptr& f);
  std::vector<TermId> isomorphism_universe() const;

  Setup& working_setup(const Restriction& t);
  Restriction intersect(const Restriction& t, const Formula::Ptr& alpha);
  std::string restriction_key(const Restriction& t) const;

  void bump();
  void note_split_name(TermId n);
  void unnote_split_names(std::size_t count);

  TermPool& pool_;
  const ProperPlusKB& kb_;
  Formula::Ptr query_;
  SolveOptions opts_;
  SolveStats stats_;
  GroundingContext ctx_;
  Setup s0_;
  Setup empty_setup_;
  std::map<std::string, Setup> restricted_;
  std::map<std::string, bool> memo_;
  // Names introduced by splits (with multiplicity), per sort.
  std::unordered_map<TermId, int, TermIdHash> split_name_uses_;
  std::vector<TermId> split_name_stack_;
  // Names allocated beyond the context universe, per sort id.
  std::vector<std::vector<TermId>> extended_names_;
  // Clause-level name pairings per term, valid while the clause store of the
  // keyed setup is unchanged (unit additions do not invalidate it).
  std::uint64_t pair_cache_setup_ = 0;
  std::size_t pair_cache_nclauses_ = 0;
  std::unordered_map<TermId, std::vector<TermId>, TermIdHash> pair_cache_;
  std::chrono::steady_clock::time_point deadline_;
  bool has_deadline_ = false;
};

// One-shot convenience wrapper.
Outcome query(TermPool& pool, const ProperPlusKB& kb, const Formula::Ptr& q,
              const SolveOptions& opts = {}, SolveStats* stats = nullptr);

}  // namespace limbelief

#endif  // LIMBELIEF_SOLVER_HPP_
