#ifndef LIMBELIEF_FORMULA_HPP_
#define LIMBELIEF_FORMULA_HPP_

#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "limbelief/setup.hpp"

namespace limbelief {

// Immutable formula AST over the primitives: literals, disjunction, negation,
// existential quantification, and the belief operators K_k, M_k, O, G.
// Conjunction and universal quantification exist only as constructors that
// expand to the primitives.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    kLit,
    kOr,
    kNot,
    kExists,
    kKnow,
    kMaybe,
    kOnlyKnow,
    kGuarantee,
  };
  using Ptr = std::shared_ptr<const Formula>;

  static Ptr Lit(Literal l);
  static Ptr Or(Ptr a, Ptr b);
  static Ptr Not(Ptr a);  // collapses Not(Lit(l)) to Lit(~l)
  static Ptr Exists(TermId var, Ptr a);
  static Ptr Know(int level, Ptr a);
  static Ptr Maybe(int level, Ptr a);
  static Ptr OnlyKnow(Ptr a);
  static Ptr Guarantee(Ptr a);

  static Ptr And(Ptr a, Ptr b) { return Not(Or(Not(a), Not(b))); }
  static Ptr Forall(TermId var, Ptr a) { return Not(Exists(var, Not(a))); }

  Kind kind() const { return kind_; }
  Literal lit() const { return lit_; }
  TermId var() const { return var_; }
  int level() const { return level_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }

  bool objective() const;  // no belief operators
  // No function application outside the belief operators.
  bool subjective(const TermPool& pool) const;
  bool mentions_only_know() const;

  // Free-only, capture-avoiding substitution of a name or variable for a
  // variable.  Sorts must agree.
  static Ptr substitute(const Ptr& a, TermId var, TermId term, TermPool& pool);
  // Replaces every occurrence of a name by a variable (the reverse
  // substitution used when assembling belief expansions).
  static Ptr substitute_name(const Ptr& a, TermId name, TermId var,
                             TermPool& pool);

  void collect_names(const TermPool& pool,
                     std::unordered_set<TermId, TermIdHash>* out) const;
  void collect_free_vars(const TermPool& pool,
                         std::unordered_set<TermId, TermIdHash>* out) const;

  std::string str(const TermPool& pool) const;

 private:
  Formula() = default;

  Kind kind_ = Kind::kLit;
  Literal lit_;
  TermId var_;
  int level_ = 0;
  Ptr left_, right_;
};

// A universally closed clause; the building block of proper+ knowledge bases.
struct UniversalClause {
  std::vector<TermId> vars;  // binding order
  Clause clause;             // may mention the bound variables
};

// A proper+ knowledge base: a conjunction of universally quantified clauses.
class ProperPlusKB {
 public:
  void add(UniversalClause c) { clauses_.push_back(std::move(c)); }
  const std::vector<UniversalClause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }

  void collect_names(const TermPool& pool,
                     std::unordered_set<TermId, TermIdHash>* out) const;

 private:
  std::vector<UniversalClause> clauses_;
};

struct ProperPlusError {
  std::string message;
};

// Succeeds iff f is a conjunction of universally quantified clauses; the
// diagnostic names the offending subformula otherwise.
bool validate_proper_plus(const Formula::Ptr& f, const TermPool& pool,
                          ProperPlusKB* out, ProperPlusError* err);

// The finite name universe used for grounding and quantification: for every
// sort, the names mentioned in the KB or query plus (max free-variable count
// of that sort) + 1 fresh names.
class GroundingContext {
 public:
  GroundingContext() = default;
  GroundingContext(TermPool& pool, const ProperPlusKB& kb,
                   const Formula::Ptr& query);

  const std::vector<TermId>& universe(SortId s) const;
  const std::vector<TermId>& fresh(SortId s) const;
  const std::vector<TermId>& mentioned(SortId s) const;
  // Universe with the last fresh name of each sort removed (the split-term
  // budget).
  const std::vector<TermId>& split_universe(SortId s) const;
  bool is_mentioned(TermId n) const { return mentioned_set_.count(n) > 0; }

  // Allocates a name of the sort that occurs nowhere in the KB, the query,
  // or `avoid`; prefers the pre-allocated fresh pool.
  TermId fresh_beyond(SortId s,
                      const std::unordered_set<TermId, TermIdHash>& avoid,
                      TermPool& pool) const;

  std::vector<SortId> sorts() const;

 private:
  std::map<SortId, std::vector<TermId>> universe_;
  std::map<SortId, std::vector<TermId>> fresh_;
  std::map<SortId, std::vector<TermId>> mentioned_;
  std::map<SortId, std::vector<TermId>> split_universe_;
  std::unordered_set<TermId, TermIdHash> mentioned_set_;
  static const std::vector<TermId> kEmpty;
};

// gnd(kb): every instantiation of each universal clause with context names,
// loaded into a setup.  Duplicate instances are dropped.
Setup ground(const ProperPlusKB& kb, const GroundingContext& ctx,
             TermPool& pool);

// Adds to an existing setup the instances of the KB that use `new_name` in
// at least one variable position (the incremental regrounding used when a
// fresh name from outside the context universe enters the search).
void ground_extend(Setup* s, const ProperPlusKB& kb,
                   const GroundingContext& ctx,
                   std::span<const std::vector<TermId>> extra_names_by_sort,
                   TermId new_name, TermPool& pool);

// Instantiates one universal clause with the given assignment.
Clause instantiate(const UniversalClause& uc,
                   std::span<const TermId> assignment, TermPool& pool);

// Classically-equivalence-preserving rewriting toward forms on which limited
// belief is stronger: pushes universals and conjunctions into K, pulls
// existentials and disjunctions into M.
Formula::Ptr rewrite(const Formula::Ptr& f, TermPool& pool);

}  // namespace limbelief

#endif  // LIMBELIEF_FORMULA_HPP_
