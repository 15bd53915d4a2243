#ifndef LIMBELIEF_ORACLE_HPP_
#define LIMBELIEF_ORACLE_HPP_

#include <map>
#include <vector>

#include "limbelief/formula.hpp"

namespace limbelief {
namespace oracle {

// Brute-force possible-worlds semantics over a finite universe, used as the
// ground truth in property tests.  It deliberately shares no machinery with
// the setup layer: literal truth, clause truth, and quantification are all
// evaluated structurally against explicit world assignments.

// Per-sort finite name supply.
struct Universe {
  std::map<SortId, std::vector<TermId>> names;

  const std::vector<TermId>& of(SortId s) const {
    static const std::vector<TermId> empty;
    auto it = names.find(s);
    return it == names.end() ? empty : it->second;
  }
};

// A world assigns a sort-matching name to every primitive term of the
// enumeration base.
struct World {
  const std::vector<TermId>* terms;  // enumeration base, sorted
  std::vector<TermId> values;        // parallel to *terms

  TermId value_of(TermId term) const;
};

// All sort-preserving assignments over `terms`, in odometer order.
// The count is the product of the per-term universe sizes.
std::vector<World> enumerate_worlds(const std::vector<TermId>& terms,
                                    const Universe& universe,
                                    const TermPool& pool);

// Collects the primitive terms of all instantiations of the KB clauses and
// the query over the universe.
std::vector<TermId> relevant_terms(const ProperPlusKB& kb,
                                   const Formula::Ptr& query,
                                   const Universe& universe, TermPool& pool);

// Universe containing the names of the KB and query plus `extra_fresh`
// fresh names per sort.
Universe default_universe(const ProperPlusKB& kb, const Formula::Ptr& query,
                          std::size_t extra_fresh, TermPool& pool);

bool world_satisfies_literal(const World& w, Literal l, const TermPool& pool);

// Decides O kb |= sigma with the classical rules; belief levels in sigma are
// ignored (K_k and M_k read as K and M).  sigma must not mention O or G.
bool classical_holds(const ProperPlusKB& kb, const Formula::Ptr& sigma,
                     const Universe& universe, TermPool& pool);

// Classical validity of a ground literal / clause over all worlds of a
// universe extending the mentioned names by one fresh name per sort.
bool literal_valid(Literal l, TermPool& pool);
bool literal_unsat(Literal l, TermPool& pool);
bool clause_valid_all_worlds(const Clause& c, TermPool& pool);

// Whether some world over the given universe satisfies every clause.
bool satisfiable(const std::vector<Clause>& clauses, const Universe& universe,
                 TermPool& pool);

}  // namespace oracle
}  // namespace limbelief

#endif  // LIMBELIEF_ORACLE_HPP_
