#ifndef LIMBELIEF_TESTS_TEST_SUPPORT_HPP_
#define LIMBELIEF_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "limbelief/formula.hpp"
#include "limbelief/oracle.hpp"

namespace limbelief {
namespace testing {

// A small vocabulary for randomized tests: one sort, a few standard names,
// and a few nullary function symbols (the primitive terms of propositional
// knowledge bases).
struct Vocabulary {
  TermPool pool;
  SortId sort;
  std::vector<TermId> names;
  std::vector<TermId> terms;

  Vocabulary(std::size_t num_names, std::size_t num_terms) {
    sort = pool.declare_sort("s");
    for (std::size_t i = 0; i < num_names; ++i) {
      names.push_back(pool.name(sort, static_cast<std::uint32_t>(i)));
    }
    for (std::size_t i = 0; i < num_terms; ++i) {
      const FunId f = pool.declare_fun(sort, 0, "t" + std::to_string(i));
      terms.push_back(pool.app(f, {}));
    }
  }
};

using Rng = std::mt19937_64;

inline Literal random_literal(Vocabulary& v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> td(0, v.terms.size() - 1);
  std::uniform_int_distribution<std::size_t> nd(0, v.names.size() - 1);
  std::uniform_int_distribution<int> bd(0, 1);
  return v.pool.lit(v.terms[td(rng)], bd(rng) == 0, v.names[nd(rng)]);
}

inline Clause random_clause(Vocabulary& v, Rng& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> ld(1, max_len);
  std::vector<Literal> lits;
  const std::size_t len = ld(rng);
  for (std::size_t i = 0; i < len; ++i) lits.push_back(random_literal(v, rng));
  return Clause(std::move(lits));
}

// Random propositional proper+ KB over the vocabulary; clauses that come out
// valid are kept (the setup layer drops them, which is part of the contract
// under test).
inline ProperPlusKB random_kb(Vocabulary& v, Rng& rng, std::size_t max_clauses,
                              std::size_t max_len) {
  ProperPlusKB kb;
  std::uniform_int_distribution<std::size_t> cd(0, max_clauses);
  const std::size_t n = cd(rng);
  for (std::size_t i = 0; i < n; ++i) {
    kb.add(UniversalClause{{}, random_clause(v, rng, max_len)});
  }
  return kb;
}

// Random objective propositional formula.
inline Formula::Ptr random_objective(Vocabulary& v, Rng& rng, int depth) {
  std::uniform_int_distribution<int> kd(0, depth > 0 ? 3 : 0);
  switch (kd(rng)) {
    case 1:
      return Formula::Or(random_objective(v, rng, depth - 1),
                         random_objective(v, rng, depth - 1));
    case 2:
      return Formula::Not(random_objective(v, rng, depth - 1));
    case 3:
      return Formula::And(random_objective(v, rng, depth - 1),
                          random_objective(v, rng, depth - 1));
    default:
      return Formula::Lit(random_literal(v, rng));
  }
}

}  // namespace testing
}  // namespace limbelief

#endif  // LIMBELIEF_TESTS_TEST_SUPPORT_HPP_
