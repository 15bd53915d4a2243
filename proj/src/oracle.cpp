#include "limbelief/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace limbelief {
namespace oracle {

TermId World::value_of(TermId term) const {
  auto it = std::lower_bound(terms->begin(), terms->end(), term);
  assert(it != terms->end() && *it == term);
  return values[static_cast<std::size_t>(it - terms->begin())];
}

std::vector<World> enumerate_worlds(const std::vector<TermId>& terms,
                                    const Universe& universe,
                                    const TermPool& pool) {
  for (TermId t : terms) {
    if (universe.of(pool.sort(t)).empty()) {
      throw std::invalid_argument("oracle universe lacks names for a sort");
    }
  }
  std::vector<World> worlds;
  std::vector<std::size_t> idx(terms.size(), 0);
  while (true) {
    World w;
    w.terms = &terms;
    w.values.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      w.values.push_back(universe.of(pool.sort(terms[i]))[idx[i]]);
    }
    worlds.push_back(std::move(w));
    std::size_t i = 0;
    for (; i < terms.size(); ++i) {
      if (++idx[i] < universe.of(pool.sort(terms[i])).size()) break;
      idx[i] = 0;
    }
    if (i == terms.size()) break;
  }
  return worlds;
}

bool world_satisfies_literal(const World& w, Literal l, const TermPool& pool) {
  const TermId lhs = l.lhs();
  const TermId rhs = l.rhs();
  assert(rhs.is_name());
  TermId lv;
  if (lhs.is_name()) {
    lv = lhs;
  } else {
    assert(pool.is_primitive(lhs));
    if (pool.sort(lhs) != pool.sort(rhs)) return !l.pos();
    lv = w.value_of(lhs);
  }
  return (lv == rhs) == l.pos();
}

namespace {

bool world_satisfies_clause(const World& w, const Clause& c,
                            const TermPool& pool) {
  for (Literal l : c) {
    if (world_satisfies_literal(w, l, pool)) return true;
  }
  return false;
}

void collect_terms_formula(const Formula::Ptr& f, const Universe& universe,
                           TermPool& pool, std::set<TermId>* out);

// Instantiates the free variables of a literal over the universe and records
// the resulting primitive terms.
void collect_terms_literal(Literal l, const Universe& universe, TermPool& pool,
                           std::set<TermId>* out) {
  const TermId lhs = l.lhs();
  if (!pool.is_app(lhs)) return;
  std::vector<TermId> args(pool.args(lhs).begin(), pool.args(lhs).end());
  std::vector<std::size_t> var_pos;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (pool.is_variable(args[i])) var_pos.push_back(i);
  }
  if (var_pos.empty()) {
    out->insert(lhs);
    return;
  }
  std::vector<std::size_t> idx(var_pos.size(), 0);
  while (true) {
    std::vector<TermId> inst = args;
    for (std::size_t i = 0; i < var_pos.size(); ++i) {
      const auto& names = universe.of(pool.sort(args[var_pos[i]]));
      if (names.empty()) return;
      inst[var_pos[i]] = names[idx[i]];
    }
    out->insert(pool.app(pool.fun(lhs), inst));
    std::size_t i = 0;
    for (; i < var_pos.size(); ++i) {
      const auto& names = universe.of(pool.sort(args[var_pos[i]]));
      if (++idx[i] < names.size()) break;
      idx[i] = 0;
    }
    if (i == var_pos.size()) break;
  }
}

void collect_terms_formula(const Formula::Ptr& f, const Universe& universe,
                           TermPool& pool, std::set<TermId>* out) {
  if (f->kind() == Formula::Kind::kLit) {
    collect_terms_literal(f->lit(), universe, pool, out);
    return;
  }
  if (f->left()) collect_terms_formula(f->left(), universe, pool, out);
  if (f->right()) collect_terms_formula(f->right(), universe, pool, out);
}

struct Evaluator {
  const std::vector<World>& all_worlds;
  const std::vector<std::size_t>& e;  // indices of worlds satisfying the KB
  const Universe& universe;
  TermPool& pool;

  bool eval(const Formula::Ptr& f, const World& w) const {
    switch (f->kind()) {
      case Formula::Kind::kLit:
        return world_satisfies_literal(w, f->lit(), pool);
      case Formula::Kind::kOr:
        return eval(f->left(), w) || eval(f->right(), w);
      case Formula::Kind::kNot:
        return !eval(f->left(), w);
      case Formula::Kind::kExists: {
        for (TermId n : universe.of(pool.sort(f->var()))) {
          if (eval(Formula::substitute(f->left(), f->var(), n, pool), w)) {
            return true;
          }
        }
        return false;
      }
      case Formula::Kind::kKnow: {
        for (std::size_t i : e) {
          if (!eval(f->left(), all_worlds[i])) return false;
        }
        return true;
      }
      case Formula::Kind::kMaybe: {
        for (std::size_t i : e) {
          if (eval(f->left(), all_worlds[i])) return true;
        }
        return false;
      }
      case Formula::Kind::kOnlyKnow:
      case Formula::Kind::kGuarantee:
        throw std::invalid_argument("oracle: O and G are not supported here");
    }
    return false;
  }
};

}  // namespace

std::vector<TermId> relevant_terms(const ProperPlusKB& kb,
                                   const Formula::Ptr& query,
                                   const Universe& universe, TermPool& pool) {
  std::set<TermId> terms;
  for (const UniversalClause& uc : kb.clauses()) {
    for (Literal l : uc.clause) {
      collect_terms_literal(l, universe, pool, &terms);
    }
  }
  if (query) collect_terms_formula(query, universe, pool, &terms);
  return {terms.begin(), terms.end()};
}

Universe default_universe(const ProperPlusKB& kb, const Formula::Ptr& query,
                          std::size_t extra_fresh, TermPool& pool) {
  std::unordered_set<TermId, TermIdHash> names;
  kb.collect_names(pool, &names);
  if (query) query->collect_names(pool, &names);
  Universe u;
  for (TermId n : names) u.names[pool.sort(n)].push_back(n);
  for (auto& [s, v] : u.names) std::sort(v.begin(), v.end());
  // Sorts of variables and of function results matter even with no names.
  std::set<SortId> sorts;
  for (const auto& [s, v] : u.names) sorts.insert(s);
  for (const UniversalClause& uc : kb.clauses()) {
    for (TermId v : uc.vars) sorts.insert(pool.sort(v));
    for (Literal l : uc.clause) {
      sorts.insert(pool.sort(l.lhs()));
      sorts.insert(pool.sort(l.rhs()));
    }
  }
  struct SortWalk {
    TermPool& pool;
    std::set<SortId>& sorts;
    void operator()(const Formula::Ptr& f) {
      if (f->kind() == Formula::Kind::kLit) {
        sorts.insert(pool.sort(f->lit().lhs()));
        sorts.insert(pool.sort(f->lit().rhs()));
        return;
      }
      if (f->kind() == Formula::Kind::kExists) {
        sorts.insert(pool.sort(f->var()));
      }
      if (f->left()) (*this)(f->left());
      if (f->right()) (*this)(f->right());
    }
  };
  if (query) SortWalk{pool, sorts}(query);
  for (SortId s : sorts) {
    auto& list = u.names[s];
    std::unordered_set<TermId, TermIdHash> avoid(names.begin(), names.end());
    for (TermId n : pool.fresh_names(s, extra_fresh, avoid)) {
      list.push_back(n);
    }
  }
  return u;
}

bool classical_holds(const ProperPlusKB& kb, const Formula::Ptr& sigma,
                     const Universe& universe, TermPool& pool) {
  std::vector<TermId> terms = relevant_terms(kb, sigma, universe, pool);
  std::vector<World> worlds = enumerate_worlds(terms, universe, pool);

  // Ground the KB over the universe.
  std::vector<Clause> ground_kb;
  for (const UniversalClause& uc : kb.clauses()) {
    std::vector<std::vector<TermId>> domains;
    for (TermId v : uc.vars) domains.push_back(universe.of(pool.sort(v)));
    bool empty_domain = false;
    for (const auto& d : domains) empty_domain = empty_domain || d.empty();
    if (empty_domain) continue;
    std::vector<std::size_t> idx(uc.vars.size(), 0);
    while (true) {
      std::vector<TermId> assign(uc.vars.size());
      for (std::size_t i = 0; i < uc.vars.size(); ++i) {
        assign[i] = domains[i][idx[i]];
      }
      ground_kb.push_back(instantiate(uc, assign, pool));
      std::size_t i = 0;
      for (; i < uc.vars.size(); ++i) {
        if (++idx[i] < domains[i].size()) break;
        idx[i] = 0;
      }
      if (i == uc.vars.size()) break;
    }
  }

  // e = the unique maximal epistemic state for O kb.
  std::vector<std::size_t> e;
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    bool all = true;
    for (const Clause& c : ground_kb) {
      if (!world_satisfies_clause(worlds[i], c, pool)) {
        all = false;
        break;
      }
    }
    if (all) e.push_back(i);
  }

  Evaluator ev{worlds, e, universe, pool};
  // sigma is subjective, so the world argument is irrelevant; use any world.
  return ev.eval(sigma, worlds.front());
}

bool literal_valid(Literal l, TermPool& pool) {
  ProperPlusKB empty;
  Universe u = default_universe(empty, Formula::Lit(l), 1, pool);
  const Formula::Ptr f = Formula::Lit(l);
  std::vector<TermId> terms = relevant_terms(empty, f, u, pool);
  for (const World& w : enumerate_worlds(terms, u, pool)) {
    if (!world_satisfies_literal(w, l, pool)) return false;
  }
  return true;
}

bool literal_unsat(Literal l, TermPool& pool) {
  ProperPlusKB empty;
  Universe u = default_universe(empty, Formula::Lit(l), 1, pool);
  const Formula::Ptr f = Formula::Lit(l);
  std::vector<TermId> terms = relevant_terms(empty, f, u, pool);
  for (const World& w : enumerate_worlds(terms, u, pool)) {
    if (world_satisfies_literal(w, l, pool)) return false;
  }
  return true;
}

bool clause_valid_all_worlds(const Clause& c, TermPool& pool) {
  ProperPlusKB empty;
  Formula::Ptr f;
  for (Literal l : c) {
    f = f ? Formula::Or(f, Formula::Lit(l)) : Formula::Lit(l);
  }
  if (!f) return false;  // the empty clause holds in no world
  Universe u = default_universe(empty, f, 1, pool);
  std::vector<TermId> terms = relevant_terms(empty, f, u, pool);
  for (const World& w : enumerate_worlds(terms, u, pool)) {
    if (!world_satisfies_clause(w, c, pool)) return false;
  }
  return true;
}

bool satisfiable(const std::vector<Clause>& clauses, const Universe& universe,
                 TermPool& pool) {
  std::set<TermId> term_set;
  for (const Clause& c : clauses) {
    for (Literal l : c) {
      if (pool.is_app(l.lhs())) term_set.insert(l.lhs());
    }
  }
  std::vector<TermId> terms(term_set.begin(), term_set.end());
  for (const World& w : enumerate_worlds(terms, universe, pool)) {
    bool all = true;
    for (const Clause& c : clauses) {
      if (!world_satisfies_clause(w, c, pool)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace oracle
}  // namespace limbelief
