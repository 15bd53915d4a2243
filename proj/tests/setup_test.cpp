#include "limbelief/setup.hpp"

#include "doctest.h"
#include "limbelief/oracle.hpp"
#include "test_support.hpp"

using namespace limbelief;

namespace {

struct Fix {
  TermPool pool;
  SortId s, b;
  TermId n, n1, n2, n3, t;
  TermId fn, gn;

  Fix() {
    s = pool.declare_sort("s");
    b = pool.declare_sort("bool");
    n = pool.name(s, 0);
    n1 = pool.name(s, 1);
    n2 = pool.name(s, 2);
    n3 = pool.name(s, 3);
    t = pool.name(b, 0);
    fn = pool.app(pool.declare_fun(s, 1, "f"), {n});
    gn = pool.app(pool.declare_fun(s, 1, "g"), {n});
  }
};

}  // namespace

TEST_CASE("adding complementary units derives the empty clause") {
  Fix x;
  Setup s(&x.pool);
  CHECK(s.add(Clause{x.pool.eq(x.fn, x.n1)}) == Setup::AddResult::kOk);
  CHECK(s.add(Clause{x.pool.neq(x.fn, x.n1)}) ==
        Setup::AddResult::kEmptyClause);
  CHECK(s.obviously_inconsistent());
}

TEST_CASE("valid clauses are no-ops") {
  Fix x;
  Setup s(&x.pool);
  CHECK(s.add(Clause{x.pool.eq(x.n, x.n)}) == Setup::AddResult::kOk);
  CHECK(s.num_clauses() == 0);
  CHECK(s.num_units() == 0);
}

TEST_CASE("unit propagation through a disjunction") {
  Fix x;
  Setup s(&x.pool);
  s.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.fn, x.n2)});
  s.add(Clause{x.pool.neq(x.fn, x.n1)});
  const auto v = s.determined_value(x.fn);
  REQUIRE(v.has_value());
  CHECK(*v == x.n2);
  CHECK(s.subsumes(Clause{x.pool.eq(x.fn, x.n2)}));
}

TEST_CASE("subsumption queries see VP membership") {
  Fix x;
  Setup s(&x.pool);
  CHECK(s.subsumes(Clause{x.pool.eq(x.n, x.n)}));  // valid clause
  s.add(Clause{x.pool.eq(x.fn, x.n1)});
  // a unit t = n1 subsumes t != n2
  CHECK(s.subsumes(Clause{x.pool.neq(x.fn, x.n2)}));
  CHECK(s.subsumes(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2)}));
  CHECK_FALSE(s.subsumes(Clause{x.pool.eq(x.gn, x.n2)}));
  // a longer stored clause subsumes a weaker one
  Setup s2(&x.pool);
  s2.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2)});
  CHECK(s2.subsumes(
      Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2), x.pool.eq(x.fn, x.n3)}));
  CHECK_FALSE(s2.subsumes(Clause{x.pool.eq(x.fn, x.n1)}));
}

TEST_CASE("obvious inconsistency") {
  Fix x;
  Setup s(&x.pool);
  CHECK_FALSE(s.obviously_inconsistent());
  s.add(Clause{x.pool.eq(x.fn, x.n1)});
  CHECK_FALSE(s.obviously_inconsistent());
  s.add(Clause{x.pool.eq(x.fn, x.n2)});
  CHECK(s.obviously_inconsistent());
  CHECK(s.subsumes(Clause{}));
}

TEST_CASE("potential inconsistency") {
  Fix x;
  {
    Setup s(&x.pool);
    CHECK_FALSE(s.potentially_inconsistent());
  }
  {
    // a literal t = n with n of the wrong sort is invalid and stripped,
    // leaving the empty clause
    Setup s(&x.pool);
    s.add(Clause{x.pool.eq(x.fn, x.t)});
    CHECK(s.obviously_inconsistent());
    CHECK(s.potentially_inconsistent());
  }
  {
    // complementary literals across two stored clauses
    Setup s(&x.pool);
    s.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2)});
    s.add(Clause{x.pool.eq(x.fn, x.n3), x.pool.eq(x.gn, x.n1)});
    CHECK_FALSE(s.obviously_inconsistent());
    CHECK(s.potentially_inconsistent());
  }
  {
    // same literals but one clause subsumed away: no conflict remains
    Setup s(&x.pool);
    s.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2)});
    CHECK_FALSE(s.potentially_inconsistent());
  }
}

TEST_CASE("term value queries") {
  Fix x;
  Setup s(&x.pool);
  CHECK(s.determines(x.fn).kind == Setup::TermValue::kUnknown);
  s.add(Clause{x.pool.neq(x.fn, x.n1)});
  s.add(Clause{x.pool.neq(x.fn, x.n2)});
  auto tv = s.determines(x.fn);
  CHECK(tv.kind == Setup::TermValue::kForbidden);
  CHECK(tv.forbidden == std::vector<TermId>{x.n1, x.n2});
  s.add(Clause{x.pool.eq(x.fn, x.n3)});
  tv = s.determines(x.fn);
  CHECK(tv.kind == Setup::TermValue::kValue);
  CHECK(tv.value == x.n3);
}

TEST_CASE("restriction to a term set") {
  Fix x;
  Setup s(&x.pool);
  s.add(Clause{x.pool.eq(x.fn, x.n1)});
  s.add(Clause{x.pool.eq(x.gn, x.n2)});
  const TermId terms[] = {x.fn};
  Setup r = s.restrict_to(terms);
  CHECK(r.subsumes(Clause{x.pool.eq(x.fn, x.n1)}));
  CHECK_FALSE(r.subsumes(Clause{x.pool.eq(x.gn, x.n2)}));

  // connected component closure
  Setup s2(&x.pool);
  s2.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.gn, x.n2)});
  s2.add(Clause{x.pool.neq(x.gn, x.n2)});
  Setup r2 = s2.restrict_to(terms);
  CHECK(r2.subsumes(Clause{x.pool.eq(x.fn, x.n1)}));

  // an obviously inconsistent setup restricts to the empty clause
  Setup s3(&x.pool);
  s3.add(Clause{x.pool.eq(x.fn, x.n1)});
  s3.add(Clause{x.pool.eq(x.fn, x.n2)});
  const TermId other[] = {x.gn};
  Setup r3 = s3.restrict_to(other);
  CHECK(r3.obviously_inconsistent());
}

TEST_CASE("mark and undo restore the store exactly") {
  Fix x;
  Setup s(&x.pool);
  s.add(Clause{x.pool.eq(x.fn, x.n1), x.pool.eq(x.fn, x.n2)});
  const auto m = s.mark();
  s.add(Clause{x.pool.neq(x.fn, x.n1)});
  CHECK(s.determined_value(x.fn).has_value());
  s.undo(m);
  CHECK_FALSE(s.determined_value(x.fn).has_value());
  CHECK_FALSE(s.subsumes(Clause{x.pool.eq(x.fn, x.n2)}));

  // contradiction rolls back
  const auto m2 = s.mark();
  s.add(Clause{x.pool.eq(x.gn, x.n1)});
  s.add(Clause{x.pool.eq(x.gn, x.n2)});
  CHECK(s.obviously_inconsistent());
  s.undo(m2);
  CHECK_FALSE(s.obviously_inconsistent());

  // nested marks unwind innermost first; non-LIFO undo is an error
  const auto outer = s.mark();
  const auto inner = s.mark();
  CHECK_THROWS_AS(s.undo(outer), std::logic_error);
  s.undo(inner);
  s.undo(outer);
}

TEST_CASE("isomorphic bulk assignment") {
  Fix x;
  const FunId f = x.pool.fun(x.fn);
  const TermId fn1 = x.pool.app(f, {x.n1});
  {
    // the f(n) = n pattern over two candidates
    Setup s(&x.pool);
    const TermId cands[] = {x.n, x.n1};
    s.add_isomorphic(x.pool.eq(x.fn, x.n), cands);
    CHECK(s.determined_value(x.fn) == x.n);
    CHECK(s.determined_value(fn1) == x.n1);
  }
  {
    // the negation-in-VP filter blocks contradicted instances
    Setup s(&x.pool);
    s.add(Clause{x.pool.neq(fn1, x.n1)});
    const TermId cands[] = {x.n, x.n1};
    s.add_isomorphic(x.pool.eq(x.fn, x.n), cands);
    CHECK(s.determined_value(x.fn) == x.n);
    CHECK_FALSE(s.determined_value(fn1).has_value());
    CHECK_FALSE(s.obviously_inconsistent());
  }
  {
    // a distinctness pattern is preserved: f(n) = n' only maps to images
    // with distinct argument and value
    Setup s(&x.pool);
    const TermId cands[] = {x.n, x.n1};
    s.add_isomorphic(x.pool.eq(x.fn, x.n1), cands);
    CHECK(s.determined_value(x.fn) == x.n1);
    CHECK(s.determined_value(fn1) == x.n);
  }
}

TEST_CASE("random setups: queries are invariant under adding subsumed clauses") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(42);
  int checked = 0;
  for (int round = 0; round < 3000; ++round) {
    Setup s(&v.pool);
    const int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) s.add(testing::random_clause(v, rng, 3));
    const Clause query = testing::random_clause(v, rng, 3);
    const bool before = s.subsumes(query);
    // find a clause already subsumed by the store
    Clause extra = testing::random_clause(v, rng, 3);
    if (!s.subsumes(extra)) continue;
    ++checked;
    s.add(extra);
    CHECK(s.subsumes(query) == before);
  }
  CHECK(checked > 100);
}

TEST_CASE("random setups: subsumption is monotone under superset") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(43);
  for (int round = 0; round < 2000; ++round) {
    std::vector<Clause> clauses;
    const int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) clauses.push_back(testing::random_clause(v, rng, 3));
    Setup small(&v.pool);
    Setup big(&v.pool);
    for (const Clause& c : clauses) big.add(c);
    const std::size_t keep = clauses.empty() ? 0 : rng() % clauses.size();
    for (std::size_t i = 0; i < keep; ++i) small.add(clauses[i]);
    big.add(testing::random_clause(v, rng, 3));
    const Clause query = testing::random_clause(v, rng, 3);
    if (small.subsumes(query)) CHECK(big.subsumes(query));
  }
}

TEST_CASE("random setups: consistency flags bound classical satisfiability") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(44);
  for (int round = 0; round < 1500; ++round) {
    std::vector<Clause> clauses;
    const int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) clauses.push_back(testing::random_clause(v, rng, 3));
    Setup s(&v.pool);
    for (const Clause& c : clauses) s.add(c);
    ProperPlusKB kb;
    for (const Clause& c : clauses) kb.add(UniversalClause{{}, c});
    oracle::Universe u = oracle::default_universe(kb, nullptr, 1, v.pool);
    const bool sat = oracle::satisfiable(clauses, u, v.pool);
    if (s.obviously_inconsistent()) CHECK_FALSE(sat);
    if (!s.potentially_inconsistent()) CHECK(sat);
  }
}

TEST_CASE("random setups: subsumed clauses are classically entailed") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(45);
  int positive = 0;
  for (int round = 0; round < 1500; ++round) {
    std::vector<Clause> clauses;
    const int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) clauses.push_back(testing::random_clause(v, rng, 3));
    Setup s(&v.pool);
    for (const Clause& c : clauses) s.add(c);
    const Clause query = testing::random_clause(v, rng, 3);
    if (!s.subsumes(query)) continue;
    ++positive;
    // every world over the joint vocabulary satisfying all clauses
    // satisfies the query
    ProperPlusKB kb;
    for (const Clause& c : clauses) kb.add(UniversalClause{{}, c});
    kb.add(UniversalClause{{}, query});
    oracle::Universe u = oracle::default_universe(kb, nullptr, 1, v.pool);
    std::vector<TermId> terms = oracle::relevant_terms(kb, nullptr, u, v.pool);
    for (const oracle::World& w : oracle::enumerate_worlds(terms, u, v.pool)) {
      bool all = true;
      for (const Clause& c : clauses) {
        bool sat = false;
        for (Literal l : c) {
          if (oracle::world_satisfies_literal(w, l, v.pool)) sat = true;
        }
        if (!sat) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      bool sat = false;
      for (Literal l : query) {
        if (oracle::world_satisfies_literal(w, l, v.pool)) sat = true;
      }
      CHECK(sat);
    }
  }
  CHECK(positive > 50);
}

TEST_CASE("random setups: mark/undo round-trips all observable queries") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(46);
  for (int round = 0; round < 1000; ++round) {
    Setup s(&v.pool);
    const int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) s.add(testing::random_clause(v, rng, 3));
    std::vector<Clause> probes;
    for (int i = 0; i < 6; ++i) probes.push_back(testing::random_clause(v, rng, 3));
    std::vector<bool> before;
    for (const Clause& c : probes) before.push_back(s.subsumes(c));
    const bool incon = s.obviously_inconsistent();
    const bool pot = s.potentially_inconsistent();

    const auto m = s.mark();
    const int extra = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i) s.add(testing::random_clause(v, rng, 2));
    s.undo(m);

    for (std::size_t i = 0; i < probes.size(); ++i) {
      CHECK(s.subsumes(probes[i]) == before[i]);
    }
    CHECK(s.obviously_inconsistent() == incon);
    CHECK(s.potentially_inconsistent() == pot);
  }
}
