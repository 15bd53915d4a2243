#include "limbelief/formula.hpp"

#include "doctest.h"
#include "limbelief/oracle.hpp"
#include "test_support.hpp"

using namespace limbelief;

namespace {

struct Fix {
  TermPool pool;
  SortId human, boolean;
  TermId sally, frank, fred, t, x, y;
  FunId father_of, rich;

  Fix() {
    human = pool.declare_sort("human");
    boolean = pool.declare_sort("bool");
    sally = pool.name(human, 0);
    frank = pool.name(human, 1);
    fred = pool.name(human, 2);
    t = pool.name(boolean, 0);
    x = pool.variable(human, 0);
    y = pool.variable(human, 1);
    father_of = pool.declare_fun(human, 1, "fatherOf");
    rich = pool.declare_fun(boolean, 1, "rich");
  }

  TermId father(TermId arg) { return pool.app(father_of, {arg}); }
  TermId is_rich(TermId arg) { return pool.app(rich, {arg}); }

  // The running-example knowledge base.
  ProperPlusKB kb() {
    ProperPlusKB out;
    out.add(UniversalClause{{},
                            Clause{pool.eq(father(sally), frank),
                                   pool.eq(father(sally), fred)}});
    out.add(UniversalClause{
        {x}, Clause{pool.neq(father(sally), x), pool.eq(is_rich(x), t)}});
    return out;
  }
};

}  // namespace

TEST_CASE("substitution replaces free occurrences only") {
  Fix f;
  // (fatherOf(Sally) != x)[x -> Frank]
  const Formula::Ptr a = Formula::Lit(f.pool.neq(f.father(f.sally), f.x));
  const Formula::Ptr b = Formula::substitute(a, f.x, f.frank, f.pool);
  CHECK(b->lit() == f.pool.neq(f.father(f.sally), f.frank));

  // (exists x f(x) = y)[y -> Frank] substitutes the free y
  const Formula::Ptr c =
      Formula::Exists(f.x, Formula::Lit(f.pool.eq(f.father(f.x), f.y)));
  const Formula::Ptr d = Formula::substitute(c, f.y, f.frank, f.pool);
  CHECK(d->left()->lit() == f.pool.eq(f.father(f.x), f.frank));

  // bound occurrences stay untouched
  const Formula::Ptr e =
      Formula::Exists(f.x, Formula::Lit(f.pool.eq(f.father(f.x), f.frank)));
  const Formula::Ptr g = Formula::substitute(e, f.x, f.fred, f.pool);
  CHECK(g->left()->lit() == f.pool.eq(f.father(f.x), f.frank));

  // substituting twice is idempotent once the variable is gone
  const Formula::Ptr h = Formula::substitute(b, f.x, f.fred, f.pool);
  CHECK(h->lit() == b->lit());
}

TEST_CASE("substitution checks sorts") {
  Fix f;
  const Formula::Ptr a = Formula::Lit(f.pool.neq(f.father(f.sally), f.x));
  CHECK_THROWS_AS(Formula::substitute(a, f.x, f.t, f.pool),
                  std::invalid_argument);
}

TEST_CASE("grounding the running example") {
  Fix f;
  const ProperPlusKB kb = f.kb();
  const Formula::Ptr query = Formula::Lit(f.pool.eq(f.is_rich(f.frank), f.t));
  GroundingContext ctx(f.pool, kb, query);

  // mentioned humans plus (one variable) + 1 fresh names
  CHECK(ctx.mentioned(f.human).size() == 3);
  CHECK(ctx.fresh(f.human).size() == 2);
  CHECK(ctx.universe(f.human).size() == 5);

  Setup s = ground(kb, ctx, f.pool);
  // the clause family fatherOf(Sally) != n || rich(n) = T is instantiated
  // for every universe name
  CHECK(s.subsumes(Clause{f.pool.neq(f.father(f.sally), f.frank),
                          f.pool.eq(f.is_rich(f.frank), f.t)}));
  CHECK(s.subsumes(Clause{f.pool.eq(f.father(f.sally), f.frank),
                          f.pool.eq(f.father(f.sally), f.fred)}));
  const TermId fresh = ctx.fresh(f.human)[0];
  CHECK(s.subsumes(Clause{f.pool.neq(f.father(f.sally), fresh),
                          f.pool.eq(f.is_rich(fresh), f.t)}));
}

TEST_CASE("grounding a variable-free KB is verbatim; empty KB is empty") {
  Fix f;
  ProperPlusKB kb;
  kb.add(UniversalClause{{}, Clause{f.pool.eq(f.father(f.sally), f.frank)}});
  GroundingContext ctx(f.pool, kb, nullptr);
  Setup s = ground(kb, ctx, f.pool);
  CHECK(s.num_units() == 1);

  ProperPlusKB empty;
  GroundingContext ctx2(f.pool, empty, nullptr);
  Setup s2 = ground(empty, ctx2, f.pool);
  CHECK(s2.num_clauses() == 0);
  CHECK(s2.num_units() == 0);
}

TEST_CASE("ground over a larger context is a superset") {
  testing::Vocabulary v(2, 2);
  testing::Rng rng(19);
  const SortId s = v.sort;
  const TermId var = v.pool.variable(s, 50);
  const FunId g = v.pool.declare_fun(s, 1, "g");
  ProperPlusKB kb;
  kb.add(UniversalClause{
      {var}, Clause{v.pool.neq(v.pool.app(g, {var}), v.names[0])}});
  const Formula::Ptr small_query = Formula::Lit(
      v.pool.eq(v.pool.app(g, {v.names[0]}), v.names[0]));
  // a query with two simultaneously free variables of the sort enlarges the
  // fresh-name pool
  const TermId var2 = v.pool.variable(s, 51);
  const TermId var3 = v.pool.variable(s, 52);
  const Formula::Ptr big_query = Formula::Exists(
      var2,
      Formula::Exists(
          var3, Formula::Lit(v.pool.eq(v.pool.app(g, {var2}), var3))));
  GroundingContext small_ctx(v.pool, kb, small_query);
  GroundingContext big_ctx(v.pool, kb, big_query);
  CHECK(big_ctx.universe(s).size() > small_ctx.universe(s).size());
  Setup small_s = ground(kb, small_ctx, v.pool);
  Setup big_s = ground(kb, big_ctx, v.pool);
  CHECK(big_s.num_units() >= small_s.num_units());
  (void)rng;
}

TEST_CASE("validate_proper_plus accepts the running example") {
  Fix f;
  const Formula::Ptr c1 =
      Formula::Or(Formula::Lit(f.pool.eq(f.father(f.sally), f.frank)),
                  Formula::Lit(f.pool.eq(f.father(f.sally), f.fred)));
  const Formula::Ptr c2 = Formula::Forall(
      f.x, Formula::Or(Formula::Lit(f.pool.neq(f.father(f.sally), f.x)),
                       Formula::Lit(f.pool.eq(f.is_rich(f.x), f.t))));
  ProperPlusKB kb;
  ProperPlusError err;
  REQUIRE(validate_proper_plus(Formula::And(c1, c2), f.pool, &kb, &err));
  CHECK(kb.size() == 2);
  CHECK(kb.clauses()[1].vars.size() == 1);
}

TEST_CASE("validate_proper_plus rejects existentials and modal operators") {
  Fix f;
  ProperPlusKB kb;
  ProperPlusError err;
  const Formula::Ptr ex =
      Formula::Exists(f.x, Formula::Lit(f.pool.eq(f.father(f.x), f.frank)));
  CHECK_FALSE(validate_proper_plus(ex, f.pool, &kb, &err));
  CHECK(err.message.find("existential") != std::string::npos);

  const Formula::Ptr know =
      Formula::Know(0, Formula::Lit(f.pool.eq(f.father(f.sally), f.frank)));
  CHECK_FALSE(validate_proper_plus(know, f.pool, &kb, &err));
  CHECK(err.message.find("belief") != std::string::npos);
}

TEST_CASE("rewrite applies the modal equivalences") {
  Fix f;
  const Formula::Ptr lit = Formula::Lit(f.pool.eq(f.is_rich(f.x), f.t));
  // forall x K1 a  =>  K1 forall x a
  {
    const Formula::Ptr in = Formula::Forall(f.x, Formula::Know(1, lit));
    const Formula::Ptr out = rewrite(in, f.pool);
    REQUIRE(out->kind() == Formula::Kind::kKnow);
    CHECK(out->str(f.pool) ==
          Formula::Know(1, Formula::Forall(f.x, lit))->str(f.pool));
  }
  // M1 a || M1 b  =>  M1 (a || b)
  {
    const Formula::Ptr a = Formula::Lit(f.pool.eq(f.is_rich(f.frank), f.t));
    const Formula::Ptr b = Formula::Lit(f.pool.eq(f.is_rich(f.fred), f.t));
    const Formula::Ptr in =
        Formula::Or(Formula::Maybe(1, a), Formula::Maybe(1, b));
    const Formula::Ptr out = rewrite(in, f.pool);
    REQUIRE(out->kind() == Formula::Kind::kMaybe);
    CHECK(out->left()->kind() == Formula::Kind::kOr);
  }
  // exists x M1 a  =>  M1 exists x a
  {
    const Formula::Ptr in = Formula::Exists(f.x, Formula::Maybe(1, lit));
    const Formula::Ptr out = rewrite(in, f.pool);
    REQUIRE(out->kind() == Formula::Kind::kMaybe);
    CHECK(out->left()->kind() == Formula::Kind::kExists);
  }
  // K1 a && K1 b  =>  K1 (a && b)
  {
    const Formula::Ptr a = Formula::Lit(f.pool.eq(f.is_rich(f.frank), f.t));
    const Formula::Ptr b = Formula::Lit(f.pool.eq(f.is_rich(f.fred), f.t));
    const Formula::Ptr in =
        Formula::And(Formula::Know(1, a), Formula::Know(1, b));
    const Formula::Ptr out = rewrite(in, f.pool);
    REQUIRE(out->kind() == Formula::Kind::kKnow);
  }
  // mixed levels stay apart
  {
    const Formula::Ptr a = Formula::Lit(f.pool.eq(f.is_rich(f.frank), f.t));
    const Formula::Ptr in =
        Formula::Or(Formula::Maybe(1, a), Formula::Maybe(2, a));
    const Formula::Ptr out = rewrite(in, f.pool);
    CHECK(out->kind() == Formula::Kind::kOr);
  }
}

TEST_CASE("rewrite preserves classical truth on propositional sentences") {
  testing::Vocabulary v(3, 3);
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    ProperPlusKB kb = testing::random_kb(v, rng, 4, 3);
    Formula::Ptr psi = testing::random_objective(v, rng, 3);
    // wrap subformulas in K/M to give the rewriter something to do
    Formula::Ptr sigma = Formula::Or(
        Formula::Know(1, psi),
        Formula::And(Formula::Maybe(1, psi), Formula::Maybe(1, psi)));
    Formula::Ptr rewritten = rewrite(sigma, v.pool);
    oracle::Universe u = oracle::default_universe(kb, sigma, 1, v.pool);
    CHECK(oracle::classical_holds(kb, sigma, u, v.pool) ==
          oracle::classical_holds(kb, rewritten, u, v.pool));
  }
}
