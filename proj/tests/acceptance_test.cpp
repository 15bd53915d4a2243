// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line.  Run via `ctest` or directly: ./limbelief_acceptance -d
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>

#include "doctest.h"
#include "limbelief/bench.hpp"
#include "limbelief/oracle.hpp"
#include "limbelief/solver.hpp"
#include "limbelief/textio.hpp"
#include "naive_literal.hpp"
#include "test_support.hpp"

using namespace limbelief;

namespace {

struct Criterion {
  const char* name;
  bool ok = true;
  double ms = 0.0;

  explicit Criterion(const char* n) : name(n) {}
  void finish() const {
    std::printf("%-58s %s  (%.1f ms)\n", name, ok ? "PASS" : "FAIL", ms);
    std::fflush(stdout);
  }
};

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Running {
  TermPool pool;
  SortId human, boolean;
  TermId sally, frank, fred, t, x;
  FunId father_of, rich;
  ProperPlusKB kb;

  Running() {
    human = pool.declare_sort("human");
    boolean = pool.declare_sort("bool");
    sally = pool.name(human, 0);
    frank = pool.name(human, 1);
    fred = pool.name(human, 2);
    t = pool.name(boolean, 0);
    x = pool.variable(human, 0);
    father_of = pool.declare_fun(human, 1, "fatherOf");
    rich = pool.declare_fun(boolean, 1, "rich");
    kb.add(UniversalClause{{},
                           Clause{pool.eq(father(sally), frank),
                                  pool.eq(father(sally), fred)}});
    kb.add(UniversalClause{
        {x}, Clause{pool.neq(father(sally), x), pool.eq(is_rich(x), t)}});
  }
  TermId father(TermId a) { return pool.app(father_of, {a}); }
  TermId is_rich(TermId a) { return pool.app(rich, {a}); }
};

std::string data_path(const char* file) {
  return std::string(LIMBELIEF_DATA_DIR) + "/" + file;
}

// Shared randomized corpus for criteria 3-5 (Theorems 1 and 2 at test
// scale): propositional proper+ KBs with <= 5 clauses, <= 4 primitive
// terms, <= 3 names per sort.
struct CorpusItem {
  ProperPlusKB kb;
  Formula::Ptr psi;
};

std::vector<CorpusItem> make_corpus(testing::Vocabulary& v, int count) {
  testing::Rng rng(0xfeedbeef);
  std::vector<CorpusItem> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    CorpusItem item;
    item.kb = testing::random_kb(v, rng, 5, 3);
    item.psi = testing::random_objective(v, rng, 3);
    out.push_back(std::move(item));
  }
  return out;
}

int count_terms(testing::Vocabulary& v, const CorpusItem& item) {
  std::set<TermId> terms;
  for (const UniversalClause& uc : item.kb.clauses()) {
    for (Literal l : uc.clause) {
      if (v.pool.is_app(l.lhs())) terms.insert(l.lhs());
    }
  }
  struct Walk {
    TermPool& pool;
    std::set<TermId>& terms;
    void operator()(const Formula::Ptr& f) {
      if (f->kind() == Formula::Kind::kLit) {
        if (pool.is_app(f->lit().lhs())) terms.insert(f->lit().lhs());
        return;
      }
      if (f->left()) (*this)(f->left());
      if (f->right()) (*this)(f->right());
    }
  };
  Walk{v.pool, terms}(item.psi);
  return static_cast<int>(terms.size());
}

}  // namespace

TEST_CASE("criterion 1: running example at levels 1 and 0") {
  Criterion c("1. running example (K1/M1 true, K0/M0 false, <100ms)");
  Running r;
  const auto q = [&](int k, int m) {
    return Formula::Know(
        k, Formula::Exists(
               r.x, Formula::And(
                        Formula::Lit(r.pool.eq(r.father(r.sally), r.x)),
                        Formula::And(
                            Formula::Lit(r.pool.eq(r.is_rich(r.x), r.t)),
                            Formula::Maybe(m, Formula::Lit(r.pool.neq(
                                                  r.father(r.sally), r.x)))))));
  };
  const double t0 = now_ms();
  c.ok = query(r.pool, r.kb, q(1, 1)) == Outcome::kTrue &&
         query(r.pool, r.kb, q(0, 0)) == Outcome::kFalse;
  c.ms = now_ms() - t0;
  c.ok = c.ok && c.ms < 100.0;
  c.finish();
  CHECK(c.ok);
}

TEST_CASE("criterion 2: intro example") {
  Criterion c("2. intro example (K0 false, K1 true, <100ms)");
  Running r;
  const Formula::Ptr disj =
      Formula::Or(Formula::Lit(r.pool.eq(r.is_rich(r.frank), r.t)),
                  Formula::Lit(r.pool.eq(r.is_rich(r.fred), r.t)));
  const double t0 = now_ms();
  c.ok = query(r.pool, r.kb, Formula::Know(0, disj)) == Outcome::kFalse &&
         query(r.pool, r.kb, Formula::Know(1, disj)) == Outcome::kTrue;
  c.ms = now_ms() - t0;
  c.ok = c.ok && c.ms < 100.0;
  c.finish();
  CHECK(c.ok);
}

TEST_CASE("criterion 3: soundness suite (Theorem 1 at test scale)") {
  Criterion c("3. soundness: 500 KBs x psi x k in {0,1,2} (<60s)");
  testing::Vocabulary v(3, 4);
  const std::vector<CorpusItem> corpus = make_corpus(v, 500);
  const double t0 = now_ms();
  int failures = 0;
  for (const CorpusItem& item : corpus) {
    oracle::Universe u =
        oracle::default_universe(item.kb, item.psi, 1, v.pool);
    for (int k = 0; k <= 2; ++k) {
      if (query(v.pool, item.kb, Formula::Know(k, item.psi)) ==
          Outcome::kTrue) {
        if (!oracle::classical_holds(item.kb, Formula::Know(0, item.psi), u,
                                     v.pool)) {
          ++failures;
        }
      }
      if (query(v.pool, item.kb, Formula::Maybe(k, item.psi)) ==
          Outcome::kTrue) {
        if (!oracle::classical_holds(item.kb, Formula::Maybe(0, item.psi), u,
                                     v.pool)) {
          ++failures;
        }
      }
    }
  }
  c.ms = now_ms() - t0;
  c.ok = failures == 0 && c.ms < 60000.0;
  c.finish();
  CHECK(failures == 0);
  CHECK(c.ms < 60000.0);
}

TEST_CASE("criterion 4: eventual completeness suite (Theorem 2)") {
  Criterion c("4. eventual completeness within |candidate terms| (<120s)");
  testing::Vocabulary v(3, 4);
  const std::vector<CorpusItem> corpus = make_corpus(v, 500);
  const double t0 = now_ms();
  int failures = 0;
  for (const CorpusItem& item : corpus) {
    oracle::Universe u =
        oracle::default_universe(item.kb, item.psi, 1, v.pool);
    const int kmax = count_terms(v, item);
    if (oracle::classical_holds(item.kb, Formula::Know(0, item.psi), u,
                                v.pool)) {
      bool found = false;
      for (int k = 0; k <= kmax && !found; ++k) {
        found = query(v.pool, item.kb, Formula::Know(k, item.psi)) ==
                Outcome::kTrue;
      }
      if (!found) ++failures;
    }
    if (oracle::classical_holds(item.kb, Formula::Maybe(0, item.psi), u,
                                v.pool)) {
      bool found = false;
      for (int k = 0; k <= kmax && !found; ++k) {
        found = query(v.pool, item.kb, Formula::Maybe(k, item.psi)) ==
                Outcome::kTrue;
      }
      if (!found) ++failures;
    }
  }
  c.ms = now_ms() - t0;
  c.ok = failures == 0 && c.ms < 120000.0;
  c.finish();
  CHECK(failures == 0);
  CHECK(c.ms < 120000.0);
}

TEST_CASE("criterion 5: level monotonicity and K/M exclusivity") {
  Criterion c("5. monotonicity (k -> k+1) and K/M exclusivity");
  testing::Vocabulary v(3, 4);
  const std::vector<CorpusItem> corpus = make_corpus(v, 250);
  const double t0 = now_ms();
  int failures = 0;
  for (const CorpusItem& item : corpus) {
    for (int k = 0; k <= 1; ++k) {
      const bool know_k =
          query(v.pool, item.kb, Formula::Know(k, item.psi)) == Outcome::kTrue;
      const bool maybe_k =
          query(v.pool, item.kb, Formula::Maybe(k, item.psi)) ==
          Outcome::kTrue;
      if (know_k &&
          query(v.pool, item.kb, Formula::Know(k + 1, item.psi)) !=
              Outcome::kTrue) {
        ++failures;
      }
      if (maybe_k &&
          query(v.pool, item.kb, Formula::Maybe(k + 1, item.psi)) !=
              Outcome::kTrue) {
        ++failures;
      }
      if (know_k) {
        for (int l = 0; l <= 2; ++l) {
          if (query(v.pool, item.kb,
                    Formula::Maybe(l, Formula::Not(item.psi))) ==
              Outcome::kTrue) {
            ++failures;
          }
        }
      }
    }
  }
  c.ms = now_ms() - t0;
  c.ok = failures == 0;
  c.finish();
  CHECK(failures == 0);
}

TEST_CASE("criterion 6: setup algebra") {
  Criterion c("6. setup algebra: 10^4 invariance/monotonicity/undo checks");
  testing::Vocabulary v(3, 3);
  testing::Rng rng(0xabcdef);
  const double t0 = now_ms();
  int failures = 0;
  for (int round = 0; round < 10000; ++round) {
    std::vector<Clause> clauses;
    const int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      clauses.push_back(testing::random_clause(v, rng, 3));
    }
    Setup s(&v.pool);
    for (const Clause& cl : clauses) s.add(cl);
    const Clause probe = testing::random_clause(v, rng, 3);
    const bool before = s.subsumes(probe);
    const bool incon = s.obviously_inconsistent();
    const bool pot = s.potentially_inconsistent();

    // adding a clause the store already subsumes changes no query
    const Clause extra = testing::random_clause(v, rng, 3);
    const bool extra_subsumed = s.subsumes(extra);
    const auto m = s.mark();
    s.add(extra);
    if (extra_subsumed && s.subsumes(probe) != before) ++failures;
    // monotonicity under superset
    if (before && !s.subsumes(probe)) ++failures;
    s.undo(m);
    // mark/undo round-trip
    if (s.subsumes(probe) != before) ++failures;
    if (s.obviously_inconsistent() != incon) ++failures;
    if (s.potentially_inconsistent() != pot) ++failures;
  }
  c.ms = now_ms() - t0;
  c.ok = failures == 0;
  c.finish();
  CHECK(failures == 0);
}

TEST_CASE("criterion 7: minesweeper at desk scale") {
  Criterion c("7. minesweeper 8x8-10, 1000 runs: rate, time, level gap");
  bench::MinesweeperConfig cfg;
  cfg.width = 8;
  cfg.height = 8;
  cfg.mines = 10;
  cfg.seed = 20240810;
  const double t0 = now_ms();
  const bench::MinesweeperAggregate lvl1 =
      bench::run_minesweeper_benchmark(cfg, 1000, 1);
  const bench::MinesweeperAggregate lvl0 =
      bench::run_minesweeper_benchmark(cfg, 1000, 0);
  c.ms = now_ms() - t0;
  std::printf("   level 1 rate %.3f (mean %.2f ms), level 0 rate %.3f\n",
              lvl1.win_rate, lvl1.mean_millis, lvl0.win_rate);
  const bool rate_ok = lvl1.win_rate >= 0.80 && lvl1.win_rate <= 0.95;
  const bool time_ok = lvl1.mean_millis <= 100.0;
  const bool gap_ok = lvl1.win_rate - lvl0.win_rate >= 0.15;
  c.ok = rate_ok && time_ok && gap_ok;
  c.finish();
  CHECK(rate_ok);
  CHECK(time_ok);
  CHECK(gap_ok);
}

TEST_CASE("criterion 8: sudoku at desk scale") {
  Criterion c("8. sudoku: 8 easy (levels <= 1 + <= 2 at 2), 2 hard (level 3)");
  const double t0 = now_ms();
  bool ok = true;
  {
    std::ifstream in(data_path("sudoku_easy.txt"));
    REQUIRE(in.good());
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto inst = bench::SudokuInstance::parse(line);
      REQUIRE(inst.has_value());
      const bench::SudokuResult r = bench::solve_sudoku(*inst, 2, 30000);
      const int at2 = r.per_level.size() > 2 ? r.per_level[2] : 0;
      std::printf("   easy %d: solved=%d levels=[%d,%d,%d] %.0f ms\n", count,
                  r.solved, r.per_level[0], r.per_level[1], at2, r.millis);
      if (!r.solved || at2 > 2 || r.millis > 30000.0) ok = false;
      ++count;
    }
    if (count != 8) ok = false;
  }
  {
    std::ifstream in(data_path("sudoku_hard.txt"));
    REQUIRE(in.good());
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto inst = bench::SudokuInstance::parse(line);
      REQUIRE(inst.has_value());
      const bench::SudokuResult r = bench::solve_sudoku(*inst, 3, 30000);
      std::printf("   hard %d: solved=%d levels=[%d,%d,%d,%d] %.0f ms\n",
                  count, r.solved, r.per_level[0], r.per_level[1],
                  r.per_level[2], r.per_level[3], r.millis);
      if (!r.solved || r.millis > 30000.0) ok = false;
      ++count;
    }
    if (count != 2) ok = false;
  }
  c.ms = now_ms() - t0;
  c.ok = ok;
  c.finish();
  CHECK(ok);
}

TEST_CASE("criterion 9: packed-literal micro-benchmark") {
  Criterion c("9. packed complement/subsume >= 5x the naive baseline");
  TermPool pool;
  const SortId s = pool.declare_sort("s");
  std::vector<TermId> names;
  for (std::uint32_t i = 0; i < 4; ++i) names.push_back(pool.name(s, i));
  const FunId f = pool.declare_fun(s, 2, "f");
  std::vector<Literal> lits;
  testing::Rng rng(0x5eed);
  for (int i = 0; i < 1024; ++i) {
    const TermId lhs = pool.app(f, {names[rng() % 4], names[rng() % 4]});
    lits.push_back(pool.lit(lhs, rng() % 2 == 0, names[rng() % 4]));
  }
  std::vector<testing::NaiveLiteral> naive;
  naive.reserve(lits.size());
  for (Literal l : lits) naive.push_back(testing::naive_literal(pool, l));

  constexpr int kOps = 10000000;
  volatile unsigned sink = 0;

  const double t0 = now_ms();
  {
    unsigned acc = 0;
    std::uint64_t i = 0x1234;
    for (int op = 0; op < kOps; ++op) {
      i = i * 6364136223846793005ull + 1442695040888963407ull;
      const Literal a = lits[(i >> 16) & 1023];
      const Literal b = lits[(i >> 32) & 1023];
      acc += Literal::complementary(a, b);
      acc += Literal::subsumes(a, b);
    }
    sink = sink + acc;
  }
  const double packed_ms = now_ms() - t0;

  const double t1 = now_ms();
  {
    unsigned acc = 0;
    std::uint64_t i = 0x1234;
    for (int op = 0; op < kOps; ++op) {
      i = i * 6364136223846793005ull + 1442695040888963407ull;
      const testing::NaiveLiteral& a = naive[(i >> 16) & 1023];
      const testing::NaiveLiteral& b = naive[(i >> 32) & 1023];
      acc += testing::naive_complementary(a, b);
      acc += testing::naive_subsumes(a, b);
    }
    sink = sink + acc;
  }
  const double naive_ms = now_ms() - t1;

  const double speedup = naive_ms / packed_ms;
  std::printf("   packed %.1f ms, naive %.1f ms, speedup %.1fx\n", packed_ms,
              naive_ms, speedup);
  c.ms = packed_ms + naive_ms;
  c.ok = speedup >= 5.0;
  c.finish();
  CHECK(speedup >= 5.0);
}
