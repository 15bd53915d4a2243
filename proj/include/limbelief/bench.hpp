#ifndef LIMBELIEF_BENCH_HPP_
#define LIMBELIEF_BENCH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limbelief/solver.hpp"

namespace limbelief {
namespace bench {

// ---------------------------------------------------------------------------
// Sudoku

struct SudokuInstance {
  // 0 for blank, 1..9 for clues, row-major.
  std::array<int, 81> cells{};

  // One 81-character line, digits and '.' (or '0') for blanks.
  static std::optional<SudokuInstance> parse(const std::string& line);
  int clue_count() const;
};

// The logical encoding: a single sort of nine names serving as rows,
// columns, and values; value(x, y) maps cells to digits.
struct SudokuEncoding {
  TermPool pool;
  SortId digit;
  std::array<TermId, 9> names;  // D1..D9
  FunId value_fun;
  ProperPlusKB kb;

  TermId cell_term(int row, int col);
};

// Row/column/block all-different constraints as universally quantified
// clauses, the domain-closure clause, and unit clauses for the clues.
SudokuEncoding sudoku_encode(const SudokuInstance& inst);

struct SudokuResult {
  bool solved = false;
  bool contradiction = false;
  std::array<int, 81> grid{};
  int clues = 0;
  std::vector<int> per_level;  // cells decided at each belief level
  double millis = 0.0;
};

SudokuResult solve_sudoku(const SudokuInstance& inst, int max_level,
                          std::int64_t time_limit_ms = -1);

// ---------------------------------------------------------------------------
// Minesweeper

struct MinesweeperConfig {
  int width = 8;
  int height = 8;
  int mines = 10;
  std::uint64_t seed = 1;
};

// xorshift64* generator; shifts 12/25/27 with multiplier 2685821657736338717.
class XorShift {
 public:
  explicit XorShift(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b9ull) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ull;
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Clauses for "exactly `count` of the neighbor cells are mines": for every
// (count+1)-subset a clause of negated-mine literals, and for every
// (n-count+1)-subset a clause of mine literals.
std::vector<Clause> minesweeper_encode_observation(
    TermPool& pool, FunId is_mine, TermId true_name,
    const std::vector<TermId>& lhs_terms, int count);

struct MinesweeperResult {
  bool won = false;
  std::vector<int> per_level;  // cells decided at each belief level
  int guesses = 0;
  double millis = 0.0;
};

MinesweeperResult play_minesweeper(const MinesweeperConfig& config,
                                   int max_level);

struct MinesweeperAggregate {
  MinesweeperConfig config;
  int runs = 0;
  int max_level = 0;
  int wins = 0;
  double win_rate = 0.0;
  double mean_millis = 0.0;
  std::vector<int> per_level;
};

MinesweeperAggregate run_minesweeper_benchmark(const MinesweeperConfig& config,
                                               int runs, int max_level);

std::string minesweeper_tsv_header();
std::string minesweeper_tsv_row(const MinesweeperAggregate& agg);
std::string sudoku_tsv_header();
std::string sudoku_tsv_row(int index, const SudokuResult& r);

}  // namespace bench
}  // namespace limbelief

#endif  // LIMBELIEF_BENCH_HPP_
