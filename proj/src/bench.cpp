#include "limbelief/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace limbelief {
namespace bench {

// ---------------------------------------------------------------------------
// Sudoku

std::optional<SudokuInstance> SudokuInstance::parse(const std::string& line) {
  SudokuInstance inst;
  std::size_t k = 0;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (k >= 81) return std::nullopt;
    if (c == '.' || c == '0') {
      inst.cells[k++] = 0;
    } else if (c >= '1' && c <= '9') {
      inst.cells[k++] = c - '0';
    } else {
      return std::nullopt;
    }
  }
  if (k != 81) return std::nullopt;
  return inst;
}

int SudokuInstance::clue_count() const {
  int n = 0;
  for (int c : cells) n += c != 0;
  return n;
}

TermId SudokuEncoding::cell_term(int row, int col) {
  return pool.app(value_fun, {names[row], names[col]});
}

SudokuEncoding sudoku_encode(const SudokuInstance& inst) {
  SudokuEncoding enc;
  enc.digit = enc.pool.declare_sort("digit");
  for (int i = 0; i < 9; ++i) {
    enc.names[i] = enc.pool.name(enc.digit, static_cast<std::uint32_t>(i));
    enc.pool.set_term_label(enc.names[i], std::to_string(i + 1));
  }
  enc.value_fun = enc.pool.declare_fun(enc.digit, 2, "value");

  const TermId x = enc.pool.variable(enc.digit, 0);
  const TermId y1 = enc.pool.variable(enc.digit, 1);
  const TermId y2 = enc.pool.variable(enc.digit, 2);
  const TermId z = enc.pool.variable(enc.digit, 3);
  auto val = [&](TermId a, TermId b) { return enc.pool.app(enc.value_fun, {a, b}); };

  // Domain closure, per real cell (ground: an unrestricted universal would
  // also force the values of cells at fresh coordinates, and a nearly
  // complete line would then propagate the pigeonhole contradiction).
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      std::vector<Literal> lits;
      for (TermId d : enc.names) {
        lits.push_back(enc.pool.eq(val(enc.names[r], enc.names[c]), d));
      }
      enc.kb.add(UniversalClause{{}, Clause(std::move(lits))});
    }
  }
  // Every digit appears in every row, column, and block (entailed by the
  // all-different constraints over nine cells and nine digits; stated
  // explicitly so that hidden singles fall out of unit propagation).
  for (int i = 0; i < 9; ++i) {
    for (TermId d : enc.names) {
      std::vector<Literal> row_lits, col_lits, block_lits;
      for (int j = 0; j < 9; ++j) {
        row_lits.push_back(enc.pool.eq(val(enc.names[i], enc.names[j]), d));
        col_lits.push_back(enc.pool.eq(val(enc.names[j], enc.names[i]), d));
        const int r = (i / 3) * 3 + j / 3, c = (i % 3) * 3 + j % 3;
        block_lits.push_back(enc.pool.eq(val(enc.names[r], enc.names[c]), d));
      }
      enc.kb.add(UniversalClause{{}, Clause(std::move(row_lits))});
      enc.kb.add(UniversalClause{{}, Clause(std::move(col_lits))});
      enc.kb.add(UniversalClause{{}, Clause(std::move(block_lits))});
    }
  }
  // Rows: y1 == y2 || value(x, y1) != z || value(x, y2) != z.
  enc.kb.add(UniversalClause{
      {x, y1, y2, z},
      Clause{enc.pool.eq(y1, y2), enc.pool.neq(val(x, y1), z),
             enc.pool.neq(val(x, y2), z)}});
  // Columns.
  enc.kb.add(UniversalClause{
      {y1, y2, x, z},
      Clause{enc.pool.eq(y1, y2), enc.pool.neq(val(y1, x), z),
             enc.pool.neq(val(y2, x), z)}});
  // Blocks: ground cell pairs not sharing a row or column.
  for (int br = 0; br < 3; ++br) {
    for (int bc = 0; bc < 3; ++bc) {
      for (int i = 0; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) {
          const int r1 = br * 3 + i / 3, c1 = bc * 3 + i % 3;
          const int r2 = br * 3 + j / 3, c2 = bc * 3 + j % 3;
          if (r1 == r2 || c1 == c2) continue;  // covered by rows/columns
          enc.kb.add(UniversalClause{
              {z},
              Clause{enc.pool.neq(val(enc.names[r1], enc.names[c1]), z),
                     enc.pool.neq(val(enc.names[r2], enc.names[c2]), z)}});
        }
      }
    }
  }
  // Clues.
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const int d = inst.cells[r * 9 + c];
      if (d != 0) {
        enc.kb.add(UniversalClause{
            {}, Clause{enc.pool.eq(val(enc.names[r], enc.names[c]),
                                   enc.names[d - 1])}});
      }
    }
  }
  return enc;
}

SudokuResult solve_sudoku(const SudokuInstance& inst, int max_level,
                          std::int64_t time_limit_ms) {
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&]() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  SudokuResult out;
  out.clues = inst.clue_count();
  out.grid = inst.cells;
  out.per_level.assign(static_cast<std::size_t>(max_level) + 1, 0);

  SudokuEncoding enc = sudoku_encode(inst);
  const TermId qvar = enc.pool.variable(enc.digit, 10);

  auto digit_of = [&](TermId name) -> int {
    for (int i = 0; i < 9; ++i) {
      if (enc.names[i] == name) return i + 1;
    }
    return 0;
  };

  int unfilled = 81 - out.clues;
  SolveOptions opts;
  opts.time_limit_ms = time_limit_ms;
  const Formula::Ptr rep = Formula::Exists(
      qvar, Formula::Lit(enc.pool.eq(enc.cell_term(0, 0), qvar)));
  // One context for the whole game; discovered values join the base setup
  // directly (they introduce no new names, so the grounding stands).
  QueryContext qc(enc.pool, enc.kb, rep, opts);
  try {
    while (unfilled > 0) {
      if (qc.base_setup().obviously_inconsistent()) {
        out.contradiction = true;
        break;
      }
      bool found = false;
      for (int level = 0; level <= max_level && !found; ++level) {
        for (int cell = 0; cell < 81 && !found; ++cell) {
          if (out.grid[cell] != 0) continue;
          const TermId term = enc.cell_term(cell / 9, cell % 9);
          const QueryContext::Known k = qc.known_value_guarded(term, level);
          if (k.kind == QueryContext::Known::kAny) {
            out.contradiction = true;
            break;
          }
          if (k.kind == QueryContext::Known::kValue) {
            const int d = digit_of(k.value);
            if (d == 0) {
              // a value outside 1..9 contradicts domain closure
              out.contradiction = true;
              break;
            }
            out.grid[cell] = d;
            out.per_level[static_cast<std::size_t>(level)]++;
            qc.base_setup().add(
                Clause{enc.pool.eq(term, enc.names[d - 1])});
            --unfilled;
            found = true;
          }
        }
        if (out.contradiction) break;
      }
      if (out.contradiction || !found) break;
    }
  } catch (const resource_limit_error&) {
    // out of budget: report the partial grid unsolved
  }
  out.solved = unfilled == 0 && !out.contradiction;
  out.millis = elapsed_ms();
  return out;
}

// ---------------------------------------------------------------------------
// Minesweeper

std::vector<Clause> minesweeper_encode_observation(
    TermPool& pool, FunId is_mine, TermId true_name,
    const std::vector<TermId>& lhs_terms, int count) {
  (void)is_mine;
  std::vector<Clause> out;
  const int n = static_cast<int>(lhs_terms.size());
  auto subsets = [&](int size, bool positive) {
    if (size <= 0 || size > n) return;
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<Literal> lits;
      for (int i : idx) {
        lits.push_back(positive
                           ? pool.eq(lhs_terms[static_cast<std::size_t>(i)],
                                     true_name)
                           : pool.neq(lhs_terms[static_cast<std::size_t>(i)],
                                      true_name));
      }
      out.push_back(Clause(std::move(lits)));
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  };
  // No (count+1)-subset is all mines.
  subsets(count + 1, false);
  // Every (n-count+1)-subset contains a mine.
  subsets(n - count + 1, true);
  return out;
}

namespace {

struct Board {
  int w, h, mines;
  std::vector<bool> mine;
  std::vector<bool> uncovered;

  int at(int x, int y) const { return y * w + x; }
  bool in(int x, int y) const { return x >= 0 && x < w && y >= 0 && y < h; }

  std::vector<int> neighbors(int cell) const {
    const int x = cell % w, y = cell / w;
    std::vector<int> out;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (in(x + dx, y + dy)) out.push_back(at(x + dx, y + dy));
      }
    }
    return out;
  }

  int neighbor_mines(int cell) const {
    int n = 0;
    for (int c : neighbors(cell)) n += mine[static_cast<std::size_t>(c)];
    return n;
  }
};

Board make_board(const MinesweeperConfig& cfg, XorShift& rng) {
  Board b;
  b.w = cfg.width;
  b.h = cfg.height;
  b.mines = cfg.mines;
  const int n = b.w * b.h;
  b.mine.assign(static_cast<std::size_t>(n), false);
  b.uncovered.assign(static_cast<std::size_t>(n), false);
  // Partial Fisher-Yates over the cell indices.
  std::vector<int> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < cfg.mines; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
    b.mine[static_cast<std::size_t>(cells[static_cast<std::size_t>(i)])] = true;
  }
  return b;
}

}  // namespace

MinesweeperResult play_minesweeper(const MinesweeperConfig& config,
                                   int max_level) {
  const auto start = std::chrono::steady_clock::now();
  MinesweeperResult out;
  out.per_level.assign(static_cast<std::size_t>(max_level) + 1, 0);

  XorShift rng(config.seed);
  Board board = make_board(config, rng);
  const int n = board.w * board.h;

  TermPool pool;
  const SortId bool_sort = pool.declare_sort("bool");
  const TermId t_name = pool.name(bool_sort, 0);
  pool.set_term_label(t_name, "T");
  const SortId coord = pool.declare_sort("coord");
  std::vector<TermId> coords;
  const int cmax = std::max(board.w, board.h);
  for (int i = 0; i < cmax; ++i) {
    coords.push_back(pool.name(coord, static_cast<std::uint32_t>(i)));
  }
  const FunId is_mine = pool.declare_fun(bool_sort, 2, "isMine");
  auto cell_term = [&](int cell) {
    const int x = cell % board.w, y = cell / board.w;
    return pool.app(is_mine, {coords[static_cast<std::size_t>(x)],
                              coords[static_cast<std::size_t>(y)]});
  };

  ProperPlusKB kb;
  enum class Status { kUnknown, kSafe, kMine };
  std::vector<Status> status(static_cast<std::size_t>(n), Status::kUnknown);
  std::vector<int> safe_queue;
  std::vector<bool> has_info(static_cast<std::size_t>(n), false);

  int covered_safe = n - board.mines;
  bool lost = false;

  auto uncover = [&](int cell) {
    if (board.mine[static_cast<std::size_t>(cell)]) {
      lost = true;
      return;
    }
    board.uncovered[static_cast<std::size_t>(cell)] = true;
    --covered_safe;
    const std::vector<int> nbs = board.neighbors(cell);
    std::vector<TermId> nb_terms;
    std::vector<int> nb_covered;
    for (int nb : nbs) {
      if (!board.uncovered[static_cast<std::size_t>(nb)]) {
        has_info[static_cast<std::size_t>(nb)] = true;
      }
      nb_terms.push_back(cell_term(nb));
    }
    kb.add(UniversalClause{{}, Clause{pool.neq(cell_term(cell), t_name)}});
    for (const Clause& c : minesweeper_encode_observation(
             pool, is_mine, t_name, nb_terms, board.neighbor_mines(cell))) {
      kb.add(UniversalClause{{}, c});
    }
  };

  // First click is pinned to the top-left corner; there is no first-click
  // protection.
  uncover(0);

  while (!lost && covered_safe > 0) {
    if (!safe_queue.empty()) {
      const int cell = safe_queue.back();
      safe_queue.pop_back();
      if (!board.uncovered[static_cast<std::size_t>(cell)]) uncover(cell);
      continue;
    }
    const Formula::Ptr rep = Formula::Lit(pool.eq(cell_term(0), t_name));
    SolveOptions opts;
    QueryContext qc(pool, kb, rep, opts);
    bool found = false;
    const TermId probes[] = {t_name};
    for (int level = 0; level <= max_level && !found; ++level) {
      for (int cell = 0; cell < n && !found; ++cell) {
        if (board.uncovered[static_cast<std::size_t>(cell)]) continue;
        if (status[static_cast<std::size_t>(cell)] != Status::kUnknown) {
          continue;
        }
        if (!has_info[static_cast<std::size_t>(cell)]) continue;
        const QueryContext::Known k =
            qc.known_value_guarded(cell_term(cell), level, probes);
        const bool known_mine =
            k.kind == QueryContext::Known::kAny ||
            (k.kind == QueryContext::Known::kValue && k.value == t_name);
        const bool known_safe = !k.not_probes.empty() && k.not_probes[0];
        if (known_mine) {
          status[static_cast<std::size_t>(cell)] = Status::kMine;
          out.per_level[static_cast<std::size_t>(level)]++;
          kb.add(UniversalClause{
              {}, Clause{pool.eq(cell_term(cell), t_name)}});
          found = true;
        } else if (known_safe) {
          status[static_cast<std::size_t>(cell)] = Status::kSafe;
          out.per_level[static_cast<std::size_t>(level)]++;
          safe_queue.push_back(cell);
          found = true;
        }
      }
    }
    if (found) continue;
    // Guess: uniformly random over covered cells not adjacent to any
    // uncovered cell, falling back to all covered cells not known mined.
    std::vector<int> pool1, pool2;
    for (int cell = 0; cell < n; ++cell) {
      if (board.uncovered[static_cast<std::size_t>(cell)]) continue;
      if (status[static_cast<std::size_t>(cell)] == Status::kMine) continue;
      pool2.push_back(cell);
      if (!has_info[static_cast<std::size_t>(cell)]) pool1.push_back(cell);
    }
    const std::vector<int>& from = pool1.empty() ? pool2 : pool1;
    if (from.empty()) break;
    ++out.guesses;
    uncover(from[rng.below(from.size())]);
  }

  out.won = !lost && covered_safe == 0;
  out.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
                   .count();
  return out;
}

MinesweeperAggregate run_minesweeper_benchmark(const MinesweeperConfig& config,
                                               int runs, int max_level) {
  MinesweeperAggregate agg;
  agg.config = config;
  agg.runs = runs;
  agg.max_level = max_level;
  agg.per_level.assign(static_cast<std::size_t>(max_level) + 1, 0);
  double total_ms = 0;
  for (int i = 0; i < runs; ++i) {
    MinesweeperConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(i);
    const MinesweeperResult r = play_minesweeper(c, max_level);
    agg.wins += r.won;
    total_ms += r.millis;
    for (std::size_t l = 0; l < r.per_level.size(); ++l) {
      agg.per_level[l] += r.per_level[l];
    }
  }
  agg.win_rate = runs > 0 ? static_cast<double>(agg.wins) / runs : 0.0;
  agg.mean_millis = runs > 0 ? total_ms / runs : 0.0;
  return agg;
}

std::string minesweeper_tsv_header() {
  return "width\theight\tmines\truns\tmax_level\twins\trate\tmean_ms";
}

std::string minesweeper_tsv_row(const MinesweeperAggregate& agg) {
  std::ostringstream os;
  os << agg.config.width << '\t' << agg.config.height << '\t'
     << agg.config.mines << '\t' << agg.runs << '\t' << agg.max_level << '\t'
     << agg.wins << '\t' << agg.win_rate << '\t' << agg.mean_millis;
  return os.str();
}

std::string sudoku_tsv_header() {
  return "puzzle\tclues\tlevel0\tlevel1\tlevel2\tlevel3\tlevel4\tlevel5\t"
         "solved\tms";
}

std::string sudoku_tsv_row(int index, const SudokuResult& r) {
  std::ostringstream os;
  os << index << '\t' << r.clues;
  for (int l = 0; l < 6; ++l) {
    os << '\t'
       << (l < static_cast<int>(r.per_level.size()) ? r.per_level[l] : 0);
  }
  os << '\t' << (r.solved ? 1 : 0) << '\t' << r.millis;
  return os.str();
}

}  // namespace bench
}  // namespace limbelief
