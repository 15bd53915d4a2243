#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "limbelief/bench.hpp"
#include "limbelief/textio.hpp"

namespace {

int run_command(const std::string& path, int max_level,
                std::int64_t time_limit, bool no_rewrite) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  limbelief::textio::Session session;
  session.max_level = max_level;
  session.options.rewrite = !no_rewrite;
  session.options.time_limit_ms = time_limit;
  limbelief::textio::ScriptResult r =
      limbelief::textio::run_script(session, in);
  for (const std::string& e : r.errors) std::cerr << "error: " << e << "\n";
  for (const auto& q : r.results) {
    const char* v = q.outcome == limbelief::Outcome::kTrue
                        ? "true"
                        : q.outcome == limbelief::Outcome::kFalse ? "false"
                                                                  : "limit";
    std::cout << q.index << '\t' << v << '\t' << q.level << '\t' << q.millis
              << "\n";
  }
  return r.errors.empty() && r.all_expectations_met ? 0 : 1;
}

int bench_sudoku(const std::string& file, int max_level,
                 const std::string& out_path) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot open " << file << "\n";
    return 2;
  }
  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path);
    out = &out_file;
  }
  *out << limbelief::bench::sudoku_tsv_header() << "\n";
  std::string line;
  int index = 0;
  int failures = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto inst = limbelief::bench::SudokuInstance::parse(line);
    if (!inst) {
      std::cerr << "bad puzzle line: " << line << "\n";
      ++failures;
      continue;
    }
    const limbelief::bench::SudokuResult r =
        limbelief::bench::solve_sudoku(*inst, max_level);
    *out << limbelief::bench::sudoku_tsv_row(index, r) << "\n";
    if (!r.solved) ++failures;
    ++index;
  }
  return failures == 0 ? 0 : 1;
}

int bench_minesweeper(int width, int height, int mines, int runs,
                      std::uint64_t seed, int max_level,
                      const std::string& out_path) {
  limbelief::bench::MinesweeperConfig cfg;
  cfg.width = width;
  cfg.height = height;
  cfg.mines = mines;
  cfg.seed = seed;
  const limbelief::bench::MinesweeperAggregate agg =
      limbelief::bench::run_minesweeper_benchmark(cfg, runs, max_level);
  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path);
    out = &out_file;
  }
  *out << limbelief::bench::minesweeper_tsv_header() << "\n"
       << limbelief::bench::minesweeper_tsv_row(agg) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limbelief: a reasoner for limited belief"};
  app.require_subcommand(1);

  auto* repl_cmd = app.add_subcommand("repl", "interactive session");

  auto* run_cmd = app.add_subcommand("run", "run a script file");
  std::string script;
  int run_max_level = -1;
  std::int64_t time_limit = -1;
  bool no_rewrite = false;
  run_cmd->add_option("script", script, "script file")->required();
  run_cmd->add_option("--max-level", run_max_level,
                      "iterative deepening up to this belief level");
  run_cmd->add_option("--time-limit", time_limit, "per-query limit in ms");
  run_cmd->add_flag("--no-rewrite", no_rewrite,
                    "disable the modal rewriting pass");

  auto* bench_cmd = app.add_subcommand("bench", "game benchmarks");
  std::string game, file, out_path;
  int width = 8, height = 8, mines = 10, runs = 1000, max_level = 1;
  std::uint64_t seed = 1;
  bench_cmd->add_option("--game", game, "sudoku or minesweeper")->required();
  bench_cmd->add_option("--file", file, "sudoku puzzle file (81-char lines)");
  bench_cmd->add_option("--width", width, "board width");
  bench_cmd->add_option("--height", height, "board height");
  bench_cmd->add_option("--mines", mines, "number of mines");
  bench_cmd->add_option("--runs", runs, "number of randomized runs");
  bench_cmd->add_option("--seed", seed, "base seed");
  bench_cmd->add_option("--max-level", max_level, "maximum belief level");
  bench_cmd->add_option("--out", out_path, "write TSV here (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (repl_cmd->parsed()) {
    return limbelief::textio::repl(std::cin, std::cout);
  }
  if (run_cmd->parsed()) {
    return run_command(script, run_max_level, time_limit, no_rewrite);
  }
  if (bench_cmd->parsed()) {
    if (game == "sudoku") {
      if (file.empty()) {
        std::cerr << "--game sudoku needs --file\n";
        return 2;
      }
      return bench_sudoku(file, max_level, out_path);
    }
    if (game == "minesweeper") {
      return bench_minesweeper(width, height, mines, runs, seed, max_level,
                               out_path);
    }
    std::cerr << "unknown game: " << game << "\n";
    return 2;
  }
  return 0;
}
