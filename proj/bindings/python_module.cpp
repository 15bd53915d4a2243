#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "limbelief/bench.hpp"
#include "limbelief/textio.hpp"

namespace py = pybind11;
using namespace limbelief;

namespace {

const char* outcome_str(Outcome o) {
  switch (o) {
    case Outcome::kTrue: return "true";
    case Outcome::kFalse: return "false";
    case Outcome::kResourceLimit: return "limit";
  }
  return "?";
}

py::dict stats_dict(const SolveStats& s) {
  py::dict d;
  d["splits"] = s.splits;
  d["nodes"] = s.nodes;
  d["millis"] = s.millis;
  return d;
}

}  // namespace

PYBIND11_MODULE(_limbelief, m) {
  m.doc() = "Reasoner for a first-order logic of limited belief";

  py::class_<textio::Session>(m, "Session")
      .def(py::init<>())
      .def(
          "execute",
          [](textio::Session& s, const std::string& line) {
            const auto r = s.execute_line(line);
            py::dict d;
            d["was_query"] = r.was_query;
            if (r.was_query) {
              d["result"] = outcome_str(r.outcome);
              d["value"] = r.value;
              d["stats"] = stats_dict(r.stats);
            }
            return d;
          },
          "Process one declaration, kb:, query:, or expect: line")
      .def(
          "query",
          [](textio::Session& s, const std::string& text) {
            const Formula::Ptr f = s.parse_formula_text(text);
            const auto q = s.evaluate(f);
            if (q.outcome == Outcome::kResourceLimit) {
              throw std::runtime_error("resource budget exhausted");
            }
            return q.outcome == Outcome::kTrue;
          },
          "Evaluate a query formula against the current KB")
      .def("reset", &textio::Session::reset)
      .def_readwrite("max_level", &textio::Session::max_level)
      .def(
          "run_script",
          [](textio::Session& s, const std::string& text) {
            std::istringstream in(text);
            const textio::ScriptResult r = textio::run_script(s, in);
            py::list results;
            for (const auto& q : r.results) {
              py::dict d;
              d["index"] = q.index;
              d["result"] = outcome_str(q.outcome);
              d["level"] = q.level;
              d["millis"] = q.millis;
              d["passed"] = q.passed;
              results.append(d);
            }
            py::dict out;
            out["results"] = results;
            out["errors"] = r.errors;
            out["ok"] = r.errors.empty() && r.all_expectations_met;
            return out;
          },
          "Run a whole script; returns per-query results and errors");

  m.def(
      "solve_sudoku",
      [](const std::string& puzzle, int max_level, std::int64_t time_limit_ms) {
        auto inst = bench::SudokuInstance::parse(puzzle);
        if (!inst) throw std::invalid_argument("bad sudoku line");
        const bench::SudokuResult r =
            bench::solve_sudoku(*inst, max_level, time_limit_ms);
        py::dict d;
        std::string grid;
        for (int v : r.grid) grid += static_cast<char>('0' + v);
        d["solved"] = r.solved;
        d["grid"] = grid;
        d["clues"] = r.clues;
        d["per_level"] = r.per_level;
        d["millis"] = r.millis;
        return d;
      },
      py::arg("puzzle"), py::arg("max_level") = 2,
      py::arg("time_limit_ms") = -1);

  m.def(
      "minesweeper_benchmark",
      [](int width, int height, int mines, int runs, std::uint64_t seed,
         int max_level) {
        bench::MinesweeperConfig cfg;
        cfg.width = width;
        cfg.height = height;
        cfg.mines = mines;
        cfg.seed = seed;
        const auto agg = bench::run_minesweeper_benchmark(cfg, runs, max_level);
        py::dict d;
        d["runs"] = agg.runs;
        d["wins"] = agg.wins;
        d["rate"] = agg.win_rate;
        d["mean_millis"] = agg.mean_millis;
        d["per_level"] = agg.per_level;
        return d;
      },
      py::arg("width") = 8, py::arg("height") = 8, py::arg("mines") = 10,
      py::arg("runs") = 100, py::arg("seed") = 1, py::arg("max_level") = 1);
}
