#ifndef LIMBELIEF_TEXTIO_HPP_
#define LIMBELIEF_TEXTIO_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limbelief/solver.hpp"

namespace limbelief {
namespace textio {

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(ParseError e)
      : std::runtime_error("line " + std::to_string(e.line) + ":" +
                           std::to_string(e.column) + ": " + e.message),
        info(std::move(e)) {}
  ParseError info;
};

struct QueryRecord {
  int index = 0;
  Formula::Ptr formula;
  std::string text;
  std::optional<bool> expected;
  int line = 0;
};

// A reasoning session: declarations, an incrementally grown proper+ KB, and
// query evaluation.  The line grammar is:
//
//   sort S1, S2                    declare sorts
//   name N1, N2 : S                declare standard names
//   fun f/2 : S                    declare a function symbol (arity after /)
//   var x : S                      declare a variable
//   kb: <clause>                   assert a universally closed clause;
//                                  free variables are closed implicitly and
//                                  'forall x (...)' is accepted
//   query: <formula>               evaluate against the current KB
//   expect: true|false             expected result of the last query
//
// Formulas use ==, !=, ||, &&, !, exists x (...), forall x (...), K<k>,
// M<k>, and G.  The sort 'bool' with name 'T' is built in; a term of sort
// bool in formula position abbreviates '== T' (predicate syntax).  Nested
// function applications and function-valued right-hand sides are flattened
// with fresh variables.
class Session {
 public:
  Session();

  // Processes one input line.  Returns a query result when the line was a
  // query.  Throws parse_error on bad input; the session state survives.
  struct LineResult {
    bool was_query = false;
    bool value = false;
    Outcome outcome = Outcome::kFalse;
    SolveStats stats;
    int query_index = 0;
  };
  LineResult execute_line(const std::string& line, int lineno = 0);

  const ProperPlusKB& kb() const { return kb_; }
  TermPool& pool() { return pool_; }
  const std::vector<QueryRecord>& queries() const { return queries_; }
  void reset();

  Formula::Ptr parse_formula_text(const std::string& text, int lineno = 0);
  std::string print(const Formula::Ptr& f) const { return f->str(pool_); }

  SolveOptions options;
  // With max_level >= 0, queries run by iterative deepening: all belief
  // levels are replaced by j for j = 0..max_level until one evaluates true.
  int max_level = -1;

  struct QueryOutcome {
    Outcome outcome;
    SolveStats stats;
    int level_used = 0;
  };
  QueryOutcome evaluate(const Formula::Ptr& f);

 private:
  friend class Parser;

  TermPool pool_;
  ProperPlusKB kb_;
  std::vector<QueryRecord> queries_;

  std::map<std::string, SortId> sorts_;
  std::map<std::string, TermId> names_;
  std::map<std::string, TermId> vars_;
  std::map<std::string, FunId> funs_;
  std::map<std::string, std::uint32_t> name_count_per_sort_;
  std::uint32_t var_count_ = 0;
  std::uint32_t flatten_count_ = 0;

  SortId bool_sort_;
  TermId true_name_;
};

struct ScriptResult {
  struct PerQuery {
    int index;
    Outcome outcome;
    int level;
    double millis;
    std::optional<bool> expected;
    bool passed;
  };
  std::vector<PerQuery> results;
  std::vector<std::string> errors;
  bool all_expectations_met = true;
};

// Runs a whole script (used by `limbelief run`).
ScriptResult run_script(Session& session, std::istream& in);

// Interactive loop (used by `limbelief repl`).
int repl(std::istream& in, std::ostream& out);

}  // namespace textio
}  // namespace limbelief

#endif  // LIMBELIEF_TEXTIO_HPP_
