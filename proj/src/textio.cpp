#include "limbelief/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace limbelief {
namespace textio {

namespace {

struct Token {
  enum Type {
    kIdent,
    kInt,
    kLParen,
    kRParen,
    kComma,
    kColon,
    kSlash,
    kEqEq,
    kNeq,
    kOrOr,
    kAndAnd,
    kBang,
    kEnd,
  };
  Type type = kEnd;
  std::string text;
  long value = 0;
  int col = 0;
};

class Lexer {
 public:
  Lexer(const std::string& line, int lineno) : line_(line), lineno_(lineno) {
    scan();
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() {
    const Token& t = peek();
    if (t.type != Token::kEnd) ++pos_;
    return t;
  }
  bool accept(Token::Type ty) {
    if (peek().type == ty) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Token::Type ty, const std::string& what) {
    if (peek().type != ty) fail(what);
    return next();
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw parse_error(
        ParseError{lineno_, peek().col + 1, "expected " + message});
  }
  [[noreturn]] void fail_at(int col, const std::string& message) const {
    throw parse_error(ParseError{lineno_, col + 1, message});
  }
  int lineno() const { return lineno_; }

 private:
  void scan() {
    std::size_t i = 0;
    while (i < line_.size()) {
      const char c = line_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') break;  // comment to end of line
      Token t;
      t.col = static_cast<int>(i);
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < line_.size() &&
               (std::isalnum(static_cast<unsigned char>(line_[j])) ||
                line_[j] == '_')) {
          ++j;
        }
        t.type = Token::kIdent;
        t.text = line_.substr(i, j - i);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < line_.size() &&
               std::isdigit(static_cast<unsigned char>(line_[j]))) {
          ++j;
        }
        t.type = Token::kInt;
        t.text = line_.substr(i, j - i);
        t.value = std::stol(t.text);
        i = j;
      } else {
        auto two = line_.substr(i, 2);
        if (two == "==") {
          t.type = Token::kEqEq;
          i += 2;
        } else if (two == "!=") {
          t.type = Token::kNeq;
          i += 2;
        } else if (two == "||") {
          t.type = Token::kOrOr;
          i += 2;
        } else if (two == "&&") {
          t.type = Token::kAndAnd;
          i += 2;
        } else {
          switch (c) {
            case '(': t.type = Token::kLParen; break;
            case ')': t.type = Token::kRParen; break;
            case ',': t.type = Token::kComma; break;
            case ':': t.type = Token::kColon; break;
            case '/': t.type = Token::kSlash; break;
            case '!': t.type = Token::kBang; break;
            default:
              throw parse_error(ParseError{
                  lineno_, static_cast<int>(i) + 1,
                  std::string("unexpected character '") + c + "'"});
          }
          ++i;
        }
      }
      tokens_.push_back(std::move(t));
    }
    Token end;
    end.type = Token::kEnd;
    end.col = static_cast<int>(line_.size());
    tokens_.push_back(end);
  }

  std::string line_;
  int lineno_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Modal prefix K<k> / M<k>.
bool modal_token(const std::string& s, bool* know, int* level) {
  if (s.size() < 2 || (s[0] != 'K' && s[0] != 'M')) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  *know = s[0] == 'K';
  *level = std::stoi(s.substr(1));
  return true;
}

}  // namespace

class Parser {
 public:
  Parser(Session& session, Lexer& lex) : s_(session), lex_(lex) {}

  struct PTerm {
    enum Kind { kName, kVar, kApp } kind;
    TermId atom;       // names and variables
    FunId fun;         // applications
    std::vector<PTerm> args;
    SortId sort;
    int col = 0;
  };

  // One flattening definition: the literal app == var.
  struct Def {
    TermId var;
    TermId app;
  };

  PTerm parse_term() {
    const Token t = lex_.expect(Token::kIdent, "a term");
    PTerm out;
    out.col = t.col;
    if (auto it = s_.names_.find(t.text); it != s_.names_.end()) {
      out.kind = PTerm::kName;
      out.atom = it->second;
      out.sort = s_.pool_.sort(it->second);
      return out;
    }
    if (auto it = s_.vars_.find(t.text); it != s_.vars_.end()) {
      out.kind = PTerm::kVar;
      out.atom = it->second;
      out.sort = s_.pool_.sort(it->second);
      return out;
    }
    if (auto it = s_.funs_.find(t.text); it != s_.funs_.end()) {
      out.kind = PTerm::kApp;
      out.fun = it->second;
      out.sort = s_.pool_.fun_sort(it->second);
      const std::uint32_t arity = s_.pool_.fun_arity(it->second);
      if (arity > 0) {
        lex_.expect(Token::kLParen, "'(' after function symbol");
        for (std::uint32_t i = 0; i < arity; ++i) {
          if (i > 0) lex_.expect(Token::kComma, "','");
          out.args.push_back(parse_term());
        }
        lex_.expect(Token::kRParen, "')'");
      } else if (lex_.peek().type == Token::kLParen) {
        lex_.fail_at(t.col + 1, t.text + " has arity 0");
      }
      return out;
    }
    lex_.fail_at(t.col + 1, "unknown identifier '" + t.text + "'");
  }

  // Reduces a parsed term to a flat TermId, emitting definitions for nested
  // applications.
  TermId flatten(const PTerm& p, std::vector<Def>* defs) {
    switch (p.kind) {
      case PTerm::kName:
      case PTerm::kVar:
        return p.atom;
      case PTerm::kApp: {
        std::vector<TermId> args;
        for (const PTerm& a : p.args) {
          if (a.kind == PTerm::kApp) {
            const TermId z = fresh_def_var(a.sort);
            const TermId inner = flatten(a, defs);
            defs->push_back(Def{z, inner});
            args.push_back(z);
          } else {
            args.push_back(a.atom);
          }
        }
        return s_.pool_.app(p.fun, args);
      }
    }
    return TermId();
  }

  // Builds the core literal of an atom and collects flattening definitions.
  Literal build_literal(PTerm lhs, bool pos, PTerm rhs,
                        std::vector<Def>* defs) {
    if (lhs.kind != PTerm::kApp && rhs.kind == PTerm::kApp) {
      std::swap(lhs, rhs);  // equality is symmetric; the function goes left
    }
    const TermId l = flatten(lhs, defs);
    TermId r;
    if (rhs.kind == PTerm::kApp) {
      // function on the right: name it with a fresh variable
      const TermId z = fresh_def_var(rhs.sort);
      defs->push_back(Def{z, flatten(rhs, defs)});
      r = z;
    } else {
      r = rhs.atom;
    }
    if (s_.pool_.sort(l) != s_.pool_.sort(r)) {
      lex_.fail_at(lhs.col + 1, "ill-sorted literal: " +
                                    s_.pool_.term_str(l) + " vs " +
                                    s_.pool_.term_str(r));
    }
    return s_.pool_.lit(l, pos, r);
  }

  // atom := '!' atom | term (== | !=) term | bool-term  (predicate syntax)
  Literal parse_atom(std::vector<Def>* defs) {
    if (lex_.accept(Token::kBang)) {
      return parse_atom(defs).flipped();
    }
    PTerm lhs = parse_term();
    if (lex_.accept(Token::kEqEq)) {
      return build_literal(std::move(lhs), true, parse_term(), defs);
    }
    if (lex_.accept(Token::kNeq)) {
      return build_literal(std::move(lhs), false, parse_term(), defs);
    }
    if (lhs.sort != s_.bool_sort_) {
      lex_.fail("'==' or '!=' (predicate syntax needs a bool-sorted term)");
    }
    PTerm t;
    t.kind = PTerm::kName;
    t.atom = s_.true_name_;
    t.sort = s_.bool_sort_;
    return build_literal(std::move(lhs), true, std::move(t), defs);
  }

  // Wraps an atom's definitions: exists z1 ... (def1 && ... && lit).
  Formula::Ptr atom_formula() {
    std::vector<Def> defs;
    const Literal lit = parse_atom(&defs);
    Formula::Ptr f = Formula::Lit(lit);
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
      f = Formula::And(Formula::Lit(s_.pool_.eq(it->app, it->var)), f);
    }
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
      f = Formula::Exists(it->var, f);
    }
    return f;
  }

  Formula::Ptr parse_formula() { return parse_disj(); }

  Formula::Ptr parse_disj() {
    Formula::Ptr f = parse_conj();
    while (lex_.accept(Token::kOrOr)) {
      f = Formula::Or(f, parse_conj());
    }
    return f;
  }

  Formula::Ptr parse_conj() {
    Formula::Ptr f = parse_unary();
    while (lex_.accept(Token::kAndAnd)) {
      f = Formula::And(f, parse_unary());
    }
    return f;
  }

  Formula::Ptr parse_unary() {
    const Token& t = lex_.peek();
    if (t.type == Token::kBang) {
      lex_.next();
      return Formula::Not(parse_unary());
    }
    if (t.type == Token::kLParen) {
      lex_.next();
      Formula::Ptr f = parse_formula();
      lex_.expect(Token::kRParen, "')'");
      return f;
    }
    if (t.type == Token::kIdent) {
      bool know;
      int level;
      if (modal_token(t.text, &know, &level)) {
        lex_.next();
        Formula::Ptr body = parse_unary();
        return know ? Formula::Know(level, body)
                    : Formula::Maybe(level, body);
      }
      if (t.text == "K" || t.text == "M") {
        lex_.fail_at(t.col + 1,
                     "belief operators carry a level: K0, K1, M0, M1, ...");
      }
      if (t.text == "G") {
        lex_.next();
        return Formula::Guarantee(parse_unary());
      }
      if (t.text == "exists" || t.text == "forall") {
        lex_.next();
        const Token v = lex_.expect(Token::kIdent, "a variable");
        auto it = s_.vars_.find(v.text);
        if (it == s_.vars_.end()) {
          lex_.fail_at(v.col + 1, "unknown variable '" + v.text + "'");
        }
        Formula::Ptr body = parse_unary();
        return t.text == "exists" ? Formula::Exists(it->second, body)
                                  : Formula::Forall(it->second, body);
      }
    }
    return atom_formula();
  }

  // kb clause: (forall x)* disjunction of atoms.  Flattening definitions
  // join the clause as negated literals with universally bound variables.
  UniversalClause parse_kb_clause() {
    std::vector<TermId> binders;
    while (lex_.peek().type == Token::kIdent &&
           lex_.peek().text == "forall") {
      lex_.next();
      const Token v = lex_.expect(Token::kIdent, "a variable");
      auto it = s_.vars_.find(v.text);
      if (it == s_.vars_.end()) {
        lex_.fail_at(v.col + 1, "unknown variable '" + v.text + "'");
      }
      binders.push_back(it->second);
    }
    bool parens = lex_.accept(Token::kLParen);
    std::vector<Def> defs;
    std::vector<Literal> lits;
    lits.push_back(parse_atom(&defs));
    while (lex_.accept(Token::kOrOr)) lits.push_back(parse_atom(&defs));
    if (parens) lex_.expect(Token::kRParen, "')'");
    if (lex_.peek().type != Token::kEnd) lex_.fail("end of clause");
    for (const Def& d : defs) {
      lits.push_back(s_.pool_.neq(d.app, d.var));
      binders.push_back(d.var);
    }
    UniversalClause uc;
    uc.clause = Clause(std::move(lits));
    // close over the mentioned variables, declared binders first
    std::unordered_set<TermId, TermIdHash> mentioned;
    for (Literal l : uc.clause) {
      const TermId lhs = l.lhs();
      if (s_.pool_.is_variable(lhs)) mentioned.insert(lhs);
      if (s_.pool_.is_app(lhs)) {
        for (TermId a : s_.pool_.args(lhs)) {
          if (s_.pool_.is_variable(a)) mentioned.insert(a);
        }
      }
      if (s_.pool_.is_variable(l.rhs())) mentioned.insert(l.rhs());
    }
    for (TermId v : binders) {
      if (mentioned.erase(v)) uc.vars.push_back(v);
    }
    std::vector<TermId> rest(mentioned.begin(), mentioned.end());
    std::sort(rest.begin(), rest.end());
    uc.vars.insert(uc.vars.end(), rest.begin(), rest.end());
    return uc;
  }

 private:
  TermId fresh_def_var(SortId sort) {
    const std::string label = "_f" + std::to_string(s_.flatten_count_++);
    const TermId v = s_.pool_.variable(sort, 2000000 + s_.flatten_count_);
    s_.pool_.set_term_label(v, label);
    s_.vars_.emplace(label, v);
    return v;
  }

  Session& s_;
  Lexer& lex_;
};

Session::Session() { reset(); }

void Session::reset() {
  pool_ = TermPool();
  kb_ = ProperPlusKB();
  queries_.clear();
  sorts_.clear();
  names_.clear();
  vars_.clear();
  funs_.clear();
  name_count_per_sort_.clear();
  var_count_ = 0;
  flatten_count_ = 0;
  bool_sort_ = pool_.declare_sort("bool");
  sorts_.emplace("bool", bool_sort_);
  true_name_ = pool_.name(bool_sort_, 0);
  pool_.set_term_label(true_name_, "T");
  names_.emplace("T", true_name_);
  name_count_per_sort_["bool"] = 1;
}

Formula::Ptr Session::parse_formula_text(const std::string& text,
                                         int lineno) {
  Lexer lex(text, lineno);
  Parser p(*this, lex);
  Formula::Ptr f = p.parse_formula();
  if (lex.peek().type != Token::kEnd) lex.fail("end of formula");
  return f;
}

namespace {

Formula::Ptr relevel(const Formula::Ptr& f, int level) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::kLit:
      return f;
    case K::kOr:
      return Formula::Or(relevel(f->left(), level),
                         relevel(f->right(), level));
    case K::kNot:
      return Formula::Not(relevel(f->left(), level));
    case K::kExists:
      return Formula::Exists(f->var(), relevel(f->left(), level));
    case K::kKnow:
      return Formula::Know(level, relevel(f->left(), level));
    case K::kMaybe:
      return Formula::Maybe(level, relevel(f->left(), level));
    case K::kOnlyKnow:
      return Formula::OnlyKnow(relevel(f->left(), level));
    case K::kGuarantee:
      return Formula::Guarantee(relevel(f->left(), level));
  }
  return f;
}

int max_modal_level(const Formula::Ptr& f) {
  int level = 0;
  if (f->kind() == Formula::Kind::kKnow ||
      f->kind() == Formula::Kind::kMaybe) {
    level = f->level();
  }
  if (f->left()) level = std::max(level, max_modal_level(f->left()));
  if (f->right()) level = std::max(level, max_modal_level(f->right()));
  return level;
}

}  // namespace

Session::QueryOutcome Session::evaluate(const Formula::Ptr& f) {
  QueryOutcome out;
  if (max_level >= 0) {
    SolveStats total;
    for (int j = 0; j <= max_level; ++j) {
      SolveStats stats;
      const Outcome o = query(pool_, kb_, relevel(f, j), options, &stats);
      total.splits += stats.splits;
      total.nodes += stats.nodes;
      total.millis += stats.millis;
      total.max_level = std::max(total.max_level, stats.max_level);
      out.level_used = j;
      out.outcome = o;
      if (o != Outcome::kFalse) break;
    }
    out.stats = total;
    return out;
  }
  out.outcome = query(pool_, kb_, f, options, &out.stats);
  out.level_used = max_modal_level(f);
  return out;
}

Session::LineResult Session::execute_line(const std::string& line,
                                          int lineno) {
  LineResult result;
  Lexer lex(line, lineno);
  if (lex.peek().type == Token::kEnd) return result;
  const Token head = lex.peek();
  if (head.type != Token::kIdent) {
    lex.fail("a declaration, 'kb:', 'query:', or 'expect:'");
  }

  if (head.text == "sort") {
    lex.next();
    do {
      const Token t = lex.expect(Token::kIdent, "a sort name");
      if (sorts_.count(t.text)) {
        lex.fail_at(t.col + 1, "sort '" + t.text + "' already declared");
      }
      sorts_.emplace(t.text, pool_.declare_sort(t.text));
    } while (lex.accept(Token::kComma));
    return result;
  }
  if (head.text == "name" || head.text == "var" || head.text == "fun") {
    lex.next();
    std::vector<Token> ids;
    std::vector<long> arities;
    do {
      ids.push_back(lex.expect(Token::kIdent, "an identifier"));
      long arity = 0;
      if (head.text == "fun" && lex.accept(Token::kSlash)) {
        arity = lex.expect(Token::kInt, "an arity").value;
      }
      arities.push_back(arity);
    } while (lex.accept(Token::kComma));
    lex.expect(Token::kColon, "': <sort>'");
    const Token st = lex.expect(Token::kIdent, "a sort name");
    auto sit = sorts_.find(st.text);
    if (sit == sorts_.end()) {
      lex.fail_at(st.col + 1, "unknown sort '" + st.text + "'");
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Token& t = ids[i];
      if (names_.count(t.text) || vars_.count(t.text) ||
          funs_.count(t.text)) {
        lex.fail_at(t.col + 1, "'" + t.text + "' already declared");
      }
      if (head.text == "name") {
        const TermId n = pool_.name(sit->second, name_count_per_sort_[st.text]++);
        pool_.set_term_label(n, t.text);
        names_.emplace(t.text, n);
      } else if (head.text == "var") {
        const TermId v = pool_.variable(sit->second, var_count_++);
        pool_.set_term_label(v, t.text);
        vars_.emplace(t.text, v);
      } else {
        funs_.emplace(t.text,
                      pool_.declare_fun(sit->second,
                                        static_cast<std::uint32_t>(arities[i]),
                                        t.text));
      }
    }
    return result;
  }
  if (head.text == "kb") {
    lex.next();
    lex.expect(Token::kColon, "':'");
    Parser p(*this, lex);
    kb_.add(p.parse_kb_clause());
    return result;
  }
  if (head.text == "query") {
    lex.next();
    lex.expect(Token::kColon, "':'");
    Parser p(*this, lex);
    Formula::Ptr f = p.parse_formula();
    if (lex.peek().type != Token::kEnd) lex.fail("end of query");
    QueryRecord rec;
    rec.index = static_cast<int>(queries_.size());
    rec.formula = f;
    rec.text = f->str(pool_);
    rec.line = lineno;
    queries_.push_back(rec);
    const QueryOutcome q = evaluate(f);
    result.was_query = true;
    result.outcome = q.outcome;
    result.value = q.outcome == Outcome::kTrue;
    result.stats = q.stats;
    result.stats.max_level = q.level_used;
    result.query_index = rec.index;
    return result;
  }
  if (head.text == "expect") {
    lex.next();
    lex.expect(Token::kColon, "':'");
    const Token t = lex.expect(Token::kIdent, "'true' or 'false'");
    if (t.text != "true" && t.text != "false") {
      lex.fail_at(t.col + 1, "expected 'true' or 'false'");
    }
    if (queries_.empty()) {
      lex.fail_at(head.col + 1, "'expect:' needs a preceding query");
    }
    queries_.back().expected = t.text == "true";
    return result;
  }
  lex.fail_at(head.col + 1, "unknown directive '" + head.text + "'");
}

ScriptResult run_script(Session& session, std::istream& in) {
  ScriptResult out;
  std::string line;
  int lineno = 0;
  std::vector<Session::LineResult> query_lines;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      Session::LineResult r = session.execute_line(line, lineno);
      if (r.was_query) query_lines.push_back(r);
    } catch (const parse_error& e) {
      out.errors.push_back(e.what());
      out.all_expectations_met = false;
    } catch (const std::exception& e) {
      out.errors.push_back("line " + std::to_string(lineno) + ": " +
                           e.what());
      out.all_expectations_met = false;
    }
  }
  for (const Session::LineResult& r : query_lines) {
    ScriptResult::PerQuery q;
    q.index = r.query_index;
    q.outcome = r.outcome;
    q.level = r.stats.max_level;
    q.millis = r.stats.millis;
    q.expected = session.queries()[r.query_index].expected;
    q.passed =
        !q.expected.has_value() ||
        (r.outcome != Outcome::kResourceLimit && r.value == *q.expected);
    if (!q.passed) out.all_expectations_met = false;
    out.results.push_back(q);
  }
  return out;
}

int repl(std::istream& in, std::ostream& out) {
  Session session;
  std::string line;
  int lineno = 0;
  out << "limbelief repl; :load <file>, :reset, :quit\n";
  while (true) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    ++lineno;
    if (line.rfind(":quit", 0) == 0) break;
    if (line.rfind(":reset", 0) == 0) {
      session.reset();
      out << "ok\n";
      continue;
    }
    if (line.rfind(":load", 0) == 0) {
      std::string path = line.substr(5);
      while (!path.empty() && path.front() == ' ') path.erase(path.begin());
      std::ifstream f(path);
      if (!f) {
        out << "error: cannot open " << path << "\n";
        continue;
      }
      ScriptResult r = run_script(session, f);
      for (const std::string& e : r.errors) out << "error: " << e << "\n";
      for (const auto& q : r.results) {
        out << "query " << q.index << ": "
            << (q.outcome == Outcome::kTrue
                    ? "true"
                    : q.outcome == Outcome::kFalse ? "false" : "limit")
            << "\n";
      }
      continue;
    }
    try {
      Session::LineResult r = session.execute_line(line, lineno);
      if (r.was_query) {
        out << (r.outcome == Outcome::kTrue
                    ? "true"
                    : r.outcome == Outcome::kFalse ? "false" : "limit")
            << "  (level " << r.stats.max_level << ", " << r.stats.splits
            << " splits, " << r.stats.nodes << " nodes, " << r.stats.millis
            << " ms)\n";
      } else {
        out << "ok\n";
      }
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace textio
}  // namespace limbelief
