#include "limbelief/solver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace limbelief {

namespace {

constexpr std::uint32_t kInternalVarBase = 1u << 20;

// Pairings of primitive terms with right-hand-side names across a formula,
// plus the terms of its grounding: the split-candidate information drawn
// from the query side.
struct BodyInfo {
  std::vector<TermId> terms;  // sorted
  std::map<TermId, std::vector<TermId>> pairs_by_term;
  std::set<FunId> paired_with_var;
  std::unordered_set<TermId, TermIdHash> names;
};

void sort_unique(std::vector<TermId>* v) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
}

}  // namespace

QueryContext::QueryContext(TermPool& pool, const ProperPlusKB& kb,
                           const Formula::Ptr& query, const SolveOptions& opts)
    : pool_(pool),
      kb_(kb),
      query_(query),
      opts_(opts),
      ctx_(pool, kb, query),
      s0_(ground(kb, ctx_, pool)),
      empty_setup_(&pool) {
  extended_names_.resize(pool.num_sorts());
  if (opts_.time_limit_ms >= 0) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::milliseconds(opts_.time_limit_ms);
    has_deadline_ = true;
  }
}

void QueryContext::bump() {
  ++stats_.nodes;
  if (opts_.max_nodes >= 0 && stats_.nodes > opts_.max_nodes) {
    throw resource_limit_error();
  }
  if (has_deadline_ && (stats_.nodes & 1023) == 0 &&
      std::chrono::steady_clock::now() > deadline_) {
    throw resource_limit_error();
  }
}

struct QueryContext::SplitScope {
  QueryContext& qc;
  Setup& s;
  Setup::Mark m;
  std::size_t noted = 0;

  SplitScope(QueryContext& q, Setup& setup) : qc(q), s(setup), m(s.mark()) {}
  SplitScope(const SplitScope&) = delete;
  ~SplitScope() {
    qc.unnote_split_names(noted);
    s.undo(m);
  }
  void note(TermId n) {
    qc.note_split_name(n);
    ++noted;
  }
};

void QueryContext::note_split_name(TermId n) {
  split_name_uses_[n]++;
  split_name_stack_.push_back(n);
}

void QueryContext::unnote_split_names(std::size_t count) {
  while (count-- > 0) {
    TermId n = split_name_stack_.back();
    split_name_stack_.pop_back();
    auto it = split_name_uses_.find(n);
    if (--it->second == 0) split_name_uses_.erase(it);
  }
}

std::string QueryContext::restriction_key(const Restriction& t) const {
  if (t.all) return "*";
  std::string key;
  for (TermId term : t.terms) {
    key += std::to_string(term.raw());
    key += ',';
  }
  return key;
}

Setup& QueryContext::working_setup(const Restriction& t) {
  if (t.all) return s0_;
  const std::string key = restriction_key(t);
  auto it = restricted_.find(key);
  if (it == restricted_.end()) {
    it = restricted_.emplace(key, s0_.restrict_to(t.terms)).first;
  }
  return it->second;
}

namespace {

// Collects the primitive-term instances of a formula's literals over the
// given per-sort universes, along with name pairings.
void body_info_walk(const Formula::Ptr& f, TermPool& pool,
                    const GroundingContext& ctx, BodyInfo* out) {
  if (f->kind() == Formula::Kind::kLit) {
    const Literal l = f->lit();
    const TermId lhs = l.lhs();
    if (!pool.is_app(lhs)) return;
    std::vector<TermId> args(pool.args(lhs).begin(), pool.args(lhs).end());
    std::vector<std::size_t> var_pos;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (pool.is_variable(args[i])) var_pos.push_back(i);
    }
    auto note_term = [&](TermId t) {
      out->terms.push_back(t);
      if (l.rhs().is_name()) {
        auto& pv = out->pairs_by_term[t];
        if (std::find(pv.begin(), pv.end(), l.rhs()) == pv.end()) {
          pv.push_back(l.rhs());
        }
      }
    };
    if (pool.is_variable(l.rhs())) out->paired_with_var.insert(pool.fun(lhs));
    if (var_pos.empty()) {
      note_term(lhs);
      return;
    }
    std::vector<std::size_t> idx(var_pos.size(), 0);
    while (true) {
      std::vector<TermId> inst = args;
      bool ok = true;
      for (std::size_t i = 0; i < var_pos.size(); ++i) {
        const auto& names = ctx.split_universe(pool.sort(args[var_pos[i]]));
        if (names.empty()) {
          ok = false;
          break;
        }
        inst[var_pos[i]] = names[idx[i]];
      }
      if (!ok) return;
      note_term(pool.app(pool.fun(lhs), inst));
      std::size_t i = 0;
      for (; i < var_pos.size(); ++i) {
        const auto& names = ctx.split_universe(pool.sort(args[var_pos[i]]));
        if (++idx[i] < names.size()) break;
        idx[i] = 0;
      }
      if (i == var_pos.size()) break;
    }
    return;
  }
  if (f->left()) body_info_walk(f->left(), pool, ctx, out);
  if (f->right()) body_info_walk(f->right(), pool, ctx, out);
}

BodyInfo make_body_info(const Formula::Ptr& f, TermPool& pool,
                        const GroundingContext& ctx) {
  BodyInfo info;
  body_info_walk(f, pool, ctx, &info);
  sort_unique(&info.terms);
  f->collect_names(pool, &info.names);
  return info;
}

}  // namespace

std::vector<TermId> QueryContext::formula_terms(const Formula::Ptr& f) {
  BodyInfo info = make_body_info(f, pool_, ctx_);
  return info.terms;
}

std::vector<TermId> QueryContext::isomorphism_universe() const {
  std::vector<TermId> out;
  for (SortId s : ctx_.sorts()) {
    const auto& u = ctx_.universe(s);
    out.insert(out.end(), u.begin(), u.end());
  }
  return out;
}

QueryContext::Restriction QueryContext::intersect(const Restriction& t,
                                                  const Formula::Ptr& alpha) {
  Restriction out;
  out.all = false;
  std::vector<TermId> terms = formula_terms(alpha);
  if (t.all) {
    out.terms = std::move(terms);
    return out;
  }
  std::set_intersection(t.terms.begin(), t.terms.end(), terms.begin(),
                        terms.end(), std::back_inserter(out.terms));
  return out;
}

TermId QueryContext::fresh_for(SortId sort, const Formula::Ptr& body,
                               Setup& s) {
  std::unordered_set<TermId, TermIdHash> avoid;
  for (const auto& [n, uses] : split_name_uses_) {
    (void)uses;
    avoid.insert(n);
  }
  if (body) body->collect_names(pool_, &avoid);
  for (TermId n : ctx_.fresh(sort)) {
    if (!avoid.count(n)) return n;
  }
  // The pre-allocated pool is exhausted (deep splitting): allocate a name
  // from outside the context universe and ground the KB instances that
  // mention it, under the current trail scope.
  const TermId n = ctx_.fresh_beyond(sort, avoid, pool_);
  ground_extend(&s, kb_, ctx_, extended_names_, n, pool_);
  if (sort.id >= extended_names_.size()) extended_names_.resize(sort.id + 1);
  auto& list = extended_names_[sort.id];
  if (std::find(list.begin(), list.end(), n) == list.end()) list.push_back(n);
  return n;
}

std::vector<TermId> QueryContext::quantifier_names(Setup& s, SortId sort,
                                                   const Formula::Ptr& body) {
  std::vector<TermId> out = ctx_.mentioned(sort);
  for (const auto& [n, uses] : split_name_uses_) {
    (void)uses;
    if (pool_.sort(n) == sort) out.push_back(n);
  }
  std::unordered_set<TermId, TermIdHash> body_names;
  body->collect_names(pool_, &body_names);
  for (TermId n : body_names) {
    if (pool_.sort(n) == sort) out.push_back(n);
  }
  sort_unique(&out);
  out.push_back(fresh_for(sort, body, s));
  return out;
}

std::vector<TermId> QueryContext::split_terms(Setup& s,
                                              const Formula::Ptr& body) {
  std::vector<TermId> out = s.lhs_terms();
  BodyInfo info = make_body_info(body, pool_, ctx_);
  out.insert(out.end(), info.terms.begin(), info.terms.end());
  sort_unique(&out);
  return out;
}

const std::vector<TermId>& QueryContext::stored_pairs(Setup& s, TermId term) {
  if (pair_cache_setup_ != s.uid() || pair_cache_nclauses_ != s.num_clauses()) {
    pair_cache_.clear();
    pair_cache_setup_ = s.uid();
    pair_cache_nclauses_ = s.num_clauses();
  }
  auto it = pair_cache_.find(term);
  if (it == pair_cache_.end()) {
    it = pair_cache_.emplace(term, s.stored_pair_names(term)).first;
  }
  return it->second;
}

std::vector<TermId> QueryContext::split_names(Setup& s, TermId term,
                                              const Formula::Ptr& body) {
  BodyInfo info = make_body_info(body, pool_, ctx_);
  const SortId sort = pool_.sort(term);

  std::vector<TermId> paired = stored_pairs(s, term);
  {
    const Setup::TermValue tv = s.determines(term);
    if (tv.kind == Setup::TermValue::kValue) {
      paired.push_back(tv.value);
    } else {
      paired.insert(paired.end(), tv.forbidden.begin(), tv.forbidden.end());
    }
  }
  auto it = info.pairs_by_term.find(term);
  if (it != info.pairs_by_term.end()) {
    paired.insert(paired.end(), it->second.begin(), it->second.end());
  }
  if (info.paired_with_var.count(pool_.fun(term))) {
    const auto& m = ctx_.mentioned(sort);
    paired.insert(paired.end(), m.begin(), m.end());
    for (const auto& [n, uses] : split_name_uses_) {
      (void)uses;
      if (pool_.sort(n) == sort) paired.push_back(n);
    }
  }

  // Names that occur only through grounding over the fresh pool and are not
  // pinned by the KB text, the query body, a split, or the term's own
  // arguments all behave like the single fresh representative; drop them.
  std::unordered_set<TermId, TermIdHash> keep_if;
  for (TermId a : pool_.args(term)) keep_if.insert(a);
  std::vector<TermId> kept;
  for (TermId n : paired) {
    if (ctx_.is_mentioned(n) || info.names.count(n) ||
        split_name_uses_.count(n) || keep_if.count(n)) {
      kept.push_back(n);
    }
  }
  sort_unique(&kept);
  kept.push_back(fresh_for(sort, body, s));
  return kept;
}

bool QueryContext::eval_clause(Setup& s, const Clause& c) {
  return s.subsumes(c);
}

namespace {

bool flatten_or(const Formula::Ptr& f, std::vector<Literal>* lits) {
  switch (f->kind()) {
    case Formula::Kind::kLit:
      lits->push_back(f->lit());
      return true;
    case Formula::Kind::kOr:
      return flatten_or(f->left(), lits) && flatten_or(f->right(), lits);
    default:
      return false;
  }
}

}  // namespace

bool QueryContext::eval_objective(Setup& s, const Formula::Ptr& f) {
  bump();
  switch (f->kind()) {
    case Formula::Kind::kLit:
      return eval_clause(s, Clause{f->lit()});
    case Formula::Kind::kOr: {
      std::vector<Literal> lits;
      if (flatten_or(f, &lits)) return eval_clause(s, Clause(std::move(lits)));
      return eval_objective(s, f->left()) || eval_objective(s, f->right());
    }
    case Formula::Kind::kNot: {
      const Formula::Ptr& g = f->left();
      switch (g->kind()) {
        case Formula::Kind::kOr:
          return eval_objective(s, Formula::Not(g->left())) &&
                 eval_objective(s, Formula::Not(g->right()));
        case Formula::Kind::kNot:
          return eval_objective(s, g->left());
        case Formula::Kind::kExists: {
          for (TermId n :
               quantifier_names(s, pool_.sort(g->var()), g->left())) {
            const Formula::Ptr inst =
                Formula::substitute(g->left(), g->var(), n, pool_);
            if (!eval_objective(s, Formula::Not(inst))) return false;
          }
          return true;
        }
        default:
          throw std::logic_error("eval_objective: formula is not objective");
      }
    }
    case Formula::Kind::kExists: {
      for (TermId n : quantifier_names(s, pool_.sort(f->var()), f->left())) {
        const Formula::Ptr inst =
            Formula::substitute(f->left(), f->var(), n, pool_);
        if (eval_objective(s, inst)) return true;
      }
      return false;
    }
    default:
      throw std::logic_error("eval_objective: formula is not objective");
  }
}

bool QueryContext::eval_know(Setup& s, int level, const Formula::Ptr& body) {
  bump();
  // Once the empty clause is derivable it stays derivable under every
  // further split, and at level 0 everything is known.
  if (s.obviously_inconsistent()) return true;
  if (level == 0) return eval_objective(s, body);

  const std::vector<TermId> terms = split_terms(s, body);
  bool tried = false;
  for (TermId t : terms) {
    if (s.determined_value(t)) continue;  // splitting it is a no-op
    tried = true;
    bool all = true;
    for (TermId n : split_names(s, t, body)) {
      ++stats_.splits;
      bool ok;
      {
        SplitScope scope(*this, s);
        s.add(Clause{pool_.eq(t, n)});
        scope.note(n);
        ok = eval_know(s, level - 1, body);
      }
      if (!ok) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  if (!tried) {
    // No undetermined split candidates: splitting is inert and the level
    // collapses.
    return eval_know(s, 0, body);
  }
  return false;
}

bool QueryContext::eval_maybe(Setup& s, int level, const Formula::Ptr& body) {
  bump();
  if (s.obviously_inconsistent()) return false;
  if (level == 0) {
    return !s.potentially_inconsistent() && eval_objective(s, body);
  }
  const std::vector<TermId> terms = split_terms(s, body);
  if (terms.empty()) return eval_maybe(s, 0, body);
  const std::vector<TermId> iso = isomorphism_universe();
  for (TermId t : terms) {
    for (TermId n : split_names(s, t, body)) {
      ++stats_.splits;
      {
        SplitScope scope(*this, s);
        s.add(Clause{pool_.eq(t, n)});
        scope.note(n);
        if (eval_maybe(s, level - 1, body)) return true;
      }
      {
        SplitScope scope(*this, s);
        std::vector<Literal> added;
        s.add_isomorphic(pool_.eq(t, n), iso, &added);
        for (Literal l : added) {
          for (TermId a : pool_.args(l.lhs())) scope.note(a);
          scope.note(l.rhs());
        }
        if (eval_maybe(s, level - 1, body)) return true;
      }
    }
  }
  return false;
}

bool QueryContext::eval_modal(const Restriction& t, bool know, int level,
                              const Formula::Ptr& body) {
  stats_.max_level = std::max(stats_.max_level, level);
  Setup& s = working_setup(t);
  SplitScope scope(*this, s);
  return know ? eval_know(s, level, body) : eval_maybe(s, level, body);
}

namespace {

Formula::Ptr true_formula(TermPool& pool, const GroundingContext& ctx) {
  // TRUE is exists x (x == x) for a variable of the first context sort.
  const std::vector<SortId> sorts = ctx.sorts();
  const SortId s = sorts.empty() ? SortId{0} : sorts.front();
  const TermId q = pool.variable(s, kInternalVarBase);
  return Formula::Exists(q, Formula::Lit(pool.eq(q, q)));
}

}  // namespace

Formula::Ptr QueryContext::res(const Restriction& t, bool know, int level,
                               const Formula::Ptr& body) {
  std::unordered_set<TermId, TermIdHash> free;
  body->collect_free_vars(pool_, &free);
  if (!free.empty()) {
    std::vector<TermId> vars(free.begin(), free.end());
    std::sort(vars.begin(), vars.end());
    const TermId x = vars.front();
    const SortId sort = pool_.sort(x);

    // The known-value fast path for K_k (term = x): one search over the
    // term-value index instead of one evaluation per candidate name.
    Known fast;
    bool have_fast = false;
    if (know && body->kind() == Formula::Kind::kLit && body->lit().pos() &&
        body->lit().rhs() == x && pool_.is_app(body->lit().lhs()) &&
        pool_.is_primitive(body->lit().lhs())) {
      Setup& s = working_setup(t);
      SplitScope scope(*this, s);
      fast = known_value_inner(s, body->lit().lhs(), level, {});
      have_fast = true;
    }

    std::vector<TermId> names = ctx_.mentioned(sort);
    {
      std::unordered_set<TermId, TermIdHash> body_names;
      body->collect_names(pool_, &body_names);
      for (TermId n : body_names) {
        if (pool_.sort(n) == sort) names.push_back(n);
      }
      sort_unique(&names);
    }
    std::unordered_set<TermId, TermIdHash> avoid(names.begin(), names.end());
    const TermId hat = ctx_.fresh_beyond(sort, avoid, pool_);

    const Formula::Ptr t_true = true_formula(pool_, ctx_);
    auto leaf = [&](bool b) {
      return b ? t_true : Formula::Not(t_true);
    };

    Formula::Ptr out;
    for (TermId n : names) {
      Formula::Ptr branch;
      if (have_fast) {
        const bool b = fast.kind == Known::kAny ||
                       (fast.kind == Known::kValue && fast.value == n);
        branch = leaf(b);
      } else {
        branch = res(t, know, level,
                     Formula::substitute(body, x, n, pool_));
      }
      Formula::Ptr conj = Formula::And(Formula::Lit(pool_.eq(x, n)), branch);
      out = out ? Formula::Or(out, conj) : conj;
    }
    Formula::Ptr residual;
    if (have_fast) {
      residual = leaf(fast.kind == Known::kAny);
    } else {
      const Formula::Ptr expanded =
          res(t, know, level, Formula::substitute(body, x, hat, pool_));
      residual = Formula::substitute_name(expanded, hat, x, pool_);
    }
    for (TermId n : names) {
      residual = Formula::And(Formula::Lit(pool_.neq(x, n)), residual);
    }
    return out ? Formula::Or(out, residual) : residual;
  }

  const std::string key = restriction_key(t) + (know ? "|K" : "|M") +
                          std::to_string(level) + "|" + body->str(pool_);
  auto it = memo_.find(key);
  bool value;
  if (it != memo_.end()) {
    value = it->second;
  } else {
    value = eval_modal(t, know, level, body);
    memo_.emplace(key, value);
  }
  const Formula::Ptr t_true = true_formula(pool_, ctx_);
  return value ? t_true : Formula::Not(t_true);
}

Formula::Ptr QueryContext::red(const Restriction& t, const Formula::Ptr& f) {
  switch (f->kind()) {
    case Formula::Kind::kLit:
      return f;
    case Formula::Kind::kOr:
      return Formula::Or(red(t, f->left()), red(t, f->right()));
    case Formula::Kind::kNot:
      return Formula::Not(red(t, f->left()));
    case Formula::Kind::kExists:
      return Formula::Exists(f->var(), red(t, f->left()));
    case Formula::Kind::kKnow:
      return res(t, true, f->level(), red(t, f->left()));
    case Formula::Kind::kMaybe:
      return res(t, false, f->level(), red(t, f->left()));
    case Formula::Kind::kGuarantee:
      return red(intersect(t, f->left()), f->left());
    case Formula::Kind::kOnlyKnow:
      throw std::invalid_argument("queries must not mention O");
  }
  return f;
}

Outcome QueryContext::run() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    Formula::Ptr q = query_;
    if (q->mentions_only_know()) {
      throw std::invalid_argument("queries must not mention O");
    }
    if (opts_.rewrite) q = rewrite(q, pool_);
    {
      std::unordered_set<TermId, TermIdHash> free;
      q->collect_free_vars(pool_, &free);
      if (!free.empty()) {
        throw std::invalid_argument("query has free variables");
      }
    }
    bool value;
    if (q->objective()) {
      // O kb |= psi for objective psi reduces to checking psi against the
      // grounding of kb, with G narrowing the setup.
      Restriction all;
      all.all = true;
      std::function<bool(const Restriction&, const Formula::Ptr&)> go =
          [&](const Restriction& t, const Formula::Ptr& f) -> bool {
        if (f->kind() == Formula::Kind::kGuarantee) {
          return go(intersect(t, f->left()), f->left());
        }
        if (f->kind() == Formula::Kind::kNot &&
            f->left()->kind() == Formula::Kind::kGuarantee) {
          return go(intersect(t, f->left()->left()),
                    Formula::Not(f->left()->left()));
        }
        return eval_objective(working_setup(t), f);
      };
      value = go(all, q);
    } else {
      if (!q->subjective(pool_)) {
        throw std::invalid_argument(
            "query must be objective or subjective (no function outside "
            "belief operators)");
      }
      Restriction all;
      all.all = true;
      const Formula::Ptr reduced = red(all, q);
      value = eval_objective(empty_setup_, reduced);
    }
    out = value ? Outcome::kTrue : Outcome::kFalse;
  } catch (const resource_limit_error&) {
    out = Outcome::kResourceLimit;
  }
  stats_.millis =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

namespace {

bool known_useful(const QueryContext::Known& k) {
  if (k.kind != QueryContext::Known::kNone) return true;
  for (bool b : k.not_probes) {
    if (b) return true;
  }
  return false;
}

}  // namespace

QueryContext::Known QueryContext::known_value_inner(
    Setup& s, TermId term, int level, std::span<const TermId> probes) {
  bump();
  Known leaf;
  leaf.not_probes.assign(probes.size(), false);
  if (s.obviously_inconsistent()) {
    leaf.kind = Known::kAny;
    leaf.not_probes.assign(probes.size(), true);
    return leaf;
  }
  if (level == 0) {
    const Setup::TermValue tv = s.determines(term);
    if (tv.kind == Setup::TermValue::kValue) {
      leaf.kind = Known::kValue;
      leaf.value = tv.value;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        leaf.not_probes[i] = tv.value != probes[i];
      }
    } else if (tv.kind == Setup::TermValue::kForbidden) {
      for (std::size_t i = 0; i < probes.size(); ++i) {
        leaf.not_probes[i] =
            std::find(tv.forbidden.begin(), tv.forbidden.end(), probes[i]) !=
            tv.forbidden.end();
      }
    }
    return leaf;
  }
  const Formula::Ptr body = Formula::Lit(
      pool_.eq(term, pool_.variable(pool_.sort(term), kInternalVarBase + 1)));
  const std::vector<TermId> terms = split_terms(s, body);
  bool tried = false;
  for (TermId t : terms) {
    if (s.determined_value(t)) continue;  // splitting it is a no-op
    tried = true;
    Known meet;
    meet.kind = Known::kAny;
    meet.not_probes.assign(probes.size(), true);
    for (TermId n : split_names(s, t, body)) {
      ++stats_.splits;
      Known r;
      {
        SplitScope scope(*this, s);
        s.add(Clause{pool_.eq(t, n)});
        scope.note(n);
        r = known_value_inner(s, term, level - 1, probes);
      }
      // meet of branch knowledge
      if (r.kind == Known::kNone) {
        meet.kind = Known::kNone;
      } else if (r.kind == Known::kValue) {
        if (meet.kind == Known::kAny) {
          meet.kind = Known::kValue;
          meet.value = r.value;
        } else if (meet.kind == Known::kValue && meet.value != r.value) {
          meet.kind = Known::kNone;
        }
      }
      for (std::size_t i = 0; i < probes.size(); ++i) {
        meet.not_probes[i] = meet.not_probes[i] && r.not_probes[i];
      }
      if (!known_useful(meet)) break;
    }
    if (known_useful(meet)) return meet;
  }
  if (!tried) return known_value_inner(s, term, 0, probes);
  Known none;
  none.not_probes.assign(probes.size(), false);
  return none;
}

QueryContext::Known QueryContext::known_value(TermId term, int level,
                                              std::span<const TermId> probes) {
  SplitScope scope(*this, s0_);
  return known_value_inner(s0_, term, level, probes);
}

QueryContext::Known QueryContext::known_value_guarded(
    TermId term, int level, std::span<const TermId> probes) {
  std::optional<Setup> restricted = s0_.restrict_reachable_opt({&term, 1});
  Setup& s = restricted ? *restricted : s0_;
  SplitScope scope(*this, s);
  return known_value_inner(s, term, level, probes);
}

Outcome query(TermPool& pool, const ProperPlusKB& kb, const Formula::Ptr& q,
              const SolveOptions& opts, SolveStats* stats) {
  QueryContext qc(pool, kb, q, opts);
  Outcome out = qc.run();
  if (stats) *stats = qc.stats();
  return out;
}

}  // namespace limbelief
