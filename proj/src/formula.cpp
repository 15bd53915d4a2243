#include "limbelief/formula.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace limbelief {

Formula::Ptr Formula::Lit(Literal l) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kLit;
  f->lit_ = l;
  return f;
}

Formula::Ptr Formula::Or(Ptr a, Ptr b) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kOr;
  f->left_ = std::move(a);
  f->right_ = std::move(b);
  return f;
}

Formula::Ptr Formula::Not(Ptr a) {
  if (a->kind_ == Kind::kLit) return Lit(a->lit_.flipped());
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kNot;
  f->left_ = std::move(a);
  return f;
}

Formula::Ptr Formula::Exists(TermId var, Ptr a) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kExists;
  f->var_ = var;
  f->left_ = std::move(a);
  return f;
}

Formula::Ptr Formula::Know(int level, Ptr a) {
  assert(level >= 0);
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kKnow;
  f->level_ = level;
  f->left_ = std::move(a);
  return f;
}

Formula::Ptr Formula::Maybe(int level, Ptr a) {
  assert(level >= 0);
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kMaybe;
  f->level_ = level;
  f->left_ = std::move(a);
  return f;
}

Formula::Ptr Formula::OnlyKnow(Ptr a) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kOnlyKnow;
  f->left_ = std::move(a);
  return f;
}

Formula::Ptr Formula::Guarantee(Ptr a) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::kGuarantee;
  f->left_ = std::move(a);
  return f;
}

bool Formula::objective() const {
  switch (kind_) {
    case Kind::kLit:
      return true;
    case Kind::kOr:
      return left_->objective() && right_->objective();
    case Kind::kNot:
    case Kind::kExists:
    case Kind::kGuarantee:
      return left_->objective();
    case Kind::kKnow:
    case Kind::kMaybe:
    case Kind::kOnlyKnow:
      return false;
  }
  return false;
}

bool Formula::subjective(const TermPool& pool) const {
  switch (kind_) {
    case Kind::kLit:
      return !pool.is_app(lit_.lhs());
    case Kind::kOr:
      return left_->subjective(pool) && right_->subjective(pool);
    case Kind::kNot:
    case Kind::kExists:
    case Kind::kGuarantee:
      return left_->subjective(pool);
    case Kind::kKnow:
    case Kind::kMaybe:
    case Kind::kOnlyKnow:
      return true;
  }
  return true;
}

bool Formula::mentions_only_know() const {
  switch (kind_) {
    case Kind::kLit:
      return false;
    case Kind::kOnlyKnow:
      return true;
    case Kind::kOr:
      return left_->mentions_only_know() || right_->mentions_only_know();
    default:
      return left_ && left_->mentions_only_know();
  }
}

namespace {

TermId sub_atom(TermId t, TermId var, TermId term) {
  return t == var ? term : t;
}

Literal lit_substitute(Literal l, TermId var, TermId term, TermPool& pool) {
  TermId lhs = l.lhs();
  if (pool.is_app(lhs)) {
    bool touched = false;
    std::vector<TermId> args(pool.args(lhs).begin(), pool.args(lhs).end());
    for (TermId& a : args) {
      if (a == var) {
        a = term;
        touched = true;
      }
    }
    if (touched) lhs = pool.app(pool.fun(l.lhs()), args);
  } else {
    lhs = sub_atom(lhs, var, term);
  }
  const TermId rhs = sub_atom(l.rhs(), var, term);
  return pool.lit(lhs, l.pos(), rhs);
}

}  // namespace

Formula::Ptr Formula::substitute(const Ptr& a, TermId var, TermId term,
                                 TermPool& pool) {
  if (pool.is_app(term)) {
    throw std::invalid_argument("substitute: target must be a name or variable");
  }
  if (pool.sort(var) != pool.sort(term)) {
    throw std::invalid_argument("substitute: sort mismatch");
  }
  switch (a->kind()) {
    case Kind::kLit:
      return Lit(lit_substitute(a->lit(), var, term, pool));
    case Kind::kOr:
      return Or(substitute(a->left(), var, term, pool),
                substitute(a->right(), var, term, pool));
    case Kind::kNot:
      return Not(substitute(a->left(), var, term, pool));
    case Kind::kExists:
      if (a->var() == var) return a;  // bound occurrences stay
      if (a->var() == term) {
        throw std::logic_error("substitute: variable capture");
      }
      return Exists(a->var(), substitute(a->left(), var, term, pool));
    case Kind::kKnow:
      return Know(a->level(), substitute(a->left(), var, term, pool));
    case Kind::kMaybe:
      return Maybe(a->level(), substitute(a->left(), var, term, pool));
    case Kind::kOnlyKnow:
      return OnlyKnow(substitute(a->left(), var, term, pool));
    case Kind::kGuarantee:
      return Guarantee(substitute(a->left(), var, term, pool));
  }
  return a;
}

Formula::Ptr Formula::substitute_name(const Ptr& a, TermId name, TermId var,
                                      TermPool& pool) {
  switch (a->kind()) {
    case Kind::kLit: {
      Literal l = a->lit();
      TermId lhs = l.lhs();
      if (pool.is_app(lhs)) {
        bool touched = false;
        std::vector<TermId> args(pool.args(lhs).begin(),
                                 pool.args(lhs).end());
        for (TermId& x : args) {
          if (x == name) {
            x = var;
            touched = true;
          }
        }
        if (touched) lhs = pool.app(pool.fun(l.lhs()), args);
      } else if (lhs == name) {
        lhs = var;
      }
      const TermId rhs = l.rhs() == name ? var : l.rhs();
      return Lit(pool.lit(lhs, l.pos(), rhs));
    }
    case Kind::kOr:
      return Or(substitute_name(a->left(), name, var, pool),
                substitute_name(a->right(), name, var, pool));
    case Kind::kNot:
      return Not(substitute_name(a->left(), name, var, pool));
    case Kind::kExists:
      if (a->var() == var) {
        throw std::logic_error("substitute_name: variable capture");
      }
      return Exists(a->var(), substitute_name(a->left(), name, var, pool));
    case Kind::kKnow:
      return Know(a->level(), substitute_name(a->left(), name, var, pool));
    case Kind::kMaybe:
      return Maybe(a->level(), substitute_name(a->left(), name, var, pool));
    case Kind::kOnlyKnow:
      return OnlyKnow(substitute_name(a->left(), name, var, pool));
    case Kind::kGuarantee:
      return Guarantee(substitute_name(a->left(), name, var, pool));
  }
  return a;
}

namespace {

void lit_collect_names(Literal l, const TermPool& pool,
                       std::unordered_set<TermId, TermIdHash>* out) {
  const TermId lhs = l.lhs();
  if (lhs.is_name()) out->insert(lhs);
  if (pool.is_app(lhs)) {
    for (TermId a : pool.args(lhs)) {
      if (a.is_name()) out->insert(a);
    }
  }
  if (l.rhs().is_name()) out->insert(l.rhs());
}

}  // namespace

void Formula::collect_names(const TermPool& pool,
                            std::unordered_set<TermId, TermIdHash>* out) const {
  if (kind_ == Kind::kLit) {
    lit_collect_names(lit_, pool, out);
    return;
  }
  if (left_) left_->collect_names(pool, out);
  if (right_) right_->collect_names(pool, out);
}

void Formula::collect_free_vars(
    const TermPool& pool, std::unordered_set<TermId, TermIdHash>* out) const {
  switch (kind_) {
    case Kind::kLit: {
      const TermId lhs = lit_.lhs();
      if (pool.is_variable(lhs)) out->insert(lhs);
      if (pool.is_app(lhs)) {
        for (TermId a : pool.args(lhs)) {
          if (pool.is_variable(a)) out->insert(a);
        }
      }
      if (pool.is_variable(lit_.rhs())) out->insert(lit_.rhs());
      return;
    }
    case Kind::kExists: {
      std::unordered_set<TermId, TermIdHash> inner;
      left_->collect_free_vars(pool, &inner);
      inner.erase(var_);
      out->insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (left_) left_->collect_free_vars(pool, out);
      if (right_) right_->collect_free_vars(pool, out);
  }
}

std::string Formula::str(const TermPool& pool) const {
  switch (kind_) {
    case Kind::kLit:
      return pool.lit_str(lit_);
    case Kind::kOr:
      return "(" + left_->str(pool) + " || " + right_->str(pool) + ")";
    case Kind::kNot:
      return "!" + left_->str(pool);
    case Kind::kExists:
      return "exists " + pool.term_str(var_) + " (" + left_->str(pool) + ")";
    case Kind::kKnow:
      return "K" + std::to_string(level_) + " (" + left_->str(pool) + ")";
    case Kind::kMaybe:
      return "M" + std::to_string(level_) + " (" + left_->str(pool) + ")";
    case Kind::kOnlyKnow:
      return "O (" + left_->str(pool) + ")";
    case Kind::kGuarantee:
      return "G (" + left_->str(pool) + ")";
  }
  return "?";
}

void ProperPlusKB::collect_names(
    const TermPool& pool, std::unordered_set<TermId, TermIdHash>* out) const {
  for (const UniversalClause& uc : clauses_) {
    for (Literal l : uc.clause) lit_collect_names(l, pool, out);
  }
}

namespace {

bool flatten_clause(const Formula::Ptr& f, std::vector<Literal>* lits) {
  switch (f->kind()) {
    case Formula::Kind::kLit:
      lits->push_back(f->lit());
      return true;
    case Formula::Kind::kOr:
      return flatten_clause(f->left(), lits) &&
             flatten_clause(f->right(), lits);
    default:
      return false;
  }
}

bool validate_rec(const Formula::Ptr& f, const TermPool& pool,
                  std::vector<TermId> vars, ProperPlusKB* out,
                  ProperPlusError* err) {
  // Conjunction: !((!a) || (!b))
  if (f->kind() == Formula::Kind::kNot &&
      f->left()->kind() == Formula::Kind::kOr) {
    const auto& orf = f->left();
    return validate_rec(Formula::Not(orf->left()), pool, vars, out, err) &&
           validate_rec(Formula::Not(orf->right()), pool, vars, out, err);
  }
  // Universal: !exists x !a
  if (f->kind() == Formula::Kind::kNot &&
      f->left()->kind() == Formula::Kind::kExists) {
    std::vector<TermId> vars2 = vars;
    vars2.push_back(f->left()->var());
    return validate_rec(Formula::Not(f->left()->left()), pool,
                        std::move(vars2), out, err);
  }
  if (f->kind() == Formula::Kind::kNot &&
      f->left()->kind() == Formula::Kind::kNot) {
    return validate_rec(f->left()->left(), pool, std::move(vars), out, err);
  }
  std::vector<Literal> lits;
  if (flatten_clause(f, &lits)) {
    UniversalClause uc;
    uc.clause = Clause(std::move(lits));
    // Keep only variables the clause mentions, in binding order, and reject
    // unbound ones.
    std::unordered_set<TermId, TermIdHash> free;
    for (Literal l : uc.clause) {
      const TermId lhs = l.lhs();
      if (pool.is_variable(lhs)) free.insert(lhs);
      if (pool.is_app(lhs)) {
        for (TermId a : pool.args(lhs)) {
          if (pool.is_variable(a)) free.insert(a);
        }
      }
      if (pool.is_variable(l.rhs())) free.insert(l.rhs());
    }
    for (TermId v : vars) {
      if (free.erase(v)) uc.vars.push_back(v);
    }
    if (!free.empty()) {
      if (err) {
        err->message = "clause mentions an unbound variable: " +
                       pool.term_str(*free.begin());
      }
      return false;
    }
    out->add(std::move(uc));
    return true;
  }
  if (err) {
    std::string what;
    switch (f->kind()) {
      case Formula::Kind::kExists:
        what = "existential quantifiers are disallowed in the KB "
               "(Skolemise by hand: replace 'exists x' with a fresh "
               "function symbol)";
        break;
      case Formula::Kind::kKnow:
      case Formula::Kind::kMaybe:
      case Formula::Kind::kOnlyKnow:
      case Formula::Kind::kGuarantee:
        what = "belief operators are not allowed in the KB";
        break;
      default:
        what = "not a universally quantified clause";
    }
    err->message = what + ": " + f->str(pool);
  }
  return false;
}

}  // namespace

bool validate_proper_plus(const Formula::Ptr& f, const TermPool& pool,
                          ProperPlusKB* out, ProperPlusError* err) {
  return validate_rec(f, pool, {}, out, err);
}

const std::vector<TermId> GroundingContext::kEmpty;

GroundingContext::GroundingContext(TermPool& pool, const ProperPlusKB& kb,
                                   const Formula::Ptr& query) {
  std::unordered_set<TermId, TermIdHash> names;
  kb.collect_names(pool, &names);
  if (query) query->collect_names(pool, &names);
  for (TermId n : names) {
    mentioned_[pool.sort(n)].push_back(n);
    mentioned_set_.insert(n);
  }
  for (auto& [s, v] : mentioned_) std::sort(v.begin(), v.end());

  // Sorts can be relevant without any mentioned name (variables only).
  std::map<SortId, std::size_t> max_vars;
  for (const auto& [s, v] : mentioned_) max_vars[s];  // ensure key
  for (const UniversalClause& uc : kb.clauses()) {
    std::map<SortId, std::size_t> per;
    for (TermId v : uc.vars) per[pool.sort(v)]++;
    for (auto& [s, c] : per) max_vars[s] = std::max(max_vars[s], c);
  }
  // Maximum free-variable count of each sort over the query's subformulas.
  struct Walk {
    TermPool& pool;
    std::map<SortId, std::size_t>& max_vars;
    std::unordered_set<TermId, TermIdHash> operator()(const Formula::Ptr& f) {
      std::unordered_set<TermId, TermIdHash> free;
      switch (f->kind()) {
        case Formula::Kind::kLit:
          f->collect_free_vars(pool, &free);
          break;
        case Formula::Kind::kExists: {
          free = (*this)(f->left());
          free.erase(f->var());
          max_vars[pool.sort(f->var())];  // the bound sort is relevant
          break;
        }
        default: {
          if (f->left()) free = (*this)(f->left());
          if (f->right()) {
            auto r = (*this)(f->right());
            free.insert(r.begin(), r.end());
          }
        }
      }
      std::map<SortId, std::size_t> per;
      for (TermId v : free) per[pool.sort(v)]++;
      for (auto& [s, c] : per) max_vars[s] = std::max(max_vars[s], c);
      return free;
    }
  };
  if (query) Walk{pool, max_vars}(query);

  for (auto& [s, vmax] : max_vars) {
    std::unordered_set<TermId, TermIdHash> avoid = names;
    std::vector<TermId> fresh = pool.fresh_names(s, vmax + 1, avoid);
    auto& uni = universe_[s];
    uni = mentioned_[s];
    uni.insert(uni.end(), fresh.begin(), fresh.end());
    auto& split = split_universe_[s];
    split.assign(uni.begin(), uni.end() - 1);
    fresh_[s] = std::move(fresh);
  }
}

const std::vector<TermId>& GroundingContext::universe(SortId s) const {
  auto it = universe_.find(s);
  return it == universe_.end() ? kEmpty : it->second;
}

const std::vector<TermId>& GroundingContext::fresh(SortId s) const {
  auto it = fresh_.find(s);
  return it == fresh_.end() ? kEmpty : it->second;
}

const std::vector<TermId>& GroundingContext::mentioned(SortId s) const {
  auto it = mentioned_.find(s);
  return it == mentioned_.end() ? kEmpty : it->second;
}

const std::vector<TermId>& GroundingContext::split_universe(SortId s) const {
  auto it = split_universe_.find(s);
  return it == split_universe_.end() ? kEmpty : it->second;
}

TermId GroundingContext::fresh_beyond(
    SortId s, const std::unordered_set<TermId, TermIdHash>& avoid,
    TermPool& pool) const {
  for (TermId n : fresh(s)) {
    if (!avoid.count(n)) return n;
  }
  std::unordered_set<TermId, TermIdHash> avoid2 = avoid;
  avoid2.insert(mentioned_set_.begin(), mentioned_set_.end());
  for (TermId n : universe(s)) avoid2.insert(n);
  return pool.fresh_names(s, 1, avoid2)[0];
}

std::vector<SortId> GroundingContext::sorts() const {
  std::vector<SortId> out;
  for (const auto& [s, v] : universe_) out.push_back(s);
  return out;
}

Clause instantiate(const UniversalClause& uc,
                   std::span<const TermId> assignment, TermPool& pool) {
  std::vector<Literal> lits;
  lits.reserve(uc.clause.size());
  for (Literal l : uc.clause) {
    Literal cur = l;
    for (std::size_t i = 0; i < uc.vars.size(); ++i) {
      cur = lit_substitute(cur, uc.vars[i], assignment[i], pool);
    }
    lits.push_back(cur);
  }
  return Clause(std::move(lits));
}

namespace {

// Enumerates assignments for the clause variables over the given per-variable
// name lists, in odometer order.
template <typename F>
void enumerate_assignments(const std::vector<std::vector<TermId>>& domains,
                           F&& f) {
  std::vector<std::size_t> idx(domains.size(), 0);
  for (const auto& d : domains) {
    if (d.empty()) return;
  }
  std::vector<TermId> assign(domains.size());
  while (true) {
    for (std::size_t i = 0; i < domains.size(); ++i) assign[i] = domains[i][idx[i]];
    f(assign);
    std::size_t i = 0;
    for (; i < domains.size(); ++i) {
      if (++idx[i] < domains[i].size()) break;
      idx[i] = 0;
    }
    if (i == domains.size()) break;
  }
}

}  // namespace

namespace {

// Dedup key: the literals that survive invalid-stripping (so symmetric
// instantiations like y1=a,y2=b vs y1=b,y2=a collapse).  Returns nullopt for
// valid clauses, which are no-ops anyway.
std::optional<std::vector<std::uint64_t>> instance_key(const Clause& c,
                                                       const TermPool& pool) {
  if (c.valid(pool)) return std::nullopt;
  std::vector<std::uint64_t> key;
  key.reserve(c.size());
  for (Literal l : c) {
    if (!pool.lit_invalid(l)) key.push_back(l.packed());
  }
  return key;
}

}  // namespace

Setup ground(const ProperPlusKB& kb, const GroundingContext& ctx,
             TermPool& pool) {
  Setup s(&pool);
  std::set<std::vector<std::uint64_t>> seen;
  for (const UniversalClause& uc : kb.clauses()) {
    std::vector<std::vector<TermId>> domains;
    domains.reserve(uc.vars.size());
    for (TermId v : uc.vars) domains.push_back(ctx.universe(pool.sort(v)));
    enumerate_assignments(domains, [&](const std::vector<TermId>& assign) {
      Clause inst = instantiate(uc, assign, pool);
      auto key = instance_key(inst, pool);
      if (key && seen.insert(std::move(*key)).second) s.add(inst);
    });
  }
  return s;
}

void ground_extend(Setup* s, const ProperPlusKB& kb,
                   const GroundingContext& ctx,
                   std::span<const std::vector<TermId>> extra_names_by_sort,
                   TermId new_name, TermPool& pool) {
  const SortId ns = pool.sort(new_name);
  std::set<std::vector<std::uint64_t>> seen;
  for (const UniversalClause& uc : kb.clauses()) {
    bool relevant = false;
    for (TermId v : uc.vars) {
      if (pool.sort(v) == ns) relevant = true;
    }
    if (!relevant) continue;
    std::vector<std::vector<TermId>> domains;
    for (TermId v : uc.vars) {
      const SortId vs = pool.sort(v);
      std::vector<TermId> d = ctx.universe(vs);
      if (vs.id < extra_names_by_sort.size()) {
        const auto& extra = extra_names_by_sort[vs.id];
        d.insert(d.end(), extra.begin(), extra.end());
      }
      if (vs == ns) d.push_back(new_name);
      domains.push_back(std::move(d));
    }
    enumerate_assignments(domains, [&](const std::vector<TermId>& assign) {
      if (std::find(assign.begin(), assign.end(), new_name) == assign.end()) {
        return;
      }
      Clause inst = instantiate(uc, assign, pool);
      auto key = instance_key(inst, pool);
      if (key && seen.insert(std::move(*key)).second) s->add(inst);
    });
  }
}

namespace {

Formula::Ptr rewrite_node(const Formula::Ptr& f, TermPool& pool);

Formula::Ptr rewrite_children(const Formula::Ptr& f, TermPool& pool) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::kLit:
      return f;
    case K::kOr:
      return Formula::Or(rewrite_node(f->left(), pool),
                         rewrite_node(f->right(), pool));
    case K::kNot:
      return Formula::Not(rewrite_node(f->left(), pool));
    case K::kExists:
      return Formula::Exists(f->var(), rewrite_node(f->left(), pool));
    case K::kKnow:
      return Formula::Know(f->level(), rewrite_node(f->left(), pool));
    case K::kMaybe:
      return Formula::Maybe(f->level(), rewrite_node(f->left(), pool));
    case K::kOnlyKnow:
      return Formula::OnlyKnow(rewrite_node(f->left(), pool));
    case K::kGuarantee:
      return Formula::Guarantee(rewrite_node(f->left(), pool));
  }
  return f;
}

Formula::Ptr apply_patterns(Formula::Ptr f) {
  using K = Formula::Kind;
  bool changed = true;
  while (changed) {
    changed = false;
    // forall x K_k a  ==>  K_k forall x a
    if (f->kind() == K::kNot && f->left()->kind() == K::kExists &&
        f->left()->left()->kind() == K::kNot &&
        f->left()->left()->left()->kind() == K::kKnow) {
      const auto& know = f->left()->left()->left();
      f = Formula::Know(know->level(),
                        Formula::Forall(f->left()->var(), know->left()));
      changed = true;
      continue;
    }
    // K_k a && K_k b  ==>  K_k (a && b)
    if (f->kind() == K::kNot && f->left()->kind() == K::kOr) {
      const auto& l = f->left()->left();
      const auto& r = f->left()->right();
      if (l->kind() == K::kNot && l->left()->kind() == K::kKnow &&
          r->kind() == K::kNot && r->left()->kind() == K::kKnow &&
          l->left()->level() == r->left()->level()) {
        f = Formula::Know(l->left()->level(),
                          Formula::And(l->left()->left(),
                                       r->left()->left()));
        changed = true;
        continue;
      }
    }
    // exists x M_k a  ==>  M_k exists x a
    if (f->kind() == K::kExists && f->left()->kind() == K::kMaybe) {
      f = Formula::Maybe(f->left()->level(),
                         Formula::Exists(f->var(), f->left()->left()));
      changed = true;
      continue;
    }
    // M_k a || M_k b  ==>  M_k (a || b)
    if (f->kind() == K::kOr && f->left()->kind() == K::kMaybe &&
        f->right()->kind() == K::kMaybe &&
        f->left()->level() == f->right()->level()) {
      f = Formula::Maybe(f->left()->level(),
                         Formula::Or(f->left()->left(), f->right()->left()));
      changed = true;
      continue;
    }
  }
  return f;
}

Formula::Ptr rewrite_node(const Formula::Ptr& f, TermPool& pool) {
  return apply_patterns(rewrite_children(f, pool));
}

}  // namespace

Formula::Ptr rewrite(const Formula::Ptr& f, TermPool& pool) {
  return rewrite_node(f, pool);
}

}  // namespace limbelief
