#include "limbelief/setup.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace limbelief {

namespace {

bool vec_contains(const std::vector<TermId>& v, TermId t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

}  // namespace

bool Setup::killed(Literal l) const {
  auto it = state_.find(l.lhs());
  if (it == state_.end()) return false;
  const TermState& st = it->second;
  if (l.pos()) {
    if (!st.value.null() && st.value != l.rhs()) return true;
    return vec_contains(st.forbidden, l.rhs());
  }
  return !st.value.null() && st.value == l.rhs();
}

bool Setup::unit_subsumes_literal(Literal l) const {
  auto it = state_.find(l.lhs());
  if (it == state_.end()) return false;
  const TermState& st = it->second;
  if (l.pos()) return !st.value.null() && st.value == l.rhs();
  if (!st.value.null() && st.value != l.rhs()) return true;
  return vec_contains(st.forbidden, l.rhs());
}

void Setup::set_empty_flag() {
  if (empty_clause_) return;
  empty_clause_ = true;
  trail_.push_back({TrailKind::kEmptyFlagSet, TermId()});
  queue_.clear();
}

Setup::AddResult Setup::enqueue_unit(Literal l) {
  assert(pool_->is_app(l.lhs()));
  TermState& st = state_[l.lhs()];
  if (l.pos()) {
    if (!st.value.null()) {
      if (st.value == l.rhs()) return AddResult::kOk;
      set_empty_flag();  // complementary value units
      return AddResult::kEmptyClause;
    }
    if (vec_contains(st.forbidden, l.rhs())) {
      set_empty_flag();
      return AddResult::kEmptyClause;
    }
    st.value = l.rhs();
    trail_.push_back({TrailKind::kValueSet, l.lhs()});
    units_.push_back(l);
    queue_.push_back(l);
  } else {
    if (!st.value.null()) {
      if (st.value == l.rhs()) {
        set_empty_flag();
        return AddResult::kEmptyClause;
      }
      return AddResult::kOk;  // subsumed by the value unit, propagates nothing
    }
    if (vec_contains(st.forbidden, l.rhs())) return AddResult::kOk;
    st.forbidden.push_back(l.rhs());
    trail_.push_back({TrailKind::kForbiddenPushed, l.lhs()});
    units_.push_back(l);
    queue_.push_back(l);
  }
  return AddResult::kOk;
}

Setup::AddResult Setup::add_unit_literal(Literal l) {
  return add(Clause{l});
}

Setup::AddResult Setup::add(const Clause& c) {
  assert(c.ground(*pool_));
  if (c.valid(*pool_)) {
    return empty_clause_ ? AddResult::kEmptyClause : AddResult::kOk;
  }
  std::vector<Literal> lits;
  lits.reserve(c.size());
  for (Literal l : c) {
    if (pool_->lit_invalid(l)) continue;
    if (killed(l)) continue;
    lits.push_back(l);
  }
  if (lits.empty()) {
    set_empty_flag();
    return AddResult::kEmptyClause;
  }
  if (lits.size() == 1) {
    enqueue_unit(lits[0]);
    propagate();
    return empty_clause_ ? AddResult::kEmptyClause : AddResult::kOk;
  }
  const auto ci = static_cast<std::uint32_t>(clauses_.size());
  StoredClause sc;
  sc.lits = std::move(lits);
  sc.watch[0] = 0;
  sc.watch[1] = 1;
  clauses_.push_back(std::move(sc));
  trail_.push_back({TrailKind::kClauseAdded, TermId()});
  const StoredClause& stored = clauses_.back();
  watches_[stored.lits[0].lhs()].push_back(ci << 1);
  watches_[stored.lits[1].lhs()].push_back((ci << 1) | 1);
  TermId prev;
  for (Literal l : stored.lits) {
    if (!prev.null() && l.lhs() == prev) continue;
    prev = l.lhs();
    occurs_[l.lhs()].push_back(ci);
  }
  return empty_clause_ ? AddResult::kEmptyClause : AddResult::kOk;
}

void Setup::propagate() {
  while (!queue_.empty() && !empty_clause_) {
    const Literal u = queue_.back();
    queue_.pop_back();
    auto wit = watches_.find(u.lhs());
    if (wit == watches_.end()) continue;
    std::vector<std::uint32_t>& wlist = wit->second;
    for (std::size_t i = 0; i < wlist.size();) {
      const std::uint32_t entry = wlist[i];
      const std::uint32_t ci = entry >> 1;
      const std::uint32_t slot = entry & 1;
      StoredClause& sc = clauses_[ci];
      const Literal wl = sc.lits[sc.watch[slot]];
      assert(wl.lhs() == u.lhs());
      if (!killed(wl)) {
        ++i;
        continue;
      }
      const std::uint32_t other_idx = sc.watch[slot ^ 1];
      std::int64_t repl = -1;
      for (std::uint32_t j = 0; j < sc.lits.size(); ++j) {
        if (j == other_idx || j == sc.watch[slot]) continue;
        if (!killed(sc.lits[j])) {
          repl = j;
          break;
        }
      }
      if (repl >= 0) {
        sc.watch[slot] = static_cast<std::uint32_t>(repl);
        wlist[i] = wlist.back();
        wlist.pop_back();
        // element references in unordered_map survive inserts
        watches_[sc.lits[repl].lhs()].push_back(entry);
      } else {
        const Literal ol = sc.lits[other_idx];
        if (killed(ol)) {
          set_empty_flag();
          return;
        }
        if (enqueue_unit(ol) == AddResult::kEmptyClause) return;
        ++i;
      }
    }
  }
}

bool Setup::stored_subsumes(const Clause& c) const {
  std::vector<std::uint32_t> cands;
  for (Literal l : c) {
    auto it = occurs_.find(l.lhs());
    if (it == occurs_.end()) continue;
    cands.insert(cands.end(), it->second.begin(), it->second.end());
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (std::uint32_t ci : cands) {
    const StoredClause& sc = clauses_[ci];
    bool all = true;
    for (Literal l1 : sc.lits) {
      if (killed(l1)) continue;
      bool one = false;
      for (Literal l2 : c) {
        if (Literal::subsumes(l1, l2)) {
          one = true;
          break;
        }
      }
      if (!one) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool Setup::subsumes(const Clause& c) const {
  if (empty_clause_) return true;
  if (c.valid(*pool_)) return true;
  for (Literal l : c) {
    if (unit_subsumes_literal(l)) return true;
  }
  return stored_subsumes(c);
}

std::optional<TermId> Setup::determined_value(TermId t) const {
  auto it = state_.find(t);
  if (it == state_.end() || it->second.value.null()) return std::nullopt;
  return it->second.value;
}

Setup::TermValue Setup::determines(TermId t) const {
  TermValue tv;
  auto it = state_.find(t);
  if (it == state_.end()) return tv;
  if (!it->second.value.null()) {
    tv.kind = TermValue::kValue;
    tv.value = it->second.value;
  } else if (!it->second.forbidden.empty()) {
    tv.kind = TermValue::kForbidden;
    tv.forbidden = it->second.forbidden;
  }
  return tv;
}

std::vector<Literal> Setup::live_literals(const StoredClause& sc) const {
  std::vector<Literal> live;
  live.reserve(sc.lits.size());
  for (Literal l : sc.lits) {
    if (!killed(l)) live.push_back(l);
  }
  return live;
}

bool Setup::clause_wp_dropped(std::size_t idx,
                              const std::vector<Literal>& live) const {
  for (Literal l : live) {
    if (unit_subsumes_literal(l)) return true;
  }
  std::vector<std::uint32_t> cands;
  for (Literal l : live) {
    auto it = occurs_.find(l.lhs());
    if (it == occurs_.end()) continue;
    cands.insert(cands.end(), it->second.begin(), it->second.end());
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (std::uint32_t cj : cands) {
    if (cj == idx) continue;
    const StoredClause& sc = clauses_[cj];
    bool all = true;
    bool any_live = false;
    for (Literal l1 : sc.lits) {
      if (killed(l1)) continue;
      any_live = true;
      bool one = false;
      for (Literal l2 : live) {
        if (Literal::subsumes(l1, l2)) {
          one = true;
          break;
        }
      }
      if (!one) {
        all = false;
        break;
      }
    }
    if (any_live && all) return true;
  }
  return false;
}

bool Setup::potentially_inconsistent() const {
  if (empty_clause_) return true;
  // Complementary pair among the literals of WP(s): some term with two
  // distinct positive values, or a positive value also occurring negatively.
  std::unordered_map<TermId, std::pair<std::vector<TermId>, std::vector<TermId>>,
                     TermIdHash>
      by_term;
  bool conflict = false;
  for_each_wp_clause([&](const Clause& c) {
    if (conflict) return;
    for (Literal l : c) {
      auto& [pos_names, neg_names] = by_term[l.lhs()];
      if (l.pos()) {
        if (!vec_contains(pos_names, l.rhs())) pos_names.push_back(l.rhs());
        if (pos_names.size() >= 2 || vec_contains(neg_names, l.rhs())) {
          conflict = true;
          return;
        }
      } else {
        if (!vec_contains(neg_names, l.rhs())) neg_names.push_back(l.rhs());
        if (vec_contains(pos_names, l.rhs())) {
          conflict = true;
          return;
        }
      }
    }
  });
  return conflict;
}

Setup Setup::restrict_to(std::span<const TermId> terms) const {
  Setup out(pool_);
  if (empty_clause_) {
    out.add(Clause{});
    return out;
  }
  std::vector<Clause> wp;
  for_each_wp_clause([&](const Clause& c) { wp.push_back(c); });

  std::unordered_set<TermId, TermIdHash> seed(terms.begin(), terms.end());
  std::unordered_map<TermId, std::vector<std::size_t>, TermIdHash> by_term;
  for (std::size_t i = 0; i < wp.size(); ++i) {
    for (Literal l : wp[i]) by_term[l.lhs()].push_back(i);
  }
  std::vector<bool> in(wp.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < wp.size(); ++i) {
    bool hit = false;
    for (Literal l : wp[i]) {
      if (seed.count(l.lhs())) {
        hit = true;
        break;
      }
    }
    if (hit && !in[i]) {
      in[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (Literal l : wp[i]) {
      for (std::size_t j : by_term[l.lhs()]) {
        if (!in[j]) {
          in[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  for (std::size_t i = 0; i < wp.size(); ++i) {
    if (in[i]) out.add(wp[i]);
  }
  return out;
}

std::optional<Setup> Setup::restrict_reachable_opt(
    std::span<const TermId> terms) const {
  if (empty_clause_) {
    Setup out(pool_);
    out.add(Clause{});
    return out;
  }
  // BFS over the term-occurrence index; no subsumption filtering.
  std::unordered_set<TermId, TermIdHash> seen;
  std::vector<TermId> stack;
  for (TermId t : terms) {
    if (seen.insert(t).second) stack.push_back(t);
  }
  std::vector<bool> in(clauses_.size(), false);
  std::size_t n_clauses = 0;
  auto visit_clause = [&](std::uint32_t ci) {
    if (in[ci]) return;
    in[ci] = true;
    ++n_clauses;
    for (Literal l : clauses_[ci].lits) {
      if (seen.insert(l.lhs()).second) stack.push_back(l.lhs());
    }
  };
  while (!stack.empty()) {
    const TermId t = stack.back();
    stack.pop_back();
    auto it = occurs_.find(t);
    if (it != occurs_.end()) {
      for (std::uint32_t ci : it->second) visit_clause(ci);
    }
  }
  if (n_clauses == clauses_.size()) {
    bool all_units = true;
    for (Literal u : units_) {
      if (!seen.count(u.lhs())) {
        all_units = false;
        break;
      }
    }
    if (all_units) return std::nullopt;  // identity restriction
  }
  Setup out(pool_);
  for (Literal u : units_) {
    if (seen.count(u.lhs())) out.add(Clause{u});
  }
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (in[i]) out.add(Clause(clauses_[i].lits));
  }
  return out;
}

Setup Setup::restrict_reachable(std::span<const TermId> terms) const {
  auto r = restrict_reachable_opt(terms);
  if (r) return std::move(*r);
  // Identity: rebuild an equivalent copy.
  Setup out(pool_);
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    out.add(Clause(clauses_[i].lits));
  }
  for (Literal u : units_) out.add(Clause{u});
  return out;
}

Setup::Mark Setup::mark() {
  mark_stack_.push_back(trail_.size());
  return Mark{trail_.size(), mark_stack_.size()};
}

void Setup::undo(Mark m) {
  if (mark_stack_.empty() || mark_stack_.size() != m.depth ||
      mark_stack_.back() != m.trail) {
    throw std::logic_error("Setup::undo: checkpoints must unwind LIFO");
  }
  while (trail_.size() > m.trail) {
    const TrailOp op = trail_.back();
    trail_.pop_back();
    switch (op.kind) {
      case TrailKind::kClauseAdded: {
        const auto ci = static_cast<std::uint32_t>(clauses_.size() - 1);
        StoredClause& sc = clauses_.back();
        for (std::uint32_t slot = 0; slot < 2; ++slot) {
          auto& wlist = watches_[sc.lits[sc.watch[slot]].lhs()];
          const std::uint32_t entry = (ci << 1) | slot;
          auto it = std::find(wlist.rbegin(), wlist.rend(), entry);
          assert(it != wlist.rend());
          *it = wlist.back();
          wlist.pop_back();
        }
        TermId prev;
        for (Literal l : sc.lits) {
          if (!prev.null() && l.lhs() == prev) continue;
          prev = l.lhs();
          auto& olist = occurs_[l.lhs()];
          assert(!olist.empty() && olist.back() == ci);
          olist.pop_back();
        }
        clauses_.pop_back();
        break;
      }
      case TrailKind::kValueSet:
        state_[op.term].value = TermId();
        units_.pop_back();
        break;
      case TrailKind::kForbiddenPushed:
        state_[op.term].forbidden.pop_back();
        units_.pop_back();
        break;
      case TrailKind::kEmptyFlagSet:
        empty_clause_ = false;
        break;
    }
  }
  mark_stack_.pop_back();
  queue_.clear();
}

Setup::AddResult Setup::add_isomorphic(Literal l,
                                       std::span<const TermId> candidates,
                                       std::vector<Literal>* added) {
  assert(l.pos());
  assert(pool_->is_primitive(l.lhs()));
  TermPool& pool = *pool_;

  std::vector<TermId> positions(pool.args(l.lhs()).begin(),
                                pool.args(l.lhs()).end());
  positions.push_back(l.rhs());
  std::vector<TermId> slot_names;
  std::vector<std::size_t> pos_slot(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    auto it = std::find(slot_names.begin(), slot_names.end(), positions[i]);
    if (it == slot_names.end()) {
      pos_slot[i] = slot_names.size();
      slot_names.push_back(positions[i]);
    } else {
      pos_slot[i] = static_cast<std::size_t>(it - slot_names.begin());
    }
  }

  // Per-slot candidate lists: the slot's own name first, then the supplied
  // universe names of the matching sort.
  std::vector<std::vector<TermId>> slot_cands(slot_names.size());
  for (std::size_t s = 0; s < slot_names.size(); ++s) {
    slot_cands[s].push_back(slot_names[s]);
    for (TermId n : candidates) {
      if (pool.sort(n) == pool.sort(slot_names[s]) && n != slot_names[s]) {
        slot_cands[s].push_back(n);
      }
    }
  }

  const FunId fun = pool.fun(l.lhs());
  std::vector<std::size_t> idx(slot_names.size(), 0);
  std::vector<TermId> assigned(slot_names.size());
  while (true) {
    bool injective = true;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      assigned[s] = slot_cands[s][idx[s]];
      for (std::size_t r = 0; r < s; ++r) {
        if (assigned[r] == assigned[s]) {
          injective = false;
          break;
        }
      }
      if (!injective) break;
    }
    if (injective) {
      std::vector<TermId> args;
      args.reserve(positions.size() - 1);
      for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
        args.push_back(assigned[pos_slot[i]]);
      }
      const TermId lhs = pool.app(fun, args);
      const Literal cand = pool.eq(lhs, assigned[pos_slot.back()]);
      if (!subsumes(Clause{cand.flipped()})) {
        if (added) added->push_back(cand);
        if (add(Clause{cand}) == AddResult::kEmptyClause) {
          return AddResult::kEmptyClause;
        }
      }
    }
    std::size_t s = 0;
    for (; s < idx.size(); ++s) {
      if (++idx[s] < slot_cands[s].size()) break;
      idx[s] = 0;
    }
    if (s == idx.size()) break;
  }
  return empty_clause_ ? AddResult::kEmptyClause : AddResult::kOk;
}

std::vector<TermId> Setup::lhs_terms() const {
  std::vector<TermId> out;
  out.reserve(occurs_.size() + state_.size());
  for (const auto& [t, list] : occurs_) {
    if (!list.empty()) out.push_back(t);
  }
  for (const auto& [t, st] : state_) {
    if (!st.value.null() || !st.forbidden.empty()) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TermId> Setup::stored_pair_names(TermId t) const {
  std::vector<TermId> out;
  auto oit = occurs_.find(t);
  if (oit != occurs_.end()) {
    for (std::uint32_t ci : oit->second) {
      for (Literal l : clauses_[ci].lits) {
        if (l.lhs() == t && l.rhs().is_name() && !vec_contains(out, l.rhs())) {
          out.push_back(l.rhs());
        }
      }
    }
  }
  return out;
}

std::vector<TermId> Setup::names_paired_with(TermId t) const {
  std::vector<TermId> out = stored_pair_names(t);
  auto push = [&](TermId n) {
    if (!vec_contains(out, n)) out.push_back(n);
  };
  auto sit = state_.find(t);
  if (sit != state_.end()) {
    if (!sit->second.value.null()) push(sit->second.value);
    for (TermId n : sit->second.forbidden) push(n);
  }
  return out;
}

}  // namespace limbelief
