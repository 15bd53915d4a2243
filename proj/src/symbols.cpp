#include "limbelief/symbols.hpp"

#include <algorithm>
#include <cassert>

namespace limbelief {

SortId TermPool::declare_sort(std::string label) {
  SortId s{static_cast<std::uint32_t>(sorts_.size())};
  if (label.empty()) label = "s" + std::to_string(s.id);
  sorts_.push_back(SortInfo{std::move(label)});
  return s;
}

FunId TermPool::declare_fun(SortId result_sort, std::uint32_t arity,
                            std::string label) {
  FunId f{static_cast<std::uint32_t>(funs_.size())};
  if (label.empty()) label = "f" + std::to_string(f.id);
  funs_.push_back(FunInfo{result_sort, arity, std::move(label)});
  return f;
}

TermId TermPool::push_entry(Entry e, bool is_name) {
  if (entries_.size() > TermId::kMaxIndex) {
    throw capacity_error("term pool exhausted: handle space is 31 bits");
  }
  const auto index = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back(std::move(e));
  return TermId::make(index, is_name);
}

TermId TermPool::name(SortId sort, std::uint32_t ordinal) {
  const std::uint64_t key =
      (std::uint64_t{sort.id} << 33) | (std::uint64_t{ordinal} << 1) | 1u;
  auto it = atom_index_.find(key);
  if (it != atom_index_.end()) return it->second;
  Entry e;
  e.kind = Kind::kName;
  e.ground = true;
  e.sort = sort;
  e.ordinal = ordinal;
  TermId t = push_entry(std::move(e), true);
  atom_index_.emplace(key, t);
  return t;
}

TermId TermPool::variable(SortId sort, std::uint32_t ordinal) {
  const std::uint64_t key =
      (std::uint64_t{sort.id} << 33) | (std::uint64_t{ordinal} << 1);
  auto it = atom_index_.find(key);
  if (it != atom_index_.end()) return it->second;
  Entry e;
  e.kind = Kind::kVariable;
  e.sort = sort;
  e.ordinal = ordinal;
  TermId t = push_entry(std::move(e), false);
  atom_index_.emplace(key, t);
  return t;
}

TermId TermPool::app(FunId fun, std::span<const TermId> args) {
  assert(fun.id < funs_.size());
  if (args.size() != funs_[fun.id].arity) {
    throw std::invalid_argument("arity mismatch for " + funs_[fun.id].label);
  }
  bool primitive = true;
  bool ground = true;
  for (TermId a : args) {
    if (is_app(a)) {
      throw std::invalid_argument("functions cannot be nested");
    }
    if (!a.is_name()) {
      primitive = false;
      ground = false;
    }
  }
  std::uint64_t h = 0x9e3779b97f4a7c15ull + fun.id;
  for (TermId a : args) h = h * 0x100000001b3ull + a.raw();
  auto& bucket = app_index_[h];
  for (TermId cand : bucket) {
    const Entry& e = entry(cand);
    if (e.fun == fun &&
        std::equal(args.begin(), args.end(),
                   arg_store_.begin() + e.args_begin)) {
      return cand;
    }
  }
  Entry e;
  e.kind = Kind::kApplication;
  e.primitive = primitive;
  e.ground = ground;
  e.sort = funs_[fun.id].sort;
  e.fun = fun;
  e.args_begin = static_cast<std::uint32_t>(arg_store_.size());
  arg_store_.insert(arg_store_.end(), args.begin(), args.end());
  e.args_end = static_cast<std::uint32_t>(arg_store_.size());
  TermId t = push_entry(std::move(e), false);
  bucket.push_back(t);
  return t;
}

std::span<const TermId> TermPool::args(TermId t) const {
  const Entry& e = entry(t);
  return {arg_store_.data() + e.args_begin, e.args_end - e.args_begin};
}

bool TermPool::is_ground(TermId t) const { return entry(t).ground; }

Literal TermPool::lit(TermId lhs, bool pos, TermId rhs) const {
  if (is_app(rhs)) {
    throw std::invalid_argument(
        "only the left-hand side of a literal may be a function");
  }
  return Literal(lhs, pos, rhs);
}

std::vector<TermId> TermPool::fresh_names(
    SortId sort, std::size_t k,
    const std::unordered_set<TermId, TermIdHash>& avoid) {
  std::vector<TermId> out;
  out.reserve(k);
  for (std::uint32_t ord = 0; out.size() < k; ++ord) {
    TermId n = name(sort, ord);
    if (!avoid.count(n)) out.push_back(n);
  }
  return out;
}

bool TermPool::lit_valid(Literal l) const {
  const TermId lhs = l.lhs(), rhs = l.rhs();
  if (l.pos()) return lhs == rhs;
  if (lhs.is_name() && rhs.is_name() && lhs != rhs) return true;
  return sort(lhs) != sort(rhs);
}

bool TermPool::lit_invalid(Literal l) const {
  const TermId lhs = l.lhs(), rhs = l.rhs();
  if (!l.pos()) return lhs == rhs;
  if (lhs.is_name() && rhs.is_name() && lhs != rhs) return true;
  return sort(lhs) != sort(rhs);
}

void TermPool::set_term_label(TermId t, std::string label) {
  entry(t).label = std::move(label);
}

std::string TermPool::term_str(TermId t) const {
  const Entry& e = entry(t);
  if (!e.label.empty()) return e.label;
  switch (e.kind) {
    case Kind::kName:
      return "#" + sorts_[e.sort.id].label + std::to_string(e.ordinal);
    case Kind::kVariable:
      return "x" + std::to_string(e.ordinal) + ":" + sorts_[e.sort.id].label;
    case Kind::kApplication: {
      std::string s = funs_[e.fun.id].label;
      if (e.args_begin != e.args_end) {
        s += "(";
        for (std::uint32_t i = e.args_begin; i != e.args_end; ++i) {
          if (i != e.args_begin) s += ", ";
          s += term_str(arg_store_[i]);
        }
        s += ")";
      }
      return s;
    }
  }
  return "?";
}

std::string TermPool::lit_str(Literal l) const {
  return term_str(l.lhs()) + (l.pos() ? " == " : " != ") + term_str(l.rhs());
}

}  // namespace limbelief
