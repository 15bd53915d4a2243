#include "limbelief/clause.hpp"

#include <algorithm>

namespace limbelief {

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::contains(Literal l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::ground(const TermPool& pool) const {
  return std::all_of(lits_.begin(), lits_.end(),
                     [&](Literal l) { return pool.lit_ground(l); });
}

bool Clause::valid(const TermPool& pool) const {
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    const Literal l = lits_[i];
    if (pool.lit_valid(l)) return true;
    if (l.pos() && contains(l.flipped())) return true;
    // Sorting groups literals by lhs with negative ones adjacent, so two
    // t != n literals with distinct name right-hand sides sit next to each
    // other.
    if (i + 1 < lits_.size() && !l.pos() && !lits_[i + 1].pos() &&
        l.lhs() == lits_[i + 1].lhs() && l.rhs() != lits_[i + 1].rhs() &&
        l.rhs().is_name() && lits_[i + 1].rhs().is_name()) {
      return true;
    }
  }
  return false;
}

bool Clause::subsumes(const Clause& c1, const Clause& c2) {
  for (Literal l1 : c1.lits_) {
    bool ok = false;
    for (Literal l2 : c2.lits_) {
      if (Literal::subsumes(l1, l2)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

Clause Clause::propagate(Literal l) const {
  std::vector<Literal> out;
  out.reserve(lits_.size());
  for (Literal li : lits_) {
    if (!Literal::complementary(li, l)) out.push_back(li);
  }
  return Clause(std::move(out));
}

}  // namespace limbelief
