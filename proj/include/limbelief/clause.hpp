#ifndef LIMBELIEF_CLAUSE_HPP_
#define LIMBELIEF_CLAUSE_HPP_

#include <initializer_list>
#include <vector>

#include "limbelief/symbols.hpp"

namespace limbelief {

// A clause is a duplicate-free set of literals, kept sorted by packed word so
// set operations are merge-style.  The empty clause is permitted; it is the
// inconsistency witness.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits);
  Clause(std::initializer_list<Literal> lits)
      : Clause(std::vector<Literal>(lits)) {}

  bool empty() const { return lits_.empty(); }
  std::size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const std::vector<Literal>& literals() const { return lits_; }
  bool contains(Literal l) const;

  bool ground(const TermPool& pool) const;

  // A clause is valid when it contains a valid literal, or a literal t = t'
  // together with its negation t != t', or two literals t != n1 and t != n2
  // for distinct names n1, n2.
  bool valid(const TermPool& pool) const;

  // c1 subsumes c2 if every literal of c1 subsumes a literal of c2.
  static bool subsumes(const Clause& c1, const Clause& c2);

  // Unit propagation: remove from this clause all literals complementary
  // to l.
  Clause propagate(Literal l) const;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator<(const Clause& a, const Clause& b) {
    return a.lits_ < b.lits_;
  }

 private:
  std::vector<Literal> lits_;
};

}  // namespace limbelief

#endif  // LIMBELIEF_CLAUSE_HPP_
