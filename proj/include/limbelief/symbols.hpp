#ifndef LIMBELIEF_SYMBOLS_HPP_
#define LIMBELIEF_SYMBOLS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace limbelief {

// Sorts partition the name space; every term carries exactly one sort.
struct SortId {
  std::uint32_t id = 0;
  friend bool operator==(SortId a, SortId b) { return a.id == b.id; }
  friend bool operator!=(SortId a, SortId b) { return a.id != b.id; }
  friend bool operator<(SortId a, SortId b) { return a.id < b.id; }
};

struct FunId {
  std::uint32_t id = 0;
  friend bool operator==(FunId a, FunId b) { return a.id == b.id; }
  friend bool operator<(FunId a, FunId b) { return a.id < b.id; }
};

// Interned term handle.  31 bits wide so that a literal (two handles plus a
// sign) packs into one 64-bit word: bit 0 flags standard names, bits 1..30
// hold the pool index.
class TermId {
 public:
  static constexpr std::uint32_t kMaxIndex = (1u << 30) - 1;

  TermId() = default;
  static TermId make(std::uint32_t index, bool is_name) {
    TermId t;
    t.raw_ = (index << 1) | (is_name ? 1u : 0u);
    return t;
  }
  static TermId from_raw(std::uint32_t raw) {
    TermId t;
    t.raw_ = raw;
    return t;
  }

  std::uint32_t raw() const { return raw_; }
  std::uint32_t index() const { return raw_ >> 1; }
  bool is_name() const { return raw_ & 1u; }
  bool null() const { return raw_ == kNullRaw; }

  friend bool operator==(TermId a, TermId b) { return a.raw_ == b.raw_; }
  friend bool operator!=(TermId a, TermId b) { return a.raw_ != b.raw_; }
  friend bool operator<(TermId a, TermId b) { return a.raw_ < b.raw_; }

 private:
  static constexpr std::uint32_t kNullRaw = 0x7fffffffu;
  std::uint32_t raw_ = kNullRaw;
};

struct TermIdHash {
  std::size_t operator()(TermId t) const {
    return std::hash<std::uint32_t>()(t.raw());
  }
};

// A literal t1 = t2 or t1 != t2.  t1 is a name, variable, or flat function
// application; t2 is a name or variable only.  All three components live in a
// single 64-bit word, so the complement and subsumption tests below are plain
// bitwise operations.
//
// Layout: [63..33] lhs handle, [32] sign (1 for =), [31..1] rhs handle, [0] 0.
class Literal {
 public:
  Literal() = default;

  std::uint64_t packed() const { return repr_; }
  static Literal from_packed(std::uint64_t r) {
    Literal l;
    l.repr_ = r;
    return l;
  }

  TermId lhs() const { return TermId::from_raw(repr_ >> 33); }
  TermId rhs() const {
    return TermId::from_raw((repr_ >> 1) & 0x7fffffffu);
  }
  bool pos() const { return repr_ & kPosMask; }

  Literal flipped() const { return from_packed(repr_ ^ kPosMask); }

  friend bool operator==(Literal a, Literal b) { return a.repr_ == b.repr_; }
  friend bool operator!=(Literal a, Literal b) { return a.repr_ != b.repr_; }
  friend bool operator<(Literal a, Literal b) { return a.repr_ < b.repr_; }

  // Two literals are complementary when they are t = t' and t != t', or
  // t = n1 and t = n2 for distinct names n1, n2.
  static bool complementary(Literal a, Literal b) {
    const std::uint64_t x = a.repr_ ^ b.repr_;
    if (x == kPosMask) return true;
    return (a.repr_ & b.repr_ & kPosMask) && (x & kLhsMask) == 0 &&
           (x & kRhsMask) != 0 && (a.repr_ & b.repr_ & kRhsNameMask);
  }

  // a subsumes b when they are identical, or a is t = n1 and b is t != n2
  // for distinct names n1, n2.
  static bool subsumes(Literal a, Literal b) {
    if (a.repr_ == b.repr_) return true;
    const std::uint64_t x = a.repr_ ^ b.repr_;
    return (a.repr_ & kPosMask) && !(b.repr_ & kPosMask) &&
           (x & kLhsMask) == 0 && (x & kRhsMask) != 0 &&
           (a.repr_ & b.repr_ & kRhsNameMask);
  }

  static constexpr std::uint64_t kPosMask = 1ull << 32;
  static constexpr std::uint64_t kLhsMask = ~((1ull << 33) - 1);
  static constexpr std::uint64_t kRhsMask = ((1ull << 32) - 1) & ~1ull;
  static constexpr std::uint64_t kRhsNameMask = 2ull;  // rhs handle bit 0

 private:
  friend class TermPool;
  Literal(TermId lhs, bool pos, TermId rhs)
      : repr_((std::uint64_t{lhs.raw()} << 33) |
              (pos ? kPosMask : 0) | (std::uint64_t{rhs.raw()} << 1)) {}

  std::uint64_t repr_ = 0;
};

struct LiteralHash {
  std::size_t operator()(Literal l) const {
    return std::hash<std::uint64_t>()(l.packed());
  }
};

class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Central interning pool for sorts, function symbols, and terms.  Structurally
// equal terms always receive the same handle.  The pool is append-only; after
// a single-writer build phase it is safe for concurrent reads, and handles
// and literals are plain values that may be copied across threads.
class TermPool {
 public:
  enum class Kind : std::uint8_t { kName, kVariable, kApplication };

  SortId declare_sort(std::string label = {});
  FunId declare_fun(SortId result_sort, std::uint32_t arity,
                    std::string label = {});

  // Names and variables are addressed by per-sort ordinal; interning is lazy.
  TermId name(SortId sort, std::uint32_t ordinal);
  TermId variable(SortId sort, std::uint32_t ordinal);
  TermId app(FunId fun, std::span<const TermId> args);
  TermId app(FunId fun, std::initializer_list<TermId> args) {
    return app(fun, std::span<const TermId>(args.begin(), args.size()));
  }

  Literal lit(TermId lhs, bool pos, TermId rhs) const;
  Literal eq(TermId lhs, TermId rhs) const { return lit(lhs, true, rhs); }
  Literal neq(TermId lhs, TermId rhs) const { return lit(lhs, false, rhs); }

  Kind kind(TermId t) const { return entry(t).kind; }
  bool is_name(TermId t) const { return t.is_name(); }
  bool is_variable(TermId t) const { return entry(t).kind == Kind::kVariable; }
  bool is_app(TermId t) const { return entry(t).kind == Kind::kApplication; }
  SortId sort(TermId t) const { return entry(t).sort; }
  std::uint32_t ordinal(TermId t) const { return entry(t).ordinal; }
  FunId fun(TermId t) const { return entry(t).fun; }
  std::span<const TermId> args(TermId t) const;

  // A term is primitive iff it is an application whose arguments are all
  // standard names.
  bool is_primitive(TermId t) const { return entry(t).primitive; }
  bool is_ground(TermId t) const;

  std::uint32_t num_sorts() const {
    return static_cast<std::uint32_t>(sorts_.size());
  }
  std::uint32_t fun_arity(FunId f) const { return funs_[f.id].arity; }
  SortId fun_sort(FunId f) const { return funs_[f.id].sort; }

  // The k minimal-ordinal names of the given sort that are not in `avoid`.
  // Deterministic and pure: repeated calls return the same list.
  std::vector<TermId> fresh_names(
      SortId sort, std::size_t k,
      const std::unordered_set<TermId, TermIdHash>& avoid);

  // Literal predicates that need sort information (kept out of the packed
  // word to preserve the 64-bit budget).
  bool lit_valid(Literal l) const;
  bool lit_invalid(Literal l) const;
  bool lit_ground(Literal l) const {
    return is_ground(l.lhs()) && is_ground(l.rhs());
  }

  void set_sort_label(SortId s, std::string label) {
    sorts_[s.id].label = std::move(label);
  }
  const std::string& sort_label(SortId s) const { return sorts_[s.id].label; }
  const std::string& fun_label(FunId f) const { return funs_[f.id].label; }
  void set_term_label(TermId t, std::string label);
  std::string term_str(TermId t) const;
  std::string lit_str(Literal l) const;

 private:
  struct Entry {
    Kind kind;
    bool primitive = false;
    bool ground = false;
    SortId sort;
    std::uint32_t ordinal = 0;
    FunId fun;
    std::uint32_t args_begin = 0, args_end = 0;
    std::string label;
  };
  struct SortInfo {
    std::string label;
  };
  struct FunInfo {
    SortId sort;
    std::uint32_t arity;
    std::string label;
  };

  const Entry& entry(TermId t) const { return entries_[t.index()]; }
  Entry& entry(TermId t) { return entries_[t.index()]; }
  TermId push_entry(Entry e, bool is_name);

  std::vector<SortInfo> sorts_;
  std::vector<FunInfo> funs_;
  std::vector<Entry> entries_;
  std::vector<TermId> arg_store_;
  // (kind, sort, ordinal) -> handle for names and variables
  std::unordered_map<std::uint64_t, TermId> atom_index_;
  // hashed (fun, args) -> handle for applications
  std::unordered_map<std::uint64_t, std::vector<TermId>> app_index_;
};

}  // namespace limbelief

#endif  // LIMBELIEF_SYMBOLS_HPP_
