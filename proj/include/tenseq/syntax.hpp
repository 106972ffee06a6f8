// Core syntax for a display-style sequent calculus of tense logic:
// formulas, antecedent structures, paths into structures, and sequents.
// All trees are immutable and shared; equality is purely syntactic.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenseq {

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class FKind : std::uint8_t {
  Var,   // propositional variable p0, p1, ...
  Top,   // T
  Bot,   // F
  Impl,  // a -> b   (negation ~a is sugar for a -> F)
  And,   // a & b
  Or,    // a | b
  Dia,   // dia a    (forward diamond)
  Box,   // box a    (forward box)
  BDia,  // bdia a   (backward diamond)
  BBox,  // bbox a   (backward box)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  unsigned var = 0;        // Var only
  FormulaPtr lhs, rhs;     // binary: both; unary: lhs only

  Formula(FKind k, unsigned v, FormulaPtr l, FormulaPtr r)
      : kind(k), var(v), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline FormulaPtr fvar(unsigned n) {
  return std::make_shared<Formula>(FKind::Var, n, nullptr, nullptr);
}
inline FormulaPtr ftop() {
  static const FormulaPtr t = std::make_shared<Formula>(FKind::Top, 0, nullptr, nullptr);
  return t;
}
inline FormulaPtr fbot() {
  static const FormulaPtr b = std::make_shared<Formula>(FKind::Bot, 0, nullptr, nullptr);
  return b;
}
inline FormulaPtr fbin(FKind k, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(k, 0, std::move(a), std::move(b));
}
inline FormulaPtr fimpl(FormulaPtr a, FormulaPtr b) { return fbin(FKind::Impl, std::move(a), std::move(b)); }
inline FormulaPtr fand(FormulaPtr a, FormulaPtr b) { return fbin(FKind::And, std::move(a), std::move(b)); }
inline FormulaPtr for_(FormulaPtr a, FormulaPtr b) { return fbin(FKind::Or, std::move(a), std::move(b)); }
inline FormulaPtr funary(FKind k, FormulaPtr a) {
  return std::make_shared<Formula>(k, 0, std::move(a), nullptr);
}
inline FormulaPtr fdia(FormulaPtr a) { return funary(FKind::Dia, std::move(a)); }
inline FormulaPtr fbox(FormulaPtr a) { return funary(FKind::Box, std::move(a)); }
inline FormulaPtr fbdia(FormulaPtr a) { return funary(FKind::BDia, std::move(a)); }
inline FormulaPtr fbbox(FormulaPtr a) { return funary(FKind::BBox, std::move(a)); }
inline FormulaPtr fneg(FormulaPtr a) { return fimpl(std::move(a), fbot()); }

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Var: return a->var == b->var;
    case FKind::Top:
    case FKind::Bot: return true;
    case FKind::Impl:
    case FKind::And:
    case FKind::Or: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    default: return equal(a->lhs, b->lhs);  // unary modalities
  }
}

// Atoms are variables and the constants T, F.
inline bool is_atomic(const FormulaPtr& f) {
  return f->kind == FKind::Var || f->kind == FKind::Top || f->kind == FKind::Bot;
}

// Number of connective/modality constructors; atoms count 0.
inline int complexity(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Var:
    case FKind::Top:
    case FKind::Bot: return 0;
    case FKind::Impl:
    case FKind::And:
    case FKind::Or: return 1 + complexity(f->lhs) + complexity(f->rhs);
    default: return 1 + complexity(f->lhs);
  }
}

inline int size(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Var:
    case FKind::Top:
    case FKind::Bot: return 1;
    case FKind::Impl:
    case FKind::And:
    case FKind::Or: return 1 + size(f->lhs) + size(f->rhs);
    default: return 1 + size(f->lhs);
  }
}

// ---------------------------------------------------------------------------
// Structures (antecedent side)
// ---------------------------------------------------------------------------
//
// Empty may occur only as a whole antecedent, never embedded inside a larger
// structure.  Constructors below enforce this.

enum class SKind : std::uint8_t {
  Empty,   // the empty antecedent (only at top level)
  Leaf,    // a single formula
  Comma,   // binary juxtaposition X, Y
  Circ,    // o(X)
  Bullet,  // b(X)
};

struct Structure;
using StructPtr = std::shared_ptr<const Structure>;

struct Structure {
  SKind kind;
  FormulaPtr f;            // Leaf only
  StructPtr left, right;   // Comma: both; Circ/Bullet: left only

  Structure(SKind k, FormulaPtr ff, StructPtr l, StructPtr r)
      : kind(k), f(std::move(ff)), left(std::move(l)), right(std::move(r)) {}
};

inline StructPtr sempty() {
  static const StructPtr e = std::make_shared<Structure>(SKind::Empty, nullptr, nullptr, nullptr);
  return e;
}
inline StructPtr sleaf(FormulaPtr f) {
  return std::make_shared<Structure>(SKind::Leaf, std::move(f), nullptr, nullptr);
}
inline StructPtr scomma(StructPtr a, StructPtr b) {
  if (a->kind == SKind::Empty || b->kind == SKind::Empty)
    throw std::logic_error("scomma: embedded empty structure");
  return std::make_shared<Structure>(SKind::Comma, nullptr, std::move(a), std::move(b));
}
inline StructPtr scirc(StructPtr a) {
  if (a->kind == SKind::Empty) throw std::logic_error("scirc: embedded empty structure");
  return std::make_shared<Structure>(SKind::Circ, nullptr, std::move(a), nullptr);
}
inline StructPtr sbullet(StructPtr a) {
  if (a->kind == SKind::Empty) throw std::logic_error("sbullet: embedded empty structure");
  return std::make_shared<Structure>(SKind::Bullet, nullptr, std::move(a), nullptr);
}

inline bool equal(const StructPtr& a, const StructPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SKind::Empty: return true;
    case SKind::Leaf: return equal(a->f, b->f);
    case SKind::Comma: return equal(a->left, b->left) && equal(a->right, b->right);
    default: return equal(a->left, b->left);  // Circ/Bullet
  }
}

inline int size(const StructPtr& s) {
  switch (s->kind) {
    case SKind::Empty: return 0;
    case SKind::Leaf: return size(s->f);
    case SKind::Comma: return 1 + size(s->left) + size(s->right);
    default: return 1 + size(s->left);
  }
}

// The f-translation: collapse a structure into a single formula.
//   f(empty) = T, f(a) = a, f(X, Y) = f(X) & f(Y), f(o X) = dia f(X),
//   f(b X) = bdia f(X).
inline FormulaPtr f_translate(const StructPtr& s) {
  switch (s->kind) {
    case SKind::Empty: return ftop();
    case SKind::Leaf: return s->f;
    case SKind::Comma: return fand(f_translate(s->left), f_translate(s->right));
    case SKind::Circ: return fdia(f_translate(s->left));
    default: return fbdia(f_translate(s->left));  // Bullet
  }
}

// ---------------------------------------------------------------------------
// Paths into structures
// ---------------------------------------------------------------------------
//
// A path addresses a subtree: L/R descend into a Comma's children, U descends
// under a Circ or Bullet.  The empty path addresses the whole structure.

enum class Step : std::uint8_t { L, R, U };
using Path = std::vector<Step>;

inline std::string path_to_string(const Path& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += (p[i] == Step::L ? 'L' : p[i] == Step::R ? 'R' : 'U');
  }
  return out;
}

inline std::optional<Path> path_from_string(const std::string& s) {
  if (s == "e") return Path{};
  Path p;
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case 'L': p.push_back(Step::L); break;
      case 'R': p.push_back(Step::R); break;
      case 'U': p.push_back(Step::U); break;
      default: return std::nullopt;
    }
    if (i + 1 < s.size()) {
      if (s[i + 1] != '.') return std::nullopt;
      ++i;
      if (i + 1 >= s.size()) return std::nullopt;  // trailing dot
    }
  }
  return p.empty() ? std::nullopt : std::optional<Path>(p);  // "" is invalid; root is "e"
}

// Subtree at a path, or null if the path leaves the tree.
inline StructPtr subtree_at(const StructPtr& s, const Path& p, std::size_t from = 0) {
  if (from == p.size()) return s;
  switch (s->kind) {
    case SKind::Comma:
      if (p[from] == Step::L) return subtree_at(s->left, p, from + 1);
      if (p[from] == Step::R) return subtree_at(s->right, p, from + 1);
      return nullptr;
    case SKind::Circ:
    case SKind::Bullet:
      if (p[from] == Step::U) return subtree_at(s->left, p, from + 1);
      return nullptr;
    default:
      return nullptr;  // Leaf/Empty have no children
  }
}

// Replace the subtree at a path.  Null if the path is invalid.  The
// replacement must not be Empty unless the path is the whole antecedent
// (callers that permit that use the path == root case directly).
inline StructPtr replace_at(const StructPtr& s, const Path& p, const StructPtr& repl,
                            std::size_t from = 0) {
  if (from == p.size()) return repl;
  switch (s->kind) {
    case SKind::Comma:
      if (p[from] == Step::L) {
        auto l = replace_at(s->left, p, repl, from + 1);
        return l ? scomma(l, s->right) : nullptr;
      }
      if (p[from] == Step::R) {
        auto r = replace_at(s->right, p, repl, from + 1);
        return r ? scomma(s->left, r) : nullptr;
      }
      return nullptr;
    case SKind::Circ:
      if (p[from] == Step::U) {
        auto u = replace_at(s->left, p, repl, from + 1);
        return u ? scirc(u) : nullptr;
      }
      return nullptr;
    case SKind::Bullet:
      if (p[from] == Step::U) {
        auto u = replace_at(s->left, p, repl, from + 1);
        return u ? sbullet(u) : nullptr;
      }
      return nullptr;
    default:
      return nullptr;
  }
}

inline bool path_less(const Path& a, const Path& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Step x, Step y) { return static_cast<int>(x) < static_cast<int>(y); });
}

inline bool is_prefix(const Path& pre, const Path& p) {
  if (pre.size() > p.size()) return false;
  for (std::size_t i = 0; i < pre.size(); ++i)
    if (pre[i] != p[i]) return false;
  return true;
}

// Concatenate paths.
inline Path operator+(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// All paths (pre-order) of leaves whose formula equals f.
inline void occurrences_rec(const StructPtr& s, const FormulaPtr& f, Path& cur,
                            std::vector<Path>& out) {
  switch (s->kind) {
    case SKind::Leaf:
      if (equal(s->f, f)) out.push_back(cur);
      return;
    case SKind::Comma:
      cur.push_back(Step::L);
      occurrences_rec(s->left, f, cur, out);
      cur.back() = Step::R;
      occurrences_rec(s->right, f, cur, out);
      cur.pop_back();
      return;
    case SKind::Circ:
    case SKind::Bullet:
      cur.push_back(Step::U);
      occurrences_rec(s->left, f, cur, out);
      cur.pop_back();
      return;
    default:
      return;  // Empty
  }
}

inline std::vector<Path> occurrences(const StructPtr& s, const FormulaPtr& f) {
  std::vector<Path> out;
  Path cur;
  occurrences_rec(s, f, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Contexts: a structure with one or several pairwise-disjoint holes
// ---------------------------------------------------------------------------

struct MultiContext {
  StructPtr base;            // contents at the hole positions are ignored
  std::vector<Path> holes;   // pairwise non-overlapping (no prefix relation)
};

inline bool holes_disjoint(const std::vector<Path>& holes) {
  for (std::size_t i = 0; i < holes.size(); ++i)
    for (std::size_t j = 0; j < holes.size(); ++j)
      if (i != j && is_prefix(holes[i], holes[j])) return false;
  return true;
}

// Plug d into every hole simultaneously.  Throws on invalid/overlapping holes.
inline StructPtr plug(const MultiContext& c, const StructPtr& d) {
  if (!holes_disjoint(c.holes)) throw std::logic_error("plug: overlapping holes");
  StructPtr s = c.base;
  for (const Path& h : c.holes) {
    if (d->kind == SKind::Empty && !h.empty())
      throw std::logic_error("plug: embedded empty structure");
    s = h.empty() ? d : replace_at(s, h, d);
    if (!s) throw std::logic_error("plug: invalid hole path");
  }
  return s;
}

// Simultaneous replacement at several disjoint paths (used by the kernel).
inline StructPtr replace_many(const StructPtr& s, const std::vector<Path>& holes,
                              const StructPtr& repl) {
  return plug(MultiContext{s, holes}, repl);
}

// ---------------------------------------------------------------------------
// Sequents
// ---------------------------------------------------------------------------

struct Sequent {
  StructPtr ant;   // antecedent structure (may be Empty)
  FormulaPtr suc;  // succedent formula
};

inline bool equal(const Sequent& a, const Sequent& b) {
  return equal(a.ant, b.ant) && equal(a.suc, b.suc);
}

inline int size(const Sequent& s) { return size(s.ant) + size(s.suc); }

// Maximal non-Comma subtrees along a Comma spine, with their paths relative
// to the spine root.  A non-Comma structure is its own single component.
inline void comma_components_rec(const StructPtr& s, Path& cur,
                                 std::vector<std::pair<Path, StructPtr>>& out) {
  if (s->kind == SKind::Comma) {
    cur.push_back(Step::L);
    comma_components_rec(s->left, cur, out);
    cur.back() = Step::R;
    comma_components_rec(s->right, cur, out);
    cur.pop_back();
  } else {
    out.emplace_back(cur, s);
  }
}

inline std::vector<std::pair<Path, StructPtr>> comma_components(const StructPtr& s) {
  std::vector<std::pair<Path, StructPtr>> out;
  Path cur;
  comma_components_rec(s, cur, out);
  return out;
}

}  // namespace tenseq
