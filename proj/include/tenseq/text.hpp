// Concrete syntax: parsing and printing of formulas, structures and sequents.
//
// Formula grammar (tightest to loosest):
//   atoms p<digits>, T, F; prefix dia/box/bdia/bbox/~; then & , then | ,
//   then -> (right associative).  & and | are left associative.
// Structure grammar: a formula, o(<s>), b(<s>), (<s>), or a comma list
//   (comma is loosest, left associative).
// Sequent: <structure> => <formula>, where an absent antecedent denotes the
//   empty structure.
//
// Printing is canonical: minimal parentheses, ~ re-sugared for a -> F, and
// left-nested comma chains printed flat.  parse(print(x)) == x.
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "tenseq/syntax.hpp"

namespace tenseq {

// Parse failure, reporting a byte offset into the input.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  FormulaPtr parse_formula_all() {
    FormulaPtr f = formula();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

  StructPtr parse_structure_all() {
    StructPtr st = structure();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return st;
  }

  Sequent parse_sequent_all() {
    skip_ws();
    StructPtr ant;
    if (peek_arrow()) {
      ant = sempty();
    } else {
      ant = structure();
    }
    skip_ws();
    if (!consume_arrow()) fail("expected '=>'");
    FormulaPtr suc = formula();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return Sequent{ant, suc};
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_arrow() {
    skip_ws();
    return pos_ + 1 < s_.size() && s_[pos_] == '=' && s_[pos_ + 1] == '>';
  }

  bool consume_arrow() {
    if (peek_arrow()) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  // Reads an identifier-shaped token without consuming it on mismatch.
  std::string peek_word() {
    skip_ws();
    std::size_t i = pos_;
    std::string w;
    while (i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) || s_[i] == '_')) {
      w += s_[i];
      ++i;
    }
    return w;
  }

  void consume_word(const std::string& w) { skip_ws(); pos_ += w.size(); }

  // formula := or_expr ('->' formula)?            (right associative)
  FormulaPtr formula() {
    FormulaPtr lhs = or_expr();
    skip_ws();
    if (pos_ + 1 < s_.size() && s_[pos_] == '-' && s_[pos_ + 1] == '>') {
      pos_ += 2;
      return fimpl(lhs, formula());
    }
    return lhs;
  }

  // or_expr := and_expr ('|' and_expr)*           (left associative)
  FormulaPtr or_expr() {
    FormulaPtr lhs = and_expr();
    while (consume('|')) lhs = for_(lhs, and_expr());
    return lhs;
  }

  // and_expr := unary ('&' unary)*                (left associative)
  FormulaPtr and_expr() {
    FormulaPtr lhs = unary();
    while (consume('&')) lhs = fand(lhs, unary());
    return lhs;
  }

  // unary := ('~' | 'dia' | 'box' | 'bdia' | 'bbox') unary | primary
  FormulaPtr unary() {
    if (consume('~')) return fneg(unary());
    std::string w = peek_word();
    if (w == "dia") { consume_word(w); return fdia(unary()); }
    if (w == "box") { consume_word(w); return fbox(unary()); }
    if (w == "bdia") { consume_word(w); return fbdia(unary()); }
    if (w == "bbox") { consume_word(w); return fbbox(unary()); }
    return primary();
  }

  // primary := 'T' | 'F' | p<digits> | '(' formula ')'
  FormulaPtr primary() {
    skip_ws();
    if (consume('(')) {
      FormulaPtr f = formula();
      if (!consume(')')) fail("expected ')'");
      return f;
    }
    std::string w = peek_word();
    if (w == "T") { consume_word(w); return ftop(); }
    if (w == "F") { consume_word(w); return fbot(); }
    if (w.size() >= 2 && w[0] == 'p') {
      bool digits = true;
      for (std::size_t i = 1; i < w.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(w[i]))) digits = false;
      if (digits) {
        consume_word(w);
        return fvar(static_cast<unsigned>(std::stoul(w.substr(1))));
      }
    }
    fail(w.empty() ? "expected a formula" : "unknown token '" + w + "'");
  }

  // structure := item (',' item)*                 (left associative)
  StructPtr structure() {
    StructPtr lhs = item();
    while (consume(',')) lhs = scomma(lhs, item());
    return lhs;
  }

  // item := 'o' '(' structure ')' | 'b' '(' structure ')'
  //       | formula | '(' structure ')'
  // A parenthesis is first tried as a formula; on failure the parser
  // backtracks and reads a parenthesized structure.  When no parenthesis
  // opens here, the formula's own error names the true failure point.
  StructPtr item() {
    std::string w = peek_word();
    if (w == "o" || w == "b") {
      consume_word(w);
      if (!consume('(')) fail("expected '(' after structure operator");
      StructPtr inner = structure();
      if (!consume(')')) fail("expected ')'");
      return w == "o" ? scirc(inner) : sbullet(inner);
    }
    std::size_t save = pos_;
    try {
      return sleaf(formula());
    } catch (const ParseError&) {
      pos_ = save;
      if (!consume('(')) throw;
      StructPtr inner = structure();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
  }
};

// Printer precedence levels for formulas; higher binds tighter.
enum : int { kPrecImpl = 1, kPrecOr = 2, kPrecAnd = 3, kPrecUnary = 4 };

inline void print_formula_rec(const FormulaPtr& f, int parent_prec, std::string& out) {
  // Negation sugar: a -> F prints as ~a.
  if (f->kind == FKind::Impl && f->rhs->kind == FKind::Bot) {
    out += '~';
    print_formula_rec(f->lhs, kPrecUnary, out);
    return;
  }
  switch (f->kind) {
    case FKind::Var: out += 'p' + std::to_string(f->var); return;
    case FKind::Top: out += 'T'; return;
    case FKind::Bot: out += 'F'; return;
    case FKind::Dia: out += "dia "; print_formula_rec(f->lhs, kPrecUnary, out); return;
    case FKind::Box: out += "box "; print_formula_rec(f->lhs, kPrecUnary, out); return;
    case FKind::BDia: out += "bdia "; print_formula_rec(f->lhs, kPrecUnary, out); return;
    case FKind::BBox: out += "bbox "; print_formula_rec(f->lhs, kPrecUnary, out); return;
    default: break;
  }
  int prec = f->kind == FKind::Impl ? kPrecImpl : f->kind == FKind::Or ? kPrecOr : kPrecAnd;
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  if (f->kind == FKind::Impl) {
    // Right associative: the left argument needs strictly higher precedence.
    print_formula_rec(f->lhs, prec + 1, out);
    out += " -> ";
    print_formula_rec(f->rhs, prec, out);
  } else {
    const char* op = f->kind == FKind::Or ? " | " : " & ";
    // Left associative: the right argument needs strictly higher precedence.
    print_formula_rec(f->lhs, prec, out);
    out += op;
    print_formula_rec(f->rhs, prec + 1, out);
  }
  if (parens) out += ')';
}

inline void print_structure_rec(const StructPtr& s, bool comma_ctx_right, std::string& out) {
  switch (s->kind) {
    case SKind::Empty:
      throw std::logic_error("print: embedded empty structure");
    case SKind::Leaf: {
      print_formula_rec(s->f, 0, out);
      return;
    }
    case SKind::Circ:
    case SKind::Bullet:
      out += (s->kind == SKind::Circ ? "o(" : "b(");
      print_structure_rec(s->left, false, out);
      out += ')';
      return;
    case SKind::Comma:
      // Left-nested chains print flat; a Comma as a right child needs parens
      // so that parsing (which is left associative) reproduces the tree.
      if (comma_ctx_right) {
        out += '(';
        print_structure_rec(s->left, false, out);
        out += ", ";
        print_structure_rec(s->right, true, out);
        out += ')';
      } else {
        print_structure_rec(s->left, false, out);
        out += ", ";
        print_structure_rec(s->right, true, out);
      }
      return;
  }
}

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  return detail::Parser(text).parse_formula_all();
}

inline StructPtr parse_structure(const std::string& text) {
  return detail::Parser(text).parse_structure_all();
}

inline Sequent parse_sequent(const std::string& text) {
  return detail::Parser(text).parse_sequent_all();
}

inline std::string print_formula(const FormulaPtr& f) {
  std::string out;
  detail::print_formula_rec(f, 0, out);
  return out;
}

inline std::string print_structure(const StructPtr& s) {
  if (s->kind == SKind::Empty) return "";
  std::string out;
  detail::print_structure_rec(s, false, out);
  return out;
}

inline std::string print_sequent(const Sequent& q) {
  if (q.ant->kind == SKind::Empty) return "=> " + print_formula(q.suc);
  return print_structure(q.ant) + " => " + print_formula(q.suc);
}

}  // namespace tenseq
