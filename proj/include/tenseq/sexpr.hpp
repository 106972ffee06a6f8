// Derivation file format: s-expressions over the concrete sequent syntax.
//
//   node  := '(' 'rule' <token> ':concl' <string> ':inst' '(' kv* ')' node* ')'
//          | '(' 'id' <string> ')' | '(' 'ida' <string> ')'
//   kv    := ':at' <path> | ':delta' <string> | ':cutf' <string>
//          | ':holes' '(' <path>* ')'
//   path  := 'e' | dotted L|R|U steps, e.g. L.R.U
//
// Strings are double-quoted with no escapes (the sequent grammar contains no
// quotes).  ';' starts a line comment.  The key set of each rule is fixed and
// enforced on read; ':side' is reserved in the grammar but used by no rule.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tenseq/checker.hpp"
#include "tenseq/derivation.hpp"
#include "tenseq/text.hpp"

namespace tenseq {

struct ReadError : std::runtime_error {
  std::size_t offset;
  ReadError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(const std::string& text) : s_(text) {}

  DerivPtr read_all() {
    DerivPtr d = node();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ReadError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';')
        break;
      ++pos_;
    }
    if (pos_ == start) fail("expected an atom");
    return s_.substr(start, pos_ - start);
  }

  std::string quoted() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') fail("expected a quoted string");
    std::size_t start = ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
    if (pos_ >= s_.size()) fail("unterminated string");
    std::string out = s_.substr(start, pos_ - start);
    ++pos_;
    return out;
  }

  Sequent sequent_string() {
    std::size_t at = pos_;
    std::string text = quoted();
    try {
      return parse_sequent(text);
    } catch (const ParseError& e) {
      throw ReadError(at, std::string("bad sequent: ") + e.what());
    }
  }

  Path path_atom() {
    std::size_t at = pos_;
    std::string t = atom();
    auto p = path_from_string(t);
    if (!p) throw ReadError(at, "bad path '" + t + "'");
    return *p;
  }

  DerivPtr node() {
    expect('(');
    std::size_t head_at = pos_;
    std::string head = atom();
    if (head == "id" || head == "ida") {
      Sequent q = sequent_string();
      expect(')');
      return mk_deriv(q, head == "id" ? RuleId::Id : RuleId::IdA, Inst{}, {});
    }
    if (head != "rule") throw ReadError(head_at, "expected 'rule', 'id' or 'ida'");

    std::size_t tok_at = pos_;
    std::string tok = atom();
    auto rule = rule_from_token(tok);
    if (!rule) throw ReadError(tok_at, "unknown rule '" + tok + "'");

    if (atom() != ":concl") fail("expected :concl");
    Sequent concl = sequent_string();
    if (atom() != ":inst") fail("expected :inst");
    Inst inst = inst_record(*rule);

    std::vector<DerivPtr> prems;
    while (!try_consume(')')) prems.push_back(node());
    if (static_cast<int>(prems.size()) != rule_arity(*rule))
      throw ReadError(tok_at, std::string(rule_token(*rule)) + " takes " +
                                  std::to_string(rule_arity(*rule)) + " premises, got " +
                                  std::to_string(prems.size()));
    return mk_deriv(std::move(concl), *rule, std::move(inst), std::move(prems));
  }

  Inst inst_record(RuleId rule) {
    expect('(');
    Inst inst;
    while (!try_consume(')')) {
      std::size_t key_at = pos_;
      std::string key = atom();
      if (key == ":at") {
        if (inst.at) throw ReadError(key_at, "duplicate :at");
        inst.at = path_atom();
      } else if (key == ":delta") {
        if (inst.delta) throw ReadError(key_at, "duplicate :delta");
        std::size_t at = pos_;
        std::string text = quoted();
        try {
          inst.delta = parse_structure(text);
        } catch (const ParseError& e) {
          throw ReadError(at, std::string("bad structure: ") + e.what());
        }
      } else if (key == ":cutf") {
        if (inst.cutf) throw ReadError(key_at, "duplicate :cutf");
        std::size_t at = pos_;
        std::string text = quoted();
        try {
          inst.cutf = parse_formula(text);
        } catch (const ParseError& e) {
          throw ReadError(at, std::string("bad formula: ") + e.what());
        }
      } else if (key == ":holes") {
        if (inst.holes) throw ReadError(key_at, "duplicate :holes");
        expect('(');
        std::vector<Path> hs;
        while (!try_consume(')')) hs.push_back(path_atom());
        inst.holes = std::move(hs);
      } else if (key == ":side") {
        throw ReadError(key_at, ":side is reserved and used by no rule");
      } else {
        throw ReadError(key_at, "unknown instantiation key '" + key + "'");
      }
    }
    if (!inst_keys_match(rule, inst))
      throw ReadError(pos_, std::string("wrong instantiation keys for ") + rule_token(rule));
    return inst;
  }
};

inline void write_inst(const Inst& inst, std::string& out) {
  out += '(';
  bool first = true;
  auto sep = [&] {
    if (!first) out += ' ';
    first = false;
  };
  if (inst.at) {
    sep();
    out += ":at " + path_to_string(*inst.at);
  }
  if (inst.delta) {
    sep();
    out += ":delta \"" + print_structure(inst.delta) + "\"";
  }
  if (inst.cutf) {
    sep();
    out += ":cutf \"" + print_formula(inst.cutf) + "\"";
  }
  if (inst.holes) {
    sep();
    out += ":holes (";
    for (std::size_t i = 0; i < inst.holes->size(); ++i) {
      if (i) out += ' ';
      out += path_to_string((*inst.holes)[i]);
    }
    out += ')';
  }
  out += ')';
}

inline void write_deriv_rec(const DerivPtr& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  if (d->prems.empty() && (d->rule == RuleId::Id || d->rule == RuleId::IdA)) {
    out += '(';
    out += rule_token(d->rule);
    out += " \"" + print_sequent(d->concl) + "\")";
    return;
  }
  out += "(rule ";
  out += rule_token(d->rule);
  out += " :concl \"" + print_sequent(d->concl) + "\" :inst ";
  write_inst(d->inst, out);
  for (const auto& p : d->prems) {
    out += '\n';
    write_deriv_rec(p, indent + 1, out);
  }
  out += ')';
}

}  // namespace detail

inline DerivPtr read_derivation(const std::string& text) {
  return detail::SexprReader(text).read_all();
}

inline std::string write_derivation(const DerivPtr& d) {
  std::string out;
  detail::write_deriv_rec(d, 0, out);
  out += '\n';
  return out;
}

}  // namespace tenseq
