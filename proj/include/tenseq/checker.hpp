// The proof kernel: per-rule premise computation and the derivation checker
// for the three calculus variants.
//
// Checking is search-free: the instantiation record determines the premises
// of every rule as a function of the conclusion.  check_node recomputes them
// and compares against the stored premises syntactically.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tenseq/derivation.hpp"
#include "tenseq/syntax.hpp"
#include "tenseq/text.hpp"

namespace tenseq {

enum class Variant : std::uint8_t { Base, Dagger, DoubleDagger };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Base: return "base";
    case Variant::Dagger: return "dagger";
    default: return "ddagger";
  }
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
  if (s == "base") return Variant::Base;
  if (s == "dagger") return Variant::Dagger;
  if (s == "ddagger") return Variant::DoubleDagger;
  return std::nullopt;
}

enum class Reason : std::uint8_t { WrongShape, VariantForbidden, BadPath, EmbeddedEmpty };

inline const char* reason_code(Reason r) {
  switch (r) {
    case Reason::WrongShape: return "wrong-shape";
    case Reason::VariantForbidden: return "variant-forbidden";
    case Reason::BadPath: return "bad-path";
    default: return "embedded-empty";
  }
}

struct Violation {
  std::string addr;  // derivation node address ("e", "0.1", ...)
  RuleId rule;
  Reason reason;
  std::string msg;
};

// ---------------------------------------------------------------------------
// Variant admission
// ---------------------------------------------------------------------------

inline bool rule_admitted(Variant v, RuleId r) {
  switch (r) {
    case RuleId::Id:
    case RuleId::ConF:
      return v == Variant::Base;
    case RuleId::IdA:
    case RuleId::ConA:
    case RuleId::ConBox:
    case RuleId::ConBBox:
    case RuleId::ConImpl:
      return v != Variant::Base;
    case RuleId::Cut:
      return v != Variant::DoubleDagger;
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
    case RuleId::CutStar:
      return v == Variant::DoubleDagger;
    default:
      return true;  // shared core
  }
}

// ---------------------------------------------------------------------------
// Instantiation key discipline (normative, frozen)
// ---------------------------------------------------------------------------
//
//   no keys          : id ida andr orr1 orr2 implr diar bdiar bboxr boxr
//   :at              : andl orl impll dial bdial bboxl boxl con_o con_b conf
//                      cona conbox conbbox conimpl dual_ob dual_bo
//   :at :delta       : top bot wk1 wk2 ex
//   :at :cutf        : cut cutstar
//   :holes :cutf     : mixa mixbox mixbbox miximpl

struct InstKeys {
  bool at = false, delta = false, cutf = false, holes = false;
};

inline InstKeys inst_keys_for(RuleId r) {
  switch (r) {
    case RuleId::TopRule:
    case RuleId::BotRule:
    case RuleId::Wk1:
    case RuleId::Wk2:
    case RuleId::Ex:
      return {true, true, false, false};
    case RuleId::Cut:
    case RuleId::CutStar:
      return {true, false, true, false};
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
      return {false, false, true, true};
    case RuleId::AndL:
    case RuleId::OrL:
    case RuleId::ImplL:
    case RuleId::DiaL:
    case RuleId::BDiaL:
    case RuleId::BBoxL:
    case RuleId::BoxL:
    case RuleId::ConCirc:
    case RuleId::ConBullet:
    case RuleId::ConF:
    case RuleId::ConA:
    case RuleId::ConBox:
    case RuleId::ConBBox:
    case RuleId::ConImpl:
    case RuleId::DualCircBullet:
    case RuleId::DualBulletCirc:
      return {true, false, false, false};
    default:
      return {false, false, false, false};
  }
}

inline bool inst_keys_match(RuleId r, const Inst& inst) {
  InstKeys k = inst_keys_for(r);
  return inst.at.has_value() == k.at && (inst.delta != nullptr) == k.delta &&
         (inst.cutf != nullptr) == k.cutf && inst.holes.has_value() == k.holes;
}

// Inst constructors.
inline Inst inst_none() { return Inst{}; }
inline Inst inst_at(Path p) {
  Inst i;
  i.at = std::move(p);
  return i;
}
inline Inst inst_at_delta(Path p, StructPtr d) {
  Inst i;
  i.at = std::move(p);
  i.delta = std::move(d);
  return i;
}
inline Inst inst_cut(Path p, FormulaPtr f) {
  Inst i;
  i.at = std::move(p);
  i.cutf = std::move(f);
  return i;
}
inline Inst inst_mix(std::vector<Path> hs, FormulaPtr f) {
  Inst i;
  i.holes = std::move(hs);
  i.cutf = std::move(f);
  return i;
}

// ---------------------------------------------------------------------------
// Premise computation
// ---------------------------------------------------------------------------

struct RuleError {
  Reason reason;
  std::string msg;
};

using PremisesOr = std::variant<std::vector<Sequent>, RuleError>;

namespace detail {

inline PremisesOr err(Reason r, std::string m) { return RuleError{r, std::move(m)}; }
inline PremisesOr prems(std::initializer_list<Sequent> qs) {
  return std::vector<Sequent>(qs);
}

// Multiset equality of the comma-group components of two structures.
inline bool components_multiset_equal(const StructPtr& a, const StructPtr& b) {
  auto ca = comma_components(a);
  auto cb = comma_components(b);
  if (ca.size() != cb.size()) return false;
  std::vector<bool> used(cb.size(), false);
  for (auto& [pa, sa] : ca) {
    bool found = false;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (!used[j] && equal(sa, cb[j].second)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

// Computes the premises of (rule, inst) applied bottom-up at the conclusion,
// or explains why the instantiation does not fit.  All shape conditions of
// Def-style schemas live here and only here.
inline PremisesOr premises_of(RuleId rule, const Inst& inst, const Sequent& concl) {
  using detail::err;
  using detail::prems;
  const StructPtr& S = concl.ant;
  const FormulaPtr& beta = concl.suc;

  if (!inst_keys_match(rule, inst))
    return err(Reason::WrongShape, std::string("wrong instantiation keys for ") + rule_token(rule));
  if (inst.delta && inst.delta->kind == SKind::Empty)
    return err(Reason::EmbeddedEmpty, "delta must be a nonempty structure");

  // Resolve :at up front for the rules that carry it.
  StructPtr sub;
  if (inst.at) {
    sub = subtree_at(S, *inst.at);
    if (!sub) return err(Reason::BadPath, "path " + path_to_string(*inst.at) + " does not address a subtree");
  }

  switch (rule) {
    // -- axioms ------------------------------------------------------------
    case RuleId::Id:
      if (S->kind != SKind::Leaf || !equal(S->f, beta))
        return err(Reason::WrongShape, "axiom requires a single-leaf antecedent equal to the succedent");
      return prems({});
    case RuleId::IdA:
      if (S->kind != SKind::Leaf || !equal(S->f, beta))
        return err(Reason::WrongShape, "axiom requires a single-leaf antecedent equal to the succedent");
      if (!is_atomic(S->f)) return err(Reason::WrongShape, "restricted axiom requires an atomic formula");
      return prems({});

    // -- constant rules ----------------------------------------------------
    case RuleId::TopRule: {
      if (sub->kind == SKind::Empty)
        return err(Reason::EmbeddedEmpty, "replaced structure must be nonempty");
      if (!equal(sub, inst.delta))
        return err(Reason::WrongShape, "delta does not match the structure at the path");
      return prems({Sequent{replace_at(S, *inst.at, sleaf(ftop())), beta}});
    }
    case RuleId::BotRule: {
      if (sub->kind == SKind::Empty)
        return err(Reason::EmbeddedEmpty, "replaced structure must be nonempty");
      if (!equal(sub, inst.delta))
        return err(Reason::WrongShape, "delta does not match the structure at the path");
      return prems({Sequent{sub, fbot()}});
    }

    // -- logical left rules --------------------------------------------------
    case RuleId::AndL: {
      if (sub->kind != SKind::Leaf || sub->f->kind != FKind::And)
        return err(Reason::WrongShape, "expected a conjunction leaf at the path");
      auto repl = scomma(sleaf(sub->f->lhs), sleaf(sub->f->rhs));
      return prems({Sequent{replace_at(S, *inst.at, repl), beta}});
    }
    case RuleId::OrL: {
      if (sub->kind != SKind::Leaf || sub->f->kind != FKind::Or)
        return err(Reason::WrongShape, "expected a disjunction leaf at the path");
      return prems({Sequent{replace_at(S, *inst.at, sleaf(sub->f->lhs)), beta},
                    Sequent{replace_at(S, *inst.at, sleaf(sub->f->rhs)), beta}});
    }
    case RuleId::ImplL: {
      if (sub->kind != SKind::Comma || sub->right->kind != SKind::Leaf ||
          sub->right->f->kind != FKind::Impl)
        return err(Reason::WrongShape, "expected (payload, implication-leaf) at the path");
      const FormulaPtr& imp = sub->right->f;
      return prems({Sequent{sub->left, imp->lhs},
                    Sequent{replace_at(S, *inst.at, sleaf(imp->rhs)), beta}});
    }
    case RuleId::DiaL: {
      if (sub->kind != SKind::Leaf || sub->f->kind != FKind::Dia)
        return err(Reason::WrongShape, "expected a dia leaf at the path");
      return prems({Sequent{replace_at(S, *inst.at, scirc(sleaf(sub->f->lhs))), beta}});
    }
    case RuleId::BDiaL: {
      if (sub->kind != SKind::Leaf || sub->f->kind != FKind::BDia)
        return err(Reason::WrongShape, "expected a bdia leaf at the path");
      return prems({Sequent{replace_at(S, *inst.at, sbullet(sleaf(sub->f->lhs))), beta}});
    }
    case RuleId::BBoxL: {
      if (sub->kind != SKind::Circ || sub->left->kind != SKind::Leaf ||
          sub->left->f->kind != FKind::BBox)
        return err(Reason::WrongShape, "expected o(bbox-leaf) at the path");
      return prems({Sequent{replace_at(S, *inst.at, sleaf(sub->left->f->lhs)), beta}});
    }
    case RuleId::BoxL: {
      if (sub->kind != SKind::Bullet || sub->left->kind != SKind::Leaf ||
          sub->left->f->kind != FKind::Box)
        return err(Reason::WrongShape, "expected b(box-leaf) at the path");
      return prems({Sequent{replace_at(S, *inst.at, sleaf(sub->left->f->lhs)), beta}});
    }

    // -- logical right rules -------------------------------------------------
    case RuleId::AndR: {
      if (beta->kind != FKind::And)
        return err(Reason::WrongShape, "succedent is not a conjunction");
      return prems({Sequent{S, beta->lhs}, Sequent{S, beta->rhs}});
    }
    case RuleId::OrR1: {
      if (beta->kind != FKind::Or) return err(Reason::WrongShape, "succedent is not a disjunction");
      return prems({Sequent{S, beta->lhs}});
    }
    case RuleId::OrR2: {
      if (beta->kind != FKind::Or) return err(Reason::WrongShape, "succedent is not a disjunction");
      return prems({Sequent{S, beta->rhs}});
    }
    case RuleId::ImplR: {
      if (beta->kind != FKind::Impl)
        return err(Reason::WrongShape, "succedent is not an implication");
      StructPtr ant = S->kind == SKind::Empty ? sleaf(beta->lhs) : scomma(sleaf(beta->lhs), S);
      return prems({Sequent{ant, beta->rhs}});
    }
    case RuleId::DiaR: {
      if (beta->kind != FKind::Dia) return err(Reason::WrongShape, "succedent is not a dia formula");
      if (S->kind != SKind::Circ) return err(Reason::WrongShape, "antecedent is not o(...)");
      return prems({Sequent{S->left, beta->lhs}});
    }
    case RuleId::BDiaR: {
      if (beta->kind != FKind::BDia)
        return err(Reason::WrongShape, "succedent is not a bdia formula");
      if (S->kind != SKind::Bullet) return err(Reason::WrongShape, "antecedent is not b(...)");
      return prems({Sequent{S->left, beta->lhs}});
    }
    case RuleId::BBoxR: {
      if (beta->kind != FKind::BBox)
        return err(Reason::WrongShape, "succedent is not a bbox formula");
      if (S->kind == SKind::Empty)
        return err(Reason::EmbeddedEmpty, "premise would wrap an empty antecedent in o(...)");
      return prems({Sequent{scirc(S), beta->lhs}});
    }
    case RuleId::BoxR: {
      if (beta->kind != FKind::Box) return err(Reason::WrongShape, "succedent is not a box formula");
      if (S->kind == SKind::Empty)
        return err(Reason::EmbeddedEmpty, "premise would wrap an empty antecedent in b(...)");
      return prems({Sequent{sbullet(S), beta->lhs}});
    }

    // -- structural rules ----------------------------------------------------
    case RuleId::ConCirc: {
      if (sub->kind != SKind::Circ || sub->left->kind != SKind::Comma)
        return err(Reason::WrongShape, "expected o(X, Y) at the path");
      auto repl = scomma(scirc(sub->left->left), scirc(sub->left->right));
      return prems({Sequent{replace_at(S, *inst.at, repl), beta}});
    }
    case RuleId::ConBullet: {
      if (sub->kind != SKind::Bullet || sub->left->kind != SKind::Comma)
        return err(Reason::WrongShape, "expected b(X, Y) at the path");
      auto repl = scomma(sbullet(sub->left->left), sbullet(sub->left->right));
      return prems({Sequent{replace_at(S, *inst.at, repl), beta}});
    }
    case RuleId::ConF:
    case RuleId::ConA:
    case RuleId::ConBox:
    case RuleId::ConBBox:
    case RuleId::ConImpl: {
      if (sub->kind != SKind::Leaf)
        return err(Reason::WrongShape, "expected a formula leaf at the path");
      const FormulaPtr& a = sub->f;
      if (rule == RuleId::ConA && !is_atomic(a))
        return err(Reason::WrongShape, "contracted formula must be atomic");
      if (rule == RuleId::ConBox && a->kind != FKind::Box)
        return err(Reason::WrongShape, "contracted formula must be box-rooted");
      if (rule == RuleId::ConBBox && a->kind != FKind::BBox)
        return err(Reason::WrongShape, "contracted formula must be bbox-rooted");
      if (rule == RuleId::ConImpl && a->kind != FKind::Impl)
        return err(Reason::WrongShape, "contracted formula must be an implication");
      return prems({Sequent{replace_at(S, *inst.at, scomma(sleaf(a), sleaf(a))), beta}});
    }
    case RuleId::Wk1: {
      if (sub->kind != SKind::Comma)
        return err(Reason::WrongShape, "expected a comma at the path");
      if (!equal(sub->right, inst.delta))
        return err(Reason::WrongShape, "delta does not match the introduced right sibling");
      return prems({Sequent{replace_at(S, *inst.at, sub->left), beta}});
    }
    case RuleId::Wk2: {
      if (sub->kind != SKind::Comma)
        return err(Reason::WrongShape, "expected a comma at the path");
      if (!equal(sub->left, inst.delta))
        return err(Reason::WrongShape, "delta does not match the introduced left sibling");
      return prems({Sequent{replace_at(S, *inst.at, sub->right), beta}});
    }
    case RuleId::Ex: {
      // Rearrangement of one comma group: the premise arrangement delta must
      // consist of exactly the same components (as a multiset).
      if (sub->kind != SKind::Comma)
        return err(Reason::WrongShape, "expected a comma at the path");
      if (inst.delta->kind != SKind::Comma)
        return err(Reason::WrongShape, "delta must be a comma arrangement");
      if (!detail::components_multiset_equal(sub, inst.delta))
        return err(Reason::WrongShape, "delta is not a rearrangement of the group at the path");
      return prems({Sequent{replace_at(S, *inst.at, inst.delta), beta}});
    }
    case RuleId::DualCircBullet: {
      if (sub->kind != SKind::Comma || sub->right->kind != SKind::Bullet)
        return err(Reason::WrongShape, "expected (X, b(Y)) at the path");
      return prems({Sequent{scomma(scirc(sub->left), sub->right->left), fbot()}});
    }
    case RuleId::DualBulletCirc: {
      if (sub->kind != SKind::Comma || sub->right->kind != SKind::Circ)
        return err(Reason::WrongShape, "expected (X, o(Y)) at the path");
      return prems({Sequent{scomma(sbullet(sub->left), sub->right->left), fbot()}});
    }

    // -- cut-like rules ------------------------------------------------------
    case RuleId::Cut:
    case RuleId::CutStar: {
      if (sub->kind == SKind::Empty)
        return err(Reason::EmbeddedEmpty, "cut context must be nonempty");
      if (rule == RuleId::CutStar) {
        FKind k = inst.cutf->kind;
        if (k != FKind::And && k != FKind::Or && k != FKind::Dia && k != FKind::BDia)
          return err(Reason::WrongShape,
                     "cut formula must be rooted in one of & | dia bdia");
      }
      return prems({Sequent{sub, inst.cutf},
                    Sequent{replace_at(S, *inst.at, sleaf(inst.cutf)), beta}});
    }
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl: {
      const FormulaPtr& x = inst.cutf;
      if (rule == RuleId::MixA && !is_atomic(x))
        return err(Reason::WrongShape, "cut formula must be atomic");
      if (rule == RuleId::MixBox && x->kind != FKind::Box)
        return err(Reason::WrongShape, "cut formula must be box-rooted");
      if (rule == RuleId::MixBBox && x->kind != FKind::BBox)
        return err(Reason::WrongShape, "cut formula must be bbox-rooted");
      if (rule == RuleId::MixImpl && x->kind != FKind::Impl)
        return err(Reason::WrongShape, "cut formula must be an implication");
      const auto& holes = *inst.holes;
      if (holes.empty()) return err(Reason::WrongShape, "at least one hole is required");
      if (!holes_disjoint(holes)) return err(Reason::BadPath, "hole paths overlap");
      StructPtr delta;
      for (const Path& h : holes) {
        StructPtr at = subtree_at(S, h);
        if (!at)
          return err(Reason::BadPath, "hole " + path_to_string(h) + " does not address a subtree");
        if (at->kind == SKind::Empty)
          return err(Reason::EmbeddedEmpty, "cut context must be nonempty");
        if (!delta)
          delta = at;
        else if (!equal(delta, at))
          return err(Reason::WrongShape, "hole occurrences carry different structures");
      }
      return prems({Sequent{delta, x}, Sequent{replace_many(S, holes, sleaf(x)), beta}});
    }
  }
  return err(Reason::WrongShape, "unknown rule");
}

// ---------------------------------------------------------------------------
// Node and tree checking
// ---------------------------------------------------------------------------

inline std::optional<Violation> check_node(Variant v, RuleId rule, const Inst& inst,
                                           const Sequent& concl,
                                           const std::vector<Sequent>& premise_seqs) {
  if (!rule_admitted(v, rule))
    return Violation{"", rule, Reason::VariantForbidden,
                     std::string(rule_token(rule)) + " is not admitted in " + variant_name(v)};
  PremisesOr po = premises_of(rule, inst, concl);
  if (auto* e = std::get_if<RuleError>(&po)) return Violation{"", rule, e->reason, e->msg};
  const auto& want = std::get<std::vector<Sequent>>(po);
  if (want.size() != premise_seqs.size())
    return Violation{"", rule, Reason::WrongShape,
                     "expected " + std::to_string(want.size()) + " premises, got " +
                         std::to_string(premise_seqs.size())};
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (!equal(want[i], premise_seqs[i]))
      return Violation{"", rule, Reason::WrongShape,
                       "premise " + std::to_string(i) + " should be \"" + print_sequent(want[i]) +
                           "\" but is \"" + print_sequent(premise_seqs[i]) + "\""};
  }
  return std::nullopt;
}

namespace detail {
inline void check_rec(const DerivPtr& d, Variant v, NodeAddr& addr, std::vector<Violation>& out) {
  std::vector<Sequent> ps;
  ps.reserve(d->prems.size());
  for (const auto& p : d->prems) ps.push_back(p->concl);
  if (auto viol = check_node(v, d->rule, d->inst, d->concl, ps)) {
    viol->addr = addr_to_string(addr);
    out.push_back(*viol);
  }
  for (std::size_t i = 0; i < d->prems.size(); ++i) {
    addr.push_back(static_cast<int>(i));
    check_rec(d->prems[i], v, addr, out);
    addr.pop_back();
  }
}
}  // namespace detail

// Checks every node; returns all violations with their tree addresses.
inline std::vector<Violation> check(const DerivPtr& d, Variant v) {
  std::vector<Violation> out;
  NodeAddr addr;
  detail::check_rec(d, v, addr, out);
  return out;
}

// ---------------------------------------------------------------------------
// Validated node construction (used by all derivation transformers)
// ---------------------------------------------------------------------------

// Builds a node after verifying that the premises' conclusions are exactly
// what (rule, inst, concl) demands.  Shape errors here are internal bugs in a
// transformer, hence logic_error.
inline DerivPtr node(RuleId rule, Inst inst, Sequent concl, std::vector<DerivPtr> premises) {
  PremisesOr po = premises_of(rule, inst, concl);
  if (auto* e = std::get_if<RuleError>(&po))
    throw std::logic_error(std::string("node(") + rule_token(rule) + "): " + e->msg +
                           " [concl: " + print_sequent(concl) + "]");
  const auto& want = std::get<std::vector<Sequent>>(po);
  if (want.size() != premises.size())
    throw std::logic_error(std::string("node(") + rule_token(rule) + "): premise count mismatch");
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (!equal(want[i], premises[i]->concl))
      throw std::logic_error(std::string("node(") + rule_token(rule) + "): premise " +
                             std::to_string(i) + " should conclude \"" + print_sequent(want[i]) +
                             "\" but concludes \"" + print_sequent(premises[i]->concl) + "\"");
  }
  return mk_deriv(std::move(concl), rule, std::move(inst), std::move(premises));
}

// Convenience: axiom leaves.
inline DerivPtr leaf_id(const FormulaPtr& f) {
  return node(RuleId::Id, inst_none(), Sequent{sleaf(f), f}, {});
}
inline DerivPtr leaf_ida(const FormulaPtr& f) {
  return node(RuleId::IdA, inst_none(), Sequent{sleaf(f), f}, {});
}

}  // namespace tenseq
