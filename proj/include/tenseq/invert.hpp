// Height-preserving inversion of the invertible left rules (&L, |L, diaL,
// bdiaL) and right rules (->R, boxR, bboxR) on cut-free dagger derivations.
//
// Both inverters are structural recursions over the derivation with a
// principal/non-principal case split per rule.  Non-principal steps remap the
// tracked occurrence into the premise(s) and rebuild the rule below; steps
// that discard their context (bot, the dual rules, the top rule's replaced
// structure, weakening's introduced sibling) rewrite the target inside the
// instantiation instead.  Every rebuilt node revalidates via node().
#pragma once

#include <stdexcept>

#include "tenseq/identity.hpp"

namespace tenseq {

enum class LeftInvKind { And, Or1, Or2, Dia, BDia };
enum class RightInvKind { Impl, Box, BBox };

namespace detail {

// --------------------------------------------------------------------------
// Left inversion
// --------------------------------------------------------------------------

struct LeftInverter {
  LeftInvKind kind;
  StructPtr repl;  // what replaces the tracked leaf in the inverted sequent

  // Maps a path through one Ex rearrangement: `rel` is relative to the group
  // root; returns the corresponding path relative to the rearranged group.
  static Path remap_through_ex(const StructPtr& group, const StructPtr& arranged,
                               const Path& rel) {
    auto cs = comma_components(group);
    auto ds = comma_components(arranged);
    // Greedy bijection between equal components.
    std::vector<int> match(cs.size(), -1);
    std::vector<bool> used(ds.size(), false);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (!used[j] && equal(cs[i].second, ds[j].second)) {
          match[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (match[i] >= 0 && is_prefix(cs[i].first, rel)) {
        Path out = ds[static_cast<std::size_t>(match[i])].first;
        out.insert(out.end(), rel.begin() + static_cast<long>(cs[i].first.size()), rel.end());
        return out;
      }
    }
    throw std::logic_error("remap_through_ex: path not inside any component");
  }

  Sequent inverted(const DerivPtr& d, const Path& at) const {
    return Sequent{replace_at(d->concl.ant, at, repl), d->concl.suc};
  }

  bool principal(const DerivPtr& d, const Path& at) const {
    if (!d->inst.at || *d->inst.at != at) return false;
    switch (d->rule) {
      case RuleId::AndL: return kind == LeftInvKind::And;
      case RuleId::OrL: return kind == LeftInvKind::Or1 || kind == LeftInvKind::Or2;
      case RuleId::DiaL: return kind == LeftInvKind::Dia;
      case RuleId::BDiaL: return kind == LeftInvKind::BDia;
      default: return false;
    }
  }

  DerivPtr go(const DerivPtr& d, const Path& at) const {
    if (principal(d, at)) {
      switch (d->rule) {
        case RuleId::AndL:
        case RuleId::DiaL:
        case RuleId::BDiaL:
          return d->prems[0];
        case RuleId::OrL:
          return d->prems[kind == LeftInvKind::Or1 ? 0 : 1];
        default:
          break;
      }
    }

    const Path r = d->inst.at ? *d->inst.at : Path{};
    Sequent concl = inverted(d, at);

    switch (d->rule) {
      case RuleId::Id:
      case RuleId::ConF:
        throw TransformError(TransformError::Kind::ShapeMismatch,
                             "invert_left: input must be a dagger-variant derivation");
      case RuleId::IdA:
        // The tracked leaf is a compound formula; an atomic axiom cannot
        // carry it.
        throw std::logic_error("invert_left: tracked occurrence inside an atomic axiom");
      case RuleId::Cut:
      case RuleId::CutStar:
      case RuleId::MixA:
      case RuleId::MixBox:
      case RuleId::MixBBox:
      case RuleId::MixImpl:
        throw TransformError(TransformError::Kind::NotCutFree,
                             "invert_left: input contains a cut-like rule");

      case RuleId::TopRule: {
        if (is_prefix(r, at)) {
          // Target lies inside the replaced structure: it is gone in the
          // premise; rewrite it inside :delta instead.
          Path rel(at.begin() + static_cast<long>(r.size()), at.end());
          StructPtr ndelta = replace_at(d->inst.delta, rel, repl);
          return node(RuleId::TopRule, inst_at_delta(r, ndelta), concl, {d->prems[0]});
        }
        return node(RuleId::TopRule, inst_at_delta(r, d->inst.delta), concl,
                    {go(d->prems[0], at)});
      }
      case RuleId::BotRule: {
        if (is_prefix(r, at)) {
          Path rel(at.begin() + static_cast<long>(r.size()), at.end());
          StructPtr ndelta = replace_at(d->inst.delta, rel, repl);
          return node(RuleId::BotRule, inst_at_delta(r, ndelta), concl,
                      {go(d->prems[0], rel)});
        }
        // Target in the discarded context: the premise is untouched.
        return node(RuleId::BotRule, inst_at_delta(r, d->inst.delta), concl, {d->prems[0]});
      }
      case RuleId::DualCircBullet:
      case RuleId::DualBulletCirc: {
        if (!is_prefix(r, at))
          return node(d->rule, inst_at(r), concl, {d->prems[0]});
        // Conclusion pair (D1, #D2) maps to premise (#'D1, D2).
        Path rel(at.begin() + static_cast<long>(r.size()), at.end());
        Path mapped;
        if (rel[0] == Step::L) {
          mapped = Path{Step::L, Step::U};
          mapped.insert(mapped.end(), rel.begin() + 1, rel.end());
        } else {  // rel = R.U.s
          mapped = Path{Step::R};
          mapped.insert(mapped.end(), rel.begin() + 2, rel.end());
        }
        return node(d->rule, inst_at(r), concl, {go(d->prems[0], mapped)});
      }

      case RuleId::Wk1:
      case RuleId::Wk2: {
        const bool keep_left = d->rule == RuleId::Wk1;
        const Step intro_side = keep_left ? Step::R : Step::L;
        if (is_prefix(r, at)) {
          Path rel(at.begin() + static_cast<long>(r.size()), at.end());
          if (rel[0] == intro_side) {
            // Inside the introduced sibling: rewrite :delta, keep the premise.
            Path sub_rel(rel.begin() + 1, rel.end());
            StructPtr ndelta = replace_at(d->inst.delta, sub_rel, repl);
            return node(d->rule, inst_at_delta(r, ndelta), concl, {d->prems[0]});
          }
          // Inside the kept child: it sits at r in the premise.
          Path mapped = r;
          mapped.insert(mapped.end(), rel.begin() + 1, rel.end());
          return node(d->rule, inst_at_delta(r, d->inst.delta), concl, {go(d->prems[0], mapped)});
        }
        return node(d->rule, inst_at_delta(r, d->inst.delta), concl, {go(d->prems[0], at)});
      }
      case RuleId::Ex: {
        if (!is_prefix(r, at))
          return node(RuleId::Ex, inst_at_delta(r, d->inst.delta), concl, {go(d->prems[0], at)});
        Path rel(at.begin() + static_cast<long>(r.size()), at.end());
        StructPtr group = subtree_at(d->concl.ant, r);
        Path mapped_rel = remap_through_ex(group, d->inst.delta, rel);
        StructPtr ndelta = replace_at(d->inst.delta, mapped_rel, repl);
        Path mapped = r;
        mapped.insert(mapped.end(), mapped_rel.begin(), mapped_rel.end());
        return node(RuleId::Ex, inst_at_delta(r, ndelta), concl, {go(d->prems[0], mapped)});
      }
      case RuleId::ConCirc:
      case RuleId::ConBullet: {
        if (!is_prefix(r, at))
          return node(d->rule, inst_at(r), concl, {go(d->prems[0], at)});
        // o(X, Y) at r: X at r.U.L maps to r.L.U, Y at r.U.R maps to r.R.U.
        Path rel(at.begin() + static_cast<long>(r.size()), at.end());
        Path mapped = r;
        mapped.push_back(rel[1]);  // L or R
        mapped.push_back(Step::U);
        mapped.insert(mapped.end(), rel.begin() + 2, rel.end());
        return node(d->rule, inst_at(r), concl, {go(d->prems[0], mapped)});
      }
      case RuleId::ConA:
      case RuleId::ConBox:
      case RuleId::ConBBox:
      case RuleId::ConImpl:
        // The contracted formula is atomic / box / bbox / implication rooted,
        // never an invertible-kind formula, so the step is never principal.
        return node(d->rule, inst_at(r), concl, {go(d->prems[0], at)});

      case RuleId::AndL:
      case RuleId::DiaL:
      case RuleId::BDiaL:
      case RuleId::BBoxL:
      case RuleId::BoxL:
        return node(d->rule, inst_at(r), concl, {go(d->prems[0], at)});
      case RuleId::OrL:
        return node(RuleId::OrL, inst_at(r), concl,
                    {go(d->prems[0], at), go(d->prems[1], at)});
      case RuleId::ImplL: {
        if (is_prefix(r, at)) {
          // Inside the payload left of the implication: premise 0 carries it.
          Path rel(at.begin() + static_cast<long>(r.size()), at.end());
          Path mapped(rel.begin() + 1, rel.end());  // strip the leading L
          return node(RuleId::ImplL, inst_at(r), concl, {go(d->prems[0], mapped), d->prems[1]});
        }
        return node(RuleId::ImplL, inst_at(r), concl, {d->prems[0], go(d->prems[1], at)});
      }

      case RuleId::AndR:
        return node(RuleId::AndR, inst_none(), concl,
                    {go(d->prems[0], at), go(d->prems[1], at)});
      case RuleId::OrR1:
      case RuleId::OrR2:
        return node(d->rule, inst_none(), concl, {go(d->prems[0], at)});
      case RuleId::ImplR: {
        Path mapped{Step::R};
        mapped.insert(mapped.end(), at.begin(), at.end());
        return node(RuleId::ImplR, inst_none(), concl, {go(d->prems[0], mapped)});
      }
      case RuleId::DiaR:
      case RuleId::BDiaR: {
        Path mapped(at.begin() + 1, at.end());  // strip the leading U
        return node(d->rule, inst_none(), concl, {go(d->prems[0], mapped)});
      }
      case RuleId::BoxR:
      case RuleId::BBoxR: {
        Path mapped{Step::U};
        mapped.insert(mapped.end(), at.begin(), at.end());
        return node(d->rule, inst_none(), concl, {go(d->prems[0], mapped)});
      }
      default:
        throw std::logic_error("invert_left: unhandled rule");
    }
  }
};

}  // namespace detail

// Inverts the leaf formula at `at` in d's end sequent.  Requires a cut-free
// dagger derivation; the leaf must match the requested kind.  The result has
// height <= height(d).
inline DerivPtr invert_left(const DerivPtr& d, const Path& at, LeftInvKind kind) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Leaf)
    throw shape_error("invert_left: path does not address a formula leaf");
  const FormulaPtr& phi = sub->f;
  detail::LeftInverter inv{kind, nullptr};
  switch (kind) {
    case LeftInvKind::And:
      if (phi->kind != FKind::And) throw shape_error("invert_left: expected a conjunction");
      inv.repl = scomma(sleaf(phi->lhs), sleaf(phi->rhs));
      break;
    case LeftInvKind::Or1:
      if (phi->kind != FKind::Or) throw shape_error("invert_left: expected a disjunction");
      inv.repl = sleaf(phi->lhs);
      break;
    case LeftInvKind::Or2:
      if (phi->kind != FKind::Or) throw shape_error("invert_left: expected a disjunction");
      inv.repl = sleaf(phi->rhs);
      break;
    case LeftInvKind::Dia:
      if (phi->kind != FKind::Dia) throw shape_error("invert_left: expected a dia formula");
      inv.repl = scirc(sleaf(phi->lhs));
      break;
    case LeftInvKind::BDia:
      if (phi->kind != FKind::BDia) throw shape_error("invert_left: expected a bdia formula");
      inv.repl = sbullet(sleaf(phi->lhs));
      break;
  }
  if (!is_cut_free(d))
    throw TransformError(TransformError::Kind::NotCutFree,
                         "invert_left: input contains a cut-like rule");
  return inv.go(d, at);
}

// --------------------------------------------------------------------------
// Right inversion
// --------------------------------------------------------------------------

namespace detail {

struct RightInverter {
  RightInvKind kind;

  // The inverted sequent for a subderivation concluding S => suc.
  Sequent inverted(const Sequent& q) const {
    switch (kind) {
      case RightInvKind::Impl: {
        StructPtr ant = q.ant->kind == SKind::Empty ? sleaf(q.suc->lhs)
                                                    : scomma(sleaf(q.suc->lhs), q.ant);
        return Sequent{ant, q.suc->rhs};
      }
      case RightInvKind::Box:
        if (q.ant->kind == SKind::Empty)
          throw shape_error("invert_right: empty antecedent cannot be wrapped");
        return Sequent{sbullet(q.ant), q.suc->lhs};
      default:  // BBox
        if (q.ant->kind == SKind::Empty)
          throw shape_error("invert_right: empty antecedent cannot be wrapped");
        return Sequent{scirc(q.ant), q.suc->lhs};
    }
  }

  // Path prefix that re-addresses antecedent positions after wrapping.
  Step prefix_step() const { return kind == RightInvKind::Impl ? Step::R : Step::U; }

  Path prefixed(const Path& p) const {
    Path out{prefix_step()};
    out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  DerivPtr go(const DerivPtr& d) const {
    // Principal last steps simply return the premise.
    if ((kind == RightInvKind::Impl && d->rule == RuleId::ImplR) ||
        (kind == RightInvKind::Box && d->rule == RuleId::BoxR) ||
        (kind == RightInvKind::BBox && d->rule == RuleId::BBoxR))
      return d->prems[0];

    Sequent concl = inverted(d->concl);

    switch (d->rule) {
      case RuleId::Id:
      case RuleId::ConF:
        throw TransformError(TransformError::Kind::ShapeMismatch,
                             "invert_right: input must be a dagger-variant derivation");
      case RuleId::IdA:
        throw std::logic_error("invert_right: compound succedent on an atomic axiom");
      case RuleId::Cut:
      case RuleId::CutStar:
      case RuleId::MixA:
      case RuleId::MixBox:
      case RuleId::MixBBox:
      case RuleId::MixImpl:
        throw TransformError(TransformError::Kind::NotCutFree,
                             "invert_right: input contains a cut-like rule");

      // Context/succedent-discarding steps keep their premise; only the
      // conclusion (and the principal position) is re-addressed.
      case RuleId::BotRule:
        return node(RuleId::BotRule, inst_at_delta(prefixed(*d->inst.at), d->inst.delta), concl,
                    {d->prems[0]});
      case RuleId::DualCircBullet:
      case RuleId::DualBulletCirc:
        return node(d->rule, inst_at(prefixed(*d->inst.at)), concl, {d->prems[0]});

      case RuleId::TopRule:
        return node(RuleId::TopRule, inst_at_delta(prefixed(*d->inst.at), d->inst.delta), concl,
                    {go(d->prems[0])});
      case RuleId::Wk1:
      case RuleId::Wk2:
      case RuleId::Ex:
        return node(d->rule, inst_at_delta(prefixed(*d->inst.at), d->inst.delta), concl,
                    {go(d->prems[0])});
      case RuleId::AndL:
      case RuleId::DiaL:
      case RuleId::BDiaL:
      case RuleId::BBoxL:
      case RuleId::BoxL:
      case RuleId::ConCirc:
      case RuleId::ConBullet:
      case RuleId::ConA:
      case RuleId::ConBox:
      case RuleId::ConBBox:
      case RuleId::ConImpl:
        return node(d->rule, inst_at(prefixed(*d->inst.at)), concl, {go(d->prems[0])});
      case RuleId::OrL:
        return node(RuleId::OrL, inst_at(prefixed(*d->inst.at)), concl,
                    {go(d->prems[0]), go(d->prems[1])});
      case RuleId::ImplL:
        return node(RuleId::ImplL, inst_at(prefixed(*d->inst.at)), concl,
                    {d->prems[0], go(d->prems[1])});

      // Any other right rule contradicts the fixed succedent shape.
      default:
        throw std::logic_error("invert_right: succedent shape excludes this rule");
    }
  }
};

}  // namespace detail

// Inverts the succedent of a cut-free dagger derivation:
//   ->  : Gamma => b1 -> b2 becomes b1, Gamma => b2
//   box : Gamma => box b    becomes b(Gamma) => b
//   bbox: Gamma => bbox b   becomes o(Gamma) => b
// The result has height <= height(d).
inline DerivPtr invert_right(const DerivPtr& d, RightInvKind kind) {
  const FormulaPtr& suc = d->concl.suc;
  if ((kind == RightInvKind::Impl && suc->kind != FKind::Impl) ||
      (kind == RightInvKind::Box && suc->kind != FKind::Box) ||
      (kind == RightInvKind::BBox && suc->kind != FKind::BBox))
    throw shape_error("invert_right: succedent does not match the requested kind");
  if (!is_cut_free(d))
    throw TransformError(TransformError::Kind::NotCutFree,
                         "invert_right: input contains a cut-like rule");
  detail::RightInverter inv{kind};
  return inv.go(d);
}

// --------------------------------------------------------------------------
// The tense adjunctions, realized with one inversion plus one rule.
// --------------------------------------------------------------------------

// dia a => b  |-  a => bbox b
inline DerivPtr adjoint_dia_bbox(const DerivPtr& d) {
  if (d->concl.ant->kind != SKind::Leaf || d->concl.ant->f->kind != FKind::Dia)
    throw shape_error("adjoint_dia_bbox: end sequent must be of the form dia a => b");
  FormulaPtr a = d->concl.ant->f->lhs;
  DerivPtr inv = invert_left(d, Path{}, LeftInvKind::Dia);  // o(a) => b
  return node(RuleId::BBoxR, inst_none(), Sequent{sleaf(a), fbbox(d->concl.suc)}, {inv});
}

// a => bbox b  |-  dia a => b
inline DerivPtr adjoint_bbox_dia(const DerivPtr& d) {
  if (d->concl.ant->kind != SKind::Leaf || d->concl.suc->kind != FKind::BBox)
    throw shape_error("adjoint_bbox_dia: end sequent must be of the form a => bbox b");
  FormulaPtr a = d->concl.ant->f;
  DerivPtr inv = invert_right(d, RightInvKind::BBox);  // o(a) => b
  return node(RuleId::DiaL, inst_at(Path{}), Sequent{sleaf(fdia(a)), d->concl.suc->lhs}, {inv});
}

// bdia a => b  |-  a => box b
inline DerivPtr adjoint_bdia_box(const DerivPtr& d) {
  if (d->concl.ant->kind != SKind::Leaf || d->concl.ant->f->kind != FKind::BDia)
    throw shape_error("adjoint_bdia_box: end sequent must be of the form bdia a => b");
  FormulaPtr a = d->concl.ant->f->lhs;
  DerivPtr inv = invert_left(d, Path{}, LeftInvKind::BDia);  // b(a) => b
  return node(RuleId::BoxR, inst_none(), Sequent{sleaf(a), fbox(d->concl.suc)}, {inv});
}

// a => box b  |-  bdia a => b
inline DerivPtr adjoint_box_bdia(const DerivPtr& d) {
  if (d->concl.ant->kind != SKind::Leaf || d->concl.suc->kind != FKind::Box)
    throw shape_error("adjoint_box_bdia: end sequent must be of the form a => box b");
  FormulaPtr a = d->concl.ant->f;
  DerivPtr inv = invert_right(d, RightInvKind::Box);  // b(a) => b
  return node(RuleId::BDiaL, inst_at(Path{}), Sequent{sleaf(fbdia(a)), d->concl.suc->lhs}, {inv});
}

}  // namespace tenseq
