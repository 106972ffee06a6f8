// Admissible contraction for cut-free dagger derivations.
//
// contract_formula collapses a doubled formula (Leaf a, Leaf a) at a given
// path; compound shapes are decomposed with the left inverters, the copies
// are contracted recursively, and the connective is reintroduced.  Atomic,
// box-, bbox- and implication-rooted formulas use the primitive contraction
// rules directly.  contract_structure extends this to a doubled structure
// (Delta, Delta) by peeling o/b markers and splitting comma pairs.
#pragma once

#include <stdexcept>

#include "tenseq/invert.hpp"

namespace tenseq {

namespace detail {

inline DerivPtr contract_formula_rec(const DerivPtr& d, const Path& at);

inline DerivPtr contract_structure_rec(const DerivPtr& d, const Path& at) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Comma || !equal(sub->left, sub->right))
    throw shape_error("contract_structure: path must address a doubled structure (X, X)");
  const StructPtr delta = sub->left;
  const FormulaPtr& beta = d->concl.suc;

  switch (delta->kind) {
    case SKind::Leaf:
      return contract_formula_rec(d, at);
    case SKind::Circ: {
      // (o(G), o(G))  -- con_o -->  o(G, G), then contract under the marker.
      Sequent concl{replace_at(d->concl.ant, at, scirc(scomma(delta->left, delta->left))), beta};
      DerivPtr merged = node(RuleId::ConCirc, inst_at(at), concl, {d});
      Path under = at;
      under.push_back(Step::U);
      return contract_structure_rec(merged, under);
    }
    case SKind::Bullet: {
      Sequent concl{replace_at(d->concl.ant, at, sbullet(scomma(delta->left, delta->left))), beta};
      DerivPtr merged = node(RuleId::ConBullet, inst_at(at), concl, {d});
      Path under = at;
      under.push_back(Step::U);
      return contract_structure_rec(merged, under);
    }
    case SKind::Comma: {
      // ((D1, D2), (D1, D2))  -- exchange -->  ((D1, D1), (D2, D2)),
      // then contract each pair.
      StructPtr paired = scomma(scomma(delta->left, delta->left), scomma(delta->right, delta->right));
      Sequent concl{replace_at(d->concl.ant, at, paired), beta};
      DerivPtr arranged = node(RuleId::Ex, inst_at_delta(at, sub), concl, {d});
      Path left = at, right = at;
      left.push_back(Step::L);
      right.push_back(Step::R);
      return contract_structure_rec(contract_structure_rec(arranged, left), right);
    }
    case SKind::Empty:
      throw std::logic_error("contract_structure: empty component");
  }
  throw std::logic_error("contract_structure: unreachable");
}

inline DerivPtr contract_formula_rec(const DerivPtr& d, const Path& at) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Comma || sub->left->kind != SKind::Leaf ||
      sub->right->kind != SKind::Leaf || !equal(sub->left->f, sub->right->f))
    throw shape_error("contract_formula: path must address a doubled formula (a, a)");
  const FormulaPtr alpha = sub->left->f;
  const FormulaPtr& beta = d->concl.suc;
  Sequent concl{replace_at(d->concl.ant, at, sleaf(alpha)), beta};

  Path at_l = at, at_r = at;
  at_l.push_back(Step::L);
  at_r.push_back(Step::R);

  switch (alpha->kind) {
    case FKind::Var:
    case FKind::Top:
    case FKind::Bot:
      return node(RuleId::ConA, inst_at(at), concl, {d});
    case FKind::Box:
      return node(RuleId::ConBox, inst_at(at), concl, {d});
    case FKind::BBox:
      return node(RuleId::ConBBox, inst_at(at), concl, {d});
    case FKind::Impl:
      return node(RuleId::ConImpl, inst_at(at), concl, {d});

    case FKind::And: {
      // Invert both copies, pair up the components, contract each pair, and
      // reintroduce the conjunction.
      DerivPtr split = invert_left(invert_left(d, at_l, LeftInvKind::And), at_r, LeftInvKind::And);
      StructPtr a1 = sleaf(alpha->lhs), a2 = sleaf(alpha->rhs);
      StructPtr paired = scomma(scomma(a1, a1), scomma(a2, a2));
      Sequent ex_concl{replace_at(d->concl.ant, at, paired), beta};
      DerivPtr arranged = node(
          RuleId::Ex, inst_at_delta(at, scomma(scomma(a1, a2), scomma(a1, a2))), ex_concl, {split});
      DerivPtr contracted =
          contract_formula_rec(contract_formula_rec(arranged, at_l), at_r);
      return node(RuleId::AndL, inst_at(at), concl, {contracted});
    }
    case FKind::Or: {
      // Each disjunct yields one branch of |L with both copies inverted to
      // the same side.
      DerivPtr left_branch = contract_formula_rec(
          invert_left(invert_left(d, at_l, LeftInvKind::Or1), at_r, LeftInvKind::Or1), at);
      DerivPtr right_branch = contract_formula_rec(
          invert_left(invert_left(d, at_l, LeftInvKind::Or2), at_r, LeftInvKind::Or2), at);
      return node(RuleId::OrL, inst_at(at), concl, {left_branch, right_branch});
    }
    case FKind::Dia: {
      DerivPtr split = invert_left(invert_left(d, at_l, LeftInvKind::Dia), at_r, LeftInvKind::Dia);
      DerivPtr merged = contract_structure_rec(split, at);
      return node(RuleId::DiaL, inst_at(at), concl, {merged});
    }
    case FKind::BDia: {
      DerivPtr split =
          invert_left(invert_left(d, at_l, LeftInvKind::BDia), at_r, LeftInvKind::BDia);
      DerivPtr merged = contract_structure_rec(split, at);
      return node(RuleId::BDiaL, inst_at(at), concl, {merged});
    }
  }
  throw std::logic_error("contract_formula: unreachable");
}

}  // namespace detail

// Contracts a doubled formula occurrence (a, a) at `at` into a single copy.
// Requires a cut-free dagger derivation.
inline DerivPtr contract_formula(const DerivPtr& d, const Path& at) {
  if (!is_cut_free(d))
    throw TransformError(TransformError::Kind::NotCutFree,
                         "contract_formula: input contains a cut-like rule");
  return detail::contract_formula_rec(d, at);
}

// Contracts a doubled structure occurrence (X, X) at `at` into a single copy.
inline DerivPtr contract_structure(const DerivPtr& d, const Path& at) {
  if (!is_cut_free(d))
    throw TransformError(TransformError::Kind::NotCutFree,
                         "contract_structure: input contains a cut-like rule");
  return detail::contract_structure_rec(d, at);
}

// Shorthand used by the cut-elimination procedure.
inline DerivPtr con(const DerivPtr& d, const Path& at) { return contract_structure(d, at); }

}  // namespace tenseq
