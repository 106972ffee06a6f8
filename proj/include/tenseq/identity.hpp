// Identity expansion and the admissible rule macros: derivation-producing
// combinators built from primitive rules of the restricted (dagger) calculus.
#pragma once

#include <stdexcept>
#include <string>

#include "tenseq/checker.hpp"

namespace tenseq {

// Errors raised by derivation transformers when the *input* does not satisfy
// a precondition.  Internal construction bugs surface as logic_error instead.
struct TransformError : std::runtime_error {
  enum class Kind { ShapeMismatch, NotCutFree, NeedsPipeline };
  Kind kind;
  TransformError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

inline TransformError shape_error(const std::string& what) {
  return TransformError(TransformError::Kind::ShapeMismatch, what);
}

// ---------------------------------------------------------------------------
// Identity expansion: a cut-free dagger derivation of f => f, by recursion on
// the formula.  Atoms close with the restricted axiom; every connective is
// unfolded with its left and right rule (plus weakening for conjunction).
// ---------------------------------------------------------------------------

inline DerivPtr derive_identity(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Var:
    case FKind::Top:
    case FKind::Bot:
      return leaf_ida(f);

    case FKind::And: {
      const FormulaPtr &a1 = f->lhs, &a2 = f->rhs;
      auto pair = scomma(sleaf(a1), sleaf(a2));
      auto w1 = node(RuleId::Wk1, inst_at_delta(Path{}, sleaf(a2)), Sequent{pair, a1},
                     {derive_identity(a1)});
      auto w2 = node(RuleId::Wk2, inst_at_delta(Path{}, sleaf(a1)), Sequent{pair, a2},
                     {derive_identity(a2)});
      auto andr = node(RuleId::AndR, inst_none(), Sequent{pair, f}, {w1, w2});
      return node(RuleId::AndL, inst_at(Path{}), Sequent{sleaf(f), f}, {andr});
    }
    case FKind::Or: {
      const FormulaPtr &a1 = f->lhs, &a2 = f->rhs;
      auto r1 = node(RuleId::OrR1, inst_none(), Sequent{sleaf(a1), f}, {derive_identity(a1)});
      auto r2 = node(RuleId::OrR2, inst_none(), Sequent{sleaf(a2), f}, {derive_identity(a2)});
      return node(RuleId::OrL, inst_at(Path{}), Sequent{sleaf(f), f}, {r1, r2});
    }
    case FKind::Impl: {
      const FormulaPtr &a1 = f->lhs, &a2 = f->rhs;
      auto impll = node(RuleId::ImplL, inst_at(Path{}),
                        Sequent{scomma(sleaf(a1), sleaf(f)), a2},
                        {derive_identity(a1), derive_identity(a2)});
      return node(RuleId::ImplR, inst_none(), Sequent{sleaf(f), f}, {impll});
    }
    case FKind::Dia: {
      auto diar = node(RuleId::DiaR, inst_none(), Sequent{scirc(sleaf(f->lhs)), f},
                       {derive_identity(f->lhs)});
      return node(RuleId::DiaL, inst_at(Path{}), Sequent{sleaf(f), f}, {diar});
    }
    case FKind::BDia: {
      auto bdiar = node(RuleId::BDiaR, inst_none(), Sequent{sbullet(sleaf(f->lhs)), f},
                        {derive_identity(f->lhs)});
      return node(RuleId::BDiaL, inst_at(Path{}), Sequent{sleaf(f), f}, {bdiar});
    }
    case FKind::Box: {
      auto boxl = node(RuleId::BoxL, inst_at(Path{}), Sequent{sbullet(sleaf(f)), f->lhs},
                       {derive_identity(f->lhs)});
      return node(RuleId::BoxR, inst_none(), Sequent{sleaf(f), f}, {boxl});
    }
    case FKind::BBox: {
      auto bboxl = node(RuleId::BBoxL, inst_at(Path{}), Sequent{scirc(sleaf(f)), f->lhs},
                        {derive_identity(f->lhs)});
      return node(RuleId::BBoxR, inst_none(), Sequent{sleaf(f), f}, {bboxl});
    }
  }
  throw std::logic_error("derive_identity: unknown formula kind");
}

// ---------------------------------------------------------------------------
// Admissible macros.  Inputs must end in single-leaf sequents as stated.
// ---------------------------------------------------------------------------

namespace detail {
inline FormulaPtr leaf_formula_of(const DerivPtr& d, const char* who) {
  if (d->concl.ant->kind != SKind::Leaf)
    throw shape_error(std::string(who) + ": input must conclude a single-formula sequent");
  return d->concl.ant->f;
}
}  // namespace detail

// (d1 : a1 => b1, d2 : a2 => b2)  |-  a1 & a2 => b1 & b2
inline DerivPtr and_mono(const DerivPtr& d1, const DerivPtr& d2) {
  FormulaPtr a1 = detail::leaf_formula_of(d1, "and_mono");
  FormulaPtr a2 = detail::leaf_formula_of(d2, "and_mono");
  const FormulaPtr &b1 = d1->concl.suc, &b2 = d2->concl.suc;
  auto pair = scomma(sleaf(a1), sleaf(a2));
  auto w1 = node(RuleId::Wk1, inst_at_delta(Path{}, sleaf(a2)), Sequent{pair, b1}, {d1});
  auto w2 = node(RuleId::Wk2, inst_at_delta(Path{}, sleaf(a1)), Sequent{pair, b2}, {d2});
  auto andr = node(RuleId::AndR, inst_none(), Sequent{pair, fand(b1, b2)}, {w1, w2});
  return node(RuleId::AndL, inst_at(Path{}), Sequent{sleaf(fand(a1, a2)), fand(b1, b2)}, {andr});
}

// (d1 : a1 => b1, d2 : a2 => b2)  |-  a1 | a2 => b1 | b2
inline DerivPtr or_mono(const DerivPtr& d1, const DerivPtr& d2) {
  FormulaPtr a1 = detail::leaf_formula_of(d1, "or_mono");
  FormulaPtr a2 = detail::leaf_formula_of(d2, "or_mono");
  FormulaPtr b = for_(d1->concl.suc, d2->concl.suc);
  auto r1 = node(RuleId::OrR1, inst_none(), Sequent{sleaf(a1), b}, {d1});
  auto r2 = node(RuleId::OrR2, inst_none(), Sequent{sleaf(a2), b}, {d2});
  return node(RuleId::OrL, inst_at(Path{}), Sequent{sleaf(for_(a1, a2)), b}, {r1, r2});
}

// Contravariant in the antecedent: (d1 : b1 => a1, d2 : a2 => b2)  |-
// a1 -> a2 => b1 -> b2
inline DerivPtr impl_mono(const DerivPtr& d1, const DerivPtr& d2) {
  FormulaPtr b1 = detail::leaf_formula_of(d1, "impl_mono");
  FormulaPtr a2 = detail::leaf_formula_of(d2, "impl_mono");
  const FormulaPtr &a1 = d1->concl.suc, &b2 = d2->concl.suc;
  FormulaPtr lhs = fimpl(a1, a2);
  auto impll = node(RuleId::ImplL, inst_at(Path{}), Sequent{scomma(sleaf(b1), sleaf(lhs)), b2},
                    {d1, d2});
  return node(RuleId::ImplR, inst_none(), Sequent{sleaf(lhs), fimpl(b1, b2)}, {impll});
}

// (d : a => b)  |-  ♭a => ♭b for ♭ in {dia, box, bdia, bbox}
inline DerivPtr mon(FKind op, const DerivPtr& d) {
  FormulaPtr a = detail::leaf_formula_of(d, "mon");
  const FormulaPtr& b = d->concl.suc;
  switch (op) {
    case FKind::Dia: {
      auto diar = node(RuleId::DiaR, inst_none(), Sequent{scirc(sleaf(a)), fdia(b)}, {d});
      return node(RuleId::DiaL, inst_at(Path{}), Sequent{sleaf(fdia(a)), fdia(b)}, {diar});
    }
    case FKind::BDia: {
      auto bdiar = node(RuleId::BDiaR, inst_none(), Sequent{sbullet(sleaf(a)), fbdia(b)}, {d});
      return node(RuleId::BDiaL, inst_at(Path{}), Sequent{sleaf(fbdia(a)), fbdia(b)}, {bdiar});
    }
    case FKind::Box: {
      auto boxl = node(RuleId::BoxL, inst_at(Path{}), Sequent{sbullet(sleaf(fbox(a))), b}, {d});
      return node(RuleId::BoxR, inst_none(), Sequent{sleaf(fbox(a)), fbox(b)}, {boxl});
    }
    case FKind::BBox: {
      auto bboxl = node(RuleId::BBoxL, inst_at(Path{}), Sequent{scirc(sleaf(fbbox(a))), b}, {d});
      return node(RuleId::BBoxR, inst_none(), Sequent{sleaf(fbbox(a)), fbbox(b)}, {bboxl});
    }
    default:
      throw shape_error("mon: operator must be one of dia, box, bdia, bbox");
  }
}

// Associativity as a single group rearrangement.
// as1: premise Gamma[D1, (D2, D3)] => beta yields Gamma[(D1, D2), D3] => beta.
inline DerivPtr as1(const DerivPtr& d, const Path& at) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Comma || sub->right->kind != SKind::Comma)
    throw shape_error("as1: expected (D1, (D2, D3)) at the path");
  StructPtr target = scomma(scomma(sub->left, sub->right->left), sub->right->right);
  Sequent concl{replace_at(d->concl.ant, at, target), d->concl.suc};
  return node(RuleId::Ex, inst_at_delta(at, sub), concl, {d});
}

// as2: premise Gamma[(D1, D2), D3] => beta yields Gamma[D1, (D2, D3)] => beta.
inline DerivPtr as2(const DerivPtr& d, const Path& at) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Comma || sub->left->kind != SKind::Comma)
    throw shape_error("as2: expected ((D1, D2), D3) at the path");
  StructPtr target = scomma(sub->left->left, scomma(sub->left->right, sub->right));
  Sequent concl{replace_at(d->concl.ant, at, target), d->concl.suc};
  return node(RuleId::Ex, inst_at_delta(at, sub), concl, {d});
}

// Binary swap: premise Gamma[D1, D2] => beta yields Gamma[D2, D1] => beta.
inline DerivPtr ex_swap(const DerivPtr& d, const Path& at) {
  StructPtr sub = subtree_at(d->concl.ant, at);
  if (!sub || sub->kind != SKind::Comma) throw shape_error("ex_swap: expected a comma at the path");
  StructPtr target = scomma(sub->right, sub->left);
  Sequent concl{replace_at(d->concl.ant, at, target), d->concl.suc};
  return node(RuleId::Ex, inst_at_delta(at, sub), concl, {d});
}

}  // namespace tenseq
