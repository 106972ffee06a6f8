// Translations between the three calculus variants.
//
//   from_dagger : dagger -> base.  Atomic axioms widen to the unrestricted
//                 axiom and the four restricted contractions widen to the
//                 unrestricted formula contraction; the tree shape (and so
//                 the height) is preserved node for node.
//   from_ddagger: ddagger -> dagger.  Each mix becomes a chain of cuts, one
//                 per hole, duplicating the left premise; cut* becomes cut.
//   to_dagger   : base -> dagger.  Axioms expand to derived identities and
//                 formula contractions are replayed by the admissible
//                 contraction, which requires the subtree above them to be
//                 cut-free.
#pragma once

#include <stdexcept>

#include "tenseq/contract.hpp"

namespace tenseq {

// --------------------------------------------------------------------------
// dagger -> base
// --------------------------------------------------------------------------

inline DerivPtr from_dagger(const DerivPtr& d) {
  std::vector<DerivPtr> prems;
  prems.reserve(d->prems.size());
  for (const auto& p : d->prems) prems.push_back(from_dagger(p));
  switch (d->rule) {
    case RuleId::IdA:
      return node(RuleId::Id, inst_none(), d->concl, {});
    case RuleId::ConA:
    case RuleId::ConBox:
    case RuleId::ConBBox:
    case RuleId::ConImpl:
      return node(RuleId::ConF, d->inst, d->concl, std::move(prems));
    case RuleId::CutStar:
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
      throw TransformError(TransformError::Kind::ShapeMismatch,
                           "from_dagger: input is not a dagger derivation");
    default:
      return node(d->rule, d->inst, d->concl, std::move(prems));
  }
}

// --------------------------------------------------------------------------
// ddagger -> dagger
// --------------------------------------------------------------------------

inline DerivPtr from_ddagger(const DerivPtr& d) {
  std::vector<DerivPtr> prems;
  prems.reserve(d->prems.size());
  for (const auto& p : d->prems) prems.push_back(from_ddagger(p));
  switch (d->rule) {
    case RuleId::CutStar:
      return node(RuleId::Cut, d->inst, d->concl, std::move(prems));
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl: {
      // One cut per hole; the left premise is reused for every cut.  The
      // holes are pairwise disjoint, so the substitutions commute and the
      // remaining holes keep addressing the cut formula.
      const DerivPtr& left = prems[0];
      const StructPtr& delta = left->concl.ant;
      DerivPtr cur = prems[1];
      for (const Path& h : *d->inst.holes) {
        Sequent concl{replace_at(cur->concl.ant, h, delta), cur->concl.suc};
        cur = node(RuleId::Cut, inst_cut(h, d->inst.cutf), concl, {left, cur});
      }
      return cur;
    }
    case RuleId::Id:
    case RuleId::ConF:
      throw TransformError(TransformError::Kind::ShapeMismatch,
                           "from_ddagger: input is not a ddagger derivation");
    default:
      return node(d->rule, d->inst, d->concl, std::move(prems));
  }
}

// --------------------------------------------------------------------------
// base -> dagger
// --------------------------------------------------------------------------

inline DerivPtr to_dagger(const DerivPtr& d) {
  switch (d->rule) {
    case RuleId::Id:
      return derive_identity(d->concl.suc);
    case RuleId::ConF: {
      if (!is_cut_free(d->prems[0]))
        throw TransformError(
            TransformError::Kind::NeedsPipeline,
            "to_dagger: formula contraction above a cut needs cut elimination first");
      return contract_formula(to_dagger(d->prems[0]), *d->inst.at);
    }
    case RuleId::CutStar:
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
      throw TransformError(TransformError::Kind::ShapeMismatch,
                           "to_dagger: input is not a base derivation");
    default: {
      std::vector<DerivPtr> prems;
      prems.reserve(d->prems.size());
      for (const auto& p : d->prems) prems.push_back(to_dagger(p));
      return node(d->rule, d->inst, d->concl, std::move(prems));
    }
  }
}

}  // namespace tenseq
