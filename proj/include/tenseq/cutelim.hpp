// The cut-elimination engine.  Cuts are first split into four cut-like rules
// keyed by the shape of the cut formula (atomic mix, box/bbox mix,
// implication mix, analytic cut); then uppermost cut-like nodes — those whose
// premise subtrees are cut-free — are rewritten one at a time by the four
// reduction scenarios until none remain.  Every rewrite preserves the end
// sequent, revalidates through node(), and logs a trace step whose
// lexicographic measure (cut-formula complexity, relevant premise height)
// strictly decreases.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tenseq/contract.hpp"
#include "tenseq/invert.hpp"

namespace tenseq {

// ---------------------------------------------------------------------------
// Cut classification
// ---------------------------------------------------------------------------

enum class CutKind { MixAtom, MixSharpBox, MixSharpBBox, MixImplication, Star };

inline CutKind classify_cut(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Var:
    case FKind::Top:
    case FKind::Bot:
      return CutKind::MixAtom;
    case FKind::Box:
      return CutKind::MixSharpBox;
    case FKind::BBox:
      return CutKind::MixSharpBBox;
    case FKind::Impl:
      return CutKind::MixImplication;
    default:
      return CutKind::Star;  // And, Or, Dia, BDia
  }
}

inline RuleId cut_rule_for(const FormulaPtr& f) {
  switch (classify_cut(f)) {
    case CutKind::MixAtom: return RuleId::MixA;
    case CutKind::MixSharpBox: return RuleId::MixBox;
    case CutKind::MixSharpBBox: return RuleId::MixBBox;
    case CutKind::MixImplication: return RuleId::MixImpl;
    default: return RuleId::CutStar;
  }
}

// Builds the cut-like node for `cutf` over left : Delta => cutf and right :
// S => beta with Leaf(cutf) at every hole; conclusion S[holes |-> Delta].
inline DerivPtr mk_cutlike(const FormulaPtr& cutf, const DerivPtr& left, const DerivPtr& right,
                           std::vector<Path> holes) {
  std::sort(holes.begin(), holes.end(), path_less);
  Sequent concl{replace_many(right->concl.ant, holes, left->concl.ant), right->concl.suc};
  RuleId rule = cut_rule_for(cutf);
  if (rule == RuleId::CutStar) {
    if (holes.size() != 1)
      throw std::logic_error("mk_cutlike: the analytic cut takes exactly one occurrence");
    return node(RuleId::CutStar, inst_cut(holes[0], cutf), concl, {left, right});
  }
  return node(rule, inst_mix(std::move(holes), cutf), concl, {left, right});
}

// Each Cut node becomes the single-hole cut-like rule of its formula; the end
// sequent is unchanged.
inline DerivPtr split_cuts(const DerivPtr& d) {
  std::vector<DerivPtr> prems;
  prems.reserve(d->prems.size());
  for (const auto& p : d->prems) prems.push_back(split_cuts(p));
  if (d->rule == RuleId::Cut) return mk_cutlike(d->inst.cutf, prems[0], prems[1], {*d->inst.at});
  return node(d->rule, d->inst, d->concl, std::move(prems));
}

// ---------------------------------------------------------------------------
// Reduction traces
// ---------------------------------------------------------------------------

// One rewrite step.  The measure pairs are (cut-formula complexity, relevant
// premise height — right premise for the mixes, left for the analytic cut);
// the after pair is the maximum over the newly created cut-like nodes, or
// -1,-1 when the step leaves no residual.
struct TraceStep {
  std::string addr;
  int scenario = 0;        // 1..4
  std::string case_label;  // "base", "1", "2.1".."2.4", "const"
  int c_before = 0, h_before = 0;
  int c_after = -1, h_after = -1;
};

using Trace = std::vector<TraceStep>;

inline const char* scenario_name(int s) {
  switch (s) {
    case 1: return "I";
    case 2: return "II";
    case 3: return "III";
    default: return "IV";
  }
}

inline std::string trace_line(const TraceStep& t) {
  return t.addr + " " + scenario_name(t.scenario) + " " + t.case_label + " " +
         std::to_string(t.c_before) + "," + std::to_string(t.h_before) + " -> " +
         std::to_string(t.c_after) + "," + std::to_string(t.h_after);
}

// Raised when the step budget runs out; carries the steps completed so far.
struct FuelExhausted : std::runtime_error {
  Trace trace;
  FuelExhausted(const std::string& what, Trace t)
      : std::runtime_error(what), trace(std::move(t)) {}
};

// 10 * (tree size) * (max cut-formula complexity + 1)^2 — generous for valid
// inputs, finite for buggy ones.
inline long long default_fuel(const DerivPtr& d) {
  int maxc = 0;
  std::vector<DerivPtr> stack{d};
  while (!stack.empty()) {
    DerivPtr n = stack.back();
    stack.pop_back();
    if (is_cut_like(n->rule)) maxc = std::max(maxc, complexity(n->inst.cutf));
    for (const auto& p : n->prems) stack.push_back(p);
  }
  return 10LL * node_count(d) * (maxc + 1) * (maxc + 1);
}

// ---------------------------------------------------------------------------
// Uppermost selection
// ---------------------------------------------------------------------------

// Address of the leftmost cut-like node whose premise subtrees are all
// cut-free; nullopt iff the derivation is cut-free.
inline std::optional<NodeAddr> find_uppermost(const DerivPtr& d) {
  for (std::size_t i = 0; i < d->prems.size(); ++i) {
    if (!is_cut_free(d->prems[i])) {
      auto sub = find_uppermost(d->prems[i]);
      NodeAddr addr{static_cast<int>(i)};
      addr.insert(addr.end(), sub->begin(), sub->end());
      return addr;
    }
  }
  if (is_cut_like(d->rule)) return NodeAddr{};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The constant shortcut: a mix on top/bot dissolves without induction
// ---------------------------------------------------------------------------

namespace detail {

inline DerivPtr reduce_mix_const(const DerivPtr& d) {
  const DerivPtr& left = d->prems[0];
  const StructPtr& delta = left->concl.ant;
  std::vector<Path> holes = *d->inst.holes;
  std::sort(holes.begin(), holes.end(), path_less);
  if (d->inst.cutf->kind == FKind::Bot)
    // One bot step over the left premise Delta => F; everything else is
    // discarded context.
    return node(RuleId::BotRule, inst_at_delta(holes[0], delta), d->concl, {left});
  // One top step per occurrence over the right premise.
  DerivPtr cur = d->prems[1];
  for (const Path& h : holes) {
    Sequent concl{replace_at(cur->concl.ant, h, delta), cur->concl.suc};
    cur = node(RuleId::TopRule, inst_at_delta(h, delta), concl, {cur});
  }
  return cur;
}

}  // namespace detail

// Rewrites the atomic mix with constant cut formula at `at`, returning the
// whole derivation with that node replaced plus the single trace step.
inline std::pair<DerivPtr, TraceStep> eliminate_mix_const(const DerivPtr& d, const NodeAddr& at) {
  DerivPtr n = node_at(d, at);
  if (!n || n->rule != RuleId::MixA ||
      (n->inst.cutf->kind != FKind::Top && n->inst.cutf->kind != FKind::Bot))
    throw shape_error("eliminate_mix_const: node is not an atomic mix on a constant");
  TraceStep step;
  step.addr = addr_to_string(at);
  step.scenario = 1;
  step.case_label = "const";
  step.c_before = 0;
  step.h_before = height(n->prems[1]);
  return {splice_at(d, at, detail::reduce_mix_const(n)), step};
}

// ---------------------------------------------------------------------------
// The reduction engine
// ---------------------------------------------------------------------------

namespace detail {

struct Eliminator {
  long long fuel;
  Trace trace;

  static bool lex_less(std::pair<int, int> a, std::pair<int, int> b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  }

  static std::pair<int, int> measure_of(const DerivPtr& n) {
    return {complexity(n->inst.cutf),
            n->rule == RuleId::CutStar ? height(n->prems[0]) : height(n->prems[1])};
  }

  static std::pair<int, int> after_of(const std::vector<DerivPtr>& created) {
    std::pair<int, int> after{-1, -1};
    for (const auto& n : created) {
      auto m = measure_of(n);
      if (after.first < 0 || lex_less(after, m)) after = m;
    }
    return after;
  }

  // ---- hole-set bookkeeping -------------------------------------------

  static std::vector<Path> under_stripped(const std::vector<Path>& hs, const Path& r) {
    std::vector<Path> out;
    for (const auto& h : hs)
      if (is_prefix(r, h)) out.emplace_back(h.begin() + static_cast<std::ptrdiff_t>(r.size()), h.end());
    return out;
  }
  static std::vector<Path> not_under(const std::vector<Path>& hs, const Path& r) {
    std::vector<Path> out;
    for (const auto& h : hs)
      if (!is_prefix(r, h)) out.push_back(h);
    return out;
  }
  static std::vector<Path> prefixed(const Path& pre, const std::vector<Path>& hs) {
    std::vector<Path> out;
    out.reserve(hs.size());
    for (const auto& h : hs) out.push_back(pre + h);
    return out;
  }
  static bool contains(const std::vector<Path>& hs, const Path& p) {
    for (const auto& h : hs)
      if (h == p) return true;
    return false;
  }

  void log(const NodeAddr& where, int scenario, std::string label, std::pair<int, int> before,
           std::pair<int, int> after) {
    if (after.first >= 0 && !lex_less(after, before))
      throw std::logic_error("cut elimination: measure did not decrease at " +
                             addr_to_string(where) + " (" + std::to_string(before.first) + "," +
                             std::to_string(before.second) + " -> " +
                             std::to_string(after.first) + "," + std::to_string(after.second) +
                             ")");
    TraceStep t;
    t.addr = addr_to_string(where);
    t.scenario = scenario;
    t.case_label = std::move(label);
    t.c_before = before.first;
    t.h_before = before.second;
    t.c_after = after.first;
    t.h_after = after.second;
    trace.push_back(std::move(t));
  }

  void spend(const NodeAddr& where) {
    if (fuel-- <= 0)
      throw FuelExhausted("cut elimination ran out of fuel at " + addr_to_string(where), trace);
  }

  // ---- main loop -------------------------------------------------------

  DerivPtr run(DerivPtr d, const NodeAddr& base) {
    while (auto at = find_uppermost(d)) {
      NodeAddr full = base;
      full.insert(full.end(), at->begin(), at->end());
      DerivPtr repl = reduce(node_at(d, *at), full);
      d = splice_at(d, *at, repl);
    }
    return d;
  }

  // One reduction of a cut-like node whose premises are cut-free.
  DerivPtr reduce(const DerivPtr& d, const NodeAddr& where) {
    spend(where);
    const auto before = measure_of(d);
    DerivPtr out;
    if (d->rule == RuleId::MixA &&
        (d->inst.cutf->kind == FKind::Top || d->inst.cutf->kind == FKind::Bot)) {
      out = reduce_mix_const(d);
      log(where, 1, "const", before, {-1, -1});
    } else if (d->rule == RuleId::CutStar) {
      out = reduce_star(d, where, before);
    } else {
      out = reduce_mix(d, where, before);
    }
    if (!equal(out->concl.ant, d->concl.ant) || !equal(out->concl.suc, d->concl.suc))
      throw std::logic_error("cut elimination: end sequent changed at " + addr_to_string(where));
    return out;
  }

  // Scenarios I-III: induction on the right premise of a mix.
  DerivPtr reduce_mix(const DerivPtr& d, const NodeAddr& where, std::pair<int, int> before) {
    const int scenario = d->rule == RuleId::MixA ? 1 : d->rule == RuleId::MixImpl ? 3 : 2;
    const DerivPtr& L = d->prems[0];  // Delta => x
    const DerivPtr& R = d->prems[1];  // Gamma[x]^n => beta
    const FormulaPtr& cutf = d->inst.cutf;
    const StructPtr& delta = L->concl.ant;
    const std::vector<Path>& holes = *d->inst.holes;
    const Sequent& concl = d->concl;

    std::vector<DerivPtr> created;
    auto mix_over = [&](const DerivPtr& right, std::vector<Path> hs) -> DerivPtr {
      if (hs.empty()) return right;
      DerivPtr m = mk_cutlike(cutf, L, right, std::move(hs));
      created.push_back(m);
      return m;
    };
    auto cut_over = [&](const FormulaPtr& f, const DerivPtr& left, const DerivPtr& right,
                        const Path& hole) -> DerivPtr {
      DerivPtr m = mk_cutlike(f, left, right, {hole});
      created.push_back(m);
      return m;
    };
    // In Scenario I the principal cases are numbered 2.1 (top), 2.2 (bot),
    // 2.3 (contraction), 2.4 (weakening); Scenarios II and III group all of
    // them under 2.1.
    auto principal = [&](const char* in_one) { return scenario == 1 ? in_one : "2.1"; };

    switch (R->rule) {
      case RuleId::IdA: {
        // Base case: Gamma[x]^n = beta = x, so the conclusion is exactly the
        // left premise's.
        if (scenario != 1)
          throw std::logic_error("cut elimination: atomic axiom under a non-atomic mix");
        log(where, scenario, "base", before, {-1, -1});
        return L;
      }

      case RuleId::TopRule: {
        // Occurrences inside the replaced structure die by substitution into
        // the stored instantiation; the rest permute above.
        const Path& r = *R->inst.at;
        auto dead = under_stripped(holes, r);
        DerivPtr m = mix_over(R->prems[0], not_under(holes, r));
        StructPtr ndelta = replace_many(R->inst.delta, dead, delta);
        DerivPtr out = node(RuleId::TopRule, inst_at_delta(r, ndelta), concl, {m});
        log(where, scenario, dead.empty() ? "1" : principal("2.1"), before, after_of(created));
        return out;
      }
      case RuleId::BotRule: {
        // Only occurrences inside the kept structure survive into the
        // premise; the discarded context swallows the rest.
        const Path& r = *R->inst.at;
        auto inner = under_stripped(holes, r);
        DerivPtr m = mix_over(R->prems[0], inner);
        StructPtr ndelta = replace_many(R->inst.delta, inner, delta);
        DerivPtr out = node(RuleId::BotRule, inst_at_delta(r, ndelta), concl, {m});
        log(where, scenario, principal("2.2"), before, after_of(created));
        return out;
      }
      case RuleId::DualCircBullet:
      case RuleId::DualBulletCirc: {
        const Path& r = *R->inst.at;
        std::vector<Path> inner;
        for (const auto& h : holes) {
          if (!is_prefix(r, h)) continue;  // discarded context
          Path rel(h.begin() + static_cast<std::ptrdiff_t>(r.size()), h.end());
          if (rel[0] == Step::L)
            inner.push_back(Path{Step::L, Step::U} + Path(rel.begin() + 1, rel.end()));
          else  // rel = R.U.s: the marker moves to the other side
            inner.push_back(Path{Step::R} + Path(rel.begin() + 2, rel.end()));
        }
        DerivPtr m = mix_over(R->prems[0], inner);
        DerivPtr out = node(R->rule, inst_at(r), concl, {m});
        log(where, scenario, principal("2.2"), before, after_of(created));
        return out;
      }

      case RuleId::ConA:
      case RuleId::ConBox:
      case RuleId::ConBBox:
      case RuleId::ConImpl: {
        const Path& r = *R->inst.at;
        if (contains(holes, r)) {
          // Principal contraction: double the occurrence, eliminate the
          // resulting mix (its right premise is one step shorter), then
          // contract the doubled structure.
          std::vector<Path> nh = not_under(holes, r);
          nh.push_back(r + Path{Step::L});
          nh.push_back(r + Path{Step::R});
          DerivPtr m = mix_over(R->prems[0], std::move(nh));
          log(where, scenario, principal("2.3"), before, after_of(created));
          DerivPtr elim = run(m, where);
          return contract_structure(elim, r);
        }
        DerivPtr m = mix_over(R->prems[0], holes);
        DerivPtr out = node(R->rule, inst_at(r), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }

      case RuleId::Wk1:
      case RuleId::Wk2: {
        const Path& r = *R->inst.at;
        const Step keep = R->rule == RuleId::Wk1 ? Step::L : Step::R;
        const Step drop = R->rule == RuleId::Wk1 ? Step::R : Step::L;
        std::vector<Path> live = not_under(holes, r);
        for (auto& s : under_stripped(holes, r + Path{keep})) live.push_back(r + s);
        auto dead = under_stripped(holes, r + Path{drop});
        DerivPtr m = mix_over(R->prems[0], std::move(live));
        StructPtr ndelta = replace_many(R->inst.delta, dead, delta);
        DerivPtr out = node(R->rule, inst_at_delta(r, ndelta), concl, {m});
        log(where, scenario, dead.empty() ? "1" : principal("2.4"), before, after_of(created));
        return out;
      }
      case RuleId::Ex: {
        const Path& r = *R->inst.at;
        StructPtr group = subtree_at(R->concl.ant, r);
        std::vector<Path> mapped = not_under(holes, r);
        std::vector<Path> inner_rel;
        for (const auto& h : holes) {
          if (!is_prefix(r, h)) continue;
          Path rel(h.begin() + static_cast<std::ptrdiff_t>(r.size()), h.end());
          Path mrel = LeftInverter::remap_through_ex(group, R->inst.delta, rel);
          inner_rel.push_back(mrel);
          mapped.push_back(r + mrel);
        }
        StructPtr ndelta = replace_many(R->inst.delta, inner_rel, delta);
        DerivPtr m = mix_over(R->prems[0], std::move(mapped));
        DerivPtr out = node(RuleId::Ex, inst_at_delta(r, ndelta), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::ConCirc:
      case RuleId::ConBullet: {
        const Path& r = *R->inst.at;
        std::vector<Path> mapped = not_under(holes, r);
        for (const auto& h : holes) {
          if (!is_prefix(r, h)) continue;
          Path rel(h.begin() + static_cast<std::ptrdiff_t>(r.size()), h.end());  // U.X.s
          mapped.push_back(r + Path{rel[1], Step::U} + Path(rel.begin() + 2, rel.end()));
        }
        DerivPtr m = mix_over(R->prems[0], std::move(mapped));
        DerivPtr out = node(R->rule, inst_at(r), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }

      case RuleId::AndL:
      case RuleId::DiaL:
      case RuleId::BDiaL: {
        DerivPtr m = mix_over(R->prems[0], holes);
        DerivPtr out = node(R->rule, inst_at(*R->inst.at), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::BoxL:
      case RuleId::BBoxL: {
        const Path& r = *R->inst.at;
        if (contains(holes, r + Path{Step::U})) {
          // Principal sharp-left: invert the left premise under the marker
          // and cut on the strictly smaller body.
          const bool is_box = R->rule == RuleId::BoxL;
          if (is_box != (d->rule == RuleId::MixBox))
            throw std::logic_error("cut elimination: mismatched sharp mix");
          DerivPtr e = invert_right(L, is_box ? RightInvKind::Box : RightInvKind::BBox);
          DerivPtr m = mix_over(R->prems[0], not_under(holes, r));
          DerivPtr out = cut_over(cutf->lhs, e, m, r);
          log(where, scenario, "2.2", before, after_of(created));
          return out;
        }
        DerivPtr m = mix_over(R->prems[0], holes);
        DerivPtr out = node(R->rule, inst_at(r), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::OrL: {
        DerivPtr m1 = mix_over(R->prems[0], holes);
        DerivPtr m2 = mix_over(R->prems[1], holes);
        DerivPtr out = node(RuleId::OrL, inst_at(*R->inst.at), concl, {m1, m2});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::ImplL: {
        const Path& r = *R->inst.at;
        auto payload = under_stripped(holes, r + Path{Step::L});
        if (contains(holes, r + Path{Step::R})) {
          // Principal implication-left: mix into the payload, invert the
          // left premise, and chain two cuts on the strictly smaller halves.
          if (d->rule != RuleId::MixImpl)
            throw std::logic_error(
                "cut elimination: implication principal under a non-implication mix");
          DerivPtr ma = mix_over(R->prems[0], std::move(payload));   // Sigma' => a1
          DerivPtr e = invert_right(L, RightInvKind::Impl);          // a1, Delta => a2
          DerivPtr ca = cut_over(cutf->lhs, ma, e, Path{Step::L});   // Sigma', Delta => a2
          DerivPtr mb = mix_over(R->prems[1], not_under(holes, r));  // Gamma'[a2] => beta
          DerivPtr out = cut_over(cutf->rhs, ca, mb, r);
          log(where, scenario, "2.2", before, after_of(created));
          return out;
        }
        DerivPtr m1 = mix_over(R->prems[0], std::move(payload));
        DerivPtr m2 = mix_over(R->prems[1], not_under(holes, r));
        DerivPtr out = node(RuleId::ImplL, inst_at(r), concl, {m1, m2});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }

      case RuleId::AndR: {
        DerivPtr m1 = mix_over(R->prems[0], holes);
        DerivPtr m2 = mix_over(R->prems[1], holes);
        DerivPtr out = node(RuleId::AndR, inst_none(), concl, {m1, m2});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::OrR1:
      case RuleId::OrR2: {
        DerivPtr m = mix_over(R->prems[0], holes);
        DerivPtr out = node(R->rule, inst_none(), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::ImplR: {
        DerivPtr m = mix_over(R->prems[0], prefixed(Path{Step::R}, holes));
        DerivPtr out = node(RuleId::ImplR, inst_none(), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::DiaR:
      case RuleId::BDiaR: {
        std::vector<Path> stripped;
        stripped.reserve(holes.size());
        for (const auto& h : holes) stripped.emplace_back(h.begin() + 1, h.end());
        DerivPtr m = mix_over(R->prems[0], std::move(stripped));
        DerivPtr out = node(R->rule, inst_none(), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }
      case RuleId::BoxR:
      case RuleId::BBoxR: {
        DerivPtr m = mix_over(R->prems[0], prefixed(Path{Step::U}, holes));
        DerivPtr out = node(R->rule, inst_none(), concl, {m});
        log(where, scenario, "1", before, after_of(created));
        return out;
      }

      default:
        throw std::logic_error("cut elimination: unexpected rule above an uppermost mix");
    }
  }

  // Scenario IV: induction on the left premise of an analytic cut.
  DerivPtr reduce_star(const DerivPtr& d, const NodeAddr& where, std::pair<int, int> before) {
    const DerivPtr& L = d->prems[0];  // Delta => cutf
    const DerivPtr& R = d->prems[1];  // Gamma[cutf] => beta
    const FormulaPtr& cutf = d->inst.cutf;
    const Path& q = *d->inst.at;
    const Sequent& concl = d->concl;

    std::vector<DerivPtr> created;
    auto cut_over = [&](const FormulaPtr& f, const DerivPtr& left, const DerivPtr& right,
                        const Path& hole) -> DerivPtr {
      DerivPtr m = mk_cutlike(f, left, right, {hole});
      created.push_back(m);
      return m;
    };
    auto star_over = [&](const DerivPtr& left) -> DerivPtr {
      return cut_over(cutf, left, R, q);
    };

    switch (L->rule) {
      // The cut dissolves: the left premise's discarding step re-targets to
      // the occurrence inside the full conclusion.
      case RuleId::BotRule: {
        DerivPtr out = node(RuleId::BotRule, inst_at_delta(q + *L->inst.at, L->inst.delta),
                            concl, {L->prems[0]});
        log(where, 4, "2.1", before, {-1, -1});
        return out;
      }
      case RuleId::DualCircBullet:
      case RuleId::DualBulletCirc: {
        DerivPtr out = node(L->rule, inst_at(q + *L->inst.at), concl, {L->prems[0]});
        log(where, 4, "2.1", before, {-1, -1});
        return out;
      }

      // Principal right-introduction steps: invert the tracked occurrence on
      // the right and cut on the immediate subformulas.
      case RuleId::AndR: {
        DerivPtr inv = invert_left(R, q, LeftInvKind::And);
        std::pair<int, int> m1{complexity(cutf->lhs), height(L->prems[0])};
        std::pair<int, int> m2{complexity(cutf->rhs), height(L->prems[1])};
        log(where, 4, "2.2", before, lex_less(m1, m2) ? m2 : m1);
        DerivPtr c1 = mk_cutlike(cutf->lhs, L->prems[0], inv, {q + Path{Step::L}});
        DerivPtr d1 = run(c1, where);
        DerivPtr c2 = mk_cutlike(cutf->rhs, L->prems[1], d1, {q + Path{Step::R}});
        DerivPtr d2 = run(c2, where);
        return contract_structure(d2, q);
      }
      case RuleId::OrR1:
      case RuleId::OrR2: {
        const bool first = L->rule == RuleId::OrR1;
        DerivPtr inv = invert_left(R, q, first ? LeftInvKind::Or1 : LeftInvKind::Or2);
        DerivPtr out = cut_over(first ? cutf->lhs : cutf->rhs, L->prems[0], inv, q);
        log(where, 4, "2.3", before, after_of(created));
        return out;
      }
      case RuleId::DiaR:
      case RuleId::BDiaR: {
        const bool fwd = L->rule == RuleId::DiaR;
        DerivPtr inv = invert_left(R, q, fwd ? LeftInvKind::Dia : LeftInvKind::BDia);
        DerivPtr out = cut_over(cutf->lhs, L->prems[0], inv, q + Path{Step::U});
        log(where, 4, "2.3", before, after_of(created));
        return out;
      }

      // Non-principal, succedent-preserving steps permute below the cut.
      case RuleId::TopRule:
      case RuleId::Wk1:
      case RuleId::Wk2:
      case RuleId::Ex: {
        DerivPtr c = star_over(L->prems[0]);
        DerivPtr out =
            node(L->rule, inst_at_delta(q + *L->inst.at, L->inst.delta), concl, {c});
        log(where, 4, "1", before, after_of(created));
        return out;
      }
      case RuleId::AndL:
      case RuleId::DiaL:
      case RuleId::BDiaL:
      case RuleId::BoxL:
      case RuleId::BBoxL:
      case RuleId::ConCirc:
      case RuleId::ConBullet:
      case RuleId::ConA:
      case RuleId::ConBox:
      case RuleId::ConBBox:
      case RuleId::ConImpl: {
        DerivPtr c = star_over(L->prems[0]);
        DerivPtr out = node(L->rule, inst_at(q + *L->inst.at), concl, {c});
        log(where, 4, "1", before, after_of(created));
        return out;
      }
      case RuleId::OrL: {
        DerivPtr c1 = star_over(L->prems[0]);
        DerivPtr c2 = star_over(L->prems[1]);
        DerivPtr out = node(RuleId::OrL, inst_at(q + *L->inst.at), concl, {c1, c2});
        log(where, 4, "1", before, after_of(created));
        return out;
      }
      case RuleId::ImplL: {
        DerivPtr c = star_over(L->prems[1]);
        DerivPtr out = node(RuleId::ImplL, inst_at(q + *L->inst.at), concl, {L->prems[0], c});
        log(where, 4, "1", before, after_of(created));
        return out;
      }

      default:
        throw std::logic_error("cut elimination: unexpected rule above an uppermost analytic cut");
    }
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

// One reduction of the uppermost cut-like node at `at`.  Simple cases yield a
// single trace step; composite ones (principal contraction, principal
// conjunction) also carry the steps of the nested eliminations they must run
// before the admissible contraction can fire.
inline std::pair<DerivPtr, Trace> reduce_at(const DerivPtr& d, const NodeAddr& at,
                                            std::optional<long long> fuel = std::nullopt) {
  DerivPtr n = node_at(d, at);
  if (!n || !is_cut_like(n->rule) || !is_cut_free(n->prems[0]) || !is_cut_free(n->prems[1]))
    throw shape_error("reduce_at: node is not a cut-like rule with cut-free premises");
  detail::Eliminator e{fuel ? *fuel : default_fuel(n), {}};
  DerivPtr repl = e.reduce(n, at);
  return {splice_at(d, at, repl), std::move(e.trace)};
}

struct EliminationResult {
  DerivPtr derivation;
  Trace trace;
};

// Exhaustively rewrites uppermost cut-like nodes until none remain.  `fuel`
// bounds the number of reduction steps (including those of nested composite
// reductions).
inline EliminationResult eliminate_all(const DerivPtr& d, long long fuel) {
  detail::Eliminator e{fuel, {}};
  DerivPtr out = e.run(d, NodeAddr{});
  return {out, std::move(e.trace)};
}

namespace detail {

inline DerivPtr pipeline_impl(const DerivPtr& d, const std::optional<long long>& fuel,
                              Trace& trace);

// Pipeline stages 1+2: widen axioms into derived identities and replay
// unrestricted contractions; each contraction premise is piped in full first
// so the admissible contraction only ever sees cut-free input.
inline DerivPtr expand_base_nodes(const DerivPtr& d, const std::optional<long long>& fuel,
                                  Trace& trace) {
  if (d->rule == RuleId::Id) return derive_identity(d->concl.suc);
  if (d->rule == RuleId::ConF)
    return contract_formula(pipeline_impl(d->prems[0], fuel, trace), *d->inst.at);
  std::vector<DerivPtr> prems;
  prems.reserve(d->prems.size());
  for (const auto& p : d->prems) prems.push_back(expand_base_nodes(p, fuel, trace));
  return node(d->rule, d->inst, d->concl, std::move(prems));
}

inline DerivPtr pipeline_impl(const DerivPtr& d, const std::optional<long long>& fuel,
                              Trace& trace) {
  DerivPtr split = split_cuts(expand_base_nodes(d, fuel, trace));
  Eliminator e{fuel ? *fuel : default_fuel(split), {}};
  DerivPtr out = e.run(split, NodeAddr{});
  trace.insert(trace.end(), e.trace.begin(), e.trace.end());
  return out;
}

}  // namespace detail

// The full route from an unrestricted-calculus derivation to a cut-free
// restricted one: expand axioms, replay contractions, split cuts, eliminate.
inline EliminationResult pipeline(const DerivPtr& d,
                                  std::optional<long long> fuel = std::nullopt) {
  Trace trace;
  DerivPtr out = detail::pipeline_impl(d, fuel, trace);
  return {out, std::move(trace)};
}

}  // namespace tenseq
