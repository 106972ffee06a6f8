// Derivation trees: rule identifiers, instantiation records, and the basic
// measures (height, cut-freeness, node addressing).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tenseq/syntax.hpp"

namespace tenseq {

// Every schema choice is explicit: Wk is split by kept side, OrR by disjunct,
// the sharp contraction by modality, so that checking is search-free.
enum class RuleId : std::uint8_t {
  Id, IdA,
  TopRule, BotRule,
  AndL, AndR, OrL, OrR1, OrR2, ImplL, ImplR,
  DiaL, DiaR, BDiaL, BDiaR, BBoxL, BBoxR, BoxL, BoxR,
  ConCirc, ConBullet, ConF, ConA, ConBox, ConBBox, ConImpl,
  Wk1, Wk2, Ex,
  DualCircBullet, DualBulletCirc,
  Cut, MixA, MixBox, MixBBox, MixImpl, CutStar,
};

inline constexpr int kRuleCount = 37;

inline const char* rule_token(RuleId r) {
  switch (r) {
    case RuleId::Id: return "id";
    case RuleId::IdA: return "ida";
    case RuleId::TopRule: return "top";
    case RuleId::BotRule: return "bot";
    case RuleId::AndL: return "andl";
    case RuleId::AndR: return "andr";
    case RuleId::OrL: return "orl";
    case RuleId::OrR1: return "orr1";
    case RuleId::OrR2: return "orr2";
    case RuleId::ImplL: return "impll";
    case RuleId::ImplR: return "implr";
    case RuleId::DiaL: return "dial";
    case RuleId::DiaR: return "diar";
    case RuleId::BDiaL: return "bdial";
    case RuleId::BDiaR: return "bdiar";
    case RuleId::BBoxL: return "bboxl";
    case RuleId::BBoxR: return "bboxr";
    case RuleId::BoxL: return "boxl";
    case RuleId::BoxR: return "boxr";
    case RuleId::ConCirc: return "con_o";
    case RuleId::ConBullet: return "con_b";
    case RuleId::ConF: return "conf";
    case RuleId::ConA: return "cona";
    case RuleId::ConBox: return "conbox";
    case RuleId::ConBBox: return "conbbox";
    case RuleId::ConImpl: return "conimpl";
    case RuleId::Wk1: return "wk1";
    case RuleId::Wk2: return "wk2";
    case RuleId::Ex: return "ex";
    case RuleId::DualCircBullet: return "dual_ob";
    case RuleId::DualBulletCirc: return "dual_bo";
    case RuleId::Cut: return "cut";
    case RuleId::MixA: return "mixa";
    case RuleId::MixBox: return "mixbox";
    case RuleId::MixBBox: return "mixbbox";
    case RuleId::MixImpl: return "miximpl";
    case RuleId::CutStar: return "cutstar";
  }
  return "?";
}

inline std::optional<RuleId> rule_from_token(const std::string& t) {
  for (int i = 0; i < kRuleCount; ++i) {
    RuleId r = static_cast<RuleId>(i);
    if (t == rule_token(r)) return r;
  }
  return std::nullopt;
}

inline int rule_arity(RuleId r) {
  switch (r) {
    case RuleId::Id:
    case RuleId::IdA:
      return 0;
    case RuleId::AndR:
    case RuleId::OrL:
    case RuleId::ImplL:
    case RuleId::Cut:
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
    case RuleId::CutStar:
      return 2;
    default:
      return 1;
  }
}

inline bool is_cut_like(RuleId r) {
  switch (r) {
    case RuleId::Cut:
    case RuleId::MixA:
    case RuleId::MixBox:
    case RuleId::MixBBox:
    case RuleId::MixImpl:
    case RuleId::CutStar:
      return true;
    default:
      return false;
  }
}

// Instantiation record.  The fields used per rule are fixed (see the checker);
// unused fields must be absent.  `side` is reserved in the file format but
// currently unused by every rule (OrR and Wk are split into distinct rules).
struct Inst {
  std::optional<Path> at;                 // principal position in the conclusion
  StructPtr delta;                        // replaced/introduced/rearranged structure
  FormulaPtr cutf;                        // cut formula
  std::optional<std::vector<Path>> holes; // Mix occurrence positions
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent concl;
  RuleId rule;
  Inst inst;
  std::vector<DerivPtr> prems;

  Derivation(Sequent c, RuleId r, Inst i, std::vector<DerivPtr> p)
      : concl(std::move(c)), rule(r), inst(std::move(i)), prems(std::move(p)) {}
};

// Raw constructor; performs no validity checking (see checker.hpp's node()).
inline DerivPtr mk_deriv(Sequent concl, RuleId rule, Inst inst, std::vector<DerivPtr> prems) {
  return std::make_shared<Derivation>(std::move(concl), rule, std::move(inst), std::move(prems));
}

// Axioms have height 0; every rule adds 1.
inline int height(const DerivPtr& d) {
  int h = -1;
  for (const auto& p : d->prems) h = std::max(h, height(p));
  return h + 1;
}

inline int node_count(const DerivPtr& d) {
  int n = 1;
  for (const auto& p : d->prems) n += node_count(p);
  return n;
}

inline bool is_cut_free(const DerivPtr& d) {
  if (is_cut_like(d->rule)) return false;
  for (const auto& p : d->prems)
    if (!is_cut_free(p)) return false;
  return true;
}

inline bool equal(const Inst& a, const Inst& b) {
  if (a.at.has_value() != b.at.has_value()) return false;
  if (a.at && *a.at != *b.at) return false;
  if ((a.delta != nullptr) != (b.delta != nullptr)) return false;
  if (a.delta && !equal(a.delta, b.delta)) return false;
  if ((a.cutf != nullptr) != (b.cutf != nullptr)) return false;
  if (a.cutf && !equal(a.cutf, b.cutf)) return false;
  if (a.holes.has_value() != b.holes.has_value()) return false;
  if (a.holes && *a.holes != *b.holes) return false;
  return true;
}

inline bool equal(const DerivPtr& a, const DerivPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->rule != b->rule || !equal(a->concl, b->concl) || !equal(a->inst, b->inst)) return false;
  if (a->prems.size() != b->prems.size()) return false;
  for (std::size_t i = 0; i < a->prems.size(); ++i)
    if (!equal(a->prems[i], b->prems[i])) return false;
  return true;
}

// Node addresses: "e" for the root, then dotted premise indices ("0.1").
using NodeAddr = std::vector<int>;

inline std::string addr_to_string(const NodeAddr& a) {
  if (a.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(a[i]);
  }
  return out;
}

inline DerivPtr node_at(const DerivPtr& d, const NodeAddr& a) {
  DerivPtr cur = d;
  for (int i : a) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->prems.size()) return nullptr;
    cur = cur->prems[i];
  }
  return cur;
}

// Replace the subtree at an address; conclusions of ancestors are unchanged.
inline DerivPtr splice_at(const DerivPtr& d, const NodeAddr& a, const DerivPtr& repl,
                          std::size_t from = 0) {
  if (from == a.size()) return repl;
  auto prems = d->prems;
  int i = a[from];
  prems[static_cast<std::size_t>(i)] = splice_at(d->prems[static_cast<std::size_t>(i)], a, repl, from + 1);
  return mk_deriv(d->concl, d->rule, d->inst, std::move(prems));
}

}  // namespace tenseq
