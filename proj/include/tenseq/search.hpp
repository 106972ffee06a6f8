// Bounded backward proof search over the cut-free fragment of each calculus
// variant, plus deterministic forward generators of random checked
// derivations.  Search proposes rule instances and lets the kernel's
// premises_of validate them, so the rule space here can never drift from the
// checker.  Depth counts non-exchange rule applications: matchers that need a
// comma group rearranged emit the (Ex) node implicitly and only the rule
// above it pays depth, so any cut-free derivation of height h is replayable
// within depth h (for comma groups of at most six rearranged components).
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tenseq/text.hpp"
#include "tenseq/translate.hpp"

namespace tenseq {

struct SearchBudget {
  int max_depth = 8;
  int max_structure_size = 24;  // premise size cap and structural-rule rate limit
  bool loop_check = true;
};

namespace detail {

// ---------------------------------------------------------------------------
// Structure walking helpers
// ---------------------------------------------------------------------------

inline void all_positions_rec(const StructPtr& s, Path& cur, std::vector<Path>& out) {
  if (s->kind == SKind::Empty) return;
  out.push_back(cur);
  switch (s->kind) {
    case SKind::Comma:
      cur.push_back(Step::L);
      all_positions_rec(s->left, cur, out);
      cur.back() = Step::R;
      all_positions_rec(s->right, cur, out);
      cur.pop_back();
      return;
    case SKind::Circ:
    case SKind::Bullet:
      cur.push_back(Step::U);
      all_positions_rec(s->left, cur, out);
      cur.pop_back();
      return;
    default:
      return;
  }
}

// Every path to a non-empty subtree, pre-order.
inline std::vector<Path> all_positions(const StructPtr& s) {
  std::vector<Path> out;
  Path cur;
  all_positions_rec(s, cur, out);
  return out;
}

// Rearrangement-invariant normal form: comma groups flattened and their
// components sorted by printed form, recursively.
inline StructPtr ac_normal(const StructPtr& s) {
  switch (s->kind) {
    case SKind::Empty:
    case SKind::Leaf:
      return s;
    case SKind::Circ:
      return scirc(ac_normal(s->left));
    case SKind::Bullet:
      return sbullet(ac_normal(s->left));
    default: {
      std::vector<std::pair<std::string, StructPtr>> comps;
      for (auto& [p, c] : comma_components(s)) {
        StructPtr n = ac_normal(c);
        comps.emplace_back(print_structure(n), std::move(n));
      }
      std::sort(comps.begin(), comps.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      StructPtr out = comps[0].second;
      for (std::size_t i = 1; i < comps.size(); ++i) out = scomma(out, comps[i].second);
      return out;
    }
  }
}

// A maximal comma group: the anchor path and its components as written.
struct Group {
  Path at;
  std::vector<StructPtr> comps;
};

inline void maximal_groups_rec(const StructPtr& s, Path& cur, std::vector<Group>& out) {
  switch (s->kind) {
    case SKind::Comma: {
      Group g{cur, {}};
      for (auto& [p, c] : comma_components(s)) g.comps.push_back(c);
      out.push_back(std::move(g));
      // Descend below the components for nested groups under markers.
      for (auto& [p, c] : comma_components(s)) {
        Path sub = cur + p;
        if (c->kind == SKind::Circ || c->kind == SKind::Bullet) {
          sub.push_back(Step::U);
          maximal_groups_rec(c->left, sub, out);
        }
      }
      return;
    }
    case SKind::Circ:
    case SKind::Bullet:
      cur.push_back(Step::U);
      maximal_groups_rec(s->left, cur, out);
      cur.pop_back();
      return;
    default:
      return;
  }
}

inline std::vector<Group> maximal_groups(const StructPtr& s) {
  std::vector<Group> out;
  Path cur;
  maximal_groups_rec(s, cur, out);
  return out;
}

// Nonempty subsets as bitmasks: all of them up to six items, otherwise the
// singletons and the full set (a documented completeness bound).
inline std::vector<std::uint32_t> subset_masks(int n) {
  std::vector<std::uint32_t> out;
  if (n <= 0) return out;
  if (n <= 6) {
    for (std::uint32_t m = 1; m < (1u << n); ++m) out.push_back(m);
  } else {
    for (int i = 0; i < n; ++i) out.push_back(1u << i);
    out.push_back(n >= 32 ? 0xffffffffu : (1u << n) - 1);
  }
  return out;
}

// Left-nested comma tree of the selected components, in written order.
inline StructPtr tree_of(const std::vector<StructPtr>& comps, std::uint32_t mask) {
  StructPtr out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    out = out ? scomma(out, comps[i]) : comps[i];
  }
  return out;
}

// Masks selecting an equivalent multiset of components yield equivalent
// premises; keep only the mask choosing the first indices of each
// equal-component class.
inline bool canonical_mask(std::uint32_t mask, const std::vector<std::string>& keys) {
  for (std::size_t j = 1; j < keys.size(); ++j) {
    if (!(mask >> j & 1u)) continue;
    for (std::size_t i = 0; i < j; ++i)
      if (!(mask >> i & 1u) && keys[i] == keys[j]) return false;
  }
  return true;
}

inline std::vector<std::string> component_keys(const std::vector<StructPtr>& comps) {
  std::vector<std::string> keys;
  keys.reserve(comps.size());
  for (const StructPtr& c : comps) keys.push_back(print_structure(ac_normal(c)));
  return keys;
}

inline bool first_of_class(std::size_t i, const std::vector<std::string>& keys) {
  for (std::size_t t = 0; t < i; ++t)
    if (keys[t] == keys[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The backward searcher
// ---------------------------------------------------------------------------

struct Searcher {
  Variant variant;
  SearchBudget budget;
  std::vector<std::string> branch;  // sequent keys along the current branch
  // Failure memo: sequent key -> (remaining depth, structural steps used)
  // pairs known to exhaust; failure dominates smaller depth / more steps.
  std::unordered_map<std::string, std::vector<std::pair<int, int>>> failed;
  // Success memo, keyed by the sequent as written: a found derivation is
  // valid evidence regardless of the budget that found it.
  std::unordered_map<std::string, DerivPtr> proven;
  static constexpr int kNoDep = 1 << 30;
  // Shallowest branch index any loop-check prune matched during the current
  // expansion.  A failure is only memoized when no prune reached above the
  // failing node itself: such a failure is reproducible from an empty branch,
  // while one cut off by an outer ancestor is not.
  int pending_dep = kNoDep;

  static std::string key_of(const Sequent& q) {
    return print_sequent(Sequent{ac_normal(q.ant), q.suc});
  }

  bool known_failed(const std::string& key, int depth, int structs) const {
    auto it = failed.find(key);
    if (it == failed.end()) return false;
    for (auto& [d, s] : it->second)
      if (d >= depth && s <= structs) return true;
    return false;
  }

  void record_failed(const std::string& key, int depth, int structs) {
    auto& frontier = failed[key];
    for (auto& [d, s] : frontier)
      if (d >= depth && s <= structs) return;
    frontier.erase(std::remove_if(frontier.begin(), frontier.end(),
                                  [&](const std::pair<int, int>& e) {
                                    return e.first <= depth && e.second >= structs;
                                  }),
                   frontier.end());
    frontier.emplace_back(depth, structs);
  }

  // Try one rule instance at `concl`: the kernel computes the premises (or
  // rejects the instantiation), each premise is searched, and the node is
  // assembled.  `struct_cost` is the rate-limit charge for this instance.
  DerivPtr attempt(RuleId rule, const Inst& inst, const Sequent& concl, int depth, int structs,
                   int struct_cost) {
    if (struct_cost > 0 && structs + struct_cost > budget.max_structure_size) return nullptr;
    PremisesOr po = premises_of(rule, inst, concl);
    auto* ps = std::get_if<std::vector<Sequent>>(&po);
    if (!ps) return nullptr;
    for (const Sequent& p : *ps)
      if (size(p.ant) > budget.max_structure_size) return nullptr;
    std::vector<DerivPtr> children;
    children.reserve(ps->size());
    for (const Sequent& p : *ps) {
      DerivPtr c = search(p, depth - 1, structs + struct_cost);
      if (!c) return nullptr;
      children.push_back(std::move(c));
    }
    return node(rule, inst, concl, std::move(children));
  }

  // Rearrange the group at `at` into `arranged` (one implicit, depth-free
  // (Ex) node when they differ) and apply the instance above it.
  DerivPtr attempt_arranged(const Sequent& goal, const Path& at, const StructPtr& arranged,
                            RuleId rule, const Inst& inst, int depth, int structs,
                            int struct_cost) {
    StructPtr cur = subtree_at(goal.ant, at);
    if (equal(cur, arranged)) return attempt(rule, inst, goal, depth, structs, struct_cost);
    Sequent mid{replace_at(goal.ant, at, arranged), goal.suc};
    DerivPtr upper = attempt(rule, inst, mid, depth, structs, struct_cost + 1);
    if (!upper) return nullptr;
    return node(RuleId::Ex, inst_at_delta(at, arranged), goal, {upper});
  }

  DerivPtr search(const Sequent& goal, int depth, int structs) {
    // Identity goals close a branch at no depth cost: by the axiom directly,
    // or, under the atomic-axiom variants, by the derived identity tree.
    if (goal.ant->kind == SKind::Leaf && equal(goal.ant->f, goal.suc)) {
      if (variant == Variant::Base) return leaf_id(goal.suc);
      if (is_atomic(goal.suc)) return leaf_ida(goal.suc);
      return derive_identity(goal.suc);
    }
    if (depth <= 0) return nullptr;

    std::string literal = print_sequent(goal);
    if (auto hit = proven.find(literal); hit != proven.end()) return hit->second;

    std::string key = key_of(goal);
    if (budget.loop_check) {
      auto it = std::find(branch.begin(), branch.end(), key);
      if (it != branch.end()) {
        pending_dep = std::min(pending_dep, static_cast<int>(it - branch.begin()));
        return nullptr;
      }
    }
    if (known_failed(key, depth, structs)) return nullptr;

    const int my_index = static_cast<int>(branch.size());
    branch.push_back(key);
    const int saved = pending_dep;
    pending_dep = kNoDep;
    DerivPtr out = expand(goal, depth, structs);
    const int sub_dep = pending_dep;
    branch.pop_back();
    if (out || sub_dep >= my_index) {
      if (out)
        proven.emplace(std::move(literal), out);
      else
        record_failed(key, depth, structs);
      pending_dep = saved;
    } else {
      pending_dep = std::min(saved, sub_dep);  // conditional failure, not memoized
    }
    return out;
  }

  DerivPtr expand(const Sequent& goal, int depth, int structs) {
    const StructPtr& ant = goal.ant;
    const FormulaPtr& suc = goal.suc;
    const bool dagger = variant != Variant::Base;
    std::vector<Path> poss = all_positions(ant);
    std::vector<Group> groups = maximal_groups(ant);
    std::vector<std::vector<std::string>> gkeys(groups.size());
    auto keys_for = [&](std::size_t gi) -> const std::vector<std::string>& {
      if (gkeys[gi].empty()) gkeys[gi] = component_keys(groups[gi].comps);
      return gkeys[gi];
    };

    // -- logical right rules ------------------------------------------------
    switch (suc->kind) {
      case FKind::And:
        if (auto d = attempt(RuleId::AndR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      case FKind::Or:
        if (auto d = attempt(RuleId::OrR1, inst_none(), goal, depth, structs, 0)) return d;
        if (auto d = attempt(RuleId::OrR2, inst_none(), goal, depth, structs, 0)) return d;
        break;
      case FKind::Impl:
        if (auto d = attempt(RuleId::ImplR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      default:
        break;
    }

    // -- logical left rules ---------------------------------------------------
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind != SKind::Leaf) continue;
      if (sub->f->kind == FKind::And) {
        if (auto d = attempt(RuleId::AndL, inst_at(p), goal, depth, structs, 0)) return d;
      } else if (sub->f->kind == FKind::Or) {
        if (auto d = attempt(RuleId::OrL, inst_at(p), goal, depth, structs, 0)) return d;
      }
    }
    // Implication-left, as written: positions pairing a payload with the
    // implication leaf on the right.
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind == SKind::Comma && sub->right->kind == SKind::Leaf &&
          sub->right->f->kind == FKind::Impl)
        if (auto d = attempt(RuleId::ImplL, inst_at(p), goal, depth, structs, 0)) return d;
    }
    // Implication-left modulo rearrangement: pick the implication component
    // and a payload subset of its group siblings.
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      for (std::size_t i = 0; i < g.comps.size(); ++i) {
        const StructPtr& pivot = g.comps[i];
        if (pivot->kind != SKind::Leaf || pivot->f->kind != FKind::Impl) continue;
        const auto& keys = keys_for(gi);
        if (!first_of_class(i, keys)) continue;
        std::vector<StructPtr> others;
        std::vector<std::string> okeys;
        for (std::size_t j = 0; j < g.comps.size(); ++j)
          if (j != i) {
            others.push_back(g.comps[j]);
            okeys.push_back(keys[j]);
          }
        for (std::uint32_t mask : subset_masks(static_cast<int>(others.size()))) {
          if (!canonical_mask(mask, okeys)) continue;
          StructPtr payload = tree_of(others, mask);
          StructPtr rest = tree_of(others, ~mask);
          StructPtr arranged =
              rest ? scomma(rest, scomma(payload, pivot)) : scomma(payload, pivot);
          Path at = rest ? g.at + Path{Step::R} : g.at;
          if (auto d = attempt_arranged(goal, g.at, arranged, RuleId::ImplL, inst_at(at),
                                        depth, structs, 0))
            return d;
        }
      }
    }

    // -- tense rules ----------------------------------------------------------
    switch (suc->kind) {
      case FKind::Dia:
        if (auto d = attempt(RuleId::DiaR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      case FKind::BDia:
        if (auto d = attempt(RuleId::BDiaR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      case FKind::Box:
        if (auto d = attempt(RuleId::BoxR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      case FKind::BBox:
        if (auto d = attempt(RuleId::BBoxR, inst_none(), goal, depth, structs, 0)) return d;
        break;
      default:
        break;
    }
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind == SKind::Leaf) {
        if (sub->f->kind == FKind::Dia) {
          if (auto d = attempt(RuleId::DiaL, inst_at(p), goal, depth, structs, 0)) return d;
        } else if (sub->f->kind == FKind::BDia) {
          if (auto d = attempt(RuleId::BDiaL, inst_at(p), goal, depth, structs, 0)) return d;
        }
      } else if (sub->kind == SKind::Bullet && sub->left->kind == SKind::Leaf &&
                 sub->left->f->kind == FKind::Box) {
        if (auto d = attempt(RuleId::BoxL, inst_at(p), goal, depth, structs, 0)) return d;
      } else if (sub->kind == SKind::Circ && sub->left->kind == SKind::Leaf &&
                 sub->left->f->kind == FKind::BBox) {
        if (auto d = attempt(RuleId::BBoxL, inst_at(p), goal, depth, structs, 0)) return d;
      }
    }

    // -- dual rules -----------------------------------------------------------
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind != SKind::Comma) continue;
      if (sub->right->kind == SKind::Bullet) {
        if (auto d = attempt(RuleId::DualCircBullet, inst_at(p), goal, depth, structs, 0))
          return d;
      } else if (sub->right->kind == SKind::Circ) {
        if (auto d = attempt(RuleId::DualBulletCirc, inst_at(p), goal, depth, structs, 0))
          return d;
      }
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      for (std::size_t i = 0; i < g.comps.size(); ++i) {
        const StructPtr& pivot = g.comps[i];
        if (pivot->kind != SKind::Circ && pivot->kind != SKind::Bullet) continue;
        RuleId rule =
            pivot->kind == SKind::Bullet ? RuleId::DualCircBullet : RuleId::DualBulletCirc;
        const auto& keys = keys_for(gi);
        if (!first_of_class(i, keys)) continue;
        std::vector<StructPtr> others;
        std::vector<std::string> okeys;
        for (std::size_t j = 0; j < g.comps.size(); ++j)
          if (j != i) {
            others.push_back(g.comps[j]);
            okeys.push_back(keys[j]);
          }
        for (std::uint32_t mask : subset_masks(static_cast<int>(others.size()))) {
          if (!canonical_mask(mask, okeys)) continue;
          StructPtr payload = tree_of(others, mask);
          StructPtr rest = tree_of(others, ~mask);
          StructPtr arranged =
              rest ? scomma(rest, scomma(payload, pivot)) : scomma(payload, pivot);
          Path at = rest ? g.at + Path{Step::R} : g.at;
          if (auto d =
                  attempt_arranged(goal, g.at, arranged, rule, inst_at(at), depth, structs, 0))
            return d;
        }
      }
    }

    // -- structural rules -------------------------------------------------------
    // Top: replace a present subtree (or a rearranged component subset) by T.
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind == SKind::Leaf && sub->f->kind == FKind::Top) continue;  // no progress
      if (auto d = attempt(RuleId::TopRule, inst_at_delta(p, sub), goal, depth, structs, 1))
        return d;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      for (std::uint32_t mask : subset_masks(static_cast<int>(g.comps.size()))) {
        if (!canonical_mask(mask, keys_for(gi))) continue;
        StructPtr rest = tree_of(g.comps, ~mask);
        if (!rest) continue;  // whole group already tried positionally
        StructPtr payload = tree_of(g.comps, mask);
        StructPtr arranged = scomma(rest, payload);
        if (auto d = attempt_arranged(goal, g.at, arranged, RuleId::TopRule,
                                      inst_at_delta(g.at + Path{Step::R}, payload), depth,
                                      structs, 1))
          return d;
      }
    }
    // Contraction rules, gated by variant and shape.  Backward contraction
    // duplicates (formula case) or splits a marked group (marker case).
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind == SKind::Leaf) {
        if (!dagger) {
          if (auto d = attempt(RuleId::ConF, inst_at(p), goal, depth, structs, 1)) return d;
        } else {
          RuleId rule = RuleId::ConA;
          switch (sub->f->kind) {
            case FKind::Box: rule = RuleId::ConBox; break;
            case FKind::BBox: rule = RuleId::ConBBox; break;
            case FKind::Impl: rule = RuleId::ConImpl; break;
            default: break;
          }
          if (rule != RuleId::ConA || is_atomic(sub->f))
            if (auto d = attempt(rule, inst_at(p), goal, depth, structs, 1)) return d;
        }
      } else if ((sub->kind == SKind::Circ || sub->kind == SKind::Bullet) &&
                 sub->left->kind == SKind::Comma) {
        RuleId rule = sub->kind == SKind::Circ ? RuleId::ConCirc : RuleId::ConBullet;
        if (auto d = attempt(rule, inst_at(p), goal, depth, structs, 1)) return d;
        // Splits other than the one written: rearrange inside the marker
        // first, then split at the spine root.
        std::vector<StructPtr> comps;
        for (auto& [cp, c] : comma_components(sub->left)) comps.push_back(c);
        std::vector<std::string> ikeys = component_keys(comps);
        const std::uint32_t full =
            comps.size() >= 32 ? 0xffffffffu : (1u << comps.size()) - 1;
        for (std::uint32_t mask : subset_masks(static_cast<int>(comps.size()))) {
          if (mask == full || !canonical_mask(mask, ikeys)) continue;
          if ((full & ~mask) < mask) continue;  // complements give equivalent splits
          StructPtr arranged = scomma(tree_of(comps, mask), tree_of(comps, ~mask));
          if (auto d = attempt_arranged(goal, p + Path{Step::U}, arranged, rule, inst_at(p),
                                        depth, structs, 1))
            return d;
        }
      }
    }
    // Weakening: drop one child as written, or any component subset.
    for (const Path& p : poss) {
      StructPtr sub = subtree_at(ant, p);
      if (sub->kind != SKind::Comma) continue;
      if (auto d = attempt(RuleId::Wk1, inst_at_delta(p, sub->right), goal, depth, structs, 1))
        return d;
      if (auto d = attempt(RuleId::Wk2, inst_at_delta(p, sub->left), goal, depth, structs, 1))
        return d;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      for (std::uint32_t mask : subset_masks(static_cast<int>(g.comps.size()))) {
        if (!canonical_mask(mask, keys_for(gi))) continue;
        StructPtr rest = tree_of(g.comps, ~mask);
        if (!rest) continue;  // cannot drop the whole group this way
        StructPtr payload = tree_of(g.comps, mask);
        StructPtr arranged = scomma(rest, payload);
        if (auto d = attempt_arranged(goal, g.at, arranged, RuleId::Wk1,
                                      inst_at_delta(g.at, payload), depth, structs, 1))
          return d;
      }
    }
    // Bot: promote any present subtree (or rearranged subset) to prove F.
    for (const Path& p : poss) {
      if (p.empty() && suc->kind == FKind::Bot) continue;  // premise equals goal
      StructPtr sub = subtree_at(ant, p);
      if (auto d = attempt(RuleId::BotRule, inst_at_delta(p, sub), goal, depth, structs, 0))
        return d;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      for (std::uint32_t mask : subset_masks(static_cast<int>(g.comps.size()))) {
        if (!canonical_mask(mask, keys_for(gi))) continue;
        StructPtr rest = tree_of(g.comps, ~mask);
        if (!rest) continue;
        StructPtr payload = tree_of(g.comps, mask);
        StructPtr arranged = scomma(rest, payload);
        if (auto d = attempt_arranged(goal, g.at, arranged, RuleId::BotRule,
                                      inst_at_delta(g.at + Path{Step::R}, payload), depth,
                                      structs, 0))
          return d;
      }
    }
    return nullptr;
  }
};

}  // namespace detail

// Bounded backward search: a checked cut-free derivation of `goal` in the
// variant, or nullptr when the budget is exhausted (which is not a
// refutation).  Iterative deepening makes success monotone in max_depth.
inline DerivPtr prove(const Sequent& goal, Variant variant, const SearchBudget& budget) {
  if (budget.max_depth < 1)
    throw std::invalid_argument("prove: max_depth must be at least 1");
  detail::Searcher s{variant, budget, {}, {}};
  for (int d = 1; d <= budget.max_depth; ++d)
    if (DerivPtr out = s.search(goal, d, 0)) return out;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Deterministic random corpus generation
// ---------------------------------------------------------------------------

struct CorpusEntry {
  Sequent sequent;
  DerivPtr derivation;
};

namespace detail {

inline FormulaPtr random_formula(std::mt19937_64& rng, int budget) {
  if (budget <= 0 || rng() % 3 == 0) {
    switch (rng() % 6) {
      case 0: return ftop();
      case 1: return fbot();
      default: return fvar(static_cast<unsigned>(rng() % 4));
    }
  }
  switch (rng() % 7) {
    case 0: {
      int lb = static_cast<int>(rng() % static_cast<std::uint64_t>(budget));
      return fand(random_formula(rng, lb), random_formula(rng, budget - 1 - lb));
    }
    case 1: {
      int lb = static_cast<int>(rng() % static_cast<std::uint64_t>(budget));
      return for_(random_formula(rng, lb), random_formula(rng, budget - 1 - lb));
    }
    case 2: {
      int lb = static_cast<int>(rng() % static_cast<std::uint64_t>(budget));
      return fimpl(random_formula(rng, lb), random_formula(rng, budget - 1 - lb));
    }
    case 3: return fdia(random_formula(rng, budget - 1));
    case 4: return fbox(random_formula(rng, budget - 1));
    case 5: return fbdia(random_formula(rng, budget - 1));
    default: return fbbox(random_formula(rng, budget - 1));
  }
}

// One forward growth step on a checked derivation: collect the applicable
// moves, pick one, build the new root through node().  Returns d itself when
// nothing applies.
inline DerivPtr grow_once(const DerivPtr& d, std::mt19937_64& rng, int max_c, Variant v) {
  const Sequent& q = d->concl;
  const StructPtr& S = q.ant;
  const FormulaPtr& beta = q.suc;
  const bool base = v == Variant::Base;
  std::vector<std::function<DerivPtr()>> moves;
  std::vector<Path> poss = all_positions(S);

  auto axiom = [&](const FormulaPtr& f) {
    return base ? leaf_id(f) : DerivPtr(derive_identity(f));
  };

  // Growth is capped so the antecedent stays searchable by the backward
  // prover; moves that would push past the cap are not offered.
  constexpr int kAntCap = 14;
  const int cur = size(S);
  auto clamp_room = [&](FormulaPtr f, int room) {
    return size(f) > room ? fvar(static_cast<unsigned>(rng() % 4)) : f;
  };

  // Weakening: adjoin a fresh leaf either side of a random position.
  if (!poss.empty() && cur + 2 <= kAntCap) {
    moves.push_back([&, poss]() {
      Path p = poss[rng() % poss.size()];
      StructPtr sub = subtree_at(S, p);
      FormulaPtr f = random_formula(rng, static_cast<int>(rng() % (max_c + 1)));
      StructPtr x = sleaf(clamp_room(f, kAntCap - cur - 1));
      if (rng() % 2 == 0)
        return node(RuleId::Wk1, inst_at_delta(p, x),
                    Sequent{replace_at(S, p, scomma(sub, x)), beta}, {d});
      return node(RuleId::Wk2, inst_at_delta(p, x),
                  Sequent{replace_at(S, p, scomma(x, sub)), beta}, {d});
    });
  }
  // Top: blow a present T leaf up into a random small structure.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Leaf || sub->f->kind != FKind::Top) continue;
    if (cur + 4 > kAntCap) break;
    moves.push_back([&, p]() {
      const int room = kAntCap - cur + 1;
      StructPtr delta;
      switch (rng() % 4) {
        case 0: delta = sleaf(clamp_room(random_formula(rng, max_c), room)); break;
        case 1: delta = scirc(sleaf(clamp_room(random_formula(rng, max_c - 1), room - 1))); break;
        case 2:
          delta = sbullet(sleaf(clamp_room(random_formula(rng, max_c - 1), room - 1)));
          break;
        default:
          delta = scomma(sleaf(clamp_room(random_formula(rng, max_c - 1), (room - 1) / 2)),
                         sleaf(clamp_room(random_formula(rng, max_c - 1), (room - 1) / 2)));
      }
      return node(RuleId::TopRule, inst_at_delta(p, delta),
                  Sequent{replace_at(S, p, delta), beta}, {d});
    });
    break;  // one candidate position is enough for the menu
  }
  // And-left: fuse a comma of two leaves.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Comma || sub->left->kind != SKind::Leaf ||
        sub->right->kind != SKind::Leaf)
      continue;
    FormulaPtr f = fand(sub->left->f, sub->right->f);
    if (complexity(f) > max_c) continue;
    moves.push_back([&, p, f]() {
      return node(RuleId::AndL, inst_at(p), Sequent{replace_at(S, p, sleaf(f)), beta}, {d});
    });
    break;
  }
  // Or-right, both flavors.
  {
    FormulaPtr x = random_formula(rng, static_cast<int>(rng() % (max_c + 1)));
    if (complexity(for_(beta, x)) <= max_c) {
      moves.push_back([&, x]() {
        return node(RuleId::OrR1, inst_none(), Sequent{S, for_(beta, x)}, {d});
      });
      moves.push_back([&, x]() {
        return node(RuleId::OrR2, inst_none(), Sequent{S, for_(x, beta)}, {d});
      });
    }
  }
  // And-right against a top-proving partner of the same antecedent.
  if (complexity(fand(beta, ftop())) <= max_c) {
    moves.push_back([&]() {
      DerivPtr partner = node(RuleId::TopRule, inst_at_delta(Path{}, S), Sequent{S, ftop()},
                              {axiom(ftop())});
      return node(RuleId::AndR, inst_none(), Sequent{S, fand(beta, ftop())}, {d, partner});
    });
  }
  // Or-left against a bot-proving partner at a leaf occurrence.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Leaf || cur + 2 > kAntCap) continue;
    FormulaPtr f = for_(sub->f, fbot());
    if (complexity(f) > max_c) continue;
    moves.push_back([&, p, f]() {
      DerivPtr partner =
          node(RuleId::BotRule, inst_at_delta(p, sleaf(fbot())),
               Sequent{replace_at(S, p, sleaf(fbot())), beta}, {axiom(fbot())});
      return node(RuleId::OrL, inst_at(p),
                  Sequent{replace_at(S, p, sleaf(f)), beta}, {d, partner});
    });
    break;
  }
  // Implication-left: pay for a leaf occurrence with an identity partner.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Leaf || complexity(sub->f) + 1 > max_c) continue;
    if (cur + 4 > kAntCap) continue;
    moves.push_back([&, p, sub]() {
      FormulaPtr a1 =
          clamp_room(random_formula(rng, max_c - 1 - complexity(sub->f)),
                     (kAntCap - cur - 2) / 2);
      FormulaPtr f = fimpl(a1, sub->f);
      DerivPtr partner = axiom(a1);
      StructPtr packed = scomma(sleaf(a1), sleaf(f));
      return node(RuleId::ImplL, inst_at(p), Sequent{replace_at(S, p, packed), beta},
                  {partner, d});
    });
    break;
  }
  // Implication-right when the antecedent leads with a leaf.
  if (S->kind == SKind::Comma && S->left->kind == SKind::Leaf &&
      complexity(fimpl(S->left->f, beta)) <= max_c) {
    moves.push_back([&]() {
      return node(RuleId::ImplR, inst_none(), Sequent{S->right, fimpl(S->left->f, beta)}, {d});
    });
  }
  // Tense introduction on leaves and around the whole antecedent.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind == SKind::Circ && sub->left->kind == SKind::Leaf &&
        complexity(fdia(sub->left->f)) <= max_c) {
      moves.push_back([&, p, sub]() {
        return node(RuleId::DiaL, inst_at(p),
                    Sequent{replace_at(S, p, sleaf(fdia(sub->left->f))), beta}, {d});
      });
      break;
    }
    if (sub->kind == SKind::Bullet && sub->left->kind == SKind::Leaf &&
        complexity(fbdia(sub->left->f)) <= max_c) {
      moves.push_back([&, p, sub]() {
        return node(RuleId::BDiaL, inst_at(p),
                    Sequent{replace_at(S, p, sleaf(fbdia(sub->left->f))), beta}, {d});
      });
      break;
    }
  }
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Leaf || cur + 2 > kAntCap) continue;
    if (complexity(fbox(sub->f)) > max_c) continue;
    moves.push_back([&, p, sub]() {
      if (rng() % 2 == 0)
        return node(RuleId::BoxL, inst_at(p),
                    Sequent{replace_at(S, p, sbullet(sleaf(fbox(sub->f)))), beta}, {d});
      return node(RuleId::BBoxL, inst_at(p),
                  Sequent{replace_at(S, p, scirc(sleaf(fbbox(sub->f)))), beta}, {d});
    });
    break;
  }
  if (complexity(fdia(beta)) <= max_c && cur + 1 <= kAntCap) {
    moves.push_back([&]() {
      return node(RuleId::DiaR, inst_none(), Sequent{scirc(S), fdia(beta)}, {d});
    });
    moves.push_back([&]() {
      return node(RuleId::BDiaR, inst_none(), Sequent{sbullet(S), fbdia(beta)}, {d});
    });
  }
  if (S->kind == SKind::Bullet && complexity(fbox(beta)) <= max_c) {
    moves.push_back([&]() {
      return node(RuleId::BoxR, inst_none(), Sequent{S->left, fbox(beta)}, {d});
    });
  }
  if (S->kind == SKind::Circ && complexity(fbbox(beta)) <= max_c) {
    moves.push_back([&]() {
      return node(RuleId::BBoxR, inst_none(), Sequent{S->left, fbbox(beta)}, {d});
    });
  }
  // Marker contraction when two like-marked siblings are adjacent.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Comma) continue;
    if (sub->left->kind == SKind::Circ && sub->right->kind == SKind::Circ) {
      moves.push_back([&, p, sub]() {
        StructPtr merged = scirc(scomma(sub->left->left, sub->right->left));
        return node(RuleId::ConCirc, inst_at(p), Sequent{replace_at(S, p, merged), beta}, {d});
      });
      break;
    }
    if (sub->left->kind == SKind::Bullet && sub->right->kind == SKind::Bullet) {
      moves.push_back([&, p, sub]() {
        StructPtr merged = sbullet(scomma(sub->left->left, sub->right->left));
        return node(RuleId::ConBullet, inst_at(p), Sequent{replace_at(S, p, merged), beta},
                    {d});
      });
      break;
    }
  }
  // Formula contraction on a doubled leaf pair.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Comma || sub->left->kind != SKind::Leaf ||
        sub->right->kind != SKind::Leaf || !equal(sub->left->f, sub->right->f))
      continue;
    RuleId rule = RuleId::ConF;
    if (!base) {
      switch (sub->left->f->kind) {
        case FKind::Box: rule = RuleId::ConBox; break;
        case FKind::BBox: rule = RuleId::ConBBox; break;
        case FKind::Impl: rule = RuleId::ConImpl; break;
        case FKind::Var:
        case FKind::Top:
        case FKind::Bot: rule = RuleId::ConA; break;
        default: rule = RuleId::Id;  // marker: not contractible in this variant
      }
      if (rule == RuleId::Id) continue;
    }
    moves.push_back([&, p, sub, rule]() {
      return node(rule, inst_at(p), Sequent{replace_at(S, p, sub->left), beta}, {d});
    });
    break;
  }
  // Exchange: shuffle one comma group.
  for (const Path& p : poss) {
    StructPtr sub = subtree_at(S, p);
    if (sub->kind != SKind::Comma) continue;
    moves.push_back([&, p, sub]() {
      std::vector<StructPtr> comps;
      for (auto& [cp, c] : comma_components(sub)) comps.push_back(c);
      for (std::size_t i = comps.size() - 1; i > 0; --i)
        std::swap(comps[i], comps[rng() % (i + 1)]);
      StructPtr shuffled = comps[0];
      for (std::size_t i = 1; i < comps.size(); ++i) shuffled = scomma(shuffled, comps[i]);
      return node(RuleId::Ex, inst_at_delta(p, sub), Sequent{replace_at(S, p, shuffled), beta},
                  {d});
    });
    break;
  }

  if (moves.empty()) return d;
  return moves[rng() % moves.size()]();
}

}  // namespace detail

// Deterministic pseudo-random corpus: forward-constructed derivations in the
// unrestricted calculus, valid by construction.
inline std::vector<CorpusEntry> gen_corpus(std::uint64_t seed, int count, int max_complexity) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    DerivPtr d = leaf_id(detail::random_formula(
        rng, static_cast<int>(rng() % static_cast<std::uint64_t>(max_complexity + 1))));
    int steps = 2 + static_cast<int>(rng() % 5);
    for (int s = 0; s < steps; ++s) d = detail::grow_once(d, rng, max_complexity, Variant::Base);
    out.push_back({d->concl, d});
  }
  return out;
}

// Restricted-calculus analogue (atomic axioms, restricted contraction),
// cut-free by construction; used to fuzz the admissibility transformers.
inline std::vector<CorpusEntry> gen_dagger_corpus(std::uint64_t seed, int count,
                                                  int max_complexity) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    DerivPtr d = leaf_ida(fvar(static_cast<unsigned>(rng() % 4)));
    int steps = 2 + static_cast<int>(rng() % 5);
    for (int s = 0; s < steps; ++s)
      d = detail::grow_once(d, rng, max_complexity, Variant::Dagger);
    out.push_back({d->concl, d});
  }
  return out;
}

// Stacks `n` cuts below the root: each cuts an identity derivation of a leaf
// occurrence against the conclusion, leaving the end sequent unchanged.
inline DerivPtr splice_cuts(const DerivPtr& d, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  DerivPtr cur = d;
  for (int i = 0; i < n; ++i) {
    std::vector<Path> leaves;
    for (const Path& p : detail::all_positions(cur->concl.ant))
      if (subtree_at(cur->concl.ant, p)->kind == SKind::Leaf) leaves.push_back(p);
    if (leaves.empty()) break;
    Path p = leaves[rng() % leaves.size()];
    FormulaPtr a = subtree_at(cur->concl.ant, p)->f;
    DerivPtr left = from_dagger(derive_identity(a));
    cur = node(RuleId::Cut, inst_cut(p, a), cur->concl, {left, cur});
  }
  return cur;
}

}  // namespace tenseq
