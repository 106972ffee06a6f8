// Tests for the proof kernel: rule admission per calculus variant, premise
// computation, node/tree checking, measures, and the derivation file format.
#include <catch2/catch_amalgamated.hpp>

#include "tenseq/checker.hpp"
#include "tenseq/sexpr.hpp"
#include "tenseq/text.hpp"

using namespace tenseq;

namespace {

std::optional<Violation> check1(Variant v, RuleId r, const Inst& inst, const std::string& concl,
                                const std::vector<std::string>& prems) {
  std::vector<Sequent> ps;
  for (const auto& p : prems) ps.push_back(parse_sequent(p));
  return check_node(v, r, inst, parse_sequent(concl), ps);
}

}  // namespace

TEST_CASE("check_node axioms and variant admission") {
  REQUIRE(!check1(Variant::Dagger, RuleId::IdA, inst_none(), "p0 => p0", {}));

  auto v = check1(Variant::Dagger, RuleId::Id, inst_none(), "dia p0 => dia p0", {});
  REQUIRE(v);
  REQUIRE(v->reason == Reason::VariantForbidden);

  // The unrestricted axiom is fine under Base but IdA demands an atom.
  REQUIRE(!check1(Variant::Base, RuleId::Id, inst_none(), "dia p0 => dia p0", {}));
  v = check1(Variant::Dagger, RuleId::IdA, inst_none(), "dia p0 => dia p0", {});
  REQUIRE(v);
  REQUIRE(v->reason == Reason::WrongShape);
  // Constants are atoms.
  REQUIRE(!check1(Variant::Dagger, RuleId::IdA, inst_none(), "T => T", {}));
  REQUIRE(!check1(Variant::Dagger, RuleId::IdA, inst_none(), "F => F", {}));

  // Cut admission: Base and Dagger yes, DoubleDagger no.
  Inst ci = inst_cut(Path{}, parse_formula("p0"));
  REQUIRE(!check1(Variant::Base, RuleId::Cut, ci, "p1 => p2",
                  {"p1 => p0", "p0 => p2"}));
  v = check1(Variant::DoubleDagger, RuleId::Cut, ci, "p1 => p2", {"p1 => p0", "p0 => p2"});
  REQUIRE(v);
  REQUIRE(v->reason == Reason::VariantForbidden);
  // ConF under Dagger is forbidden; ConA under Base is forbidden.
  v = check1(Variant::Dagger, RuleId::ConF, inst_at(Path{}), "p0 => p0", {"p0, p0 => p0"});
  REQUIRE((v && v->reason == Reason::VariantForbidden));
  v = check1(Variant::Base, RuleId::ConA, inst_at(Path{}), "p0 => p0", {"p0, p0 => p0"});
  REQUIRE((v && v->reason == Reason::VariantForbidden));
}

TEST_CASE("check_node: schema shapes for DiaR") {
  REQUIRE(!check1(Variant::Base, RuleId::DiaR, inst_none(), "o(p0) => dia p0", {"p0 => p0"}));
  // Wrong premise.
  auto v = check1(Variant::Base, RuleId::DiaR, inst_none(), "o(p0) => dia p0", {"p1 => p0"});
  REQUIRE((v && v->reason == Reason::WrongShape));
  // Antecedent not o(...).
  v = check1(Variant::Base, RuleId::DiaR, inst_none(), "b(p0) => dia p0", {"p0 => p0"});
  REQUIRE((v && v->reason == Reason::WrongShape));
}

TEST_CASE("premises_of per rule, positive shapes") {
  auto want = [](RuleId r, const Inst& i, const std::string& concl,
                 const std::vector<std::string>& expect) {
    auto po = premises_of(r, i, parse_sequent(concl));
    REQUIRE(std::holds_alternative<std::vector<Sequent>>(po));
    auto got = std::get<std::vector<Sequent>>(po);
    REQUIRE(got.size() == expect.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      INFO(rule_token(r) << " premise " << k);
      REQUIRE(print_sequent(got[k]) == expect[k]);
    }
  };

  want(RuleId::TopRule, inst_at_delta(Path{Step::L}, parse_structure("o(p1)")),
       "o(p1), p0 => p0", {"T, p0 => p0"});
  want(RuleId::BotRule, inst_at_delta(Path{Step::R}, parse_structure("p1")),
       "p0, p1 => p2", {"p1 => F"});
  want(RuleId::AndL, inst_at(Path{Step::L}), "p0 & p1, p2 => p0", {"p0, p1, p2 => p0"});
  want(RuleId::AndR, inst_none(), "p0 => p1 & p2", {"p0 => p1", "p0 => p2"});
  want(RuleId::OrL, inst_at(Path{}), "p0 | p1 => p2", {"p0 => p2", "p1 => p2"});
  want(RuleId::OrR1, inst_none(), "p0 => p1 | p2", {"p0 => p1"});
  want(RuleId::OrR2, inst_none(), "p0 => p1 | p2", {"p0 => p2"});
  want(RuleId::ImplL, inst_at(Path{}), "p0, (p1 -> p2) => p3", {"p0 => p1", "p2 => p3"});
  want(RuleId::ImplR, inst_none(), "p0 => p1 -> p2", {"p1, p0 => p2"});
  want(RuleId::ImplR, inst_none(), "=> p1 -> p2", {"p1 => p2"});
  want(RuleId::DiaL, inst_at(Path{}), "dia p0 => p1", {"o(p0) => p1"});
  want(RuleId::DiaR, inst_none(), "o(p0) => dia p0", {"p0 => p0"});
  want(RuleId::BDiaL, inst_at(Path{}), "bdia p0 => p1", {"b(p0) => p1"});
  want(RuleId::BDiaR, inst_none(), "b(p0) => bdia p0", {"p0 => p0"});
  want(RuleId::BBoxL, inst_at(Path{}), "o(bbox p0) => p1", {"p0 => p1"});
  want(RuleId::BBoxR, inst_none(), "p0 => bbox p1", {"o(p0) => p1"});
  want(RuleId::BoxL, inst_at(Path{}), "b(box p0) => p1", {"p0 => p1"});
  want(RuleId::BoxR, inst_none(), "p0 => box p1", {"b(p0) => p1"});
  want(RuleId::ConCirc, inst_at(Path{}), "o(p0, p1) => p2", {"o(p0), o(p1) => p2"});
  want(RuleId::ConBullet, inst_at(Path{}), "b(p0, p1) => p2", {"b(p0), b(p1) => p2"});
  want(RuleId::ConF, inst_at(Path{}), "dia p0 => p1", {"dia p0, dia p0 => p1"});
  want(RuleId::ConA, inst_at(Path{}), "p0 => p1", {"p0, p0 => p1"});
  want(RuleId::ConBox, inst_at(Path{}), "box p0 => p1", {"box p0, box p0 => p1"});
  want(RuleId::ConBBox, inst_at(Path{}), "bbox p0 => p1", {"bbox p0, bbox p0 => p1"});
  want(RuleId::ConImpl, inst_at(Path{}), "p0 -> p1 => p2", {"p0 -> p1, p0 -> p1 => p2"});
  want(RuleId::Wk1, inst_at_delta(Path{}, parse_structure("o(p1)")), "p0, o(p1) => p2",
       {"p0 => p2"});
  want(RuleId::Wk2, inst_at_delta(Path{}, parse_structure("p0")), "p0, o(p1) => p2",
       {"o(p1) => p2"});
  want(RuleId::Ex, inst_at_delta(Path{}, parse_structure("p1, p0")), "p0, p1 => p2",
       {"p1, p0 => p2"});
  // Group rearrangement: any multiset-equal regrouping is one Ex step.
  want(RuleId::Ex, inst_at_delta(Path{}, parse_structure("(p2, p0), p1")), "p0, p1, p2 => p3",
       {"p2, p0, p1 => p3"});
  want(RuleId::Ex, inst_at_delta(Path{}, parse_structure("p2, (p0, p1)")), "p0, p1, p2 => p3",
       {"p2, (p0, p1) => p3"});
  want(RuleId::DualCircBullet, inst_at(Path{}), "p0, b(p1) => p2", {"o(p0), p1 => F"});
  want(RuleId::DualBulletCirc, inst_at(Path{}), "p0, o(p1) => p2", {"b(p0), p1 => F"});
  want(RuleId::Cut, inst_cut(Path{Step::L}, parse_formula("p1 & p2")), "p0, p3 => p4",
       {"p0 => p1 & p2", "p1 & p2, p3 => p4"});
  want(RuleId::CutStar, inst_cut(Path{}, parse_formula("p1 | p2")), "p0 => p4",
       {"p0 => p1 | p2", "p1 | p2 => p4"});
  want(RuleId::MixA, inst_mix({Path{Step::L}, Path{Step::R}}, parse_formula("p1")),
       "o(p0), o(p0) => p4", {"o(p0) => p1", "p1, p1 => p4"});
  want(RuleId::MixBox, inst_mix({Path{Step::L}}, parse_formula("box p1")), "p0, p2 => p4",
       {"p0 => box p1", "box p1, p2 => p4"});
  want(RuleId::MixBBox, inst_mix({Path{Step::L}}, parse_formula("bbox p1")), "p0, p2 => p4",
       {"p0 => bbox p1", "bbox p1, p2 => p4"});
  want(RuleId::MixImpl, inst_mix({Path{Step::L}}, parse_formula("p1 -> p2")), "p0, p2 => p4",
       {"p0 => p1 -> p2", "p1 -> p2, p2 => p4"});
}

TEST_CASE("premises_of negative shapes and reasons") {
  auto reason = [](RuleId r, const Inst& i, const std::string& concl) {
    auto po = premises_of(r, i, parse_sequent(concl));
    REQUIRE(std::holds_alternative<RuleError>(po));
    return std::get<RuleError>(po).reason;
  };

  // Bad paths.
  REQUIRE(reason(RuleId::AndL, inst_at(Path{Step::U}), "p0 & p1 => p0") == Reason::BadPath);
  REQUIRE(reason(RuleId::AndL, inst_at(Path{Step::L, Step::L}), "p0 & p1, p2 => p0") ==
          Reason::BadPath);
  // Shape mismatches.
  REQUIRE(reason(RuleId::AndL, inst_at(Path{}), "p0 | p1 => p0") == Reason::WrongShape);
  REQUIRE(reason(RuleId::Ex, inst_at_delta(Path{}, parse_structure("p1, p1")), "p0, p1 => p2") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::Wk1, inst_at_delta(Path{}, parse_structure("p0")), "p0, o(p1) => p2") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::TopRule, inst_at_delta(Path{}, parse_structure("p1")), "p0 => p0") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::CutStar, inst_cut(Path{}, parse_formula("box p1")), "p0 => p4") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::CutStar, inst_cut(Path{}, parse_formula("p1")), "p0 => p4") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::CutStar, inst_cut(Path{}, parse_formula("p1 -> p2")), "p0 => p4") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::MixA, inst_mix({Path{}}, parse_formula("dia p1")), "p0 => p4") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::MixA, inst_mix({}, parse_formula("p1")), "p0 => p4") ==
          Reason::WrongShape);
  REQUIRE(reason(RuleId::MixA, inst_mix({Path{Step::L}, Path{Step::R}}, parse_formula("p1")),
                 "p0, p2 => p4") == Reason::WrongShape);  // occurrences differ
  // Overlapping holes.
  REQUIRE(reason(RuleId::MixA,
                 inst_mix({Path{Step::L}, Path{Step::L, Step::U}}, parse_formula("p1")),
                 "o(p0), o(p0) => p4") == Reason::BadPath);
  // Empty-related.
  REQUIRE(reason(RuleId::BBoxR, inst_none(), "=> bbox p1") == Reason::EmbeddedEmpty);
  REQUIRE(reason(RuleId::BoxR, inst_none(), "=> box p1") == Reason::EmbeddedEmpty);
  REQUIRE(reason(RuleId::Cut, inst_cut(Path{}, parse_formula("p1")), "=> p4") ==
          Reason::EmbeddedEmpty);
  // Instantiation key discipline.
  REQUIRE(reason(RuleId::AndL, inst_none(), "p0 & p1 => p0") == Reason::WrongShape);
  REQUIRE(reason(RuleId::AndR, inst_at(Path{}), "p0 => p1 & p2") == Reason::WrongShape);
  REQUIRE(reason(RuleId::Cut, inst_at(Path{}), "p0 => p1") == Reason::WrongShape);
}

TEST_CASE("check whole trees") {
  // [p0 => p0; (DiaR) o(p0) => dia p0] is fine under Base.
  auto d1 = node(RuleId::DiaR, inst_none(), parse_sequent("o(p0) => dia p0"),
                 {leaf_id(fvar(0))});
  REQUIRE(check(d1, Variant::Base).empty());

  // Extend with (BBoxR) to p0 => bbox dia p0.
  auto d2 = node(RuleId::BBoxR, inst_none(), parse_sequent("p0 => bbox dia p0"), {d1});
  REQUIRE(check(d2, Variant::Base).empty());
  REQUIRE(height(d2) == 2);
  REQUIRE(height(leaf_ida(fvar(0))) == 0);

  // A leaf claiming p0 => p1 yields exactly one violation, at the right address.
  auto bad = mk_deriv(parse_sequent("p0 => p1"), RuleId::IdA, inst_none(), {});
  auto vs = check(bad, Variant::Dagger);
  REQUIRE(vs.size() == 1);
  REQUIRE(vs[0].addr == "e");
  REQUIRE(vs[0].reason == Reason::WrongShape);

  // Address reporting below the root: the DiaR step itself is consistent,
  // only the inner leaf is a bad axiom.
  auto inner = mk_deriv(parse_sequent("p0 => dia p0"), RuleId::IdA, inst_none(), {});
  auto outer = mk_deriv(parse_sequent("o(p0) => dia dia p0"), RuleId::DiaR, inst_none(), {inner});
  vs = check(outer, Variant::Dagger);
  REQUIRE(vs.size() == 1);
  REQUIRE(vs[0].addr == "0");
  // And a mismatching premise is flagged at the parent node.
  auto outer2 = mk_deriv(parse_sequent("o(p1) => dia p1"), RuleId::DiaR, inst_none(), {inner});
  vs = check(outer2, Variant::Dagger);
  REQUIRE(vs.size() == 2);
  REQUIRE(vs[0].addr == "e");
  REQUIRE(vs[1].addr == "0");

  // height: balanced AndR over two leaves.
  auto andr = node(RuleId::AndR, inst_none(), parse_sequent("p0 => p0 & p0"),
                   {leaf_id(fvar(0)), leaf_id(fvar(0))});
  REQUIRE(height(andr) == 1);
}

TEST_CASE("is_cut_free") {
  REQUIRE(is_cut_free(leaf_ida(fvar(0))));
  auto cut = node(RuleId::Cut, inst_cut(Path{}, fvar(0)), parse_sequent("p0 => p0"),
                  {leaf_id(fvar(0)), leaf_id(fvar(0))});
  REQUIRE(!is_cut_free(cut));
  auto star = node(RuleId::CutStar, inst_cut(Path{}, parse_formula("p0 & p0")),
                   parse_sequent("p0 & p0 => p0 & p0"),
                   {leaf_id(parse_formula("p0 & p0")), leaf_id(parse_formula("p0 & p0"))});
  REQUIRE(!is_cut_free(star));
}

TEST_CASE("node() validates construction") {
  REQUIRE_THROWS_AS(node(RuleId::DiaR, inst_none(), parse_sequent("o(p0) => dia p0"),
                         {leaf_id(fvar(1))}),
                    std::logic_error);
  REQUIRE_THROWS_AS(node(RuleId::AndL, inst_at(Path{}), parse_sequent("p0 | p1 => p0"),
                         {leaf_id(fvar(0))}),
                    std::logic_error);
}

TEST_CASE("derivation file round trip") {
  auto d1 = node(RuleId::DiaR, inst_none(), parse_sequent("o(p0) => dia p0"),
                 {leaf_id(fvar(0))});
  std::string text = write_derivation(d1);
  REQUIRE(equal(read_derivation(text), d1));

  // Cover every instantiation key shape.
  auto wk = node(RuleId::Wk1, inst_at_delta(Path{}, parse_structure("p1")),
                 parse_sequent("p0, p1 => p0"), {leaf_ida(fvar(0))});
  REQUIRE(equal(read_derivation(write_derivation(wk)), wk));

  auto cut = node(RuleId::Cut, inst_cut(Path{}, fvar(0)), parse_sequent("p0 => p0"),
                  {leaf_ida(fvar(0)), leaf_ida(fvar(0))});
  REQUIRE(equal(read_derivation(write_derivation(cut)), cut));

  auto mix = node(RuleId::MixA, inst_mix({Path{Step::L}, Path{Step::R}}, fvar(1)),
                  parse_sequent("p0, p0 => p2"),
                  {mk_deriv(parse_sequent("p0 => p1"), RuleId::IdA, inst_none(), {}),
                   mk_deriv(parse_sequent("p1, p1 => p2"), RuleId::IdA, inst_none(), {})});
  REQUIRE(equal(read_derivation(write_derivation(mix)), mix));
}

TEST_CASE("derivation file reading: explicit example") {
  const std::string text =
      "; a two-step derivation\n"
      "(rule diar :concl \"o(p0) => dia p0\" :inst ()\n"
      "  (id \"p0 => p0\"))\n";
  auto d = read_derivation(text);
  REQUIRE(d->rule == RuleId::DiaR);
  REQUIRE(print_sequent(d->concl) == "o(p0) => dia p0");
  REQUIRE(d->prems.size() == 1);
  REQUIRE(d->prems[0]->rule == RuleId::Id);
  REQUIRE(check(d, Variant::Base).empty());
}

TEST_CASE("derivation file reading: errors") {
  REQUIRE_THROWS_AS(read_derivation("(rule nosuch :concl \"p0 => p0\" :inst ())"), ReadError);
  REQUIRE_THROWS_AS(read_derivation("(id \"p0 => \")"), ReadError);
  // Wrong key set for the rule.
  REQUIRE_THROWS_AS(
      read_derivation("(rule andl :concl \"p0 & p1 => p0\" :inst () (id \"p0, p1 => p0\"))"),
      ReadError);
  // :side is reserved.
  REQUIRE_THROWS_AS(
      read_derivation(
          "(rule orr1 :concl \"p0 => p0 | p1\" :inst (:side L) (id \"p0 => p0\"))"),
      ReadError);
  // Wrong arity.
  REQUIRE_THROWS_AS(
      read_derivation("(rule andr :concl \"p0 => p0 & p0\" :inst () (id \"p0 => p0\"))"),
      ReadError);
  // Unterminated.
  REQUIRE_THROWS_AS(read_derivation("(rule diar :concl \"o(p0) => dia p0\" :inst ()"), ReadError);
}
