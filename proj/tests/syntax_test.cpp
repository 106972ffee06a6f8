// Tests for formula/structure syntax: parsing, printing, the f-translation,
// paths, contexts, occurrences and complexity.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tenseq/syntax.hpp"
#include "tenseq/text.hpp"

using namespace tenseq;

TEST_CASE("parse_formula basic shapes") {
  auto f = parse_formula("p0");
  REQUIRE(f->kind == FKind::Var);
  REQUIRE(f->var == 0);

  f = parse_formula("box ~p1");
  REQUIRE(f->kind == FKind::Box);
  REQUIRE(f->lhs->kind == FKind::Impl);
  REQUIRE(f->lhs->lhs->kind == FKind::Var);
  REQUIRE(f->lhs->lhs->var == 1);
  REQUIRE(f->lhs->rhs->kind == FKind::Bot);

  f = parse_formula("p0 & p1 -> dia p0");
  REQUIRE(equal(f, fimpl(fand(fvar(0), fvar(1)), fdia(fvar(0)))));
}

TEST_CASE("parse_formula precedence and associativity") {
  // -> is right associative.
  REQUIRE(equal(parse_formula("p0 -> p1 -> p2"),
                fimpl(fvar(0), fimpl(fvar(1), fvar(2)))));
  // & and | are left associative; & binds tighter than |.
  REQUIRE(equal(parse_formula("p0 & p1 & p2"), fand(fand(fvar(0), fvar(1)), fvar(2))));
  REQUIRE(equal(parse_formula("p0 | p1 & p2"), for_(fvar(0), fand(fvar(1), fvar(2)))));
  // Unary binds tightest.
  REQUIRE(equal(parse_formula("dia p0 & p1"), fand(fdia(fvar(0)), fvar(1))));
  REQUIRE(equal(parse_formula("~p0 | p1"), for_(fneg(fvar(0)), fvar(1))));
  // Stacked unaries.
  REQUIRE(equal(parse_formula("box bdia ~p0"), fbox(fbdia(fneg(fvar(0))))));
  // Parentheses override.
  REQUIRE(equal(parse_formula("dia (p0 & p1)"), fdia(fand(fvar(0), fvar(1)))));
}

TEST_CASE("parse_formula errors carry byte offsets") {
  REQUIRE_THROWS_AS(parse_formula("p0 &"), ParseError);
  REQUIRE_THROWS_AS(parse_formula("q0"), ParseError);
  REQUIRE_THROWS_AS(parse_formula("(p0"), ParseError);
  REQUIRE_THROWS_AS(parse_formula("p0 p1"), ParseError);
  try {
    parse_formula("p0 & @");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.offset == 5);
  }
}

TEST_CASE("print_formula canonical output") {
  REQUIRE(print_formula(fvar(0)) == "p0");
  REQUIRE(print_formula(fimpl(fvar(0), fbot())) == "~p0");
  REQUIRE(print_formula(fand(fvar(0), for_(fvar(1), fvar(2)))) == "p0 & (p1 | p2)");
  // Right-associated implication needs no parens; left-associated does.
  REQUIRE(print_formula(fimpl(fvar(0), fimpl(fvar(1), fvar(2)))) == "p0 -> p1 -> p2");
  REQUIRE(print_formula(fimpl(fimpl(fvar(0), fvar(1)), fvar(2))) == "(p0 -> p1) -> p2");
  // Negation sugar nests.
  REQUIRE(print_formula(fbox(fneg(fvar(1)))) == "box ~p1");
  REQUIRE(print_formula(fneg(fand(fvar(0), fvar(1)))) == "~(p0 & p1)");
  // ~ of an atom inside a binary op.
  REQUIRE(print_formula(fand(fneg(fvar(0)), fvar(1))) == "~p0 & p1");
}

TEST_CASE("parse_sequent shapes") {
  Sequent q = parse_sequent("p0 => p0");
  REQUIRE(q.ant->kind == SKind::Leaf);
  REQUIRE(equal(q.ant->f, fvar(0)));
  REQUIRE(equal(q.suc, fvar(0)));

  q = parse_sequent("o(p0) => dia p0");
  REQUIRE(equal(q.ant, scirc(sleaf(fvar(0)))));
  REQUIRE(equal(q.suc, fdia(fvar(0))));

  q = parse_sequent("=> T");
  REQUIRE(q.ant->kind == SKind::Empty);
  REQUIRE(q.suc->kind == FKind::Top);
}

TEST_CASE("parse_structure shapes") {
  // Comma is left associative and lowest precedence.
  REQUIRE(equal(parse_structure("p0, p1, p2"),
                scomma(scomma(sleaf(fvar(0)), sleaf(fvar(1))), sleaf(fvar(2)))));
  // Right-nested comma requires parentheses.
  REQUIRE(equal(parse_structure("p0, (p1, p2)"),
                scomma(sleaf(fvar(0)), scomma(sleaf(fvar(1)), sleaf(fvar(2))))));
  // o/b wrap structures; formulas may contain commas only via grouping.
  REQUIRE(equal(parse_structure("o(p0, b(p1))"),
                scirc(scomma(sleaf(fvar(0)), sbullet(sleaf(fvar(1)))))));
  // A parenthesized formula stays a leaf.
  REQUIRE(equal(parse_structure("(p0 -> p1), p2"),
                scomma(sleaf(fimpl(fvar(0), fvar(1))), sleaf(fvar(2)))));
  // Formula items bind before the comma.
  REQUIRE(equal(parse_structure("p0 -> p1, p2"),
                scomma(sleaf(fimpl(fvar(0), fvar(1))), sleaf(fvar(2)))));
}

TEST_CASE("print_structure canonical output") {
  REQUIRE(print_structure(scomma(scomma(sleaf(fvar(0)), sleaf(fvar(1))), sleaf(fvar(2)))) ==
          "p0, p1, p2");
  REQUIRE(print_structure(scomma(sleaf(fvar(0)), scomma(sleaf(fvar(1)), sleaf(fvar(2))))) ==
          "p0, (p1, p2)");
  REQUIRE(print_structure(scirc(scomma(sleaf(fvar(0)), sbullet(sleaf(fvar(1)))))) ==
          "o(p0, b(p1))");
  REQUIRE(print_sequent(Sequent{sempty(), ftop()}) == "=> T");
  REQUIRE(print_sequent(Sequent{sleaf(fvar(0)), fvar(0)}) == "p0 => p0");
}

TEST_CASE("f_translate per case") {
  REQUIRE(equal(f_translate(sempty()), ftop()));
  REQUIRE(equal(f_translate(scirc(sleaf(fvar(0)))), fdia(fvar(0))));
  REQUIRE(equal(f_translate(scomma(sleaf(fvar(0)), sbullet(sleaf(fvar(1))))),
                fand(fvar(0), fbdia(fvar(1)))));
}

TEST_CASE("complexity") {
  REQUIRE(complexity(fvar(3)) == 0);
  REQUIRE(complexity(ftop()) == 0);
  REQUIRE(complexity(fbox(fneg(fvar(0)))) == 2);
  // Additivity over every constructor.
  auto a = parse_formula("p0 & p1");
  auto b = parse_formula("dia p2");
  REQUIRE(complexity(fimpl(a, b)) == complexity(a) + complexity(b) + 1);
  REQUIRE(complexity(fand(a, b)) == complexity(a) + complexity(b) + 1);
  REQUIRE(complexity(for_(a, b)) == complexity(a) + complexity(b) + 1);
  REQUIRE(complexity(fdia(a)) == complexity(a) + 1);
  REQUIRE(complexity(fbox(a)) == complexity(a) + 1);
  REQUIRE(complexity(fbdia(a)) == complexity(a) + 1);
  REQUIRE(complexity(fbbox(a)) == complexity(a) + 1);
}

TEST_CASE("occurrences") {
  REQUIRE(occurrences(sleaf(fvar(0)), fvar(0)) == std::vector<Path>{Path{}});
  auto two = occurrences(scomma(sleaf(fvar(0)), sleaf(fvar(0))), fvar(0));
  REQUIRE(two == std::vector<Path>{Path{Step::L}, Path{Step::R}});
  REQUIRE(occurrences(scirc(sleaf(fdia(fvar(0)))), fvar(0)).empty());
}

TEST_CASE("plug") {
  // Zero holes: base unchanged.
  REQUIRE(equal(plug(MultiContext{sleaf(fvar(0)), {}}, scirc(sleaf(fvar(1)))), sleaf(fvar(0))));
  // Identity context.
  auto d = scirc(sleaf(fvar(0)));
  REQUIRE(equal(plug(MultiContext{sleaf(fvar(9)), {Path{}}}, d), d));
  // Two-hole plugging.
  auto base = scomma(sleaf(fvar(8)), sleaf(fvar(9)));
  auto got = plug(MultiContext{base, {Path{Step::L}, Path{Step::R}}}, sleaf(fvar(0)));
  REQUIRE(equal(got, scomma(sleaf(fvar(0)), sleaf(fvar(0)))));
  // Overlapping holes are rejected.
  auto nest = scomma(scirc(sleaf(fvar(0))), sleaf(fvar(1)));
  REQUIRE_THROWS_AS(plug(MultiContext{nest, {Path{Step::L}, Path{Step::L, Step::U}}}, d),
                    std::logic_error);
}

TEST_CASE("paths: parse, print, subtree, replace") {
  REQUIRE(path_to_string(Path{}) == "e");
  REQUIRE(path_to_string(Path{Step::L, Step::R, Step::U}) == "L.R.U");
  REQUIRE(path_from_string("e") == Path{});
  REQUIRE(path_from_string("L.R.U") == Path{Step::L, Step::R, Step::U});
  REQUIRE(!path_from_string("").has_value());
  REQUIRE(!path_from_string("L.").has_value());
  REQUIRE(!path_from_string("Lx").has_value());

  auto s = parse_structure("o(p0, b(p1))");
  REQUIRE(equal(subtree_at(s, Path{Step::U, Step::R, Step::U}), sleaf(fvar(1))));
  REQUIRE(subtree_at(s, Path{Step::L}) == nullptr);
  auto r = replace_at(s, Path{Step::U, Step::L}, sleaf(fvar(7)));
  REQUIRE(equal(r, parse_structure("o(p7, b(p1))")));
}

TEST_CASE("comma components") {
  auto s = parse_structure("p0, o(p1, p2), p3");
  auto cs = comma_components(s);
  REQUIRE(cs.size() == 3);
  REQUIRE(cs[0].first == Path{Step::L, Step::L});
  REQUIRE(equal(cs[0].second, sleaf(fvar(0))));
  REQUIRE(cs[1].first == Path{Step::L, Step::R});
  REQUIRE(equal(cs[1].second, parse_structure("o(p1, p2)")));
  REQUIRE(cs[2].first == Path{Step::R});
}

// ---------------------------------------------------------------------------
// Structured fuzzing
// ---------------------------------------------------------------------------

namespace {

FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  switch (pick(rng)) {
    case 0: return fvar(static_cast<unsigned>(rng() % 4));
    case 1: return ftop();
    case 2: return fbot();
    case 3: return fimpl(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return fand(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return for_(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6: return fdia(random_formula(rng, depth - 1));
    case 7: return fbox(random_formula(rng, depth - 1));
    case 8: return fbdia(random_formula(rng, depth - 1));
    default: return fbbox(random_formula(rng, depth - 1));
  }
}

StructPtr random_structure(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  switch (pick(rng)) {
    case 0: return sleaf(random_formula(rng, depth - 1));
    case 1: return scomma(random_structure(rng, depth - 1), random_structure(rng, depth - 1));
    case 2: return scirc(random_structure(rng, depth - 1));
    default: return sbullet(random_structure(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("round-trip: parse after print is identity") {
  std::mt19937_64 rng(20260815);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, 6);
    REQUIRE(equal(parse_formula(print_formula(f)), f));
  }
  for (int i = 0; i < 500; ++i) {
    StructPtr s = random_structure(rng, 6);
    REQUIRE(equal(parse_structure(print_structure(s)), s));
    Sequent q{i % 5 == 0 ? sempty() : s, random_formula(rng, 4)};
    Sequent back = parse_sequent(print_sequent(q));
    REQUIRE(equal(back, q));
  }
}

TEST_CASE("f_translate is size-linear") {
  std::mt19937_64 rng(42);
  REQUIRE(size(f_translate(sempty())) <= size(sempty()) + 1);
  for (int i = 0; i < 300; ++i) {
    StructPtr s = random_structure(rng, 6);
    REQUIRE(size(f_translate(s)) <= size(s) + 1);
  }
}

TEST_CASE("plug then occurrences recovers hole paths") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    StructPtr base = random_structure(rng, 5);
    // Choose leaf positions as holes; plug a fresh atom not used by the fuzzer.
    std::vector<Path> holes;
    for (auto& [p, sub] : comma_components(base))
      if (sub->kind == SKind::Leaf) holes.push_back(p);
    FormulaPtr x = fvar(99);
    StructPtr plugged = plug(MultiContext{base, holes}, sleaf(x));
    auto occ = occurrences(plugged, x);
    for (const Path& h : holes)
      REQUIRE(std::find(occ.begin(), occ.end(), h) != occ.end());
  }
}
