#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "genreason/formula.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace genreason;
using K = Formula::Kind;

namespace {

AtomUniverse rain_wet() { return AtomUniverse({"rain", "wet"}); }

std::size_t index_of(const World& w) { return static_cast<std::size_t>(w.to_index()); }

}  // namespace

TEST(Parse, Implication) {
  auto u = rain_wet();
  const Formula f = parse_formula("rain -> wet", u);
  ASSERT_EQ(f.kind(), K::Implies);
  EXPECT_EQ(f.lhs(), Formula::atom(0));
  EXPECT_EQ(f.rhs(), Formula::atom(1));
}

TEST(Parse, NegationBindsTighterThanOr) {
  auto u = rain_wet();
  EXPECT_EQ(parse_formula("!rain | wet", u),
            Formula::disjunction(Formula::negation(Formula::atom(0)), Formula::atom(1)));
}

TEST(Parse, AndBindsTighterThanOr) {
  auto u = AtomUniverse::extensible();
  const Formula f = parse_formula("a & b | c", u);
  EXPECT_EQ(f, Formula::disjunction(Formula::conjunction(Formula::atom(0), Formula::atom(1)), Formula::atom(2)));
  EXPECT_EQ(u.names(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Parse, ImplicationIsRightAssociative) {
  auto u = AtomUniverse::extensible();
  const Formula f = parse_formula("a -> b -> c", u);
  EXPECT_EQ(f, Formula::implication(Formula::atom(0), Formula::implication(Formula::atom(1), Formula::atom(2))));
}

TEST(Parse, IffIsLeftAssociativeAndLoosest) {
  auto u = AtomUniverse::extensible();
  const Formula f = parse_formula("a <-> b <-> c -> a", u);
  const Formula a = Formula::atom(0), b = Formula::atom(1), c = Formula::atom(2);
  EXPECT_EQ(f, Formula::equivalence(Formula::equivalence(a, b), Formula::implication(c, a)));
}

TEST(Parse, AliasesAgree) {
  auto u = rain_wet();
  const Formula ascii = parse_formula("!(rain & wet) -> (rain | wet) <-> true", u);
  EXPECT_EQ(parse_formula("not (rain & wet) -> (rain | wet) <-> true", u), ascii);
  EXPECT_EQ(parse_formula("\xC2\xAC(rain \xE2\x88\xA7 wet) \xE2\x86\x92 (rain \xE2\x88\xA8 wet) \xE2\x86\x94 true", u),
            ascii);
}

TEST(Parse, ParenthesesOverride) {
  auto u = AtomUniverse::extensible();
  EXPECT_EQ(parse_formula("a & (b | c)", u),
            Formula::conjunction(Formula::atom(0), Formula::disjunction(Formula::atom(1), Formula::atom(2))));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  auto u = rain_wet();
  auto position = [&](const std::string& text) -> std::size_t {
    try {
      parse_formula(text, u);
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.code(), ErrorCode::Syntax);
      return e.position();
    }
    ADD_FAILURE() << "no syntax error for '" << text << "'";
    return 0;
  };
  EXPECT_EQ(position(""), 0u);
  EXPECT_EQ(position("rain &"), 6u);
  EXPECT_EQ(position("(rain"), 5u);
  EXPECT_EQ(position("rain wet"), 5u);
  EXPECT_EQ(position("rain $ wet"), 5u);
  EXPECT_EQ(position("rain )"), 5u);
}

TEST(Parse, FrozenUniverseRejectsUnknownAtom) {
  auto u = rain_wet();
  try {
    parse_formula("rain -> snow", u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownAtom);
  }
  EXPECT_EQ(u.size(), 2u);
}

TEST(Universe, RejectsBadAndDuplicateNames) {
  EXPECT_THROW(AtomUniverse({"rain", "rain"}), Error);
  EXPECT_THROW(AtomUniverse({"1abc"}), Error);
  EXPECT_THROW(AtomUniverse({"not"}), Error);
  EXPECT_THROW(AtomUniverse({"count-x"}), Error);
  EXPECT_NO_THROW(AtomUniverse({"_a1", "B_2"}));
}

TEST(Parse, FormulaList) {
  auto u = rain_wet();
  EXPECT_TRUE(parse_formula_list("", u).empty());
  const auto list = parse_formula_list("rain; rain -> wet", u);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0], Formula::atom(0));
  EXPECT_THROW(parse_formula_list("rain;", u), SyntaxError);
}

TEST(Evaluate, ImplicationRows) {
  auto u = rain_wet();
  const Formula f = parse_formula("rain -> wet", u);
  EXPECT_TRUE(evaluate(f, fixtures::rain_wet(false, false)));
  EXPECT_TRUE(evaluate(f, fixtures::rain_wet(false, true)));
  EXPECT_FALSE(evaluate(f, fixtures::rain_wet(true, false)));
  EXPECT_TRUE(evaluate(f, fixtures::rain_wet(true, true)));
}

TEST(Evaluate, UniverseMismatch) {
  auto u = AtomUniverse::extensible();
  const Formula f = parse_formula("a & b & c", u);
  try {
    evaluate(f, World(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UniverseMismatch);
  }
}

TEST(Evaluate, AgreesWithIndependentOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int atoms = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto e = oracle::random_expr(rng, atoms, 4);
    auto u = fixtures::oracle_universe(atoms);
    const Formula f = fixtures::to_formula(*e, rng, u);
    const Formula nf = Formula::negation(f);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms); ++m) {
      const World w = World::from_index(m, static_cast<std::size_t>(atoms));
      const bool expected = oracle::eval(*e, oracle::assignment(m, atoms));
      ASSERT_EQ(evaluate(f, w), expected) << oracle::key(*e) << " at " << m;
      ASSERT_EQ(evaluate(nf, w), !expected);
    }
  }
}

TEST(Print, RoundTrip) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int atoms = std::uniform_int_distribution<int>(1, 5)(rng);
    auto u = fixtures::oracle_universe(atoms);
    const Formula f = fixtures::to_formula(*oracle::random_expr(rng, atoms, 5), rng, u);
    const std::string text = to_string(f, u);
    EXPECT_EQ(parse_formula(text, u), f) << text;
  }
}

TEST(Print, MinimalParentheses) {
  auto u = AtomUniverse::extensible();
  EXPECT_EQ(to_string(parse_formula("((a & b) | c)", u), u), "a & b | c");
  EXPECT_EQ(to_string(parse_formula("(a -> b) -> c", u), u), "(a -> b) -> c");
  EXPECT_EQ(to_string(parse_formula("a -> (b -> c)", u), u), "a -> b -> c");
  EXPECT_EQ(to_string(parse_formula("!(a | b)", u), u), "!(a | b)");
}

TEST(Models, Examples) {
  auto u = rain_wet();
  const auto imp = models_of({parse_formula("rain -> wet", u)}, u);
  std::vector<std::size_t> idx;
  for (const auto& w : imp) idx.push_back(index_of(w));
  // m1=(0,0)->0, m2=(0,1)->2, m4=(1,1)->3 with rain at bit 0.
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_TRUE(models_of({parse_formula("rain", u), parse_formula("!rain", u)}, u).empty());
  EXPECT_EQ(models_of({}, u).size(), 4u);
}

TEST(Models, CanonicalOrder) {
  auto u = fixtures::oracle_universe(7);
  const auto all = models_of({}, u);
  ASSERT_EQ(all.size(), 128u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].to_index(), i);
}

TEST(Models, AgreeWithOracleAndPartition) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int atoms = std::uniform_int_distribution<int>(1, 9)(rng);
    auto u = fixtures::oracle_universe(atoms);
    std::vector<oracle::ExprPtr> gamma;
    std::vector<Formula> formulas;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < n; ++i) {
      gamma.push_back(oracle::random_expr(rng, atoms, 3));
      formulas.push_back(fixtures::to_formula(*gamma.back(), rng, u));
    }
    std::set<std::uint64_t> got;
    for (const auto& w : models_of(formulas, u)) got.insert(w.to_index());
    ASSERT_EQ(got, oracle::models(gamma, atoms));

    const auto e = oracle::random_expr(rng, atoms, 4);
    const Formula f = fixtures::to_formula(*e, rng, u);
    const auto pos = models_of({f}, u);
    const auto neg = models_of({Formula::negation(f)}, u);
    std::set<std::uint64_t> both;
    for (const auto& w : pos) both.insert(w.to_index());
    for (const auto& w : neg) EXPECT_TRUE(both.insert(w.to_index()).second);
    EXPECT_EQ(both.size(), std::size_t{1} << atoms);
  }
}

TEST(Models, CapIsEnforced) {
  auto u = fixtures::oracle_universe(25);
  try {
    models_of({}, u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UniverseTooLarge);
  }
  auto small = fixtures::oracle_universe(4);
  EXPECT_THROW(models_of({}, small, 3), Error);
}

TEST(TruthTable, MatchesEvaluationAcrossWordBoundaries) {
  std::mt19937_64 rng(14);
  for (int atoms : {1, 2, 5, 6, 7, 10}) {
    auto u = fixtures::oracle_universe(atoms);
    for (int trial = 0; trial < 20; ++trial) {
      const Formula f = fixtures::to_formula(*oracle::random_expr(rng, atoms, 4), rng, u);
      const TruthTable t(f, static_cast<std::size_t>(atoms));
      std::uint64_t trues = 0;
      t.for_each_true([&](std::uint64_t) { ++trues; });
      std::uint64_t expected = 0;
      for (std::uint64_t m = 0; m < t.num_worlds(); ++m) {
        const bool v = evaluate(f, World::from_index(m, static_cast<std::size_t>(atoms)));
        ASSERT_EQ(t.test(m), v);
        expected += v ? 1 : 0;
      }
      EXPECT_EQ(trues, expected);
    }
  }
}

TEST(Deduplicate, KeepsFirstOccurrence) {
  auto u = rain_wet();
  const auto out = deduplicate({parse_formula("rain", u), parse_formula("wet", u), parse_formula("(rain)", u)});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], Formula::atom(0));
  // Structural, not semantic: "rain & rain" stays distinct from "rain".
  EXPECT_EQ(deduplicate({parse_formula("rain", u), parse_formula("rain & rain", u)}).size(), 2u);
}

TEST(KnowledgeBase, CommentsBlanksAndLineNumbers) {
  auto u = rain_wet();
  std::istringstream in("# background\n\nrain -> wet   # rule\n  \nrain\n");
  const auto kb = parse_knowledge_base(in, u);
  ASSERT_EQ(kb.size(), 2u);
  EXPECT_EQ(kb[1], Formula::atom(0));

  std::istringstream bad("rain\nrain &\n");
  try {
    parse_knowledge_base(bad, u);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(KnowledgeBase, SampleFile) {
  auto u = rain_wet();
  const auto kb = read_knowledge_base(std::string(GENREASON_SAMPLES_DIR) + "/rain.kb", u);
  ASSERT_EQ(kb.size(), 1u);
  EXPECT_EQ(kb[0], Formula::implication(Formula::atom(0), Formula::atom(1)));
  EXPECT_THROW(read_knowledge_base("/nonexistent/kb.txt", u), Error);
}
