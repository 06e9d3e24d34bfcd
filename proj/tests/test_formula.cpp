#include <gtest/gtest.h>

#include <functional>

#include "bil/enumerate.hpp"
#include "bil/error.hpp"
#include "bil/formula.hpp"
#include "bil/generate.hpp"
#include "bil/semantics.hpp"
#include "helpers.hpp"

using namespace bil;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const Formula r = Formula::atom("r");
const Formula bot = Formula::bottom();

}  // namespace

TEST(Parse, ImplicationOverCoimplication) {
  EXPECT_EQ(parse("p -> (q -< false)"), Formula::impl(p, Formula::coimpl(q, bot)));
}

TEST(Parse, NegationSugar) { EXPECT_EQ(parse("~p"), Formula::impl(p, bot)); }

TEST(Parse, ConjunctionBindsTighterThanDisjunction) {
  EXPECT_EQ(parse("p & q | r"), Formula::disj(Formula::conj(p, q), r));
}

TEST(Parse, TrueIsBottomImpliesBottom) { EXPECT_EQ(parse("true"), Formula::impl(bot, bot)); }

TEST(Parse, CoimplicationBindsTighterThanImplication) {
  EXPECT_EQ(parse("p -< q -> r"), Formula::impl(Formula::coimpl(p, q), r));
}

TEST(Parse, Associativity) {
  EXPECT_EQ(parse("p -> q -> r"), Formula::impl(p, Formula::impl(q, r)));
  EXPECT_EQ(parse("p -< q -< r"), Formula::coimpl(Formula::coimpl(p, q), r));
}

TEST(Parse, IdentifiersWithSigns) {
  EXPECT_EQ(parse("q+a -> q-b"), Formula::impl(Formula::atom("q+a"), Formula::atom("q-b")));
  EXPECT_EQ(parse("x_1-> y"), Formula::impl(Formula::atom("x_1"), Formula::atom("y")));
  EXPECT_EQ(parse("a-<b"), Formula::coimpl(Formula::atom("a"), Formula::atom("b")));
}

TEST(Parse, CommentsAndWhitespace) {
  EXPECT_EQ(parse("p # trailing\n & q"), Formula::conj(p, q));
  EXPECT_EQ(parse("  ~ ~ p  "), Formula::neg(Formula::neg(p)));
}

TEST(Parse, ErrorsCarryPositions) {
  auto offset = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(offset("(p & q"), 6U);
  EXPECT_EQ(offset("p)"), 1U);
  EXPECT_EQ(offset("p ->"), 4U);
  EXPECT_EQ(offset("p $ q"), 2U);
  EXPECT_EQ(offset("p & & q"), 4U);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("p - q"), ParseError);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(Formula::impl(p, bot)), "p -> false");
  EXPECT_EQ(render(Formula::disj(Formula::conj(p, q), r)), "p & q | r");
  EXPECT_EQ(render(Formula::coimpl(Formula::top(), p)), "(false -> false) -< p");
  EXPECT_EQ(render(Formula::impl(Formula::coimpl(Formula::top(), p), bot)), "((false -> false) -< p) -> false");
  EXPECT_EQ(render(Formula::impl(Formula::impl(p, q), r)), "(p -> q) -> r");
  EXPECT_EQ(render(Formula::coimpl(p, Formula::coimpl(q, r))), "p -< (q -< r)");
}

namespace {

// arbitrary shapes, no rank limit
Formula any_ast(Rng& rng, int depth) {
  static const std::vector<std::string> names{"p", "q", "r", "q+w0", "s-1", "x_y"};
  if (depth == 0 || rng.chance(0.25)) {
    return rng.chance(0.15) ? bot : Formula::atom(names[rng.below(names.size())]);
  }
  Formula a = any_ast(rng, depth - 1);
  Formula b = any_ast(rng, depth - 1);
  switch (rng.below(4)) {
    case 0:
      return Formula::conj(a, b);
    case 1:
      return Formula::disj(a, b);
    case 2:
      return Formula::impl(a, b);
    default:
      return Formula::coimpl(a, b);
  }
}

}  // namespace

TEST(Render, RoundTripOnRandomTrees) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = any_ast(rng, 6);
    const std::string text = render(f);
    EXPECT_EQ(parse(text), f) << text;
  }
}

TEST(Letters, Examples) {
  EXPECT_EQ(letters(Formula::impl(p, q)).letters(), (std::vector<std::string>{"p", "q"}));
  EXPECT_TRUE(letters(bot).empty());
  EXPECT_EQ(letters(parse("q & (p -> q) | r")).letters(), (std::vector<std::string>{"q", "p", "r"}));
}

TEST(Rank, Examples) {
  EXPECT_EQ(p.rank(), 0);
  EXPECT_EQ(Formula::impl(p, q).rank(), 1);
  EXPECT_EQ(Formula::impl(Formula::coimpl(p, q), r).rank(), 2);
  EXPECT_EQ(Formula::conj(Formula::impl(p, q), r).rank(), 1);
  EXPECT_EQ(Formula::top().rank(), 1);
}

TEST(Formula, BigConnectivesUseUnitConventions) {
  EXPECT_EQ(Formula::big_conj({}), Formula::top());
  EXPECT_EQ(Formula::big_disj({}), bot);
  const std::vector<Formula> two{p, q};
  EXPECT_EQ(Formula::big_conj(two), Formula::conj(p, q));
  EXPECT_EQ(Formula::big_disj(two), Formula::disj(p, q));
}

TEST(Signature, IgnoresDuplicatesAndRejectsBadNames) {
  Signature s{"p"};
  s.insert("p");
  EXPECT_EQ(s.size(), 1U);
  EXPECT_THROW(s.insert("1x"), InvalidArgument);
  EXPECT_FALSE(is_valid_letter(""));
  EXPECT_TRUE(is_valid_letter("q+a-b_c"));
}

namespace {

// all pointed models over {p} with at most two worlds
std::vector<PointedModel> small_context() {
  std::vector<std::string> files{
      R"({"signature":["p"],"worlds":["u"],"order":[],"valuation":{"p":[]}})",
      R"({"signature":["p"],"worlds":["u"],"order":[],"valuation":{"p":["u"]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[["a","b"]],"valuation":{"p":[]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[["a","b"]],"valuation":{"p":["b"]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[["a","b"]],"valuation":{"p":["a","b"]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[],"valuation":{"p":[]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[],"valuation":{"p":["a"]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[],"valuation":{"p":["b"]}})",
      R"({"signature":["p"],"worlds":["a","b"],"order":[],"valuation":{"p":["a","b"]}})",
  };
  std::vector<PointedModel> out;
  for (const auto& f : files) {
    auto m = test::model(f);
    for (std::size_t w = 0; w < m->size(); ++w) out.emplace_back(m, w);
  }
  return out;
}

std::vector<bool> truth_vector(const Formula& f, const std::vector<PointedModel>& ctx) {
  std::vector<bool> v;
  for (const auto& pm : ctx) v.push_back(satisfies(pm, f));
  return v;
}

}  // namespace

TEST(Enumerate, RankZeroOverOneLetterHasTwoClasses) {
  const auto ctx = small_context();
  const auto fs = enumerate_formulas(Signature{"p"}, 0, ctx);
  ASSERT_EQ(fs.size(), 2U);
  EXPECT_EQ(fs[0], bot);
  EXPECT_EQ(fs[1], p);
}

TEST(Enumerate, ClosedFormulasAtRankOne) {
  const auto ctx = small_context();
  const auto fs = enumerate_formulas(Signature{}, 1, ctx);
  ASSERT_EQ(fs.size(), 2U);
  EXPECT_EQ(fs[0], bot);
  EXPECT_EQ(fs[1], Formula::top());
}

TEST(Enumerate, NegationHasAClassAtRankOne) {
  const auto ctx = small_context();
  const auto fs = enumerate_formulas(Signature{"p"}, 1, ctx);
  const auto target = truth_vector(Formula::neg(p), ctx);
  bool found = false;
  for (const auto& f : fs) found = found || truth_vector(f, ctx) == target;
  EXPECT_TRUE(found);
}

TEST(Enumerate, MembersRespectRankAndSignatureAndAreDistinct) {
  const auto ctx = small_context();
  for (int rank = 0; rank <= 3; ++rank) {
    const auto fs = enumerate_formulas(Signature{"p"}, rank, ctx);
    std::set<std::vector<bool>> seen;
    for (const auto& f : fs) {
      EXPECT_LE(f.rank(), rank);
      EXPECT_TRUE(letters(f).is_subset_of(Signature{"p"}));
      EXPECT_TRUE(seen.insert(truth_vector(f, ctx)).second) << render(f);
    }
  }
}

TEST(Enumerate, ClassBitsMatchTheModelChecker) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    auto a = std::make_shared<const KripkeModel>(random_model(1 + rng.below(4), Signature{"p", "q"}, 0.5, rng.next()));
    auto b = std::make_shared<const KripkeModel>(random_model(1 + rng.below(4), Signature{"p", "q"}, 0.5, rng.next()));
    Universe u({a, b}, Signature{"p", "q"});
    const ClassTable t = enumerate_classes(u, 3);
    for (std::size_t c = 0; c < t.size(); ++c) {
      const WorldSet ta = truth_set(*a, t.rep(c));
      const WorldSet tb = truth_set(*b, t.rep(c));
      for (std::size_t w = 0; w < a->size(); ++w) ASSERT_EQ(t.holds(c, u.global(*a, w)), ta.test(w));
      for (std::size_t w = 0; w < b->size(); ++w) ASSERT_EQ(t.holds(c, u.global(*b, w)), tb.test(w));
    }
  }
}

TEST(Enumerate, EveryRandomFormulaFallsInAClass) {
  Rng rng(8);
  auto m = std::make_shared<const KripkeModel>(random_model(4, Signature{"p", "q"}, 0.5, 3));
  std::vector<PointedModel> ctx;
  for (std::size_t w = 0; w < m->size(); ++w) ctx.emplace_back(m, w);
  const auto fs = enumerate_formulas(Signature{"p", "q"}, 2, ctx);
  std::set<std::vector<bool>> classes;
  for (const auto& f : fs) classes.insert(truth_vector(f, ctx));
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(Signature{"p", "q"}, 2, rng);
    EXPECT_TRUE(classes.count(truth_vector(f, ctx))) << render(f);
  }
}

TEST(Enumerate, BudgetIsEnforced) {
  auto m = std::make_shared<const KripkeModel>(random_model(6, Signature{"p", "q"}, 0.3, 9));
  Universe u({m}, Signature{"p", "q"});
  EnumLimits lim;
  lim.max_classes = 3;
  EXPECT_THROW(enumerate_classes(u, 2, lim), BudgetExceeded);
  EXPECT_THROW(enumerate_formulas(Signature{"p"}, 1, {}), InvalidArgument);
}
