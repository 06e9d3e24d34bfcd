#include <gtest/gtest.h>

#include "bil/error.hpp"
#include "bil/generate.hpp"
#include "bil/kripke.hpp"
#include "bil/model_io.hpp"
#include "bil/semantics.hpp"
#include "helpers.hpp"

using namespace bil;

namespace {

RawModel raw_ab(std::vector<std::pair<std::string, std::string>> order, std::vector<std::string> p) {
  RawModel raw;
  raw.signature = {"p"};
  raw.worlds = {"a", "b"};
  raw.order = std::move(order);
  raw.valuation["p"] = std::move(p);
  return raw;
}

}  // namespace

TEST(Normalize, ClosesTheOrder) {
  auto res = normalize(raw_ab({{"a", "b"}}, {"b"}), NormalizeMode::strict);
  ASSERT_TRUE(std::holds_alternative<KripkeModel>(res));
  const KripkeModel& m = std::get<KripkeModel>(res);
  EXPECT_TRUE(m.leq(0, 0));
  EXPECT_TRUE(m.leq(0, 1));
  EXPECT_TRUE(m.leq(1, 1));
  EXPECT_FALSE(m.leq(1, 0));
}

TEST(Normalize, CycleIsAntisymmetryError) {
  auto res = normalize(raw_ab({{"a", "b"}, {"b", "a"}}, {}), NormalizeMode::close);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(res));
  const auto& rep = std::get<ValidationReport>(res);
  ASSERT_TRUE(rep.has(ViolationKind::antisymmetry));
  EXPECT_EQ(rep.violations[0].worlds, (std::vector<std::string>{"a", "b"}));
}

TEST(Normalize, MonotonicityStrictVersusClose) {
  auto strict = normalize(raw_ab({{"a", "b"}}, {"a"}), NormalizeMode::strict);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(strict));
  const auto& v = std::get<ValidationReport>(strict).violations.at(0);
  EXPECT_EQ(v.kind, ViolationKind::monotonicity);
  EXPECT_EQ(v.worlds, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.letter, "p");

  auto closed = normalize(raw_ab({{"a", "b"}}, {"a"}), NormalizeMode::close);
  ASSERT_TRUE(std::holds_alternative<KripkeModel>(closed));
  EXPECT_EQ(std::get<KripkeModel>(closed).valuation("p").count(), 2U);
}

TEST(Normalize, DanglingReferences) {
  RawModel raw = raw_ab({{"a", "c"}}, {"d"});
  auto res = normalize(raw, NormalizeMode::strict);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(res));
  EXPECT_TRUE(std::get<ValidationReport>(res).has(ViolationKind::dangling_reference));
}

TEST(Normalize, Idempotent) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const KripkeModel m = random_model(1 + s % 6, Signature{"p", "q"}, 0.4, s);
    const KripkeModel again = normalize_or_throw(m.to_raw(), NormalizeMode::strict);
    EXPECT_EQ(again, m);
    EXPECT_EQ(normalize_or_throw(again.to_raw(), NormalizeMode::close), m);
  }
}

TEST(Validate, ReportsMissingClosure) {
  const auto rep = validate(raw_ab({{"a", "b"}}, {"b"}));
  EXPECT_TRUE(rep.has(ViolationKind::reflexivity));
  const auto ok = validate(raw_ab({{"a", "a"}, {"b", "b"}, {"a", "b"}}, {"b"}));
  EXPECT_TRUE(ok.ok()) << ok.describe();
}

TEST(ModelIo, RoundTripAndStrictSchema) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const KripkeModel m = random_model(1 + s % 5, Signature{"p", "q"}, 0.5, s);
    const RawModel raw = raw_from_json(model_to_json(m, 0));
    EXPECT_EQ(raw.point, m.world(0));
    EXPECT_EQ(normalize_or_throw(raw, NormalizeMode::strict), m);
  }
  EXPECT_THROW(raw_from_json(R"({"signature":[],"worlds":["a"],"extra":1})"), ParseError);
  EXPECT_THROW(raw_from_json(R"({"worlds":["a"]})"), ParseError);
  EXPECT_THROW(raw_from_json("{"), ParseError);
}

TEST(Reduct, Examples) {
  auto f = test::fork();
  EXPECT_EQ(reduct(*f, f->signature()), *f);
  const KripkeModel r = reduct(*f, Signature{"q"});
  EXPECT_EQ(r.signature().letters(), (std::vector<std::string>{"q"}));
  EXPECT_THROW(r.valuation("p"), UnknownLetter);
  EXPECT_THROW(reduct(*f, Signature{"z"}), InvalidArgument);
}

TEST(Reduct, TheoryOverSmallerSignatureIsUnchanged) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const KripkeModel m = random_model(1 + rng.below(5), Signature{"p", "q"}, 0.5, rng.next());
    const KripkeModel r = reduct(m, Signature{"p"});
    for (int k = 0; k < 20; ++k) {
      const Formula f = random_formula(Signature{"p"}, 3, rng);
      EXPECT_EQ(truth_set(m, f), truth_set(r, f)) << render(f);
    }
  }
}

TEST(Submodel, Examples) {
  auto c = test::chain2();
  const KripkeModel b = submodel(*c, {"b"});
  EXPECT_EQ(b.size(), 1U);
  EXPECT_TRUE(b.valuation("p").test(0));
  EXPECT_EQ(submodel(*c, c->worlds()), *c);
  EXPECT_THROW(submodel(*c, {}), InvalidArgument);
  EXPECT_TRUE(is_submodel(b, *c));
  EXPECT_FALSE(is_submodel(*c, b));
}

TEST(Submodel, RandomRestrictionsAreModels) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const KripkeModel m = random_model(1 + rng.below(6), Signature{"p"}, 0.5, rng.next());
    std::vector<std::string> keep;
    for (const auto& w : m.worlds()) {
      if (rng.chance(0.6)) keep.push_back(w);
    }
    if (keep.empty()) keep.push_back(m.world(0));
    const KripkeModel s = submodel(m, keep);
    EXPECT_TRUE(validate(s.to_raw()).ok() || std::holds_alternative<KripkeModel>(normalize(s.to_raw(), NormalizeMode::strict)));
    EXPECT_TRUE(is_submodel(s, m));
  }
}

TEST(Submodel, UpwardClosedAgreesOnAtoms) {
  Rng rng(19);
  for (int i = 0; i < 50; ++i) {
    const KripkeModel m = random_model(2 + rng.below(4), Signature{"p", "q"}, 0.5, rng.next());
    const std::size_t w = rng.below(m.size());
    std::vector<std::string> cone;
    m.up(w).for_each([&](std::size_t v) { cone.push_back(m.world(v)); });
    const KripkeModel s = submodel(m, cone);
    for (const auto& id : cone) {
      for (const auto& l : m.signature()) {
        EXPECT_EQ(m.valuation(l).test(m.index(id)), s.valuation(l).test(s.index(id)));
      }
    }
  }
}

TEST(ChainUnion, Examples) {
  auto c = test::chain2();
  EXPECT_EQ(chain_union({*c, *c}), *c);
  EXPECT_EQ(chain_union({submodel(*c, {"a"}), *c}), *c);
  EXPECT_THROW(chain_union({*c, submodel(*c, {"a"})}), InvalidArgument);
  EXPECT_THROW(chain_union({}), InvalidArgument);
}

TEST(ChainUnion, RandomNestedChains) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const KripkeModel m = random_model(2 + rng.below(5), Signature{"p", "q"}, 0.5, rng.next());
    std::vector<std::string> ws;
    std::vector<KripkeModel> chain;
    for (const auto& w : m.worlds()) {
      ws.push_back(w);
      if (rng.chance(0.6) || ws.size() == m.size()) chain.push_back(submodel(m, ws));
    }
    const KripkeModel u = chain_union(chain);
    EXPECT_TRUE(std::holds_alternative<KripkeModel>(normalize(u.to_raw(), NormalizeMode::strict)));
    EXPECT_EQ(u, chain.back());
  }
}

TEST(Isomorphism, Examples) {
  auto c = test::chain2();
  const auto id = isomorphism(*c, *c);
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, (std::map<std::string, std::string>{{"a", "a"}, {"b", "b"}}));

  auto xy = test::model(R"({"signature":["p"],"worlds":["x","y"],"order":[["x","y"]],"valuation":{"p":["y"]}})");
  const auto g = isomorphism(*c, *xy);
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, (std::map<std::string, std::string>{{"a", "x"}, {"b", "y"}}));

  auto fork3 = test::model(R"({"signature":["p"],"worlds":["r","s","t"],"order":[["r","s"],["r","t"]],"valuation":{"p":[]}})");
  EXPECT_FALSE(isomorphism(*c, *fork3));
}

TEST(Isomorphism, LeastChoiceOnSymmetricModels) {
  auto anti = test::model(R"({"signature":["p"],"worlds":["a","b"],"order":[],"valuation":{"p":[]}})");
  const auto g = isomorphism(*anti, *anti);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->at("a"), "a");
}

TEST(Isomorphism, PreservesTheoriesOfRelabelledCopies) {
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    const KripkeModel m = random_model(1 + rng.below(5), Signature{"p", "q"}, 0.5, rng.next());
    const KripkeModel n = relabel(m, "z");
    const auto g = isomorphism(m, n);
    ASSERT_TRUE(g);
    for (int k = 0; k < 30; ++k) {
      const Formula f = random_formula(Signature{"p", "q"}, 4, rng);
      for (const auto& [a, b] : *g) EXPECT_EQ(satisfies(m, a, f), satisfies(n, b, f));
    }
  }
}

TEST(RandomModel, DeterministicAndValid) {
  EXPECT_EQ(random_model(5, Signature{"p", "q"}, 0.4, 99), random_model(5, Signature{"p", "q"}, 0.4, 99));
  const KripkeModel one = random_model(1, Signature{"p"}, 0.9, 1);
  EXPECT_EQ(one.size(), 1U);
  EXPECT_TRUE(one.leq(0, 0));
  EXPECT_THROW(random_model(0, Signature{}, 0.5, 1), InvalidArgument);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const KripkeModel m = random_model(1 + s % 7, Signature{"p", "q"}, static_cast<double>(s % 10) / 10.0, s);
    ASSERT_TRUE(validate(m.to_raw()).ok() ||
                std::holds_alternative<KripkeModel>(normalize(m.to_raw(), NormalizeMode::strict)));
    for (std::size_t i = 0; i < m.size(); ++i) {
      m.up(i).for_each([&](std::size_t j) { ASSERT_LE(i, j); });
    }
  }
}

TEST(Model, LookupErrors) {
  auto c = test::chain2();
  EXPECT_THROW(c->index("zz"), UnknownWorld);
  EXPECT_THROW(c->valuation("zz"), UnknownLetter);
  EXPECT_EQ(c->covers(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
}
