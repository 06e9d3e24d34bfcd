#include <gtest/gtest.h>

#include <json.hpp>

#include "bil/biasim.hpp"
#include "bil/error.hpp"
#include "bil/generate.hpp"
#include "bil/semantics.hpp"
#include "helpers.hpp"

using namespace bil;

namespace {

Asim identity(const std::shared_ptr<const KripkeModel>& m) {
  Asim a(m, m);
  for (std::size_t w = 0; w < m->size(); ++w) {
    a.insert(Side::one_to_two, w, w);
    a.insert(Side::two_to_one, w, w);
  }
  return a;
}

std::shared_ptr<const KripkeModel> rand_model(Rng& rng, std::size_t max_worlds, const Signature& sig) {
  return std::make_shared<const KripkeModel>(random_model(1 + rng.below(max_worlds), sig, 0.2 + 0.5 * rng.unit(), rng.next()));
}

}  // namespace

TEST(CheckBiasim, IdentityOnAPoint) {
  auto u = test::point_p();
  EXPECT_TRUE(check_biasim(identity(u), PointedModel(u, "u"), PointedModel(u, "u")).ok());
}

TEST(CheckBiasim, MissingWitnessIsReportedAsBack) {
  auto c = test::chain2();
  Asim a = identity(c);
  // (a, a) needs a partner for the successor b of a
  a.erase(Side::two_to_one, 1, 1);
  const ValidationReport rep = check_biasim(a, PointedModel(c, "a"), PointedModel(c, "a"));
  ASSERT_TRUE(rep.has(ViolationKind::s_back));
  bool orphan = false;
  for (const auto& v : rep.violations) {
    if (v.kind == ViolationKind::s_back && v.worlds.size() == 3 && v.worlds[2] == "b") orphan = true;
  }
  EXPECT_TRUE(orphan) << rep.describe();
}

TEST(CheckBiasim, ElemAndAtomViolations) {
  auto c = test::chain2();
  Asim a(c, c);
  a.insert(Side::one_to_two, 1, 0);
  const ValidationReport rep = check_biasim(a, PointedModel(c, "a"), PointedModel(c, "a"));
  EXPECT_TRUE(rep.has(ViolationKind::elem));
  EXPECT_TRUE(rep.has(ViolationKind::s_atom));
}

TEST(CheckBiasim, ModelMismatchThrows) {
  auto c = test::chain2();
  auto u = test::point_p();
  EXPECT_THROW(check_biasim(identity(c), PointedModel(u, "u"), PointedModel(c, "a")), InvalidArgument);
}

TEST(GreatestBiasim, ContainsTheIdentity) {
  Rng rng(61);
  for (int i = 0; i < 30; ++i) {
    auto m = rand_model(rng, 5, Signature{"p", "q"});
    const auto r = greatest_biasim(PointedModel(m, 0), PointedModel(m, 0));
    ASSERT_TRUE(r);
    for (std::size_t w = 0; w < m->size(); ++w) {
      EXPECT_TRUE(r->contains(Side::one_to_two, w, w));
      EXPECT_TRUE(r->contains(Side::two_to_one, w, w));
    }
    EXPECT_TRUE(check_biasim(*r, PointedModel(m, 0), PointedModel(m, 0)).ok());
  }
}

TEST(GreatestBiasim, ContainsTheIsomorphismGraph) {
  Rng rng(67);
  for (int i = 0; i < 30; ++i) {
    auto m = rand_model(rng, 5, Signature{"p", "q"});
    auto n = std::make_shared<const KripkeModel>(relabel(*m, "z"));
    const auto g = isomorphism(*m, *n);
    ASSERT_TRUE(g);
    const auto r = greatest_biasim(PointedModel(m, 0), PointedModel(n, "z" + m->world(0)));
    ASSERT_TRUE(r);
    for (const auto& [a, b] : *g) {
      EXPECT_TRUE(r->contains(Side::one_to_two, m->index(a), n->index(b)));
      EXPECT_TRUE(r->contains(Side::two_to_one, n->index(b), m->index(a)));
    }
  }
}

TEST(GreatestBiasim, PointAndChainAreSeparatedBothWays) {
  auto c = test::chain2();
  auto u = test::point_p();
  EXPECT_FALSE(greatest_biasim(PointedModel(c, "b"), PointedModel(u, "u")));
  EXPECT_FALSE(greatest_biasim(PointedModel(u, "u"), PointedModel(c, "b")));
  EXPECT_FALSE(theory_included(PointedModel(c, "b"), PointedModel(u, "u"), Signature{"p"}, 4).included);
  EXPECT_FALSE(theory_included(PointedModel(u, "u"), PointedModel(c, "b"), Signature{"p"}, 4).included);
}

TEST(GreatestBiasim, SignatureMismatchThrows) {
  auto c = test::chain2();
  auto f = test::fork();
  EXPECT_THROW(greatest_biasim(PointedModel(c, "a"), PointedModel(f, "r")), InvalidArgument);
}

TEST(GreatestBiasim, ScanOrderDoesNotChangeTheFixpoint) {
  Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    auto a = rand_model(rng, 5, Signature{"p", "q"});
    auto b = rand_model(rng, 5, Signature{"p", "q"});
    const Refinement lex = refine(a, b);
    const Refinement shuf = refine(a, b, ScanOrder::shuffled, rng.next());
    EXPECT_EQ(lex.survivors, shuf.survivors);
  }
}

TEST(GreatestBiasim, UnionOfValidRelationsIsValid) {
  Rng rng(73);
  for (int i = 0; i < 50; ++i) {
    auto m = rand_model(rng, 5, Signature{"p"});
    const auto g = greatest_biasim(PointedModel(m, 0), PointedModel(m, 0));
    ASSERT_TRUE(g);
    const Asim u = identity(m).united(*g);
    EXPECT_TRUE(check_biasim(u, PointedModel(m, 0), PointedModel(m, 0)).ok());
  }
}

TEST(GreatestBiasim, TraceCausesPointBackwards) {
  Rng rng(79);
  for (int i = 0; i < 50; ++i) {
    auto a = rand_model(rng, 5, Signature{"p", "q"});
    auto b = rand_model(rng, 5, Signature{"p", "q"});
    const Refinement r = refine(a, b);
    for (const auto& rem : r.trace) {
      for (const auto& c : rem.causes) {
        const auto idx = r.removal_of(c);
        ASSERT_TRUE(idx);
        EXPECT_LT(r.trace[*idx].round, rem.round);
      }
    }
  }
}

TEST(CanonicalRelation, Examples) {
  auto c = test::chain2();
  auto u = test::point_p();
  for (int rank = 0; rank <= 3; ++rank) {
    const Asim id = canonical_relation(c, c, Signature{"p"}, rank);
    for (std::size_t w = 0; w < c->size(); ++w) {
      EXPECT_TRUE(id.contains(Side::one_to_two, w, w));
      EXPECT_TRUE(id.contains(Side::two_to_one, w, w));
    }
  }
  // rank 0 is the atom condition, which keeps more than the fixpoint
  const Asim r0 = canonical_relation(c, u, Signature{"p"}, 0);
  const Asim fix = refine(c, u).survivors;
  EXPECT_TRUE(r0.contains(Side::one_to_two, 1, 0));
  EXPECT_FALSE(fix.contains(Side::one_to_two, 1, 0));
  for (const auto& p : fix.pairs()) EXPECT_TRUE(r0.contains(p));
  EXPECT_EQ(canonical_relation(c, u, Signature{"p"}, 8), fix);
}

TEST(CanonicalRelation, EqualsFixpointAtSaturatingRank) {
  Rng rng(83);
  for (int i = 0; i < 50; ++i) {
    auto a = rand_model(rng, 4, Signature{"p", "q"});
    auto b = rand_model(rng, 4, Signature{"p", "q"});
    const int rank = static_cast<int>(2 * a->size() * b->size());
    EXPECT_EQ(canonical_relation(a, b, Signature{"p", "q"}, rank), refine(a, b).survivors);
  }
}

TEST(Separate, Examples) {
  auto c = test::chain2();
  auto u = test::point_p();
  const auto f = separating_formula(PointedModel(c, "b"), PointedModel(u, "u"));
  ASSERT_TRUE(f);
  EXPECT_EQ(render(*f), "(false -> false) -< p");
  const auto g = separating_formula(PointedModel(u, "u"), PointedModel(c, "b"));
  ASSERT_TRUE(g);
  EXPECT_EQ(render(*g), "((false -> false) -< p) -> false");
  EXPECT_FALSE(separating_formula(PointedModel(c, "a"), PointedModel(c, "b")));
}

TEST(Separate, SoundOnRandomPairsWithRankBound) {
  Rng rng(89);
  int separated = 0;
  for (int i = 0; i < 200; ++i) {
    auto a = rand_model(rng, 5, Signature{"p", "q"});
    auto b = rand_model(rng, 5, Signature{"p", "q"});
    const PointedModel from(a, rng.below(a->size())), to(b, rng.below(b->size()));
    const auto f = separating_formula(from, to);
    EXPECT_EQ(f.has_value(), !greatest_biasim(from, to).has_value());
    if (!f) continue;
    ++separated;
    EXPECT_TRUE(satisfies(from, *f));
    EXPECT_FALSE(satisfies(to, *f));
    // the empty conjunction is top, which already has rank 1
    EXPECT_LE(static_cast<std::size_t>(f->rank()), refine(a, b).rounds + 1);
    const auto small = separating_formula(from, to, true);
    ASSERT_TRUE(small);
    EXPECT_TRUE(satisfies(from, *small));
    EXPECT_FALSE(satisfies(to, *small));
    EXPECT_LE(small->size(), f->size());
  }
  EXPECT_GT(separated, 50);
}

TEST(Separate, PreservationUnderBiasimulation) {
  Rng rng(97);
  int present = 0;
  for (int i = 0; i < 400 && present < 30; ++i) {
    auto a = rand_model(rng, 4, Signature{"p"});
    auto b = rand_model(rng, 4, Signature{"p"});
    const PointedModel from(a, rng.below(a->size())), to(b, rng.below(b->size()));
    if (!greatest_biasim(from, to)) continue;
    ++present;
    for (int k = 0; k < 100; ++k) {
      const Formula f = random_formula(Signature{"p"}, 4, rng);
      EXPECT_FALSE(satisfies(from, f) && !satisfies(to, f)) << render(f);
    }
  }
  EXPECT_GT(present, 5);
}

TEST(AsimJson, Format) {
  auto u = test::point_p();
  const auto j = nlohmann::json::parse(asim_to_json(identity(u)));
  ASSERT_EQ(j.size(), 2U);
  EXPECT_EQ(j[0]["side"], "1to2");
  EXPECT_EQ(j[0]["from"], "u");
  EXPECT_EQ(j[1]["side"], "2to1");
}
