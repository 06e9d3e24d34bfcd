#include <gtest/gtest.h>

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "bil/error.hpp"
#include "bil/fol.hpp"
#include "bil/generate.hpp"
#include "bil/semantics.hpp"
#include "helpers.hpp"

using namespace bil;

TEST(Translate, Examples) {
  EXPECT_EQ(translate(parse("p"), "x"), FOFormula::pred("p", Term::var("x")));

  const FOFormula impl = translate(parse("p -> q"), "x");
  EXPECT_EQ(impl, FOFormula::forall("y1", FOFormula::impl(FOFormula::leq(Term::var("x"), Term::var("y1")),
                                                          FOFormula::impl(FOFormula::pred("p", Term::var("y1")),
                                                                          FOFormula::pred("q", Term::var("y1"))))));

  const FOFormula co = translate(parse("p -< q"), "x");
  EXPECT_EQ(co, FOFormula::exists("y1", FOFormula::conj(FOFormula::leq(Term::var("y1"), Term::var("x")),
                                                        FOFormula::conj(FOFormula::pred("p", Term::var("y1")),
                                                                        FOFormula::neg(FOFormula::pred("q", Term::var("y1")))))));
  EXPECT_EQ(translate(Formula::bottom(), "x").kind(), FOKind::falsum);
}

TEST(Translate, FreeVariableIsOnlyTheTerm) {
  Rng rng(151);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula(Signature{"p", "q"}, 4, rng);
    const auto fv = translate(f, "x").free_vars();
    EXPECT_TRUE(fv.empty() || fv == std::set<std::string>{"x"});
    // clashing base name still leaves one free variable
    const auto fv2 = translate(f, "y1").free_vars();
    EXPECT_TRUE(fv2.empty() || fv2 == std::set<std::string>{"y1"}) << to_string(translate(f, "y1"));
  }
}

TEST(Translate, Compositional) {
  const Formula a = parse("p -> q"), b = parse("q -< p");
  EXPECT_EQ(translate(Formula::conj(a, b), "x"),
            FOFormula::conj(translate(a, "x"), translate(b, "x")));
  EXPECT_EQ(translate(Formula::disj(a, b), "x"),
            FOFormula::disj(translate(a, "x"), translate(b, "x")));
}

TEST(EvalFo, TwoChainDoubleNegation) {
  auto c = test::chain2();
  const Formula f = parse("~~p");
  EXPECT_TRUE(eval_fo(*c, translate(f, "x"), {{"x", c->index("a")}}));
  EXPECT_EQ(eval_fo(*c, translate(f, "x"), {{"x", 0}}), satisfies(*c, "a", f));
  EXPECT_TRUE(eval_fo(*c, translate(f, Term::world("a"))));
}

TEST(EvalFo, Errors) {
  auto c = test::chain2();
  EXPECT_THROW(eval_fo(*c, FOFormula::pred("p", Term::var("x"))), InvalidArgument);
  EXPECT_THROW(eval_fo(*c, FOFormula::pred("z", Term::var("x")), {{"x", 0}}), UnknownLetter);
  EXPECT_THROW(eval_fo(*c, FOFormula::pred("p", Term::world("zz"))), UnknownWorld);
}

TEST(EvalFo, AgreesWithTheChecker) {
  Rng rng(157);
  for (int i = 0; i < 300; ++i) {
    const KripkeModel m = random_model(1 + rng.below(5), Signature{"p", "q"}, 0.5, rng.next());
    const Formula f = random_formula(Signature{"p", "q"}, 4, rng);
    const FOFormula g = translate(f, "x");
    const WorldSet t = truth_set(m, f);
    for (std::size_t w = 0; w < m.size(); ++w) ASSERT_EQ(eval_fo(m, g, {{"x", w}}), t.test(w)) << render(f);
  }
}

TEST(FrameAxioms, HoldOnNormalizedModels) {
  Rng rng(163);
  const FOProblem p = make_problem(parse("p -> q"), Signature{"p", "q"});
  EXPECT_EQ(p.predicates, (std::vector<std::string>{"p", "q"}));
  for (int i = 0; i < 100; ++i) {
    const KripkeModel m = random_model(1 + rng.below(6), Signature{"p", "q"}, 0.5, rng.next());
    for (const auto& [name, ax] : p.axioms) EXPECT_TRUE(eval_fo(m, ax)) << name;
  }
}

TEST(Emit, TptpGoalShape) {
  const FOProblem p = make_problem(parse("p -> q"), Signature{"p", "q"});
  const std::string text = emit(p, FOFormat::tptp);
  EXPECT_NE(text.find("fof(goal, conjecture, ![X]: ![Y1]: (leq(X,Y1) => (p_p(Y1) => p_q(Y1))))."),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("fof(reflexivity, axiom,"), std::string::npos);
  EXPECT_EQ(text, emit(make_problem(parse("p -> q"), Signature{"p", "q"}), FOFormat::tptp));
}

TEST(Emit, SmtIsDeterministic) {
  auto c = test::chain2();
  const std::string a = emit(make_grounded_problem(*c, "a", parse("~~p")), FOFormat::smtlib2);
  const std::string b = emit(make_grounded_problem(*c, "a", parse("~~p")), FOFormat::smtlib2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("(check-sat)"), std::string::npos);
}

TEST(Emit, NameEscaping) {
  EXPECT_EQ(predicate_name("p"), "p_p");
  EXPECT_EQ(predicate_name("q+a_b"), "p_q_pa__b");
  EXPECT_EQ(predicate_name("q-x"), "p_q_mx");
  EXPECT_EQ(constant_name("w_1"), "w_w__1");
  EXPECT_EQ(constant_name("a.b"), "w_a_x2Eb");
  EXPECT_NE(predicate_name("a_p"), predicate_name("a+"));
}

namespace {

// Minimal s-expression reader for the emitted SMT-LIB2 subset.
struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_atom() const { return !atom.empty(); }
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto semi = line.find(';');
      src_ += (semi == std::string::npos ? line : line.substr(0, semi)) + "\n";
    }
  }
  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    skip();
    while (pos_ < src_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  Sexp read() {
    skip();
    Sexp s;
    if (src_.at(pos_) == '(') {
      ++pos_;
      skip();
      while (src_.at(pos_) != ')') {
        s.list.push_back(read());
        skip();
      }
      ++pos_;
      return s;
    }
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != '(' &&
           src_[pos_] != ')') {
      s.atom += src_[pos_++];
    }
    return s;
  }
  std::string src_;
  std::size_t pos_ = 0;
};

struct SmtModel {
  const KripkeModel& m;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, std::string> preds;

  std::size_t term(const Sexp& t, const std::map<std::string, std::size_t>& env) const {
    if (auto it = env.find(t.atom); it != env.end()) return it->second;
    return constants.at(t.atom);
  }

  bool eval(const Sexp& s, std::map<std::string, std::size_t> env) const {
    if (s.is_atom()) {
      if (s.atom == "true") return true;
      if (s.atom == "false") return false;
      throw std::runtime_error("bad atom " + s.atom);
    }
    const std::string& op = s.list.at(0).atom;
    if (op == "not") return !eval(s.list.at(1), env);
    if (op == "and") {
      for (std::size_t i = 1; i < s.list.size(); ++i) {
        if (!eval(s.list[i], env)) return false;
      }
      return true;
    }
    if (op == "or") {
      for (std::size_t i = 1; i < s.list.size(); ++i) {
        if (eval(s.list[i], env)) return true;
      }
      return false;
    }
    if (op == "=>") return !eval(s.list.at(1), env) || eval(s.list.at(2), env);
    if (op == "=") return term(s.list.at(1), env) == term(s.list.at(2), env);
    if (op == "distinct") {
      std::set<std::size_t> seen;
      for (std::size_t i = 1; i < s.list.size(); ++i) {
        if (!seen.insert(term(s.list[i], env)).second) return false;
      }
      return true;
    }
    if (op == "leq") return m.leq(term(s.list.at(1), env), term(s.list.at(2), env));
    if (op == "forall" || op == "exists") {
      const std::string var = s.list.at(1).list.at(0).list.at(0).atom;
      for (std::size_t w = 0; w < m.size(); ++w) {
        env[var] = w;
        const bool v = eval(s.list.at(2), env);
        if (op == "forall" && !v) return false;
        if (op == "exists" && v) return true;
      }
      return op == "forall";
    }
    if (auto it = preds.find(op); it != preds.end()) return m.valuation(it->second).test(term(s.list.at(1), env));
    throw std::runtime_error("unknown operator " + op);
  }
};

}  // namespace

TEST(Emit, GroundedSmtRoundTripsThroughAnIndependentReader) {
  Rng rng(167);
  for (int i = 0; i < 60; ++i) {
    const KripkeModel m = random_model(2, Signature{"p", "q"}, 0.5, rng.next());
    const std::size_t w = rng.below(m.size());
    const Formula f = random_formula(Signature{"p", "q"}, 3, rng);
    const std::string text = emit(make_grounded_problem(m, m.world(w), f), FOFormat::smtlib2);

    SmtModel sm{m, {}, {}};
    for (std::size_t v = 0; v < m.size(); ++v) sm.constants[constant_name(m.world(v))] = v;
    for (const auto& l : m.signature()) sm.preds[predicate_name(l)] = l;

    std::vector<const Sexp*> asserts;
    const auto forms = SexpReader(text).all();
    std::size_t consts = 0;
    for (const auto& s : forms) {
      if (s.list.empty()) continue;
      if (s.list[0].atom == "declare-const") ++consts;
      if (s.list[0].atom == "assert") asserts.push_back(&s.list.at(1));
    }
    ASSERT_EQ(consts, m.size());
    ASSERT_FALSE(asserts.empty());
    // every axiom holds in the intended model; the final assertion is the negated goal
    for (std::size_t k = 0; k + 1 < asserts.size(); ++k) ASSERT_TRUE(sm.eval(*asserts[k], {})) << text;
    EXPECT_EQ(sm.eval(*asserts.back(), {}), !satisfies(m, w, f)) << render(f) << "\n" << text;
  }
}

TEST(GroundedProblem, GoalAgreesWithTheChecker) {
  Rng rng(173);
  for (int i = 0; i < 50; ++i) {
    const KripkeModel m = random_model(1 + rng.below(4), Signature{"p"}, 0.5, rng.next());
    const std::size_t w = rng.below(m.size());
    const Formula f = random_formula(Signature{"p"}, 3, rng);
    const FOProblem p = make_grounded_problem(m, m.world(w), f);
    EXPECT_EQ(p.constants, m.worlds());
    EXPECT_TRUE(p.goal.free_vars().empty());
    EXPECT_EQ(eval_fo(m, p.goal), satisfies(m, w, f));
    for (const auto& [name, ax] : p.axioms) EXPECT_TRUE(eval_fo(m, ax)) << name;
  }
  auto c = test::chain2();
  EXPECT_THROW(make_grounded_problem(*c, "zz", parse("p")), UnknownWorld);
}
