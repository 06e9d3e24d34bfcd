#ifndef BIL_FOL_HPP
#define BIL_FOL_HPP

#include <map>
#include <optional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bil/formula.hpp"
#include "bil/kripke.hpp"

namespace bil {

// A variable, or a world constant (used by the grounded encoding).
struct Term {
  bool constant = false;
  std::string name;  // variable name or world id

  static Term var(std::string n) { return {false, std::move(n)}; }
  static Term world(std::string id) { return {true, std::move(id)}; }
  friend bool operator==(const Term&, const Term&) = default;
};

enum class FOKind { falsum, pred, leq, eq, neg, conj, disj, impl, forall, exists };

class FOFormula {
 public:
  static FOFormula falsum();
  static FOFormula pred(std::string letter, Term t);
  static FOFormula leq(Term a, Term b);
  static FOFormula eq(Term a, Term b);
  static FOFormula neg(FOFormula f);
  static FOFormula conj(FOFormula a, FOFormula b);
  static FOFormula disj(FOFormula a, FOFormula b);
  static FOFormula impl(FOFormula a, FOFormula b);
  static FOFormula forall(std::string var, FOFormula body);
  static FOFormula exists(std::string var, FOFormula body);

  FOKind kind() const noexcept { return node_->kind; }
  const std::string& letter() const noexcept { return node_->letter; }  // pred
  const Term& a() const noexcept { return node_->a; }                   // pred, leq, eq
  const Term& b() const noexcept { return node_->b; }                   // leq, eq
  const std::string& var() const noexcept { return node_->var; }        // quantifiers
  const FOFormula& lhs() const { return *node_->lhs; }  // neg, binary, quantifier body
  const FOFormula& rhs() const { return *node_->rhs; }

  std::set<std::string> free_vars() const;

  friend bool operator==(const FOFormula& x, const FOFormula& y);

 private:
  struct Node {
    FOKind kind;
    std::string letter;
    Term a, b;
    std::string var;
    std::shared_ptr<const FOFormula> lhs, rhs;
  };
  static FOFormula binary(FOKind k, FOFormula a, FOFormula b);
  explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Standard translation at term x.  Quantified variables are y1, y2, ... by
// nesting depth, skipping the name of x.
FOFormula translate(const Formula& f, const Term& x);
inline FOFormula translate(const Formula& f, const std::string& x) { return translate(f, Term::var(x)); }

// Classical evaluation on the frame of m, with <= read as the model order.
// Throws InvalidArgument for an unbound variable and UnknownLetter /
// UnknownWorld for names outside m.
bool eval_fo(const KripkeModel& m, const FOFormula& g, const std::map<std::string, std::size_t>& env = {});

std::string to_string(const FOFormula& f);

struct FOProblem {
  std::vector<std::string> predicates;  // letters, in signature order
  std::vector<std::string> constants;   // world ids; grounded problems only
  std::vector<std::pair<std::string, FOFormula>> axioms;
  FOFormula goal;  // closed
  std::vector<std::string> variables;
};

// Frame axioms for sig plus the goal "f holds at every world".
FOProblem make_problem(const Formula& f, const Signature& sig);

// Finite-domain encoding of m (distinct constants, domain closure, full
// diagram of <= and the letters) with the goal "f holds at w".
FOProblem make_grounded_problem(const KripkeModel& m, const std::string& w, const Formula& f);

enum class FOFormat { tptp, smtlib2 };

// Name of letter p in emitted text: p_ followed by the letter with '_' -> '__',
// '+' -> '_p', '-' -> '_m'.
std::string predicate_name(const std::string& letter);
// w_ followed by the id with '_' -> '__' and other non-alphanumerics as _xHH.
std::string constant_name(const std::string& world);

// TPTP: axioms as fof axioms and the goal as conjecture.  SMT-LIB2: axioms
// asserted and the goal negated, so unsat means the goal follows.
std::string emit(const FOProblem& p, FOFormat fmt);

}  // namespace bil

#endif  // BIL_FOL_HPP
