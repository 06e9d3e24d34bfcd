#ifndef BIL_SEMANTICS_HPP
#define BIL_SEMANTICS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bil/formula.hpp"
#include "bil/kripke.hpp"
#include "bil/world_set.hpp"

namespace bil {

// Set of worlds of m where f holds.  Throws UnknownLetter.
WorldSet truth_set(const KripkeModel& m, const Formula& f);

bool satisfies(const KripkeModel& m, std::size_t w, const Formula& f);
bool satisfies(const KripkeModel& m, const std::string& w, const Formula& f);
bool satisfies(const PointedModel& pm, const Formula& f);

// Truth-set cache bound to one model, for evaluating many formulas that
// share subformulas.  Not thread-safe; use one per thread.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(m) {}

  const WorldSet& truth(const Formula& f);
  bool holds(std::size_t w, const Formula& f) { return truth(f).test(w); }
  const KripkeModel& model() const noexcept { return m_; }

 private:
  const KripkeModel& m_;
  // keeps the formula alive so the node address stays unique
  std::unordered_map<const void*, std::pair<Formula, WorldSet>> memo_;
};

enum class Direction { successor, predecessor };

struct TypeQuery {
  std::vector<Formula> gamma;
  std::vector<Formula> delta;
  Direction direction = Direction::successor;
};

// The three finite characterizations of a type, reported separately.
struct TypeVerdicts {
  bool all_subsets = false;    // every finite part witnessed in the cone
  bool single_witness = false;  // one cone world satisfies gamma and refutes delta
  bool formula_test = false;    // w |/= /\G -> \/D  resp.  w |= /\G -< \/D
};

TypeVerdicts type_verdicts(const KripkeModel& m, std::size_t w, const TypeQuery& q);

// Throws InternalError when the characterizations disagree.
bool is_type(const PointedModel& pm, const TypeQuery& q);

// Least world in the successor (resp. predecessor) cone of w satisfying every
// member of gamma and refuting every member of delta.
std::optional<std::size_t> realize(const KripkeModel& m, std::size_t w, const TypeQuery& q);

// The formula whose truth (successor: falsity) at w characterizes q.
Formula type_formula(const TypeQuery& q);

// Rank-bounded theory: representatives of the truth classes of all formulas
// of rank <= rank_bound over signature, split by truth at the point.
struct Theory {
  std::vector<Formula> positive;
  std::vector<Formula> negative;
  int rank_bound = 0;
  Signature signature;
};

Theory theory(const PointedModel& pm, const Signature& sig, int max_rank,
              const std::vector<PointedModel>& context = {});

struct Inclusion {
  bool included = true;
  // true at a, false at b
  std::optional<Formula> counterexample;
};

// Positive rank-bounded theory of a included in that of b.
Inclusion theory_included(const PointedModel& a, const PointedModel& b, const Signature& sig, int max_rank);

}  // namespace bil

#endif  // BIL_SEMANTICS_HPP
