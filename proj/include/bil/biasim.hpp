#ifndef BIL_BIASIM_HPP
#define BIL_BIASIM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bil/formula.hpp"
#include "bil/kripke.hpp"

namespace bil {

enum class Side : std::uint8_t { one_to_two, two_to_one };

const char* to_string(Side s);
inline Side flip(Side s) { return s == Side::one_to_two ? Side::two_to_one : Side::one_to_two; }

struct DirectedPair {
  Side side;
  std::size_t from;
  std::size_t to;

  friend auto operator<=>(const DirectedPair&, const DirectedPair&) = default;
};

// Relation between the worlds of two models, split by direction.  A pair on
// side one_to_two goes from a world of the left model to one of the right.
class Asim {
 public:
  Asim(std::shared_ptr<const KripkeModel> left, std::shared_ptr<const KripkeModel> right);

  const KripkeModel& left() const noexcept { return *left_; }
  const KripkeModel& right() const noexcept { return *right_; }
  const std::shared_ptr<const KripkeModel>& left_ptr() const noexcept { return left_; }
  const std::shared_ptr<const KripkeModel>& right_ptr() const noexcept { return right_; }
  // Model holding the source worlds of pairs on side s.
  const KripkeModel& source(Side s) const noexcept { return s == Side::one_to_two ? *left_ : *right_; }
  const KripkeModel& target(Side s) const noexcept { return s == Side::one_to_two ? *right_ : *left_; }

  bool contains(Side s, std::size_t from, std::size_t to) const { return row(s, from).test(to); }
  bool contains(const DirectedPair& p) const { return contains(p.side, p.from, p.to); }
  void insert(Side s, std::size_t from, std::size_t to);
  void erase(Side s, std::size_t from, std::size_t to);
  const WorldSet& row(Side s, std::size_t from) const {
    return s == Side::one_to_two ? r12_.at(from) : r21_.at(from);
  }

  std::size_t size() const;
  // Sorted by side, then source, then target.
  std::vector<DirectedPair> pairs() const;

  Asim united(const Asim& other) const;

  friend bool operator==(const Asim& a, const Asim& b) { return a.r12_ == b.r12_ && a.r21_ == b.r21_; }

 private:
  std::shared_ptr<const KripkeModel> left_, right_;
  std::vector<WorldSet> r12_, r21_;
};

// One entry per pair removed during refinement.
struct Removal {
  DirectedPair pair;
  ViolationKind condition;  // s_atom, s_back or s_forth
  std::size_t round;        // 0 for the atom filter
  std::string letter;       // s_atom only
  // s_back: successor t of the target; s_forth: predecessor u of the source
  std::optional<std::size_t> witness;
  // pairs whose absence left the witness unmatched (all removed earlier)
  std::vector<DirectedPair> causes;
};

struct Refinement {
  Asim survivors;
  std::vector<Removal> trace;
  std::size_t rounds = 0;

  // Index into trace, or nullopt for a surviving pair.
  std::optional<std::size_t> removal_of(const DirectedPair& p) const;

  std::vector<std::optional<std::size_t>> index;  // side * n1 * n2 layout
};

enum class ScanOrder { lexicographic, shuffled };

// Greatest relation satisfying the atom, back and forth conditions (the point
// condition is not imposed).  Lexicographic order removes in Jacobi rounds;
// shuffled order removes one pair at a time in a seeded random sequence and
// yields the same survivors with a different trace.
Refinement refine(std::shared_ptr<const KripkeModel> m1, std::shared_ptr<const KripkeModel> m2,
                  ScanOrder order = ScanOrder::lexicographic, std::uint64_t seed = 0);

// The greatest bi-asimulation from `from` to `to`, or nullopt when the point
// pair does not survive.  Throws InvalidArgument on differing signatures.
std::optional<Asim> greatest_biasim(const PointedModel& from, const PointedModel& to);

// Lists every violated condition.  Throws InvalidArgument when a's models are
// not those of from and to.
ValidationReport check_biasim(const Asim& a, const PointedModel& from, const PointedModel& to);

// Atom, back and forth conditions for the selected pairs of a only.
ValidationReport check_pairs(const Asim& a, const std::function<bool(const DirectedPair&)>& selected);

// Pairs (u, s) in either direction whose positive theories at rank <= max_rank
// are included, with no fixpoint applied.
Asim canonical_relation(std::shared_ptr<const KripkeModel> m1, std::shared_ptr<const KripkeModel> m2,
                        const Signature& sig, int max_rank);

// A formula true at `from` and false at `to`, or nullopt when a bi-asimulation
// exists.  With minimize, conjuncts and disjuncts are dropped greedily while
// the formula still separates.
std::optional<Formula> separating_formula(const PointedModel& from, const PointedModel& to, bool minimize = false);

std::string asim_to_json(const Asim& a);

}  // namespace bil

#endif  // BIL_BIASIM_HPP
