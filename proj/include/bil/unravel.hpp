#ifndef BIL_UNRAVEL_HPP
#define BIL_UNRAVEL_HPP

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bil/biasim.hpp"
#include "bil/formula.hpp"
#include "bil/kripke.hpp"
#include "bil/semantics.hpp"

namespace bil {

// A node is a chain of base worlds starting at the root in which adjacent
// worlds are distinct and comparable.  Stored as base world indices.
using Chain = std::vector<std::size_t>;

struct UnravelLimits {
  std::size_t max_nodes = 200000;
};

// Truncated unravelling: every chain of length <= maxlen.  Nodes are ordered
// by length, then lexicographically; the model's worlds are the chains
// written as "/"-joined base ids.
class UnravelModel {
 public:
  const KripkeModel& base() const noexcept { return *base_; }
  const std::shared_ptr<const KripkeModel>& base_ptr() const noexcept { return base_; }
  std::size_t root() const noexcept { return root_; }
  std::size_t maxlen() const noexcept { return maxlen_; }

  const std::vector<Chain>& nodes() const noexcept { return nodes_; }
  // (from, to) node indices: extend-up edges s -> s+x, retract-down edges s+x -> s.
  const std::vector<std::pair<std::size_t, std::size_t>>& rho() const noexcept { return rho_; }
  const KripkeModel& model() const noexcept { return *model_; }
  const std::shared_ptr<const KripkeModel>& model_ptr() const noexcept { return model_; }

  std::string node_id(std::size_t node) const;
  std::optional<std::size_t> find(const Chain& c) const;
  // Index of a node's world in model(), and back.
  std::size_t world_of(std::size_t node) const { return world_of_.at(node); }
  std::size_t node_of(std::size_t world) const { return node_of_.at(world); }
  std::size_t end(std::size_t node) const { return nodes_.at(node).back(); }
  // node <= other in the unravelled order
  bool leq(std::size_t node, std::size_t other) const { return model_->leq(world_of(node), world_of(other)); }

 private:
  friend UnravelModel unravel(std::shared_ptr<const KripkeModel>, std::size_t, std::size_t, UnravelLimits);
  std::shared_ptr<const KripkeModel> base_;
  std::size_t root_ = 0;
  std::size_t maxlen_ = 0;
  std::vector<Chain> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> rho_;
  std::shared_ptr<const KripkeModel> model_;
  std::vector<std::size_t> world_of_, node_of_;
};

// Throws InvalidArgument for maxlen 0 or a world id containing '/', and
// BudgetExceeded past the node cap.  Throws InternalError if the closure is
// not a partial order.
UnravelModel unravel(std::shared_ptr<const KripkeModel> m, std::size_t root, std::size_t maxlen,
                     UnravelLimits limits = {});

struct Factorization {
  Chain prefix;  // longest common prefix
  Chain down;    // strictly descending below the end of prefix
  Chain up;      // strictly ascending above it
};

// Throws InvalidArgument unless alpha <= beta.  Also throws InternalError if
// the suffixes are not a descending and an ascending chain.
Factorization zigzag_factor(const UnravelModel& u, std::size_t alpha, std::size_t beta);

// Checks that every path of pairwise distinct nodes along rho edges with at
// most max_len nodes first retracts and then extends.  Returns the offending
// paths (empty when all conform).
std::vector<std::vector<std::size_t>> valley_violations(const UnravelModel& u, std::size_t max_len);

enum class Guard {
  length_plus_rank,    // length + rank <= maxlen
  length_plus_height,  // length + rank * max(height, 1) <= maxlen
};

struct TheoryMismatch {
  std::size_t node;
  int rank;
  // Part 2: node vs its end world; Part 3: node vs another node with the same end
  bool versus_base = true;
  std::optional<std::size_t> other_node;
  std::optional<Formula> witness;  // when the enumeration oracle could find one
};

struct TheoryCheckReport {
  std::size_t checked = 0;  // (node, rank) cells inside the guard
  std::vector<TheoryMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// For each rank 0..max_rank and each node inside the guard, compares the node's
// rank-bounded theory with that of its end world in the base model, and the
// theories of guarded nodes sharing an end world.
TheoryCheckReport b_theory_check(const UnravelModel& u, int max_rank, Guard guard = Guard::length_plus_rank);
TheoryCheckReport b_theory_check(std::shared_ptr<const KripkeModel> m, std::size_t root, std::size_t maxlen,
                                 int max_rank, Guard guard = Guard::length_plus_rank);

// Longest strictly ascending chain in m, counted in steps.
std::size_t height(const KripkeModel& m);

// The relation linking each chain with its end world, both directions; the
// unravelled model is the left one.
Asim unravel_b_relation(const UnravelModel& u);

// Violations of the bi-asimulation conditions for pairs whose chain is
// shorter than maxlen (boundary chains lack their extensions).
ValidationReport check_b_relation_interior(const UnravelModel& u);

// --- bracket models -------------------------------------------------------

std::string bracket_letter(bool plus, const std::string& world);

// Adds q+<w> true on the up-cone of w and q-<w> false exactly on the
// down-cone of w, for every world.  Throws InvalidArgument on a name clash.
KripkeModel bracket(const KripkeModel& m);

// --- schemas --------------------------------------------------------------

enum class Family { phi, psi, theta, tau };
enum class Sign { plus, minus };

const char* to_string(Family f);
inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct SchemaWrap {
  bool backward;        // -< instead of ->
  bool letter_on_left;  // q+ op X  rather than  X op q-
  std::string letter;
};

struct Schema {
  Family family;
  Sign sign;
  // innermost first, applied around the basis
  std::vector<SchemaWrap> wraps;

  Formula instantiate(const Formula& alpha, const Formula& beta) const;
};

struct SchemaSet {
  std::vector<std::string> path;
  std::size_t k;  // 1-based
  std::array<Schema, 4> schemas;  // phi, psi, theta, tau

  const Schema& get(Family f) const { return schemas[static_cast<std::size_t>(f)]; }
};

// Path worlds must be in m with adjacent entries distinct and comparable.
// Bracket letters are named after the path worlds; m itself need not contain
// them.  Throws InvalidArgument for a bad path or k outside 1..n.
SchemaSet schemas(const KripkeModel& m, const std::vector<std::string>& path, std::size_t k);

struct SchemaVerdict {
  Family family;
  bool condition;  // instance holds (sign +) or fails (sign -) at path[k]
  bool target;     // the matching statement about alpha, beta at path[n]
  bool agrees() const { return condition == target; }
};

std::array<SchemaVerdict, 4> schema_verdicts(const KripkeModel& bm, const std::vector<std::string>& path,
                                             std::size_t k, const Formula& alpha, const Formula& beta);
bool verify_schema(const KripkeModel& bm, const std::vector<std::string>& path, std::size_t k,
                   const Formula& alpha, const Formula& beta);

struct FragmentItem {
  Formula formula;
  Sign sign;
  bool holds;  // satisfied at the root iff sign is +
};

struct TypeExpansion {
  PointedModel model;   // bracket(m) plus the fresh pair, pointed at path[0]
  std::size_t witness;  // world realizing the type
  std::vector<FragmentItem> fragment;
  bool verified() const;
};

// Realizes a finite type of (m, v) and expands bracket(m) by the fresh pair,
// read as the bracket letters of the witness.  The path runs from the root
// to v and defaults to {v}.  Returns nullopt when q is not a type of (m, v).
std::optional<TypeExpansion> realize_finite_type_expansion(const KripkeModel& m, const std::string& v,
                                                          const TypeQuery& q,
                                                          const std::pair<std::string, std::string>& fresh,
                                                          std::vector<std::string> path = {});

}  // namespace bil

#endif  // BIL_UNRAVEL_HPP
