#ifndef BIL_KRIPKE_HPP
#define BIL_KRIPKE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bil/formula.hpp"
#include "bil/world_set.hpp"

namespace bil {

// A model as written by a human: order pairs are generators, not the full
// relation.
struct RawModel {
  std::vector<std::string> signature;
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::string, std::vector<std::string>> valuation;
  std::optional<std::string> point;
};

enum class ViolationKind {
  reflexivity,
  transitivity,
  antisymmetry,
  monotonicity,
  dangling_reference,
  malformed,
  // bi-asimulation conditions
  w_type,
  elem,
  s_atom,
  s_back,
  s_forth,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> worlds;
  std::string letter;
  std::string detail;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind k) const;
  std::string describe() const;
};

// Finite poset of worlds with a monotone valuation.  Worlds are kept sorted
// by id so that index order is the lexicographic order used for every
// deterministic choice.
class KripkeModel {
 public:
  // Builds a model from an already closed relation: up[i] is the set of j
  // with i <= j.  Throws InvalidArgument when the result is not a partial
  // order with a monotone valuation keyed exactly by sig.
  static KripkeModel from_closed(Signature sig, std::vector<std::string> worlds,
                                 std::vector<WorldSet> up,
                                 std::map<std::string, WorldSet> valuation);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::string& world(std::size_t i) const { return worlds_.at(i); }
  // Throws UnknownWorld.
  std::size_t index(const std::string& world) const;
  std::optional<std::size_t> find(const std::string& world) const;

  const Signature& signature() const noexcept { return sig_; }

  bool leq(std::size_t i, std::size_t j) const noexcept { return up_[i].test(j); }
  const WorldSet& up(std::size_t i) const noexcept { return up_[i]; }
  const WorldSet& down(std::size_t i) const noexcept { return down_[i]; }
  // Throws UnknownLetter.
  const WorldSet& valuation(const std::string& letter) const;

  // Letters true at world i, as a bitmask over signature positions.
  std::vector<bool> label(std::size_t i) const;

  // Covering pairs (Hasse diagram), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  RawModel to_raw(std::optional<std::size_t> point = std::nullopt) const;

  friend bool operator==(const KripkeModel& a, const KripkeModel& b);

 private:
  KripkeModel() = default;

  Signature sig_;
  std::vector<std::string> worlds_;
  std::unordered_map<std::string, std::size_t> world_index_;
  std::vector<WorldSet> up_;
  std::vector<WorldSet> down_;
  std::unordered_map<std::string, WorldSet> val_;
};

struct PointedModel {
  std::shared_ptr<const KripkeModel> model;
  std::size_t point = 0;

  PointedModel() = default;
  PointedModel(std::shared_ptr<const KripkeModel> m, std::size_t p);
  PointedModel(std::shared_ptr<const KripkeModel> m, const std::string& world);

  const KripkeModel& m() const { return *model; }
  const std::string& point_name() const { return model->world(point); }
};

PointedModel pointed(KripkeModel m, const std::string& world);

enum class NormalizeMode { strict, close };

// Closes the generating pairs reflexively and transitively.  In close mode
// each V(p) is also closed upward; in strict mode a non-monotone valuation is
// reported.  A cycle through distinct worlds is always reported.
std::variant<KripkeModel, ValidationReport> normalize(const RawModel& raw, NormalizeMode mode);

// As normalize, but throws InvalidArgument carrying the report.
KripkeModel normalize_or_throw(const RawModel& raw, NormalizeMode mode);

// Checks the raw relation as given (no closure): reflexivity, transitivity,
// antisymmetry and monotonicity.
ValidationReport validate(const RawModel& raw);

KripkeModel reduct(const KripkeModel& m, const Signature& sigma);
KripkeModel submodel(const KripkeModel& m, const std::vector<std::string>& worlds);
// True iff a is a submodel of b: worlds included, order and valuation
// restricted from b, same signature.
bool is_submodel(const KripkeModel& a, const KripkeModel& b);
KripkeModel chain_union(const std::vector<KripkeModel>& ms);

// Lexicographically least isomorphism m -> n (compared as the sequence of
// images of m's worlds in order), or nullopt.
std::optional<std::map<std::string, std::string>> isomorphism(const KripkeModel& m,
                                                               const KripkeModel& n);

// Seeded random model; worlds are named w0, w1, ... zero-padded to equal
// width, edges only run from lower to higher index.
KripkeModel random_model(std::size_t n_worlds, const Signature& sig, double density, std::uint64_t seed);

}  // namespace bil

#endif  // BIL_KRIPKE_HPP
