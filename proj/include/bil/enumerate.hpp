#ifndef BIL_ENUMERATE_HPP
#define BIL_ENUMERATE_HPP

// Brute-force oracle: all truth classes of BIL(sig) formulas up to a rank,
// relative to a fixed finite collection of models.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "bil/formula.hpp"
#include "bil/kripke.hpp"

namespace bil {

// Disjoint union of finitely many models with a common letter set.  Worlds
// are numbered model by model.
class Universe {
 public:
  // Models are deduplicated by identity.  Throws UnknownLetter when some
  // model lacks a letter of sig.
  Universe(const std::vector<std::shared_ptr<const KripkeModel>>& models, const Signature& sig);

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  const Signature& signature() const noexcept { return sig_; }

  // Global index of world w of the given model (which must be a member).
  std::size_t global(const KripkeModel& m, std::size_t w) const;
  std::size_t global(const PointedModel& pm) const { return global(pm.m(), pm.point); }

  // Bitmasks of `words()` words each.
  const std::uint64_t* up(std::size_t g) const { return &up_[g * words_]; }
  const std::uint64_t* down(std::size_t g) const { return &down_[g * words_]; }
  const std::uint64_t* letter(std::size_t l) const { return &letters_[l * words_]; }

  const std::vector<const KripkeModel*>& models() const noexcept { return models_; }
  std::size_t offset(std::size_t model_index) const { return offsets_[model_index]; }

 private:
  std::vector<const KripkeModel*> models_;
  std::vector<std::size_t> offsets_;
  Signature sig_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_, down_, letters_;
};

struct EnumLimits {
  std::size_t max_classes = 20000;
};

// Truth classes over a universe, each with a representative formula.  Class
// order is discovery order: by rank, then by construction order.
class ClassTable {
 public:
  std::size_t size() const noexcept { return reps_.size(); }
  const Formula& rep(std::size_t c) const { return reps_[c]; }
  bool holds(std::size_t c, std::size_t g) const { return (bits_[c * words_ + (g >> 6)] >> (g & 63)) & 1U; }
  // Highest rank for which new classes were still being discovered; equal to
  // the requested rank unless the table saturated earlier.
  int saturated_at() const noexcept { return saturated_at_; }
  bool saturated() const noexcept { return saturated_; }

 private:
  friend ClassTable enumerate_classes(const Universe&, int, EnumLimits);
  std::size_t words_ = 0;
  std::vector<Formula> reps_;
  std::vector<std::uint64_t> bits_;
  int saturated_at_ = 0;
  bool saturated_ = false;
};

// Throws BudgetExceeded when the class count passes the cap.
ClassTable enumerate_classes(const Universe& u, int max_rank, EnumLimits limits = {});

// One representative per distinct truth vector at the context points.
std::vector<Formula> enumerate_formulas(const Signature& sig, int max_rank, const std::vector<PointedModel>& context,
                                        EnumLimits limits = {});

// Rank-bounded types by partition refinement: two worlds of the universe get
// the same id iff they agree on every formula of rank <= rank.
std::vector<std::size_t> refine_types(const Universe& u, int rank);

}  // namespace bil

#endif  // BIL_ENUMERATE_HPP
