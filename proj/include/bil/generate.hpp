#ifndef BIL_GENERATE_HPP
#define BIL_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bil/formula.hpp"
#include "bil/kripke.hpp"

namespace bil {

// Seeded source for the generators below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  // uniform in [0, n)
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
  double unit() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 g_;
};

// Stable per-case seed from a run seed, a tag and an index.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag, std::uint64_t i);

// Random formula over sig with rank <= max_rank.  Depth is bounded by
// max_rank + extra_depth.
Formula random_formula(const Signature& sig, int max_rank, Rng& rng, int extra_depth = 2);

// m with every world renamed to prefix + old id.
KripkeModel relabel(const KripkeModel& m, const std::string& prefix);

// Every path of worlds with adjacent entries distinct and comparable, with
// 1..max_len entries, in lexicographic index order.
std::vector<std::vector<std::string>> zigzag_paths(const KripkeModel& m, std::size_t max_len);

}  // namespace bil

#endif  // BIL_GENERATE_HPP
