#include "bil/generate.hpp"

#include <functional>

#include "bil/error.hpp"

namespace bil {

std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag, std::uint64_t i) {
  // splitmix64 over the inputs
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (unsigned char c : tag) h = mix(h ^ c);
  return mix(h ^ i);
}

Formula random_formula(const Signature& sig, int max_rank, Rng& rng, int extra_depth) {
  std::function<Formula(int, int)> gen = [&](int rank, int depth) -> Formula {
    if (depth == 0 || rng.chance(0.3)) {
      if (sig.size() == 0 || rng.chance(0.15)) return rng.chance(0.5) || rank == 0 ? Formula::bottom() : Formula::top();
      return Formula::atom(sig.letters()[rng.below(sig.size())]);
    }
    const std::size_t pick = rng.below(rank > 0 ? 4 : 2);
    switch (pick) {
      case 0:
        return Formula::conj(gen(rank, depth - 1), gen(rank, depth - 1));
      case 1:
        return Formula::disj(gen(rank, depth - 1), gen(rank, depth - 1));
      case 2:
        return Formula::impl(gen(rank - 1, depth - 1), gen(rank - 1, depth - 1));
      default:
        return Formula::coimpl(gen(rank - 1, depth - 1), gen(rank - 1, depth - 1));
    }
  };
  return gen(max_rank, max_rank + extra_depth);
}

KripkeModel relabel(const KripkeModel& m, const std::string& prefix) {
  RawModel raw = m.to_raw();
  for (auto& w : raw.worlds) w = prefix + w;
  for (auto& [a, b] : raw.order) {
    a = prefix + a;
    b = prefix + b;
  }
  for (auto& [l, ws] : raw.valuation) {
    for (auto& w : ws) w = prefix + w;
  }
  return normalize_or_throw(raw, NormalizeMode::strict);
}

std::vector<std::vector<std::string>> zigzag_paths(const KripkeModel& m, std::size_t max_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> cur;
  std::function<void()> grow = [&] {
    std::vector<std::string> p;
    for (auto i : cur) p.push_back(m.world(i));
    out.push_back(std::move(p));
    if (cur.size() >= max_len) return;
    const std::size_t e = cur.back();
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (x == e || !(m.leq(e, x) || m.leq(x, e))) continue;
      cur.push_back(x);
      grow();
      cur.pop_back();
    }
  };
  for (std::size_t s = 0; s < m.size(); ++s) {
    cur = {s};
    grow();
  }
  return out;
}

}  // namespace bil
