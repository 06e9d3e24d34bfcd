#include "bil/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>
#include <unordered_set>

#include "bil/error.hpp"

namespace bil {

Universe::Universe(const std::vector<std::shared_ptr<const KripkeModel>>& models, const Signature& sig) : sig_(sig) {
  for (const auto& m : models) {
    if (!m) throw InvalidArgument("null model in universe");
    if (std::find(models_.begin(), models_.end(), m.get()) != models_.end()) continue;
    for (const auto& l : sig) {
      if (!m->signature().contains(l)) throw UnknownLetter(l);
    }
    offsets_.push_back(n_);
    models_.push_back(m.get());
    n_ += m->size();
  }
  if (n_ == 0) throw InvalidArgument("empty universe");
  words_ = (n_ + 63) / 64;
  up_.assign(n_ * words_, 0);
  down_.assign(n_ * words_, 0);
  letters_.assign(sig.size() * words_, 0);
  auto set = [&](std::vector<std::uint64_t>& v, std::size_t row, std::size_t g) {
    v[row * words_ + (g >> 6)] |= std::uint64_t{1} << (g & 63);
  };
  for (std::size_t k = 0; k < models_.size(); ++k) {
    const KripkeModel& m = *models_[k];
    const std::size_t off = offsets_[k];
    for (std::size_t i = 0; i < m.size(); ++i) {
      m.up(i).for_each([&](std::size_t j) { set(up_, off + i, off + j); });
      m.down(i).for_each([&](std::size_t j) { set(down_, off + i, off + j); });
    }
    for (std::size_t l = 0; l < sig.size(); ++l) {
      m.valuation(sig.letters()[l]).for_each([&](std::size_t i) { set(letters_, l, off + i); });
    }
  }
}

std::size_t Universe::global(const KripkeModel& m, std::size_t w) const {
  for (std::size_t k = 0; k < models_.size(); ++k) {
    if (models_[k] == &m) return offsets_[k] + w;
  }
  throw InvalidArgument("model is not part of the universe");
}

namespace {

struct SpanHash {
  const std::vector<std::uint64_t>* store;
  std::size_t words;
  std::size_t operator()(std::size_t idx) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < words; ++i) {
      h ^= (*store)[idx * words + i];
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

struct SpanEq {
  const std::vector<std::uint64_t>* store;
  std::size_t words;
  bool operator()(std::size_t a, std::size_t b) const noexcept {
    return std::equal(store->begin() + static_cast<std::ptrdiff_t>(a * words),
                      store->begin() + static_cast<std::ptrdiff_t>((a + 1) * words),
                      store->begin() + static_cast<std::ptrdiff_t>(b * words));
  }
};

// Interning store for bitmasks: slot 0..k-1 hold entries, the last slot is
// scratch space for lookups.
class MaskSet {
 public:
  explicit MaskSet(std::size_t words)
      : words_(words), set_(64, SpanHash{&store_, words}, SpanEq{&store_, words}) {
    store_.assign(words, 0);  // scratch
  }

  std::uint64_t* scratch() { return &store_[count_ * words_]; }

  // Inserts the scratch mask; returns its index and whether it is new.
  std::pair<std::size_t, bool> commit() {
    auto it = set_.find(count_);
    if (it != set_.end()) return {*it, false};
    set_.insert(count_);
    ++count_;
    store_.resize((count_ + 1) * words_, 0);
    std::fill_n(&store_[count_ * words_], words_, 0);
    return {count_ - 1, true};
  }

  const std::uint64_t* at(std::size_t i) const { return &store_[i * words_]; }
  std::size_t size() const noexcept { return count_; }

 private:
  std::size_t words_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> store_;
  std::unordered_set<std::size_t, SpanHash, SpanEq> set_;
};

}  // namespace

ClassTable enumerate_classes(const Universe& u, int max_rank, EnumLimits limits) {
  if (max_rank < 0) throw InvalidArgument("negative rank");
  const std::size_t W = u.words();
  const std::size_t n = u.size();
  MaskSet classes(W);
  MaskSet diffs(W);  // A \ B masks already expanded
  std::vector<Formula> reps;

  auto try_add = [&](const Formula& f) {
    auto [idx, fresh] = classes.commit();
    if (fresh) {
      reps.push_back(f);
      if (reps.size() > limits.max_classes) {
        throw BudgetExceeded("more than " + std::to_string(limits.max_classes) + " truth classes at rank " +
                             std::to_string(f.rank()));
      }
    }
    return fresh;
  };

  // closes classes[from..] under & and | against everything before them
  auto close_lattice = [&](std::size_t from) {
    for (std::size_t i = from; i < classes.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::uint64_t* s = classes.scratch();
        const std::uint64_t* a = classes.at(j);
        const std::uint64_t* b = classes.at(i);
        for (std::size_t k = 0; k < W; ++k) s[k] = a[k] & b[k];
        try_add(Formula::conj(reps[j], reps[i]));
        s = classes.scratch();
        a = classes.at(j);
        b = classes.at(i);
        for (std::size_t k = 0; k < W; ++k) s[k] = a[k] | b[k];
        try_add(Formula::disj(reps[j], reps[i]));
      }
    }
  };

  // rank 0
  try_add(Formula::bottom());
  for (std::size_t l = 0; l < u.signature().size(); ++l) {
    std::copy_n(u.letter(l), W, classes.scratch());
    try_add(Formula::atom(u.signature().letters()[l]));
  }
  close_lattice(0);

  ClassTable t;
  t.saturated_at_ = 0;
  std::size_t prev_start = 0;  // first class discovered at the previous level
  for (int r = 1; r <= max_rank; ++r) {
    const std::size_t old_end = classes.size();
    for (std::size_t b = 0; b < old_end; ++b) {
      for (std::size_t a = 0; a < old_end; ++a) {
        if (a < prev_start && b < prev_start) continue;
        std::uint64_t* d = diffs.scratch();
        const std::uint64_t* am = classes.at(a);
        const std::uint64_t* bm = classes.at(b);
        for (std::size_t k = 0; k < W; ++k) d[k] = am[k] & ~bm[k];
        auto [di, fresh] = diffs.commit();
        if (!fresh) continue;
        const std::uint64_t* dm = diffs.at(di);
        // a -> b holds where no successor is in d; a -< b where some predecessor is
        std::uint64_t* s = classes.scratch();
        std::fill_n(s, W, 0);
        for (std::size_t g = 0; g < n; ++g) {
          const std::uint64_t* up = u.up(g);
          bool hit = false;
          for (std::size_t k = 0; k < W && !hit; ++k) hit = (up[k] & dm[k]) != 0;
          if (!hit) s[g >> 6] |= std::uint64_t{1} << (g & 63);
        }
        try_add(Formula::impl(reps[a], reps[b]));
        s = classes.scratch();
        std::fill_n(s, W, 0);
        for (std::size_t g = 0; g < n; ++g) {
          const std::uint64_t* down = u.down(g);
          bool hit = false;
          for (std::size_t k = 0; k < W && !hit; ++k) hit = (down[k] & dm[k]) != 0;
          if (hit) s[g >> 6] |= std::uint64_t{1} << (g & 63);
        }
        try_add(Formula::coimpl(reps[a], reps[b]));
      }
    }
    close_lattice(old_end);
    if (classes.size() == old_end) {
      t.saturated_ = true;
      break;
    }
    t.saturated_at_ = r;
    prev_start = old_end;
  }
  t.words_ = W;
  t.reps_ = std::move(reps);
  t.bits_.assign(classes.at(0), classes.at(0) + classes.size() * W);
  return t;
}

std::vector<Formula> enumerate_formulas(const Signature& sig, int max_rank, const std::vector<PointedModel>& context,
                                        EnumLimits limits) {
  if (context.empty()) throw InvalidArgument("enumeration needs a non-empty context");
  std::vector<std::shared_ptr<const KripkeModel>> ms;
  for (const auto& pm : context) ms.push_back(pm.model);
  Universe u(ms, sig);
  ClassTable t = enumerate_classes(u, max_rank, limits);
  std::vector<std::size_t> points;
  for (const auto& pm : context) points.push_back(u.global(pm));
  std::vector<Formula> out;
  std::unordered_set<std::vector<bool>> seen;
  for (std::size_t c = 0; c < t.size(); ++c) {
    std::vector<bool> vec;
    vec.reserve(points.size());
    for (auto g : points) vec.push_back(t.holds(c, g));
    if (seen.insert(std::move(vec)).second) out.push_back(t.rep(c));
  }
  return out;
}

std::vector<std::size_t> refine_types(const Universe& u, int rank) {
  const std::size_t n = u.size();
  const std::size_t W = u.words();
  std::vector<std::size_t> type(n);
  {
    std::map<std::vector<bool>, std::size_t> ids;
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<bool> lab;
      for (std::size_t l = 0; l < u.signature().size(); ++l) lab.push_back((u.letter(l)[g >> 6] >> (g & 63)) & 1U);
      type[g] = ids.emplace(std::move(lab), ids.size()).first->second;
    }
  }
  auto members = [&](const std::uint64_t* mask, const std::vector<std::size_t>& ty) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t bits = mask[k];
      while (bits) {
        out.push_back(ty[k * 64 + static_cast<std::size_t>(std::countr_zero(bits))]);
        bits &= bits - 1;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  for (int r = 0; r < rank; ++r) {
    using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
    std::map<Key, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t g = 0; g < n; ++g) {
      Key k{type[g], members(u.up(g), type), members(u.down(g), type)};
      next[g] = ids.emplace(std::move(k), ids.size()).first->second;
    }
    const bool stable = ids.size() == *std::max_element(type.begin(), type.end()) + 1;
    type = std::move(next);
    if (stable) break;
  }
  return type;
}

}  // namespace bil
