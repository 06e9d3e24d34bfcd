#include "bil/kripke.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "bil/error.hpp"

namespace bil {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::reflexivity: return "reflexivity";
    case ViolationKind::transitivity: return "transitivity";
    case ViolationKind::antisymmetry: return "antisymmetry";
    case ViolationKind::monotonicity: return "monotonicity";
    case ViolationKind::dangling_reference: return "dangling-reference";
    case ViolationKind::malformed: return "malformed";
    case ViolationKind::w_type: return "w-type";
    case ViolationKind::elem: return "elem";
    case ViolationKind::s_atom: return "s-atom";
    case ViolationKind::s_back: return "s-back";
    case ViolationKind::s_forth: return "s-forth";
  }
  return "?";
}

std::string Violation::describe() const {
  std::string s = to_string(kind);
  if (!worlds.empty()) {
    s += " (";
    for (std::size_t i = 0; i < worlds.size(); ++i) {
      if (i) s += ", ";
      s += worlds[i];
    }
    s += ")";
  }
  if (!letter.empty()) s += " letter " + letter;
  if (!detail.empty()) s += ": " + detail;
  return s;
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

std::string ValidationReport::describe() const {
  std::string s;
  for (const auto& v : violations) s += v.describe() + "\n";
  return s;
}

// ---------------------------------------------------------------------------

KripkeModel KripkeModel::from_closed(Signature sig, std::vector<std::string> worlds, std::vector<WorldSet> up,
                                     std::map<std::string, WorldSet> valuation) {
  const std::size_t n = worlds.size();
  if (n == 0) throw InvalidArgument("model without worlds");
  if (up.size() != n) throw InvalidArgument("order rows do not match worlds");
  if (!std::is_sorted(worlds.begin(), worlds.end()) ||
      std::adjacent_find(worlds.begin(), worlds.end()) != worlds.end()) {
    throw InvalidArgument("worlds must be sorted and distinct");
  }
  KripkeModel m;
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].size() != n) throw InvalidArgument("order row of wrong width");
    if (!up[i].test(i)) throw InvalidArgument("order not reflexive at " + worlds[i]);
  }
  m.down_.assign(n, WorldSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    up[i].for_each([&](std::size_t j) {
      if (!up[j].is_subset_of(up[i])) throw InvalidArgument("order not transitive at " + worlds[i]);
      if (j != i && up[j].test(i)) {
        throw InvalidArgument("order not antisymmetric at " + worlds[i] + ", " + worlds[j]);
      }
      m.down_[j].set(i);
    });
  }
  for (const auto& l : sig) {
    auto it = valuation.find(l);
    if (it == valuation.end()) throw InvalidArgument("no valuation for letter " + l);
    if (it->second.size() != n) throw InvalidArgument("valuation of wrong width for " + l);
    it->second.for_each([&](std::size_t i) {
      if (!up[i].is_subset_of(it->second)) throw InvalidArgument("valuation of " + l + " not monotone");
    });
  }
  if (valuation.size() != sig.size()) throw InvalidArgument("valuation keys differ from signature");
  for (std::size_t i = 0; i < n; ++i) m.world_index_.emplace(worlds[i], i);
  m.sig_ = std::move(sig);
  m.worlds_ = std::move(worlds);
  m.up_ = std::move(up);
  for (auto& [l, s] : valuation) m.val_.emplace(l, std::move(s));
  return m;
}

std::size_t KripkeModel::index(const std::string& world) const {
  auto it = world_index_.find(world);
  if (it == world_index_.end()) throw UnknownWorld(world);
  return it->second;
}

std::optional<std::size_t> KripkeModel::find(const std::string& world) const {
  auto it = world_index_.find(world);
  if (it == world_index_.end()) return std::nullopt;
  return it->second;
}

const WorldSet& KripkeModel::valuation(const std::string& letter) const {
  auto it = val_.find(letter);
  if (it == val_.end()) throw UnknownLetter(letter);
  return it->second;
}

std::vector<bool> KripkeModel::label(std::size_t i) const {
  std::vector<bool> out;
  out.reserve(sig_.size());
  for (const auto& l : sig_) out.push_back(val_.at(l).test(i));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeModel::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    up_[i].for_each([&](std::size_t j) {
      if (j == i) return;
      WorldSet between = up_[i] & down_[j];
      if (between.count() == 2) out.emplace_back(i, j);
    });
  }
  return out;
}

RawModel KripkeModel::to_raw(std::optional<std::size_t> point) const {
  RawModel r;
  r.signature = sig_.letters();
  r.worlds = worlds_;
  for (auto [i, j] : covers()) r.order.emplace_back(worlds_[i], worlds_[j]);
  for (const auto& l : sig_) {
    auto& ws = r.valuation[l];
    val_.at(l).for_each([&](std::size_t i) { ws.push_back(worlds_[i]); });
  }
  if (point) r.point = worlds_.at(*point);
  return r;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
  if (a.worlds_ != b.worlds_ || a.up_ != b.up_ || !a.sig_.same_letters(b.sig_)) return false;
  for (const auto& l : a.sig_) {
    if (!(a.val_.at(l) == b.val_.at(l))) return false;
  }
  return true;
}

PointedModel::PointedModel(std::shared_ptr<const KripkeModel> m, std::size_t p) : model(std::move(m)), point(p) {
  if (!model || point >= model->size()) throw InvalidArgument("point out of range");
}

PointedModel::PointedModel(std::shared_ptr<const KripkeModel> m, const std::string& world)
    : model(std::move(m)), point(model->index(world)) {}

PointedModel pointed(KripkeModel m, const std::string& world) {
  return PointedModel(std::make_shared<const KripkeModel>(std::move(m)), world);
}

// ---------------------------------------------------------------------------

namespace {

struct Indexed {
  std::vector<std::string> worlds;  // sorted
  std::map<std::string, std::size_t> idx;
  Signature sig;
};

// Shared reference checks for normalize and validate.  Returns nullopt if
// the description is too broken to go further.
std::optional<Indexed> index_raw(const RawModel& raw, ValidationReport& rep) {
  Indexed ix;
  auto add = [&](ViolationKind k, std::vector<std::string> ws, std::string letter, std::string detail) {
    rep.violations.push_back({k, std::move(ws), std::move(letter), std::move(detail)});
  };
  for (const auto& l : raw.signature) {
    if (!is_valid_letter(l)) {
      add(ViolationKind::malformed, {}, l, "malformed letter");
    } else if (ix.sig.contains(l)) {
      add(ViolationKind::malformed, {}, l, "duplicate letter");
    } else {
      ix.sig.insert(l);
    }
  }
  if (raw.worlds.empty()) add(ViolationKind::malformed, {}, "", "no worlds");
  for (const auto& w : raw.worlds) {
    if (w.empty()) {
      add(ViolationKind::malformed, {}, "", "empty world id");
    } else if (!ix.idx.emplace(w, 0).second) {
      add(ViolationKind::malformed, {w}, "", "duplicate world");
    }
  }
  for (const auto& [a, b] : raw.order) {
    for (const auto& w : {a, b}) {
      if (!ix.idx.count(w)) add(ViolationKind::dangling_reference, {w}, "", "order pair names unknown world");
    }
  }
  for (const auto& [l, ws] : raw.valuation) {
    if (!ix.sig.contains(l)) add(ViolationKind::dangling_reference, {}, l, "valuation of letter outside signature");
    for (const auto& w : ws) {
      if (!ix.idx.count(w)) add(ViolationKind::dangling_reference, {w}, l, "valuation names unknown world");
    }
  }
  if (raw.point && !ix.idx.count(*raw.point)) {
    add(ViolationKind::dangling_reference, {*raw.point}, "", "point is not a world");
  }
  if (!rep.ok()) return std::nullopt;
  std::size_t i = 0;
  for (auto& [w, k] : ix.idx) {
    k = i++;
    ix.worlds.push_back(w);
  }
  return ix;
}

}  // namespace

std::variant<KripkeModel, ValidationReport> normalize(const RawModel& raw, NormalizeMode mode) {
  ValidationReport rep;
  auto ix = index_raw(raw, rep);
  if (!ix) return rep;
  const std::size_t n = ix->worlds.size();
  std::vector<WorldSet> up(n, WorldSet(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (const auto& [a, b] : raw.order) up[ix->idx.at(a)].set(ix->idx.at(b));
  // Warshall on rows
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (up[i].test(k)) up[i] |= up[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (up[i].test(j) && up[j].test(i)) {
        rep.violations.push_back({ViolationKind::antisymmetry, {ix->worlds[i], ix->worlds[j]}, "",
                                  "cycle through distinct worlds"});
      }
    }
  }
  std::map<std::string, WorldSet> val;
  for (const auto& l : ix->sig) {
    WorldSet s(n);
    if (auto it = raw.valuation.find(l); it != raw.valuation.end()) {
      for (const auto& w : it->second) s.set(ix->idx.at(w));
    }
    val.emplace(l, std::move(s));
  }
  if (rep.ok()) {
    for (const auto& l : ix->sig) {
      WorldSet& s = val.at(l);
      WorldSet closed = s;
      s.for_each([&](std::size_t i) { closed |= up[i]; });
      if (mode == NormalizeMode::close) {
        s = closed;
        continue;
      }
      s.for_each([&](std::size_t i) {
        up[i].for_each([&](std::size_t j) {
          if (!s.test(j)) {
            rep.violations.push_back({ViolationKind::monotonicity, {ix->worlds[i], ix->worlds[j]}, l,
                                      "true below, false above"});
          }
        });
      });
    }
  }
  if (!rep.ok()) return rep;
  return KripkeModel::from_closed(ix->sig, ix->worlds, std::move(up), std::move(val));
}

KripkeModel normalize_or_throw(const RawModel& raw, NormalizeMode mode) {
  auto r = normalize(raw, mode);
  if (auto* rep = std::get_if<ValidationReport>(&r)) throw InvalidArgument("invalid model:\n" + rep->describe());
  return std::get<KripkeModel>(std::move(r));
}

ValidationReport validate(const RawModel& raw) {
  ValidationReport rep;
  auto ix = index_raw(raw, rep);
  if (!ix) return rep;
  const std::size_t n = ix->worlds.size();
  std::vector<WorldSet> rel(n, WorldSet(n));
  for (const auto& [a, b] : raw.order) rel[ix->idx.at(a)].set(ix->idx.at(b));
  const auto& W = ix->worlds;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i].test(i)) rep.violations.push_back({ViolationKind::reflexivity, {W[i]}, "", "missing self pair"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    rel[i].for_each([&](std::size_t j) {
      rel[j].for_each([&](std::size_t k) {
        if (!rel[i].test(k)) {
          rep.violations.push_back({ViolationKind::transitivity, {W[i], W[j], W[k]}, "", "missing composite pair"});
        }
      });
      if (i < j && rel[j].test(i)) {
        rep.violations.push_back({ViolationKind::antisymmetry, {W[i], W[j]}, "", "pairs in both directions"});
      }
    });
  }
  for (const auto& [l, ws] : raw.valuation) {
    WorldSet s(n);
    for (const auto& w : ws) s.set(ix->idx.at(w));
    s.for_each([&](std::size_t i) {
      rel[i].for_each([&](std::size_t j) {
        if (!s.test(j)) {
          rep.violations.push_back({ViolationKind::monotonicity, {W[i], W[j]}, l, "true below, false above"});
        }
      });
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------

KripkeModel reduct(const KripkeModel& m, const Signature& sigma) {
  if (!sigma.is_subset_of(m.signature())) throw InvalidArgument("reduct signature is not a subset");
  std::map<std::string, WorldSet> val;
  for (const auto& l : sigma) val.emplace(l, m.valuation(l));
  std::vector<WorldSet> up;
  for (std::size_t i = 0; i < m.size(); ++i) up.push_back(m.up(i));
  return KripkeModel::from_closed(sigma, m.worlds(), std::move(up), std::move(val));
}

KripkeModel submodel(const KripkeModel& m, const std::vector<std::string>& worlds) {
  if (worlds.empty()) throw InvalidArgument("submodel of no worlds");
  std::vector<std::size_t> keep;
  for (const auto& w : worlds) keep.push_back(m.index(w));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const std::size_t n = keep.size();
  std::vector<std::string> names;
  std::vector<WorldSet> up(n, WorldSet(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(m.world(keep[a]));
    for (std::size_t b = 0; b < n; ++b) {
      if (m.leq(keep[a], keep[b])) up[a].set(b);
    }
  }
  std::map<std::string, WorldSet> val;
  for (const auto& l : m.signature()) {
    WorldSet s(n);
    for (std::size_t a = 0; a < n; ++a) s.assign(a, m.valuation(l).test(keep[a]));
    val.emplace(l, std::move(s));
  }
  return KripkeModel::from_closed(m.signature(), std::move(names), std::move(up), std::move(val));
}

bool is_submodel(const KripkeModel& a, const KripkeModel& b) {
  if (!a.signature().same_letters(b.signature())) return false;
  std::vector<std::size_t> emb;
  for (const auto& w : a.worlds()) {
    auto j = b.find(w);
    if (!j) return false;
    emb.push_back(*j);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a.leq(i, k) != b.leq(emb[i], emb[k])) return false;
    }
    for (const auto& l : a.signature()) {
      if (a.valuation(l).test(i) != b.valuation(l).test(emb[i])) return false;
    }
  }
  return true;
}

KripkeModel chain_union(const std::vector<KripkeModel>& ms) {
  if (ms.empty()) throw InvalidArgument("chain union of no models");
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    if (!is_submodel(ms[i], ms[i + 1])) {
      throw InvalidArgument("chain condition fails between members " + std::to_string(i) + " and " +
                            std::to_string(i + 1));
    }
  }
  RawModel raw;
  raw.signature = ms.front().signature().letters();
  std::set<std::string> worlds;
  std::set<std::pair<std::string, std::string>> pairs;
  std::map<std::string, std::set<std::string>> val;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      worlds.insert(m.world(i));
      m.up(i).for_each([&](std::size_t j) { pairs.emplace(m.world(i), m.world(j)); });
    }
    for (const auto& l : m.signature()) {
      m.valuation(l).for_each([&](std::size_t i) { val[l].insert(m.world(i)); });
    }
  }
  raw.worlds.assign(worlds.begin(), worlds.end());
  raw.order.assign(pairs.begin(), pairs.end());
  for (const auto& l : raw.signature) raw.valuation[l].assign(val[l].begin(), val[l].end());
  return normalize_or_throw(raw, NormalizeMode::strict);
}

std::optional<std::map<std::string, std::string>> isomorphism(const KripkeModel& m, const KripkeModel& n) {
  const std::size_t k = m.size();
  if (k != n.size() || !m.signature().same_letters(n.signature())) return std::nullopt;
  // per-world invariant: up/down cone sizes and letters (in m's letter order)
  auto invariant = [&](const KripkeModel& x, std::size_t i) {
    std::vector<std::size_t> v{x.up(i).count(), x.down(i).count()};
    for (const auto& l : m.signature()) v.push_back(x.valuation(l).test(i) ? 1 : 0);
    return v;
  };
  std::vector<std::vector<std::size_t>> inv_m, inv_n;
  for (std::size_t i = 0; i < k; ++i) {
    inv_m.push_back(invariant(m, i));
    inv_n.push_back(invariant(n, i));
  }
  {
    auto a = inv_m, b = inv_n;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::size_t> img(k);
  std::vector<bool> used(k, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t c = 0; c < k; ++c) {
      if (used[c] || inv_m[i] != inv_n[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = m.leq(i, j) == n.leq(c, img[j]) && m.leq(j, i) == n.leq(img[j], c);
      }
      if (!ok) continue;
      img[i] = c;
      used[c] = true;
      if (extend(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace(m.world(i), n.world(img[i]));
  return out;
}

KripkeModel random_model(std::size_t n_worlds, const Signature& sig, double density, std::uint64_t seed) {
  if (n_worlds == 0) throw InvalidArgument("random model needs at least one world");
  std::mt19937_64 rng(seed);
  // own conversion: std::uniform_real_distribution is not portable across libraries
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::size_t width = 1;
  for (std::size_t x = n_worlds - 1; x >= 10; x /= 10) ++width;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_worlds; ++i) {
    std::string digits = std::to_string(i);
    names.push_back("w" + std::string(width - digits.size(), '0') + digits);
  }
  const std::size_t n = n_worlds;
  std::vector<WorldSet> up(n, WorldSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    up[i].set(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit() < density) up[i].set(j);
    }
  }
  // higher indices first, so rows we union in are already closed
  for (std::size_t i = n; i-- > 0;) {
    WorldSet row = up[i];
    row.for_each([&](std::size_t j) {
      if (j != i) up[i] |= up[j];
    });
  }
  std::map<std::string, WorldSet> val;
  for (const auto& l : sig) {
    WorldSet s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (unit() < 0.35) s |= up[i];
    }
    val.emplace(l, std::move(s));
  }
  return KripkeModel::from_closed(sig, std::move(names), std::move(up), std::move(val));
}

}  // namespace bil
