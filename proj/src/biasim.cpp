#include "bil/biasim.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include <json.hpp>

#include "bil/enumerate.hpp"
#include "bil/error.hpp"
#include "bil/semantics.hpp"

namespace bil {

const char* to_string(Side s) { return s == Side::one_to_two ? "1to2" : "2to1"; }

Asim::Asim(std::shared_ptr<const KripkeModel> left, std::shared_ptr<const KripkeModel> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw InvalidArgument("relation needs two models");
  r12_.assign(left_->size(), WorldSet(right_->size()));
  r21_.assign(right_->size(), WorldSet(left_->size()));
}

void Asim::insert(Side s, std::size_t from, std::size_t to) {
  (s == Side::one_to_two ? r12_ : r21_).at(from).set(to);
}

void Asim::erase(Side s, std::size_t from, std::size_t to) {
  (s == Side::one_to_two ? r12_ : r21_).at(from).reset(to);
}

std::size_t Asim::size() const {
  std::size_t n = 0;
  for (const auto& r : r12_) n += r.count();
  for (const auto& r : r21_) n += r.count();
  return n;
}

std::vector<DirectedPair> Asim::pairs() const {
  std::vector<DirectedPair> out;
  for (Side s : {Side::one_to_two, Side::two_to_one}) {
    const auto& rows = s == Side::one_to_two ? r12_ : r21_;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].for_each([&](std::size_t j) { out.push_back({s, i, j}); });
    }
  }
  return out;
}

Asim Asim::united(const Asim& other) const {
  Asim out = *this;
  for (std::size_t i = 0; i < r12_.size(); ++i) out.r12_[i] |= other.r12_.at(i);
  for (std::size_t i = 0; i < r21_.size(); ++i) out.r21_[i] |= other.r21_.at(i);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_shared_signature(const KripkeModel& a, const KripkeModel& b) {
  if (!a.signature().same_letters(b.signature())) throw InvalidArgument("models have different signatures");
}

// first letter true at `from` and false at `to`
std::optional<std::string> atom_failure(const KripkeModel& src, std::size_t from, const KripkeModel& tgt,
                                        std::size_t to, const Signature& letters) {
  for (const auto& l : letters) {
    if (src.valuation(l).test(from) && !tgt.valuation(l).test(to)) return l;
  }
  return std::nullopt;
}

struct Check {
  ViolationKind kind;
  std::size_t witness;
};

// Back then forth condition of pair p against relation a; first failure in
// increasing witness order.
std::optional<Check> back_forth_failure(const Asim& a, const DirectedPair& p) {
  const KripkeModel& src = a.source(p.side);
  const KripkeModel& tgt = a.target(p.side);
  const Side back = flip(p.side);
  auto matched = [&](std::size_t t, std::size_t u) { return a.contains(back, t, u) && a.contains(p.side, u, t); };
  std::optional<Check> out;
  tgt.up(p.to).for_each([&](std::size_t t) {
    if (out) return;
    bool ok = false;
    src.up(p.from).for_each([&](std::size_t u) { ok = ok || matched(t, u); });
    if (!ok) out = Check{ViolationKind::s_back, t};
  });
  if (out) return out;
  src.down(p.from).for_each([&](std::size_t u) {
    if (out) return;
    bool ok = false;
    tgt.down(p.to).for_each([&](std::size_t t) { ok = ok || matched(t, u); });
    if (!ok) out = Check{ViolationKind::s_forth, u};
  });
  return out;
}

std::vector<DirectedPair> causes_of(const Asim& a, const DirectedPair& p, const Check& c) {
  std::vector<DirectedPair> out;
  const Side back = flip(p.side);
  auto note = [&](std::size_t t, std::size_t u) {
    if (!a.contains(back, t, u)) out.push_back({back, t, u});
    if (!a.contains(p.side, u, t)) out.push_back({p.side, u, t});
  };
  if (c.kind == ViolationKind::s_back) {
    a.source(p.side).up(p.from).for_each([&](std::size_t u) { note(c.witness, u); });
  } else {
    a.target(p.side).down(p.to).for_each([&](std::size_t t) { note(t, c.witness); });
  }
  return out;
}

}  // namespace

std::optional<std::size_t> Refinement::removal_of(const DirectedPair& p) const {
  const std::size_t n1 = survivors.left().size();
  const std::size_t n2 = survivors.right().size();
  const std::size_t i = p.side == Side::one_to_two ? p.from * n2 + p.to : n1 * n2 + p.from * n1 + p.to;
  return index.at(i);
}

Refinement refine(std::shared_ptr<const KripkeModel> m1, std::shared_ptr<const KripkeModel> m2, ScanOrder order,
                  std::uint64_t seed) {
  require_shared_signature(*m1, *m2);
  const std::size_t n1 = m1->size();
  const std::size_t n2 = m2->size();
  Refinement r{Asim(m1, m2), {}, 0, std::vector<std::optional<std::size_t>>(2 * n1 * n2)};
  auto slot = [&](const DirectedPair& p) -> std::optional<std::size_t>& {
    return r.index[p.side == Side::one_to_two ? p.from * n2 + p.to : n1 * n2 + p.from * n1 + p.to];
  };
  auto record = [&](Removal rem) {
    slot(rem.pair) = r.trace.size();
    r.trace.push_back(std::move(rem));
  };

  std::vector<DirectedPair> alive;
  for (Side s : {Side::one_to_two, Side::two_to_one}) {
    const KripkeModel& src = s == Side::one_to_two ? *m1 : *m2;
    const KripkeModel& tgt = s == Side::one_to_two ? *m2 : *m1;
    for (std::size_t i = 0; i < src.size(); ++i) {
      for (std::size_t j = 0; j < tgt.size(); ++j) {
        DirectedPair p{s, i, j};
        if (auto l = atom_failure(src, i, tgt, j, m1->signature())) {
          record({p, ViolationKind::s_atom, 0, *l, std::nullopt, {}});
        } else {
          r.survivors.insert(s, i, j);
          alive.push_back(p);
        }
      }
    }
  }

  if (order == ScanOrder::lexicographic) {
    for (std::size_t round = 1;; ++round) {
      std::vector<Removal> batch;
      for (const auto& p : alive) {
        if (auto c = back_forth_failure(r.survivors, p)) {
          batch.push_back({p, c->kind, round, {}, c->witness, causes_of(r.survivors, p, *c)});
        }
      }
      if (batch.empty()) break;
      r.rounds = round;
      for (auto& rem : batch) r.survivors.erase(rem.pair.side, rem.pair.from, rem.pair.to);
      std::erase_if(alive, [&](const DirectedPair& p) { return !r.survivors.contains(p); });
      for (auto& rem : batch) record(std::move(rem));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::shuffle(alive.begin(), alive.end(), rng);
    for (std::size_t pass = 1;; ++pass) {
      bool changed = false;
      for (const auto& p : alive) {
        if (!r.survivors.contains(p)) continue;
        if (auto c = back_forth_failure(r.survivors, p)) {
          Removal rem{p, c->kind, pass, {}, c->witness, causes_of(r.survivors, p, *c)};
          r.survivors.erase(p.side, p.from, p.to);
          record(std::move(rem));
          changed = true;
        }
      }
      if (!changed) break;
      r.rounds = pass;
    }
  }
  return r;
}

std::optional<Asim> greatest_biasim(const PointedModel& from, const PointedModel& to) {
  Refinement r = refine(from.model, to.model);
  if (!r.survivors.contains(Side::one_to_two, from.point, to.point)) return std::nullopt;
  return std::move(r.survivors);
}

ValidationReport check_biasim(const Asim& a, const PointedModel& from, const PointedModel& to) {
  auto same = [](const std::shared_ptr<const KripkeModel>& x, const std::shared_ptr<const KripkeModel>& y) {
    return x == y || *x == *y;
  };
  if (!same(a.left_ptr(), from.model) || !same(a.right_ptr(), to.model)) {
    throw InvalidArgument("relation is over different models");
  }
  ValidationReport rep;
  if (!a.contains(Side::one_to_two, from.point, to.point)) {
    rep.violations.push_back({ViolationKind::elem, {from.point_name(), to.point_name()}, "", "point pair missing"});
  }
  ValidationReport rest = check_pairs(a, [](const DirectedPair&) { return true; });
  rep.violations.insert(rep.violations.end(), rest.violations.begin(), rest.violations.end());
  return rep;
}

ValidationReport check_pairs(const Asim& a, const std::function<bool(const DirectedPair&)>& selected) {
  require_shared_signature(a.left(), a.right());
  ValidationReport rep;
  for (const auto& p : a.pairs()) {
    if (!selected(p)) continue;
    const KripkeModel& src = a.source(p.side);
    const KripkeModel& tgt = a.target(p.side);
    const std::string& v = src.world(p.from);
    const std::string& s = tgt.world(p.to);
    const std::string tag = std::string("side ") + to_string(p.side);
    for (const auto& l : src.signature()) {
      if (src.valuation(l).test(p.from) && !tgt.valuation(l).test(p.to)) {
        rep.violations.push_back({ViolationKind::s_atom, {v, s}, l, tag});
      }
    }
    // every failing witness, not only the first
    const Side back = flip(p.side);
    tgt.up(p.to).for_each([&](std::size_t t) {
      bool ok = false;
      src.up(p.from).for_each([&](std::size_t u) { ok = ok || (a.contains(back, t, u) && a.contains(p.side, u, t)); });
      if (!ok) {
        rep.violations.push_back(
            {ViolationKind::s_back, {v, s, tgt.world(t)}, "", tag + ", successor " + tgt.world(t) + " unmatched"});
      }
    });
    src.down(p.from).for_each([&](std::size_t u) {
      bool ok = false;
      tgt.down(p.to).for_each([&](std::size_t t) { ok = ok || (a.contains(back, t, u) && a.contains(p.side, u, t)); });
      if (!ok) {
        rep.violations.push_back(
            {ViolationKind::s_forth, {v, s, src.world(u)}, "", tag + ", predecessor " + src.world(u) + " unmatched"});
      }
    });
  }
  return rep;
}

Asim canonical_relation(std::shared_ptr<const KripkeModel> m1, std::shared_ptr<const KripkeModel> m2,
                        const Signature& sig, int max_rank) {
  require_shared_signature(*m1, *m2);
  Universe u({m1, m2}, sig);
  ClassTable t = enumerate_classes(u, max_rank);
  // membership of each universe world in each class
  std::vector<WorldSet> member(u.size(), WorldSet(t.size()));
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (std::size_t g = 0; g < u.size(); ++g) member[g].assign(c, t.holds(c, g));
  }
  Asim out(m1, m2);
  for (std::size_t i = 0; i < m1->size(); ++i) {
    for (std::size_t j = 0; j < m2->size(); ++j) {
      const std::size_t gi = u.global(*m1, i);
      const std::size_t gj = u.global(*m2, j);
      if (member[gi].is_subset_of(member[gj])) out.insert(Side::one_to_two, i, j);
      if (member[gj].is_subset_of(member[gi])) out.insert(Side::two_to_one, j, i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Synthesizer {
 public:
  Synthesizer(const Refinement& r, bool minimize) : r_(r), minimize_(minimize) {}

  Formula separate(const DirectedPair& p) {
    const auto idx = r_.removal_of(p);
    if (!idx) throw InternalError("separating a surviving pair");
    if (auto it = memo_.find(*idx); it != memo_.end()) return it->second;
    const Removal& rem = r_.trace[*idx];
    Formula f = build(rem);
    memo_.emplace(*idx, f);
    return f;
  }

 private:
  std::size_t round_of(const DirectedPair& p) const {
    const auto idx = r_.removal_of(p);
    return idx ? r_.trace[*idx].round : SIZE_MAX;
  }

  Formula build(const Removal& rem) {
    const DirectedPair& p = rem.pair;
    if (rem.condition == ViolationKind::s_atom) return Formula::atom(rem.letter);
    const Asim& a = r_.survivors;
    const Side back = flip(p.side);
    std::vector<Formula> lhs, rhs;
    // take the separator removed earlier; the left-hand (conjunct) one on ties
    auto pick = [&](const DirectedPair& to_lhs, const DirectedPair& to_rhs) {
      const std::size_t rl = round_of(to_lhs);
      const std::size_t rr = round_of(to_rhs);
      if (rl < rem.round && rl <= rr) {
        lhs.push_back(separate(to_lhs));
      } else if (rr < rem.round) {
        rhs.push_back(separate(to_rhs));
      } else {
        throw InternalError("refutation trace lacks an earlier removal");
      }
    };
    const std::size_t w = *rem.witness;
    const bool back_case = rem.condition == ViolationKind::s_back;
    if (back_case) {
      // lhs members hold at the witness t and fail at u; rhs members the reverse
      a.source(p.side).up(p.from).for_each([&](std::size_t u) { pick({back, w, u}, {p.side, u, w}); });
    } else {
      a.target(p.side).down(p.to).for_each([&](std::size_t t) { pick({p.side, w, t}, {back, t, w}); });
    }
    auto make = [&] {
      Formula x = Formula::big_conj(lhs);
      Formula y = Formula::big_disj(rhs);
      return back_case ? Formula::impl(x, y) : Formula::coimpl(x, y);
    };
    if (minimize_) {
      const KripkeModel& src = a.source(p.side);
      const KripkeModel& tgt = a.target(p.side);
      auto separates = [&] { return satisfies(src, p.from, make()) && !satisfies(tgt, p.to, make()); };
      for (auto* list : {&lhs, &rhs}) {
        for (std::size_t i = 0; i < list->size();) {
          const std::size_t before = make().size();
          Formula dropped = (*list)[i];
          list->erase(list->begin() + static_cast<std::ptrdiff_t>(i));
          // an emptied conjunction becomes top, which can be larger than what it replaced
          if (separates() && make().size() <= before) continue;
          list->insert(list->begin() + static_cast<std::ptrdiff_t>(i), dropped);
          ++i;
        }
      }
    }
    return make();
  }

  const Refinement& r_;
  bool minimize_;
  std::map<std::size_t, Formula> memo_;
};

}  // namespace

std::optional<Formula> separating_formula(const PointedModel& from, const PointedModel& to, bool minimize) {
  Refinement r = refine(from.model, to.model);
  DirectedPair p{Side::one_to_two, from.point, to.point};
  if (r.survivors.contains(p)) return std::nullopt;
  return Synthesizer(r, minimize).separate(p);
}

std::string asim_to_json(const Asim& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& p : a.pairs()) {
    nlohmann::ordered_json e;
    e["side"] = to_string(p.side);
    e["from"] = a.source(p.side).world(p.from);
    e["to"] = a.target(p.side).world(p.to);
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace bil
