#include "bil/semantics.hpp"

#include "bil/enumerate.hpp"
#include "bil/error.hpp"

namespace bil {

const WorldSet& Evaluator::truth(const Formula& f) {
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
  const std::size_t n = m_.size();
  WorldSet out(n);
  switch (f.kind()) {
    case Connective::bottom:
      break;
    case Connective::atom:
      out = m_.valuation(f.letter());
      break;
    case Connective::conj:
      out = truth(f.lhs());
      out &= truth(f.rhs());
      break;
    case Connective::disj:
      out = truth(f.lhs());
      out |= truth(f.rhs());
      break;
    case Connective::impl:
    case Connective::coimpl: {
      // worlds satisfying the left side and refuting the right side
      WorldSet d = truth(f.lhs());
      d.subtract(truth(f.rhs()));
      const bool forward = f.kind() == Connective::impl;
      for (std::size_t w = 0; w < n; ++w) {
        out.assign(w, forward ? !m_.up(w).intersects(d) : m_.down(w).intersects(d));
      }
      break;
    }
  }
  return memo_.emplace(f.id(), std::make_pair(f, std::move(out))).first->second.second;
}

WorldSet truth_set(const KripkeModel& m, const Formula& f) {
  Evaluator ev(m);
  return ev.truth(f);
}

bool satisfies(const KripkeModel& m, std::size_t w, const Formula& f) {
  if (w >= m.size()) throw UnknownWorld(std::to_string(w));
  return truth_set(m, f).test(w);
}

bool satisfies(const KripkeModel& m, const std::string& w, const Formula& f) {
  return satisfies(m, m.index(w), f);
}

bool satisfies(const PointedModel& pm, const Formula& f) { return satisfies(pm.m(), pm.point, f); }

// ---------------------------------------------------------------------------

Formula type_formula(const TypeQuery& q) {
  Formula g = Formula::big_conj(q.gamma);
  Formula d = Formula::big_disj(q.delta);
  return q.direction == Direction::successor ? Formula::impl(g, d) : Formula::coimpl(g, d);
}

TypeVerdicts type_verdicts(const KripkeModel& m, std::size_t w, const TypeQuery& q) {
  if (w >= m.size()) throw UnknownWorld(std::to_string(w));
  if (q.gamma.size() > 16 || q.delta.size() > 16) throw InvalidArgument("type query too large for subset check");
  Evaluator ev(m);
  const WorldSet& cone = q.direction == Direction::successor ? m.up(w) : m.down(w);
  std::vector<WorldSet> g, d;
  for (const auto& f : q.gamma) g.push_back(ev.truth(f));
  for (const auto& f : q.delta) d.push_back(ev.truth(f));

  auto witnessed = [&](std::uint32_t gmask, std::uint32_t dmask) {
    WorldSet s = cone;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (gmask >> i & 1U) s &= g[i];
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (dmask >> i & 1U) s.subtract(d[i]);
    }
    return s.any();
  };

  TypeVerdicts v;
  const std::uint32_t gfull = (1U << g.size()) - 1;
  const std::uint32_t dfull = (1U << d.size()) - 1;
  v.all_subsets = true;
  for (std::uint32_t gm = 0; gm <= gfull && v.all_subsets; ++gm) {
    for (std::uint32_t dm = 0; dm <= dfull && v.all_subsets; ++dm) v.all_subsets = witnessed(gm, dm);
  }
  v.single_witness = witnessed(gfull, dfull);
  const bool f = ev.holds(w, type_formula(q));
  v.formula_test = q.direction == Direction::successor ? !f : f;
  return v;
}

bool is_type(const PointedModel& pm, const TypeQuery& q) {
  const TypeVerdicts v = type_verdicts(pm.m(), pm.point, q);
  if (v.all_subsets != v.single_witness || v.single_witness != v.formula_test) {
    throw InternalError("type characterizations disagree at " + pm.point_name());
  }
  return v.single_witness;
}

std::optional<std::size_t> realize(const KripkeModel& m, std::size_t w, const TypeQuery& q) {
  if (w >= m.size()) throw UnknownWorld(std::to_string(w));
  Evaluator ev(m);
  WorldSet s = q.direction == Direction::successor ? m.up(w) : m.down(w);
  for (const auto& f : q.gamma) s &= ev.truth(f);
  for (const auto& f : q.delta) s.subtract(ev.truth(f));
  std::optional<std::size_t> out;
  s.for_each([&](std::size_t v) {
    if (!out) out = v;
  });
  return out;
}

// ---------------------------------------------------------------------------

Theory theory(const PointedModel& pm, const Signature& sig, int max_rank, const std::vector<PointedModel>& context) {
  if (!sig.is_subset_of(pm.m().signature())) throw InvalidArgument("theory signature not in model signature");
  std::vector<PointedModel> ctx = context;
  ctx.push_back(pm);
  Theory t;
  t.rank_bound = max_rank;
  t.signature = sig;
  Evaluator ev(pm.m());
  for (const auto& f : enumerate_formulas(sig, max_rank, ctx)) {
    (ev.holds(pm.point, f) ? t.positive : t.negative).push_back(f);
  }
  return t;
}

Inclusion theory_included(const PointedModel& a, const PointedModel& b, const Signature& sig, int max_rank) {
  Universe u({a.model, b.model}, sig);
  ClassTable t = enumerate_classes(u, max_rank);
  const std::size_t ga = u.global(a);
  const std::size_t gb = u.global(b);
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (t.holds(c, ga) && !t.holds(c, gb)) return {false, t.rep(c)};
  }
  return {true, std::nullopt};
}

}  // namespace bil
