#include "bil/unravel.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "bil/enumerate.hpp"
#include "bil/error.hpp"

namespace bil {

std::string UnravelModel::node_id(std::size_t node) const {
  std::string out;
  for (std::size_t w : nodes_.at(node)) {
    if (!out.empty()) out += '/';
    out += base_->world(w);
  }
  return out;
}

std::optional<std::size_t> UnravelModel::find(const Chain& c) const {
  // nodes_ is sorted by (length, lex)
  auto less = [](const Chain& a, const Chain& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; };
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), c, less);
  if (it == nodes_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

UnravelModel unravel(std::shared_ptr<const KripkeModel> m, std::size_t root, std::size_t maxlen, UnravelLimits limits) {
  if (!m) throw InvalidArgument("null model");
  if (maxlen == 0) throw InvalidArgument("maxlen must be at least 1");
  if (root >= m->size()) throw UnknownWorld(std::to_string(root));
  for (const auto& w : m->worlds()) {
    if (w.find('/') != std::string::npos) throw InvalidArgument("world id '" + w + "' contains '/'");
  }
  const KripkeModel& b = *m;
  UnravelModel u;
  u.base_ = m;
  u.root_ = root;
  u.maxlen_ = maxlen;
  u.nodes_.push_back({root});
  std::vector<std::size_t> parent{0};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len < maxlen; ++len) {
    const std::size_t level_end = u.nodes_.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      const std::size_t e = u.nodes_[i].back();
      for (std::size_t x = 0; x < b.size(); ++x) {
        if (x == e || !(b.leq(e, x) || b.leq(x, e))) continue;
        if (u.nodes_.size() >= limits.max_nodes) {
          throw BudgetExceeded("unravelling exceeds " + std::to_string(limits.max_nodes) + " nodes");
        }
        Chain c = u.nodes_[i];
        c.push_back(x);
        u.nodes_.push_back(std::move(c));
        parent.push_back(i);
      }
    }
    if (u.nodes_.size() == level_end) break;
    level_start = level_end;
  }

  for (std::size_t i = 1; i < u.nodes_.size(); ++i) {
    const std::size_t p = parent[i];
    if (b.leq(u.end(p), u.end(i))) {
      u.rho_.emplace_back(p, i);
    } else {
      u.rho_.emplace_back(i, p);
    }
  }

  RawModel raw;
  raw.signature = b.signature().letters();
  for (std::size_t i = 0; i < u.nodes_.size(); ++i) raw.worlds.push_back(u.node_id(i));
  for (const auto& [s, t] : u.rho_) raw.order.emplace_back(raw.worlds[s], raw.worlds[t]);
  for (const auto& l : b.signature()) {
    auto& ws = raw.valuation[l];
    for (std::size_t i = 0; i < u.nodes_.size(); ++i) {
      if (b.valuation(l).test(u.end(i))) ws.push_back(raw.worlds[i]);
    }
  }
  auto res = normalize(raw, NormalizeMode::strict);
  if (auto* rep = std::get_if<ValidationReport>(&res)) {
    throw InternalError("unravelling is not a model: " + rep->describe());
  }
  u.model_ = std::make_shared<const KripkeModel>(std::move(std::get<KripkeModel>(res)));
  u.world_of_.resize(u.nodes_.size());
  u.node_of_.resize(u.nodes_.size());
  for (std::size_t i = 0; i < u.nodes_.size(); ++i) {
    const std::size_t w = u.model_->index(raw.worlds[i]);
    u.world_of_[i] = w;
    u.node_of_[w] = i;
  }
  return u;
}

Factorization zigzag_factor(const UnravelModel& u, std::size_t alpha, std::size_t beta) {
  if (!u.leq(alpha, beta)) throw InvalidArgument("nodes " + u.node_id(alpha) + " and " + u.node_id(beta) + " are not related");
  const Chain& a = u.nodes().at(alpha);
  const Chain& b = u.nodes().at(beta);
  std::size_t l = 0;
  while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
  Factorization f{Chain(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(l)),
                  Chain(a.begin() + static_cast<std::ptrdiff_t>(l), a.end()),
                  Chain(b.begin() + static_cast<std::ptrdiff_t>(l), b.end())};
  const KripkeModel& m = u.base();
  std::size_t prev = f.prefix.back();
  for (std::size_t x : f.down) {
    if (x == prev || !m.leq(x, prev)) throw InternalError("descending part of " + u.node_id(alpha) + " is not a chain");
    prev = x;
  }
  prev = f.prefix.back();
  for (std::size_t x : f.up) {
    if (x == prev || !m.leq(prev, x)) throw InternalError("ascending part of " + u.node_id(beta) + " is not a chain");
    prev = x;
  }
  return f;
}

std::vector<std::vector<std::size_t>> valley_violations(const UnravelModel& u, std::size_t max_len) {
  const std::size_t n = u.nodes().size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [s, t] : u.rho()) adj[s].push_back(t);
  std::vector<std::vector<std::size_t>> bad;
  std::vector<std::size_t> path;
  std::vector<char> on(n, 0);
  // shape check: lengths go down (retract) then up (extend), never up then down
  std::function<void(bool)> dfs = [&](bool extended) {
    if (path.size() >= max_len) return;
    const std::size_t cur = path.back();
    for (std::size_t nx : adj[cur]) {
      if (on[nx]) continue;
      const bool extend = u.nodes()[nx].size() > u.nodes()[cur].size();
      path.push_back(nx);
      on[nx] = 1;
      if (extended && !extend) {
        bad.push_back(path);
      } else {
        dfs(extended || extend);
      }
      on[nx] = 0;
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    dfs(false);
    on[s] = 0;
  }
  return bad;
}

std::size_t height(const KripkeModel& m) {
  std::vector<std::optional<std::size_t>> memo(m.size());
  std::function<std::size_t(std::size_t)> h = [&](std::size_t i) -> std::size_t {
    if (memo[i]) return *memo[i];
    std::size_t best = 0;
    m.up(i).for_each([&](std::size_t j) {
      if (j != i) best = std::max(best, 1 + h(j));
    });
    memo[i] = best;
    return best;
  };
  std::size_t out = 0;
  for (std::size_t i = 0; i < m.size(); ++i) out = std::max(out, h(i));
  return out;
}

TheoryCheckReport b_theory_check(const UnravelModel& u, int max_rank, Guard guard) {
  if (max_rank < 0) throw InvalidArgument("negative rank");
  if (static_cast<std::size_t>(max_rank) + 1 > u.maxlen()) throw InvalidArgument("rank must be at most maxlen - 1");
  const std::size_t H = std::max<std::size_t>(height(u.base()), 1);
  auto inside = [&](std::size_t len, int r) {
    const std::size_t step = guard == Guard::length_plus_rank ? 1 : H;
    return len + static_cast<std::size_t>(r) * step <= u.maxlen();
  };
  Universe uni({u.model_ptr(), u.base_ptr()}, u.base().signature());
  TheoryCheckReport rep;

  auto witness = [&](std::size_t ga, std::size_t gb, int r) -> std::optional<Formula> {
    try {
      EnumLimits lim;
      lim.max_classes = 5000;
      ClassTable t = enumerate_classes(uni, r, lim);
      for (std::size_t c = 0; c < t.size(); ++c) {
        if (t.holds(c, ga) != t.holds(c, gb)) return t.rep(c);
      }
    } catch (const BudgetExceeded&) {
    }
    return std::nullopt;
  };

  for (int r = 0; r <= max_rank; ++r) {
    const std::vector<std::size_t> ty = refine_types(uni, r);
    std::map<std::size_t, std::size_t> first_by_end;
    for (std::size_t i = 0; i < u.nodes().size(); ++i) {
      if (!inside(u.nodes()[i].size(), r)) continue;
      ++rep.checked;
      const std::size_t gn = uni.global(u.model(), u.world_of(i));
      const std::size_t gb = uni.global(u.base(), u.end(i));
      if (ty[gn] != ty[gb]) rep.mismatches.push_back({i, r, true, std::nullopt, witness(gn, gb, r)});
      auto [it, fresh] = first_by_end.emplace(u.end(i), i);
      if (!fresh) {
        const std::size_t go = uni.global(u.model(), u.world_of(it->second));
        if (ty[gn] != ty[go]) rep.mismatches.push_back({i, r, false, it->second, witness(gn, go, r)});
      }
    }
  }
  return rep;
}

TheoryCheckReport b_theory_check(std::shared_ptr<const KripkeModel> m, std::size_t root, std::size_t maxlen,
                                 int max_rank, Guard guard) {
  return b_theory_check(unravel(std::move(m), root, maxlen), max_rank, guard);
}

Asim unravel_b_relation(const UnravelModel& u) {
  Asim a(u.model_ptr(), u.base_ptr());
  for (std::size_t i = 0; i < u.nodes().size(); ++i) {
    a.insert(Side::one_to_two, u.world_of(i), u.end(i));
    a.insert(Side::two_to_one, u.end(i), u.world_of(i));
  }
  return a;
}

ValidationReport check_b_relation_interior(const UnravelModel& u) {
  const Asim a = unravel_b_relation(u);
  return check_pairs(a, [&](const DirectedPair& p) {
    const std::size_t w = p.side == Side::one_to_two ? p.from : p.to;
    return u.nodes()[u.node_of(w)].size() < u.maxlen();
  });
}

// ---------------------------------------------------------------------------

namespace {

std::string escape_world(const std::string& w) {
  std::string out;
  for (unsigned char c : w) {
    if (std::isalnum(c) || c == '_' || c == '-') {
      out += static_cast<char>(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_x%02X", c);
      out += buf;
    }
  }
  return out;
}

}  // namespace

std::string bracket_letter(bool plus, const std::string& world) {
  return std::string(plus ? "q+" : "q-") + escape_world(world);
}

KripkeModel bracket(const KripkeModel& m) {
  Signature sig = m.signature();
  std::map<std::string, WorldSet> val;
  for (const auto& l : m.signature()) val.emplace(l, m.valuation(l));
  const std::size_t n = m.size();
  for (bool plus : {true, false}) {
    for (std::size_t w = 0; w < n; ++w) {
      const std::string l = bracket_letter(plus, m.world(w));
      if (sig.contains(l)) throw InvalidArgument("bracket letter " + l + " collides with an existing letter");
      sig.insert(l);
      WorldSet s(n);
      if (plus) {
        s = m.up(w);
      } else {
        for (std::size_t v = 0; v < n; ++v) s.assign(v, !m.leq(v, w));
      }
      val.emplace(l, std::move(s));
    }
  }
  std::vector<WorldSet> up;
  for (std::size_t w = 0; w < n; ++w) up.push_back(m.up(w));
  return KripkeModel::from_closed(std::move(sig), m.worlds(), std::move(up), std::move(val));
}

// ---------------------------------------------------------------------------

const char* to_string(Family f) {
  switch (f) {
    case Family::phi:
      return "phi";
    case Family::psi:
      return "psi";
    case Family::theta:
      return "theta";
    case Family::tau:
      return "tau";
  }
  return "?";
}

Formula Schema::instantiate(const Formula& alpha, const Formula& beta) const {
  Formula f = family == Family::phi || family == Family::theta ? Formula::impl(alpha, beta)
                                                               : Formula::coimpl(alpha, beta);
  for (const auto& w : wraps) {
    const Formula l = Formula::atom(w.letter);
    if (w.backward) {
      f = w.letter_on_left ? Formula::coimpl(l, f) : Formula::coimpl(f, l);
    } else {
      f = w.letter_on_left ? Formula::impl(l, f) : Formula::impl(f, l);
    }
  }
  return f;
}

namespace {

void check_path(const KripkeModel& m, const std::vector<std::string>& path) {
  if (path.empty()) throw InvalidArgument("empty path");
  for (std::size_t i = 0; i < path.size(); ++i) {
    const std::size_t x = m.index(path[i]);
    if (i == 0) continue;
    const std::size_t p = m.index(path[i - 1]);
    if (p == x) throw InvalidArgument("path repeats " + path[i] + " at adjacent positions");
    if (!m.leq(p, x) && !m.leq(x, p)) {
      throw InvalidArgument("path worlds " + path[i - 1] + " and " + path[i] + " are incomparable");
    }
  }
}

}  // namespace

SchemaSet schemas(const KripkeModel& m, const std::vector<std::string>& path, std::size_t k) {
  check_path(m, path);
  const std::size_t n = path.size();
  if (k < 1 || k > n) throw InvalidArgument("schema index " + std::to_string(k) + " outside 1.." + std::to_string(n));
  SchemaSet s{path, k,
              {Schema{Family::phi, Sign::minus, {}}, Schema{Family::psi, Sign::plus, {}},
               Schema{Family::theta, Sign::plus, {}}, Schema{Family::tau, Sign::minus, {}}}};
  // positions j (0-based) from n-2 down to k-1 step from path[j+1] to path[j]
  for (std::size_t j = n - 1; j-- > k - 1;) {
    const bool ascending = m.leq(m.index(path[j]), m.index(path[j + 1]));
    const std::string& w = path[j + 1];
    for (auto& sc : s.schemas) {
      const bool plus = sc.sign == Sign::plus;
      sc.wraps.push_back({!ascending, plus, bracket_letter(plus, w)});
      sc.sign = ascending ? Sign::plus : Sign::minus;
    }
  }
  return s;
}

std::array<SchemaVerdict, 4> schema_verdicts(const KripkeModel& bm, const std::vector<std::string>& path,
                                             std::size_t k, const Formula& alpha, const Formula& beta) {
  const SchemaSet s = schemas(bm, path, k);
  Evaluator ev(bm);
  const std::size_t at = bm.index(path[k - 1]);
  const std::size_t last = bm.index(path.back());
  const bool impl = ev.holds(last, Formula::impl(alpha, beta));
  const bool co = ev.holds(last, Formula::coimpl(alpha, beta));
  std::array<SchemaVerdict, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Schema& sc = s.schemas[i];
    const bool holds = ev.holds(at, sc.instantiate(alpha, beta));
    bool target = false;
    switch (sc.family) {
      case Family::phi:
        target = !impl;
        break;
      case Family::psi:
        target = co;
        break;
      case Family::theta:
        target = impl;
        break;
      case Family::tau:
        target = !co;
        break;
    }
    out[i] = {sc.family, sc.sign == Sign::plus ? holds : !holds, target};
  }
  return out;
}

bool verify_schema(const KripkeModel& bm, const std::vector<std::string>& path, std::size_t k, const Formula& alpha,
                   const Formula& beta) {
  const auto v = schema_verdicts(bm, path, k, alpha, beta);
  return std::all_of(v.begin(), v.end(), [](const SchemaVerdict& x) { return x.agrees(); });
}

// ---------------------------------------------------------------------------

bool TypeExpansion::verified() const {
  return std::all_of(fragment.begin(), fragment.end(), [](const FragmentItem& i) { return i.holds; });
}

std::optional<TypeExpansion> realize_finite_type_expansion(const KripkeModel& m, const std::string& v,
                                                          const TypeQuery& q,
                                                          const std::pair<std::string, std::string>& fresh,
                                                          std::vector<std::string> path) {
  const std::size_t vi = m.index(v);
  if (path.empty()) path = {v};
  if (path.back() != v) throw InvalidArgument("path must end at " + v);
  check_path(m, path);

  KripkeModel bm = bracket(m);
  const auto& [rp, rm] = fresh;
  for (const auto& l : {rp, rm}) {
    if (!is_valid_letter(l)) throw InvalidArgument("invalid letter '" + l + "'");
    if (bm.signature().contains(l)) throw InvalidArgument("fresh letter " + l + " is already in use");
  }
  if (rp == rm) throw InvalidArgument("fresh letters must differ");

  if (!is_type(PointedModel(std::make_shared<const KripkeModel>(m), vi), q)) return std::nullopt;
  const auto wit = realize(m, vi, q);
  if (!wit) return std::nullopt;

  Signature sig = bm.signature();
  sig.insert(rp);
  sig.insert(rm);
  std::map<std::string, WorldSet> val;
  for (const auto& l : bm.signature()) val.emplace(l, bm.valuation(l));
  val.emplace(rp, bm.valuation(bracket_letter(true, m.world(*wit))));
  val.emplace(rm, bm.valuation(bracket_letter(false, m.world(*wit))));
  std::vector<WorldSet> up;
  for (std::size_t w = 0; w < m.size(); ++w) up.push_back(m.up(w));
  auto em = std::make_shared<const KripkeModel>(KripkeModel::from_closed(std::move(sig), m.worlds(), std::move(up), std::move(val)));

  TypeExpansion out{PointedModel(em, em->index(path.front())), *wit, {}};
  const SchemaSet s = schemas(*em, path, 1);
  const Formula lp = Formula::atom(rp);
  const Formula lm = Formula::atom(rm);
  const bool succ = q.direction == Direction::successor;
  const Schema& main = s.get(succ ? Family::phi : Family::psi);
  const Schema& side = s.get(succ ? Family::theta : Family::tau);
  Evaluator ev(*em);
  auto add = [&](const Schema& sc, const Formula& a, const Formula& b) {
    Formula f = sc.instantiate(a, b);
    const bool sat = ev.holds(out.model.point, f);
    out.fragment.push_back({f, sc.sign, sat == (sc.sign == Sign::plus)});
  };
  add(main, lp, lm);
  for (const auto& g : q.gamma) add(side, lp, g);
  for (const auto& d : q.delta) add(side, d, lm);
  return out;
}

}  // namespace bil
