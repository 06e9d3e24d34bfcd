#include "bil/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "bil/biasim.hpp"
#include "bil/error.hpp"
#include "bil/fol.hpp"
#include "bil/generate.hpp"
#include "bil/semantics.hpp"
#include "bil/unravel.hpp"

namespace bil {

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

std::vector<CaseResult> run_cases(const std::vector<Case>& cases, unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1)));
  std::vector<CaseResult> out(cases.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        out[i] = cases[i].run();
      } catch (const std::exception& e) {
        out[i] = {cases[i].id, false, std::string("exception: ") + e.what()};
      }
      out[i].id = cases[i].id;
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::sort(out.begin(), out.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"preservation", "monotonicity", "hennessy-milner", "unravel-structure",
                                              "schemas",      "types",        "fol-equiv"};
  return names;
}

namespace {

std::string case_id(const std::string& tag, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return tag + "-" + buf;
}

Signature letters_up_to(std::size_t k) {
  static const std::vector<std::string> all{"p", "q"};
  Signature s;
  for (std::size_t i = 0; i < k && i < all.size(); ++i) s.insert(all[i]);
  return s;
}

std::shared_ptr<const KripkeModel> model_from(Rng& r, std::size_t max_worlds, const Signature& sig) {
  const std::size_t n = 1 + r.below(max_worlds);
  const double density = 0.2 + 0.5 * r.unit();
  return std::make_shared<const KripkeModel>(random_model(n, sig, density, r.next()));
}

struct PairCase {
  Signature sig;
  PointedModel from, to;
  std::string kind;
};

// Independent models, an isomorphic copy, or a submodel through the point.
PairCase make_pair(std::uint64_t seed, std::size_t max_worlds) {
  Rng r(seed);
  const Signature sig = letters_up_to(r.below(3));
  auto m1 = model_from(r, max_worlds, sig);
  const std::size_t p1 = r.below(m1->size());
  const std::size_t kind = r.below(20);
  if (kind >= 14 && kind < 17) {
    auto m2 = std::make_shared<const KripkeModel>(relabel(*m1, "c"));
    return {sig, {m1, p1}, {m2, "c" + m1->world(p1)}, "copy"};
  }
  if (kind >= 17) {
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < m1->size(); ++i) {
      if (i == p1 || r.chance(0.6)) keep.push_back(m1->world(i));
    }
    auto m2 = std::make_shared<const KripkeModel>(submodel(*m1, keep));
    return {sig, {m1, p1}, {m2, m1->world(p1)}, "submodel"};
  }
  auto m2 = model_from(r, max_worlds, sig);
  return {sig, {m1, p1}, {m2, r.below(m2->size())}, "random"};
}

std::string describe_pair(const PairCase& pc) {
  std::ostringstream o;
  o << pc.kind << " |W1|=" << pc.from.m().size() << " |W2|=" << pc.to.m().size() << " letters=" << pc.sig.size();
  return o.str();
}

constexpr std::size_t kPairs = 200;

// 1: bi-asimulation exists iff theory inclusion at rank min(6, 2|W1||W2|)
std::vector<Case> hennessy_milner(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < kPairs; ++i) {
    cs.push_back({case_id("hm", i), [seed, i]() -> CaseResult {
                    const PairCase pc = make_pair(mix_seed(seed, "hm", i), 5);
                    const bool g = greatest_biasim(pc.from, pc.to).has_value();
                    const int rank = static_cast<int>(std::min<std::size_t>(6, 2 * pc.from.m().size() * pc.to.m().size()));
                    const Inclusion inc = theory_included(pc.from, pc.to, pc.sig, rank);
                    std::string d = describe_pair(pc) + " biasim=" + (g ? "present" : "absent") +
                                    " included=" + (inc.included ? "yes" : "no") + " rank=" + std::to_string(rank);
                    return {"", g == inc.included, d};
                  }});
  }
  return cs;
}

// 2: synthesized separators verify on every pair of criterion 1 without a bi-asimulation
std::vector<Case> separation(std::uint64_t seed) {
  std::vector<Case> cs;
  std::size_t absent = 0;
  for (std::size_t i = 0; i < kPairs; ++i) {
    const PairCase pc = make_pair(mix_seed(seed, "hm", i), 5);
    if (greatest_biasim(pc.from, pc.to)) continue;
    ++absent;
    cs.push_back({case_id("sep", i), [pc]() -> CaseResult {
                    const auto f = separating_formula(pc.from, pc.to);
                    if (!f) return {"", false, "no formula although the bi-asimulation is absent"};
                    const std::size_t rounds = refine(pc.from.model, pc.to.model).rounds;
                    const bool at_from = satisfies(pc.from, *f);
                    const bool at_to = satisfies(pc.to, *f);
                    return {"", at_from && !at_to,
                            render(*f) + " from=" + (at_from ? "true" : "false") + " to=" + (at_to ? "true" : "false") +
                                " rank=" + std::to_string(f->rank()) + " rounds=" + std::to_string(rounds)};
                  }});
  }
  cs.push_back({"sep-count", [absent]() -> CaseResult {
                  return {"", absent >= 50, std::to_string(absent) + " pairs without a bi-asimulation (need >= 50)"};
                }});
  return cs;
}

// 3: 50 pairs with a bi-asimulation, 500 random formulas of rank <= 4 each
std::vector<Case> preservation(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t j = 0; cs.size() < 50; ++j) {
    if (j > 100000) throw InternalError("too few pairs with a bi-asimulation");
    const PairCase pc = make_pair(mix_seed(seed, "pres", j), 5);
    if (!greatest_biasim(pc.from, pc.to)) continue;
    cs.push_back({case_id("pres", j), [pc, seed, j]() -> CaseResult {
                    Rng r(mix_seed(seed, "pres-f", j));
                    std::size_t bad = 0;
                    std::string first;
                    for (int k = 0; k < 500; ++k) {
                      const Formula f = random_formula(pc.sig, 4, r);
                      if (satisfies(pc.from, f) && !satisfies(pc.to, f)) {
                        if (bad++ == 0) first = render(f);
                      }
                    }
                    return {"", bad == 0,
                            describe_pair(pc) + " violations=" + std::to_string(bad) + (bad ? " first: " + first : "")};
                  }});
  }
  return cs;
}

// 4: w <= v and w |= f imply v |= f
std::vector<Case> monotonicity(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < 1000; ++i) {
    cs.push_back({case_id("mono", i), [seed, i]() -> CaseResult {
                    Rng r(mix_seed(seed, "mono", i));
                    const Signature sig = letters_up_to(1 + r.below(2));
                    const std::size_t n = 2 + r.below(4);
                    const KripkeModel m = random_model(n, sig, 0.3 + 0.4 * r.unit(), r.next());
                    std::vector<std::pair<std::size_t, std::size_t>> rel;
                    for (std::size_t a = 0; a < n; ++a) {
                      m.up(a).for_each([&](std::size_t b) {
                        if (a != b) rel.emplace_back(a, b);
                      });
                    }
                    std::size_t w = 0, v = 0;
                    if (!rel.empty()) std::tie(w, v) = rel[r.below(rel.size())];
                    const Formula f = random_formula(sig, 4, r);
                    Evaluator ev(m);
                    const bool ok = !ev.holds(w, f) || ev.holds(v, f);
                    return {"", ok, m.world(w) + "<=" + m.world(v) + " " + render(f)};
                  }});
  }
  return cs;
}

// 5: unravelling structure with maxlen 4
std::vector<Case> unravel_structure(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < 50; ++i) {
    cs.push_back({case_id("unravel", i), [seed, i]() -> CaseResult {
                    Rng r(mix_seed(seed, "unravel", i));
                    const Signature sig = letters_up_to(1 + r.below(2));
                    auto m = model_from(r, 4, sig);
                    const std::size_t root = r.below(m->size());
                    const std::size_t maxlen = 4;
                    const UnravelModel u = unravel(m, root, maxlen);
                    std::vector<std::string> problems;

                    auto again = normalize(u.model().to_raw(), NormalizeMode::strict);
                    if (!std::holds_alternative<KripkeModel>(again)) problems.push_back("order not a partial order");

                    std::size_t related = 0, bad_factor = 0;
                    for (std::size_t a = 0; a < u.nodes().size(); ++a) {
                      for (std::size_t b = 0; b < u.nodes().size(); ++b) {
                        if (!u.leq(a, b)) continue;
                        ++related;
                        try {
                          const Factorization f = zigzag_factor(u, a, b);
                          Chain x = f.prefix, y = f.prefix;
                          x.insert(x.end(), f.down.begin(), f.down.end());
                          y.insert(y.end(), f.up.begin(), f.up.end());
                          if (x != u.nodes()[a] || y != u.nodes()[b]) ++bad_factor;
                        } catch (const InternalError&) {
                          ++bad_factor;
                        }
                      }
                    }
                    if (bad_factor) problems.push_back(std::to_string(bad_factor) + " bad factorizations");
                    if (!valley_violations(u, 5).empty()) problems.push_back("rho path without valley shape");
                    const ValidationReport interior = check_b_relation_interior(u);
                    if (!interior.ok()) problems.push_back("interior B pairs: " + interior.describe());

                    const TheoryCheckReport th = b_theory_check(u, static_cast<int>(maxlen) - 1, Guard::length_plus_rank);
                    for (const auto& mm : th.mismatches) {
                      std::string p = "node " + u.node_id(mm.node) + " rank " + std::to_string(mm.rank) +
                                      (mm.versus_base ? " differs from its end world" : " differs from " + u.node_id(*mm.other_node));
                      if (mm.witness) p += " on " + render(*mm.witness);
                      problems.push_back(p);
                    }
                    const TheoryCheckReport th_h = b_theory_check(u, static_cast<int>(maxlen) - 1, Guard::length_plus_height);

                    std::ostringstream d;
                    d << "|W|=" << m->size() << " height=" << height(*m) << " nodes=" << u.nodes().size()
                      << " related=" << related << " guarded=" << th.checked
                      << " height-guard=" << (th_h.ok() ? "clean" : "mismatch");
                    for (const auto& p : problems) d << "; " << p;
                    return {"", problems.empty(), d.str()};
                  }});
  }
  return cs;
}

// 6: schema biconditionals on bracket models
std::vector<Case> schema_sweep(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < 30; ++i) {
    cs.push_back({case_id("schema", i), [seed, i]() -> CaseResult {
                    Rng r(mix_seed(seed, "schema", i));
                    const Signature sig = letters_up_to(1 + r.below(2));
                    auto m = model_from(r, 4, sig);
                    const KripkeModel bm = bracket(*m);
                    std::vector<std::pair<Formula, Formula>> args;
                    for (int k = 0; k < 20; ++k) {
                      Formula a = random_formula(bm.signature(), 2, r);
                      Formula b = random_formula(bm.signature(), 2, r);
                      args.emplace_back(std::move(a), std::move(b));
                    }
                    std::size_t cells = 0, bad = 0;
                    std::string first;
                    for (const auto& path : zigzag_paths(*m, 4)) {
                      for (std::size_t k = 1; k <= path.size(); ++k) {
                        for (const auto& [a, b] : args) {
                          ++cells;
                          if (!verify_schema(bm, path, k, a, b) && bad++ == 0) {
                            first = "k=" + std::to_string(k) + " alpha=" + render(a) + " beta=" + render(b);
                          }
                        }
                      }
                    }
                    return {"", bad == 0,
                            "|W|=" + std::to_string(m->size()) + " cells=" + std::to_string(cells) +
                                " failures=" + std::to_string(bad) + (bad ? " first: " + first : "")};
                  }});
  }
  return cs;
}

// 7: three characterizations of types agree
std::vector<Case> types(std::uint64_t seed) {
  std::vector<Case> cs;
  for (Direction dir : {Direction::successor, Direction::predecessor}) {
    const std::string tag = dir == Direction::successor ? "types-succ" : "types-pred";
    for (std::size_t i = 0; i < 200; ++i) {
      cs.push_back({case_id(tag, i), [seed, i, dir, tag]() -> CaseResult {
                      Rng r(mix_seed(seed, tag, i));
                      const Signature sig = letters_up_to(1 + r.below(2));
                      auto m = model_from(r, 5, sig);
                      const std::size_t w = r.below(m->size());
                      TypeQuery q{{}, {}, dir};
                      for (std::size_t k = r.below(4); k > 0; --k) q.gamma.push_back(random_formula(sig, 2, r));
                      for (std::size_t k = r.below(4); k > 0; --k) q.delta.push_back(random_formula(sig, 2, r));
                      const TypeVerdicts v = type_verdicts(*m, w, q);
                      bool ok = v.all_subsets == v.single_witness && v.single_witness == v.formula_test;
                      const auto wit = realize(*m, w, q);
                      ok = ok && wit.has_value() == v.single_witness;
                      auto yn = [](bool b) { return b ? "1" : "0"; };
                      return {"", ok,
                              std::string("subsets=") + yn(v.all_subsets) + " witness=" + yn(v.single_witness) +
                                  " formula=" + yn(v.formula_test) + " |G|=" + std::to_string(q.gamma.size()) +
                                  " |D|=" + std::to_string(q.delta.size())};
                    }});
    }
  }
  return cs;
}

// 8: canonical relation at saturating rank equals the fixpoint
std::vector<Case> canonical(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < 100; ++i) {
    cs.push_back({case_id("canon", i), [seed, i]() -> CaseResult {
                    const PairCase pc = make_pair(mix_seed(seed, "canon", i), 4);
                    const std::size_t n1 = pc.from.m().size(), n2 = pc.to.m().size();
                    const int rank = static_cast<int>(2 * n1 * n2);
                    const Asim fix = refine(pc.from.model, pc.to.model).survivors;
                    const Asim can = canonical_relation(pc.from.model, pc.to.model, pc.sig, rank);
                    return {"", fix == can,
                            describe_pair(pc) + " fixpoint=" + std::to_string(fix.size()) +
                                " canonical=" + std::to_string(can.size()) + " rank=" + std::to_string(rank)};
                  }});
  }
  return cs;
}

// 9: first-order evaluation of the translation agrees with the checker
std::vector<Case> fol_equiv(std::uint64_t seed) {
  std::vector<Case> cs;
  for (std::size_t i = 0; i < 300; ++i) {
    cs.push_back({case_id("fol", i), [seed, i]() -> CaseResult {
                    Rng r(mix_seed(seed, "fol", i));
                    const Signature sig = letters_up_to(1 + r.below(2));
                    auto m = model_from(r, 5, sig);
                    const Formula f = random_formula(sig, 4, r);
                    const FOFormula g = translate(f, "x");
                    const WorldSet truth = truth_set(*m, f);
                    std::size_t bad = 0;
                    for (std::size_t w = 0; w < m->size(); ++w) {
                      if (eval_fo(*m, g, {{"x", w}}) != truth.test(w)) ++bad;
                    }
                    return {"", bad == 0, "|W|=" + std::to_string(m->size()) + " " + render(f) +
                                              " disagreements=" + std::to_string(bad)};
                  }});
  }
  return cs;
}

std::vector<int> criteria_of(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> m{
      {"hennessy-milner", {1, 2, 8}}, {"preservation", {3}}, {"monotonicity", {4}}, {"unravel-structure", {5}},
      {"schemas", {6}},               {"types", {7}},        {"fol-equiv", {9}},    {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9}}};
  auto it = m.find(suite);
  if (it == m.end()) throw InvalidArgument("unknown suite '" + suite + "'");
  return it->second;
}

}  // namespace

std::vector<Case> criterion_cases(int k, std::uint64_t seed) {
  switch (k) {
    case 1:
      return hennessy_milner(seed);
    case 2:
      return separation(seed);
    case 3:
      return preservation(seed);
    case 4:
      return monotonicity(seed);
    case 5:
      return unravel_structure(seed);
    case 6:
      return schema_sweep(seed);
    case 7:
      return types(seed);
    case 8:
      return canonical(seed);
    case 9:
      return fol_equiv(seed);
    default:
      throw InvalidArgument("criterion " + std::to_string(k) + " does not exist");
  }
}

SuiteReport run_criterion(int k, std::uint64_t seed, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r{"criterion-" + std::to_string(k), run_cases(criterion_cases(k, seed), threads), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Case> all;
  for (int k : criteria_of(name)) {
    auto cs = criterion_cases(k, seed);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  SuiteReport r{name, run_cases(all, threads), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void print_report(std::ostream& out, const SuiteReport& r) {
  for (const auto& c : r.cases) out << "CASE " << c.id << ' ' << (c.pass ? "PASS" : "FAIL") << ' ' << c.detail << '\n';
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  out << "TOTAL " << r.suite << " cases=" << r.cases.size() << " pass=" << r.cases.size() - r.failures()
      << " fail=" << r.failures() << " seconds=" << secs << '\n';
}

}  // namespace bil
