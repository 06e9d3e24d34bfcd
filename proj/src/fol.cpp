#include "bil/fol.hpp"

#include <cctype>
#include <cstdio>
#include <functional>
#include <sstream>

#include "bil/error.hpp"

namespace bil {

FOFormula FOFormula::falsum() {
  static const FOFormula f(std::make_shared<const Node>(Node{FOKind::falsum, {}, {}, {}, {}, nullptr, nullptr}));
  return f;
}

FOFormula FOFormula::pred(std::string letter, Term t) {
  return FOFormula(std::make_shared<const Node>(Node{FOKind::pred, std::move(letter), std::move(t), {}, {}, nullptr, nullptr}));
}

FOFormula FOFormula::leq(Term a, Term b) {
  return FOFormula(std::make_shared<const Node>(Node{FOKind::leq, {}, std::move(a), std::move(b), {}, nullptr, nullptr}));
}

FOFormula FOFormula::eq(Term a, Term b) {
  return FOFormula(std::make_shared<const Node>(Node{FOKind::eq, {}, std::move(a), std::move(b), {}, nullptr, nullptr}));
}

FOFormula FOFormula::neg(FOFormula f) {
  return FOFormula(std::make_shared<const Node>(
      Node{FOKind::neg, {}, {}, {}, {}, std::make_shared<const FOFormula>(std::move(f)), nullptr}));
}

FOFormula FOFormula::binary(FOKind k, FOFormula a, FOFormula b) {
  return FOFormula(std::make_shared<const Node>(Node{k, {}, {}, {}, {}, std::make_shared<const FOFormula>(std::move(a)),
                                                     std::make_shared<const FOFormula>(std::move(b))}));
}

FOFormula FOFormula::conj(FOFormula a, FOFormula b) { return binary(FOKind::conj, std::move(a), std::move(b)); }
FOFormula FOFormula::disj(FOFormula a, FOFormula b) { return binary(FOKind::disj, std::move(a), std::move(b)); }
FOFormula FOFormula::impl(FOFormula a, FOFormula b) { return binary(FOKind::impl, std::move(a), std::move(b)); }

FOFormula FOFormula::forall(std::string var, FOFormula body) {
  return FOFormula(std::make_shared<const Node>(
      Node{FOKind::forall, {}, {}, {}, std::move(var), std::make_shared<const FOFormula>(std::move(body)), nullptr}));
}

FOFormula FOFormula::exists(std::string var, FOFormula body) {
  return FOFormula(std::make_shared<const Node>(
      Node{FOKind::exists, {}, {}, {}, std::move(var), std::make_shared<const FOFormula>(std::move(body)), nullptr}));
}

bool operator==(const FOFormula& x, const FOFormula& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind || a.letter != b.letter || !(a.a == b.a) || !(a.b == b.b) || a.var != b.var) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) || static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) {
    return false;
  }
  return (!a.lhs || *a.lhs == *b.lhs) && (!a.rhs || *a.rhs == *b.rhs);
}

std::set<std::string> FOFormula::free_vars() const {
  std::set<std::string> out;
  auto term = [&](const Term& t) {
    if (!t.constant && !t.name.empty()) out.insert(t.name);
  };
  switch (kind()) {
    case FOKind::falsum:
      break;
    case FOKind::pred:
      term(a());
      break;
    case FOKind::leq:
    case FOKind::eq:
      term(a());
      term(b());
      break;
    case FOKind::neg:
      out = lhs().free_vars();
      break;
    case FOKind::conj:
    case FOKind::disj:
    case FOKind::impl: {
      out = lhs().free_vars();
      auto r = rhs().free_vars();
      out.insert(r.begin(), r.end());
      break;
    }
    case FOKind::forall:
    case FOKind::exists:
      out = lhs().free_vars();
      out.erase(var());
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

FOFormula st(const Formula& f, const Term& x, std::size_t depth, const std::string& avoid) {
  switch (f.kind()) {
    case Connective::bottom:
      return FOFormula::falsum();
    case Connective::atom:
      return FOFormula::pred(f.letter(), x);
    case Connective::conj:
      return FOFormula::conj(st(f.lhs(), x, depth, avoid), st(f.rhs(), x, depth, avoid));
    case Connective::disj:
      return FOFormula::disj(st(f.lhs(), x, depth, avoid), st(f.rhs(), x, depth, avoid));
    case Connective::impl:
    case Connective::coimpl: {
      std::size_t d = depth + 1;
      std::string y = "y" + std::to_string(d);
      if (y == avoid) y = "y" + std::to_string(d) + "_";
      const Term ty = Term::var(y);
      FOFormula a = st(f.lhs(), ty, d, avoid);
      FOFormula b = st(f.rhs(), ty, d, avoid);
      if (f.kind() == Connective::impl) {
        return FOFormula::forall(y, FOFormula::impl(FOFormula::leq(x, ty), FOFormula::impl(a, b)));
      }
      return FOFormula::exists(y, FOFormula::conj(FOFormula::leq(ty, x), FOFormula::conj(a, FOFormula::neg(b))));
    }
  }
  throw InternalError("unknown connective");
}

}  // namespace

FOFormula translate(const Formula& f, const Term& x) { return st(f, x, 0, x.constant ? std::string() : x.name); }

bool eval_fo(const KripkeModel& m, const FOFormula& g, const std::map<std::string, std::size_t>& env0) {
  std::map<std::string, std::size_t> env = env0;
  auto val = [&](const Term& t) -> std::size_t {
    if (t.constant) return m.index(t.name);
    auto it = env.find(t.name);
    if (it == env.end()) throw InvalidArgument("unbound variable " + t.name);
    return it->second;
  };
  std::function<bool(const FOFormula&)> ev = [&](const FOFormula& h) -> bool {
    switch (h.kind()) {
      case FOKind::falsum:
        return false;
      case FOKind::pred:
        return m.valuation(h.letter()).test(val(h.a()));
      case FOKind::leq:
        return m.leq(val(h.a()), val(h.b()));
      case FOKind::eq:
        return val(h.a()) == val(h.b());
      case FOKind::neg:
        return !ev(h.lhs());
      case FOKind::conj:
        return ev(h.lhs()) && ev(h.rhs());
      case FOKind::disj:
        return ev(h.lhs()) || ev(h.rhs());
      case FOKind::impl:
        return !ev(h.lhs()) || ev(h.rhs());
      case FOKind::forall:
      case FOKind::exists: {
        const bool all = h.kind() == FOKind::forall;
        auto saved = env.find(h.var()) != env.end() ? std::optional<std::size_t>(env[h.var()]) : std::nullopt;
        bool out = all;
        for (std::size_t w = 0; w < m.size() && out == all; ++w) {
          env[h.var()] = w;
          out = ev(h.lhs());
        }
        if (saved) {
          env[h.var()] = *saved;
        } else {
          env.erase(h.var());
        }
        return out;
      }
    }
    throw InternalError("unknown first-order node");
  };
  return ev(g);
}

std::string to_string(const FOFormula& f) {
  auto term = [](const Term& t) { return t.constant ? "'" + t.name + "'" : t.name; };
  switch (f.kind()) {
    case FOKind::falsum:
      return "false";
    case FOKind::pred:
      return "P_" + f.letter() + "(" + term(f.a()) + ")";
    case FOKind::leq:
      return term(f.a()) + "<=" + term(f.b());
    case FOKind::eq:
      return term(f.a()) + "=" + term(f.b());
    case FOKind::neg:
      return "~" + to_string(f.lhs());
    case FOKind::conj:
      return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
    case FOKind::disj:
      return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
    case FOKind::impl:
      return "(" + to_string(f.lhs()) + " -> " + to_string(f.rhs()) + ")";
    case FOKind::forall:
      return "forall " + f.var() + ". " + to_string(f.lhs());
    case FOKind::exists:
      return "exists " + f.var() + ". " + to_string(f.lhs());
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<std::string, FOFormula>> frame_axioms(const Signature& sig) {
  const Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  using F = FOFormula;
  std::vector<std::pair<std::string, FOFormula>> ax;
  ax.emplace_back("reflexivity", F::forall("x", F::leq(x, x)));
  ax.emplace_back("transitivity",
                  F::forall("x", F::forall("y", F::forall("z", F::impl(F::conj(F::leq(x, y), F::leq(y, z)), F::leq(x, z))))));
  ax.emplace_back("antisymmetry",
                  F::forall("x", F::forall("y", F::impl(F::conj(F::leq(x, y), F::leq(y, x)), F::eq(x, y)))));
  for (const auto& l : sig) {
    ax.emplace_back("monotone_" + predicate_name(l),
                    F::forall("x", F::forall("y", F::impl(F::conj(F::leq(x, y), F::pred(l, x)), F::pred(l, y)))));
  }
  return ax;
}

void collect_vars(const FOFormula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FOKind::forall:
    case FOKind::exists:
      out.insert(f.var());
      collect_vars(f.lhs(), out);
      break;
    case FOKind::neg:
      collect_vars(f.lhs(), out);
      break;
    case FOKind::conj:
    case FOKind::disj:
    case FOKind::impl:
      collect_vars(f.lhs(), out);
      collect_vars(f.rhs(), out);
      break;
    default: {
      auto fv = f.free_vars();
      out.insert(fv.begin(), fv.end());
    }
  }
}

void fill_variables(FOProblem& p) {
  std::set<std::string> vs;
  for (const auto& [n, a] : p.axioms) collect_vars(a, vs);
  collect_vars(p.goal, vs);
  p.variables.assign(vs.begin(), vs.end());
}

}  // namespace

FOProblem make_problem(const Formula& f, const Signature& sig) {
  for (const auto& l : letters(f)) {
    if (!sig.contains(l)) throw UnknownLetter(l);
  }
  FOProblem p{sig.letters(), {}, frame_axioms(sig), FOFormula::forall("x", translate(f, "x")), {}};
  fill_variables(p);
  return p;
}

FOProblem make_grounded_problem(const KripkeModel& m, const std::string& w, const Formula& f) {
  m.index(w);
  for (const auto& l : letters(f)) {
    if (!m.signature().contains(l)) throw UnknownLetter(l);
  }
  using F = FOFormula;
  FOProblem p{m.signature().letters(), m.worlds(), frame_axioms(m.signature()),
              translate(f, Term::world(w)), {}};
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      p.axioms.emplace_back("distinct", F::neg(F::eq(Term::world(m.world(i)), Term::world(m.world(j)))));
    }
  }
  FOFormula closure = F::falsum();
  for (std::size_t i = n; i-- > 0;) {
    FOFormula e = F::eq(Term::var("x"), Term::world(m.world(i)));
    closure = i + 1 == n ? e : F::disj(e, closure);
  }
  p.axioms.emplace_back("domain", F::forall("x", closure));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      FOFormula a = F::leq(Term::world(m.world(i)), Term::world(m.world(j)));
      p.axioms.emplace_back("order", m.leq(i, j) ? a : F::neg(a));
    }
  }
  for (const auto& l : m.signature()) {
    for (std::size_t i = 0; i < n; ++i) {
      FOFormula a = F::pred(l, Term::world(m.world(i)));
      p.axioms.emplace_back("valuation", m.valuation(l).test(i) ? a : F::neg(a));
    }
  }
  fill_variables(p);
  return p;
}

std::string predicate_name(const std::string& letter) {
  std::string out = "p_";
  for (char c : letter) {
    if (c == '_') {
      out += "__";
    } else if (c == '+') {
      out += "_p";
    } else if (c == '-') {
      out += "_m";
    } else {
      out += c;
    }
  }
  return out;
}

std::string constant_name(const std::string& world) {
  std::string out = "w_";
  for (unsigned char c : world) {
    if (c == '_') {
      out += "__";
    } else if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_x%02X", c);
      out += buf;
    }
  }
  return out;
}

namespace {

std::string tptp_var(const std::string& v) {
  std::string out = v;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string tptp_term(const Term& t) { return t.constant ? constant_name(t.name) : tptp_var(t.name); }

std::string tptp(const FOFormula& f) {
  switch (f.kind()) {
    case FOKind::falsum:
      return "$false";
    case FOKind::pred:
      return predicate_name(f.letter()) + "(" + tptp_term(f.a()) + ")";
    case FOKind::leq:
      return "leq(" + tptp_term(f.a()) + "," + tptp_term(f.b()) + ")";
    case FOKind::eq:
      return tptp_term(f.a()) + " = " + tptp_term(f.b());
    case FOKind::neg:
      return "~ (" + tptp(f.lhs()) + ")";
    case FOKind::conj:
      return "(" + tptp(f.lhs()) + " & " + tptp(f.rhs()) + ")";
    case FOKind::disj:
      return "(" + tptp(f.lhs()) + " | " + tptp(f.rhs()) + ")";
    case FOKind::impl:
      return "(" + tptp(f.lhs()) + " => " + tptp(f.rhs()) + ")";
    case FOKind::forall:
      return "![" + tptp_var(f.var()) + "]: " + tptp(f.lhs());
    case FOKind::exists:
      return "?[" + tptp_var(f.var()) + "]: " + tptp(f.lhs());
  }
  return "";
}

std::string smt_term(const Term& t) { return t.constant ? constant_name(t.name) : t.name; }

std::string smt(const FOFormula& f) {
  switch (f.kind()) {
    case FOKind::falsum:
      return "false";
    case FOKind::pred:
      return "(" + predicate_name(f.letter()) + " " + smt_term(f.a()) + ")";
    case FOKind::leq:
      return "(leq " + smt_term(f.a()) + " " + smt_term(f.b()) + ")";
    case FOKind::eq:
      return "(= " + smt_term(f.a()) + " " + smt_term(f.b()) + ")";
    case FOKind::neg:
      return "(not " + smt(f.lhs()) + ")";
    case FOKind::conj:
      return "(and " + smt(f.lhs()) + " " + smt(f.rhs()) + ")";
    case FOKind::disj:
      return "(or " + smt(f.lhs()) + " " + smt(f.rhs()) + ")";
    case FOKind::impl:
      return "(=> " + smt(f.lhs()) + " " + smt(f.rhs()) + ")";
    case FOKind::forall:
      return "(forall ((" + f.var() + " W)) " + smt(f.lhs()) + ")";
    case FOKind::exists:
      return "(exists ((" + f.var() + " W)) " + smt(f.lhs()) + ")";
  }
  return "";
}

}  // namespace

std::string emit(const FOProblem& p, FOFormat fmt) {
  std::ostringstream out;
  if (fmt == FOFormat::tptp) {
    std::map<std::string, int> seen;
    for (const auto& [name, ax] : p.axioms) {
      const int k = seen[name]++;
      const std::string id = k == 0 ? name : name + "_" + std::to_string(k);
      out << "fof(" << id << ", axiom, " << tptp(ax) << ").\n";
    }
    out << "fof(goal, conjecture, " << tptp(p.goal) << ").\n";
  } else {
    out << "; unsat means the goal follows from the axioms\n";
    out << "(set-logic UF)\n(declare-sort W 0)\n(declare-fun leq (W W) Bool)\n";
    for (const auto& l : p.predicates) out << "(declare-fun " << predicate_name(l) << " (W) Bool)\n";
    for (const auto& c : p.constants) out << "(declare-const " << constant_name(c) << " W)\n";
    for (const auto& [name, ax] : p.axioms) out << "; " << name << "\n(assert " << smt(ax) << ")\n";
    out << "; negated goal\n(assert (not " << smt(p.goal) << "))\n(check-sat)\n";
  }
  return out.str();
}

}  // namespace bil
