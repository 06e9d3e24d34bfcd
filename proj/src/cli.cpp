#include "bil/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <optional>
#include <sstream>

#include "bil/biasim.hpp"
#include "bil/error.hpp"
#include "bil/fol.hpp"
#include "bil/model_io.hpp"
#include "bil/semantics.hpp"
#include "bil/suites.hpp"
#include "bil/unravel.hpp"

namespace bil {

namespace {

struct Loaded {
  std::shared_ptr<const KripkeModel> model;
  std::optional<std::string> point;
};

Loaded load(const std::string& path, bool close) {
  RawModel raw = load_raw(path);
  auto res = normalize(raw, close ? NormalizeMode::close : NormalizeMode::strict);
  if (auto* rep = std::get_if<ValidationReport>(&res)) {
    std::string d = rep->describe();
    while (!d.empty() && d.back() == '\n') d.pop_back();
    throw InvalidArgument(path + ": " + d);
  }
  return {std::make_shared<const KripkeModel>(std::move(std::get<KripkeModel>(res))), raw.point};
}

std::size_t pick_world(const Loaded& l, const std::string& flag, const std::string& what) {
  if (!flag.empty()) return l.model->index(flag);
  if (l.point) return l.model->index(*l.point);
  throw InvalidArgument(what + " has no point; pass a world");
}

std::vector<std::string> split_letters(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for bi-intuitionistic logic over finite Kripke models", "bilwb"};
  app.require_subcommand(1);
  bool close = false;
  app.add_flag("--close", close, "close valuations upward instead of rejecting non-monotone input");

  std::string model, model2, world, world2, formula_text, format = "tptp", letters_text, suite = "all";
  std::size_t maxlen = 0, max_nodes = UnravelLimits{}.max_nodes, n_worlds = 3;
  int rank = 2, check_rank = -1;
  std::uint64_t seed = 0;
  double density = 0.4;
  unsigned threads = 0;
  bool separate = false, minimize = false;
  std::string guard = "rank";

  auto* check = app.add_subcommand("check", "evaluate a formula at a world");
  check->add_option("model", model, "model file")->required();
  check->add_option("-w,--world", world, "world (default: the file's point)");
  check->add_option("-f,--formula", formula_text, "formula")->required();

  auto* bisim = app.add_subcommand("bisim", "greatest bi-asimulation between two pointed models");
  bisim->add_option("from", model, "first model file")->required();
  bisim->add_option("to", model2, "second model file")->required();
  bisim->add_option("--w1", world, "point of the first model");
  bisim->add_option("--w2", world2, "point of the second model");
  bisim->add_flag("--separate", separate, "print a separating formula when no bi-asimulation exists");
  bisim->add_flag("--minimize", minimize, "drop conjuncts and disjuncts greedily");

  auto* sep = app.add_subcommand("separate", "formula true at the first point and false at the second");
  sep->add_option("from", model, "first model file")->required();
  sep->add_option("to", model2, "second model file")->required();
  sep->add_option("--w1", world, "point of the first model");
  sep->add_option("--w2", world2, "point of the second model");
  sep->add_flag("--minimize", minimize, "drop conjuncts and disjuncts greedily");

  auto* unr = app.add_subcommand("unravel", "truncated bi-unravelling as a model file");
  unr->add_option("model", model, "model file")->required();
  unr->add_option("-w,--world", world, "root (default: the file's point)");
  unr->add_option("--maxlen", maxlen, "longest chain")->required()->check(CLI::PositiveNumber);
  unr->add_option("--max-nodes", max_nodes, "node cap");
  unr->add_option("--check-rank", check_rank, "also compare theories up to this rank (report on stderr)");
  unr->add_option("--guard", guard, "guard for --check-rank")->check(CLI::IsMember({"rank", "height"}));

  auto* brk = app.add_subcommand("bracket", "bracket model as a model file");
  brk->add_option("model", model, "model file")->required();

  auto* tr = app.add_subcommand("translate", "standard translation as a TPTP or SMT-LIB2 problem");
  tr->add_option("-f,--formula", formula_text, "formula")->required();
  tr->add_option("--format", format, "tptp or smtlib2")->check(CLI::IsMember({"tptp", "smtlib2"}));
  tr->add_option("--signature", letters_text, "comma-separated letters (default: those of the formula)");
  tr->add_option("--model", model, "ground over this model instead of stating validity");
  tr->add_option("-w,--world", world, "world for the grounded goal (default: the file's point)");

  auto* th = app.add_subcommand("theory", "rank-bounded theory of a pointed model");
  th->add_option("model", model, "model file")->required();
  th->add_option("-w,--world", world, "world (default: the file's point)");
  th->add_option("--rank", rank, "rank bound")->check(CLI::NonNegativeNumber);
  th->add_option("--signature", letters_text, "comma-separated letters (default: the model's)");

  auto* rnd = app.add_subcommand("random", "seeded random model");
  rnd->add_option("--worlds", n_worlds, "number of worlds")->check(CLI::PositiveNumber);
  rnd->add_option("--letters", letters_text, "comma-separated letters")->default_str("p,q");
  rnd->add_option("--density", density, "edge probability")->check(CLI::Range(0.0, 1.0));
  rnd->add_option("--seed", seed, "seed");

  auto* ver = app.add_subcommand("verify", "run a property suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  ver->add_option("--suite", suite, "suite name or all")->check(CLI::IsMember(suites));
  ver->add_option("--seed", seed, "seed");
  ver->add_option("--threads", threads, "worker threads (0: all cores)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*check) {
      const Loaded l = load(model, close);
      const std::size_t w = pick_world(l, world, model);
      const bool v = satisfies(*l.model, w, parse(formula_text));
      out << (v ? "true" : "false") << '\n';
      return v ? exit_ok : exit_false;
    }
    if (*bisim || *sep) {
      const Loaded a = load(model, close);
      const Loaded b = load(model2, close);
      const PointedModel from(a.model, pick_world(a, world, model));
      const PointedModel to(b.model, pick_world(b, world2, model2));
      if (*sep || separate) {
        if (auto f = separating_formula(from, to, minimize)) {
          out << render(*f) << '\n';
          return exit_false;
        }
        if (*sep) {
          err << "a bi-asimulation exists; no formula separates the points\n";
          return exit_false;
        }
      }
      if (auto r = greatest_biasim(from, to)) {
        out << asim_to_json(*r);
        return exit_ok;
      }
      err << "no bi-asimulation from " << from.point_name() << " to " << to.point_name() << '\n';
      return exit_false;
    }
    if (*unr) {
      const Loaded l = load(model, close);
      const std::size_t root = pick_world(l, world, model);
      UnravelLimits lim;
      lim.max_nodes = max_nodes;
      const UnravelModel u = unravel(l.model, root, maxlen, lim);
      out << model_to_json(u.model(), u.world_of(0));
      if (check_rank >= 0) {
        const TheoryCheckReport r =
            b_theory_check(u, check_rank, guard == "rank" ? Guard::length_plus_rank : Guard::length_plus_height);
        err << "checked " << r.checked << " (node, rank) cells, " << r.mismatches.size() << " mismatches\n";
        for (const auto& m : r.mismatches) {
          err << "  node " << u.node_id(m.node) << " rank " << m.rank << " differs from "
              << (m.versus_base ? u.base().world(u.end(m.node)) + " in the base" : u.node_id(*m.other_node));
          if (m.witness) err << " on " << render(*m.witness);
          err << '\n';
        }
        return r.ok() ? exit_ok : exit_suite_fail;
      }
      return exit_ok;
    }
    if (*brk) {
      const Loaded l = load(model, close);
      out << model_to_json(bracket(*l.model), l.point ? std::optional(l.model->index(*l.point)) : std::nullopt);
      return exit_ok;
    }
    if (*tr) {
      const Formula f = parse(formula_text);
      auto problem = [&] {
        if (model.empty()) {
          return make_problem(f, letters_text.empty() ? letters(f) : Signature(split_letters(letters_text)));
        }
        const Loaded l = load(model, close);
        return make_grounded_problem(*l.model, l.model->world(pick_world(l, world, model)), f);
      };
      const FOProblem p = problem();
      out << emit(p, format == "tptp" ? FOFormat::tptp : FOFormat::smtlib2);
      return exit_ok;
    }
    if (*th) {
      const Loaded l = load(model, close);
      const PointedModel pm(l.model, pick_world(l, world, model));
      const Signature sig = letters_text.empty() ? l.model->signature() : Signature(split_letters(letters_text));
      const Theory t = theory(pm, sig, rank, {});
      for (const auto& f : t.positive) out << "+ " << render(f) << '\n';
      for (const auto& f : t.negative) out << "- " << render(f) << '\n';
      return exit_ok;
    }
    if (*rnd) {
      const Signature sig(split_letters(letters_text.empty() ? "p,q" : letters_text));
      out << model_to_json(random_model(n_worlds, sig, density, seed));
      return exit_ok;
    }
    if (*ver) {
      const SuiteReport r = run_suite(suite, seed, threads);
      print_report(out, r);
      return r.ok() ? exit_ok : exit_suite_fail;
    }
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_suite_fail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_usage;
}

}  // namespace bil
