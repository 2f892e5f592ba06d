#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "typesem/errors.hpp"
#include "typesem/verdict.hpp"

using namespace typesem;

namespace {

// Budget precedence, weakest first: built-in defaults, the TYPESEM_BUDGETS
// environment variable, the model file, the --budget flag. The closure is
// built under the effective budgets, so overrides are applied before the
// model is constructed.
ActionModel load_with_budgets(const std::string &path,
                              const std::string &budget_flag) {
  std::ifstream in(path);
  if (!in)
    throw SchemaError(path + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw SchemaError(path + ": " + e.what());
  }
  Budgets budgets;
  if (const char *env = std::getenv("TYPESEM_BUDGETS"))
    budgets = budgets_from_text(env, budgets);
  if (j.is_object() && j.contains("budgets"))
    budgets = budgets_from_json(j["budgets"], budgets, "model.budgets");
  if (!budget_flag.empty())
    budgets = budgets_from_text(budget_flag, budgets);
  if (j.is_object())
    j["budgets"] = budgets_to_json(budgets);
  return model_from_json(j);
}

std::string outcome_line(const Decision &d) {
  std::string s;
  switch (d.outcome) {
  case Decision::Outcome::Yes:
    s = "Yes";
    break;
  case Decision::Outcome::No:
    s = "No";
    break;
  case Decision::Outcome::Unknown:
    s = "Unknown";
    break;
  }
  if (!d.note.empty())
    s += " (" + d.note + ")";
  return s;
}

int run(int argc, char **argv) {
  CLI::App app{"dichotomy analysis of inverse semigroup actions through "
               "their type semigroup"};
  app.require_subcommand(1);

  std::string model_path;
  std::string budget_flag;
  std::string f_arg, h_arg;
  std::string dot_path;
  int k = 2, l = 1;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("model", model_path, "model JSON file")->required();
    cmd->add_option("--budget", budget_flag,
                    "override search budgets, e.g. depth=2,len=4,mult=4,"
                    "nmax=8 (any subset of keys)");
  };

  CLI::App *analyze_cmd = app.add_subcommand(
      "analyze", "run the hypothesis gates and the dichotomy verdict");
  add_common(analyze_cmd);

  CLI::App *compare_cmd = app.add_subcommand(
      "compare", "decide dynamical subequivalence F below H");
  add_common(compare_cmd);
  compare_cmd->add_option("F", f_arg, "left function, e.g. '[2,0,0]'")
      ->required();
  compare_cmd->add_option("H", h_arg, "right function")->required();

  CLI::App *paradox_cmd = app.add_subcommand(
      "paradox", "decide whether k copies of F fit below l copies");
  add_common(paradox_cmd);
  paradox_cmd->add_option("F", f_arg, "sample function")->required();
  paradox_cmd->add_option("k", k, "left multiplicity")->required();
  paradox_cmd->add_option("l", l, "right multiplicity")->required();

  CLI::App *tarski_cmd = app.add_subcommand(
      "tarski", "state versus paradox dichotomy on one function");
  add_common(tarski_cmd);
  tarski_cmd->add_option("F", f_arg, "sample function")->required();

  CLI::App *state_cmd = app.add_subcommand(
      "state", "search for an invariant state normalized at F0");
  add_common(state_cmd);
  state_cmd->add_option("F0", f_arg, "normalization function")->required();

  CLI::App *orbits_cmd =
      app.add_subcommand("orbits", "emit the orbit graph of the action");
  add_common(orbits_cmd);
  orbits_cmd->add_option("--dot", dot_path, "also write Graphviz DOT here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  ActionModel model = load_with_budgets(model_path, budget_flag);

  if (*analyze_cmd) {
    Verdict v = analyze(model);
    std::cout << dump_report(verdict_to_json(model, v));
    std::cerr << verdict_summary(model, v);
    return 0;
  }
  if (*compare_cmd) {
    LscFun F = lsc_from_text(model.space, f_arg);
    LscFun H = lsc_from_text(model.space, h_arg);
    Decision d = decide_subequiv(F, H, model, model.budgets);
    Json j = Json::object();
    j["F"] = lsc_to_json(F);
    j["H"] = lsc_to_json(H);
    j["decision"] = decision_to_json(d);
    std::cout << dump_report(j);
    std::cerr << "compare: " << outcome_line(d) << "\n";
    return 0;
  }
  if (*paradox_cmd) {
    LscFun F = lsc_from_text(model.space, f_arg);
    Decision d = is_kl_paradoxical(F, k, l, model);
    Json j = Json::object();
    j["k"] = k;
    j["l"] = l;
    j["on"] = lsc_to_json(F);
    j["decision"] = decision_to_json(d);
    std::cout << dump_report(j);
    std::cerr << "paradox (" << k << "," << l << "): " << outcome_line(d)
              << "\n";
    return 0;
  }
  if (*tarski_cmd) {
    LscFun F = lsc_from_text(model.space, f_arg);
    TarskiResult r = tarski_test(F, model);
    std::cout << dump_report(tarski_to_json(r));
    std::cerr << "tarski: " << r.note << "\n";
    return 0;
  }
  if (*state_cmd) {
    LscFun F = lsc_from_text(model.space, f_arg);
    StateOutcome st = find_invariant_state(model, F);
    Json j = Json::object();
    if (const auto *w = std::get_if<StateWitness>(&st)) {
      j["found"] = true;
      j["state"] = state_to_json(*w);
      std::cerr << "state: found\n";
    } else {
      j["found"] = false;
      j["infeasibility"] = infeasibility_to_json(std::get<InfeasibilityCert>(st));
      std::cerr << "state: none exists (certified)\n";
    }
    std::cout << dump_report(j);
    return 0;
  }
  if (*orbits_cmd) {
    OrbitGraph g = build_orbit_graph(model);
    if (!dot_path.empty()) {
      std::ofstream out(dot_path);
      if (!out)
        throw SchemaError(dot_path + ": cannot open for writing");
      out << orbit_graph_dot(g);
    }
    Json j = Json::object();
    j["depth"] = g.depth;
    j["nodes"] = g.nodes;
    Json edges = Json::array();
    for (const OrbitGraph::Edge &e : g.edges) {
      Json je = Json::object();
      je["from"] = g.nodes[e.from];
      je["to"] = g.nodes[e.to];
      je["mover"] = e.mover;
      edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    std::cout << dump_report(j);
    std::cerr << "orbit graph: " << g.nodes.size() << " nodes, "
              << g.edges.size() << " edges\n";
    return 0;
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const InternalCheckError &e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const SchemaError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
