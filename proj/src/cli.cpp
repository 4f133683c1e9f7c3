#include "fta/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "fta/automaton.hpp"
#include "fta/error.hpp"
#include "fta/essential.hpp"
#include "fta/reduce.hpp"
#include "fta/verify.hpp"

namespace fta {
namespace {

using nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

struct Config {
  bool json_mode = false;
  std::uint64_t max_assignments = kDefaultMaxAssignments;
  std::string automaton_path;
  std::string term_inline;
  std::string term_path;
  std::string assign;
  bool trace = false;
  bool partial = false;
  std::string position;
  std::string set;
  std::string wrt;
  bool verify = false;
  bool random = false;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::string dump_dir;
};

// What a command produced: human lines plus the JSON document.
struct Outcome {
  int code = kExitOk;
  std::vector<std::string> lines;
  json doc;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Automaton load_automaton(const std::string& path) { return parse_automaton(read_file(path)); }

bool has_term(const Config& cfg) { return !cfg.term_inline.empty() || !cfg.term_path.empty(); }

Term load_term(const Config& cfg, const Signature& sig) {
  if (!cfg.term_path.empty()) return parse_term(read_file(cfg.term_path), sig);
  return parse_term(cfg.term_inline, sig);
}

json inputs_json(const Config& cfg) {
  json j = json::object();
  if (!cfg.automaton_path.empty()) j["automaton"] = cfg.automaton_path;
  if (!cfg.term_inline.empty()) j["term"] = cfg.term_inline;
  if (!cfg.term_path.empty()) j["term_file"] = cfg.term_path;
  j["max_assignments"] = cfg.max_assignments;
  return j;
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [v, c] : a.bindings()) j[variable_name(v)] = c;
  return j;
}

json witness_json(const Automaton& aut, const WitnessPair& w) {
  return json{{"position", w.position.to_string()},
              {"gamma1", assignment_json(w.gamma1)},
              {"gamma2", assignment_json(w.gamma2)},
              {"subtree_states", {aut.state_name(w.sub_states.first), aut.state_name(w.sub_states.second)}},
              {"root_states", {aut.state_name(w.root_states.first), aut.state_name(w.root_states.second)}}};
}

void witness_lines(const Automaton& aut, const WitnessPair& w, std::vector<std::string>& lines) {
  lines.push_back("  gamma1: " + w.gamma1.to_string());
  lines.push_back("  gamma2: " + w.gamma2.to_string());
  lines.push_back("  subtree: " + aut.state_name(w.sub_states.first) + " / " + aut.state_name(w.sub_states.second));
  lines.push_back("  root: " + aut.state_name(w.root_states.first) + " / " + aut.state_name(w.root_states.second));
}

std::string vars_text(const VarSet& vs) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : " ") + variable_name(v);
  return s.empty() ? "∅" : s;
}

json positions_json(const PositionSet& ps) {
  json j = json::array();
  for (const auto& p : ps) j.push_back(p.to_string());
  return j;
}

Outcome cmd_check(const Config& cfg) {
  Outcome o;
  const auto src = parse_automaton_source(read_file(cfg.automaton_path));
  const auto defects = validate(src.signature, src.definition);
  o.doc["report"] = {{"defects", defects}};
  if (defects.empty()) {
    const auto aut = Automaton::build(src.signature, src.definition);
    o.lines.push_back("complete deterministic: " + std::to_string(aut.state_count()) + " states, " +
                      std::to_string(aut.rule_count()) + " rules");
    o.doc["verdict"] = "complete deterministic";
    o.doc["report"]["states"] = aut.state_count();
    o.doc["report"]["rules"] = aut.rule_count();
  } else {
    o.code = kExitNegative;
    o.lines = defects;
    o.doc["verdict"] = "invalid";
  }
  return o;
}

Outcome cmd_run(const Config& cfg) {
  Outcome o;
  const auto aut = load_automaton(cfg.automaton_path);
  const Term t = load_term(cfg, aut.signature());
  const Assignment gamma = parse_assignment(cfg.assign, aut.signature());
  const VarSet tv = vars(t);
  for (const auto& [v, c] : gamma.bindings())
    if (!tv.count(v)) throw InputError("unknown variable: " + variable_name(v));

  const bool total = gamma.restricted_to(tv).size() == tv.size();
  if (total && !cfg.partial) {
    const auto trace = run(aut, gamma, t);
    const std::string state = aut.state_name(trace.result);
    o.lines.push_back(state);
    o.doc["verdict"] = state;
    o.doc["report"] = {{"result", state}, {"final", aut.is_final(trace.result)}};
    if (cfg.trace) {
      json per = json::array();
      for (const auto& [p, q] : trace.per_position) {
        o.lines.push_back(p.to_string() + " " + aut.state_name(q));
        per.push_back({{"position", p.to_string()}, {"state", aut.state_name(q)}});
      }
      o.doc["positions"] = per;
    }
  } else {
    const auto mixed = partial_run(aut, gamma, t);
    o.lines.push_back(mixed.to_string());
    o.doc["verdict"] = mixed.to_string();
    o.doc["report"] = {{"mixed_term", mixed.to_string()}};
  }
  return o;
}

Outcome cmd_essential(const Config& cfg) {
  Outcome o;
  const auto aut = load_automaton(cfg.automaton_path);
  const Term t = load_term(cfg, aut.signature());
  o.doc["witnesses"] = json::array();
  if (!cfg.position.empty()) {
    const Position p = Position::parse(cfg.position);
    const auto w = is_essential_subtree(aut, t, p, cfg.max_assignments);
    o.doc["positions"] = {p.to_string()};
    if (w) {
      o.lines.push_back(p.to_string() + ": essential");
      witness_lines(aut, *w, o.lines);
      o.doc["verdict"] = "essential";
      o.doc["witnesses"].push_back(witness_json(aut, *w));
    } else {
      o.code = kExitNegative;
      o.lines.push_back(p.to_string() + ": fictive");
      o.doc["verdict"] = "fictive";
    }
    return o;
  }

  const auto report = essential_positions(aut, t, cfg.max_assignments);
  for (const auto& p : positions(t)) {
    if (report.essential_positions.contains(p)) {
      o.lines.push_back(p.to_string() + ": essential");
      const auto& w = report.witnesses.at(p);
      witness_lines(aut, w, o.lines);
      o.doc["witnesses"].push_back(witness_json(aut, w));
    } else {
      o.lines.push_back(p.to_string() + ": fictive");
    }
  }
  const bool closed = is_prefix_closed(report.essential_positions);
  o.lines.push_back("essential variables: " + vars_text(report.essential_vars));
  o.lines.push_back(std::string("essential positions prefix-closed: ") + (closed ? "yes" : "no"));
  json ess_vars = json::array();
  for (auto v : report.essential_vars) ess_vars.push_back(variable_name(v));
  o.doc["verdict"] = report.essential_positions.empty() ? "all fictive" : "report";
  o.doc["positions"] = {{"essential", positions_json(report.essential_positions)},
                        {"fictive", positions_json(report.fictive_positions)}};
  o.doc["report"] = {{"essential_vars", ess_vars}, {"prefix_closed", closed}};
  return o;
}

Outcome cmd_separable(const Config& cfg) {
  Outcome o;
  const auto aut = load_automaton(cfg.automaton_path);
  const Term t = load_term(cfg, aut.signature());
  const PositionSet ys = PositionSet::parse_list(cfg.set);
  std::optional<PositionSet> zs;
  if (!cfg.wrt.empty()) zs = PositionSet::parse_list(cfg.wrt);
  const auto result = is_separable(aut, t, ys, zs, cfg.max_assignments);
  o.doc["positions"] = {{"set", positions_json(ys)},
                        {"wrt", positions_json(zs ? *zs : ind_of_set(t, ys))}};
  o.doc["witnesses"] = json::array();
  if (result.separable) {
    o.lines.push_back("separable");
    o.lines.push_back("witness: " + result.witness->to_string());
    o.doc["verdict"] = "separable";
    o.doc["witnesses"].push_back(assignment_json(*result.witness));
  } else {
    o.code = kExitNegative;
    o.lines.push_back("not separable");
    o.doc["verdict"] = "not separable";
  }
  return o;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", fraction * 100.0);
  return buf;
}

Outcome cmd_prune(const Config& cfg) {
  Outcome o;
  const auto aut = load_automaton(cfg.automaton_path);
  const Term t = load_term(cfg, aut.signature());
  const auto red = freeze_fictive(aut, t, cfg.max_assignments);
  const auto cost = cost_report(t, red.reduced_term);
  const std::string det = red.determining_position ? red.determining_position->to_string() : "none";
  o.doc["positions"] = {{"determining", red.determining_position ? json(det) : json(nullptr)},
                        {"frozen", positions_json(red.frozen_positions)}};
  o.doc["report"] = {{"reduced", render_term(red.reduced_term)},
                     {"original_nodes", cost.original_nodes},
                     {"reduced_nodes", cost.reduced_nodes},
                     {"saved_fraction", cost.saved_fraction}};
  if (red.reduced_term == t) {
    o.lines.push_back("no reduction");
    o.doc["verdict"] = "no reduction";
  } else {
    o.lines.push_back("determining: " + det + " | reduced: " + render_term(red.reduced_term) + " | nodes " +
                      std::to_string(cost.original_nodes) + "→" + std::to_string(cost.reduced_nodes) + " (" +
                      percent(cost.saved_fraction) + " saved)");
    if (!red.frozen_positions.empty()) o.lines.push_back("frozen: " + red.frozen_positions.to_string());
    o.doc["verdict"] = "reduced";
  }
  if (cfg.verify) {
    const auto check = verify_reduction(aut, t, red.reduced_term, cfg.max_assignments);
    o.doc["report"]["soundness"] = {{"sound", check.sound}, {"assignments", check.assignments}};
    if (check.sound) {
      o.lines.push_back("soundness: OK (" + std::to_string(check.assignments) + " assignments)");
    } else {
      o.code = kExitNegative;
      o.lines.push_back("soundness: FAILED under " + check.counterexample->to_string());
      o.doc["report"]["soundness"]["counterexample"] = assignment_json(*check.counterexample);
      o.doc["verdict"] = "unsound";
    }
  }
  return o;
}

void dump_failures(const PropertyReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto& e : report.entries()) {
    std::size_t n = 0;
    for (const auto& f : e.failures) {
      char stem[32];
      std::snprintf(stem, sizeof stem, "%s-%04zu", property_id(e.property).c_str(), n++);
      const fs::path base = fs::path(dir) / stem;
      std::ofstream(base.string() + ".fta", std::ios::binary) << f.automaton_text;
      std::ofstream(base.string() + ".term", std::ios::binary) << f.term_text << '\n';
      std::ofstream(base.string() + ".txt", std::ios::binary)
          << property_id(f.property) << ": " << f.detail << '\n'
          << "shared variables: " << (f.shared_variables ? "yes" : "no") << '\n';
    }
  }
}

Outcome cmd_verify(const Config& cfg) {
  Outcome o;
  PropertyReport report;
  if (cfg.random) {
    SuiteParams params;
    params.seed = cfg.seed;
    params.count = cfg.count;
    params.max_assignments = cfg.max_assignments;
    report = run_random_suite(params);
  } else {
    if (cfg.automaton_path.empty() || !has_term(cfg))
      throw InputError("verify needs an automaton and a term, or --random");
    const auto aut = load_automaton(cfg.automaton_path);
    const Term t = load_term(cfg, aut.signature());
    report = verify_properties(aut, t, cfg.max_assignments);
  }

  json entries = json::array();
  std::size_t budget = 0;
  for (const auto& e : report.entries()) {
    const std::size_t shared = static_cast<std::size_t>(std::count_if(
        e.failures.begin(), e.failures.end(), [](const auto& f) { return f.shared_variables; }));
    std::string line = property_id(e.property) + " " + (e.failures.empty() ? "PASS" : "FAIL") + " " +
                       std::to_string(e.instances_checked - e.failures.size()) + "/" +
                       std::to_string(e.instances_checked) + " (" + std::string(property_description(e.property)) +
                       ")";
    if (!e.failures.empty()) line += " failures with shared variables: " + std::to_string(shared);
    if (e.budget_exceeded) line += " budget exceeded: " + std::to_string(e.budget_exceeded);
    o.lines.push_back(line);
    budget += e.budget_exceeded;
    json fails = json::array();
    for (const auto& f : e.failures)
      fails.push_back({{"detail", f.detail},
                       {"shared_variables", f.shared_variables},
                       {"automaton", f.automaton_text},
                       {"term", f.term_text}});
    entries.push_back({{"property", property_id(e.property)},
                       {"description", property_description(e.property)},
                       {"checked", e.instances_checked},
                       {"budget_exceeded", e.budget_exceeded},
                       {"failures", fails}});
  }
  o.lines.push_back("failures: " + std::to_string(report.total_failures()) +
                    ", without shared variables: " + std::to_string(report.unexplained_failures()));
  if (!cfg.dump_dir.empty() && report.total_failures() > 0) {
    dump_failures(report, cfg.dump_dir);
    o.lines.push_back("failure artifacts written to " + cfg.dump_dir);
  }
  o.doc["report"] = {{"properties", entries},
                     {"total_failures", report.total_failures()},
                     {"unexplained_failures", report.unexplained_failures()}};
  if (cfg.random) o.doc["inputs"]["random"] = {{"seed", cfg.seed}, {"count", cfg.count}};
  if (report.total_failures() > 0) {
    o.code = kExitNegative;
    o.doc["verdict"] = "fail";
  } else if (budget > 0) {
    o.code = kExitBudget;
    o.doc["verdict"] = "budget exceeded";
  } else {
    o.doc["verdict"] = "pass";
  }
  return o;
}

void add_term_options(CLI::App* sub, Config& cfg) {
  auto* t = sub->add_option("-t,--term", cfg.term_inline, "term text");
  auto* f = sub->add_option("-f,--term-file", cfg.term_path, "file holding the term");
  t->excludes(f);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Runs and essential-subtree analysis for bottom-up tree automata", "fta"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", cfg.json_mode, "emit one JSON object");
  app.add_option("--max-assignments", cfg.max_assignments, "enumeration budget (default 2^20)")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));

  auto* check = app.add_subcommand("check", "validate an automaton file");
  check->add_option("automaton", cfg.automaton_path)->required();

  auto* run_cmd = app.add_subcommand("run", "run the automaton on a term");
  run_cmd->add_option("automaton", cfg.automaton_path)->required();
  add_term_options(run_cmd, cfg);
  run_cmd->add_option("--assign", cfg.assign, "x1=0,x2=1,...");
  run_cmd->add_flag("--trace", cfg.trace, "print the state at every position");
  run_cmd->add_flag("--partial", cfg.partial, "always print the partially evaluated term");

  auto* ess = app.add_subcommand("essential", "essential and fictive subtrees");
  ess->add_option("automaton", cfg.automaton_path)->required();
  add_term_options(ess, cfg);
  ess->add_option("--position", cfg.position, "single position, e.g. 1.1 (root: e)");

  auto* sep = app.add_subcommand("separable", "separability of a set of subtrees");
  sep->add_option("automaton", cfg.automaton_path)->required();
  add_term_options(sep, cfg);
  sep->add_option("--set", cfg.set, "positions P1,P2,...")->required();
  sep->add_option("--wrt", cfg.wrt, "positions Q1,Q2,... (default: Ind of the set)");

  auto* prune = app.add_subcommand("prune", "freeze fictive subtrees");
  prune->add_option("automaton", cfg.automaton_path)->required();
  add_term_options(prune, cfg);
  prune->add_flag("--verify", cfg.verify, "re-check the reduction exhaustively");

  auto* ver = app.add_subcommand("verify", "run the property suite");
  ver->add_option("automaton", cfg.automaton_path);
  add_term_options(ver, cfg);
  ver->add_flag("--random", cfg.random, "seeded random instances");
  ver->add_option("--seed", cfg.seed);
  ver->add_option("--count", cfg.count);
  ver->add_option("--dump-dir", cfg.dump_dir, "write failing instances here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen != check && chosen != ver && !has_term(cfg)) {
    err << "error: a term is required (-t or -f)\n";
    return kExitInput;
  }

  Outcome o;
  std::string error;
  try {
    if (chosen == check) o = cmd_check(cfg);
    else if (chosen == run_cmd) o = cmd_run(cfg);
    else if (chosen == ess) o = cmd_essential(cfg);
    else if (chosen == sep) o = cmd_separable(cfg);
    else if (chosen == prune) o = cmd_prune(cfg);
    else o = cmd_verify(cfg);
  } catch (const EnumerationBudgetExceeded& e) {
    o.code = kExitBudget;
    error = e.what();
  } catch (const NotEssential& e) {
    o.code = kExitPrecondition;
    error = e.what();
  } catch (const NotIndependent& e) {
    o.code = kExitPrecondition;
    error = e.what();
  } catch (const PremiseViolated& e) {
    o.code = kExitPrecondition;
    error = e.what();
  } catch (const ValidationError& e) {
    o.code = kExitInput;
    error = e.what();
  } catch (const std::exception& e) {
    o.code = kExitInput;
    error = e.what();
  }

  if (!error.empty()) {
    o.doc["verdict"] = "error";
    o.doc["report"] = {{"error", error}, {"exit_code", o.code}};
    o.lines = {error};
  }
  json doc = {{"command", chosen->get_name()},
              {"inputs", inputs_json(cfg)},
              {"verdict", o.doc.value("verdict", json(nullptr))},
              {"witnesses", o.doc.value("witnesses", json::array())},
              {"positions", o.doc.value("positions", json::array())},
              {"report", o.doc.value("report", json::object())}};
  if (o.doc.contains("inputs")) doc["inputs"].update(o.doc["inputs"]);

  if (cfg.json_mode) {
    out << doc.dump(2) << '\n';
    if (!error.empty()) err << "error: " << error << '\n';
  } else if (!error.empty()) {
    err << "error: " << error << '\n';
  } else {
    for (const auto& line : o.lines) out << line << '\n';
  }
  return o.code;
}

}  // namespace fta
