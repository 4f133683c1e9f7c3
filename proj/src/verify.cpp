#include "fta/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "fta/error.hpp"
#include "fta/essential.hpp"
#include "fta/generate.hpp"
#include "fta/random.hpp"
#include "fta/reduce.hpp"

namespace fta {

std::string property_id(Property p) { return "P" + std::to_string(static_cast<int>(p)); }

std::string_view property_description(Property p) {
  switch (p) {
    case Property::essential_prefix_closed: return "essential positions are prefix-closed";
    case Property::ind_prefix_determined: return "independent positions are prefix-determined";
    case Property::fictive_prefix_determined: return "fictive positions are prefix-determined";
    case Property::determining_claims_fictive: return "determining-subtree claims are fictive";
    case Property::separable_strong_chain: return "separable subtrees stay essential up a strong chain";
    case Property::oracle_agreement: return "indexed search agrees with the direct double loop";
    case Property::pruning_sound: return "pruning preserves every run";
  }
  return "";
}

Property parse_property_id(std::string_view id) {
  for (auto p : kAllProperties)
    if (property_id(p) == id) return p;
  throw std::invalid_argument("unknown property '" + std::string(id) + "'");
}

namespace {

bool disjoint(const VarSet& a, const VarSet& b) {
  return std::none_of(a.begin(), a.end(), [&](VarIndex v) { return b.count(v) != 0; });
}

// Essential r below fictive q. The prefix-closure argument needs the
// variables of t|r to be absent outside t|q.
PropertyOutcome closure_outcome(const Term& t, const EssentialityReport& report, const char* what) {
  PropertyOutcome out;
  std::string detail;
  bool all_shared = true;
  for (const auto& r : report.essential_positions) {
    for (Position q = r; !q.is_root();) {
      q = q.parent();
      if (!report.fictive_positions.contains(q)) continue;
      if (!detail.empty()) detail += "; ";
      detail += std::string(what) + " " + q.to_string() + " above essential " + r.to_string();
      all_shared = all_shared && !disjoint(vars(subterm_at(t, r)), vars_outside(t, q));
    }
  }
  if (!detail.empty()) {
    out.failure = detail;
    out.shared_variables = all_shared;
  }
  return out;
}

PropertyOutcome check_ind_prefix_determined(const Term& t) {
  PropertyOutcome out;
  const PositionSet all = positions(t);
  for (const auto& p : all) {
    if (!is_prefix_determined(ind_positions(t, p), all)) {
      out.failure = "Ind(" + p.to_string() + ") is not prefix-determined";
      return out;
    }
  }
  return out;
}

PropertyOutcome check_determining_claims(const Automaton& aut, const Term& t, std::uint64_t cap) {
  PropertyOutcome out;
  auto p = determining_subtree(aut, t, cap);
  if (!p) return out;
  const auto claims = fictive_by_determining_subtree(aut, t, *p, cap);
  const auto report = essential_positions(aut, t, cap);
  const VarSet p_vars = vars(subterm_at(t, *p));
  std::string detail;
  bool all_shared = true;
  for (const auto& s : claims) {
    if (!report.essential_positions.contains(s)) continue;
    if (!detail.empty()) detail += "; ";
    detail += "claimed fictive " + s.to_string() + " is essential (determining " + p->to_string() + ")";
    all_shared = all_shared && !disjoint(vars(subterm_at(t, s)), p_vars);
  }
  if (!detail.empty()) {
    out.failure = detail;
    out.shared_variables = all_shared;
  }
  return out;
}

PropertyOutcome check_strong_chain(const Automaton& aut, const Term& t, std::uint64_t cap) {
  PropertyOutcome out;
  const auto report = essential_positions(aut, t, cap);
  std::string detail;
  bool all_shared = true;
  for (const auto& s : report.essential_positions) {
    if (!is_separable(aut, t, PositionSet{s}, std::nullopt, cap).separable) continue;
    // Walk the unique strong chain t|s, t|parent(s), ..., t.
    Position q = s;
    while (true) {
      const Position rel = *s.relative_to(q);
      if (!is_essential_subtree(aut, subterm_at(t, q), rel, cap)) {
        if (!detail.empty()) detail += "; ";
        detail += "separable " + s.to_string() + " is not essential in the subtree at " + q.to_string();
        all_shared = all_shared && !disjoint(vars(subterm_at(t, s)), vars_outside(t, s));
        break;
      }
      if (q.is_root()) break;
      q = q.parent();
    }
  }
  if (!detail.empty()) {
    out.failure = detail;
    out.shared_variables = all_shared;
  }
  return out;
}

// Definitional check with no shared machinery: every ordered pair of total
// assignments, evaluated by direct runs.
bool essential_by_double_loop(const Automaton& aut, const Term& t, const Position& p,
                              const std::vector<Assignment>& all) {
  const Term& sub = subterm_at(t, p);
  const VarSet inner = vars(sub);
  for (const auto& g1 : all) {
    for (const auto& g2 : all) {
      bool agree = true;
      for (const auto& [v, c] : g1.bindings())
        if (!inner.count(v) && *g2.find(v) != c) {
          agree = false;
          break;
        }
      if (!agree) continue;
      if (evaluate(aut, g1, sub) != evaluate(aut, g2, sub) && evaluate(aut, g1, t) != evaluate(aut, g2, t))
        return true;
    }
  }
  return false;
}

PropertyOutcome check_oracle(const Automaton& aut, const Term& t, std::uint64_t cap) {
  PropertyOutcome out;
  const auto all = enumerate_assignments(vars(t), aut.signature(), cap);
  if (all.size() > cap / all.size()) throw EnumerationBudgetExceeded(all.size() * all.size(), cap);
  const auto report = essential_positions(aut, t, cap);
  for (const auto& p : positions(t)) {
    const bool fast = report.essential_positions.contains(p);
    if (fast != essential_by_double_loop(aut, t, p, all)) {
      out.failure = "verdicts differ at " + p.to_string();
      return out;
    }
    if (fast && !check_witness(aut, t, report.witnesses.at(p))) {
      out.failure = "invalid witness at " + p.to_string();
      return out;
    }
  }
  return out;
}

PropertyOutcome check_pruning(const Automaton& aut, const Term& t, std::uint64_t cap) {
  PropertyOutcome out;
  const auto reduction = freeze_fictive(aut, t, cap);
  const auto check = verify_reduction(aut, t, reduction.reduced_term, cap);
  if (!check.sound) {
    out.failure = "reduced term " + render_term(reduction.reduced_term) + " differs under " +
                  check.counterexample->to_string();
    return out;
  }
  const auto cost = cost_report(t, reduction.reduced_term);
  if (cost.saved_fraction < 0.0 || cost.saved_fraction > 1.0)
    out.failure = "saved fraction out of range: " + std::to_string(cost.saved_fraction);
  return out;
}

}  // namespace

PropertyOutcome check_property(Property p, const Automaton& aut, const Term& t, std::uint64_t cap) {
  try {
    switch (p) {
      case Property::essential_prefix_closed:
        return closure_outcome(t, essential_positions(aut, t, cap), "fictive prefix");
      case Property::ind_prefix_determined:
        return check_ind_prefix_determined(t);
      case Property::fictive_prefix_determined: {
        const auto report = essential_positions(aut, t, cap);
        if (is_prefix_determined(report.fictive_positions, positions(t))) return {};
        return closure_outcome(t, report, "fictive");
      }
      case Property::determining_claims_fictive:
        return check_determining_claims(aut, t, cap);
      case Property::separable_strong_chain:
        return check_strong_chain(aut, t, cap);
      case Property::oracle_agreement:
        return check_oracle(aut, t, cap);
      case Property::pruning_sound:
        return check_pruning(aut, t, cap);
    }
  } catch (const EnumerationBudgetExceeded&) {
    PropertyOutcome out;
    out.budget_exceeded = true;
    return out;
  }
  return {};
}

PropertyReport::PropertyReport() {
  for (auto p : kAllProperties) entries_.push_back(PropertyEntry{p, 0, 0, {}});
}

const PropertyEntry& PropertyReport::entry(Property p) const {
  return entries_.at(static_cast<std::size_t>(p) - 1);
}

void PropertyReport::record(Property p, const PropertyOutcome& outcome, const Automaton& aut, const Term& t) {
  auto& e = entries_.at(static_cast<std::size_t>(p) - 1);
  ++e.instances_checked;
  if (outcome.budget_exceeded) ++e.budget_exceeded;
  if (outcome.failure)
    e.failures.push_back(
        PropertyFailure{p, render_automaton(aut), render_term(t), *outcome.failure, outcome.shared_variables});
}

void PropertyReport::merge(const PropertyReport& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i].instances_checked += other.entries_[i].instances_checked;
    entries_[i].budget_exceeded += other.entries_[i].budget_exceeded;
    entries_[i].failures.insert(entries_[i].failures.end(), other.entries_[i].failures.begin(),
                                other.entries_[i].failures.end());
  }
}

std::size_t PropertyReport::total_failures() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.failures.size();
  return n;
}

std::size_t PropertyReport::unexplained_failures() const {
  std::size_t n = 0;
  for (const auto& e : entries_)
    n += static_cast<std::size_t>(
        std::count_if(e.failures.begin(), e.failures.end(), [](const auto& f) { return !f.shared_variables; }));
  return n;
}

PropertyReport verify_properties(const Automaton& aut, const Term& t, std::uint64_t cap) {
  PropertyReport report;
  for (auto p : kAllProperties) report.record(p, check_property(p, aut, t, cap), aut, t);
  return report;
}

Instance random_instance(const SuiteParams& params, std::size_t index) {
  std::uint64_t mix = params.seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  Xorshift64Star rng(splitmix64(mix));
  GenParams gen;
  gen.state_count = 1 + static_cast<std::size_t>(rng.below(params.max_states));
  gen.max_depth = 1 + static_cast<std::size_t>(rng.below(std::max<std::size_t>(params.max_depth, 1)));
  gen.var_pool = 1 + static_cast<std::size_t>(rng.below(std::max<std::size_t>(params.max_vars, 1)));
  gen.seed = rng.next();
  Term t = random_term(gen);
  gen.seed = rng.next();
  return Instance{random_automaton(gen), std::move(t)};
}

PropertyReport run_random_suite(const SuiteParams& params) {
  PropertyReport report;
  for (std::size_t i = 0; i < params.count; ++i) {
    const auto inst = random_instance(params, i);
    report.merge(verify_properties(inst.automaton, inst.term, params.max_assignments));
  }
  return report;
}

}  // namespace fta
