#include "fta/reduce.hpp"

#include <algorithm>
#include <iterator>
#include <tuple>

#include "analysis.hpp"
#include "fta/error.hpp"

namespace fta {

namespace {

VarSet union_of(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

bool disjoint(const VarSet& a, const VarSet& b) {
  return std::none_of(a.begin(), a.end(), [&](VarIndex v) { return b.count(v) != 0; });
}

}  // namespace

bool runs_equal_all(const Automaton& aut, const Term& t, const Term& t2, std::uint64_t max_assignments) {
  return verify_reduction(aut, t, t2, max_assignments).sound;
}

SoundnessCheck verify_reduction(const Automaton& aut, const Term& original, const Term& reduced,
                                std::uint64_t max_assignments) {
  detail::AssignmentSpace space(aut, union_of(vars(original), vars(reduced)), max_assignments);
  const auto a = detail::evaluate_all(aut, original, space);
  const auto b = detail::evaluate_all(aut, reduced, space);
  SoundnessCheck check;
  check.assignments = space.size();
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (a[i] != b[i]) {
      check.sound = false;
      check.counterexample = space.assignment(i);
      break;
    }
  }
  return check;
}

std::optional<Position> determining_subtree(const Automaton& aut, const Term& t, std::uint64_t max_assignments) {
  detail::TermAnalysis analysis(aut, t, max_assignments);
  std::optional<std::pair<std::size_t, Position>> best;
  for (const auto& p : positions(t)) {
    if (p.is_root()) continue;
    const std::size_t size = subterm_at(t, p).size();
    if (best && std::tie(best->first, best->second) <= std::tie(size, p)) continue;
    if (analysis.equivalent_to_subtree(p) && analysis.witness_at(p)) best.emplace(size, p);
  }
  if (!best) return std::nullopt;
  return best->second;
}

PositionSet fictive_by_determining_subtree(const Automaton& aut, const Term& t, const Position& p,
                                           std::uint64_t max_assignments) {
  detail::TermAnalysis analysis(aut, t, max_assignments);
  if (!analysis.witness_at(p)) throw PremiseViolated("position " + p.to_string() + " is not essential");
  if (!analysis.equivalent_to_subtree(p))
    throw PremiseViolated("subtree at " + p.to_string() + " is not equivalent to the whole term");
  const VarSet p_vars = vars(subterm_at(t, p));
  PositionSet claims;
  for (const auto& q : ind_positions(t, p)) {
    const VarSet q_vars = vars(subterm_at(t, q));
    if (std::any_of(q_vars.begin(), q_vars.end(), [&](VarIndex v) { return !p_vars.count(v); }))
      claims.insert(q);
  }
  return claims;
}

namespace {

struct Freezer {
  const Automaton& aut;
  const Term& original;
  const detail::TermAnalysis& analysis;
  const std::map<StateId, Term>& representatives;
  PositionSet frozen;

  Term visit(const Term& sub, const Position& p) {
    if (auto rep = frozen_form(sub, p)) {
      frozen.insert(p);
      return std::move(*rep);
    }
    if (sub.is_leaf()) return sub;
    std::vector<Term> children;
    for (std::size_t i = 0; i < sub.children().size(); ++i)
      children.push_back(visit(sub.children()[i], p.child(i + 1)));
    return Term::node(sub.symbol(), std::move(children));
  }

  // The replacement for a fictive subtree with local variables, if it helps.
  std::optional<Term> frozen_form(const Term& sub, const Position& p) {
    const VarSet sub_vars = vars(sub);
    if (!disjoint(sub_vars, vars_outside(original, p))) return std::nullopt;
    if (analysis.witness_at(p)) return std::nullopt;
    Assignment first;
    for (auto v : sub_vars) first.bind(v, aut.signature().constants().front());
    const Term& rep = representatives.at(evaluate(aut, first, sub));
    const bool smaller = rep.size() < sub.size();
    const bool drops_vars = !sub_vars.empty() && rep.size() <= sub.size();
    if (rep == sub || !(smaller || drops_vars)) return std::nullopt;
    return rep;
  }
};

}  // namespace

ReductionReport freeze_fictive(const Automaton& aut, const Term& t, std::uint64_t max_assignments) {
  detail::TermAnalysis analysis(aut, t, max_assignments);
  const auto reps = canonical_ground(aut);
  Freezer freezer{aut, t, analysis, reps, {}};
  Term frozen = freezer.visit(t, Position::root());

  ReductionReport report{t.size(), frozen.size(), determining_subtree(aut, t, max_assignments),
                         freezer.frozen, frozen};
  if (report.determining_position) {
    const Position& p = *report.determining_position;
    // A frozen prefix of p would have removed it; fall back to the unfrozen subtree.
    bool cut = std::any_of(freezer.frozen.begin(), freezer.frozen.end(),
                           [&](const Position& q) { return q.is_proper_prefix_of(p); });
    Term candidate = cut ? subterm_at(t, p) : subterm_at(frozen, p);
    if (candidate.size() < frozen.size()) {
      PositionSet inside;
      if (!cut)
        for (const auto& q : freezer.frozen)
          if (p.is_prefix_of(q)) inside.insert(q);
      report.frozen_positions = inside;
      report.reduced_nodes = candidate.size();
      report.reduced_term = std::move(candidate);
    }
  }
  return report;
}

CostReport cost_report(const Term& original, const Term& reduced) {
  CostReport c;
  c.original_nodes = original.size();
  c.reduced_nodes = reduced.size();
  c.saved_fraction = 1.0 - static_cast<double>(c.reduced_nodes) / static_cast<double>(c.original_nodes);
  return c;
}

}  // namespace fta
