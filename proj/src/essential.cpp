#include "fta/essential.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "analysis.hpp"
#include "fta/error.hpp"

namespace fta {

namespace detail {

TermAnalysis::TermAnalysis(const Automaton& aut, const Term& t, std::uint64_t max_assignments)
    : aut_(&aut), term_(&t), cap_(max_assignments), space_(aut, vars(t), max_assignments) {
  roots_ = evaluate_all(aut, t, space_);
}

std::optional<WitnessPair> TermAnalysis::witness_at(const Position& p) const {
  const Term& sub = subterm_at(*term_, p);
  const VarSet inner_vars = vars(sub);
  VarSet outer_vars;
  std::set_difference(space_.vars().begin(), space_.vars().end(), inner_vars.begin(), inner_vars.end(),
                      std::inserter(outer_vars, outer_vars.end()));

  AssignmentSpace inner(*aut_, inner_vars, cap_);
  AssignmentSpace outer(*aut_, outer_vars, cap_);
  const auto sub_states = evaluate_all(*aut_, sub, inner);
  const auto inner_off = inner.offsets_in(space_);
  const auto outer_off = outer.offsets_in(space_);

  const std::size_t nq = aut_->state_count();
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  // first_index[s * nq + r]: least inner index whose (subtree, root) states are (s, r)
  std::vector<std::uint64_t> first_index(nq * nq);

  for (std::uint64_t o = 0; o < outer.size(); ++o) {
    std::fill(first_index.begin(), first_index.end(), kNone);
    for (std::uint64_t i = 0; i < inner.size(); ++i) {
      auto& slot = first_index[sub_states[i] * nq + roots_[outer_off[o] + inner_off[i]]];
      if (slot == kNone) slot = i;
    }
    for (std::uint64_t i1 = 0; i1 < inner.size(); ++i1) {
      const StateId s1 = sub_states[i1];
      const StateId r1 = roots_[outer_off[o] + inner_off[i1]];
      std::uint64_t i2 = kNone;
      for (std::size_t s = 0; s < nq; ++s) {
        if (s == s1) continue;
        for (std::size_t r = 0; r < nq; ++r)
          if (r != r1) i2 = std::min(i2, first_index[s * nq + r]);
      }
      if (i2 == kNone) continue;
      const std::uint64_t g1 = outer_off[o] + inner_off[i1];
      const std::uint64_t g2 = outer_off[o] + inner_off[i2];
      return WitnessPair{space_.assignment(g1), space_.assignment(g2), p,
                         {s1, sub_states[i2]}, {roots_[g1], roots_[g2]}};
    }
  }
  return std::nullopt;
}

bool TermAnalysis::equivalent_to_subtree(const Position& p) const {
  const Term& sub = subterm_at(*term_, p);
  AssignmentSpace inner(*aut_, vars(sub), cap_);
  VarSet rest;
  const VarSet inner_vars = vars(sub);
  std::set_difference(space_.vars().begin(), space_.vars().end(), inner_vars.begin(), inner_vars.end(),
                      std::inserter(rest, rest.end()));
  AssignmentSpace outer(*aut_, rest, cap_);
  const auto sub_states = evaluate_all(*aut_, sub, inner);
  const auto inner_off = inner.offsets_in(space_);
  const auto outer_off = outer.offsets_in(space_);
  for (std::uint64_t o = 0; o < outer.size(); ++o)
    for (std::uint64_t i = 0; i < inner.size(); ++i)
      if (roots_[outer_off[o] + inner_off[i]] != sub_states[i]) return false;
  return true;
}

VarSet TermAnalysis::essential_vars() const {
  VarSet out;
  const auto& vs = space_.vars();
  const std::uint64_t radix = space_.radix();
  std::uint64_t weight = 1;
  for (std::size_t k = vs.size(); k-- > 0;) {
    bool found = false;
    for (std::uint64_t idx = 0; idx < roots_.size() && !found; ++idx) {
      const std::uint64_t digit = (idx / weight) % radix;
      for (std::uint64_t c = digit + 1; c < radix && !found; ++c)
        found = roots_[idx] != roots_[idx + (c - digit) * weight];
    }
    if (found) out.insert(vs[k]);
    weight *= radix;
  }
  return out;
}

}  // namespace detail

std::vector<Assignment> enumerate_assignments(const VarSet& vs, const Signature& sig,
                                              std::uint64_t max_assignments) {
  const auto& constants = sig.constants();
  const std::uint64_t count = detail::checked_power(constants.size(), vs.size(), max_assignments);
  const std::vector<VarIndex> order(vs.begin(), vs.end());
  std::vector<std::size_t> digits(order.size(), 0);
  std::vector<Assignment> out;
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) {
    Assignment a;
    for (std::size_t i = 0; i < order.size(); ++i) a.bind(order[i], constants[digits[i]]);
    out.push_back(std::move(a));
    for (std::size_t i = order.size(); i-- > 0;) {
      if (++digits[i] < constants.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::optional<WitnessPair> is_essential_subtree(const Automaton& aut, const Term& t, const Position& p,
                                                std::uint64_t max_assignments) {
  if (!has_position(t, p)) throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  return detail::TermAnalysis(aut, t, max_assignments).witness_at(p);
}

EssentialityReport essential_positions(const Automaton& aut, const Term& t, std::uint64_t max_assignments) {
  detail::TermAnalysis analysis(aut, t, max_assignments);
  EssentialityReport report;
  for (const auto& p : positions(t)) {
    if (auto w = analysis.witness_at(p)) {
      report.essential_positions.insert(p);
      report.witnesses.emplace(p, std::move(*w));
    } else {
      report.fictive_positions.insert(p);
    }
  }
  report.essential_vars = analysis.essential_vars();
  return report;
}

VarSet essential_vars(const Automaton& aut, const Term& t, std::uint64_t max_assignments) {
  return detail::TermAnalysis(aut, t, max_assignments).essential_vars();
}

bool check_witness(const Automaton& aut, const Term& t, const WitnessPair& w) {
  if (!has_position(t, w.position)) return false;
  const Term& sub = subterm_at(t, w.position);
  const VarSet all = vars(t);
  const VarSet inner = vars(sub);
  for (auto v : all) {
    if (!w.gamma1.binds(v) || !w.gamma2.binds(v)) return false;
    if (!inner.count(v) && *w.gamma1.find(v) != *w.gamma2.find(v)) return false;
  }
  const StateId s1 = evaluate(aut, w.gamma1, sub);
  const StateId s2 = evaluate(aut, w.gamma2, sub);
  const StateId r1 = evaluate(aut, w.gamma1, t);
  const StateId r2 = evaluate(aut, w.gamma2, t);
  return s1 != s2 && r1 != r2 && std::make_pair(s1, s2) == w.sub_states &&
         std::make_pair(r1, r2) == w.root_states;
}

bool sets_independent(const Term& t, const PositionSet& ys, const PositionSet& zs) {
  for (const auto* set : {&ys, &zs})
    for (const auto& p : *set)
      if (!has_position(t, p)) throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  for (const auto& y : ys)
    for (const auto& z : zs)
      if (!independent(y, z)) return false;
  return true;
}

PositionSet ind_of_set(const Term& t, const PositionSet& ys) {
  PositionSet out;
  for (const auto& y : ys)
    for (const auto& q : ind_positions(t, y)) out.insert(q);
  return out;
}

SeparabilityResult is_separable(const Automaton& aut, const Term& t, const PositionSet& ys,
                                const std::optional<PositionSet>& zs, std::uint64_t max_assignments) {
  if (zs && !sets_independent(t, ys, *zs)) throw NotIndependent("sets not independent");
  for (const auto& y : ys)
    if (!has_position(t, y)) throw InvalidPosition("position " + y.to_string() + " is not a position of the term");

  detail::TermAnalysis analysis(aut, t, max_assignments);
  for (const auto& y : ys)
    if (!analysis.witness_at(y)) throw NotEssential("position " + y.to_string() + " is not essential");
  if (zs)
    for (const auto& z : *zs)
      if (!analysis.witness_at(z)) throw NotEssential("position " + z.to_string() + " is not essential");

  const PositionSet z_set = zs ? *zs : ind_of_set(t, ys);
  VarSet z_vars, y_vars, domain;
  for (const auto& z : z_set) {
    auto v = vars(subterm_at(t, z));
    z_vars.insert(v.begin(), v.end());
  }
  for (const auto& y : ys) {
    auto v = vars(subterm_at(t, y));
    y_vars.insert(v.begin(), v.end());
  }
  std::set_difference(z_vars.begin(), z_vars.end(), y_vars.begin(), y_vars.end(),
                      std::inserter(domain, domain.end()));

  // Substituting constants keeps every position, so Y is still addressable.
  for (const auto& gamma : enumerate_assignments(domain, aut.signature(), max_assignments)) {
    const Term fixed = substitute(t, gamma.as_substitution());
    detail::TermAnalysis fixed_analysis(aut, fixed, max_assignments);
    bool all = true;
    for (const auto& y : ys)
      if (!fixed_analysis.witness_at(y)) {
        all = false;
        break;
      }
    if (all) return SeparabilityResult{true, gamma};
  }
  return SeparabilityResult{false, std::nullopt};
}

}  // namespace fta
