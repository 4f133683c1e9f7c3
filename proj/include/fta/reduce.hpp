#pragma once

// Automaton-aware term reduction: equivalence under all assignments,
// determining subtrees, and pruning of fictive subtrees.

#include <cstdint>
#include <optional>

#include "fta/automaton.hpp"
#include "fta/term.hpp"

namespace fta {

/// A(gamma, t) == A(gamma, t2) for every total assignment over vars(t) and vars(t2).
bool runs_equal_all(const Automaton& aut, const Term& t, const Term& t2,
                    std::uint64_t max_assignments = kDefaultMaxAssignments);

/// A proper essential subtree equivalent to the whole term. Among all such
/// positions the one with the fewest nodes wins, ties broken by shortlex
/// position order.
std::optional<Position> determining_subtree(const Automaton& aut, const Term& t,
                                            std::uint64_t max_assignments = kDefaultMaxAssignments);

/// Given a determining position p (essential and equivalent to t), the
/// positions independent of p whose subtree has a variable not in t|p. These
/// are claimed fictive; the claim only holds when they share no variable
/// with t|p, so callers should cross-check. Throws PremiseViolated.
PositionSet fictive_by_determining_subtree(const Automaton& aut, const Term& t, const Position& p,
                                           std::uint64_t max_assignments = kDefaultMaxAssignments);

struct ReductionReport {
  std::size_t original_nodes = 0;
  std::size_t reduced_nodes = 0;
  std::optional<Position> determining_position;
  /// In coordinates of the original term.
  PositionSet frozen_positions;
  Term reduced_term;
};

/// Freezes every maximal fictive subtree whose variables occur nowhere else:
/// its variables get the first constant and the subtree is replaced by the
/// canonical ground term of its state. Then, if a determining subtree exists
/// and its frozen form is smaller, it becomes the result.
ReductionReport freeze_fictive(const Automaton& aut, const Term& t,
                               std::uint64_t max_assignments = kDefaultMaxAssignments);

struct CostReport {
  std::size_t original_nodes = 0;
  std::size_t reduced_nodes = 0;
  double saved_fraction = 0.0;
};

CostReport cost_report(const Term& original, const Term& reduced);

struct SoundnessCheck {
  bool sound = true;
  std::uint64_t assignments = 0;
  std::optional<Assignment> counterexample;
};

/// Exhaustive comparison of the original and reduced term.
SoundnessCheck verify_reduction(const Automaton& aut, const Term& original, const Term& reduced,
                                std::uint64_t max_assignments = kDefaultMaxAssignments);

}  // namespace fta
