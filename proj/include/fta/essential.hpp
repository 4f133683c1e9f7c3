#pragma once

// Essential and fictive subtrees, essential variables, and separability.
//
// A subtree t|p is essential for (t, A) when two assignments that agree on
// every variable outside t|p drive both t|p and t into different states.
// All searches enumerate total assignments over vars(t) exhaustively and
// fail with EnumerationBudgetExceeded rather than truncate.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fta/automaton.hpp"
#include "fta/term.hpp"

namespace fta {

struct WitnessPair {
  Assignment gamma1;
  Assignment gamma2;
  Position position;
  std::pair<StateId, StateId> sub_states;
  std::pair<StateId, StateId> root_states;
};

struct EssentialityReport {
  PositionSet essential_positions;
  PositionSet fictive_positions;
  VarSet essential_vars;
  std::map<Position, WitnessPair> witnesses;
};

struct SeparabilityResult {
  bool separable = false;
  /// Over the union of vars(t|z), z in Z, minus the union of vars(t|y), y in Y.
  std::optional<Assignment> witness;
};

/// Ass(vars, F0) in canonical odometer order. Throws EnumerationBudgetExceeded.
std::vector<Assignment> enumerate_assignments(const VarSet& vars, const Signature& sig,
                                              std::uint64_t max_assignments = kDefaultMaxAssignments);

/// First witness in canonical order (outer assignment, then gamma1, then
/// gamma2), or nullopt if t|p is fictive.
std::optional<WitnessPair> is_essential_subtree(const Automaton& aut, const Term& t, const Position& p,
                                                std::uint64_t max_assignments = kDefaultMaxAssignments);

EssentialityReport essential_positions(const Automaton& aut, const Term& t,
                                       std::uint64_t max_assignments = kDefaultMaxAssignments);

/// Variables whose value alone can change the state of t.
VarSet essential_vars(const Automaton& aut, const Term& t,
                      std::uint64_t max_assignments = kDefaultMaxAssignments);

/// Re-checks every invariant of a witness by direct runs.
bool check_witness(const Automaton& aut, const Term& t, const WitnessPair& w);

/// Every y in Y is independent of every z in Z. Throws InvalidPosition.
bool sets_independent(const Term& t, const PositionSet& ys, const PositionSet& zs);

/// Union of ind_positions(t, y) over y in Y.
PositionSet ind_of_set(const Term& t, const PositionSet& ys);

/// Whether fixing the variables that occur in Z but not in Y can keep every
/// member of Y essential. Without Z, uses Z = Ind(Y) and does not require Z
/// to be essential. Throws NotIndependent, NotEssential, InvalidPosition and
/// EnumerationBudgetExceeded.
SeparabilityResult is_separable(const Automaton& aut, const Term& t, const PositionSet& ys,
                                const std::optional<PositionSet>& zs = std::nullopt,
                                std::uint64_t max_assignments = kDefaultMaxAssignments);

}  // namespace fta
