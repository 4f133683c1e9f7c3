#pragma once

#include <optional>
#include <vector>

#include "assignment_space.hpp"
#include "fta/essential.hpp"

namespace fta::detail {

/// Root states of t under every total assignment of vars(t), shared by the
/// per-position queries on one term.
class TermAnalysis {
 public:
  TermAnalysis(const Automaton& aut, const Term& t, std::uint64_t max_assignments);

  const AssignmentSpace& space() const noexcept { return space_; }
  const std::vector<StateId>& roots() const noexcept { return roots_; }

  /// Throws InvalidPosition.
  std::optional<WitnessPair> witness_at(const Position& p) const;
  /// t and t|p reach the same state under every assignment.
  bool equivalent_to_subtree(const Position& p) const;
  VarSet essential_vars() const;

 private:
  const Automaton* aut_;
  const Term* term_;
  std::uint64_t cap_;
  AssignmentSpace space_;
  std::vector<StateId> roots_;
};

}  // namespace fta::detail
