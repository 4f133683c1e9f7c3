#pragma once

// Index arithmetic over Ass(V, F0) and a flattened evaluator used by the
// exhaustive analyses. Internal to the library.

#include <cstdint>
#include <span>
#include <vector>

#include "fta/automaton.hpp"

namespace fta::detail {

/// base^exp, throwing EnumerationBudgetExceeded when it exceeds cap.
std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap);

/// All assignments of `vars` to the signature's constants, indexed in
/// canonical odometer order: variables ascending, the highest variable
/// varying fastest, constants in declaration order.
class AssignmentSpace {
 public:
  AssignmentSpace(const Automaton& aut, const VarSet& vars, std::uint64_t cap);

  std::uint64_t size() const noexcept { return size_; }
  const std::vector<VarIndex>& vars() const noexcept { return vars_; }
  std::size_t radix() const noexcept { return constants_->size(); }

  std::vector<std::uint32_t> digits(std::uint64_t index) const;
  Assignment assignment(std::uint64_t index) const;
  /// For each index of this space, its contribution to the index of `super`
  /// (whose variables include ours). Summing the offsets of two
  /// complementary subspaces yields the index in `super`.
  std::vector<std::uint64_t> offsets_in(const AssignmentSpace& super) const;

 private:
  const std::vector<std::string>* constants_;
  std::vector<VarIndex> vars_;
  std::uint64_t size_ = 1;
};

/// A term flattened to postfix form with variables mapped to slots.
class CompiledTerm {
 public:
  /// `slots` lists the variables in slot order and must cover vars(t).
  CompiledTerm(const Automaton& aut, const Term& t, const std::vector<VarIndex>& slots);

  StateId evaluate(std::span<const StateId> slot_states, std::vector<StateId>& stack) const;

 private:
  enum class Kind : std::uint8_t { constant, variable, apply };
  struct Op {
    Kind kind;
    std::uint32_t payload;  // state, slot or symbol id
    std::uint32_t arity;
  };
  void compile(const Term& t, const std::vector<VarIndex>& slots);

  const Automaton* aut_;
  std::vector<Op> ops_;
};

/// Root state of t under every assignment of `space`, in index order.
/// vars(t) must be a subset of the space's variables.
std::vector<StateId> evaluate_all(const Automaton& aut, const Term& t, const AssignmentSpace& space);

/// Delta_0 state of each constant, in declaration order.
std::vector<StateId> constant_states(const Automaton& aut);

}  // namespace fta::detail
