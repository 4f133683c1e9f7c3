#pragma once

// Complete deterministic bottom-up finite tree automata.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fta/term.hpp"

namespace fta {

using StateId = std::uint32_t;

/// Default cap on the number of total assignments a single query may enumerate.
inline constexpr std::uint64_t kDefaultMaxAssignments = std::uint64_t{1} << 20;

/// One transition `symbol(arguments...) -> target`, by state name.
struct Rule {
  std::string symbol;
  std::vector<std::string> arguments;
  std::string target;
};

/// Automaton as written in a file, before validation.
struct AutomatonDefinition {
  std::vector<std::string> states;
  std::vector<std::string> final_states;
  std::vector<Rule> rules;
};

/// Parsed, unvalidated file contents.
struct AutomatonSource {
  Signature signature;
  AutomatonDefinition definition;
};

/// Defects found by `validate`, one human-readable line each, e.g.
/// "missing: f1(q1,q0)" or "nondeterministic: g(q0) -> q1 | q0".
std::vector<std::string> validate(const Signature& sig, const AutomatonDefinition& def);

class Automaton {
 public:
  /// Throws ValidationError unless `def` is complete and deterministic over `sig`.
  static Automaton build(Signature sig, const AutomatonDefinition& def);

  const Signature& signature() const noexcept { return sig_; }

  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;
  bool is_final(StateId q) const { return final_.at(q); }

  /// Index of `symbol` in the signature.
  std::optional<std::size_t> symbol_id(std::string_view symbol) const { return sig_.index_of(symbol); }
  /// Delta for the symbol with index `symbol`; `args.size()` must equal its arity.
  StateId transition(std::size_t symbol, std::span<const StateId> args) const;
  StateId transition(std::string_view symbol, std::span<const StateId> args) const;
  /// Delta_0 of a constant. Throws UnknownSymbol if it is not one.
  StateId constant_state(std::string_view constant) const;

  std::size_t rule_count() const noexcept;
  /// Canonical definition: states and symbols in declaration order, argument
  /// tuples in odometer order (first argument most significant).
  AutomatonDefinition definition() const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  Automaton(Signature sig) : sig_(std::move(sig)) {}

  Signature sig_;
  std::vector<std::string> states_;
  std::vector<bool> final_;
  // tables_[symbol][mixed-radix index of args, base |Q|, first argument most significant]
  std::vector<std::vector<StateId>> tables_;
};

/// Parses the line-oriented automaton format. Throws SyntaxError or SignatureError.
AutomatonSource parse_automaton_source(std::string_view text);
/// parse_automaton_source followed by Automaton::build.
Automaton parse_automaton(std::string_view text);
/// Inverse of parse_automaton; byte-identical for equal automata.
std::string render_automaton(const Automaton& aut);

/// Finite map from variables to constants of the signature.
class Assignment {
 public:
  Assignment() = default;

  void bind(VarIndex v, std::string constant) { binding_[v] = std::move(constant); }
  const std::string* find(VarIndex v) const;
  bool binds(VarIndex v) const { return binding_.count(v) != 0; }
  bool empty() const noexcept { return binding_.empty(); }
  std::size_t size() const noexcept { return binding_.size(); }
  const std::map<VarIndex, std::string>& bindings() const noexcept { return binding_; }

  Substitution as_substitution() const;
  /// Restriction to the given variables.
  Assignment restricted_to(const VarSet& vs) const;
  /// "x1=0 x2=1"; the empty assignment renders as "∅".
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<VarIndex, std::string> binding_;
};

/// Parses "x1=0,x2=1" (commas or whitespace). Values must be constants of sig.
/// Throws SyntaxError or UnknownSymbol.
Assignment parse_assignment(std::string_view text, const Signature& sig);

struct RunTrace {
  StateId result = 0;
  std::map<Position, StateId> per_position;
};

/// Bottom-up run. Throws UnboundVariable if gamma misses a variable of t.
RunTrace run(const Automaton& aut, const Assignment& gamma, const Term& t);
/// Same result as run(...).result without building the trace.
StateId evaluate(const Automaton& aut, const Assignment& gamma, const Term& t);

/// A term whose leaves may also be state leaves, rendered `@<state>`.
struct MixedTerm {
  Term term;

  /// The state name if the whole term is one state leaf.
  std::optional<std::string> as_state() const;
  std::string to_string() const { return render_term(term); }

  friend bool operator==(const MixedTerm&, const MixedTerm&) = default;
};

bool is_state_leaf(const Term& t) noexcept;
MixedTerm parse_mixed_term(std::string_view text, const Automaton& aut);

/// Substitutes gamma, then collapses every node whose children are all state
/// leaves into the state leaf of its transition, to fixpoint.
MixedTerm partial_run(const Automaton& aut, const Assignment& gamma, const Term& t);
/// Positions whose node can be collapsed in one step.
std::vector<Position> collapsible_positions(const Automaton& aut, const MixedTerm& m);
/// One collapse step at p; nullopt if p is not collapsible.
std::optional<MixedTerm> collapse_at(const Automaton& aut, const MixedTerm& m, const Position& p);

/// First accepting total assignment over vars(t) in canonical order.
/// Throws EnumerationBudgetExceeded.
std::optional<Assignment> accepts(const Automaton& aut, const Term& t,
                                  std::uint64_t max_assignments = kDefaultMaxAssignments);

/// Smallest ground term reaching each reachable state: minimal depth, then
/// minimal rendered length, then lexicographically least rendering.
std::map<StateId, Term> canonical_ground(const Automaton& aut);

}  // namespace fta
