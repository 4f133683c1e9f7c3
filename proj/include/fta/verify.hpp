#pragma once

// Executable property suite over (automaton, term) instances.
//
//   P1  essential positions are prefix-closed
//   P2  Ind(p) is prefix-determined w.r.t. Pos(t) for every p
//   P3  fictive positions are prefix-determined w.r.t. Pos(t)
//   P4  positions claimed fictive from a determining subtree are fictive
//   P5  a separable singleton {s} is essential in every subtree on the
//       strong chain from s to the root
//   P6  the indexed essentiality search agrees with a direct double loop
//   P7  freeze_fictive preserves every run result
//
// P1, P3, P4 and P5 rest on arguments that assume the variables of the
// subtree under study do not occur elsewhere in the relevant context. Each
// failure records whether the instance breaks that assumption
// (`shared_variables`), which separates counterexamples to the statements
// from implementation defects.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fta/automaton.hpp"
#include "fta/term.hpp"

namespace fta {

enum class Property {
  essential_prefix_closed = 1,
  ind_prefix_determined,
  fictive_prefix_determined,
  determining_claims_fictive,
  separable_strong_chain,
  oracle_agreement,
  pruning_sound,
};

inline constexpr Property kAllProperties[] = {
    Property::essential_prefix_closed,    Property::ind_prefix_determined,
    Property::fictive_prefix_determined,  Property::determining_claims_fictive,
    Property::separable_strong_chain,     Property::oracle_agreement,
    Property::pruning_sound,
};

/// "P1" .. "P7"
std::string property_id(Property p);
std::string_view property_description(Property p);
/// Accepts "P1".."P7". Throws std::invalid_argument.
Property parse_property_id(std::string_view id);

struct PropertyOutcome {
  bool budget_exceeded = false;
  /// Set when the property fails on the instance.
  std::optional<std::string> failure;
  bool shared_variables = false;
};

PropertyOutcome check_property(Property p, const Automaton& aut, const Term& t,
                               std::uint64_t max_assignments = kDefaultMaxAssignments);

struct PropertyFailure {
  Property property;
  std::string automaton_text;
  std::string term_text;
  std::string detail;
  bool shared_variables = false;
};

struct PropertyEntry {
  Property property;
  std::size_t instances_checked = 0;
  std::size_t budget_exceeded = 0;
  std::vector<PropertyFailure> failures;
};

class PropertyReport {
 public:
  PropertyReport();

  const std::vector<PropertyEntry>& entries() const noexcept { return entries_; }
  const PropertyEntry& entry(Property p) const;

  void record(Property p, const PropertyOutcome& outcome, const Automaton& aut, const Term& t);
  void merge(const PropertyReport& other);

  std::size_t total_failures() const;
  /// Failures on instances that satisfy the variable-disjointness assumption.
  std::size_t unexplained_failures() const;

 private:
  std::vector<PropertyEntry> entries_;
};

PropertyReport verify_properties(const Automaton& aut, const Term& t,
                                 std::uint64_t max_assignments = kDefaultMaxAssignments);

struct SuiteParams {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t max_states = 3;
  std::size_t max_depth = 4;
  std::size_t max_vars = 4;
  std::uint64_t max_assignments = kDefaultMaxAssignments;
};

struct Instance {
  Automaton automaton;
  Term term;
};

/// The i-th instance of a seeded batch over the boolean signature.
Instance random_instance(const SuiteParams& params, std::size_t index);

PropertyReport run_random_suite(const SuiteParams& params);

}  // namespace fta
