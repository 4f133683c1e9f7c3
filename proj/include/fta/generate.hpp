#pragma once

// Seeded random terms and automata. Identical parameters give identical
// output on every platform.

#include <cstdint>

#include "fta/automaton.hpp"
#include "fta/term.hpp"

namespace fta {

/// {0/0, 1/0, g/1, f1/2, f2/2}
Signature boolean_signature();

struct GenParams {
  std::size_t max_depth = 3;
  std::size_t var_pool = 2;
  std::uint64_t seed = 0;
  std::size_t state_count = 2;
  Signature signature = boolean_signature();
};

/// Depth at most max_depth; variables drawn from x1..x<var_pool>. The root
/// is an operator whenever max_depth > 0, inner nodes become leaves with
/// probability 1/3.
Term random_term(const GenParams& params);
/// Complete and deterministic, states q0..q<n-1>, at least one final state.
Automaton random_automaton(const GenParams& params);

}  // namespace fta
