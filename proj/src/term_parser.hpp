#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fta/term.hpp"

namespace fta::detail {

/// Shared by parse_term and parse_mixed_term. When `state_names` is non-null,
/// `@name` tokens naming one of those states parse as nullary state leaves.
Term parse_term_impl(std::string_view text, const Signature& sig,
                     const std::vector<std::string>* state_names);

}  // namespace fta::detail
