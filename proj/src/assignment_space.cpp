#include "assignment_space.hpp"

#include <algorithm>
#include <limits>

#include "fta/error.hpp"

namespace fta::detail {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kMax / base) throw EnumerationBudgetExceeded(kMax, cap);
    result *= base;
  }
  if (result > cap) throw EnumerationBudgetExceeded(result, cap);
  return result;
}

AssignmentSpace::AssignmentSpace(const Automaton& aut, const VarSet& vars, std::uint64_t cap)
    : constants_(&aut.signature().constants()), vars_(vars.begin(), vars.end()) {
  size_ = checked_power(constants_->size(), vars_.size(), cap);
}

std::vector<std::uint32_t> AssignmentSpace::digits(std::uint64_t index) const {
  std::vector<std::uint32_t> d(vars_.size());
  for (std::size_t i = vars_.size(); i-- > 0;) {
    d[i] = static_cast<std::uint32_t>(index % radix());
    index /= radix();
  }
  return d;
}

Assignment AssignmentSpace::assignment(std::uint64_t index) const {
  Assignment a;
  auto d = digits(index);
  for (std::size_t i = 0; i < vars_.size(); ++i) a.bind(vars_[i], (*constants_)[d[i]]);
  return a;
}

std::vector<std::uint64_t> AssignmentSpace::offsets_in(const AssignmentSpace& super) const {
  // Weight of each of our variables inside the super space.
  std::vector<std::uint64_t> weights(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(super.vars_.begin(), super.vars_.end(), vars_[i]);
    auto from_end = static_cast<std::size_t>(super.vars_.end() - it) - 1;
    std::uint64_t w = 1;
    for (std::size_t k = 0; k < from_end; ++k) w *= radix();
    weights[i] = w;
  }
  std::vector<std::uint64_t> out(size_);
  std::vector<std::uint32_t> d(vars_.size(), 0);
  std::uint64_t offset = 0;
  for (std::uint64_t idx = 0; idx < size_; ++idx) {
    out[idx] = offset;
    // odometer increment, last variable fastest
    for (std::size_t i = vars_.size(); i-- > 0;) {
      if (++d[i] < radix()) {
        offset += weights[i];
        break;
      }
      offset -= weights[i] * (radix() - 1);
      d[i] = 0;
    }
  }
  return out;
}

CompiledTerm::CompiledTerm(const Automaton& aut, const Term& t, const std::vector<VarIndex>& slots)
    : aut_(&aut) {
  compile(t, slots);
}

void CompiledTerm::compile(const Term& t, const std::vector<VarIndex>& slots) {
  if (t.is_variable()) {
    auto it = std::find(slots.begin(), slots.end(), t.variable_index());
    if (it == slots.end()) throw UnboundVariable("unbound variable " + variable_name(t.variable_index()));
    ops_.push_back({Kind::variable, static_cast<std::uint32_t>(it - slots.begin()), 0});
    return;
  }
  if (t.children().empty()) {
    ops_.push_back({Kind::constant, aut_->constant_state(t.symbol()), 0});
    return;
  }
  for (const auto& c : t.children()) compile(c, slots);
  auto id = aut_->symbol_id(t.symbol());
  if (!id) throw UnknownSymbol("unknown symbol '" + t.symbol() + "'", 0);
  ops_.push_back({Kind::apply, static_cast<std::uint32_t>(*id), static_cast<std::uint32_t>(t.children().size())});
}

StateId CompiledTerm::evaluate(std::span<const StateId> slot_states, std::vector<StateId>& stack) const {
  stack.clear();
  for (const auto& op : ops_) {
    switch (op.kind) {
      case Kind::constant:
        stack.push_back(op.payload);
        break;
      case Kind::variable:
        stack.push_back(slot_states[op.payload]);
        break;
      case Kind::apply: {
        auto first = stack.end() - op.arity;
        StateId q = aut_->transition(op.payload, std::span<const StateId>(&*first, op.arity));
        stack.erase(first, stack.end());
        stack.push_back(q);
        break;
      }
    }
  }
  return stack.back();
}

std::vector<StateId> constant_states(const Automaton& aut) {
  std::vector<StateId> out;
  for (const auto& c : aut.signature().constants()) out.push_back(aut.constant_state(c));
  return out;
}

std::vector<StateId> evaluate_all(const Automaton& aut, const Term& t, const AssignmentSpace& space) {
  CompiledTerm compiled(aut, t, space.vars());
  const auto leaf = constant_states(aut);
  const std::size_t n = space.vars().size();
  std::vector<std::uint32_t> d(n, 0);
  std::vector<StateId> slot_states(n, leaf.at(0));
  std::vector<StateId> stack;
  std::vector<StateId> out(space.size());
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    out[idx] = compiled.evaluate(slot_states, stack);
    for (std::size_t i = n; i-- > 0;) {
      if (++d[i] < space.radix()) {
        slot_states[i] = leaf[d[i]];
        break;
      }
      d[i] = 0;
      slot_states[i] = leaf[0];
    }
  }
  return out;
}

}  // namespace fta::detail
