#include "fta/generate.hpp"

#include <stdexcept>

#include "fta/random.hpp"

namespace fta {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) noexcept {
  state_ = splitmix64(seed);
  if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t Xorshift64Star::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545f4914f6cdd1dULL;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) noexcept {
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = -bound % bound;
  while (true) {
    std::uint64_t x = next();
    if (x >= limit) return x % bound;
  }
}

Signature boolean_signature() {
  return Signature({{"0", 0}, {"1", 0}, {"g", 1}, {"f1", 2}, {"f2", 2}});
}

namespace {

Term grow(Xorshift64Star& rng, const GenParams& params, const std::vector<const Symbol*>& constants,
          const std::vector<const Symbol*>& operators, std::size_t budget, bool root) {
  const bool leaf = budget == 0 || operators.empty() || (!root && rng.below(3) == 0);
  if (leaf) {
    const std::uint64_t choice = rng.below(constants.size() + params.var_pool);
    if (choice < constants.size()) return Term::node(constants[choice]->name);
    return Term::variable(static_cast<VarIndex>(choice - constants.size() + 1));
  }
  const Symbol* sym = operators[rng.below(operators.size())];
  std::vector<Term> children;
  for (std::size_t i = 0; i < sym->arity; ++i)
    children.push_back(grow(rng, params, constants, operators, budget - 1, false));
  return Term::node(sym->name, std::move(children));
}

}  // namespace

Term random_term(const GenParams& params) {
  std::vector<const Symbol*> constants, operators;
  for (const auto& s : params.signature.symbols()) (s.arity == 0 ? constants : operators).push_back(&s);
  Xorshift64Star rng(params.seed);
  return grow(rng, params, constants, operators, params.max_depth, true);
}

Automaton random_automaton(const GenParams& params) {
  if (params.state_count == 0) throw std::invalid_argument("state_count must be at least 1");
  Xorshift64Star rng(params.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  AutomatonDefinition def;
  for (std::size_t q = 0; q < params.state_count; ++q) def.states.push_back("q" + std::to_string(q));
  for (const auto& q : def.states)
    if (rng.below(2) == 1) def.final_states.push_back(q);
  if (def.final_states.empty()) def.final_states.push_back(def.states[rng.below(def.states.size())]);

  for (const auto& sym : params.signature.symbols()) {
    std::vector<std::size_t> tuple(sym.arity, 0);
    while (true) {
      Rule r{sym.name, {}, def.states[rng.below(def.states.size())]};
      for (auto q : tuple) r.arguments.push_back(def.states[q]);
      def.rules.push_back(std::move(r));
      std::size_t i = sym.arity;
      bool done = true;
      while (i-- > 0) {
        if (++tuple[i] < def.states.size()) {
          done = false;
          break;
        }
        tuple[i] = 0;
      }
      if (done) break;
    }
  }
  return Automaton::build(params.signature, def);
}

}  // namespace fta
