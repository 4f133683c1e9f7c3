#include "fta/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "assignment_space.hpp"
#include "fta/error.hpp"
#include "term_parser.hpp"

namespace fta {

namespace {

std::string render_lhs(const std::string& symbol, const std::vector<std::string>& args) {
  if (args.empty()) return symbol;
  std::string out = symbol + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i];
  }
  return out + ")";
}

// Visits every tuple of `arity` states in odometer order.
template <typename F>
void for_each_tuple(std::size_t state_count, std::size_t arity, F&& f) {
  std::vector<StateId> tuple(arity, 0);
  while (true) {
    f(tuple);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++tuple[i] < state_count) break;
      tuple[i] = 0;
      if (i == 0) return;
    }
    if (arity == 0) return;
  }
}

std::size_t tuple_index(std::span<const StateId> args, std::size_t base) {
  std::size_t idx = 0;
  for (auto q : args) idx = idx * base + q;
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate(const Signature& sig, const AutomatonDefinition& def) {
  std::vector<std::string> defects;
  std::map<std::string, StateId> state_index;
  if (def.states.empty()) defects.push_back("no states declared");
  for (const auto& s : def.states) {
    if (!state_index.emplace(s, static_cast<StateId>(state_index.size())).second)
      defects.push_back("duplicate state: " + s);
  }
  for (const auto& f : def.final_states)
    if (!state_index.count(f)) defects.push_back("final state not in Q: " + f);

  // (symbol, argument names) -> target, first occurrence wins
  std::map<std::pair<std::string, std::vector<std::string>>, std::string> seen;
  for (const auto& r : def.rules) {
    const std::string lhs = render_lhs(r.symbol, r.arguments);
    const Symbol* sym = sig.find(r.symbol);
    if (!sym) {
      defects.push_back("unknown symbol: " + lhs);
      continue;
    }
    if (sym->arity != r.arguments.size()) {
      defects.push_back("arity mismatch: " + lhs);
      continue;
    }
    bool ok = true;
    for (const auto& a : r.arguments)
      if (!state_index.count(a)) {
        defects.push_back("unknown state: " + a + " in " + lhs);
        ok = false;
      }
    if (!state_index.count(r.target)) {
      defects.push_back("unknown state: " + r.target + " in " + lhs + " -> " + r.target);
      ok = false;
    }
    if (!ok) continue;
    auto [it, inserted] = seen.emplace(std::make_pair(r.symbol, r.arguments), r.target);
    if (!inserted) {
      if (it->second == r.target)
        defects.push_back("duplicate: " + lhs);
      else
        defects.push_back("nondeterministic: " + lhs + " -> " + it->second + " | " + r.target);
    }
  }

  if (!def.states.empty()) {
    for (const auto& sym : sig.symbols()) {
      for_each_tuple(def.states.size(), sym.arity, [&](const std::vector<StateId>& tuple) {
        std::vector<std::string> args;
        for (auto q : tuple) args.push_back(def.states[q]);
        if (!seen.count({sym.name, args})) defects.push_back("missing: " + render_lhs(sym.name, args));
      });
    }
  }
  return defects;
}

// ---------------------------------------------------------------------------
// Automaton

Automaton Automaton::build(Signature sig, const AutomatonDefinition& def) {
  auto defects = validate(sig, def);
  if (!defects.empty()) throw ValidationError(std::move(defects));

  Automaton aut(std::move(sig));
  aut.states_ = def.states;
  aut.final_.assign(def.states.size(), false);
  for (const auto& f : def.final_states) aut.final_[*aut.find_state(f)] = true;

  const std::size_t base = aut.states_.size();
  for (const auto& sym : aut.sig_.symbols()) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < sym.arity; ++i) cells *= base;
    aut.tables_.emplace_back(cells, 0);
  }
  for (const auto& r : def.rules) {
    std::vector<StateId> args;
    for (const auto& a : r.arguments) args.push_back(*aut.find_state(a));
    aut.tables_[*aut.sig_.index_of(r.symbol)][tuple_index(args, base)] = *aut.find_state(r.target);
  }
  return aut;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

StateId Automaton::transition(std::size_t symbol, std::span<const StateId> args) const {
  return tables_[symbol][tuple_index(args, states_.size())];
}

StateId Automaton::transition(std::string_view symbol, std::span<const StateId> args) const {
  auto id = sig_.index_of(symbol);
  if (!id) throw UnknownSymbol("unknown symbol '" + std::string(symbol) + "'", 0);
  if (sig_.symbols()[*id].arity != args.size())
    throw ArityMismatch("wrong number of arguments for '" + std::string(symbol) + "'", 0);
  return transition(*id, args);
}

StateId Automaton::constant_state(std::string_view constant) const {
  auto id = sig_.index_of(constant);
  if (!id || sig_.symbols()[*id].arity != 0)
    throw UnknownSymbol("'" + std::string(constant) + "' is not a constant", 0);
  return tables_[*id][0];
}

std::size_t Automaton::rule_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.size();
  return n;
}

AutomatonDefinition Automaton::definition() const {
  AutomatonDefinition def;
  def.states = states_;
  for (std::size_t q = 0; q < states_.size(); ++q)
    if (final_[q]) def.final_states.push_back(states_[q]);
  for (std::size_t s = 0; s < sig_.symbols().size(); ++s) {
    const auto& sym = sig_.symbols()[s];
    for_each_tuple(states_.size(), sym.arity, [&](const std::vector<StateId>& tuple) {
      Rule r{sym.name, {}, states_[transition(s, tuple)]};
      for (auto q : tuple) r.arguments.push_back(states_[q]);
      def.rules.push_back(std::move(r));
    });
  }
  return def;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::pair<std::string_view, std::size_t>> split_words(std::string_view s, std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start), base + start);
  }
  return out;
}

Rule parse_rule(std::string_view body, std::size_t base) {
  auto arrow = body.find("->");
  if (arrow == body.npos) throw SyntaxError("rule without '->'", base);
  Rule r;
  std::string_view lhs = trim(body.substr(0, arrow));
  std::string_view rhs = trim(body.substr(arrow + 2));
  if (!is_valid_name(rhs)) throw SyntaxError("malformed target state", base + arrow + 2);
  r.target = std::string(rhs);
  auto open = lhs.find('(');
  if (open == lhs.npos) {
    if (!is_valid_name(lhs)) throw SyntaxError("malformed rule symbol", base);
    r.symbol = std::string(lhs);
    return r;
  }
  r.symbol = std::string(trim(lhs.substr(0, open)));
  if (!is_valid_name(r.symbol)) throw SyntaxError("malformed rule symbol", base);
  if (lhs.back() != ')') throw SyntaxError("expected ')' in rule", base);
  std::string_view inner = lhs.substr(open + 1, lhs.size() - open - 2);
  std::size_t start = 0;
  while (true) {
    auto comma = inner.find(',', start);
    std::string_view arg = trim(inner.substr(start, comma == inner.npos ? inner.npos : comma - start));
    if (!is_valid_name(arg)) throw SyntaxError("malformed rule argument", base + open + 1 + start);
    r.arguments.emplace_back(arg);
    if (comma == inner.npos) break;
    start = comma + 1;
  }
  return r;
}

}  // namespace

AutomatonSource parse_automaton_source(std::string_view text) {
  std::optional<std::vector<Symbol>> symbols;
  AutomatonDefinition def;
  bool have_states = false;
  bool have_final = false;

  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == text.npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);

    if (!trim(line).empty()) {
      auto colon = line.find(':');
      if (colon == line.npos) throw SyntaxError("expected 'key:'", line_start);
      std::string_view key = trim(line.substr(0, colon));
      std::string_view body = line.substr(colon + 1);
      std::size_t body_offset = line_start + colon + 1;

      if (key == "signature") {
        if (symbols) throw SyntaxError("duplicate 'signature:' line", line_start);
        symbols.emplace();
        for (auto [word, off] : split_words(body, body_offset)) {
          auto slash = word.rfind('/');
          std::size_t arity = 0;
          if (slash == word.npos || slash == 0 || slash + 1 == word.size())
            throw SyntaxError("expected name/arity", off);
          for (char c : word.substr(slash + 1)) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw SyntaxError("malformed arity", off + slash + 1);
            arity = arity * 10 + static_cast<std::size_t>(c - '0');
          }
          symbols->push_back({std::string(word.substr(0, slash)), arity});
        }
      } else if (key == "states") {
        if (have_states) throw SyntaxError("duplicate 'states:' line", line_start);
        have_states = true;
        for (auto [word, off] : split_words(body, body_offset)) {
          if (!is_valid_name(word)) throw SyntaxError("malformed state name", off);
          def.states.emplace_back(word);
        }
      } else if (key == "final") {
        if (have_final) throw SyntaxError("duplicate 'final:' line", line_start);
        have_final = true;
        for (auto [word, off] : split_words(body, body_offset)) {
          if (!is_valid_name(word)) throw SyntaxError("malformed state name", off);
          def.final_states.emplace_back(word);
        }
      } else if (key == "rule") {
        def.rules.push_back(parse_rule(body, body_offset));
      } else {
        throw SyntaxError("unknown key '" + std::string(key) + "'", line_start);
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }

  if (!symbols) throw SyntaxError("missing 'signature:' line", 0);
  if (!have_states) throw SyntaxError("missing 'states:' line", 0);
  return AutomatonSource{Signature(std::move(*symbols)), std::move(def)};
}

Automaton parse_automaton(std::string_view text) {
  auto src = parse_automaton_source(text);
  return Automaton::build(std::move(src.signature), src.definition);
}

std::string render_automaton(const Automaton& aut) {
  std::ostringstream out;
  out << "signature:";
  for (const auto& s : aut.signature().symbols()) out << ' ' << s.name << '/' << s.arity;
  out << "\nstates:";
  for (const auto& q : aut.state_names()) out << ' ' << q;
  auto def = aut.definition();
  out << "\nfinal:";
  for (const auto& q : def.final_states) out << ' ' << q;
  out << '\n';
  for (const auto& r : def.rules) out << "rule: " << render_lhs(r.symbol, r.arguments) << " -> " << r.target << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignments

const std::string* Assignment::find(VarIndex v) const {
  auto it = binding_.find(v);
  return it == binding_.end() ? nullptr : &it->second;
}

Substitution Assignment::as_substitution() const {
  Substitution s;
  for (const auto& [v, c] : binding_) s.emplace(v, Term::node(c));
  return s;
}

Assignment Assignment::restricted_to(const VarSet& vs) const {
  Assignment out;
  for (const auto& [v, c] : binding_)
    if (vs.count(v)) out.bind(v, c);
  return out;
}

std::string Assignment::to_string() const {
  if (binding_.empty()) return "∅";
  std::string out;
  for (const auto& [v, c] : binding_) {
    if (!out.empty()) out += ' ';
    out += variable_name(v) + "=" + c;
  }
  return out;
}

Assignment parse_assignment(std::string_view text, const Signature& sig) {
  Assignment a;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && text[i] != ',' && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view item = text.substr(start, i - start);
    auto eq = item.find('=');
    if (eq == item.npos) throw SyntaxError("expected var=constant", start);
    auto v = parse_variable_token(item.substr(0, eq));
    if (!v) throw SyntaxError("malformed variable '" + std::string(item.substr(0, eq)) + "'", start);
    std::string_view value = item.substr(eq + 1);
    const Symbol* sym = sig.find(value);
    if (!sym || sym->arity != 0)
      throw UnknownSymbol("'" + std::string(value) + "' is not a constant", start + eq + 1);
    if (a.binds(*v)) throw SyntaxError("variable bound twice", start);
    a.bind(*v, std::string(value));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

StateId leaf_state(const Automaton& aut, const Assignment& gamma, const Term& t) {
  if (t.is_variable()) {
    const std::string* c = gamma.find(t.variable_index());
    if (!c) throw UnboundVariable("unbound variable " + variable_name(t.variable_index()));
    return aut.constant_state(*c);
  }
  return aut.constant_state(t.symbol());
}

StateId run_rec(const Automaton& aut, const Assignment& gamma, const Term& t,
                std::vector<std::size_t>& path, std::map<Position, StateId>* trace) {
  StateId q;
  if (t.is_leaf()) {
    q = leaf_state(aut, gamma, t);
  } else {
    std::vector<StateId> args;
    args.reserve(t.children().size());
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      path.push_back(i + 1);
      args.push_back(run_rec(aut, gamma, t.children()[i], path, trace));
      path.pop_back();
    }
    q = aut.transition(t.symbol(), args);
  }
  if (trace) trace->emplace(Position(path), q);
  return q;
}

}  // namespace

RunTrace run(const Automaton& aut, const Assignment& gamma, const Term& t) {
  RunTrace trace;
  std::vector<std::size_t> path;
  trace.result = run_rec(aut, gamma, t, path, &trace.per_position);
  return trace;
}

StateId evaluate(const Automaton& aut, const Assignment& gamma, const Term& t) {
  std::vector<std::size_t> path;
  return run_rec(aut, gamma, t, path, nullptr);
}

// ---------------------------------------------------------------------------
// Partial runs

bool is_state_leaf(const Term& t) noexcept {
  return !t.is_variable() && t.children().empty() && !t.symbol().empty() && t.symbol()[0] == '@';
}

std::optional<std::string> MixedTerm::as_state() const {
  if (!is_state_leaf(term)) return std::nullopt;
  return term.symbol().substr(1);
}

MixedTerm parse_mixed_term(std::string_view text, const Automaton& aut) {
  return MixedTerm{detail::parse_term_impl(text, aut.signature(), &aut.state_names())};
}

namespace {

StateId state_of_leaf(const Automaton& aut, const Term& leaf) {
  return *aut.find_state(std::string_view(leaf.symbol()).substr(1));
}

// Collapses the node if every child is a state leaf (constants included).
std::optional<Term> collapse_node(const Automaton& aut, const Term& t) {
  if (t.is_variable() || is_state_leaf(t)) return std::nullopt;
  std::vector<StateId> args;
  for (const auto& c : t.children()) {
    if (!is_state_leaf(c)) return std::nullopt;
    args.push_back(state_of_leaf(aut, c));
  }
  return Term::node("@" + aut.state_name(aut.transition(t.symbol(), args)));
}

Term collapse_all(const Automaton& aut, const Term& t) {
  if (t.is_variable() || is_state_leaf(t)) return t;
  std::vector<Term> children;
  for (const auto& c : t.children()) children.push_back(collapse_all(aut, c));
  Term rebuilt = Term::node(t.symbol(), std::move(children));
  if (auto collapsed = collapse_node(aut, rebuilt)) return *collapsed;
  return rebuilt;
}

void collect_collapsible(const Automaton& aut, const Term& t, std::vector<std::size_t>& path,
                         std::vector<Position>& out) {
  if (collapse_node(aut, t)) out.emplace_back(path);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(i + 1);
    collect_collapsible(aut, t.children()[i], path, out);
    path.pop_back();
  }
}

}  // namespace

MixedTerm partial_run(const Automaton& aut, const Assignment& gamma, const Term& t) {
  return MixedTerm{collapse_all(aut, substitute(t, gamma.as_substitution()))};
}

std::vector<Position> collapsible_positions(const Automaton& aut, const MixedTerm& m) {
  std::vector<Position> out;
  std::vector<std::size_t> path;
  collect_collapsible(aut, m.term, path, out);
  return out;
}

std::optional<MixedTerm> collapse_at(const Automaton& aut, const MixedTerm& m, const Position& p) {
  auto collapsed = collapse_node(aut, subterm_at(m.term, p));
  if (!collapsed) return std::nullopt;
  return MixedTerm{replace_at(m.term, p, std::move(*collapsed))};
}

// ---------------------------------------------------------------------------
// Acceptance and ground representatives

std::optional<Assignment> accepts(const Automaton& aut, const Term& t, std::uint64_t max_assignments) {
  detail::AssignmentSpace space(aut, vars(t), max_assignments);
  auto roots = detail::evaluate_all(aut, t, space);
  for (std::uint64_t i = 0; i < roots.size(); ++i)
    if (aut.is_final(roots[i])) return space.assignment(i);
  return std::nullopt;
}

std::map<StateId, Term> canonical_ground(const Automaton& aut) {
  // bound[q] is the least (length, rendering) ground term of depth <= k
  // reaching q. With children fixed at their minimal lengths the compound
  // compares componentwise, so the depth k+1 table follows from the depth k
  // table. A state's representative is taken in the round it first appears.
  struct Best {
    std::string text;
    Term term;
  };
  auto better = [](const std::string& a, const std::string& b) {
    return std::make_tuple(a.size(), std::string_view(a)) < std::make_tuple(b.size(), std::string_view(b));
  };

  const std::size_t n = aut.state_count();
  std::vector<std::optional<Best>> bound(n);
  for (const auto& c : aut.signature().constants()) {
    StateId q = aut.constant_state(c);
    if (!bound[q] || better(c, bound[q]->text)) bound[q] = Best{c, Term::node(c)};
  }
  std::map<StateId, Term> out;
  for (std::size_t q = 0; q < n; ++q)
    if (bound[q]) out.emplace(static_cast<StateId>(q), bound[q]->term);

  // minimal depths are below n
  for (std::size_t round = 1; round < n; ++round) {
    auto next = bound;
    for (std::size_t s = 0; s < aut.signature().symbols().size(); ++s) {
      const auto& sym = aut.signature().symbols()[s];
      if (sym.arity == 0) continue;
      for_each_tuple(n, sym.arity, [&](const std::vector<StateId>& tuple) {
        for (auto q : tuple)
          if (!bound[q]) return;
        StateId target = aut.transition(s, tuple);
        std::string text = sym.name + "(";
        std::vector<Term> children;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
          if (i) text += ',';
          text += bound[tuple[i]]->text;
          children.push_back(bound[tuple[i]]->term);
        }
        text += ')';
        if (!next[target] || better(text, next[target]->text))
          next[target] = Best{std::move(text), Term::node(sym.name, std::move(children))};
      });
    }
    bound = std::move(next);
    for (std::size_t q = 0; q < n; ++q)
      if (bound[q] && !out.count(static_cast<StateId>(q))) out.emplace(static_cast<StateId>(q), bound[q]->term);
  }
  return out;
}

}  // namespace fta
