#pragma once

// Ranked terms over a signature, their concrete syntax, and the position
// algebra (subterms, independence, prefix predicates, strong chains).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fta {

using VarIndex = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Ranked alphabet. Symbol names are unique, at least one symbol is a
/// constant, and no name lies in the variable namespace `x<positive-int>`.
class Signature {
 public:
  /// Throws SignatureError when an invariant is violated.
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  const Symbol* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Nullary symbols in declaration order.
  const std::vector<std::string>& constants() const noexcept { return constants_; }
  std::size_t max_arity() const noexcept;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  std::vector<std::string> constants_;
};

/// Characters allowed in symbol and state names.
bool is_name_char(char c) noexcept;
bool is_valid_name(std::string_view name) noexcept;
/// Parses `x<positive-integer>`; nullopt for anything else.
std::optional<VarIndex> parse_variable_token(std::string_view token) noexcept;

/// Either a variable leaf or a symbol node. Structural equality.
class Term {
 public:
  static Term variable(VarIndex index);
  static Term node(std::string symbol, std::vector<Term> children = {});

  bool is_variable() const noexcept { return var_ != 0; }
  VarIndex variable_index() const noexcept { return var_; }
  const std::string& symbol() const noexcept { return symbol_; }
  const std::vector<Term>& children() const noexcept { return children_; }
  bool is_leaf() const noexcept { return children_.empty(); }

  /// Number of nodes.
  std::size_t size() const noexcept;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term() = default;

  VarIndex var_ = 0;
  std::string symbol_;
  std::vector<Term> children_;
};

/// Path from the root as 1-based child indices; empty is the root.
/// Ordered shortlex: by length, then lexicographically.
class Position {
 public:
  Position() = default;
  Position(std::initializer_list<std::size_t> indices);
  explicit Position(std::vector<std::size_t> indices);

  static Position root() { return {}; }

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t length() const noexcept { return indices_.size(); }
  bool is_root() const noexcept { return indices_.empty(); }

  Position child(std::size_t k) const;
  /// Precondition: not the root.
  Position parent() const;
  Position concat(const Position& suffix) const;

  /// Reflexive prefix relation.
  bool is_prefix_of(const Position& other) const noexcept;
  bool is_proper_prefix_of(const Position& other) const noexcept;
  /// The suffix left after removing `prefix`, if it is one.
  std::optional<Position> relative_to(const Position& prefix) const;

  /// Dot-separated indices; the root renders as "ε".
  std::string to_string() const;
  /// Accepts "ε", "e" or "" for the root. Throws SyntaxError.
  static Position parse(std::string_view text);

  friend bool operator==(const Position&, const Position&) = default;
  friend std::strong_ordering operator<=>(const Position& a, const Position& b);

 private:
  std::vector<std::size_t> indices_;
};

/// Finite set of positions iterated in shortlex order.
class PositionSet {
 public:
  using const_iterator = std::set<Position>::const_iterator;

  PositionSet() = default;
  PositionSet(std::initializer_list<Position> items) : items_(items) {}

  void insert(const Position& p) { items_.insert(p); }
  void erase(const Position& p) { items_.erase(p); }
  bool contains(const Position& p) const { return items_.count(p) != 0; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  bool is_subset_of(const PositionSet& other) const;
  /// "{ε, 1, 2.1}"
  std::string to_string() const;
  /// Comma-separated positions; "" is the empty set. Throws SyntaxError.
  static PositionSet parse_list(std::string_view text);

  friend bool operator==(const PositionSet&, const PositionSet&) = default;

 private:
  std::set<Position> items_;
};

using VarSet = std::set<VarIndex>;
using Substitution = std::map<VarIndex, Term>;

/// Grammar: term := var | const | symbol '(' term (',' term)* ')'.
/// Whitespace and `#` comments are ignored.
/// Throws SyntaxError, UnknownSymbol or ArityMismatch.
Term parse_term(std::string_view text, const Signature& sig);
/// Canonical prefix notation without whitespace.
std::string render_term(const Term& t);
/// Throws UnknownSymbol or ArityMismatch (offset 0) if t is not over sig.
void check_term(const Term& t, const Signature& sig);

PositionSet positions(const Term& t);
/// Throws InvalidPosition.
const Term& subterm_at(const Term& t, const Position& p);
bool has_position(const Term& t, const Position& p) noexcept;
/// Replaces t|p by s. Throws InvalidPosition.
Term replace_at(const Term& t, const Position& p, Term s);

std::size_t depth(const Term& t) noexcept;
VarSet vars(const Term& t);
/// Variables of the leaves of t that are not below p.
VarSet vars_outside(const Term& t, const Position& p);
/// Simultaneous substitution; unbound variables stay, replacements are not revisited.
Term substitute(const Term& t, const Substitution& binding);

/// Neither position is a prefix of the other.
bool independent(const Position& p, const Position& q) noexcept;
/// Positions of t independent of p. Throws InvalidPosition.
PositionSet ind_positions(const Term& t, const Position& p);

bool is_prefix_closed(const PositionSet& set);
/// p in P, p a prefix of q, q in Q imply q in P.
bool is_prefix_determined(const PositionSet& set, const PositionSet& wrt);

/// Chain listed deepest first; each step drops exactly one trailing index.
/// Throws InvalidPosition.
bool is_strong_chain(const Term& t, const std::vector<Position>& chain);

std::string variable_name(VarIndex v);

}  // namespace fta
