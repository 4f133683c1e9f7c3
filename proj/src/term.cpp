#include "fta/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <unordered_set>

#include "fta/error.hpp"
#include "term_parser.hpp"

namespace fta {

ValidationError::ValidationError(std::vector<std::string> defects)
    : Error([&] {
        std::string msg = "invalid automaton";
        for (const auto& d : defects) msg += "; " + d;
        return msg;
      }()),
      defects_(std::move(defects)) {}

EnumerationBudgetExceeded::EnumerationBudgetExceeded(std::uint64_t required, std::uint64_t cap)
    : Error("enumeration budget exceeded: " +
            (required == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                    : std::to_string(required)) +
            " assignments needed, cap is " + std::to_string(cap)),
      required_(required),
      cap_(cap) {}

// ---------------------------------------------------------------------------
// Names and signatures

bool is_name_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_valid_name(std::string_view name) noexcept {
  return !name.empty() && std::all_of(name.begin(), name.end(), is_name_char);
}

std::optional<VarIndex> parse_variable_token(std::string_view token) noexcept {
  if (token.size() < 2 || token[0] != 'x' || token[1] < '1' || token[1] > '9') return std::nullopt;
  VarIndex value = 0;
  auto [end, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) return std::nullopt;
  return value;
}

std::string variable_name(VarIndex v) { return "x" + std::to_string(v); }

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!is_valid_name(s.name)) throw SignatureError("invalid symbol name '" + s.name + "'");
    if (parse_variable_token(s.name))
      throw SignatureError("symbol name '" + s.name + "' collides with the variable namespace");
    if (!seen.insert(s.name).second) throw SignatureError("duplicate symbol '" + s.name + "'");
    if (s.arity == 0) constants_.push_back(s.name);
  }
  if (constants_.empty()) throw SignatureError("signature has no constant symbol");
}

const Symbol* Signature::find(std::string_view name) const {
  auto it = std::find_if(symbols_.begin(), symbols_.end(),
                         [&](const Symbol& s) { return s.name == name; });
  return it == symbols_.end() ? nullptr : &*it;
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::max_arity() const noexcept {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

// ---------------------------------------------------------------------------
// Terms

Term Term::variable(VarIndex index) {
  if (index == 0) throw std::invalid_argument("variable indices start at 1");
  Term t;
  t.var_ = index;
  return t;
}

Term Term::node(std::string symbol, std::vector<Term> children) {
  Term t;
  t.symbol_ = std::move(symbol);
  t.children_ = std::move(children);
  return t;
}

std::size_t Term::size() const noexcept {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Positions

Position::Position(std::initializer_list<std::size_t> indices) : indices_(indices) {
  for (auto i : indices_)
    if (i == 0) throw std::invalid_argument("position indices are 1-based");
}

Position::Position(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  for (auto i : indices_)
    if (i == 0) throw std::invalid_argument("position indices are 1-based");
}

Position Position::child(std::size_t k) const {
  auto idx = indices_;
  idx.push_back(k);
  return Position(std::move(idx));
}

Position Position::parent() const {
  auto idx = indices_;
  idx.pop_back();
  return Position(std::move(idx));
}

Position Position::concat(const Position& suffix) const {
  auto idx = indices_;
  idx.insert(idx.end(), suffix.indices_.begin(), suffix.indices_.end());
  return Position(std::move(idx));
}

bool Position::is_prefix_of(const Position& other) const noexcept {
  return indices_.size() <= other.indices_.size() &&
         std::equal(indices_.begin(), indices_.end(), other.indices_.begin());
}

bool Position::is_proper_prefix_of(const Position& other) const noexcept {
  return indices_.size() < other.indices_.size() && is_prefix_of(other);
}

std::optional<Position> Position::relative_to(const Position& prefix) const {
  if (!prefix.is_prefix_of(*this)) return std::nullopt;
  return Position(std::vector<std::size_t>(indices_.begin() + static_cast<std::ptrdiff_t>(prefix.length()),
                                           indices_.end()));
}

std::string Position::to_string() const {
  if (indices_.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(indices_[i]);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Position Position::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty() || s == "e" || s == "ε") return {};
  std::vector<std::size_t> idx;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = s.find('.', start);
    std::string_view part = s.substr(start, dot == std::string_view::npos ? s.npos : dot - start);
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size() || value == 0)
      throw SyntaxError("malformed position '" + std::string(s) + "'", start);
    idx.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Position(std::move(idx));
}

std::strong_ordering operator<=>(const Position& a, const Position& b) {
  if (auto c = a.indices_.size() <=> b.indices_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.indices_.begin(), a.indices_.end(),
                                                b.indices_.begin(), b.indices_.end());
}

bool PositionSet::is_subset_of(const PositionSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::string PositionSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& p : items_) {
    if (!first) out += ", ";
    out += p.to_string();
    first = false;
  }
  return out + "}";
}

PositionSet PositionSet::parse_list(std::string_view text) {
  PositionSet out;
  std::string_view s = trim(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.insert(Position::parse(s.substr(start, comma == s.npos ? s.npos : comma - start)));
    if (comma == s.npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace detail {
namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, const std::vector<std::string>* states)
      : text_(text), sig_(sig), states_(states) {}

  Term parse() {
    Term t = parse_term();
    skip_blank();
    if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
    return t;
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Term parse_term() {
    skip_blank();
    std::size_t start = pos_;
    bool state_leaf = pos_ < text_.size() && text_[pos_] == '@';
    if (state_leaf) ++pos_;
    std::size_t name_start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == name_start) {
      if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", start);
      throw SyntaxError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    std::string_view name = text_.substr(name_start, pos_ - name_start);

    if (state_leaf) {
      if (!states_ || std::find(states_->begin(), states_->end(), name) == states_->end())
        throw UnknownSymbol("unknown state leaf '@" + std::string(name) + "'", start);
      return Term::node("@" + std::string(name));
    }

    if (auto v = parse_variable_token(name)) {
      skip_blank();
      if (pos_ < text_.size() && text_[pos_] == '(')
        throw ArityMismatch("variable '" + std::string(name) + "' cannot take arguments", start);
      return Term::variable(*v);
    }

    const Symbol* sym = sig_.find(name);
    if (!sym) throw UnknownSymbol("unknown symbol '" + std::string(name) + "'", start);

    std::vector<Term> children;
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      children.push_back(parse_term());
      skip_blank();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        children.push_back(parse_term());
        skip_blank();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
    }
    if (children.size() != sym->arity)
      throw ArityMismatch("symbol '" + sym->name + "' has arity " + std::to_string(sym->arity) +
                              ", got " + std::to_string(children.size()) + " argument(s)",
                          start);
    return Term::node(sym->name, std::move(children));
  }

  std::string_view text_;
  const Signature& sig_;
  const std::vector<std::string>* states_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term_impl(std::string_view text, const Signature& sig,
                     const std::vector<std::string>* state_names) {
  return TermParser(text, sig, state_names).parse();
}

}  // namespace detail

Term parse_term(std::string_view text, const Signature& sig) {
  return detail::parse_term_impl(text, sig, nullptr);
}

namespace {

void render_into(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += variable_name(t.variable_index());
    return;
  }
  out += t.symbol();
  if (t.children().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) out += ',';
    render_into(t.children()[i], out);
  }
  out += ')';
}

}  // namespace

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

void check_term(const Term& t, const Signature& sig) {
  if (t.is_variable()) return;
  const Symbol* sym = sig.find(t.symbol());
  if (!sym) throw UnknownSymbol("unknown symbol '" + t.symbol() + "'", 0);
  if (sym->arity != t.children().size())
    throw ArityMismatch("symbol '" + sym->name + "' has arity " + std::to_string(sym->arity), 0);
  for (const auto& c : t.children()) check_term(c, sig);
}

// ---------------------------------------------------------------------------
// Position algebra

namespace {

void collect_positions(const Term& t, std::vector<std::size_t>& path, PositionSet& out) {
  out.insert(Position(path));
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(i + 1);
    collect_positions(t.children()[i], path, out);
    path.pop_back();
  }
}

const Term* find_subterm(const Term& t, const Position& p) noexcept {
  const Term* cur = &t;
  for (auto i : p.indices()) {
    if (i == 0 || i > cur->children().size()) return nullptr;
    cur = &cur->children()[i - 1];
  }
  return cur;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_variable()) {
    out.insert(t.variable_index());
    return;
  }
  for (const auto& c : t.children()) collect_vars(c, out);
}

Term replace_rec(const Term& t, const std::vector<std::size_t>& idx, std::size_t depth, Term& s) {
  if (depth == idx.size()) return std::move(s);
  std::vector<Term> children = t.children();
  children[idx[depth] - 1] = replace_rec(t.children()[idx[depth] - 1], idx, depth + 1, s);
  return Term::node(t.symbol(), std::move(children));
}

}  // namespace

PositionSet positions(const Term& t) {
  PositionSet out;
  std::vector<std::size_t> path;
  collect_positions(t, path, out);
  return out;
}

bool has_position(const Term& t, const Position& p) noexcept { return find_subterm(t, p) != nullptr; }

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* s = find_subterm(t, p);
  if (!s) throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  return *s;
}

Term replace_at(const Term& t, const Position& p, Term s) {
  if (!has_position(t, p))
    throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  return replace_rec(t, p.indices(), 0, s);
}

std::size_t depth(const Term& t) noexcept {
  std::size_t d = 0;
  for (const auto& c : t.children()) d = std::max(d, depth(c) + 1);
  return d;
}

VarSet vars(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

VarSet vars_outside(const Term& t, const Position& p) {
  VarSet out;
  const Term* cur = &t;
  for (auto i : p.indices()) {
    if (i == 0 || i > cur->children().size())
      throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
    for (std::size_t k = 0; k < cur->children().size(); ++k)
      if (k + 1 != i) collect_vars(cur->children()[k], out);
    cur = &cur->children()[i - 1];
  }
  return out;
}

Term substitute(const Term& t, const Substitution& binding) {
  if (t.is_variable()) {
    auto it = binding.find(t.variable_index());
    return it == binding.end() ? t : it->second;
  }
  std::vector<Term> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) children.push_back(substitute(c, binding));
  return Term::node(t.symbol(), std::move(children));
}

bool independent(const Position& p, const Position& q) noexcept {
  return !p.is_prefix_of(q) && !q.is_prefix_of(p);
}

PositionSet ind_positions(const Term& t, const Position& p) {
  if (!has_position(t, p))
    throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  PositionSet out;
  for (const auto& q : positions(t))
    if (independent(p, q)) out.insert(q);
  return out;
}

bool is_prefix_closed(const PositionSet& set) {
  // Checking parents suffices: closure follows by induction on length.
  for (const auto& p : set)
    if (!p.is_root() && !set.contains(p.parent())) return false;
  return true;
}

bool is_prefix_determined(const PositionSet& set, const PositionSet& wrt) {
  for (const auto& p : set)
    for (const auto& q : wrt)
      if (p.is_prefix_of(q) && !set.contains(q)) return false;
  return true;
}

bool is_strong_chain(const Term& t, const std::vector<Position>& chain) {
  for (const auto& p : chain)
    if (!has_position(t, p))
      throw InvalidPosition("position " + p.to_string() + " is not a position of the term");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const Position& deeper = chain[i];
    const Position& shallower = chain[i + 1];
    if (!shallower.is_proper_prefix_of(deeper) || deeper.length() != shallower.length() + 1)
      return false;
  }
  return true;
}

}  // namespace fta
