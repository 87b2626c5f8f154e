#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "genreason/bits.hpp"
#include "genreason/error.hpp"

namespace genreason {

// ---------------------------------------------------------------------------
// AtomUniverse
// ---------------------------------------------------------------------------

inline bool is_reserved_word(std::string_view s) {
  return s == "not" || s == "true" || s == "false";
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), tail);
}

// Ordered set of atom names. Atom i is bit i of every World over this
// universe. An extensible universe interns unknown names while parsing; a
// frozen one rejects them.
class AtomUniverse {
 public:
  AtomUniverse() = default;

  explicit AtomUniverse(const std::vector<std::string>& names, bool extensible = false)
      : extensible_(extensible) {
    for (const auto& n : names) add(n);
  }

  static AtomUniverse extensible() {
    AtomUniverse u;
    u.extensible_ = true;
    return u;
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool is_extensible() const noexcept { return extensible_; }
  void freeze() noexcept { extensible_ = false; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Index of `name`, adding it when the universe is extensible.
  std::size_t intern(std::string_view name) {
    if (auto i = find(name)) return *i;
    if (!extensible_) throw Error(ErrorCode::UnknownAtom, std::string(name));
    return add(std::string(name));
  }

  std::size_t add(const std::string& name) {
    if (!is_identifier(name) || is_reserved_word(name)) {
      throw Error(ErrorCode::BadAtom, "'" + name + "'");
    }
    if (index_.count(name)) throw Error(ErrorCode::BadAtom, "duplicate atom '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    return names_.size() - 1;
  }

  bool operator==(const AtomUniverse& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  bool extensible_ = false;
};

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, True, False };

  static Formula atom(std::size_t index) { return Formula(make(Kind::Atom, index, {}, {})); }
  static Formula truth() { return Formula(make(Kind::True, 0, {}, {})); }
  static Formula falsity() { return Formula(make(Kind::False, 0, {}, {})); }
  static Formula negation(Formula f) { return Formula(make(Kind::Not, 0, std::move(f.node_), {})); }
  static Formula binary(Kind kind, Formula lhs, Formula rhs) {
    return Formula(make(kind, 0, std::move(lhs.node_), std::move(rhs.node_)));
  }
  static Formula conjunction(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disjunction(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula implication(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static Formula equivalence(Formula a, Formula b) { return binary(Kind::Iff, std::move(a), std::move(b)); }

  Kind kind() const noexcept { return node_->kind; }
  std::size_t atom_index() const noexcept { return node_->atom; }
  Formula operand() const { return Formula(node_->left); }
  Formula lhs() const { return Formula(node_->left); }
  Formula rhs() const { return Formula(node_->right); }
  bool is_binary() const noexcept { return node_->right != nullptr; }

  // Smallest universe size this formula can be evaluated in.
  std::size_t required_width() const noexcept { return node_->width; }

  // Structural hash, consistent with operator==.
  std::size_t hash() const noexcept { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(a.node_.get(), b.node_.get()); }

 private:
  struct Node {
    Kind kind;
    std::size_t atom;
    std::size_t width;
    std::size_t hash;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make(Kind kind, std::size_t atom, std::shared_ptr<const Node> left,
                                          std::shared_ptr<const Node> right) {
    std::size_t width = kind == Kind::Atom ? atom + 1 : 0;
    if (left) width = std::max(width, left->width);
    if (right) width = std::max(width, right->width);
    std::size_t h = static_cast<std::size_t>(kind) * 0x9E3779B97F4A7C15ULL + atom;
    for (const Node* child : {left.get(), right.get()}) {
      h ^= (child ? child->hash : 0) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return std::make_shared<const Node>(Node{kind, atom, width, h, std::move(left), std::move(right)});
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
    if (a->kind == Kind::Atom) return a->atom == b->atom;
    return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

// Removes structurally equal duplicates, keeping first occurrences.
inline std::vector<Formula> deduplicate(std::vector<Formula> formulas) {
  std::vector<Formula> out;
  out.reserve(formulas.size());
  for (auto& f : formulas) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok { Ident, Not, And, Or, Implies, Iff, True, False, LParen, RParen, Semicolon, Turnstile, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t at = i;
    // Longest match first: "<->" before "->", "|-" before "|".
    struct Op { std::string_view text; Tok kind; };
    static constexpr Op ops[] = {
        {"<->", Tok::Iff},     {"\xE2\x86\x94", Tok::Iff},      // ↔
        {"->", Tok::Implies},  {"\xE2\x86\x92", Tok::Implies},  // →
        {"|-", Tok::Turnstile}, {"\xE2\x8A\xA2", Tok::Turnstile},  // ⊢
        {"!", Tok::Not},       {"\xC2\xAC", Tok::Not},          // ¬
        {"&", Tok::And},       {"\xE2\x88\xA7", Tok::And},      // ∧
        {"|", Tok::Or},        {"\xE2\x88\xA8", Tok::Or},       // ∨
        {"(", Tok::LParen},    {")", Tok::RParen},
        {";", Tok::Semicolon},
    };
    bool matched = false;
    for (const auto& op : ops) {
      if (starts(op.text)) {
        out.push_back({op.kind, at, std::string(op.text)});
        i += op.text.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() && ((s[j] >= 'A' && s[j] <= 'Z') || (s[j] >= 'a' && s[j] <= 'z') ||
                               (s[j] >= '0' && s[j] <= '9') || s[j] == '_')) {
        ++j;
      }
      std::string word(s.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "not") kind = Tok::Not;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, at, std::move(word)});
      i = j;
      continue;
    }
    throw SyntaxError(at, "a formula token");
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

// Recursive descent over the precedence ladder
//   ¬  >  ∧  >  ∨  >  →  (right-assoc)  >  ↔  (left-assoc).
// When `bar_is_delimiter` is set, a '|' outside parentheses ends the formula
// instead of being read as disjunction; query parsing relies on this.
class Parser {
 public:
  Parser(std::vector<Token> tokens, AtomUniverse& universe)
      : toks_(std::move(tokens)), universe_(universe) {}

  Formula formula(bool bar_is_delimiter = false) {
    const bool saved = bar_stop_;
    bar_stop_ = bar_is_delimiter;
    Formula f = iff();
    bar_stop_ = saved;
    return f;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_++]; }

  void expect(Tok k, const char* what) {
    if (!at(k)) throw SyntaxError(peek().pos, what);
    ++pos_;
  }

 private:
  Formula iff() {
    Formula f = implies();
    while (at(Tok::Iff)) {
      ++pos_;
      f = Formula::equivalence(std::move(f), implies());
    }
    return f;
  }

  Formula implies() {
    Formula f = disjunction();
    if (at(Tok::Implies)) {
      ++pos_;
      return Formula::implication(std::move(f), implies());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Or) && !bar_stop_) {
      ++pos_;
      f = Formula::disjunction(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::And)) {
      ++pos_;
      f = Formula::conjunction(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      ++pos_;
      return Formula::negation(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return Formula::atom(universe_.intern(t.text));
      case Tok::True:
        ++pos_;
        return Formula::truth();
      case Tok::False:
        ++pos_;
        return Formula::falsity();
      case Tok::LParen: {
        ++pos_;
        Formula f = formula(false);
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw SyntaxError(t.pos, "an atom, 'true', 'false', '!' or '('");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  AtomUniverse& universe_;
  bool bar_stop_ = false;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

inline Formula parse_formula(std::string_view text, AtomUniverse& universe) {
  detail::Parser p(detail::lex(text), universe);
  if (p.at(detail::Tok::End)) throw SyntaxError(0, "a formula");
  Formula f = p.formula();
  if (!p.at(detail::Tok::End)) throw SyntaxError(p.peek().pos, "end of formula");
  return f;
}

// "f1; f2; ..." possibly empty.
inline std::vector<Formula> parse_formula_list(std::string_view text, AtomUniverse& universe) {
  detail::Parser p(detail::lex(text), universe);
  std::vector<Formula> out;
  if (p.at(detail::Tok::End)) return out;
  out.push_back(p.formula());
  while (p.at(detail::Tok::Semicolon)) {
    p.next();
    out.push_back(p.formula());
  }
  if (!p.at(detail::Tok::End)) throw SyntaxError(p.peek().pos, "';' or end of input");
  return out;
}

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

inline void print(const Formula& f, const AtomUniverse& u, std::string& out) {
  using K = Formula::Kind;
  auto child = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, u, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case K::Atom: out += u.name(f.atom_index()); return;
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Not:
      out += '!';
      child(f.operand(), precedence(f.operand().kind()) < precedence(K::Not));
      return;
    default: break;
  }
  const int p = precedence(f.kind());
  const int pl = precedence(f.lhs().kind());
  const int pr = precedence(f.rhs().kind());
  // Left-associative operators need parens on an equal-precedence right
  // child; implication is right-associative so the left side gets them.
  const bool right_assoc = f.kind() == K::Implies;
  child(f.lhs(), right_assoc ? pl <= p : pl < p);
  switch (f.kind()) {
    case K::And: out += " & "; break;
    case K::Or: out += " | "; break;
    case K::Implies: out += " -> "; break;
    case K::Iff: out += " <-> "; break;
    default: break;
  }
  child(f.rhs(), right_assoc ? pr < p : pr <= p);
}

}  // namespace detail

// Minimal-parenthesis rendering in the ASCII syntax accepted by parse_formula.
inline std::string to_string(const Formula& f, const AtomUniverse& universe) {
  std::string out;
  detail::print(f, universe, out);
  return out;
}

// ---------------------------------------------------------------------------
// Semantics
// ---------------------------------------------------------------------------

namespace detail {

inline bool eval(const Formula& f, const World& w) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: return w.test(f.atom_index());
    case K::True: return true;
    case K::False: return false;
    case K::Not: return !eval(f.operand(), w);
    case K::And: return eval(f.lhs(), w) && eval(f.rhs(), w);
    case K::Or: return eval(f.lhs(), w) || eval(f.rhs(), w);
    case K::Implies: return !eval(f.lhs(), w) || eval(f.rhs(), w);
    case K::Iff: return eval(f.lhs(), w) == eval(f.rhs(), w);
  }
  return false;
}

}  // namespace detail

inline void require_fits(const Formula& f, std::size_t width) {
  if (f.required_width() > width) {
    throw Error(ErrorCode::UniverseMismatch, "formula uses atom " + std::to_string(f.required_width() - 1) +
                                                 " but the universe has " + std::to_string(width) + " atoms");
  }
}

inline bool evaluate(const Formula& f, const World& w) {
  require_fits(f, w.size());
  return detail::eval(f, w);
}

inline bool satisfies_all(const std::vector<Formula>& gamma, const World& w) {
  return std::all_of(gamma.begin(), gamma.end(), [&](const Formula& f) { return evaluate(f, w); });
}

inline constexpr std::size_t kDefaultEnumerationCap = 24;

// Truth table of `f` over all 2^A worlds of an A-atom universe, packed so
// that bit n is the value at World::from_index(n). Word-parallel, so
// enumeration at the cap costs a few MB and milliseconds per connective.
class TruthTable {
 public:
  using Word = std::uint64_t;

  TruthTable(const Formula& f, std::size_t atoms, std::size_t cap = kDefaultEnumerationCap)
      : atoms_(atoms) {
    if (atoms > cap) {
      throw Error(ErrorCode::UniverseTooLarge,
                  std::to_string(atoms) + " atoms exceeds the enumeration cap of " + std::to_string(cap));
    }
    require_fits(f, atoms);
    bits_ = build(f);
  }

  static TruthTable all_true(std::size_t atoms, std::size_t cap = kDefaultEnumerationCap) {
    return TruthTable(Formula::truth(), atoms, cap);
  }

  std::size_t atoms() const noexcept { return atoms_; }
  std::uint64_t num_worlds() const noexcept { return std::uint64_t{1} << atoms_; }
  bool test(std::uint64_t world) const { return (bits_[world / 64] >> (world % 64)) & 1U; }

  TruthTable& operator&=(const TruthTable& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  template <typename Fn>
  void for_each_true(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      Word word = bits_[w];
      while (word) {
        const int b = std::countr_zero(word);
        fn(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b));
        word &= word - 1;
      }
    }
  }

 private:
  std::size_t words() const { return atoms_ >= 6 ? (std::size_t{1} << (atoms_ - 6)) : 1; }
  Word tail_mask() const { return atoms_ >= 6 ? ~Word{0} : ((Word{1} << (std::uint64_t{1} << atoms_)) - 1); }

  std::vector<Word> atom_table(std::size_t i) const {
    static constexpr Word low[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                                    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
    std::vector<Word> t(words());
    for (std::size_t w = 0; w < t.size(); ++w) {
      t[w] = i < 6 ? low[i] : (((w >> (i - 6)) & 1U) ? ~Word{0} : 0);
    }
    t.back() &= tail_mask();
    return t;
  }

  std::vector<Word> build(const Formula& f) const {
    using K = Formula::Kind;
    const Word tail = tail_mask();
    auto complement = [&](std::vector<Word> t) {
      for (auto& x : t) x = ~x;
      t.back() &= tail;
      return t;
    };
    switch (f.kind()) {
      case K::Atom: return atom_table(f.atom_index());
      case K::True: {
        std::vector<Word> t(words(), ~Word{0});
        t.back() &= tail;
        return t;
      }
      case K::False: return std::vector<Word>(words(), 0);
      case K::Not: return complement(build(f.operand()));
      default: break;
    }
    auto a = build(f.lhs());
    const auto b = build(f.rhs());
    for (std::size_t i = 0; i < a.size(); ++i) {
      switch (f.kind()) {
        case K::And: a[i] &= b[i]; break;
        case K::Or: a[i] |= b[i]; break;
        case K::Implies: a[i] = ~a[i] | b[i]; break;
        case K::Iff: a[i] = ~(a[i] ^ b[i]); break;
        default: break;
      }
    }
    a.back() &= tail;
    return a;
  }

  std::size_t atoms_;
  std::vector<Word> bits_;
};

inline TruthTable joint_truth_table(const std::vector<Formula>& gamma, std::size_t atoms,
                                    std::size_t cap = kDefaultEnumerationCap) {
  TruthTable t = TruthTable::all_true(atoms, cap);
  for (const auto& f : gamma) t &= TruthTable(f, atoms, cap);
  return t;
}

// Every world over `universe` satisfying all of `gamma`, in canonical order.
inline std::vector<World> models_of(const std::vector<Formula>& gamma, const AtomUniverse& universe,
                                    std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t atoms = universe.size();
  const TruthTable t = joint_truth_table(gamma, atoms, cap);
  std::vector<World> out;
  t.for_each_true([&](std::uint64_t n) { out.push_back(World::from_index(n, atoms)); });
  return out;
}

// ---------------------------------------------------------------------------
// Knowledge-base files: one formula per line, '#' comments, blank lines skipped.
// ---------------------------------------------------------------------------

inline std::vector<Formula> parse_knowledge_base(std::istream& in, AtomUniverse& universe) {
  std::vector<Formula> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_formula(line, universe));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.position(), e.expected(), lineno);
    }
  }
  return out;
}

inline std::vector<Formula> read_knowledge_base(const std::string& path, AtomUniverse& universe) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_knowledge_base(in, universe);
}

}  // namespace genreason
