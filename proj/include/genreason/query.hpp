#pragma once

#include <string_view>
#include <vector>

#include "genreason/formula.hpp"

namespace genreason {

// P(alpha | d1; d2; ...). The first '|' outside parentheses is the
// conditioning bar, so a disjunction as alpha must be parenthesized:
// P((!rain | wet)).
struct ProbQuery {
  Formula alpha;
  std::vector<Formula> delta;
};

// d1; d2; ... |- alpha, with an empty premise list allowed.
struct EntailQuery {
  std::vector<Formula> delta;
  Formula alpha;
};

inline ProbQuery parse_prob_query(std::string_view text, AtomUniverse& universe) {
  using detail::Tok;
  detail::Parser p(detail::lex(text), universe);
  if (!(p.at(Tok::Ident) && p.peek().text == "P")) throw SyntaxError(p.peek().pos, "'P('");
  p.next();
  p.expect(Tok::LParen, "'('");
  Formula alpha = p.formula(/*bar_is_delimiter=*/true);
  std::vector<Formula> delta;
  if (p.at(Tok::Or)) {
    p.next();
    if (!p.at(Tok::RParen)) {
      delta.push_back(p.formula());
      while (p.at(Tok::Semicolon)) {
        p.next();
        delta.push_back(p.formula());
      }
    }
  }
  p.expect(Tok::RParen, "')'");
  if (!p.at(Tok::End)) throw SyntaxError(p.peek().pos, "end of query");
  return {std::move(alpha), std::move(delta)};
}

inline EntailQuery parse_entail_query(std::string_view text, AtomUniverse& universe) {
  using detail::Tok;
  detail::Parser p(detail::lex(text), universe);
  std::vector<Formula> delta;
  if (!p.at(Tok::Turnstile)) {
    delta.push_back(p.formula());
    while (p.at(Tok::Semicolon)) {
      p.next();
      delta.push_back(p.formula());
    }
  }
  p.expect(Tok::Turnstile, "'|-'");
  Formula alpha = p.formula();
  if (!p.at(Tok::End)) throw SyntaxError(p.peek().pos, "end of query");
  return {std::move(delta), std::move(alpha)};
}

}  // namespace genreason
