#pragma once

// Template English <-> logic. The accepted fragment:
//
//   fact          Name is [not] Adj.
//   rel_fact      Name Verb Name.                      (lexicon relations only)
//   rule          Adj {, Adj} people are [not] Adj.
//                 If someone is Adj {and Adj} then they are [not] Adj.
//   univ_clause   Everyone is Lit {or Lit}.            Lit := [not] Adj
//   ground_clause Name is Lit {or Lit}.
//   exist_fact    Someone is [not] Adj.
//
// Name is a lexicon entity or a Skolem pseudo-entity "person sk<N>". Function
// words are case-insensitive.

#include <string>
#include <string_view>
#include <vector>

#include "nlrefute/engine.hpp"
#include "nlrefute/formula.hpp"
#include "nlrefute/lexicon.hpp"

namespace nlrefute {

enum class SentenceKind { fact, rule, disjunctive_rule, existential_fact };

std::string to_string(SentenceKind k);

struct Sentence {
  std::string text;
  Formula parse;
  SentenceKind kind;
};

// Throws ParseError("parse_error") on a grammar violation and
// ParseError("unknown_word") on a word outside the lexicon.
Sentence read_sentence(std::string_view text, const Lexicon& lex);
Formula parse_sentence(std::string_view text, const Lexicon& lex);

// Splits running text into sentences at each '.', dropping blank lines and
// '#' comments.
std::vector<std::string> split_sentences(std::string_view text);

// Clause in the template language. The empty clause is "". Throws
// Error("unrealizable") when no template fits (several variables, several
// terms, function terms, unknown predicates).
std::string realize_clause(const Clause& c, const Lexicon& lex);

// realize_clause, falling back to the FOL serialization.
ClauseRenderer make_renderer(const Lexicon& lex);

// Negation computed through the logic: parse, negate, normalize, realize. A
// unit over the Skolem witness the negation introduces reads "Someone is ...".
std::string negate_sentence(std::string_view text, const Lexicon& lex);

// Sentence builders used by the generator; each output is in the grammar.
std::string realize_fact(std::string_view entity, std::string_view attribute, bool positive);
std::string realize_rule(const std::vector<std::string>& body, std::string_view head,
                         bool head_positive, bool if_then_form);
std::string realize_universal(const std::vector<std::pair<std::string, bool>>& literals);
std::string realize_existential(std::string_view attribute, bool positive);

}  // namespace nlrefute
