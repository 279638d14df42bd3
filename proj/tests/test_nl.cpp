#include <random>

#include "doctest.h"
#include "nlrefute/error.hpp"
#include "nlrefute/nl.hpp"
#include "nlrefute/normalizer.hpp"
#include "support/sentences.hpp"

using namespace nlrefute;

namespace {

const Lexicon& lex() {
  static const Lexicon l = Lexicon::standard();
  return l;
}

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::vector<std::string> clause_texts(std::string_view sentence) {
  SkolemNames names;
  std::vector<std::string> out;
  for (const auto& c : to_clauses(parse_sentence(sentence, lex()), names)) out.push_back(to_string(c));
  return out;
}

}  // namespace

TEST_SUITE("nl") {

TEST_CASE("parsing") {
  CHECK(to_string(parse_sentence("Bob is kind.", lex())) == "kind(Bob)");
  CHECK(to_string(parse_sentence("Round, kind people are rough.", lex())) ==
        "all x ((round(x) & kind(x)) -> rough(x))");
  CHECK(clause_texts("Everyone is not kind or not round or rough.") ==
        std::vector<std::string>{"-kind(v1) | -round(v1) | rough(v1)"});
  CHECK(clause_texts("Bob is not round or rough.") ==
        std::vector<std::string>{"-round(Bob) | rough(Bob)"});
  CHECK(clause_texts("If someone is big and blue then they are not green.") ==
        std::vector<std::string>{"-big(v1) | -blue(v1) | -green(v1)"});
  CHECK(clause_texts("Someone is not tall.") == std::vector<std::string>{"-tall(sk1)"});
  CHECK(clause_texts("bob IS Kind.") == std::vector<std::string>{"kind(Bob)"});

  CHECK(read_sentence("Bob is kind.", lex()).kind == SentenceKind::fact);
  CHECK(read_sentence("Kind people are round.", lex()).kind == SentenceKind::rule);
  CHECK(read_sentence("Everyone is kind or round.", lex()).kind == SentenceKind::disjunctive_rule);
  CHECK(read_sentence("Someone is kind.", lex()).kind == SentenceKind::existential_fact);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_sentence("Bob is kind", lex()); }) == "parse_error");
  CHECK(code_of([] { parse_sentence("Bob is is kind.", lex()); }) == "parse_error");
  CHECK(code_of([] { parse_sentence("Bob is friendly.", lex()); }) == "unknown_word");
  CHECK(code_of([] { parse_sentence("Zed is kind.", lex()); }) == "unknown_word");
  try {
    parse_sentence("Bob is kind and.", lex());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  CHECK(code_of([] { parse_sentence("Bob likes Alan.", lex()); }) != "");
}

TEST_CASE("relations need a lexicon that declares them") {
  const Lexicon rel({"Bob", "Alan"}, {"kind"}, {"likes"});
  CHECK(to_string(parse_sentence("Bob likes Alan.", rel)) == "likes(Bob,Alan)");
  CHECK(realize_clause(parse_clause("likes(Bob,Alan)"), rel) == "Bob likes Alan.");
}

TEST_CASE("realization") {
  CHECK(realize_clause(parse_clause("[]"), lex()) == "");
  CHECK(realize_clause(parse_clause("-round(Bob) | rough(Bob)"), lex()) == "Bob is not round or rough.");
  CHECK(realize_clause(parse_clause("-kind(v1) | -round(v1) | rough(v1)"), lex()) ==
        "Everyone is not kind or not round or rough.");
  CHECK(realize_clause(parse_clause("kind(sk1)"), lex()) == "Person sk1 is kind.");
  CHECK(code_of([] { realize_clause(parse_clause("kind(x) | round(y)"), lex()); }) == "unrealizable");
  CHECK(code_of([] { realize_clause(parse_clause("kind(Bob) | round(Alan)"), lex()); }) == "unrealizable");
  CHECK(code_of([] { realize_clause(parse_clause("kind(f(Bob))"), lex()); }) == "unrealizable");
  CHECK(make_renderer(lex())(parse_clause("kind(x) | round(y)")) == "kind(x) | round(y)");
}

TEST_CASE("negation through the logic") {
  CHECK(negate_sentence("Bob is not kind.", lex()) == "Bob is kind.");
  CHECK(negate_sentence("Bob is kind.", lex()) == "Bob is not kind.");
  CHECK(negate_sentence("Everyone is round.", lex()) == "Someone is not round.");
  CHECK(negate_sentence("Someone is round.", lex()) == "Everyone is not round.");
}

TEST_CASE("realized clauses parse back to variants") {
  const Lexicon ext = Lexicon::extended();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    const std::string s = testing_oracle::random_sentence(rng, ext, 9, 20);
    SkolemNames names;
    for (const auto& c : to_clauses(parse_sentence(s, ext), names)) {
      const std::string text = realize_clause(c, ext);
      SkolemNames again;
      const auto back = to_clauses(parse_sentence(text, ext), again);
      REQUIRE(back.size() == 1);
      CHECK_MESSAGE(canonical_key(back[0]) == canonical_key(c), s << " -> " << text);
    }
  }
}

TEST_CASE("sentence splitting") {
  CHECK(split_sentences("Bob is kind. Alan is round.\n# note\n\nEveryone is big.") ==
        std::vector<std::string>{"Bob is kind.", "Alan is round.", "Everyone is big."});
}

TEST_CASE("lexicon") {
  CHECK(lex().entities() == std::vector<std::string>{"Bob", "Alan", "Erin", "Gary"});
  CHECK(lex().attributes().size() == 8);
  CHECK(lex().entity("bob") == "Bob");
  CHECK_FALSE(lex().entity("kind"));
  CHECK(code_of([] { Lexicon({"Bob", "Bob"}, {"kind"}); }) == "lexicon_error");
  CHECK(code_of([] { Lexicon({"Bob"}, {"bob"}); }) == "lexicon_error");
  CHECK(code_of([] { Lexicon({"Bob"}, {"not"}); }) == "lexicon_error");
  const Lexicon parsed = Lexicon::parse(
      "# demo\n[entities]\nBob\nAlan\n[attributes]\nkind\nround\n[relations]\nlikes\n");
  CHECK(parsed.relations() == std::vector<std::string>{"likes"});
  CHECK(Lexicon::parse(parsed.to_text()).to_text() == parsed.to_text());
}

}
