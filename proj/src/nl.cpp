#include "nlrefute/nl.hpp"

#include <cctype>
#include <set>

#include "nlrefute/error.hpp"
#include "nlrefute/normalizer.hpp"

namespace nlrefute {
namespace {

struct Token {
  std::string text;
  std::string lower;
  std::size_t pos;
};

const std::set<std::string, std::less<>> kFunctionWords = {
    "is", "not", "or", "and", "if", "then", "they", "are", "people", "someone",
    "everyone", "person", ".", ","};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '.' || ch == ',') {
      out.push_back({std::string(1, ch), std::string(1, ch), i});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '.' && text[i] != ',')
        ++i;
      std::string word(text.substr(start, i - start));
      out.push_back({word, lowercase(word), start});
    }
  }
  return out;
}

bool is_skolem_token(std::string_view w) { return is_skolem_name(w); }

class SentenceParser {
 public:
  SentenceParser(std::string_view text, const Lexicon& lex)
      : text_(text), tokens_(tokenize(text)), lex_(lex) {}

  Sentence run() {
    if (tokens_.empty()) fail("empty sentence", 0);
    Sentence out{std::string(text_), Formula::make_atom(Atom{}), SentenceKind::fact};
    const Token& first = tokens_.front();
    if (first.lower == "if") {
      out.parse = if_rule();
      out.kind = SentenceKind::rule;
    } else if (first.lower == "everyone") {
      ++at_;
      expect("is");
      auto lits = literal_list(x_);
      out.kind = lits.size() == 1 ? SentenceKind::rule : SentenceKind::disjunctive_rule;
      out.parse = Formula::forall(x_.name, Formula::disjunction(lits));
    } else if (first.lower == "someone") {
      ++at_;
      expect("is");
      const bool positive = !accept("not");
      Formula lit = Formula::make_atom(Atom{adjective(), {x_}});
      out.parse = Formula::exists(x_.name, positive ? lit : Formula::negation(lit));
      out.kind = SentenceKind::existential_fact;
    } else if (first.lower == "person" || lex_.entity(first.text)) {
      const Term name = name_term();
      if (peek().lower == "is") {
        ++at_;
        auto lits = literal_list(name);
        out.kind = lits.size() == 1 ? SentenceKind::fact : SentenceKind::disjunctive_rule;
        out.parse = Formula::disjunction(lits);
      } else if (lex_.is_relation(peek().text)) {
        const Symbol verb(lowercase(tokens_[at_++].text));
        const Term object = name_term();
        out.parse = Formula::make_atom(Atom{verb, {name, object}});
      } else {
        unexpected("'is'");
      }
    } else if (lex_.is_attribute(first.text)) {
      out.parse = people_rule();
      out.kind = SentenceKind::rule;
    } else {
      unexpected("a sentence opener");
    }
    expect(".");
    if (at_ != tokens_.size()) unexpected("end of sentence");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t pos) const {
    throw ParseError("parse_error", message, pos);
  }

  // Reports an unknown content word as such; anything else is a grammar error.
  [[noreturn]] void unexpected(const std::string& wanted) const {
    if (at_ >= tokens_.size()) fail("expected " + wanted + " but the sentence ended", text_.size());
    const Token& t = tokens_[at_];
    if (!kFunctionWords.count(t.lower) && !lex_.entity(t.text) && !lex_.is_attribute(t.text) &&
        !lex_.is_relation(t.text) && !is_skolem_token(t.lower))
      throw ParseError("unknown_word", "unknown word '" + t.text + "'", t.pos);
    fail("expected " + wanted + ", found '" + t.text + "'", t.pos);
  }

  const Token& peek() const {
    static const Token end{"", "", 0};
    return at_ < tokens_.size() ? tokens_[at_] : end;
  }

  bool accept(std::string_view word) {
    if (at_ < tokens_.size() && tokens_[at_].lower == word) {
      ++at_;
      return true;
    }
    return false;
  }

  void expect(std::string_view word) {
    if (!accept(word)) unexpected("'" + std::string(word) + "'");
  }

  Symbol adjective() {
    if (at_ < tokens_.size() && lex_.is_attribute(tokens_[at_].text))
      return Symbol(lowercase(tokens_[at_++].text));
    unexpected("an adjective");
  }

  Term name_term() {
    if (accept("person")) {
      if (at_ < tokens_.size() && is_skolem_token(tokens_[at_].lower))
        return Term::constant(tokens_[at_++].lower);
      unexpected("a Skolem name");
    }
    if (at_ < tokens_.size())
      if (auto e = lex_.entity(tokens_[at_].text)) {
        ++at_;
        return Term::constant(*e);
      }
    unexpected("a name");
  }

  std::vector<Formula> literal_list(const Term& subject) {
    std::vector<Formula> lits;
    do {
      const bool positive = !accept("not");
      Formula atom = Formula::make_atom(Atom{adjective(), {subject}});
      lits.push_back(positive ? atom : Formula::negation(atom));
    } while (accept("or"));
    return lits;
  }

  Formula head() {
    const bool positive = !accept("not");
    Formula atom = Formula::make_atom(Atom{adjective(), {x_}});
    return positive ? atom : Formula::negation(atom);
  }

  Formula people_rule() {
    std::vector<Formula> body;
    do body.push_back(Formula::make_atom(Atom{adjective(), {x_}}));
    while (accept(","));
    expect("people");
    expect("are");
    return Formula::forall(x_.name, Formula::implication(Formula::conjunction(body), head()));
  }

  Formula if_rule() {
    expect("if");
    expect("someone");
    expect("is");
    std::vector<Formula> body;
    do body.push_back(Formula::make_atom(Atom{adjective(), {x_}}));
    while (accept("and"));
    expect("then");
    expect("they");
    expect("are");
    return Formula::forall(x_.name, Formula::implication(Formula::conjunction(body), head()));
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  const Lexicon& lex_;
  std::size_t at_ = 0;
  const Term x_ = Term::variable("x");
};

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string join_literals(const std::vector<std::pair<std::string, bool>>& lits) {
  std::string out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += " or ";
    if (!lits[i].second) out += "not ";
    out += lits[i].first;
  }
  return out;
}

[[noreturn]] void unrealizable(const Clause& c, const std::string& why) {
  throw Error("unrealizable", to_string(c) + ": " + why);
}

std::string name_of(const Term& t, const Lexicon& lex, const Clause& c) {
  if (t.kind != Term::Kind::constant) unrealizable(c, "function term");
  if (is_skolem_name(t.name.str())) return "person " + t.name.str();
  auto e = lex.entity(t.name.str());
  if (!e || *e != t.name.str()) unrealizable(c, "unknown entity " + t.name.str());
  return *e;
}

}  // namespace

std::string to_string(SentenceKind k) {
  switch (k) {
    case SentenceKind::fact:
      return "fact";
    case SentenceKind::rule:
      return "rule";
    case SentenceKind::disjunctive_rule:
      return "disjunctive_rule";
    case SentenceKind::existential_fact:
      return "existential_fact";
  }
  return {};
}

Sentence read_sentence(std::string_view text, const Lexicon& lex) {
  return SentenceParser(text, lex).run();
}

Formula parse_sentence(std::string_view text, const Lexicon& lex) {
  return read_sentence(text, lex).parse;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    const auto first = current.find_first_not_of(" \t\r\n");
    if (first != std::string::npos) out.push_back(current.substr(first));
    current.clear();
  };
  bool comment = false;
  for (char ch : text) {
    if (comment) {
      if (ch == '\n') comment = false;
      continue;
    }
    if (ch == '#') {
      comment = true;
      continue;
    }
    if (ch == '\n') ch = ' ';
    current += ch;
    if (ch == '.') flush();
  }
  flush();
  return out;
}

std::string realize_clause(const Clause& clause, const Lexicon& lex) {
  if (clause.empty()) return "";
  const Clause c = canonicalize(clause);

  if (c.size() == 1 && c.literals[0].atom.args.size() == 2) {
    const Literal& l = c.literals[0];
    if (!l.positive) unrealizable(c, "negated relation");
    if (!lex.is_relation(l.atom.predicate.str())) unrealizable(c, "unknown relation");
    return capitalize(name_of(l.atom.args[0], lex, c)) + " " + l.atom.predicate.str() + " " +
           name_of(l.atom.args[1], lex, c) + ".";
  }

  std::optional<Term> subject;
  std::vector<std::pair<std::string, bool>> lits;
  for (const auto& l : c.literals) {
    if (l.atom.args.size() != 1) unrealizable(c, "non-unary literal in a disjunction");
    if (!lex.is_attribute(l.atom.predicate.str()))
      unrealizable(c, "unknown attribute " + l.atom.predicate.str());
    const Term& t = l.atom.args[0];
    if (subject && !(*subject == t)) unrealizable(c, "more than one subject");
    subject = t;
    lits.emplace_back(l.atom.predicate.str(), l.positive);
  }
  if (subject->is_variable()) return "Everyone is " + join_literals(lits) + ".";
  return capitalize(name_of(*subject, lex, c)) + " is " + join_literals(lits) + ".";
}

ClauseRenderer make_renderer(const Lexicon& lex) {
  return [lex](const Clause& c) {
    try {
      return realize_clause(c, lex);
    } catch (const Error&) {
      return to_string(c);
    }
  };
}

std::string negate_sentence(std::string_view text, const Lexicon& lex) {
  const Formula f = parse_sentence(text, lex);
  SkolemNames names;
  names.reserve_past(f);
  const std::size_t first_fresh = names.next();
  const auto clauses = to_clauses(negate(f), names);
  if (clauses.size() != 1)
    throw Error("unrealizable", "negation of '" + std::string(text) + "' is not a single clause");
  const Clause& c = clauses.front();
  if (c.is_unit() && c.literals[0].atom.args.size() == 1) {
    const Term& t = c.literals[0].atom.args[0];
    const std::string& name = t.name.str();
    if (t.kind == Term::Kind::constant && is_skolem_name(name) &&
        std::stoul(name.substr(2)) >= first_fresh)
      return realize_existential(c.literals[0].atom.predicate.str(), c.literals[0].positive);
  }
  return realize_clause(c, lex);
}

std::string realize_fact(std::string_view entity, std::string_view attribute, bool positive) {
  return std::string(entity) + " is " + (positive ? "" : "not ") + std::string(attribute) + ".";
}

std::string realize_rule(const std::vector<std::string>& body, std::string_view head,
                         bool head_positive, bool if_then_form) {
  std::string out;
  const std::string tail = std::string(head_positive ? "" : "not ") + std::string(head) + ".";
  if (if_then_form) {
    out = "If someone is ";
    for (std::size_t i = 0; i < body.size(); ++i) out += (i ? " and " : "") + body[i];
    return out + " then they are " + tail;
  }
  for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i];
  return capitalize(out) + " people are " + tail;
}

std::string realize_universal(const std::vector<std::pair<std::string, bool>>& literals) {
  return "Everyone is " + join_literals(literals) + ".";
}

std::string realize_existential(std::string_view attribute, bool positive) {
  return std::string("Someone is ") + (positive ? "" : "not ") + std::string(attribute) + ".";
}

}  // namespace nlrefute
