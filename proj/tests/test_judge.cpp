#include <random>

#include "doctest.h"
#include "nlrefute/evaluator.hpp"
#include "nlrefute/judge.hpp"
#include "nlrefute/nl.hpp"
#include "support/semantic_oracle.hpp"
#include "support/sentences.hpp"

using namespace nlrefute;

namespace {

const Lexicon& lex() {
  static const Lexicon l = Lexicon::standard();
  return l;
}

const std::vector<std::string> kWorked{"Round, kind people are rough.", "Everyone is not rough.",
                                       "Everyone is round."};

RefutationResult refuted_in(std::size_t steps) {
  RefutationResult r;
  r.refuted = true;
  r.steps_used = steps;
  r.halt_reason = HaltReason::empty_clause;
  return r;
}

PredictionRecord record_of(const PreparedTask& task, const Verdict& v, Label gold) {
  PredictionRecord rec;
  rec.predicted_label = v.label;
  rec.gold_label = gold;
  for (const auto& s : v.proof) rec.predicted_proof.push_back({s.premises_fol, s.conclusion_fol});
  rec.t1 = task.t1.clauses();
  rec.t2 = task.t2.clauses();
  return rec;
}

}  // namespace

TEST_SUITE("judge") {

TEST_CASE("the worked example is True with the three-step refutation") {
  const Verdict v = judge(kWorked, "Bob is not kind.", lex());
  CHECK(v.label == Label::True);
  CHECK(v.steps_t2 == 3);
  CHECK_FALSE(v.tie_broken);
  REQUIRE(v.proof.size() == 3);
  CHECK(v.proof[0].conclusion_nl == "Bob is not round or rough.");
  CHECK(v.proof[1].conclusion_nl == "Bob is not round.");
  CHECK(v.proof[2].conclusion_nl == "");
  CHECK(v.proof[2].conclusion_fol == "[]");
}

TEST_CASE("small verdicts") {
  Verdict v = judge({"Bob is kind."}, "Bob is kind.", lex());
  CHECK(v.label == Label::True);
  CHECK(v.proof.size() == 1);
  CHECK(v.steps_t2 == 1);

  v = judge({"Bob is kind."}, "Bob is not kind.", lex());
  CHECK(v.label == Label::False);
  CHECK(v.proof.size() == 1);

  v = judge({"Bob is kind."}, "Bob is round.", lex());
  CHECK(v.label == Label::Unknown);
  CHECK(v.proof.empty());
  testing_oracle::Monadic sem;
  CHECK(sem.entail({parse_sentence("Bob is kind.", lex())}, parse_sentence("Bob is round.", lex())) ==
        Label::Unknown);
}

TEST_CASE("tie break") {
  std::vector<std::string> warnings;
  CHECK(tie_break(refuted_in(5), refuted_in(2), &warnings) == Label::True);
  CHECK(tie_break(refuted_in(2), refuted_in(5), &warnings) == Label::False);
  CHECK(warnings.empty());
  CHECK(tie_break(refuted_in(3), refuted_in(3), &warnings) == Label::Unknown);
  CHECK(warnings.size() == 1);

  // inconsistent theories the hypothesis touches refute both sets
  Verdict v = judge({"Bob is kind.", "Everyone is not kind."}, "Bob is kind.", lex());
  CHECK(v.tie_broken);
  CHECK(v.label == Label::Unknown);
  CHECK(v.proof.empty());
  CHECK_FALSE(v.warnings.empty());

  v = judge({"Bob is kind.", "Kind people are round.", "Bob is not round."}, "Bob is round.", lex());
  CHECK(v.tie_broken);
  CHECK(v.steps_t1 < v.steps_t2);
  CHECK(v.label == Label::False);
  CHECK(v.proof.size() == 1);
}

TEST_CASE("budget exhaustion reads as no contradiction") {
  std::vector<std::string> theory{"Bob is big."};
  const char* chain[] = {"big", "blue", "green", "happy", "kind", "rough", "round", "tall"};
  for (int i = 0; i + 1 < 8; ++i)
    theory.push_back(std::string(1, static_cast<char>(std::toupper(chain[i][0]))) + (chain[i] + 1) +
                     " people are " + chain[i + 1] + ".");
  JudgeOptions o;
  o.budget = 4;
  const Verdict cut = judge(theory, "Bob is tall.", lex(), o);
  CHECK(cut.label == Label::Unknown);
  CHECK(cut.halt_t2 == HaltReason::budget_exhausted);
  CHECK(judge(theory, "Bob is tall.", lex()).label == Label::True);
}

TEST_CASE("satisfiability") {
  SatReport r = check_sat(std::vector<std::string>{"Everyone is round.", "Bob is not round."}, lex());
  CHECK_FALSE(r.satisfiable);
  CHECK(r.proof.size() == 1);
  r = check_sat(std::vector<std::string>{"Bob is kind."}, lex());
  CHECK(r.satisfiable);
  CHECK(r.proof.empty());
  r = check_sat(std::vector<std::string>{"Everyone is round.", "Everyone is not round."}, lex());
  CHECK_FALSE(r.satisfiable);
}

TEST_CASE("verdicts match the semantic oracle and their proofs check") {
  const Lexicon ext = Lexicon::extended();
  testing_oracle::Monadic sem;
  std::mt19937_64 rng(41);
  std::size_t counts[3] = {0, 0, 0};
  for (int round = 0; round < 400; ++round) {
    std::vector<std::string> theory;
    std::vector<Formula> fs;
    for (std::size_t i = 0, n = 3 + rng() % 8; i < n; ++i) {
      theory.push_back(testing_oracle::random_sentence(rng, ext, 3, 4));
      fs.push_back(parse_sentence(theory.back(), ext));
    }
    if (!sem.satisfiable(fs)) continue;
    const std::string h = testing_oracle::random_sentence(rng, ext, 3, 4);
    const Label expected = sem.entail(fs, parse_sentence(h, ext));
    const PreparedTask task = prepare(theory, h, ext);
    const Verdict v = judge(task, ext);
    CHECK(v.label == expected);
    CHECK_FALSE(v.tie_broken);
    CHECK(check_proof(record_of(task, v, expected)));
    ++counts[static_cast<int>(expected)];
  }
  CHECK(counts[0] > 20);
  CHECK(counts[1] > 20);
  CHECK(counts[2] > 20);
}

TEST_CASE("labels") {
  CHECK(to_string(Label::Unknown) == "Unknown");
  CHECK(parse_label("False") == Label::False);
  CHECK_THROWS(parse_label("maybe"));
}

}
