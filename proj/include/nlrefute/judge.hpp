#pragma once

#include <string>
#include <vector>

#include "nlrefute/engine.hpp"
#include "nlrefute/label.hpp"
#include "nlrefute/lexicon.hpp"
#include "nlrefute/normalizer.hpp"

namespace nlrefute {

struct JudgeOptions {
  Strategy strategy = Strategy::sos_linear;
  std::size_t budget = 100;
  std::size_t max_inferences = 50000;
};

struct Verdict {
  Label label = Label::Unknown;
  // Refutation of T2 for True, of T1 for False, empty for Unknown.
  Proof proof;
  std::size_t steps_t1 = 0;
  std::size_t steps_t2 = 0;
  HaltReason halt_t1 = HaltReason::no_valid_pair;
  HaltReason halt_t2 = HaltReason::no_valid_pair;
  bool tie_broken = false;
  std::vector<std::string> warnings;
};

// Both sets refuted: fewer steps wins (T2 -> True, T1 -> False); a draw is
// Unknown and appends a warning.
Label tie_break(const RefutationResult& r1, const RefutationResult& r2,
                std::vector<std::string>* warnings = nullptr);

// Normalized task plus the two theory sets, as judged.
struct PreparedTask {
  TaskClauses clauses;
  TheorySet t1;
  TheorySet t2;
};

PreparedTask prepare(const std::vector<std::string>& theory, const std::string& hypothesis,
                     const Lexicon& lex);

Verdict judge(const PreparedTask& task, const Lexicon& lex, const JudgeOptions& options = {});
Verdict judge(const std::vector<std::string>& theory, const std::string& hypothesis,
              const Lexicon& lex, const JudgeOptions& options = {});

struct SatReport {
  bool satisfiable = true;
  Proof proof;
  std::size_t steps = 0;
  HaltReason halt_reason = HaltReason::no_valid_pair;
};

// Contradiction check of the theory alone, with the unrestricted strategy
// whatever options.strategy says.
SatReport check_sat(const std::vector<Clause>& clauses, const Lexicon& lex,
                    const JudgeOptions& options = {});
SatReport check_sat(const std::vector<std::string>& theory, const Lexicon& lex,
                    const JudgeOptions& options = {});

// Theory clauses of a list of sentences, Skolemized with shared names.
std::vector<Clause> theory_clauses(const std::vector<std::string>& theory, const Lexicon& lex);

}  // namespace nlrefute
