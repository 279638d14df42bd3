#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlrefute/label.hpp"
#include "nlrefute/logic.hpp"

namespace nlrefute {

struct StepRecord {
  std::array<std::string, 2> premises_fol;
  std::string conclusion_fol;
};

struct PredictionRecord {
  std::string instance_id;
  Label predicted_label = Label::Unknown;
  std::vector<StepRecord> predicted_proof;
  Label gold_label = Label::Unknown;
  // Input clauses of NLT + H and NLT + not-H; a proof for True must start
  // from t2, a proof for False from t1.
  std::vector<Clause> t1;
  std::vector<Clause> t2;
};

struct Scores {
  double entailment_accuracy = 0.0;
  double full_accuracy = 0.0;
  std::size_t n = 0;
  std::size_t label_correct = 0;
  std::size_t full_correct = 0;
};

// The conclusion is a variant of a resolvent of the premises or of a factor
// of one. Malformed clause text counts as invalid.
bool check_step(const std::string& p1, const std::string& p2, const std::string& conclusion);
bool check_step(const Clause& p1, const Clause& p2, const Clause& conclusion);

// Unknown predictions are right iff the gold label is Unknown. Otherwise every
// step must be valid, draw its premises from the refuted set's inputs or
// earlier conclusions, and the last conclusion must be the empty clause.
bool check_proof(const PredictionRecord& rec);

// Why check_proof rejected a record, or nullopt when it accepts it.
std::optional<std::string> proof_defect(const PredictionRecord& rec);

// Throws Error("empty_input") on an empty list.
Scores score(const std::vector<PredictionRecord>& records);
// Count-weighted combination of partial scores.
Scores merge(const Scores& a, const Scores& b);

enum class ClampMode { printed_max, cap_min };

// L = -(1/k) sum_{j in P} log(exp(clamp(s_j)) / sum_{i in R} exp(s_i)), with
// clamp(s) = max(s, 0.8) as printed, or min(s, 0.8) under cap_min. Throws
// Error("degenerate_contrast") when P or R is empty, overlapping or out of range.
double vce_loss(const std::vector<double>& sim, const std::vector<std::size_t>& positive,
                const std::vector<std::size_t>& negative,
                ClampMode mode = ClampMode::printed_max);

}  // namespace nlrefute
