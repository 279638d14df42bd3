#pragma once

// Synthetic theories with oracle labels and engine-produced gold proofs, the
// NLSAT rule-only variant, and extraction of per-step training records.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlrefute/engine.hpp"
#include "nlrefute/judge.hpp"
#include "nlrefute/label.hpp"
#include "nlrefute/lexicon.hpp"

namespace nlrefute {

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t n_instances = 100;
  std::size_t n_entities = 4;
  std::size_t n_attributes = 8;
  std::size_t n_facts = 6;
  std::size_t n_rules = 6;
  std::size_t max_rule_body = 2;
  double p_negation = 0.2;
  bool allow_existential = false;
  // Inclusive; applied to instances with a proof (Unknown has depth 0).
  std::pair<std::size_t, std::size_t> target_depth_range{0, 5};
  // Proportions of True, False, Unknown.
  std::array<double, 3> label_mix{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::size_t budget = 100;
  Strategy strategy = Strategy::sos_linear;
  // Consecutive rejected candidates tolerated before giving up.
  std::size_t stall_limit = 20000;

  // Throws Error("config_error").
  void validate(const Lexicon& lex) const;
};

struct Instance {
  std::string id;
  std::vector<std::string> theory;
  std::vector<std::string> theory_fol;
  std::string hypothesis;
  std::string hypothesis_fol;
  // Clause forms of the hypothesis and of its negation, as placed in T1 and T2.
  std::vector<std::string> hypothesis_clauses_fol;
  std::vector<std::string> negated_hypothesis_fol;
  // True/False/Unknown, or Satisfiable/Unsatisfiable for NLSAT instances.
  std::string label;
  std::size_t depth = 0;
  Proof gold_proof;
  std::map<std::string, std::string> meta;
};

struct TrainingRecord {
  std::string kind;  // pre_s, post_s or kc
  std::vector<std::string> context;
  std::vector<std::string> input;
  std::vector<std::string> target;
  std::string instance_id;
  std::size_t step = 0;
};

// Oracle label of a normalized task.
Label oracle_label(const TaskClauses& task);

// Judges theory + hypothesis and packages the result as an instance.
Instance build_instance(std::string id, const std::vector<std::string>& theory,
                        const std::string& hypothesis, const Lexicon& lex,
                        const JudgeOptions& options = {});

// Throws Error("generation_stalled") naming the dominant rejection reason.
std::vector<Instance> generate(const GenConfig& config, const Lexicon& lex,
                               std::size_t jobs = 1);
// Longest gold refutation kept for an NLSAT instance.
inline constexpr std::size_t kNlsatMaxDepth = 12;

std::vector<Instance> generate_nlsat(const GenConfig& config, double fraction_unsat,
                                     const Lexicon& lex, std::size_t jobs = 1);

// Four records per proof step. Context is the refuted theory set at that
// step: its input clauses followed by every earlier conclusion. Instances
// without a proof yield nothing.
std::vector<TrainingRecord> extract_training_samples(const Instance& inst, const Lexicon& lex);

// Largest-remainder apportionment of total over the given proportions.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& weights);

}  // namespace nlrefute
