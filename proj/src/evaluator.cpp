#include "nlrefute/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "nlrefute/engine.hpp"
#include "nlrefute/error.hpp"

namespace nlrefute {

bool check_step(const Clause& p1, const Clause& p2, const Clause& conclusion) {
  const std::string target = canonical_key(conclusion);
  for (const auto& r : resolvents(p1, p2, true))
    if (r.key == target) return true;
  return false;
}

bool check_step(const std::string& p1, const std::string& p2, const std::string& conclusion) {
  try {
    return check_step(parse_clause(p1), parse_clause(p2), parse_clause(conclusion));
  } catch (const Error& e) {
    if (e.code() == "bad_clause_format") return false;
    throw;
  }
}

std::optional<std::string> proof_defect(const PredictionRecord& rec) {
  if (rec.predicted_label == Label::Unknown) {
    if (rec.gold_label == Label::Unknown) return std::nullopt;
    return "Unknown predicted for a provable hypothesis";
  }
  if (rec.predicted_proof.empty()) return "no proof";

  const auto& inputs = rec.predicted_label == Label::True ? rec.t2 : rec.t1;
  std::unordered_set<std::string> available;
  for (const auto& c : inputs) available.insert(canonical_key(c));

  for (std::size_t k = 0; k < rec.predicted_proof.size(); ++k) {
    const StepRecord& step = rec.predicted_proof[k];
    const std::string where = "step " + std::to_string(k + 1) + ": ";
    Clause a, b, c;
    try {
      a = parse_clause(step.premises_fol[0]);
      b = parse_clause(step.premises_fol[1]);
      c = parse_clause(step.conclusion_fol);
    } catch (const Error&) {
      return where + "bad_step_format";
    }
    for (const Clause* p : {&a, &b})
      if (!available.count(canonical_key(*p)))
        return where + "premise " + to_string(*p) + " is neither an input nor an earlier conclusion";
    if (!check_step(a, b, c)) return where + "conclusion does not follow";
    available.insert(canonical_key(c));
    if (k + 1 == rec.predicted_proof.size() && !c.empty())
      return where + "proof does not end in the empty clause";
  }
  return std::nullopt;
}

bool check_proof(const PredictionRecord& rec) { return !proof_defect(rec).has_value(); }

Scores score(const std::vector<PredictionRecord>& records) {
  if (records.empty()) throw Error("empty_input", "no records to score");
  Scores s;
  s.n = records.size();
  for (const auto& r : records) {
    if (r.predicted_label != r.gold_label) continue;
    ++s.label_correct;
    if (check_proof(r)) ++s.full_correct;
  }
  s.entailment_accuracy = static_cast<double>(s.label_correct) / static_cast<double>(s.n);
  s.full_accuracy = static_cast<double>(s.full_correct) / static_cast<double>(s.n);
  return s;
}

Scores merge(const Scores& a, const Scores& b) {
  Scores s;
  s.n = a.n + b.n;
  s.label_correct = a.label_correct + b.label_correct;
  s.full_correct = a.full_correct + b.full_correct;
  if (s.n) {
    s.entailment_accuracy = static_cast<double>(s.label_correct) / static_cast<double>(s.n);
    s.full_accuracy = static_cast<double>(s.full_correct) / static_cast<double>(s.n);
  }
  return s;
}

double vce_loss(const std::vector<double>& sim, const std::vector<std::size_t>& positive,
                const std::vector<std::size_t>& negative, ClampMode mode) {
  if (positive.empty() || negative.empty())
    throw Error("degenerate_contrast", "need at least one positive and one negative");
  const std::set<std::size_t> pos(positive.begin(), positive.end());
  for (std::size_t i : negative)
    if (pos.count(i)) throw Error("degenerate_contrast", "index in both P and R");
  for (std::size_t i : pos)
    if (i >= sim.size()) throw Error("degenerate_contrast", "positive index out of range");
  for (std::size_t i : negative)
    if (i >= sim.size()) throw Error("degenerate_contrast", "negative index out of range");

  // log sum_i exp(s_i), shifted for stability.
  double top = -INFINITY;
  for (std::size_t i : negative) top = std::max(top, sim[i]);
  double acc = 0.0;
  for (std::size_t i : negative) acc += std::exp(sim[i] - top);
  const double log_denominator = top + std::log(acc);

  double total = 0.0;
  for (std::size_t j : positive) {
    const double s = mode == ClampMode::printed_max ? std::max(sim[j], 0.8) : std::min(sim[j], 0.8);
    total += s - log_denominator;
  }
  return -total / static_cast<double>(positive.size());
}

}  // namespace nlrefute
