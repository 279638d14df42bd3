#pragma once

// Conversion of closed formulas to Skolem-normal-form clause sets, and the
// construction of the two theory sets judged for a hypothesis.

#include <cstddef>
#include <utility>
#include <vector>

#include "nlrefute/engine.hpp"
#include "nlrefute/formula.hpp"

namespace nlrefute {

inline constexpr std::size_t kDefaultCnfBound = 256;

// Issues sk1, sk2, ... in first-use order. One instance per judging task.
class SkolemNames {
 public:
  explicit SkolemNames(std::size_t next = 1) : next_(next) {}

  Symbol fresh();
  std::size_t next() const { return next_; }

  // Moves the counter past any skN constant or function symbol in f.
  void reserve_past(const Formula& f);
  void reserve_past(const Clause& c);

 private:
  std::size_t next_;
};

// True for names of the form sk<digits>.
bool is_skolem_name(std::string_view name);

// Negation normal form; implications are eliminated.
Formula to_nnf(const Formula& f);

// Not(h) pushed down to the atoms, with quantifiers dualized.
Formula negate(const Formula& h);

// Clause set of the Skolemized CNF of a closed formula: NNF, standardize
// apart, Skolemize, distribute, extract. Clauses come back canonical,
// tautology-free and deduplicated, tagged with origin. Throws
// Error("cnf_blowup") past max_clauses and Error("free_variable") on open input.
std::vector<Clause> to_clauses(const Formula& f, SkolemNames& names,
                               Origin origin = Origin::input,
                               std::size_t max_clauses = kDefaultCnfBound);

// Clauses of one judging task. Skolem names are shared: the theory is
// normalized once, then the hypothesis, then its negation.
struct TaskClauses {
  std::vector<Clause> theory;
  std::vector<Clause> hypothesis;
  std::vector<Clause> negated_hypothesis;
};

TaskClauses normalize_task(const std::vector<Formula>& theory, const Formula& hypothesis,
                           std::size_t max_clauses = kDefaultCnfBound);

// T1 = theory + hypothesis, T2 = theory + negated hypothesis. Hypothesis
// clauses are support-marked in both sets.
std::pair<TheorySet, TheorySet> build_theory_sets(const TaskClauses& task);
std::pair<TheorySet, TheorySet> build_theory_sets(const std::vector<Formula>& theory,
                                                  const Formula& hypothesis);

}  // namespace nlrefute
