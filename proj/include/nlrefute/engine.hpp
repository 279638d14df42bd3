#pragma once

// Binary resolution with factoring, the valid-pair test, and refutation
// search under the set-of-support + linear strategy or a plain FIFO
// saturation loop.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlrefute/logic.hpp"

namespace nlrefute {

enum class Strategy { sos_linear, unrestricted };
enum class HaltReason { empty_clause, saturated, budget_exhausted, no_valid_pair };

std::string to_string(Strategy s);
std::string to_string(HaltReason r);
// Accepts "sos-linear"/"sos_linear" and "unrestricted"; throws Error("config_error").
Strategy parse_strategy(std::string_view text);

// Ordered clause collection with canonical-form deduplication. Ids are
// 1-based and follow insertion order.
class TheorySet {
 public:
  // Canonicalizes and stores c. Tautologies are rejected (nullopt). A variant
  // of a stored clause is not stored again; its id is returned and it gains
  // the support mark if requested. Throws Error("arity_mismatch").
  std::optional<std::uint64_t> add(const Clause& c, bool support);

  // Stores a resolvent of two stored clauses; it inherits support from either parent.
  std::optional<std::uint64_t> add_derived(const Clause& c, std::uint64_t parent_a,
                                           std::uint64_t parent_b);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& at(std::uint64_t id) const { return clauses_.at(id - 1); }
  const std::string& key(std::uint64_t id) const { return keys_.at(id - 1); }
  bool in_support(std::uint64_t id) const { return support_.at(id - 1); }
  std::vector<std::uint64_t> support_ids() const;

  std::optional<std::uint64_t> find(const Clause& c) const;
  std::optional<std::uint64_t> find_key(const std::string& key) const;

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

 private:
  std::vector<Clause> clauses_;
  std::vector<std::string> keys_;
  std::vector<bool> support_;
  std::unordered_map<std::string, std::uint64_t> index_;
  std::map<Symbol, std::size_t> arity_;
};

struct ProofStep {
  std::array<std::uint64_t, 2> premise_ids{};
  std::array<std::string, 2> premises_fol;
  std::array<std::string, 2> premises_nl;
  std::uint64_t conclusion_id = 0;
  std::string conclusion_fol;
  std::string conclusion_nl;
  Substitution mgu;
};

using Proof = std::vector<ProofStep>;

struct RefutationResult {
  bool refuted = false;
  // Resolution steps performed, including those on abandoned branches.
  std::size_t steps_used = 0;
  // The refutation itself: ends in the empty clause iff refuted, else empty.
  Proof proof;
  HaltReason halt_reason = HaltReason::no_valid_pair;
};

using ClauseRenderer = std::function<std::string(const Clause&)>;

struct RefuteOptions {
  Strategy strategy = Strategy::sos_linear;
  // Longest refutation searched for, in resolution steps.
  std::size_t budget = 100;
  // Hard cap on steps performed per call; reaching it reports budget_exhausted.
  std::size_t max_inferences = 50000;
  // Unrestricted only: drop resolvents subsumed by a kept clause and retire
  // kept clauses a new resolvent subsumes, when ancestry sizes allow it.
  bool forward_subsumption = false;
  // sos_linear only: after this many steps without a refutation, saturate the
  // whole set once (with subsumption); a saturation that completes without
  // the empty clause ends the search as saturated. 0 disables the check.
  std::size_t saturation_check_after = 1000;
  // NL rendering for proof steps; FOL serialization when unset.
  ClauseRenderer render;
};

// One binary resolvent (or a factor of one) with the unifier that produced it.
struct Resolvent {
  Clause clause;
  std::string key;
  Substitution mgu;
};

// True iff some pair of literals of c1 and c2 has opposite polarity, the same
// predicate and unifiable arguments.
bool can_resolve(const Clause& c1, const Clause& c2);

// All binary resolvents, canonical and tautology-free, deduplicated and
// sorted by serialization.
std::vector<Clause> resolve(const Clause& c1, const Clause& c2);

// All single-merge factors of c, canonical and tautology-free.
std::vector<Clause> factor(const Clause& c);

// Resolvents plus, optionally, the factors of each resolvent.
std::vector<Resolvent> resolvents(const Clause& c1, const Clause& c2, bool with_factors);

RefutationResult refute(const TheorySet& theory, const RefuteOptions& options = {});

// "STEP k: [id_a] <fol_a> | [id_b] <fol_b> => [id_c] <fol_c> ;; NL: <nl_a> + <nl_b> => <nl_c>"
std::string format_step(std::size_t k, const ProofStep& step);
std::string format_proof(const Proof& proof);

}  // namespace nlrefute
