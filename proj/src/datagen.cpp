#include "nlrefute/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "nlrefute/error.hpp"
#include "nlrefute/nl.hpp"
#include "nlrefute/normalizer.hpp"
#include "nlrefute/oracle.hpp"
#include "nlrefute/parallel.hpp"

namespace nlrefute {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the distributions are not, so
// the bounded draws are done here to keep datasets identical across
// standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dULL))) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  template <typename T>
  std::vector<T> sample(std::vector<T> pool, std::size_t k) {
    shuffle(pool);
    pool.resize(std::min(k, pool.size()));
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> to_strings(const std::vector<Clause>& clauses) {
  std::vector<std::string> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) out.push_back(to_string(c));
  return out;
}

std::vector<Clause> parse_clauses(const std::vector<std::string>& lines) {
  std::vector<Clause> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(parse_clause(l));
  return out;
}

std::string rule_sentence(Rng& rng, const std::vector<std::string>& attrs,
                          const GenConfig& cfg) {
  const std::size_t body_size = 1 + rng.below(std::min(cfg.max_rule_body, attrs.size() - 1));
  auto picked = rng.sample(attrs, body_size + 1);
  const std::string head = picked.back();
  picked.pop_back();
  const bool head_positive = !rng.chance(cfg.p_negation);
  const double style = rng.uniform();
  if (style < 0.4) return realize_rule(picked, head, head_positive, false);
  if (style < 0.8) return realize_rule(picked, head, head_positive, true);
  std::vector<std::pair<std::string, bool>> lits;
  for (const auto& b : picked) lits.emplace_back(b, rng.chance(cfg.p_negation));
  lits.emplace_back(head, head_positive);
  return realize_universal(lits);
}

void dedupe_and_shuffle(Rng& rng, std::vector<std::string>& sentences) {
  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (auto& s : sentences)
    if (seen.insert(s).second) unique.push_back(std::move(s));
  rng.shuffle(unique);
  sentences = std::move(unique);
}

void record_verdict(Instance& inst, const Verdict& v) {
  inst.meta["steps_t1"] = std::to_string(v.steps_t1);
  inst.meta["steps_t2"] = std::to_string(v.steps_t2);
  inst.meta["halt_t1"] = to_string(v.halt_t1);
  inst.meta["halt_t2"] = to_string(v.halt_t2);
  if (v.tie_broken) inst.meta["tie_broken"] = "true";
}

Instance package(std::string id, const std::vector<std::string>& theory,
                 const std::string& hypothesis, const PreparedTask& task, const Lexicon& lex) {
  Instance inst;
  inst.id = std::move(id);
  inst.theory = theory;
  inst.theory_fol = to_strings(task.clauses.theory);
  inst.hypothesis = hypothesis;
  inst.hypothesis_fol = to_string(parse_sentence(hypothesis, lex));
  inst.hypothesis_clauses_fol = to_strings(task.clauses.hypothesis);
  inst.negated_hypothesis_fol = to_strings(task.clauses.negated_hypothesis);
  return inst;
}

struct Option {
  Label label;
  Instance inst;
};

struct Candidate {
  std::string reject;
  std::vector<Option> options;  // at most one per label, in preference order
};

Candidate entailment_candidate(const GenConfig& cfg, const Lexicon& lex, std::uint64_t index) {
  Rng rng(cfg.seed, index);
  Candidate out;
  const auto entities = rng.sample(lex.entities(), cfg.n_entities);
  const auto attrs = rng.sample(lex.attributes(), cfg.n_attributes);

  std::vector<std::string> theory;
  for (std::size_t i = 0; i < cfg.n_facts; ++i) {
    const auto& a = attrs[rng.below(attrs.size())];
    const bool positive = !rng.chance(cfg.p_negation);
    if (cfg.allow_existential && rng.chance(0.25))
      theory.push_back(realize_existential(a, positive));
    else
      theory.push_back(realize_fact(entities[rng.below(entities.size())], a, positive));
  }
  for (std::size_t i = 0; i < cfg.n_rules; ++i) theory.push_back(rule_sentence(rng, attrs, cfg));
  dedupe_and_shuffle(rng, theory);

  if (!oracle_satisfiable(theory_clauses(theory, lex))) {
    out.reject = "inconsistent_theory";
    return out;
  }

  std::vector<std::string> hypotheses;
  for (const auto& e : entities)
    for (const auto& a : attrs) {
      hypotheses.push_back(realize_fact(e, a, true));
      hypotheses.push_back(realize_fact(e, a, false));
    }
  if (cfg.allow_existential)
    for (const auto& a : attrs) {
      hypotheses.push_back(realize_existential(a, true));
      hypotheses.push_back(realize_existential(a, false));
    }
  rng.shuffle(hypotheses);
  hypotheses.resize(std::min<std::size_t>(hypotheses.size(), 16));

  JudgeOptions jo;
  jo.budget = cfg.budget;
  jo.strategy = cfg.strategy;
  std::set<Label> covered;
  for (const auto& h : hypotheses) {
    PreparedTask task = prepare(theory, h, lex);
    const Label label = oracle_label(task.clauses);
    if (!covered.insert(label).second) continue;
    const Verdict v = judge(task, lex, jo);
    Instance inst = package("", theory, h, task, lex);
    inst.label = to_string(label);
    inst.meta["generator"] = "entailment";
    inst.meta["attempt"] = std::to_string(index);
    inst.meta["judge_label"] = to_string(v.label);
    record_verdict(inst, v);
    if (v.label == label) inst.gold_proof = v.proof;
    inst.depth = inst.gold_proof.size();
    out.options.push_back({label, std::move(inst)});
    if (covered.size() == 3) break;
  }
  if (out.options.empty()) out.reject = "no_hypothesis";
  return out;
}

Candidate nlsat_candidate(const GenConfig& cfg, const Lexicon& lex, std::uint64_t index) {
  Rng rng(cfg.seed, index);
  Candidate out;
  const auto attrs = rng.sample(lex.attributes(), cfg.n_attributes);

  std::vector<std::string> theory;
  const std::size_t shape = rng.below(3);  // planted chain, broken chain, rules only
  if (shape < 2 && attrs.size() >= 2) {
    const std::size_t max_links = std::min<std::size_t>(kNlsatMaxDepth - 1, attrs.size() - 1);
    const std::size_t links = 1 + rng.below(max_links);
    auto chain = rng.sample(attrs, links + 1);
    theory.push_back(realize_universal({{chain[0], true}}));
    for (std::size_t i = 0; i < links; ++i) {
      const double style = rng.uniform();
      if (style < 0.4)
        theory.push_back(realize_rule({chain[i]}, chain[i + 1], true, false));
      else if (style < 0.8)
        theory.push_back(realize_rule({chain[i]}, chain[i + 1], true, true));
      else
        theory.push_back(realize_universal({{chain[i], false}, {chain[i + 1], true}}));
    }
    std::string last = chain.back();
    if (shape == 1) {
      std::vector<std::string> rest;
      for (const auto& a : attrs)
        if (std::find(chain.begin(), chain.end(), a) == chain.end()) rest.push_back(a);
      if (!rest.empty()) last = rest[rng.below(rest.size())];
    }
    theory.push_back(realize_universal({{last, false}}));
  }
  for (std::size_t i = 0; i < cfg.n_rules; ++i) theory.push_back(rule_sentence(rng, attrs, cfg));
  dedupe_and_shuffle(rng, theory);

  const auto clauses = theory_clauses(theory, lex);
  const bool sat = oracle_satisfiable(clauses);
  JudgeOptions jo;
  jo.budget = cfg.budget;
  const SatReport report = check_sat(clauses, lex, jo);

  Instance inst;
  inst.theory = theory;
  inst.theory_fol = to_strings(clauses);
  inst.label = sat ? "Satisfiable" : "Unsatisfiable";
  if (report.satisfiable == sat) inst.gold_proof = report.proof;
  inst.depth = inst.gold_proof.size();
  inst.meta["generator"] = "nlsat";
  inst.meta["attempt"] = std::to_string(index);
  inst.meta["engine_label"] = report.satisfiable ? "Satisfiable" : "Unsatisfiable";
  inst.meta["steps"] = std::to_string(report.steps);
  inst.meta["halt"] = to_string(report.halt_reason);
  out.options.push_back({sat ? Label::False : Label::True, std::move(inst)});
  return out;
}

// Draws candidates in attempt order, in parallel batches, and accepts them
// sequentially so the output does not depend on the number of workers.
template <typename Make, typename Accept>
std::vector<Instance> run_generator(const GenConfig& cfg, std::size_t jobs, Make make,
                                    Accept accept) {
  std::vector<Instance> out;
  std::map<std::string, std::size_t> rejects;
  std::size_t since_accept = 0;
  const std::size_t batch = std::max<std::size_t>(8, jobs * 4);
  for (std::uint64_t base = 0; out.size() < cfg.n_instances; base += batch) {
    std::vector<Candidate> cands(batch);
    parallel_for(batch, jobs, [&](std::size_t i) { cands[i] = make(base + i); });
    for (auto& c : cands) {
      if (out.size() == cfg.n_instances) break;
      std::string reason = c.reject;
      if (reason.empty()) {
        auto picked = accept(c);
        if (picked) {
          picked->id = "gen-" + std::to_string(cfg.seed) + "-" + std::to_string(out.size());
          out.push_back(std::move(*picked));
          since_accept = 0;
          continue;
        }
        reason = "quota_or_depth";
      }
      ++rejects[reason];
      if (++since_accept > cfg.stall_limit) {
        auto worst = std::max_element(rejects.begin(), rejects.end(),
                                      [](auto& a, auto& b) { return a.second < b.second; });
        throw Error("generation_stalled",
                    std::to_string(since_accept) + " consecutive candidates rejected after " +
                        std::to_string(out.size()) + " accepted; most frequent reason: " +
                        worst->first);
      }
    }
  }
  return out;
}

}  // namespace

void GenConfig::validate(const Lexicon& lex) const {
  auto bad = [](const std::string& m) { throw Error("config_error", m); };
  if (n_instances < 1 || n_entities < 1 || n_attributes < 1 || n_facts < 1 || n_rules < 1 ||
      max_rule_body < 1 || budget < 1)
    bad("all counts must be at least 1");
  if (n_entities > lex.entities().size())
    bad("n_entities exceeds the " + std::to_string(lex.entities().size()) + " lexicon entities");
  if (n_attributes > lex.attributes().size())
    bad("n_attributes exceeds the " + std::to_string(lex.attributes().size()) +
        " lexicon attributes");
  if (n_attributes > kOracleAtomCap)
    bad("n_attributes above " + std::to_string(kOracleAtomCap) + " is beyond oracle reach");
  if (max_rule_body >= n_attributes) bad("max_rule_body must be below n_attributes");
  if (!(p_negation >= 0.0 && p_negation <= 1.0)) bad("p_negation must lie in [0, 1]");
  if (target_depth_range.first > target_depth_range.second) bad("empty target_depth_range");
  double sum = 0.0;
  for (double w : label_mix) {
    if (!(w >= 0.0)) bad("label_mix entries must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) bad("label_mix must sum to 1");
}

std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& weights) {
  std::vector<std::size_t> out(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] * static_cast<double>(total);
    out[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    given += out[i];
    remainders.emplace_back(exact - static_cast<double>(out[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; given < total && k < remainders.size(); ++k, ++given)
    ++out[remainders[k].second];
  return out;
}

Label oracle_label(const TaskClauses& task) {
  return oracle_entail(task.theory, task.hypothesis, task.negated_hypothesis);
}

Instance build_instance(std::string id, const std::vector<std::string>& theory,
                        const std::string& hypothesis, const Lexicon& lex,
                        const JudgeOptions& options) {
  PreparedTask task = prepare(theory, hypothesis, lex);
  const Verdict v = judge(task, lex, options);
  Instance inst = package(std::move(id), theory, hypothesis, task, lex);
  inst.label = to_string(v.label);
  inst.gold_proof = v.proof;
  inst.depth = v.proof.size();
  record_verdict(inst, v);
  return inst;
}

std::vector<Instance> generate(const GenConfig& config, const Lexicon& lex, std::size_t jobs) {
  config.validate(lex);
  const auto quota =
      apportion(config.n_instances, {config.label_mix[0], config.label_mix[1], config.label_mix[2]});
  std::array<std::size_t, 3> taken{};
  const auto [lo, hi] = config.target_depth_range;
  return run_generator(
      config, jobs, [&](std::uint64_t i) { return entailment_candidate(config, lex, i); },
      [&](Candidate& c) -> std::optional<Instance> {
        for (auto& opt : c.options) {
          const auto k = static_cast<std::size_t>(opt.label);
          if (taken[k] >= quota[k]) continue;
          if (opt.label != Label::Unknown && (opt.inst.depth < lo || opt.inst.depth > hi))
            continue;
          ++taken[k];
          return std::move(opt.inst);
        }
        return std::nullopt;
      });
}

std::vector<Instance> generate_nlsat(const GenConfig& config, double fraction_unsat,
                                     const Lexicon& lex, std::size_t jobs) {
  config.validate(lex);
  if (!(fraction_unsat >= 0.0 && fraction_unsat <= 1.0))
    throw Error("config_error", "fraction_unsat must lie in [0, 1]");
  const auto quota = apportion(config.n_instances, {fraction_unsat, 1.0 - fraction_unsat});
  std::array<std::size_t, 2> taken{};
  return run_generator(
      config, jobs, [&](std::uint64_t i) { return nlsat_candidate(config, lex, i); },
      [&](Candidate& c) -> std::optional<Instance> {
        auto& opt = c.options.front();
        if (opt.inst.depth > kNlsatMaxDepth) return std::nullopt;
        const std::size_t k = opt.label == Label::True ? 0 : 1;  // True marks unsatisfiable
        if (taken[k] >= quota[k]) return std::nullopt;
        ++taken[k];
        return std::move(opt.inst);
      });
}

std::vector<TrainingRecord> extract_training_samples(const Instance& inst, const Lexicon& lex) {
  std::vector<TrainingRecord> out;
  if (inst.gold_proof.empty()) return out;

  std::vector<std::string> extra;
  if (inst.label == "True") extra = inst.negated_hypothesis_fol;
  else if (inst.label == "False") extra = inst.hypothesis_clauses_fol;
  else if (inst.label != "Unsatisfiable") return out;

  TheorySet inputs;
  for (const auto& c : parse_clauses(inst.theory_fol)) inputs.add(c, false);
  for (const auto& c : parse_clauses(extra)) inputs.add(c, true);

  const ClauseRenderer render = make_renderer(lex);
  std::vector<std::string> context;
  for (const auto& c : inputs.clauses()) context.push_back(render(c));

  for (std::size_t k = 0; k < inst.gold_proof.size(); ++k) {
    const ProofStep& s = inst.gold_proof[k];
    const std::string& ti = s.premises_nl[0];
    const std::string& tj = s.premises_nl[1];
    auto rec = [&](std::string kind, std::vector<std::string> ctx, std::vector<std::string> in,
                   std::vector<std::string> target) {
      out.push_back(TrainingRecord{std::move(kind), std::move(ctx), std::move(in),
                                   std::move(target), inst.id, k + 1});
    };
    rec("pre_s", context, {}, {ti, tj});
    rec("post_s", context, {ti}, {tj});
    rec("post_s", context, {tj}, {ti});
    rec("kc", {}, {ti, tj}, {s.conclusion_nl});
    context.push_back(s.conclusion_nl);
  }
  return out;
}

}  // namespace nlrefute
