#include "nlrefute/judge.hpp"

#include "nlrefute/error.hpp"
#include "nlrefute/nl.hpp"

namespace nlrefute {

std::string to_string(Label l) {
  switch (l) {
    case Label::True:
      return "True";
    case Label::False:
      return "False";
    case Label::Unknown:
      return "Unknown";
  }
  return {};
}

Label parse_label(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "true") return Label::True;
  if (t == "false") return Label::False;
  if (t == "unknown") return Label::Unknown;
  throw Error("bad_label", "unknown label '" + std::string(text) + "'");
}

Label tie_break(const RefutationResult& r1, const RefutationResult& r2,
                std::vector<std::string>* warnings) {
  if (r2.steps_used < r1.steps_used) return Label::True;
  if (r1.steps_used < r2.steps_used) return Label::False;
  if (warnings)
    warnings->push_back("both theory sets refuted in " + std::to_string(r1.steps_used) +
                        " steps; label left Unknown");
  return Label::Unknown;
}

PreparedTask prepare(const std::vector<std::string>& theory, const std::string& hypothesis,
                     const Lexicon& lex) {
  std::vector<Formula> formulas;
  formulas.reserve(theory.size());
  for (const auto& s : theory) formulas.push_back(parse_sentence(s, lex));
  PreparedTask task;
  task.clauses = normalize_task(formulas, parse_sentence(hypothesis, lex));
  std::tie(task.t1, task.t2) = build_theory_sets(task.clauses);
  return task;
}

Verdict judge(const PreparedTask& task, const Lexicon& lex, const JudgeOptions& options) {
  RefuteOptions ro;
  ro.strategy = options.strategy;
  ro.budget = options.budget;
  ro.max_inferences = options.max_inferences;
  ro.render = make_renderer(lex);

  RefutationResult r1 = refute(task.t1, ro);
  RefutationResult r2 = refute(task.t2, ro);

  Verdict v;
  v.steps_t1 = r1.steps_used;
  v.steps_t2 = r2.steps_used;
  v.halt_t1 = r1.halt_reason;
  v.halt_t2 = r2.halt_reason;
  if (r2.refuted && !r1.refuted) {
    v.label = Label::True;
  } else if (r1.refuted && !r2.refuted) {
    v.label = Label::False;
  } else if (r1.refuted && r2.refuted) {
    v.tie_broken = true;
    v.label = tie_break(r1, r2, &v.warnings);
  }
  if (v.label == Label::True) v.proof = std::move(r2.proof);
  if (v.label == Label::False) v.proof = std::move(r1.proof);
  return v;
}

Verdict judge(const std::vector<std::string>& theory, const std::string& hypothesis,
              const Lexicon& lex, const JudgeOptions& options) {
  return judge(prepare(theory, hypothesis, lex), lex, options);
}

std::vector<Clause> theory_clauses(const std::vector<std::string>& theory, const Lexicon& lex) {
  std::vector<Formula> formulas;
  for (const auto& s : theory) formulas.push_back(parse_sentence(s, lex));
  SkolemNames names;
  for (const auto& f : formulas) names.reserve_past(f);
  std::vector<Clause> out;
  for (const auto& f : formulas) {
    auto cs = to_clauses(f, names);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

SatReport check_sat(const std::vector<Clause>& clauses, const Lexicon& lex,
                    const JudgeOptions& options) {
  TheorySet set;
  for (const auto& c : clauses) set.add(c, false);
  RefuteOptions ro;
  ro.strategy = Strategy::unrestricted;
  ro.forward_subsumption = true;
  ro.budget = options.budget;
  ro.max_inferences = options.max_inferences;
  ro.render = make_renderer(lex);
  RefutationResult r = refute(set, ro);
  SatReport out;
  out.satisfiable = !r.refuted;
  out.proof = std::move(r.proof);
  out.steps = r.steps_used;
  out.halt_reason = r.halt_reason;
  return out;
}

SatReport check_sat(const std::vector<std::string>& theory, const Lexicon& lex,
                    const JudgeOptions& options) {
  return check_sat(theory_clauses(theory, lex), lex, options);
}

}  // namespace nlrefute
