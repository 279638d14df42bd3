// nlrefute: judge, check, score and generate template-English reasoning data.

#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "nlrefute/datagen.hpp"
#include "nlrefute/error.hpp"
#include "nlrefute/evaluator.hpp"
#include "nlrefute/judge.hpp"
#include "nlrefute/nl.hpp"
#include "nlrefute/parallel.hpp"
#include "nlrefute/records.hpp"

namespace {

using namespace nlrefute;

constexpr int kInputError = 2;
constexpr int kConfigError = 4;

struct Common {
  std::size_t budget = 100;
  std::string strategy = "sos-linear";
  std::string lexicon;
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::size_t jobs = default_jobs();

  Lexicon load_lexicon() const {
    return lexicon.empty() ? Lexicon::extended() : Lexicon::load(lexicon);
  }

  JudgeOptions judge_options() const {
    JudgeOptions o;
    o.budget = budget;
    o.strategy = parse_strategy(strategy);
    return o;
  }
};

std::vector<std::string> read_theory(const std::string& path) {
  return split_sentences(read_text(path));
}

Json prediction_row(const Instance& inst, const Verdict& v) {
  Json row = instance_to_json(inst);
  row["predicted_label"] = to_string(v.label);
  row["predicted_proof"] = Json::array();
  for (const auto& s : v.proof) row["predicted_proof"].push_back(step_to_json(s));
  return row;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else write_text(out_path, text);
}

int cmd_prove(const Common& c, const std::string& theory_path, const std::string& hypothesis,
              const std::string& instances_path, const std::string& out_path) {
  const Lexicon lex = c.load_lexicon();
  const JudgeOptions options = c.judge_options();
  if (!instances_path.empty()) {
    const auto rows = read_jsonl(instances_path);
    std::vector<Instance> instances;
    for (const auto& r : rows) instances.push_back(instance_from_json(r));
    std::vector<Json> out(instances.size());
    parallel_for(instances.size(), c.jobs, [&](std::size_t i) {
      out[i] = prediction_row(instances[i], judge(instances[i].theory, instances[i].hypothesis,
                                                  lex, options));
    });
    emit(out_path, to_jsonl(out));
    return 0;
  }
  const Verdict v = judge(read_theory(theory_path), hypothesis, lex, options);
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
  std::string text;
  if (c.json) {
    text = verdict_to_json(v).dump(2) + "\n";
  } else {
    text = to_string(v.label) + "\n" + format_proof(v.proof);
  }
  emit(out_path, text);
  return 0;
}

int cmd_sat(const Common& c, const std::string& theory_path, const std::string& instances_path,
            const std::string& out_path) {
  const Lexicon lex = c.load_lexicon();
  const JudgeOptions options = c.judge_options();
  if (!instances_path.empty()) {
    std::vector<Instance> instances;
    for (const auto& r : read_jsonl(instances_path)) instances.push_back(instance_from_json(r));
    std::vector<SatReport> reports(instances.size());
    parallel_for(instances.size(), c.jobs, [&](std::size_t i) {
      reports[i] = check_sat(instances[i].theory, lex, options);
    });
    std::vector<Json> rows;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      Json row = instance_to_json(instances[i]);
      const std::string predicted = reports[i].satisfiable ? "Satisfiable" : "Unsatisfiable";
      agree += predicted == instances[i].label;
      row["predicted_label"] = predicted;
      row["predicted_proof"] = Json::array();
      for (const auto& s : reports[i].proof) row["predicted_proof"].push_back(step_to_json(s));
      rows.push_back(std::move(row));
    }
    emit(out_path, to_jsonl(rows));
    std::cerr << "agreement: " << agree << "/" << instances.size() << "\n";
    return 0;
  }
  const SatReport r = check_sat(read_theory(theory_path), lex, options);
  std::string text;
  if (c.json) {
    Json j;
    j["label"] = r.satisfiable ? "Satisfiable" : "Unsatisfiable";
    j["steps"] = r.steps;
    j["halt_reason"] = to_string(r.halt_reason);
    j["proof"] = Json::array();
    for (const auto& s : r.proof) j["proof"].push_back(step_to_json(s));
    text = j.dump(2) + "\n";
  } else {
    text = std::string(r.satisfiable ? "Satisfiable" : "Unsatisfiable") + "\n" +
           format_proof(r.proof);
  }
  emit(out_path, text);
  return 0;
}

int cmd_gen(const Common& c, const std::string& config_path, const std::string& out_path,
            bool nlsat, double fraction_unsat, const std::string& training_path,
            std::optional<std::size_t> n_instances) {
  const Lexicon lex = c.load_lexicon();
  GenConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = config_from_json(Json::parse(read_text(config_path)));
    } catch (const nlohmann::json::exception& e) {
      throw Error("config_error", config_path + ": " + e.what());
    }
  }
  if (c.seed) cfg.seed = *c.seed;
  if (n_instances) cfg.n_instances = *n_instances;
  cfg.budget = c.budget;
  cfg.strategy = parse_strategy(c.strategy);

  const auto instances = nlsat ? generate_nlsat(cfg, fraction_unsat, lex, c.jobs)
                               : generate(cfg, lex, c.jobs);
  std::vector<Json> rows;
  for (const auto& inst : instances) rows.push_back(instance_to_json(inst));
  emit(out_path, to_jsonl(rows));

  if (!training_path.empty()) {
    std::vector<Json> records;
    for (const auto& inst : instances)
      for (const auto& r : extract_training_samples(inst, lex)) records.push_back(training_to_json(r));
    write_text(training_path, to_jsonl(records));
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& inst : instances) ++counts[inst.label];
  std::cerr << "generated " << instances.size() << " instances:";
  for (const auto& [label, n] : counts) std::cerr << " " << label << "=" << n;
  std::cerr << "\n";
  return 0;
}

std::map<std::string, Instance> load_gold(const std::string& path) {
  std::map<std::string, Instance> gold;
  if (path.empty()) return gold;
  for (const auto& r : read_jsonl(path)) {
    Instance inst = instance_from_json(r);
    gold.emplace(inst.id, std::move(inst));
  }
  return gold;
}

const Instance* gold_for(const std::map<std::string, Instance>& gold, const Json& row,
                         const std::string& gold_path) {
  if (gold_path.empty()) return nullptr;
  const std::string id = row.value("id", "");
  auto it = gold.find(id);
  if (it == gold.end()) throw Error("bad_record", "no gold instance with id '" + id + "'");
  return &it->second;
}

int cmd_eval(const Common& c, const std::string& predictions_path, const std::string& gold_path) {
  const auto gold = load_gold(gold_path);
  std::vector<PredictionRecord> records;
  for (const auto& row : read_jsonl(predictions_path))
    records.push_back(prediction_from_json(row, gold_for(gold, row, gold_path)));
  const Scores s = score(records);
  if (c.json) {
    Json j;
    j["EA"] = s.entailment_accuracy;
    j["FA"] = s.full_accuracy;
    j["n"] = s.n;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "EA " << s.entailment_accuracy << " (" << s.label_correct << "/" << s.n << ")\n"
              << "FA " << s.full_accuracy << " (" << s.full_correct << "/" << s.n << ")\n";
  }
  return 0;
}

int cmd_check(const Common& c, const std::string& proofs_path, const std::string& instances_path) {
  const auto gold = load_gold(instances_path);
  std::size_t valid = 0, total = 0;
  for (const auto& row : read_jsonl(proofs_path)) {
    const PredictionRecord rec = prediction_from_json(row, gold_for(gold, row, instances_path));
    const auto defect = proof_defect(rec);
    ++total;
    valid += !defect;
    if (c.json) {
      Json j;
      j["id"] = rec.instance_id;
      j["valid"] = !defect;
      if (defect) j["reason"] = *defect;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << rec.instance_id << (defect ? " invalid: " + *defect : " valid") << "\n";
    }
  }
  std::cerr << valid << "/" << total << " proofs valid\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution-refutation reasoning over template English theories"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--budget", common.budget, "Longest refutation searched, in steps")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--strategy", common.strategy, "sos-linear or unrestricted")
        ->capture_default_str()
        ->check(CLI::IsMember({"sos-linear", "sos_linear", "unrestricted"}));
    cmd->add_option("--lexicon", common.lexicon, "Lexicon file (default: built-in extended lexicon)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", common.seed, "Random seed (gen: overrides the config seed)");
    cmd->add_flag("--json", common.json, "Machine-readable output");
    cmd->add_option("--jobs", common.jobs, "Worker threads")->capture_default_str()->check(
        CLI::PositiveNumber);
  };

  std::string theory, hypothesis, instances, out, config, predictions, gold, proofs, training;
  bool nlsat = false;
  double fraction_unsat = 0.5;
  std::optional<std::size_t> n_instances;

  auto* prove = app.add_subcommand("prove", "Label a hypothesis against a theory, with proof");
  add_common(prove);
  auto* p_theory = prove->add_option("--theory", theory, "Theory file, one sentence per line")
                       ->check(CLI::ExistingFile);
  auto* p_hyp = prove->add_option("--hypothesis", hypothesis, "Hypothesis sentence");
  auto* p_inst = prove->add_option("--instances", instances, "Instance JSONL to judge")
                     ->check(CLI::ExistingFile);
  prove->add_option("--out", out, "Output file (default: stdout)");
  p_theory->needs(p_hyp);
  p_hyp->needs(p_theory);
  p_inst->excludes(p_theory);
  p_inst->excludes(p_hyp);

  auto* sat = app.add_subcommand("sat", "Decide whether a theory contradicts itself");
  add_common(sat);
  auto* s_theory = sat->add_option("--theory", theory, "Theory file")->check(CLI::ExistingFile);
  auto* s_inst = sat->add_option("--instances", instances, "NLSAT instance JSONL")
                     ->check(CLI::ExistingFile);
  sat->add_option("--out", out, "Output file (default: stdout)");
  s_inst->excludes(s_theory);

  auto* gen = app.add_subcommand("gen", "Generate a labeled dataset with gold proofs");
  add_common(gen);
  gen->add_option("--config", config, "Generator config JSON")->check(CLI::ExistingFile);
  gen->add_option("--out", out, "Dataset JSONL (default: stdout)");
  gen->add_option("--n", n_instances, "Number of instances (overrides the config)");
  gen->add_flag("--nlsat", nlsat, "Rule-only satisfiability instances");
  gen->add_option("--fraction-unsat", fraction_unsat, "NLSAT share of unsatisfiable theories")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--training-records", training, "Also write per-step training records here");

  auto* eval = app.add_subcommand("eval", "Score predictions: entailment and full accuracy");
  add_common(eval);
  eval->add_option("--predictions", predictions, "Prediction JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gold", gold, "Gold instance JSONL (default: labels in the predictions)")
      ->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "Validate the proof of every prediction");
  add_common(check);
  check->add_option("--proofs", proofs, "Prediction JSONL with predicted_proof")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--instances", instances, "Gold instance JSONL")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*prove) {
      if (instances.empty() && theory.empty())
        throw Error("config_error", "prove needs --theory and --hypothesis, or --instances");
      return cmd_prove(common, theory, hypothesis, instances, out);
    }
    if (*sat) {
      if (instances.empty() && theory.empty())
        throw Error("config_error", "sat needs --theory or --instances");
      return cmd_sat(common, theory, instances, out);
    }
    if (*gen) return cmd_gen(common, config, out, nlsat, fraction_unsat, training, n_instances);
    if (*eval) return cmd_eval(common, predictions, gold);
    if (*check) return cmd_check(common, proofs, instances);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string& code = e.code();
    if (code == "config_error" || code == "lexicon_error" || code == "generation_stalled")
      return kConfigError;
    return kInputError;
  }
  return 0;
}
