#include "nlrefute/records.hpp"

#include <fstream>
#include <sstream>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw Error("bad_record", std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error("bad_record", std::string("field '") + name + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const char* name, T fallback) {
  return j.contains(name) ? field<T>(j, name) : fallback;
}

std::vector<Clause> clauses_of(const std::vector<std::string>& lines) {
  std::vector<Clause> out;
  for (const auto& l : lines) out.push_back(parse_clause(l));
  return out;
}

}  // namespace

Json step_to_json(const ProofStep& step) {
  Json j;
  j["premise_ids"] = {step.premise_ids[0], step.premise_ids[1]};
  j["premises_fol"] = {step.premises_fol[0], step.premises_fol[1]};
  j["premises_nl"] = {step.premises_nl[0], step.premises_nl[1]};
  j["conclusion_id"] = step.conclusion_id;
  j["conclusion_fol"] = step.conclusion_fol;
  j["conclusion_nl"] = step.conclusion_nl;
  j["mgu"] = step.mgu.to_string();
  return j;
}

ProofStep step_from_json(const Json& j) {
  ProofStep s;
  const auto fol = field<std::vector<std::string>>(j, "premises_fol");
  if (fol.size() != 2) throw Error("bad_record", "premises_fol must hold two clauses");
  s.premises_fol = {fol[0], fol[1]};
  s.conclusion_fol = field<std::string>(j, "conclusion_fol");
  const auto nl = field_or<std::vector<std::string>>(j, "premises_nl", {"", ""});
  if (nl.size() == 2) s.premises_nl = {nl[0], nl[1]};
  s.conclusion_nl = field_or<std::string>(j, "conclusion_nl", "");
  const auto ids = field_or<std::vector<std::uint64_t>>(j, "premise_ids", {0, 0});
  if (ids.size() == 2) s.premise_ids = {ids[0], ids[1]};
  s.conclusion_id = field_or<std::uint64_t>(j, "conclusion_id", 0);
  try {
    s.mgu = parse_substitution(field_or<std::string>(j, "mgu", "{}"));
  } catch (const Error& e) {
    throw Error("bad_record", e.what());
  }
  return s;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["id"] = inst.id;
  j["theory"] = inst.theory;
  j["theory_fol"] = inst.theory_fol;
  j["hypothesis"] = inst.hypothesis;
  j["hypothesis_fol"] = inst.hypothesis_fol;
  j["hypothesis_clauses_fol"] = inst.hypothesis_clauses_fol;
  j["negated_hypothesis_fol"] = inst.negated_hypothesis_fol;
  j["label"] = inst.label;
  j["depth"] = inst.depth;
  j["gold_proof"] = Json::array();
  for (const auto& s : inst.gold_proof) j["gold_proof"].push_back(step_to_json(s));
  j["meta"] = Json::object();
  for (const auto& [k, v] : inst.meta) j["meta"][k] = v;
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.id = field<std::string>(j, "id");
  inst.theory = field<std::vector<std::string>>(j, "theory");
  inst.theory_fol = field_or<std::vector<std::string>>(j, "theory_fol", {});
  inst.hypothesis = field_or<std::string>(j, "hypothesis", "");
  inst.hypothesis_fol = field_or<std::string>(j, "hypothesis_fol", "");
  inst.hypothesis_clauses_fol = field_or<std::vector<std::string>>(j, "hypothesis_clauses_fol", {});
  inst.negated_hypothesis_fol = field_or<std::vector<std::string>>(j, "negated_hypothesis_fol", {});
  inst.label = field_or<std::string>(j, "label", "");
  inst.depth = field_or<std::size_t>(j, "depth", 0);
  if (j.contains("gold_proof"))
    for (const auto& s : j.at("gold_proof")) inst.gold_proof.push_back(step_from_json(s));
  if (j.contains("meta") && j.at("meta").is_object())
    for (const auto& [k, v] : j.at("meta").items())
      inst.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return inst;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["label"] = to_string(v.label);
  j["steps_t1"] = v.steps_t1;
  j["steps_t2"] = v.steps_t2;
  j["halt_t1"] = to_string(v.halt_t1);
  j["halt_t2"] = to_string(v.halt_t2);
  j["tie_broken"] = v.tie_broken;
  j["proof"] = Json::array();
  for (const auto& s : v.proof) j["proof"].push_back(step_to_json(s));
  j["warnings"] = v.warnings;
  return j;
}

Json training_to_json(const TrainingRecord& r) {
  Json j;
  j["kind"] = r.kind;
  j["context"] = r.context;
  j["input"] = r.input;
  j["target"] = r.target;
  j["instance_id"] = r.instance_id;
  j["step"] = r.step;
  return j;
}

GenConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error("config_error", "config must be a JSON object");
  GenConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "n_instances") c.n_instances = value.get<std::size_t>();
      else if (key == "n_entities") c.n_entities = value.get<std::size_t>();
      else if (key == "n_attributes") c.n_attributes = value.get<std::size_t>();
      else if (key == "n_facts") c.n_facts = value.get<std::size_t>();
      else if (key == "n_rules") c.n_rules = value.get<std::size_t>();
      else if (key == "max_rule_body") c.max_rule_body = value.get<std::size_t>();
      else if (key == "p_negation") c.p_negation = value.get<double>();
      else if (key == "allow_existential") c.allow_existential = value.get<bool>();
      else if (key == "budget") c.budget = value.get<std::size_t>();
      else if (key == "stall_limit") c.stall_limit = value.get<std::size_t>();
      else if (key == "strategy") c.strategy = parse_strategy(value.get<std::string>());
      else if (key == "target_depth_range") {
        const auto r = value.get<std::vector<std::size_t>>();
        if (r.size() != 2) throw Error("config_error", "target_depth_range needs two values");
        c.target_depth_range = {r[0], r[1]};
      } else if (key == "label_mix") {
        if (value.is_object()) {
          c.label_mix = {value.value("True", 0.0), value.value("False", 0.0),
                         value.value("Unknown", 0.0)};
        } else {
          const auto m = value.get<std::vector<double>>();
          if (m.size() != 3) throw Error("config_error", "label_mix needs three proportions");
          c.label_mix = {m[0], m[1], m[2]};
        }
      } else {
        throw Error("config_error", "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("config_error", e.what());
  }
  return c;
}

Json config_to_json(const GenConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["n_instances"] = c.n_instances;
  j["n_entities"] = c.n_entities;
  j["n_attributes"] = c.n_attributes;
  j["n_facts"] = c.n_facts;
  j["n_rules"] = c.n_rules;
  j["max_rule_body"] = c.max_rule_body;
  j["p_negation"] = c.p_negation;
  j["allow_existential"] = c.allow_existential;
  j["target_depth_range"] = {c.target_depth_range.first, c.target_depth_range.second};
  j["label_mix"] = {c.label_mix[0], c.label_mix[1], c.label_mix[2]};
  j["budget"] = c.budget;
  j["strategy"] = to_string(c.strategy);
  j["stall_limit"] = c.stall_limit;
  return j;
}

PredictionRecord prediction_from_json(const Json& j, const Instance* gold) {
  const Instance own = instance_from_json(j);
  const Instance& ref = gold ? *gold : own;
  PredictionRecord r;
  r.instance_id = own.id;
  r.predicted_label = parse_label(field<std::string>(j, "predicted_label"));
  r.gold_label = parse_label(ref.label);
  if (j.contains("predicted_proof"))
    for (const auto& s : j.at("predicted_proof")) {
      const ProofStep step = step_from_json(s);
      r.predicted_proof.push_back(StepRecord{step.premises_fol, step.conclusion_fol});
    }
  r.t1 = clauses_of(ref.theory_fol);
  r.t2 = r.t1;
  const auto h = clauses_of(ref.hypothesis_clauses_fol);
  const auto nh = clauses_of(ref.negated_hypothesis_fol);
  r.t1.insert(r.t1.end(), h.begin(), h.end());
  r.t2.insert(r.t2.end(), nh.begin(), nh.end());
  return r;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io_error", "cannot write " + path.string());
  out << text;
  if (!out) throw Error("io_error", "write failed for " + path.string());
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::vector<Json> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error("bad_record", path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

std::string to_jsonl(const std::vector<Json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

}  // namespace nlrefute
