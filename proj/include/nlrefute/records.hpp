#pragma once

// JSON forms of instances, proofs, predictions, training records and
// generator configs, plus JSONL file helpers.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlrefute/datagen.hpp"
#include "nlrefute/evaluator.hpp"
#include "nlrefute/judge.hpp"

namespace nlrefute {

using Json = nlohmann::ordered_json;

Json step_to_json(const ProofStep& step);
// Accepts either a full step record or just premises_fol + conclusion_fol.
ProofStep step_from_json(const Json& j);

Json instance_to_json(const Instance& inst);
// Throws Error("bad_record") on missing or mistyped fields.
Instance instance_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json training_to_json(const TrainingRecord& r);

// Unknown keys are rejected with Error("config_error").
GenConfig config_from_json(const Json& j);
Json config_to_json(const GenConfig& c);

// A prediction line is an instance record with predicted_label and
// predicted_proof added. The gold label is taken from `gold` when given,
// otherwise from the line's own label field.
PredictionRecord prediction_from_json(const Json& j, const Instance* gold = nullptr);

// Reading throws Error("io_error") or Error("bad_record") with the line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
std::string to_jsonl(const std::vector<Json>& rows);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace nlrefute
