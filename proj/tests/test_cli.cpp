#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NLREFUTE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name, const std::string& content = "") {
  const fs::path dir = fs::temp_directory_path() / "nlrefute_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
  return p;
}

const std::string kWorked = std::string(NLREFUTE_DATA) + "/worked_example.txt";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("prove") {
  Run r = run("prove --theory " + kWorked + " --hypothesis 'Bob is not kind.'");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "True\n"
        "STEP 1: [4] kind(Bob) | [1] -kind(v1) | -round(v1) | rough(v1) => [5] -round(Bob) | rough(Bob)"
        " ;; NL: Bob is kind. + Everyone is not kind or not round or rough. => Bob is not round or rough.\n"
        "STEP 2: [5] -round(Bob) | rough(Bob) | [2] -rough(v1) => [6] -round(Bob)"
        " ;; NL: Bob is not round or rough. + Everyone is not rough. => Bob is not round.\n"
        "STEP 3: [6] -round(Bob) | [3] round(v1) => [7] []"
        " ;; NL: Bob is not round. + Everyone is round. => \n");
  CHECK(run("prove --theory " + kWorked + " --hypothesis 'Bob is not kind.'").out == r.out);

  const auto fact = scratch("fact.txt", "Bob is kind.\n");
  r = run("prove --theory " + fact.string() + " --hypothesis 'Bob is kind.'");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("True\nSTEP 1:", 0) == 0);
  CHECK(r.out.find("STEP 2") == std::string::npos);
  r = run("prove --theory " + fact.string() + " --hypothesis 'Bob is round.'");
  CHECK(r.out == "Unknown\n");

  r = run("prove --json --theory " + kWorked + " --hypothesis 'Bob is not kind.'");
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("label") == "True");
  CHECK(j.at("proof").size() == 3);
  CHECK(j.at("halt_t2") == "empty_clause");

  r = run("prove --strategy unrestricted --theory " + kWorked + " --hypothesis 'Bob is not kind.'");
  CHECK(r.out.rfind("True\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("prove --theory " + kWorked + " --hypothesis 'Bob is friendly.'").code == 2);
  CHECK(run("prove --theory " + kWorked + " --hypothesis 'Bob kind.'").code == 2);
  CHECK(run("prove --theory " + kWorked + " --hypothesis 'Bob is kind.' --strategy greedy").code == 4);
  CHECK(run("prove --hypothesis 'Bob is kind.'").code == 4);
  CHECK(run("prove --theory /nonexistent --hypothesis 'Bob is kind.'").code == 4);
  CHECK(run("gen --config " + scratch("bad.json", "{\"sed\": 3}").string()).code == 4);
  CHECK(run("gen --config " + scratch("broken.json", "{").string()).code == 4);
  CHECK(run("eval --predictions " + scratch("junk.jsonl", "nope\n").string()).code == 2);
  const auto lex = scratch("lex.txt", "[entities]\nBob\nBob\n");
  CHECK(run("prove --lexicon " + lex.string() + " --theory " + kWorked + " --hypothesis 'Bob is kind.'").code == 4);
  CHECK(run("--help").code == 0);
  const std::string help = run("prove --help").out;
  for (const char* flag : {"--budget", "--strategy", "--lexicon", "--seed", "--json", "--jobs"})
    CHECK(help.find(flag) != std::string::npos);
}

TEST_CASE("budget exhaustion is reported as Unknown") {
  const auto chain = scratch("chain.txt",
                             "Bob is big.\nBig people are blue.\nBlue people are green.\n"
                             "Green people are happy.\nHappy people are kind.\n");
  const Run r = run("prove --budget 2 --theory " + chain.string() + " --hypothesis 'Bob is kind.'");
  CHECK(r.code == 0);
  CHECK(r.out == "Unknown\n");
}

TEST_CASE("sat") {
  const auto contra = scratch("contra.txt", "Everyone is round.\nBob is not round.\n");
  Run r = run("sat --theory " + contra.string());
  CHECK(r.code == 0);
  CHECK(r.out.rfind("Unsatisfiable\nSTEP 1:", 0) == 0);
  CHECK(r.out.find("STEP 2") == std::string::npos);
  r = run("sat --theory " + scratch("fact.txt", "Bob is kind.\n").string());
  CHECK(r.out == "Satisfiable\n");
  r = run("sat --json --theory " + contra.string());
  CHECK(nlohmann::json::parse(r.out).at("label") == "Unsatisfiable");
}

TEST_CASE("gen, prove, eval and check work together") {
  const auto cfg = scratch("cfg.json", R"({"seed": 3, "n_instances": 12})");
  const auto a = scratch("a.jsonl"), b = scratch("b.jsonl"), train = scratch("train.jsonl");
  CHECK(run("gen --config " + cfg.string() + " --out " + a.string() + " --training-records " + train.string()).code == 0);
  CHECK(run("gen --jobs 2 --config " + cfg.string() + " --out " + b.string()).code == 0);
  const std::string dataset = slurp(a);
  CHECK(dataset == slurp(b));
  CHECK(std::count(dataset.begin(), dataset.end(), '\n') == 12);
  const std::string records = slurp(train);
  CHECK(records.find("\"kind\":\"pre_s\"") != std::string::npos);

  const auto preds = scratch("preds.jsonl");
  CHECK(run("prove --instances " + a.string() + " --out " + preds.string()).code == 0);
  Run r = run("eval --json --predictions " + preds.string() + " --gold " + a.string());
  CHECK(r.code == 0);
  const auto scores = nlohmann::json::parse(r.out);
  CHECK(scores.at("EA") == 1.0);
  CHECK(scores.at("FA") == 1.0);
  CHECK(scores.at("n") == 12);
  r = run("eval --predictions " + preds.string());
  CHECK(r.out.rfind("EA 1 (12/12)\nFA 1 (12/12)\n", 0) == 0);

  r = run("check --json --proofs " + preds.string() + " --instances " + a.string());
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    CHECK(nlohmann::json::parse(line).at("valid") == true);
    ++n;
  }
  CHECK(n == 12);

  // corrupt one proof step of a True or False prediction
  std::istringstream rows(slurp(preds));
  std::string out;
  bool corrupted = false;
  while (std::getline(rows, line)) {
    auto row = nlohmann::ordered_json::parse(line);
    if (!corrupted && !row.at("predicted_proof").empty()) {
      row["predicted_proof"][0]["conclusion_fol"] = "happy(Gary)";
      corrupted = true;
    }
    out += row.dump() + "\n";
  }
  REQUIRE(corrupted);
  const auto bad = scratch("bad.jsonl", out);
  r = run("check --proofs " + bad.string() + " --instances " + a.string());
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 12);
  CHECK(r.out.find("invalid") != std::string::npos);
  r = run("eval --json --predictions " + bad.string());
  CHECK(nlohmann::json::parse(r.out).at("FA") < 1.0);
  CHECK(nlohmann::json::parse(r.out).at("EA") == 1.0);
}

TEST_CASE("nlsat generation and checking") {
  const auto cfg = scratch("nlsat.json", R"({"seed": 2, "n_instances": 10, "n_attributes": 12})");
  const auto data = scratch("nlsat.jsonl"), preds = scratch("nlsat_preds.jsonl");
  CHECK(run("gen --nlsat --config " + cfg.string() + " --out " + data.string()).code == 0);
  const std::string text = slurp(data);
  CHECK(text.find("\"label\":\"Satisfiable\"") != std::string::npos);
  CHECK(text.find("\"label\":\"Unsatisfiable\"") != std::string::npos);
  CHECK(run("sat --instances " + data.string() + " --out " + preds.string()).code == 0);
  std::istringstream rows(slurp(preds));
  std::string line;
  while (std::getline(rows, line)) {
    const auto row = nlohmann::json::parse(line);
    CHECK(row.at("predicted_label") == row.at("label"));
  }
}

}
