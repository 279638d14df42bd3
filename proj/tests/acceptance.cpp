// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "nlrefute/datagen.hpp"
#include "nlrefute/error.hpp"
#include "nlrefute/evaluator.hpp"
#include "nlrefute/judge.hpp"
#include "nlrefute/nl.hpp"
#include "nlrefute/oracle.hpp"
#include "nlrefute/records.hpp"
#include "support/semantic_oracle.hpp"

using namespace nlrefute;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  failures += !o.pass;
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << o.detail << "\n"
            << std::flush;
}

const std::vector<std::string> kWorked{"Round, kind people are rough.", "Everyone is not rough.",
                                       "Everyone is round."};

std::vector<Formula> parsed(const std::vector<std::string>& sentences, const Lexicon& lex) {
  std::vector<Formula> out;
  for (const auto& s : sentences) out.push_back(parse_sentence(s, lex));
  return out;
}

PredictionRecord record_of(const PreparedTask& task, const Verdict& v, Label gold) {
  PredictionRecord rec;
  rec.predicted_label = v.label;
  rec.gold_label = gold;
  for (const auto& s : v.proof) rec.predicted_proof.push_back({s.premises_fol, s.conclusion_fol});
  rec.t1 = task.t1.clauses();
  rec.t2 = task.t2.clauses();
  return rec;
}

// Judges every instance and compares with the library oracle, the semantic
// oracle and the stored label.
struct AgreementRun {
  std::size_t n = 0, agree = 0;
  std::map<std::string, std::size_t> labels;
  std::vector<PredictionRecord> records;
  std::vector<PreparedTask> tasks;
  std::vector<Verdict> verdicts;
  std::string first_mismatch;
};

AgreementRun judge_all(const std::vector<Instance>& xs, const Lexicon& lex) {
  AgreementRun run;
  testing_oracle::Monadic sem;
  for (const auto& x : xs) {
    PreparedTask task = prepare(x.theory, x.hypothesis, lex);
    Verdict v = judge(task, lex);
    const Label lib = oracle_label(task.clauses);
    const Label semantic = sem.entail(parsed(x.theory, lex), parse_sentence(x.hypothesis, lex));
    ++run.n;
    ++run.labels[to_string(lib)];
    if (v.label == lib && lib == semantic && to_string(lib) == x.label)
      ++run.agree;
    else if (run.first_mismatch.empty())
      run.first_mismatch = x.id + " judge=" + to_string(v.label) + " oracle=" + to_string(lib) +
                           " semantic=" + to_string(semantic) + " stored=" + x.label;
    run.records.push_back(record_of(task, v, lib));
    run.tasks.push_back(std::move(task));
    run.verdicts.push_back(std::move(v));
  }
  return run;
}

// parse(realize(c)) is a variant of c; the empty clause realizes as "".
bool round_trips(const std::string& fol, const Lexicon& lex, std::string* why) {
  const Clause c = parse_clause(fol);
  std::string text;
  try {
    text = realize_clause(c, lex);
  } catch (const Error& e) {
    *why = fol + ": " + e.what();
    return false;
  }
  if (c.empty()) {
    if (!text.empty()) *why = "empty clause realized as '" + text + "'";
    return text.empty();
  }
  SkolemNames names;
  const auto back = to_clauses(parse_sentence(text, lex), names);
  if (back.size() == 1 && canonical_key(back[0]) == canonical_key(c)) return true;
  *why = fol + " -> '" + text + "' does not parse back";
  return false;
}

struct RoundTrip {
  std::size_t checked = 0, ok = 0;
  std::string first_failure;

  void add(const std::string& fol, const Lexicon& lex) {
    ++checked;
    std::string why;
    if (round_trips(fol, lex, &why)) ++ok;
    else if (first_failure.empty()) first_failure = why;
  }

  void add_instance(const Instance& x, const Lexicon& lex) {
    for (const auto& f : x.theory_fol) add(f, lex);
    for (const auto& f : x.hypothesis_clauses_fol) add(f, lex);
    for (const auto& f : x.negated_hypothesis_fol) add(f, lex);
    add_proof(x.gold_proof, lex);
  }

  void add_proof(const Proof& p, const Lexicon& lex) {
    for (const auto& s : p) {
      add(s.premises_fol[0], lex);
      add(s.premises_fol[1], lex);
      add(s.conclusion_fol, lex);
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& args) {
  const int status = std::system((std::string(NLREFUTE_BIN) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  const Lexicon standard = Lexicon::standard();
  const Lexicon extended = Lexicon::extended();

  GenConfig base;
  base.n_instances = 1000;
  std::vector<Instance> dataset;
  AgreementRun main_run;
  double main_seconds = 0.0;
  std::string main_error;
  {
    const auto t0 = Clock::now();
    try {
      dataset = generate(base, standard, 1);
      main_run = judge_all(dataset, standard);
    } catch (const std::exception& e) {
      main_error = e.what();
    }
    main_seconds = seconds_since(t0);
  }

  report(1, "oracle agreement", [&] {
    Outcome o;
    if (!main_error.empty()) {
      o.fail(main_error);
      return o;
    }
    std::ostringstream d;
    d << main_run.agree << "/" << main_run.n << " agree;";
    for (const auto& [label, n] : main_run.labels) d << " " << label << "=" << n;
    d << "; generate+judge+oracles " << std::fixed;
    d.precision(1);
    d << main_seconds << "s on one core";
    o.detail = d.str();
    if (main_run.n != 1000) o.fail("only " + std::to_string(main_run.n) + " instances");
    if (main_run.agree != main_run.n) o.fail(main_run.first_mismatch);
    if (main_run.labels.size() != 3) o.fail("not all three labels present");
    if (main_seconds >= 120.0) o.fail("too slow: " + d.str());
    return o;
  });

  report(2, "self full accuracy", [&] {
    Outcome o;
    if (main_run.records.empty()) {
      o.fail("no records");
      return o;
    }
    const Scores s = score(main_run.records);
    o.detail = "EA=" + std::to_string(s.entailment_accuracy) + " FA=" +
               std::to_string(s.full_accuracy) + " over " + std::to_string(s.n);
    if (s.entailment_accuracy != 1.0 || s.full_accuracy != 1.0) o.fail(o.detail);
    return o;
  });

  report(3, "worked example", [&] {
    Outcome o;
    const Verdict v = judge(kWorked, "Bob is not kind.", standard);
    const std::vector<std::string> fol{"-round(Bob) | rough(Bob)", "-round(Bob)", "[]"};
    const std::vector<std::string> nl{"Bob is not round or rough.", "Bob is not round.", ""};
    o.detail = "label " + to_string(v.label) + ", " + std::to_string(v.proof.size()) + " steps";
    if (v.label != Label::True) o.fail(o.detail);
    if (v.proof.size() != 3) {
      o.fail(o.detail);
      return o;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (!variants(parse_clause(v.proof[i].conclusion_fol), parse_clause(fol[i])))
        o.fail("step " + std::to_string(i + 1) + " concludes " + v.proof[i].conclusion_fol);
      if (v.proof[i].conclusion_nl != nl[i])
        o.fail("step " + std::to_string(i + 1) + " reads '" + v.proof[i].conclusion_nl + "'");
    }
    if (o.pass) o.detail += ": 'Bob is not round or rough.', 'Bob is not round.', ''";
    return o;
  });

  std::vector<Instance> existential;
  AgreementRun e_run;
  std::string e_error;
  try {
    GenConfig e = base;
    e.n_instances = 200;
    e.allow_existential = true;
    existential = generate(e, standard, 1);
    e_run = judge_all(existential, standard);
  } catch (const std::exception& ex) {
    e_error = ex.what();
  }

  std::vector<Instance> nlsat;
  std::string nlsat_error;
  try {
    GenConfig n = base;
    n.n_instances = 400;
    n.n_attributes = 16;
    nlsat = generate_nlsat(n, 0.5, extended, 1);
  } catch (const std::exception& ex) {
    nlsat_error = ex.what();
  }

  report(4, "round trip", [&] {
    Outcome o;
    RoundTrip rt;
    for (const auto& x : dataset) rt.add_instance(x, standard);
    for (const auto& v : main_run.verdicts) rt.add_proof(v.proof, standard);
    for (const auto& x : existential) rt.add_instance(x, standard);
    for (const auto& v : e_run.verdicts) rt.add_proof(v.proof, standard);
    for (const auto& x : nlsat) rt.add_instance(x, extended);
    o.detail = std::to_string(rt.ok) + "/" + std::to_string(rt.checked) +
               " clauses from generated instances and emitted proofs";
    if (rt.checked == 0) o.fail("nothing checked");
    if (rt.ok != rt.checked) o.fail(rt.first_failure);
    return o;
  });

  report(5, "strategy equivalence", [&] {
    Outcome o;
    if (main_run.tasks.size() < 1000) {
      o.fail("dataset missing");
      return o;
    }
    std::size_t agree = 0, refuted = 0, sos_not_more = 0, n = 0;
    std::string mismatch;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < 1000; ++i) {
      const PreparedTask& task = main_run.tasks[i];
      const TheorySet& set = i % 2 == 0 ? task.t2 : task.t1;
      const bool unsat = !oracle_satisfiable(set.clauses());
      // the pure linear search, without the saturation shortcut
      RefuteOptions sos, unr;
      sos.saturation_check_after = 0;
      unr.strategy = Strategy::unrestricted;
      const RefutationResult a = refute(set, sos);
      const RefutationResult b = refute(set, unr);
      ++n;
      if (a.refuted == b.refuted && a.refuted == unsat) ++agree;
      else if (mismatch.empty())
        mismatch = dataset[i].id + (i % 2 == 0 ? " T2" : " T1") + ": sos=" +
                   std::to_string(a.refuted) + " unrestricted=" + std::to_string(b.refuted) +
                   " (" + to_string(b.halt_reason) + ") oracle_unsat=" + std::to_string(unsat);
      if (a.refuted && b.refuted) {
        ++refuted;
        sos_not_more += a.steps_used <= b.steps_used;
      }
    }
    const double share = refuted ? static_cast<double>(sos_not_more) / refuted : 0.0;
    std::ostringstream d;
    d << agree << "/" << n << " sets agree; sos-linear used no more steps on " << sos_not_more << "/"
      << refuted << " refuted sets (" << std::fixed;
    d.precision(1);
    d << 100.0 * share << "%); " << seconds_since(t0) << "s";
    o.detail = d.str();
    if (agree != n) o.fail(mismatch);
    if (refuted == 0 || share < 0.9) o.fail(o.detail);
    return o;
  });

  report(6, "existential handling", [&] {
    Outcome o;
    if (!e_error.empty()) {
      o.fail(e_error);
      return o;
    }
    bool someone = false, skolem = false;
    RoundTrip rt;
    for (const auto& x : existential) {
      for (const auto& s : x.theory) someone |= s.rfind("Someone is", 0) == 0;
      for (const auto& f : x.theory_fol) skolem |= f.find("(sk") != std::string::npos;
      rt.add_instance(x, standard);
    }
    for (const auto& v : e_run.verdicts) rt.add_proof(v.proof, standard);
    const Scores s = score(e_run.records);
    o.detail = std::to_string(e_run.agree) + "/" + std::to_string(e_run.n) + " agree, EA=" +
               std::to_string(s.entailment_accuracy) + " FA=" + std::to_string(s.full_accuracy) +
               ", round trip " + std::to_string(rt.ok) + "/" + std::to_string(rt.checked);
    if (e_run.n != 200 || e_run.agree != e_run.n) o.fail(e_run.first_mismatch.empty() ? o.detail : e_run.first_mismatch);
    if (e_run.labels.size() != 3) o.fail("not all three labels present");
    if (s.entailment_accuracy != 1.0 || s.full_accuracy != 1.0) o.fail(o.detail);
    if (rt.ok != rt.checked) o.fail(rt.first_failure);
    if (!someone || !skolem) o.fail("no existential sentences or Skolem constants generated");
    return o;
  });

  report(7, "NLSAT", [&] {
    Outcome o;
    if (!nlsat_error.empty()) {
      o.fail(nlsat_error);
      return o;
    }
    testing_oracle::Monadic sem;
    std::size_t agree = 0, unsat = 0, max_depth = 0;
    std::string mismatch;
    for (const auto& x : nlsat) {
      for (const auto& s : x.theory)
        if (read_sentence(s, extended).kind == SentenceKind::fact) o.fail(x.id + " contains a fact");
      const auto clauses = theory_clauses(x.theory, extended);
      const SatReport r = check_sat(clauses, extended);
      const bool lib = oracle_satisfiable(clauses);
      const bool semantic = sem.satisfiable(parsed(x.theory, extended));
      const std::string label = r.satisfiable ? "Satisfiable" : "Unsatisfiable";
      if (r.satisfiable == lib && lib == semantic && label == x.label) ++agree;
      else if (mismatch.empty()) mismatch = x.id + " engine=" + label + " stored=" + x.label;
      if (!r.satisfiable) {
        ++unsat;
        max_depth = std::max(max_depth, r.proof.size());
      }
    }
    o.detail = std::to_string(agree) + "/" + std::to_string(nlsat.size()) + " agree, " +
               std::to_string(unsat) + " unsatisfiable, deepest refutation " +
               std::to_string(max_depth) + " steps";
    if (nlsat.size() != 400 || unsat != 200) o.fail(o.detail);
    if (agree != nlsat.size()) o.fail(mismatch);
    if (max_depth != 12) o.fail("refutation depths do not reach 12: " + o.detail);
    return o;
  });

  report(8, "vce_loss numerics", [&] {
    Outcome o;
    struct Case {
      std::vector<double> sim;
      std::vector<std::size_t> p, r;
      double expected;
    };
    const std::vector<Case> cases{{{0.9, 0.0}, {0}, {1}, -0.9},
                                  {{0.5, 0.0}, {0}, {1}, -0.8},
                                  {{0.8, 0.0, 0.0}, {0}, {1, 2}, -(0.8 - std::log(2.0))}};
    double worst = 0.0;
    for (const auto& c : cases) worst = std::max(worst, std::abs(vce_loss(c.sim, c.p, c.r) - c.expected));
    if (worst >= 1e-9) o.fail("hand evaluation differs by " + std::to_string(worst));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> above(0.81, 1.0), any(-1.0, 1.0);
    std::size_t checks = 0;
    const double h = 1e-5;
    for (int round = 0; round < 200; ++round) {
      std::vector<double> sim{above(rng), above(rng), any(rng), any(rng), any(rng)};
      const std::vector<std::size_t> p{0, 1}, r{2, 3, 4};
      const double l = vce_loss(sim, p, r);
      for (std::size_t j : p) {
        auto s = sim;
        s[j] += h;
        ++checks;
        if (vce_loss(s, p, r) > l) o.fail("loss increases with a positive similarity");
      }
      for (std::size_t i : r) {
        auto s = sim;
        s[i] += h;
        ++checks;
        if (vce_loss(s, p, r) < l) o.fail("loss decreases with a negative similarity");
      }
    }
    if (o.pass) {
      std::ostringstream d;
      d << "3 examples within " << worst << ", " << checks << " finite-difference checks hold";
      o.detail = d.str();
    }
    return o;
  });

  report(9, "training records", [&] {
    Outcome o;
    const Instance inst = build_instance("w", kWorked, "Bob is not kind.", standard);
    auto dump = [&] {
      std::vector<Json> rows;
      for (const auto& r : extract_training_samples(inst, standard)) rows.push_back(training_to_json(r));
      return to_jsonl(rows);
    };
    const auto records = extract_training_samples(inst, standard);
    const std::string text = dump();
    if (records.size() != 12) o.fail(std::to_string(records.size()) + " records");
    const bool merged = records.size() > 4 &&
                        std::find(records[4].context.begin(), records[4].context.end(),
                                  "Bob is not round or rough.") != records[4].context.end();
    if (!merged) o.fail("step-2 context lacks the step-1 conclusion");
    if (text != dump()) o.fail("records differ between two extractions");
    if (text != slurp(fs::path(NLREFUTE_TEST_DATA) / "worked_training.jsonl"))
      o.fail("records differ from the recorded run");
    if (o.pass) o.detail = "12 records, step-2 context holds 'Bob is not round or rough.', bytes match the recorded run";
    return o;
  });

  report(10, "determinism", [&] {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "nlrefute_acceptance";
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"seed": 11, "n_instances": 150, "allow_existential": true})";
    const fs::path a = dir / "a.jsonl", b = dir / "b.jsonl", c = dir / "c.jsonl";
    int codes = shell("gen --config " + cfg.string() + " --out " + a.string());
    codes |= shell("gen --config " + cfg.string() + " --out " + b.string());
    codes |= shell("gen --jobs 3 --config " + cfg.string() + " --out " + c.string());
    const std::string ga = slurp(a);
    if (codes != 0) o.fail("gen failed");
    if (ga.empty() || ga != slurp(b) || ga != slurp(c)) o.fail("gen output differs between runs");

    const fs::path theory = fs::path(NLREFUTE_DATA) / "worked_example.txt";
    const fs::path p1 = dir / "p1.txt", p2 = dir / "p2.txt", q1 = dir / "q1.jsonl", q2 = dir / "q2.jsonl";
    codes = shell("prove --theory " + theory.string() + " --hypothesis 'Bob is not kind.' --out " + p1.string());
    codes |= shell("prove --theory " + theory.string() + " --hypothesis 'Bob is not kind.' --out " + p2.string());
    codes |= shell("prove --instances " + a.string() + " --out " + q1.string());
    codes |= shell("prove --jobs 3 --instances " + a.string() + " --out " + q2.string());
    if (codes != 0) o.fail("prove failed");
    if (slurp(p1).empty() || slurp(p1) != slurp(p2)) o.fail("prove output differs between runs");
    if (slurp(q1).empty() || slurp(q1) != slurp(q2)) o.fail("batch prove output differs between runs");
    if (o.pass)
      o.detail = "gen x3 (" + std::to_string(ga.size()) + " bytes) and prove x2 byte-identical";
    fs::remove_all(dir);
    return o;
  });

  return failures == 0 ? 0 : 1;
}
