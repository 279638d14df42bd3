#include "nlrefute/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_set>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

Formula nnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::atom:
      return negated ? Formula::negation(f) : f;
    case K::negation:
      return nnf(f.lhs(), !negated);
    case K::conjunction:
      return negated ? Formula::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::disjunction:
      return negated ? Formula::conjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::disjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::implication:
      return negated ? Formula::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), true))
                     : Formula::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case K::forall:
      return negated ? Formula::exists(f.variable(), nnf(f.body(), true))
                     : Formula::forall(f.variable(), nnf(f.body(), false));
    case K::exists:
      return negated ? Formula::forall(f.variable(), nnf(f.body(), true))
                     : Formula::exists(f.variable(), nnf(f.body(), false));
  }
  return f;
}

std::size_t skolem_index(std::string_view name) {
  if (!is_skolem_name(name)) return 0;
  return std::stoul(std::string(name.substr(2)));
}

void reserve_term(const Term& t, std::size_t& next) {
  if (!t.is_variable()) next = std::max(next, skolem_index(t.name.str()) + 1);
  for (const auto& a : t.args) reserve_term(a, next);
}

void reserve_formula(const Formula& f, std::size_t& next) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      for (const auto& t : f.atom().args) reserve_term(t, next);
      return;
    case Formula::Kind::negation:
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      reserve_formula(f.lhs(), next);
      return;
    default:
      reserve_formula(f.lhs(), next);
      reserve_formula(f.rhs(), next);
  }
}

// Renames every bound variable to a fresh _qN, Skolemizes existentials over
// the universals in whose scope they occur, and drops the universal
// quantifiers. Works on NNF input, so the result is a quantifier-free NNF matrix.
class Skolemizer {
 public:
  explicit Skolemizer(SkolemNames& names) : names_(names) {}

  Formula run(const Formula& f) { return walk(f, Substitution{}); }

 private:
  Formula walk(const Formula& f, const Substitution& s) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::atom:
        return Formula::make_atom(s.apply(f.atom()));
      case K::negation:
        return Formula::negation(walk(f.lhs(), s));
      case K::conjunction:
        return Formula::conjunction(walk(f.lhs(), s), walk(f.rhs(), s));
      case K::disjunction:
        return Formula::disjunction(walk(f.lhs(), s), walk(f.rhs(), s));
      case K::implication:
        return Formula::implication(walk(f.lhs(), s), walk(f.rhs(), s));
      case K::forall: {
        Term fresh = Term::variable("_q" + std::to_string(++counter_));
        Substitution inner = s;
        inner.bind(f.variable(), fresh);
        universals_.push_back(fresh);
        Formula out = walk(f.body(), inner);
        universals_.pop_back();
        return out;
      }
      case K::exists: {
        const Symbol name = names_.fresh();
        Term witness = universals_.empty()
                           ? Term{Term::Kind::constant, name, {}}
                           : Term{Term::Kind::function, name, universals_};
        Substitution inner = s;
        inner.bind(f.variable(), std::move(witness));
        return walk(f.body(), inner);
      }
    }
    return f;
  }

  SkolemNames& names_;
  std::vector<Term> universals_;
  std::size_t counter_ = 0;
};

using Cnf = std::vector<std::vector<Literal>>;

Cnf distribute(const Formula& f, std::size_t bound) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::atom:
      return {{Literal{true, f.atom()}}};
    case K::negation:
      // NNF guarantees the operand is an atom.
      return {{Literal{false, f.lhs().atom()}}};
    case K::conjunction: {
      Cnf out = distribute(f.lhs(), bound);
      Cnf rhs = distribute(f.rhs(), bound);
      out.insert(out.end(), rhs.begin(), rhs.end());
      if (out.size() > bound)
        throw Error("cnf_blowup", "more than " + std::to_string(bound) + " clauses");
      return out;
    }
    case K::disjunction: {
      const Cnf lhs = distribute(f.lhs(), bound);
      const Cnf rhs = distribute(f.rhs(), bound);
      if (lhs.size() * rhs.size() > bound)
        throw Error("cnf_blowup", "more than " + std::to_string(bound) + " clauses");
      Cnf out;
      out.reserve(lhs.size() * rhs.size());
      for (const auto& a : lhs)
        for (const auto& b : rhs) {
          auto merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw Error("internal", "unexpected connective after normalization");
  }
}

}  // namespace

Symbol SkolemNames::fresh() { return Symbol("sk" + std::to_string(next_++)); }

void SkolemNames::reserve_past(const Formula& f) { reserve_formula(f, next_); }

void SkolemNames::reserve_past(const Clause& c) {
  for (const auto& l : c.literals)
    for (const auto& t : l.atom.args) reserve_term(t, next_);
}

bool is_skolem_name(std::string_view name) {
  if (name.size() < 3 || name.substr(0, 2) != "sk") return false;
  return std::all_of(name.begin() + 2, name.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula negate(const Formula& h) { return nnf(h, true); }

std::vector<Clause> to_clauses(const Formula& f, SkolemNames& names, Origin origin,
                               std::size_t max_clauses) {
  if (const auto open = free_variables(f); !open.empty())
    throw Error("free_variable", "formula has free variable " + open.front().str());
  const Formula matrix = Skolemizer(names).run(to_nnf(f));
  const Cnf cnf = distribute(matrix, max_clauses);

  std::vector<Clause> out;
  std::unordered_set<std::string> seen;
  for (const auto& lits : cnf) {
    Clause c = canonicalize(Clause{lits, origin, 0});
    if (is_tautology(c)) continue;
    if (seen.insert(to_string(c)).second) out.push_back(std::move(c));
  }
  return out;
}

TaskClauses normalize_task(const std::vector<Formula>& theory, const Formula& hypothesis,
                           std::size_t max_clauses) {
  SkolemNames names;
  for (const auto& f : theory) names.reserve_past(f);
  names.reserve_past(hypothesis);

  TaskClauses out;
  for (const auto& f : theory) {
    auto cs = to_clauses(f, names, Origin::input, max_clauses);
    out.theory.insert(out.theory.end(), cs.begin(), cs.end());
  }
  out.hypothesis = to_clauses(hypothesis, names, Origin::negated_hypothesis, max_clauses);
  out.negated_hypothesis =
      to_clauses(negate(hypothesis), names, Origin::negated_hypothesis, max_clauses);
  return out;
}

std::pair<TheorySet, TheorySet> build_theory_sets(const TaskClauses& task) {
  TheorySet t1, t2;
  for (const auto& c : task.theory) {
    t1.add(c, false);
    t2.add(c, false);
  }
  for (const auto& c : task.hypothesis) t1.add(c, true);
  for (const auto& c : task.negated_hypothesis) t2.add(c, true);
  return {std::move(t1), std::move(t2)};
}

std::pair<TheorySet, TheorySet> build_theory_sets(const std::vector<Formula>& theory,
                                                  const Formula& hypothesis) {
  return build_theory_sets(normalize_task(theory, hypothesis));
}

}  // namespace nlrefute
