#include "nlrefute/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

using GroundClause = std::vector<int>;  // +/-(atom index + 1)

void collect_constants(const Term& t, std::set<Symbol>& out) {
  if (t.kind == Term::Kind::function)
    throw Error("oracle_overflow", "function symbol " + t.name.str() + " makes the universe infinite");
  if (t.kind == Term::Kind::constant) out.insert(t.name);
}

class Grounder {
 public:
  explicit Grounder(const std::vector<Clause>& clauses) {
    std::set<Symbol> constants;
    for (const auto& c : clauses)
      for (const auto& l : c.literals)
        for (const auto& t : l.atom.args) collect_constants(t, constants);
    for (Symbol s : constants) universe_.push_back(Term{Term::Kind::constant, s, {}});
    if (universe_.empty()) universe_.push_back(Term::constant("_d"));
    for (const auto& c : clauses) ground(c);
  }

  std::vector<Term> universe_;
  std::vector<GroundClause> clauses;
  std::size_t atom_count() const { return atoms_.size(); }
  bool has_empty = false;

 private:
  void ground(const Clause& c) {
    const auto vars = variables_of(c);
    std::vector<std::size_t> choice(vars.size(), 0);
    while (true) {
      Substitution s;
      for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], universe_[choice[i]]);
      emit(s.apply(c));
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == universe_.size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }

  void emit(const Clause& c) {
    std::set<int> lits;
    for (const auto& l : c.literals) {
      const int id = atom_id(to_string(l.atom)) + 1;
      lits.insert(l.positive ? id : -id);
    }
    for (int v : lits)
      if (v > 0 && lits.count(-v)) return;
    if (lits.empty()) has_empty = true;
    clauses.emplace_back(lits.begin(), lits.end());
  }

  int atom_id(const std::string& key) {
    auto [it, inserted] = atoms_.try_emplace(key, static_cast<int>(atoms_.size()));
    return it->second;
  }

  std::unordered_map<std::string, int> atoms_;
};

class Component {
 public:
  Component(std::vector<int> atoms, std::vector<GroundClause> clauses)
      : atoms_(std::move(atoms)), value_(atoms_.size(), 0) {
    std::unordered_map<int, std::size_t> local;
    for (std::size_t i = 0; i < atoms_.size(); ++i) local[atoms_[i]] = i;
    closing_.resize(atoms_.size());
    for (auto& c : clauses) {
      GroundClause mapped;
      std::size_t last = 0;
      for (int v : c) {
        const std::size_t i = local.at(std::abs(v) - 1);
        last = std::max(last, i);
        mapped.push_back(v > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1));
      }
      closing_[last].push_back(std::move(mapped));
    }
  }

  bool satisfiable(std::size_t& tried) { return search(0, tried); }

 private:
  bool search(std::size_t depth, std::size_t& tried) {
    if (depth == atoms_.size()) return true;
    for (int v : {1, -1}) {
      ++tried;
      value_[depth] = v;
      if (consistent(depth) && search(depth + 1, tried)) return true;
    }
    value_[depth] = 0;
    return false;
  }

  bool consistent(std::size_t depth) const {
    for (const auto& c : closing_[depth]) {
      bool sat = false;
      for (int lit : c) {
        const std::size_t i = static_cast<std::size_t>(std::abs(lit)) - 1;
        if ((lit > 0) == (value_[i] > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  std::vector<int> atoms_;
  std::vector<int> value_;
  std::vector<std::vector<GroundClause>> closing_;  // clauses by their last atom
};

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

bool oracle_satisfiable(const std::vector<Clause>& clauses, OracleStats* stats,
                        std::size_t atom_cap) {
  Grounder g(clauses);
  OracleStats local;
  local.ground_atoms = g.atom_count();
  if (g.has_empty) {
    if (stats) *stats = local;
    return false;
  }

  std::vector<std::size_t> parent(g.atom_count());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& c : g.clauses)
    for (std::size_t i = 1; i < c.size(); ++i)
      parent[find(parent, std::abs(c[i]) - 1)] = find(parent, std::abs(c[0]) - 1);

  std::map<std::size_t, std::vector<int>> members;
  for (std::size_t a = 0; a < g.atom_count(); ++a)
    members[find(parent, a)].push_back(static_cast<int>(a));
  std::map<std::size_t, std::vector<GroundClause>> by_root;
  for (auto& c : g.clauses) by_root[find(parent, std::abs(c[0]) - 1)].push_back(c);

  for (auto& [root, atoms] : members) {
    local.largest_component = std::max(local.largest_component, atoms.size());
    if (atoms.size() > atom_cap)
      throw Error("oracle_overflow", std::to_string(atoms.size()) +
                                         " interacting ground atoms exceed the cap of " +
                                         std::to_string(atom_cap));
  }
  bool sat = true;
  for (auto& [root, atoms] : members) {
    Component comp(atoms, std::move(by_root[root]));
    if (!comp.satisfiable(local.assignments_tried)) {
      sat = false;
      break;
    }
  }
  if (stats) *stats = local;
  return sat;
}

Label oracle_entail(const std::vector<Clause>& theory, const std::vector<Clause>& hypothesis,
                    const std::vector<Clause>& negated_hypothesis, std::size_t atom_cap) {
  auto with = [&](const std::vector<Clause>& extra) {
    std::vector<Clause> all = theory;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };
  if (!oracle_satisfiable(with(negated_hypothesis), nullptr, atom_cap)) return Label::True;
  if (!oracle_satisfiable(with(hypothesis), nullptr, atom_cap)) return Label::False;
  return Label::Unknown;
}

}  // namespace nlrefute
