#include "nlrefute/formula.hpp"

#include <algorithm>
#include <cassert>

namespace nlrefute {

Formula Formula::make_atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(a), Symbol(), {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::negation, {}, Symbol(), {std::move(f)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::conjunction, {}, Symbol(), {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::disjunction, {}, Symbol(), {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::implication, {}, Symbol(), {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(Symbol variable, Formula body) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::forall, {}, variable, {std::move(body)}}));
}

Formula Formula::exists(Symbol variable, Formula body) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::exists, {}, variable, {std::move(body)}}));
}

Formula Formula::conjunction(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conjunction(out, parts[i]);
  return out;
}

Formula Formula::disjunction(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = disjunction(out, parts[i]);
  return out;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::atom:
      return atom() == other.atom();
    case Kind::forall:
    case Kind::exists:
      return variable() == other.variable() && body() == other.body();
    default:
      return node_->children == other.node_->children;
  }
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return to_string(f.atom());
    case Formula::Kind::negation:
      return "-" + to_string(f.lhs());
    case Formula::Kind::conjunction:
      return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
    case Formula::Kind::disjunction:
      return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
    case Formula::Kind::implication:
      return "(" + to_string(f.lhs()) + " -> " + to_string(f.rhs()) + ")";
    case Formula::Kind::forall:
      return "all " + f.variable().str() + " " + to_string(f.body());
    case Formula::Kind::exists:
      return "exists " + f.variable().str() + " " + to_string(f.body());
  }
  return {};
}

namespace {

void collect_term_symbols(const Term& t, std::vector<Symbol>& vars, std::vector<Symbol>& consts,
                          const std::vector<Symbol>& bound) {
  if (t.is_variable()) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
        std::find(vars.begin(), vars.end(), t.name) == vars.end())
      vars.push_back(t.name);
    return;
  }
  if (t.kind == Term::Kind::constant &&
      std::find(consts.begin(), consts.end(), t.name) == consts.end())
    consts.push_back(t.name);
  for (const auto& a : t.args) collect_term_symbols(a, vars, consts, bound);
}

void collect(const Formula& f, std::vector<Symbol>& vars, std::vector<Symbol>& consts,
             std::vector<Symbol>& bound) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      for (const auto& t : f.atom().args) collect_term_symbols(t, vars, consts, bound);
      return;
    case Formula::Kind::negation:
      collect(f.lhs(), vars, consts, bound);
      return;
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      bound.push_back(f.variable());
      collect(f.body(), vars, consts, bound);
      bound.pop_back();
      return;
    default:
      collect(f.lhs(), vars, consts, bound);
      collect(f.rhs(), vars, consts, bound);
  }
}

}  // namespace

std::vector<Symbol> free_variables(const Formula& f) {
  std::vector<Symbol> vars, consts, bound;
  collect(f, vars, consts, bound);
  return vars;
}

std::vector<Symbol> constants_of(const Formula& f) {
  std::vector<Symbol> vars, consts, bound;
  collect(f, vars, consts, bound);
  return consts;
}

}  // namespace nlrefute
