#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlrefute/logic.hpp"

namespace nlrefute {

// Quantified first-order formula. Nodes are shared and immutable, so copies
// are cheap.
class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, implication, forall, exists };

  static Formula make_atom(Atom a);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(Symbol variable, Formula body);
  static Formula exists(Symbol variable, Formula body);

  // Left-nested folds; both require a non-empty list.
  static Formula conjunction(const std::vector<Formula>& parts);
  static Formula disjunction(const std::vector<Formula>& parts);

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  // Operand of a negation, body of a quantifier, left side of a binary node.
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& body() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  Symbol variable() const { return node_->variable; }

  bool is_quantifier() const { return kind() == Kind::forall || kind() == Kind::exists; }

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    Atom atom;
    Symbol variable;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Prover9-like rendering: "all x ((round(x) & kind(x)) -> rough(x))".
std::string to_string(const Formula& f);

std::vector<Symbol> free_variables(const Formula& f);

// Constant symbols occurring anywhere in f (including function arguments).
std::vector<Symbol> constants_of(const Formula& f);

}  // namespace nlrefute
