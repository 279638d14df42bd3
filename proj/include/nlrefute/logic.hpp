#pragma once

// First-order terms, literals and clauses, plus substitution, unification and
// canonical forms. Everything here is an immutable value once built.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlrefute/symbol.hpp"

namespace nlrefute {

struct Term {
  enum class Kind : std::uint8_t { variable, constant, function };

  Kind kind = Kind::constant;
  Symbol name;
  std::vector<Term> args;

  static Term variable(std::string_view name);
  static Term constant(std::string_view name);
  static Term function(std::string_view name, std::vector<Term> args);

  bool is_variable() const { return kind == Kind::variable; }
  bool is_ground() const;

  bool operator==(const Term&) const = default;
};

// Variables sort before constants, constants before function terms. Variable
// names compare by length first so that v2 < v10.
std::strong_ordering operator<=>(const Term& a, const Term& b);

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  bool operator==(const Atom&) const = default;
};

std::strong_ordering operator<=>(const Atom& a, const Atom& b);

struct Literal {
  bool positive = true;
  Atom atom;

  Literal complement() const { return Literal{!positive, atom}; }

  bool operator==(const Literal&) const = default;
};

// Negative literals sort first, then by predicate name, then arguments.
std::strong_ordering operator<=>(const Literal& a, const Literal& b);

enum class Origin : std::uint8_t { input, resolvent, negated_hypothesis };

// Disjunction of literals; variables are implicitly universally quantified.
// The id is assigned by the owning theory set (0 = unassigned).
struct Clause {
  std::vector<Literal> literals;
  Origin origin = Origin::input;
  std::uint64_t id = 0;

  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  bool is_unit() const { return literals.size() == 1; }
};

Atom make_atom(std::string_view predicate, std::vector<Term> args);
Literal make_literal(bool positive, std::string_view predicate, std::vector<Term> args);
Clause make_clause(std::vector<Literal> literals, Origin origin = Origin::input);

class Substitution {
 public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<Symbol, Term>& bindings() const { return bindings_; }

  const Term* lookup(Symbol variable) const;
  void bind(Symbol variable, Term value) { bindings_[variable] = std::move(value); }

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  Literal apply(const Literal& l) const;
  // Replaces bound variables; does not deduplicate literals.
  Clause apply(const Clause& c) const;

  std::string to_string() const;

  bool operator==(const Substitution&) const = default;

 private:
  std::map<Symbol, Term> bindings_;
};

// Most general unifier of two atoms whose variables are already disjoint.
// Returns nullopt on predicate/arity mismatch, clash or occurs-check failure.
// The result is idempotent.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

// One-way matching: a substitution s with s(pattern) == target, binding only
// variables of pattern.
std::optional<Substitution> match(const Atom& pattern, const Atom& target);

bool occurs_in(Symbol variable, const Term& t);

// Some s maps every literal of c onto a literal of d. Variables of d are
// treated as constants. Clauses are assumed deduplicated, so c may not be
// longer than d.
bool subsumes(const Clause& c, const Clause& d);

// Distinct variables in order of first occurrence.
std::vector<Symbol> variables_of(const Clause& c);

// Renames every variable to prefix1, prefix2, ... in first-occurrence order.
Clause rename_variables(const Clause& c, std::string_view prefix);

// Literals deduplicated and sorted, variables renamed v1, v2, ... in order of
// first occurrence. Two clauses are variants iff their canonical forms are
// identical (exact up to six distinct variables per clause).
Clause canonicalize(const Clause& c);

bool is_tautology(const Clause& c);

bool variants(const Clause& a, const Clause& b);

// Serialization: "-kind(v1) | -round(v1) | rough(v1)", "[]" for the empty clause.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Clause& c);

// Serialization of the canonical form; the identity key for variant checks.
std::string canonical_key(const Clause& c);

// Inverse of to_string(Clause). Identifiers of the form [u-z][0-9]* or
// starting with '_' are variables; every other identifier is a constant or a
// function symbol. Throws Error("bad_clause_format").
Clause parse_clause(std::string_view text);

bool is_variable_name(std::string_view name);

// Inverse of Substitution::to_string. Throws Error("bad_clause_format").
Substitution parse_substitution(std::string_view text);

}  // namespace nlrefute
