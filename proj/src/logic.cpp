#include "nlrefute/logic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

// Names v1..v64 are used by every canonicalization; interning them once keeps
// the hot path free of the interner lock.
Symbol canonical_variable_name(std::size_t index) {
  static const std::vector<Symbol> names = [] {
    std::vector<Symbol> out;
    for (std::size_t i = 1; i <= 64; ++i) out.emplace_back("v" + std::to_string(i));
    return out;
  }();
  if (index < names.size()) return names[index];
  return Symbol("v" + std::to_string(index + 1));
}

Term resolve_fully(const Term& t, const std::map<Symbol, Term>& bindings) {
  if (t.is_variable()) {
    auto it = bindings.find(t.name);
    if (it == bindings.end()) return t;
    return resolve_fully(it->second, bindings);
  }
  if (t.args.empty()) return t;
  Term out{t.kind, t.name, {}};
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(resolve_fully(a, bindings));
  return out;
}

const Term& walk(const Term& t, const std::map<Symbol, Term>& bindings) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    auto it = bindings.find(cur->name);
    if (it == bindings.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs_walked(Symbol v, const Term& t, const std::map<Symbol, Term>& bindings) {
  const Term& w = walk(t, bindings);
  if (w.is_variable()) return w.name == v;
  for (const auto& a : w.args)
    if (occurs_walked(v, a, bindings)) return true;
  return false;
}

bool unify_terms(const Term& a, const Term& b, std::map<Symbol, Term>& bindings) {
  const Term& x = walk(a, bindings);
  const Term& y = walk(b, bindings);
  if (x.is_variable() && y.is_variable() && x.name == y.name) return true;
  if (x.is_variable()) {
    if (occurs_walked(x.name, y, bindings)) return false;
    bindings.emplace(x.name, y);
    return true;
  }
  if (y.is_variable()) {
    if (occurs_walked(y.name, x, bindings)) return false;
    bindings.emplace(y.name, x);
    return true;
  }
  if (x.kind != y.kind || x.name != y.name || x.args.size() != y.args.size()) return false;
  // Copy children first: inserting into the map never invalidates references
  // into it, but x and y may alias bound values.
  const std::vector<Term> xs = x.args;
  const std::vector<Term> ys = y.args;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!unify_terms(xs[i], ys[i], bindings)) return false;
  return true;
}

bool match_terms(const Term& pattern, const Term& target, std::map<Symbol, Term>& bindings) {
  if (pattern.is_variable()) {
    auto it = bindings.find(pattern.name);
    if (it == bindings.end()) {
      bindings.emplace(pattern.name, target);
      return true;
    }
    return it->second == target;
  }
  if (pattern.kind != target.kind || pattern.name != target.name ||
      pattern.args.size() != target.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_terms(pattern.args[i], target.args[i], bindings)) return false;
  return true;
}

void collect_variables(const Term& t, std::vector<Symbol>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

std::vector<Literal> sorted_unique(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

Substitution renaming(const std::vector<Symbol>& from, const std::vector<std::size_t>& to_index) {
  Substitution s;
  for (std::size_t i = 0; i < from.size(); ++i)
    s.bind(from[i], Term{Term::Kind::variable, canonical_variable_name(to_index[i]), {}});
  return s;
}

std::vector<Literal> rename_by_first_occurrence(const std::vector<Literal>& lits) {
  Clause tmp;
  tmp.literals = lits;
  const auto vars = variables_of(tmp);
  std::vector<std::size_t> idx(vars.size());
  std::iota(idx.begin(), idx.end(), 0);
  return renaming(vars, idx).apply(tmp).literals;
}

}  // namespace

Term Term::variable(std::string_view name) { return Term{Kind::variable, Symbol(name), {}}; }

Term Term::constant(std::string_view name) { return Term{Kind::constant, Symbol(name), {}}; }

Term Term::function(std::string_view name, std::vector<Term> args) {
  if (args.empty()) return constant(name);
  return Term{Kind::function, Symbol(name), std::move(args)};
}

bool Term::is_ground() const {
  if (is_variable()) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind <=> b.kind;
  if (a.name != b.name) {
    if (a.kind == Term::Kind::variable && a.name.str().size() != b.name.str().size())
      return a.name.str().size() <=> b.name.str().size();
    return a.name <=> b.name;
  }
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return a.positive <=> b.positive;
  return a.atom <=> b.atom;
}

Atom make_atom(std::string_view predicate, std::vector<Term> args) {
  return Atom{Symbol(predicate), std::move(args)};
}

Literal make_literal(bool positive, std::string_view predicate, std::vector<Term> args) {
  return Literal{positive, make_atom(predicate, std::move(args))};
}

Clause make_clause(std::vector<Literal> literals, Origin origin) {
  return Clause{std::move(literals), origin, 0};
}

const Term* Substitution::lookup(Symbol variable) const {
  auto it = bindings_.find(variable);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_variable()) {
    const Term* bound = lookup(t.name);
    return bound ? *bound : t;
  }
  if (t.args.empty()) return t;
  Term out{t.kind, t.name, {}};
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(apply(a));
  return out;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(t));
  return out;
}

Literal Substitution::apply(const Literal& l) const { return Literal{l.positive, apply(l.atom)}; }

Clause Substitution::apply(const Clause& c) const {
  Clause out{{}, c.origin, c.id};
  out.literals.reserve(c.literals.size());
  for (const auto& l : c.literals) out.literals.push_back(apply(l));
  return out;
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += var.str() + " -> " + nlrefute::to_string(value);
  }
  return out + "}";
}

Substitution parse_substitution(std::string_view text) {
  auto fail = [&] { return Error("bad_clause_format", "bad substitution '" + std::string(text) + "'"); };
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw fail();
  Substitution s;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    const std::size_t end = body.find(", ");
    const std::string_view item = body.substr(0, end);
    const std::size_t arrow = item.find(" -> ");
    if (arrow == std::string_view::npos) throw fail();
    const std::string var(item.substr(0, arrow));
    if (!is_variable_name(var)) throw fail();
    const Clause holder = parse_clause("s(" + std::string(item.substr(arrow + 4)) + ")");
    if (holder.size() != 1 || holder.literals[0].atom.args.size() != 1) throw fail();
    s.bind(Symbol(var), holder.literals[0].atom.args[0]);
    body = end == std::string_view::npos ? std::string_view{} : body.substr(end + 2);
  }
  return s;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  std::map<Symbol, Term> bindings;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], bindings)) return std::nullopt;
  Substitution out;
  for (const auto& [var, value] : bindings) out.bind(var, resolve_fully(value, bindings));
  return out;
}

std::optional<Substitution> match(const Atom& pattern, const Atom& target) {
  if (pattern.predicate != target.predicate || pattern.args.size() != target.args.size())
    return std::nullopt;
  std::map<Symbol, Term> bindings;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_terms(pattern.args[i], target.args[i], bindings)) return std::nullopt;
  Substitution out;
  for (auto& [var, value] : bindings) out.bind(var, std::move(value));
  return out;
}

namespace {

bool subsume_from(const std::vector<Literal>& c, std::size_t i, const Clause& d,
                  std::map<Symbol, Term>& bindings) {
  if (i == c.size()) return true;
  const Literal& l = c[i];
  for (const auto& m : d.literals) {
    if (m.positive != l.positive || m.atom.predicate != l.atom.predicate ||
        m.atom.args.size() != l.atom.args.size())
      continue;
    auto trial = bindings;
    bool ok = true;
    for (std::size_t k = 0; ok && k < l.atom.args.size(); ++k)
      ok = match_terms(l.atom.args[k], m.atom.args[k], trial);
    if (ok && subsume_from(c, i + 1, d, trial)) return true;
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d) {
  if (c.size() > d.size()) return false;
  std::map<Symbol, Term> bindings;
  return subsume_from(c.literals, 0, d, bindings);
}

bool occurs_in(Symbol variable, const Term& t) {
  if (t.is_variable()) return t.name == variable;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term& a) { return occurs_in(variable, a); });
}

std::vector<Symbol> variables_of(const Clause& c) {
  std::vector<Symbol> out;
  for (const auto& l : c.literals)
    for (const auto& t : l.atom.args) collect_variables(t, out);
  return out;
}

Clause rename_variables(const Clause& c, std::string_view prefix) {
  const auto vars = variables_of(c);
  Substitution s;
  for (std::size_t i = 0; i < vars.size(); ++i)
    s.bind(vars[i], Term::variable(std::string(prefix) + std::to_string(i + 1)));
  return s.apply(c);
}

Clause canonicalize(const Clause& c) {
  const auto vars = variables_of(c);
  Clause out{{}, c.origin, c.id};
  if (vars.empty()) {
    out.literals = sorted_unique(c.literals);
    return out;
  }
  if (vars.size() <= 6) {
    // Minimum over all bijections onto v1..vk of the sorted literal list. The
    // minimum is already in first-occurrence order and is the same for every
    // variant of c.
    std::vector<std::size_t> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::vector<Literal>> best;
    do {
      auto lits = sorted_unique(renaming(vars, perm).apply(c).literals);
      if (!best || std::lexicographical_compare(lits.begin(), lits.end(), best->begin(),
                                                best->end()))
        best = std::move(lits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.literals = std::move(*best);
    return out;
  }
  // Heuristic fixpoint for wide clauses; never produced by the template grammar.
  auto lits = sorted_unique(rename_by_first_occurrence(c.literals));
  for (int round = 0; round < 8; ++round) {
    auto next = sorted_unique(rename_by_first_occurrence(lits));
    if (next == lits) break;
    lits = std::move(next);
  }
  out.literals = std::move(lits);
  return out;
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    for (std::size_t j = i + 1; j < c.literals.size(); ++j)
      if (c.literals[i].positive != c.literals[j].positive &&
          c.literals[i].atom == c.literals[j].atom)
        return true;
  return false;
}

bool variants(const Clause& a, const Clause& b) { return canonical_key(a) == canonical_key(b); }

std::string to_string(const Term& t) {
  if (t.args.empty()) return t.name.str();
  std::string out = t.name.str() + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.predicate.str();
  std::string out = a.predicate.str() + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.args[i]);
  }
  return out + ")";
}

std::string to_string(const Literal& l) { return (l.positive ? "" : "-") + to_string(l.atom); }

std::string to_string(const Clause& c) {
  if (c.literals.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c.literals[i]);
  }
  return out;
}

std::string canonical_key(const Clause& c) { return to_string(canonicalize(c)); }

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  if (name[0] == '_') return true;
  if (name[0] < 'u' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

namespace {

class ClauseReader {
 public:
  explicit ClauseReader(std::string_view text) : text_(text) {}

  Clause read() {
    skip_space();
    if (text_.substr(pos_, 2) == "[]") {
      pos_ += 2;
      expect_end();
      return Clause{};
    }
    Clause out;
    out.literals.push_back(read_literal());
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      out.literals.push_back(read_literal());
      skip_space();
    }
    expect_end();
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad_clause_format", what + " in '" + std::string(text_) + "'", pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
  }

  std::string read_identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<Term> read_arguments() {
    std::vector<Term> args;
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') return args;
    ++pos_;
    args.push_back(read_term());
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      args.push_back(read_term());
      skip_space();
    }
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return args;
  }

  Term read_term() {
    const std::string name = read_identifier();
    auto args = read_arguments();
    if (!args.empty()) return Term::function(name, std::move(args));
    if (is_variable_name(name)) return Term::variable(name);
    return Term::constant(name);
  }

  Literal read_literal() {
    skip_space();
    bool positive = true;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '~')) {
      positive = false;
      ++pos_;
    }
    const std::string predicate = read_identifier();
    return Literal{positive, Atom{Symbol(predicate), read_arguments()}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Clause parse_clause(std::string_view text) { return ClauseReader(text).read(); }

}  // namespace nlrefute
