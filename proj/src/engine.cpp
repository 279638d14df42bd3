#include "nlrefute/engine.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

// Renames the variables of one resolution premise into a reserved namespace
// (_a1.. or _b1..) so the two premises are disjoint.
Clause rename_apart(const Clause& c, int side) {
  static const std::array<std::vector<Symbol>, 2> names = [] {
    std::array<std::vector<Symbol>, 2> out;
    for (int s = 0; s < 2; ++s)
      for (int i = 1; i <= 32; ++i)
        out[s].emplace_back(std::string(s == 0 ? "_a" : "_b") + std::to_string(i));
    return out;
  }();
  const auto vars = variables_of(c);
  if (vars.empty()) return c;
  Substitution s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Symbol name = i < names[side].size()
                      ? names[side][i]
                      : Symbol(std::string(side == 0 ? "_a" : "_b") + std::to_string(i + 1));
    s.bind(vars[i], Term{Term::Kind::variable, name, {}});
  }
  return s.apply(c);
}

std::string default_render(const Clause& c) { return to_string(c); }

// Set of (predicate, polarity) pairs, as a bitset over a per-call predicate table.
class Signature {
 public:
  void set(std::size_t bit) {
    if (bits_.size() <= bit / 64) bits_.resize(bit / 64 + 1, 0);
    bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  void merge(const Signature& o) {
    if (bits_.size() < o.bits_.size()) bits_.resize(o.bits_.size(), 0);
    for (std::size_t i = 0; i < o.bits_.size(); ++i) bits_[i] |= o.bits_[i];
  }
  bool intersects(const Signature& o) const {
    const std::size_t n = std::min(bits_.size(), o.bits_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (bits_[i] & o.bits_[i]) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> bits_;
};

class PredicateTable {
 public:
  explicit PredicateTable(const TheorySet& theory) {
    for (const auto& c : theory.clauses())
      for (const auto& l : c.literals) index_.emplace(l.atom.predicate, index_.size());
  }

  std::size_t bit(const Literal& l, bool flip) const {
    auto it = index_.find(l.atom.predicate);
    const std::size_t p = it == index_.end() ? index_.size() : it->second;
    return 2 * p + ((l.positive != flip) ? 1 : 0);
  }

  Signature literals(const Clause& c) const {
    Signature s;
    for (const auto& l : c.literals) s.set(bit(l, false));
    return s;
  }

  Signature complements(const Clause& c) const {
    Signature s;
    for (const auto& l : c.literals) s.set(bit(l, true));
    return s;
  }

 private:
  std::map<Symbol, std::size_t> index_;
};

ProofStep make_step(const Clause& a, std::uint64_t id_a, const Clause& b, std::uint64_t id_b,
                    const Clause& conclusion, std::uint64_t id_c, const Substitution& mgu,
                    const ClauseRenderer& render) {
  ProofStep step;
  step.premise_ids = {id_a, id_b};
  step.premises_fol = {to_string(a), to_string(b)};
  step.premises_nl = {render(a), render(b)};
  step.conclusion_id = id_c;
  step.conclusion_fol = to_string(conclusion);
  step.conclusion_nl = render(conclusion);
  step.mgu = mgu;
  return step;
}

// Depth-first search over linear derivations rooted in support clauses.
// Side clauses are input clauses or ancestors on the current chain. A center
// that repeats an ancestor (up to variants) is not expanded.
//
// Failed centers are tabled. An entry is recorded only when the failed
// subtree could not have interacted with the ancestors above it: no ancestor
// carries a literal complementary to any literal seen in the subtree, and no
// prune referred to such an ancestor. An entry is reused only under the same
// condition for the new chain, which makes the reuse path-independent.
bool saturates_without_refutation(const TheorySet& theory, const RefuteOptions& options);

class LinearSearch {
 public:
  LinearSearch(const TheorySet& theory, const RefuteOptions& options)
      : theory_(theory), options_(options), preds_(theory) {
    render_ = options.render ? options.render : ClauseRenderer(default_render);
    for (const auto& c : theory.clauses()) {
      input_sigs_.push_back(preds_.literals(c));
      present_.merge(input_sigs_.back());
    }
  }

  RefutationResult run() {
    RefutationResult result;
    auto roots = theory_.support_ids();
    std::stable_sort(roots.begin(), roots.end(), [&](std::uint64_t a, std::uint64_t b) {
      const auto& ca = theory_.at(a);
      const auto& cb = theory_.at(b);
      if (ca.size() != cb.size()) return ca.size() < cb.size();
      return a < b;
    });
    // Iterative deepening: the first refutation found is a shortest linear one.
    for (limit_ = 1; limit_ <= options_.budget; ++limit_) {
      cut_ = false;
      for (std::uint64_t root : roots) {
        if (search_from(root)) {
          result.refuted = true;
          result.halt_reason = HaltReason::empty_clause;
          result.proof = build_proof();
          result.steps_used = steps_;
          return result;
        }
        if (capped_ || certified_) break;
      }
      if (capped_ || certified_ || !cut_) break;
    }
    result.steps_used = steps_;
    if (certified_)
      result.halt_reason = HaltReason::saturated;
    else
      result.halt_reason =
          (cut_ || capped_) ? HaltReason::budget_exhausted : HaltReason::no_valid_pair;
    return result;
  }

 private:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  struct Candidate {
    Resolvent resolvent;
    std::uint64_t side_id;   // input id, or generation id of an ancestor
    std::size_t side_frame;  // chain index of an ancestor side, npos for inputs
    std::size_t side_size;
  };

  struct Frame {
    Clause center;
    std::string key;
    std::uint64_t gen_id = 0;  // input id for roots
    std::uint64_t side_id = 0;
    Substitution mgu;
    std::size_t depth = 0;
    std::vector<Candidate> candidates;
    std::size_t next = 0;
    Signature lits;           // literals of this center
    Signature seen;           // literals of every center visited below (inclusive)
    Signature chain_comp;     // complements of all centers from the root to here
    std::size_t min_ref = kUnbounded;  // lowest chain index a prune referred to
    bool cut = false;
  };

  struct MemoEntry {
    std::size_t remaining = 0;  // kUnbounded when the failure did not depend on depth
    Signature seen;
    bool cut = false;
  };

  // Distinct (predicate, polarity) groups. Each step removes at most one
  // group from the center, so this many steps remain at least.
  static std::size_t groups(const Clause& c) {
    std::set<std::pair<Symbol, bool>> g;
    for (const auto& l : c.literals) g.emplace(l.atom.predicate, l.positive);
    return g.size();
  }

  // A literal no input clause can complement is never resolved away.
  bool has_pure_literal(const Clause& c) const {
    for (const auto& l : c.literals) {
      Signature s;
      s.set(preds_.bit(l, true));
      if (!present_.intersects(s)) return true;
    }
    return false;
  }

  void expand(Frame& f) {
    const std::size_t self = chain_.size() - 1;
    const Signature wanted = preds_.complements(f.center);
    auto add_side = [&](const Clause& side, std::uint64_t side_id, std::size_t side_frame) {
      for (auto& r : resolvents(f.center, side, true))
        f.candidates.push_back(Candidate{std::move(r), side_id, side_frame, side.size()});
    };
    for (std::uint64_t id = 1; id <= theory_.size(); ++id)
      if (input_sigs_[id - 1].intersects(wanted)) add_side(theory_.at(id), id, std::string::npos);
    for (std::size_t i = 1; i < self; ++i)
      if (chain_[i].lits.intersects(wanted)) add_side(chain_[i].center, chain_[i].gen_id, i);

    std::stable_sort(f.candidates.begin(), f.candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       const bool ea = a.resolvent.clause.empty();
                       const bool eb = b.resolvent.clause.empty();
                       if (ea != eb) return ea;
                       const bool ua = a.side_size == 1;
                       const bool ub = b.side_size == 1;
                       if (ua != ub) return ua;
                       if (a.side_size != b.side_size) return a.side_size < b.side_size;
                       if (a.side_id != b.side_id) return a.side_id < b.side_id;
                       return a.resolvent.key < b.resolvent.key;
                     });
  }

  void push(Clause center, std::string key, std::uint64_t gen_id, std::uint64_t side_id,
            Substitution mgu, std::size_t depth) {
    Frame f;
    f.lits = preds_.literals(center);
    f.seen = f.lits;
    f.chain_comp = chain_.empty() ? Signature{} : chain_.back().chain_comp;
    f.chain_comp.merge(preds_.complements(center));
    f.center = std::move(center);
    f.key = std::move(key);
    f.gen_id = gen_id;
    f.side_id = side_id;
    f.mgu = std::move(mgu);
    f.depth = depth;
    chain_.push_back(std::move(f));
    expand(chain_.back());
  }

  void pop() {
    Frame f = std::move(chain_.back());
    chain_.pop_back();
    const std::size_t index = chain_.size();
    const bool isolated =
        f.min_ref >= index && (index == 0 || !chain_.back().chain_comp.intersects(f.seen));
    if (isolated) {
      const std::size_t remaining = f.cut ? limit_ - f.depth : kUnbounded;
      auto [it, inserted] = memo_.try_emplace(f.key, MemoEntry{remaining, f.seen, f.cut});
      if (!inserted && remaining > it->second.remaining)
        it->second = MemoEntry{remaining, f.seen, f.cut};
    }
    if (chain_.empty()) {
      cut_ = cut_ || f.cut;
      return;
    }
    Frame& parent = chain_.back();
    parent.seen.merge(f.seen);
    parent.cut = parent.cut || f.cut;
    parent.min_ref = std::min(parent.min_ref, f.min_ref);
  }

  bool search_from(std::uint64_t root) {
    chain_.clear();
    push(theory_.at(root), theory_.key(root), root, 0, Substitution{}, 0);
    while (!chain_.empty()) {
      Frame& top = chain_.back();
      if (top.next >= top.candidates.size()) {
        pop();
        continue;
      }
      Candidate& cand = top.candidates[top.next++];
      if (cand.side_frame != std::string::npos)
        top.min_ref = std::min(top.min_ref, cand.side_frame);
      if (top.depth + 1 > limit_) {
        top.cut = true;
        top.next = top.candidates.size();
        continue;
      }
      if (cand.resolvent.clause.empty()) {
        ++steps_;
        final_ = cand;
        return true;
      }
      const std::size_t remaining = limit_ - (top.depth + 1);
      if (has_pure_literal(cand.resolvent.clause)) continue;
      if (groups(cand.resolvent.clause) > remaining) {
        top.cut = true;
        continue;
      }
      bool skip = false;
      for (std::size_t i = 0; i < chain_.size(); ++i) {
        if (chain_[i].key == cand.resolvent.key) {
          top.min_ref = std::min(top.min_ref, i);
          skip = true;
          break;
        }
      }
      if (skip) continue;
      if (auto it = memo_.find(cand.resolvent.key); it != memo_.end()) {
        const MemoEntry& e = it->second;
        if (e.remaining >= remaining && !top.chain_comp.intersects(e.seen)) {
          top.seen.merge(e.seen);
          top.cut = top.cut || e.cut;
          continue;
        }
      }
      if (steps_ >= options_.max_inferences) {
        capped_ = true;
        return false;
      }
      if (!checked_ && options_.saturation_check_after > 0 &&
          steps_ >= options_.saturation_check_after) {
        checked_ = true;
        if (saturates_without_refutation(theory_, options_)) {
          certified_ = true;
          return false;
        }
      }
      ++steps_;
      const std::size_t depth = top.depth + 1;
      push(std::move(cand.resolvent.clause), std::move(cand.resolvent.key), ++next_gen_,
           cand.side_id, std::move(cand.resolvent.mgu), depth);
    }
    return false;
  }

  Proof build_proof() const {
    // Derived centers are renumbered after the inputs, in proof order.
    std::map<std::uint64_t, std::uint64_t> renumber;
    std::uint64_t next_id = theory_.size();
    for (std::size_t i = 1; i < chain_.size(); ++i) renumber[chain_[i].gen_id] = ++next_id;

    auto premise = [&](std::uint64_t gen_or_input, bool derived) {
      return derived ? renumber.at(gen_or_input) : gen_or_input;
    };
    auto side_clause = [&](std::uint64_t side_id, std::size_t side_frame) -> const Clause& {
      return side_frame == std::string::npos ? theory_.at(side_id) : chain_[side_frame].center;
    };

    Proof proof;
    // Side frames are recovered by generation id; inputs never collide since
    // generation ids start after the last input id.
    auto frame_of = [&](std::uint64_t id) -> std::size_t {
      for (std::size_t i = 1; i < chain_.size(); ++i)
        if (chain_[i].gen_id == id) return i;
      return std::string::npos;
    };
    for (std::size_t i = 1; i < chain_.size(); ++i) {
      const Frame& f = chain_[i];
      const Frame& parent = chain_[i - 1];
      const std::size_t side_frame = frame_of(f.side_id);
      proof.push_back(make_step(parent.center, premise(parent.gen_id, i - 1 > 0),
                                side_clause(f.side_id, side_frame),
                                premise(f.side_id, side_frame != std::string::npos), f.center,
                                renumber.at(f.gen_id), f.mgu, render_));
    }
    const Frame& last = chain_.back();
    const std::size_t side_frame = final_->side_frame;
    proof.push_back(make_step(last.center, premise(last.gen_id, chain_.size() > 1),
                              side_clause(final_->side_id, side_frame),
                              premise(final_->side_id, side_frame != std::string::npos),
                              final_->resolvent.clause, next_id + 1, final_->resolvent.mgu,
                              render_));
    return proof;
  }

  const TheorySet& theory_;
  const RefuteOptions& options_;
  PredicateTable preds_;
  ClauseRenderer render_;
  std::vector<Signature> input_sigs_;
  Signature present_;
  std::vector<Frame> chain_;
  std::unordered_map<std::string, MemoEntry> memo_;
  std::size_t limit_ = 0;
  std::optional<Candidate> final_;
  std::uint64_t next_gen_ = 0;
  std::size_t steps_ = 0;
  bool cut_ = false;
  bool capped_ = false;
  bool checked_ = false;
  bool certified_ = false;

 public:
  void start_generation_after(std::uint64_t id) { next_gen_ = id; }
};

// Given-clause saturation: clauses are taken in insertion order and resolved
// against every earlier clause (and themselves). Resolvents whose derivation
// would exceed the budget are discarded.
class FifoSearch {
 public:
  FifoSearch(const TheorySet& theory, const RefuteOptions& options)
      : work_(theory), options_(options) {
    render_ = options.render ? options.render : ClauseRenderer(default_render);
    inputs_ = theory.size();
    parents_.resize(work_.size());
    ancestry_.resize(work_.size());
    mgus_.resize(work_.size());
    for (std::uint64_t id = 1; id <= work_.size(); ++id) index_literals(id);
  }

  RefutationResult run() {
    RefutationResult result;
    for (std::uint64_t given = 1; given <= work_.size(); ++given) {
      if (retired_[given - 1]) continue;
      for (std::uint64_t partner : partners(given)) {
        if (retired_[given - 1]) break;
        if (retired_[partner - 1]) continue;
        auto rs = resolvents(work_.at(partner), work_.at(given), true);
        if (!rs.empty() || can_resolve(work_.at(partner), work_.at(given))) any_pair_ = true;
        for (auto& r : rs) {
          if (work_.find_key(r.key)) continue;
          std::vector<std::uint64_t> anc = merge_ancestry(partner, given);
          if (anc.size() + 1 > options_.budget) {
            cut_ = true;
            continue;
          }
          if (options_.forward_subsumption && forward_subsumed(r.clause, anc.size() + 1)) continue;
          if (steps_ >= options_.max_inferences) {
            result.steps_used = steps_;
            result.halt_reason = HaltReason::budget_exhausted;
            return result;
          }
          const bool is_empty = r.clause.empty();
          auto id = work_.add_derived(r.clause, partner, given);
          if (!id) continue;
          ++steps_;
          parents_.push_back(std::make_pair(partner, given));
          anc.push_back(*id);
          ancestry_.push_back(std::move(anc));
          mgus_.push_back(std::move(r.mgu));
          index_literals(*id);
          if (is_empty) {
            result.refuted = true;
            result.steps_used = steps_;
            result.halt_reason = HaltReason::empty_clause;
            result.proof = build_proof(*id);
            return result;
          }
          if (options_.forward_subsumption) retire_subsumed(*id);
        }
      }
    }
    result.steps_used = steps_;
    if (!any_pair_)
      result.halt_reason = HaltReason::no_valid_pair;
    else
      result.halt_reason = cut_ ? HaltReason::budget_exhausted : HaltReason::saturated;
    return result;
  }

 private:
  static std::uint64_t kind_mask(const Clause& c) {
    std::uint64_t m = 0;
    for (const auto& l : c.literals)
      m |= std::uint64_t{1} << ((l.atom.predicate.hash() * 2 + (l.positive ? 1 : 0)) % 64);
    return m;
  }

  void index_literals(std::uint64_t id) {
    const Clause& c = work_.at(id);
    for (const auto& l : c.literals)
      by_literal_[{l.atom.predicate, l.positive}].push_back(id);
    if (!c.empty()) by_first_[{c.literals[0].atom.predicate, c.literals[0].positive}].push_back(id);
    masks_.push_back(kind_mask(c));
    retired_.push_back(false);
  }

  bool forward_subsumed(const Clause& d, std::size_t d_ancestry) const {
    const std::uint64_t dm = kind_mask(d);
    std::set<std::pair<Symbol, bool>> kinds;
    for (const auto& l : d.literals) kinds.insert({l.atom.predicate, l.positive});
    for (const auto& k : kinds) {
      auto it = by_first_.find(k);
      if (it == by_first_.end()) continue;
      for (std::uint64_t id : it->second) {
        if (retired_[id - 1] || (masks_[id - 1] & ~dm) != 0) continue;
        if (ancestry_[id - 1].size() > d_ancestry) continue;
        if (subsumes(work_.at(id), d)) return true;
      }
    }
    return false;
  }

  void retire_subsumed(std::uint64_t id) {
    const Clause& c = work_.at(id);
    const std::uint64_t cm = masks_[id - 1];
    const std::size_t c_ancestry = ancestry_[id - 1].size();
    auto it = by_literal_.find({c.literals[0].atom.predicate, c.literals[0].positive});
    for (std::uint64_t other : it->second) {
      if (other == id || retired_[other - 1] || (cm & ~masks_[other - 1]) != 0) continue;
      if (ancestry_[other - 1].size() < c_ancestry) continue;
      if (subsumes(c, work_.at(other))) retired_[other - 1] = true;
    }
  }

  // Earlier clauses (and the clause itself) with a complementary literal, ascending.
  std::vector<std::uint64_t> partners(std::uint64_t given) const {
    std::set<std::uint64_t> out;
    for (const auto& l : work_.at(given).literals) {
      auto it = by_literal_.find({l.atom.predicate, !l.positive});
      if (it == by_literal_.end()) continue;
      for (std::uint64_t id : it->second) {
        if (id > given) break;
        out.insert(id);
      }
    }
    return {out.begin(), out.end()};
  }

  std::vector<std::uint64_t> merge_ancestry(std::uint64_t a, std::uint64_t b) const {
    const auto& x = ancestry_[a - 1];
    const auto& y = ancestry_[b - 1];
    std::vector<std::uint64_t> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  }

  Proof build_proof(std::uint64_t empty_id) const {
    const auto& steps = ancestry_[empty_id - 1];  // sorted derived ids
    std::map<std::uint64_t, std::uint64_t> renumber;
    std::uint64_t next_id = inputs_;
    for (std::uint64_t id : steps) renumber[id] = ++next_id;
    auto ref = [&](std::uint64_t id) { return id <= inputs_ ? id : renumber.at(id); };

    Proof proof;
    for (std::uint64_t id : steps) {
      const auto [pa, pb] = *parents_[id - 1];
      proof.push_back(make_step(work_.at(pa), ref(pa), work_.at(pb), ref(pb), work_.at(id),
                                renumber.at(id), mgus_[id - 1], render_));
    }
    return proof;
  }

  TheorySet work_;
  const RefuteOptions& options_;
  ClauseRenderer render_;
  std::uint64_t inputs_ = 0;
  std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> parents_;
  std::vector<std::vector<std::uint64_t>> ancestry_;
  std::vector<Substitution> mgus_;
  std::map<std::pair<Symbol, bool>, std::vector<std::uint64_t>> by_literal_;
  std::map<std::pair<Symbol, bool>, std::vector<std::uint64_t>> by_first_;
  std::vector<std::uint64_t> masks_;
  std::vector<bool> retired_;
  std::size_t steps_ = 0;
  bool any_pair_ = false;
  bool cut_ = false;
};

bool saturates_without_refutation(const TheorySet& theory, const RefuteOptions& options) {
  RefuteOptions o;
  o.strategy = Strategy::unrestricted;
  o.budget = options.budget;
  o.max_inferences = options.max_inferences;
  o.forward_subsumption = true;
  const RefutationResult r = FifoSearch(theory, o).run();
  return !r.refuted &&
         (r.halt_reason == HaltReason::saturated || r.halt_reason == HaltReason::no_valid_pair);
}

}  // namespace

std::string to_string(Strategy s) {
  return s == Strategy::sos_linear ? "sos-linear" : "unrestricted";
}

std::string to_string(HaltReason r) {
  switch (r) {
    case HaltReason::empty_clause:
      return "empty_clause";
    case HaltReason::saturated:
      return "saturated";
    case HaltReason::budget_exhausted:
      return "budget_exhausted";
    case HaltReason::no_valid_pair:
      return "no_valid_pair";
  }
  return {};
}

Strategy parse_strategy(std::string_view text) {
  if (text == "sos-linear" || text == "sos_linear") return Strategy::sos_linear;
  if (text == "unrestricted") return Strategy::unrestricted;
  throw Error("config_error", "unknown strategy '" + std::string(text) + "'");
}

std::optional<std::uint64_t> TheorySet::add(const Clause& c, bool support) {
  Clause canon = canonicalize(c);
  if (is_tautology(canon)) return std::nullopt;
  std::string k = to_string(canon);
  if (auto it = index_.find(k); it != index_.end()) {
    if (support) support_[it->second - 1] = true;
    return it->second;
  }
  for (const auto& l : canon.literals) {
    auto [it, inserted] = arity_.try_emplace(l.atom.predicate, l.atom.args.size());
    if (!inserted && it->second != l.atom.args.size())
      throw Error("arity_mismatch", "predicate " + l.atom.predicate.str() +
                                        " used with arity " +
                                        std::to_string(l.atom.args.size()) + " and " +
                                        std::to_string(it->second));
  }
  const std::uint64_t id = clauses_.size() + 1;
  canon.id = id;
  clauses_.push_back(std::move(canon));
  keys_.push_back(k);
  support_.push_back(support);
  index_.emplace(std::move(k), id);
  return id;
}

std::optional<std::uint64_t> TheorySet::add_derived(const Clause& c, std::uint64_t parent_a,
                                                    std::uint64_t parent_b) {
  Clause derived = c;
  derived.origin = Origin::resolvent;
  return add(derived, in_support(parent_a) || in_support(parent_b));
}

std::vector<std::uint64_t> TheorySet::support_ids() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i]) out.push_back(i + 1);
  return out;
}

std::optional<std::uint64_t> TheorySet::find(const Clause& c) const {
  return find_key(canonical_key(c));
}

std::optional<std::uint64_t> TheorySet::find_key(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool can_resolve(const Clause& c1, const Clause& c2) {
  const Clause a = rename_apart(c1, 0);
  const Clause b = rename_apart(c2, 1);
  for (const auto& la : a.literals)
    for (const auto& lb : b.literals)
      if (la.positive != lb.positive && la.atom.predicate == lb.atom.predicate &&
          unify(la.atom, lb.atom))
        return true;
  return false;
}

std::vector<Resolvent> resolvents(const Clause& c1, const Clause& c2, bool with_factors) {
  const Clause a = rename_apart(c1, 0);
  const Clause b = rename_apart(c2, 1);
  std::vector<Resolvent> out;
  std::unordered_set<std::string> seen;
  auto keep = [&](Clause c, const Substitution& mgu) {
    c.origin = Origin::resolvent;
    c.id = 0;
    std::string k = to_string(c);
    if (seen.insert(k).second) out.push_back(Resolvent{std::move(c), std::move(k), mgu});
  };
  for (std::size_t i = 0; i < a.literals.size(); ++i) {
    for (std::size_t j = 0; j < b.literals.size(); ++j) {
      const Literal& la = a.literals[i];
      const Literal& lb = b.literals[j];
      if (la.positive == lb.positive || la.atom.predicate != lb.atom.predicate) continue;
      auto mgu = unify(la.atom, lb.atom);
      if (!mgu) continue;
      Clause merged;
      for (std::size_t k = 0; k < a.literals.size(); ++k)
        if (k != i) merged.literals.push_back(mgu->apply(a.literals[k]));
      for (std::size_t k = 0; k < b.literals.size(); ++k)
        if (k != j) merged.literals.push_back(mgu->apply(b.literals[k]));
      Clause canon = canonicalize(merged);
      if (is_tautology(canon)) continue;
      if (with_factors)
        for (auto& f : factor(canon)) keep(std::move(f), *mgu);
      keep(std::move(canon), *mgu);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Resolvent& x, const Resolvent& y) { return x.key < y.key; });
  return out;
}

std::vector<Clause> resolve(const Clause& c1, const Clause& c2) {
  std::vector<Clause> out;
  for (auto& r : resolvents(c1, c2, false)) out.push_back(std::move(r.clause));
  return out;
}

std::vector<Clause> factor(const Clause& c) {
  std::vector<Clause> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& li = c.literals[i];
      const Literal& lj = c.literals[j];
      if (li.positive != lj.positive || li.atom.predicate != lj.atom.predicate) continue;
      auto mgu = unify(li.atom, lj.atom);
      if (!mgu) continue;
      Clause f = canonicalize(mgu->apply(c));
      if (is_tautology(f)) continue;
      if (seen.insert(to_string(f)).second) out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Clause& x, const Clause& y) { return to_string(x) < to_string(y); });
  return out;
}

RefutationResult refute(const TheorySet& theory, const RefuteOptions& options) {
  if (options.strategy == Strategy::unrestricted) return FifoSearch(theory, options).run();
  LinearSearch search(theory, options);
  search.start_generation_after(theory.size());
  return search.run();
}

std::string format_step(std::size_t k, const ProofStep& step) {
  return "STEP " + std::to_string(k) + ": [" + std::to_string(step.premise_ids[0]) + "] " +
         step.premises_fol[0] + " | [" + std::to_string(step.premise_ids[1]) + "] " +
         step.premises_fol[1] + " => [" + std::to_string(step.conclusion_id) + "] " +
         step.conclusion_fol + " ;; NL: " + step.premises_nl[0] + " + " + step.premises_nl[1] +
         " => " + step.conclusion_nl;
}

std::string format_proof(const Proof& proof) {
  std::string out;
  for (std::size_t k = 0; k < proof.size(); ++k) out += format_step(k + 1, proof[k]) + "\n";
  return out;
}

}  // namespace nlrefute
