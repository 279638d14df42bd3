#pragma once

#include <random>
#include <string>
#include <vector>

#include "nlrefute/lexicon.hpp"
#include "nlrefute/nl.hpp"

namespace testing_oracle {

// Random sentence of any grammar shape over the first n_ent entities and
// n_attr attributes of lex.
inline std::string random_sentence(std::mt19937_64& rng, const nlrefute::Lexicon& lex,
                                   std::size_t n_ent, std::size_t n_attr) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto attr = [&] { return lex.attributes()[pick(n_attr)]; };
  auto ent = [&] { return lex.entities()[pick(n_ent)]; };
  auto coin = [&] { return pick(2) == 0; };
  std::vector<std::string> body;
  switch (pick(6)) {
    case 0: return nlrefute::realize_fact(ent(), attr(), coin());
    case 1:
      for (std::size_t i = 0, n = 1 + pick(3); i < n; ++i) body.push_back(attr());
      return nlrefute::realize_rule(body, attr(), coin(), coin());
    case 2: {
      std::vector<std::pair<std::string, bool>> lits;
      for (std::size_t i = 0, n = 1 + pick(3); i < n; ++i) lits.emplace_back(attr(), coin());
      return nlrefute::realize_universal(lits);
    }
    case 3: return nlrefute::realize_existential(attr(), coin());
    case 4: {
      std::string s = ent() + " is ";
      for (std::size_t i = 0, n = 1 + pick(3); i < n; ++i)
        s += (i ? " or " : "") + std::string(coin() ? "not " : "") + attr();
      return s + ".";
    }
    default: {
      std::string s = "If someone is ";
      for (std::size_t i = 0, n = 1 + pick(2); i < n; ++i) s += (i ? " and " : "") + attr();
      return s + " then they are " + (coin() ? "not " : "") + attr() + ".";
    }
  }
}

}  // namespace testing_oracle
