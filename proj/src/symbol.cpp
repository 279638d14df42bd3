#include "nlrefute/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace nlrefute {
namespace {

const std::string* intern(std::string_view text) {
  static std::mutex mutex;
  static std::unordered_set<std::string> table;
  std::lock_guard<std::mutex> lock(mutex);
  return &*table.emplace(text).first;
}

}  // namespace

Symbol::Symbol() : text_(intern("")) {}

Symbol::Symbol(std::string_view text) : text_(intern(text)) {}

}  // namespace nlrefute
