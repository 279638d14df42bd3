#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace nlrefute {

// Interned string. Two symbols are equal iff they refer to the same interned
// text; ordering follows the text so canonical forms do not depend on
// interning order.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view text);

  const std::string& str() const { return *text_; }
  bool empty() const { return text_->empty(); }

  bool operator==(const Symbol& other) const { return text_ == other.text_; }
  std::strong_ordering operator<=>(const Symbol& other) const {
    if (text_ == other.text_) return std::strong_ordering::equal;
    return *text_ <=> *other.text_;
  }

  std::size_t hash() const { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_;
};

}  // namespace nlrefute

template <>
struct std::hash<nlrefute::Symbol> {
  std::size_t operator()(const nlrefute::Symbol& s) const noexcept { return s.hash(); }
};
