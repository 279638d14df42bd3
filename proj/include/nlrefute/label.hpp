#pragma once

#include <string>
#include <string_view>

namespace nlrefute {

enum class Label { True, False, Unknown };

std::string to_string(Label l);
// Throws Error("bad_label").
Label parse_label(std::string_view text);

}  // namespace nlrefute
