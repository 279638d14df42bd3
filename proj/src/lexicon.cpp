#include "nlrefute/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "nlrefute/error.hpp"

namespace nlrefute {
namespace {

// Words the grammar itself uses; none of them may be a content word.
const std::set<std::string, std::less<>> kReserved = {
    "is", "not", "or", "and", "if", "then", "they", "are", "people", "someone",
    "everyone", "person"};

bool word_chars(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalpha(static_cast<unsigned char>(ch)) || ch == '-';
  });
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

Lexicon::Lexicon(std::vector<std::string> entities, std::vector<std::string> attributes,
                 std::vector<std::string> relations)
    : entities_(std::move(entities)),
      attributes_(std::move(attributes)),
      relations_(std::move(relations)) {
  std::set<std::string> seen;
  auto check = [&](const std::vector<std::string>& words, const char* what) {
    for (const auto& w : words) {
      if (!word_chars(w)) throw Error("lexicon_error", std::string("bad ") + what + " '" + w + "'");
      const std::string key = lowercase(w);
      if (kReserved.count(key))
        throw Error("lexicon_error", "'" + w + "' is a reserved word");
      if (!seen.insert(key).second) throw Error("lexicon_error", "duplicate word '" + w + "'");
    }
  };
  check(entities_, "entity");
  check(attributes_, "attribute");
  check(relations_, "relation");
  for (auto& e : entities_) {
    e = lowercase(e);
    e[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(e[0])));
  }
  for (auto& a : attributes_) a = lowercase(a);
  for (auto& r : relations_) r = lowercase(r);
}

Lexicon Lexicon::standard() {
  return Lexicon({"Bob", "Alan", "Erin", "Gary"},
                 {"kind", "round", "rough", "tall", "happy", "big", "blue", "green"});
}

Lexicon Lexicon::extended() {
  return Lexicon({"Bob", "Alan", "Erin", "Gary", "Fiona", "Dave", "Charlie", "Harry", "Anne"},
                 {"kind", "round", "rough", "tall", "happy", "big", "blue", "green", "cold",
                  "young", "nice", "quiet", "red", "white", "furry", "smart", "small", "strong",
                  "sad", "old"});
}

Lexicon Lexicon::parse(std::string_view text) {
  std::vector<std::string> lists[3];
  int section = -1;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "[entities]") {
      section = 0;
    } else if (line == "[attributes]") {
      section = 1;
    } else if (line == "[relations]") {
      section = 2;
    } else if (line.front() == '[') {
      throw Error("lexicon_error", "unknown section " + line + " on line " + std::to_string(line_no));
    } else if (section < 0) {
      throw Error("lexicon_error", "word outside a section on line " + std::to_string(line_no));
    } else {
      std::istringstream words(line);
      std::string w;
      while (words >> w) lists[section].push_back(w);
    }
  }
  return Lexicon(std::move(lists[0]), std::move(lists[1]), std::move(lists[2]));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Lexicon::to_text() const {
  std::string out;
  auto section = [&](const char* name, const std::vector<std::string>& words) {
    out += name;
    out += '\n';
    for (const auto& w : words) out += w + '\n';
  };
  section("[entities]", entities_);
  section("[attributes]", attributes_);
  if (!relations_.empty()) section("[relations]", relations_);
  return out;
}

std::optional<std::string> Lexicon::entity(std::string_view word) const {
  const std::string key = lowercase(word);
  for (const auto& e : entities_)
    if (lowercase(e) == key) return e;
  return std::nullopt;
}

bool Lexicon::is_attribute(std::string_view word) const {
  return std::find(attributes_.begin(), attributes_.end(), lowercase(word)) != attributes_.end();
}

bool Lexicon::is_relation(std::string_view word) const {
  return std::find(relations_.begin(), relations_.end(), lowercase(word)) != relations_.end();
}

}  // namespace nlrefute
