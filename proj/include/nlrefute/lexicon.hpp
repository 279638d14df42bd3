#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlrefute {

// Vocabulary of the template language. Entities are proper names (unary
// terms), attributes are adjectives (unary predicates), relations are verbs
// (binary predicates). Relations are optional; the grammar only accepts
// relational facts when some are declared.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws Error("lexicon_error") on duplicate or malformed names.
  Lexicon(std::vector<std::string> entities, std::vector<std::string> attributes,
          std::vector<std::string> relations = {});

  // {Bob, Alan, Erin, Gary} x {kind, round, rough, tall, happy, big, blue, green}.
  static Lexicon standard();
  // Superset of standard() with more names and adjectives, sized for deep
  // rule chains.
  static Lexicon extended();

  // Line-oriented text with [entities], [attributes] and [relations]
  // sections; '#' starts a comment.
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);
  std::string to_text() const;

  const std::vector<std::string>& entities() const { return entities_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<std::string>& relations() const { return relations_; }

  // Lookups are case-insensitive and return the canonical spelling.
  std::optional<std::string> entity(std::string_view word) const;
  bool is_attribute(std::string_view word) const;
  bool is_relation(std::string_view word) const;

 private:
  std::vector<std::string> entities_;
  std::vector<std::string> attributes_;
  std::vector<std::string> relations_;
};

std::string lowercase(std::string_view s);

}  // namespace nlrefute
