#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distwsd {

enum class PosClass { Noun, Verb, Adj, Adv, Other };

// Coarse part of speech. Only Other carries a label, kept verbatim from the
// source tag.
struct PosTag {
  PosClass cls = PosClass::Other;
  std::string label;

  static PosTag noun() { return {PosClass::Noun, {}}; }
  static PosTag verb() { return {PosClass::Verb, {}}; }
  static PosTag adj() { return {PosClass::Adj, {}}; }
  static PosTag adv() { return {PosClass::Adv, {}}; }
  static PosTag other(std::string label) { return {PosClass::Other, std::move(label)}; }

  bool is_content() const { return cls != PosClass::Other; }

  // N, V, Adj, Adv or the Other label.
  std::string code() const;

  auto operator<=>(const PosTag&) const = default;
  bool operator==(const PosTag&) const = default;
};

inline constexpr PosClass kContentClasses[] = {PosClass::Noun, PosClass::Verb,
                                               PosClass::Adj, PosClass::Adv};

std::string_view class_name(PosClass cls);  // "Noun", "Verb", ...
std::optional<PosClass> class_from_name(std::string_view name);

// Maps fine-grained corpus tags onto the four content classes by prefix.
// The longest matching prefix wins; unmatched tags become Other(tag).
class PosMapper {
 public:
  PosMapper();  // N*, V*, J*/Adj*, R*/Adv*
  explicit PosMapper(std::vector<std::pair<std::string, PosClass>> prefixes);

  PosTag map(std::string_view tag) const;

  static const PosMapper& default_mapper();

 private:
  std::vector<std::pair<std::string, PosClass>> prefixes_;
};

std::string to_lower(std::string_view s);

struct WordKey {
  std::string lemma;
  PosTag pos;

  WordKey() = default;
  // Lower-cases the lemma.
  WordKey(std::string_view lemma, PosTag pos);

  std::string render() const { return lemma + "_" + pos.code(); }

  auto operator<=>(const WordKey&) const = default;
  bool operator==(const WordKey&) const = default;
};

// Parses "lemma_POS", splitting on the last underscore. Returns nullopt when
// there is no underscore or either side is empty.
std::optional<WordKey> parse_word_key(std::string_view text,
                                      const PosMapper& mapper = PosMapper::default_mapper());

struct WordKeyHash {
  std::size_t operator()(const WordKey& w) const noexcept {
    std::size_t h = std::hash<std::string>{}(w.lemma);
    h ^= std::hash<int>{}(static_cast<int>(w.pos.cls)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(w.pos.label) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace distwsd
