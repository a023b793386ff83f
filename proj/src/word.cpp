#include "distwsd/word.hpp"

#include <algorithm>
#include <cctype>

namespace distwsd {

std::string PosTag::code() const {
  switch (cls) {
    case PosClass::Noun: return "N";
    case PosClass::Verb: return "V";
    case PosClass::Adj: return "Adj";
    case PosClass::Adv: return "Adv";
    case PosClass::Other: return label;
  }
  return label;
}

std::string_view class_name(PosClass cls) {
  switch (cls) {
    case PosClass::Noun: return "Noun";
    case PosClass::Verb: return "Verb";
    case PosClass::Adj: return "Adj";
    case PosClass::Adv: return "Adv";
    case PosClass::Other: return "Other";
  }
  return "Other";
}

std::optional<PosClass> class_from_name(std::string_view name) {
  for (PosClass c : {PosClass::Noun, PosClass::Verb, PosClass::Adj, PosClass::Adv,
                     PosClass::Other}) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

PosMapper::PosMapper()
    : PosMapper({{"N", PosClass::Noun},
                 {"V", PosClass::Verb},
                 {"J", PosClass::Adj},
                 {"Adj", PosClass::Adj},
                 {"R", PosClass::Adv},
                 {"Adv", PosClass::Adv}}) {}

PosMapper::PosMapper(std::vector<std::pair<std::string, PosClass>> prefixes)
    : prefixes_(std::move(prefixes)) {
  std::stable_sort(prefixes_.begin(), prefixes_.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
}

PosTag PosMapper::map(std::string_view tag) const {
  for (const auto& [prefix, cls] : prefixes_) {
    if (tag.substr(0, prefix.size()) == prefix && !prefix.empty()) {
      return PosTag{cls, {}};
    }
  }
  return PosTag::other(std::string(tag));
}

const PosMapper& PosMapper::default_mapper() {
  static const PosMapper mapper;
  return mapper;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

WordKey::WordKey(std::string_view lemma_text, PosTag tag)
    : lemma(to_lower(lemma_text)), pos(std::move(tag)) {}

std::optional<WordKey> parse_word_key(std::string_view text, const PosMapper& mapper) {
  const auto cut = text.rfind('_');
  if (cut == std::string_view::npos || cut == 0 || cut + 1 == text.size()) {
    return std::nullopt;
  }
  return WordKey(text.substr(0, cut), mapper.map(text.substr(cut + 1)));
}

}  // namespace distwsd
