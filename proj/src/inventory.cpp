#include "distwsd/inventory.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

using nlohmann::json;

std::string record_error(std::size_t line_no, const std::string& reason) {
  return "line " + std::to_string(line_no) + ": " + reason;
}

bool is_punctuation(std::string_view item) {
  return std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::ispunct(c); });
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Sense parse_record(const json& j, std::size_t line_no) {
  auto fail = [&](const std::string& why) -> Sense {
    throw Error(ErrorKind::MalformedRecord, record_error(line_no, why));
  };
  if (!j.is_object()) return fail("record is not an object");

  Sense s;
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    return fail("missing string field 'id'");
  }
  s.id = j["id"].get<std::string>();

  if (!j.contains("lemmas") || !j["lemmas"].is_array() || j["lemmas"].empty()) {
    return fail("'lemmas' must be a non-empty array");
  }
  for (const json& item : j["lemmas"]) {
    if (!item.is_string()) return fail("lemma entries must be strings");
    auto key = parse_word_key(item.get<std::string>());
    if (!key) return fail("lemma '" + item.get<std::string>() + "' is not lemma_POS");
    if (std::find(s.lemma_keys.begin(), s.lemma_keys.end(), *key) == s.lemma_keys.end()) {
      s.lemma_keys.push_back(std::move(*key));
    }
  }

  if (j.contains("gloss")) {
    if (!j["gloss"].is_string()) return fail("'gloss' must be a string");
    s.gloss = j["gloss"].get<std::string>();
  }
  if (j.contains("synonyms")) {
    if (!j["synonyms"].is_array()) return fail("'synonyms' must be an array");
    for (const json& item : j["synonyms"]) {
      if (!item.is_string()) return fail("synonyms must be strings");
      s.synonyms.push_back(item.get<std::string>());
    }
  }
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) return fail("'relations' must be an array");
    for (const json& rel : j["relations"]) {
      if (!rel.is_object() || !rel.contains("type") || !rel["type"].is_string() ||
          !rel.contains("target") || !rel["target"].is_string()) {
        return fail("relations need string 'type' and 'target'");
      }
      s.relations.push_back(
          {RelationType::parse(rel["type"].get<std::string>()), rel["target"].get<std::string>()});
    }
  }
  if (j.contains("connections")) {
    if (!j["connections"].is_number_unsigned() && !(j["connections"].is_number_integer() &&
                                                    j["connections"].get<std::int64_t>() >= 0)) {
      return fail("'connections' must be a non-negative integer");
    }
    s.connections = j["connections"].get<std::uint64_t>();
  }
  if (j.contains("is_concept")) {
    if (!j["is_concept"].is_boolean()) return fail("'is_concept' must be a boolean");
    s.is_concept = j["is_concept"].get<bool>();
  }
  return s;
}

}  // namespace

RelationType RelationType::parse(std::string_view text) {
  const std::string lower = to_lower(text);
  if (lower == "hypernym") return {RelationKind::Hypernym, {}};
  if (lower == "hyponym") return {RelationKind::Hyponym, {}};
  if (lower == "meronym") return {RelationKind::Meronym, {}};
  if (lower == "holonym") return {RelationKind::Holonym, {}};
  return {RelationKind::Other, std::string(text)};
}

std::string RelationType::name() const {
  switch (kind) {
    case RelationKind::Hypernym: return "hypernym";
    case RelationKind::Hyponym: return "hyponym";
    case RelationKind::Meronym: return "meronym";
    case RelationKind::Holonym: return "holonym";
    case RelationKind::Other: return label;
  }
  return label;
}

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = {
        "a",       "about",  "above", "after",   "again", "against", "all",     "am",
        "an",      "and",    "any",   "are",     "as",    "at",      "be",      "because",
        "been",    "before", "being", "below",   "between", "both",  "but",     "by",
        "can",     "could",  "did",   "do",      "does",  "doing",   "down",    "during",
        "each",    "either", "etc",   "few",     "for",   "from",    "further", "had",
        "has",     "have",   "having", "he",     "her",   "here",    "hers",    "herself",
        "him",     "himself", "his",  "how",     "i",     "if",      "in",      "into",
        "is",      "it",     "its",   "itself",  "just",  "may",     "me",      "might",
        "more",    "most",   "must",  "my",      "myself", "no",     "nor",     "not",
        "now",     "of",     "off",   "on",      "once",  "one",     "only",    "or",
        "other",   "ought",  "our",   "ours",    "ourselves", "out", "over",    "own",
        "same",    "shall",  "she",   "should",  "so",    "some",    "someone", "something",
        "such",    "than",   "that",  "the",     "their", "theirs",  "them",    "themselves",
        "then",    "there",  "these", "they",    "this",  "those",   "through", "to",
        "too",     "under",  "until", "up",      "upon",  "us",      "very",    "was",
        "we",      "were",   "what",  "when",    "where", "which",   "while",   "who",
        "whom",    "whose",  "why",   "will",    "with",  "within",  "without", "would",
        "you",     "your",   "yours", "yourself", "yourselves"};
    std::sort(w.begin(), w.end());
    return w;
  }();
  return words;
}

std::vector<std::string> compute_gloss_bag(const Sense& s, bool pos_strict) {
  std::vector<std::string> bag;
  const auto& stop = default_stopwords();
  std::size_t i = 0;
  const std::string& g = s.gloss;
  while (i < g.size()) {
    while (i < g.size() && std::isspace(static_cast<unsigned char>(g[i]))) ++i;
    const std::size_t start = i;
    while (i < g.size() && !std::isspace(static_cast<unsigned char>(g[i]))) ++i;
    if (i == start) break;
    const std::string_view item(g.data() + start, i - start);
    if (auto key = parse_word_key(item)) {
      if (key->pos.is_content()) bag.push_back(pos_strict ? key->render() : key->lemma);
      continue;
    }
    const std::string lemma = to_lower(item);
    if (is_punctuation(lemma) || std::binary_search(stop.begin(), stop.end(), lemma)) continue;
    bag.push_back(lemma);
  }

  if (bag.empty() && std::all_of(g.begin(), g.end(),
                                 [](unsigned char c) { return std::isspace(c); })) {
    const std::string suffix = s.lemma_keys.empty() ? "" : "_" + s.lemma_keys.front().pos.code();
    for (const std::string& syn : s.synonyms) {
      if (syn.empty()) continue;
      bag.push_back(pos_strict ? to_lower(syn) + suffix : to_lower(syn));
    }
  }
  sort_unique(bag);
  return bag;
}

SenseInventory SenseInventory::load(std::istream& in, InventoryOptions options) {
  SenseInventory inv;
  inv.options_ = options;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::MalformedRecord, record_error(line_no, e.what()));
    }
    Sense s = parse_record(j, line_no);
    if (inv.ids_.contains(s.id)) throw Error(ErrorKind::DuplicateSenseId, s.id);
    const std::size_t slot = inv.senses_.size();
    inv.ids_.emplace(s.id, slot);
    for (const WordKey& w : s.lemma_keys) inv.by_word_[w].push_back(slot);
    inv.senses_.push_back(std::move(s));
  }

  inv.bags_.reserve(inv.senses_.size());
  for (const Sense& s : inv.senses_) {
    inv.bags_.push_back(compute_gloss_bag(s, options.pos_strict_overlap));
    for (const SenseRelation& r : s.relations) {
      if (!inv.ids_.contains(r.target)) inv.dangling_.emplace_back(s.id, r.target);
    }
  }
  inv.expanded_.reserve(inv.senses_.size());
  for (std::size_t i = 0; i < inv.senses_.size(); ++i) {
    std::vector<std::string> bag = inv.bags_[i];
    for (const Sense* t : inv.related_senses(inv.senses_[i])) {
      const auto& other = inv.bags_[inv.slot(*t)];
      bag.insert(bag.end(), other.begin(), other.end());
    }
    sort_unique(bag);
    inv.expanded_.push_back(std::move(bag));
  }
  return inv;
}

SenseInventory SenseInventory::load_file(const std::string& path, InventoryOptions options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open inventory '" + path + "'");
  return load(in, options);
}

void SenseInventory::serialize(std::ostream& out) const {
  for (const Sense& s : senses_) {
    json j;
    j["id"] = s.id;
    json lemmas = json::array();
    for (const WordKey& w : s.lemma_keys) lemmas.push_back(w.render());
    j["lemmas"] = std::move(lemmas);
    j["gloss"] = s.gloss;
    j["synonyms"] = s.synonyms;
    json rels = json::array();
    for (const SenseRelation& r : s.relations) {
      rels.push_back({{"type", r.type.name()}, {"target", r.target}});
    }
    j["relations"] = std::move(rels);
    if (s.connections) j["connections"] = *s.connections;
    j["is_concept"] = s.is_concept;
    out << j.dump() << '\n';
  }
}

const Sense* SenseInventory::find(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  return it == ids_.end() ? nullptr : &senses_[it->second];
}

std::size_t SenseInventory::slot(const Sense& s) const {
  const auto* base = senses_.data();
  if (&s >= base && &s < base + senses_.size()) return static_cast<std::size_t>(&s - base);
  auto it = ids_.find(s.id);
  if (it == ids_.end()) throw std::logic_error("sense '" + s.id + "' not in inventory");
  return it->second;
}

std::vector<const Sense*> SenseInventory::senses_of(const WordKey& w) const {
  std::vector<const Sense*> out;
  auto it = by_word_.find(w);
  if (it == by_word_.end()) return out;
  for (std::size_t slot : it->second) {
    const Sense& s = senses_[slot];
    if (s.is_concept || options_.include_entities) out.push_back(&s);
  }
  return out;
}

std::size_t SenseInventory::sense_count(const WordKey& w) const {
  auto it = by_word_.find(w);
  if (it == by_word_.end()) return 0;
  if (options_.include_entities) return it->second.size();
  return static_cast<std::size_t>(std::count_if(it->second.begin(), it->second.end(),
                                                [&](std::size_t i) { return senses_[i].is_concept; }));
}

const std::vector<std::string>& SenseInventory::gloss_bag(const Sense& s) const {
  return bags_[slot(s)];
}

const std::vector<std::string>& SenseInventory::expanded_bag(const Sense& s) const {
  return expanded_[slot(s)];
}

std::vector<const Sense*> SenseInventory::related_senses(const Sense& s) const {
  std::vector<const Sense*> out;
  for (const SenseRelation& r : s.relations) {
    const Sense* t = find(r.target);
    if (t && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

std::uint64_t SenseInventory::connection_count(const Sense& s) const {
  return s.connections ? *s.connections : s.relations.size();
}

}  // namespace distwsd
