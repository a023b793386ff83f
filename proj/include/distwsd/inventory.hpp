#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "distwsd/word.hpp"

namespace distwsd {

enum class RelationKind { Hypernym, Hyponym, Meronym, Holonym, Other };

struct RelationType {
  RelationKind kind = RelationKind::Other;
  std::string label;  // Other only

  static RelationType parse(std::string_view text);
  std::string name() const;

  bool operator==(const RelationType&) const = default;
};

struct SenseRelation {
  RelationType type;
  std::string target;

  bool operator==(const SenseRelation&) const = default;
};

struct Sense {
  std::string id;
  std::vector<WordKey> lemma_keys;  // non-empty, record order, no duplicates
  std::string gloss;                // space-separated items, "lemma_POS" or bare
  std::vector<std::string> synonyms;
  std::vector<SenseRelation> relations;
  std::optional<std::uint64_t> connections;
  bool is_concept = true;
};

struct InventoryOptions {
  // Keep named entities (is_concept=false) among the candidates of senses_of.
  bool include_entities = false;
  // Gloss overlap keys are "lemma_POS" instead of bare lemmas.
  bool pos_strict_overlap = false;
};

// Gloss items without an inline POS are content unless they appear here.
const std::vector<std::string>& default_stopwords();

// Sorted, duplicate-free content lemmas of a gloss; the synonyms substitute
// for an empty gloss.
std::vector<std::string> compute_gloss_bag(const Sense& s, bool pos_strict = false);

// A sense inventory loaded from JSON lines. Immutable after
// load; every query is a const read.
class SenseInventory {
 public:
  SenseInventory() = default;

  // Throws MalformedRecord(line) and DuplicateSenseId(id). Dangling relation
  // targets are collected in dangling().
  static SenseInventory load(std::istream& in, InventoryOptions options = {});
  static SenseInventory load_file(const std::string& path, InventoryOptions options = {});

  void serialize(std::ostream& out) const;

  std::size_t size() const { return senses_.size(); }
  const std::vector<Sense>& senses() const { return senses_; }
  const Sense* find(std::string_view id) const;
  const InventoryOptions& options() const { return options_; }

  // Senses listing w, in file order.
  std::vector<const Sense*> senses_of(const WordKey& w) const;
  std::size_t sense_count(const WordKey& w) const;
  bool is_polysemous(const WordKey& w) const { return sense_count(w) >= 2; }

  const std::vector<std::string>& gloss_bag(const Sense& s) const;
  // Gloss bag united with the bags of directly related senses.
  const std::vector<std::string>& expanded_bag(const Sense& s) const;

  // Resolvable relation targets, in relation order, without repeats.
  std::vector<const Sense*> related_senses(const Sense& s) const;
  std::uint64_t connection_count(const Sense& s) const;

  const std::vector<std::pair<std::string, std::string>>& dangling() const { return dangling_; }
  const std::map<WordKey, std::vector<std::size_t>>& by_word() const { return by_word_; }

 private:
  std::size_t slot(const Sense& s) const;

  InventoryOptions options_;
  std::vector<Sense> senses_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::map<WordKey, std::vector<std::size_t>> by_word_;
  std::vector<std::vector<std::string>> bags_;
  std::vector<std::vector<std::string>> expanded_;
  std::vector<std::pair<std::string, std::string>> dangling_;  // (sense id, missing target)
};

}  // namespace distwsd
