#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "distwsd/corpus.hpp"
#include "distwsd/word.hpp"

namespace distwsd {

enum class FeatureRole : std::uint8_t { AsDependent = 0, AsGovernor = 1 };

// Per-word projection of a dependency triple (g, r, d): d holds
// (r, AsDependent, g) and g holds (r, AsGovernor, d).
struct SyntacticFeature {
  std::string relation;
  FeatureRole role = FeatureRole::AsDependent;
  WordKey partner;

  std::string render() const;  // "advmod(move)" or "advmod^-1(on)"

  auto operator<=>(const SyntacticFeature&) const = default;
  bool operator==(const SyntacticFeature&) const = default;
};

struct IndexOptions {
  std::set<std::string> relation_stoplist;
  bool dependent_only = false;
};

class TripleIndex;

// Accumulates distinct (word, feature) pairs. Builders over disjoint parts
// of a corpus merge into the same result regardless of partitioning.
class IndexBuilder {
 public:
  explicit IndexBuilder(IndexOptions options = {});

  void add(const Sentence& sentence);
  void add(const DepTriple& triple);
  void merge(IndexBuilder&& other);

  TripleIndex finish() &&;

 private:
  IndexOptions options_;
  std::map<WordKey, std::set<SyntacticFeature>> features_;
  std::uint64_t triple_total_ = 0;
  std::uint64_t checksum_ = 0;
};

class TripleIndex {
 public:
  // Feature ids and information weights for one indexed word.
  struct Profile {
    std::vector<std::uint32_t> feature_ids;  // ascending
    std::vector<double> weights;             // -ln P(f | pos), aligned with ids
    double total = 0.0;
  };

  TripleIndex() = default;

  std::vector<SyntacticFeature> features_of(const WordKey& w) const;
  const Profile* profile(const WordKey& w) const;

  std::uint64_t carriers(const PosTag& pos, const SyntacticFeature& f) const;
  std::uint64_t pos_vocab_size(const PosTag& pos) const;
  std::uint64_t triple_total() const { return triple_total_; }
  std::uint64_t corpus_checksum() const { return checksum_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<WordKey>& words() const { return words_; }
  const std::map<PosTag, std::uint64_t>& pos_vocab() const { return pos_vocab_; }

  // carriers / pos_vocab_size; throws UnknownFeature when no word of `pos`
  // carries `f`.
  double feature_probability(const SyntacticFeature& f, const PosTag& pos) const;

  // -sum log_base P(f); 0 for an empty set.
  double information(std::span<const SyntacticFeature> fs, const PosTag& pos,
                     double log_base = std::numbers::e) const;

  void save(std::ostream& out) const;
  static TripleIndex load(std::istream& in);  // throws CorruptIndex

 private:
  friend class IndexBuilder;

  std::uint32_t find_feature(const SyntacticFeature& f) const;  // UINT32_MAX if absent
  void rebuild_derived();

  std::vector<WordKey> words_;                                  // ascending
  std::vector<SyntacticFeature> features_;                      // ascending
  std::vector<std::vector<std::uint32_t>> word_features_;       // per word, ascending ids
  std::map<PosTag, std::uint64_t> pos_vocab_;
  std::map<std::pair<PosTag, std::uint32_t>, std::uint64_t> carriers_;
  std::uint64_t triple_total_ = 0;
  std::uint64_t checksum_ = 0;

  std::unordered_map<WordKey, std::uint32_t, WordKeyHash> word_ids_;
  std::vector<Profile> profiles_;
};

inline constexpr std::uint32_t kIndexFormatVersion = 1;

TripleIndex build_index_serial(const std::vector<Sentence>& sentences,
                               const IndexOptions& options = {});

// Partitions sentences across OpenMP threads and merges partial builders.
// threads <= 0 uses the OpenMP default.
TripleIndex build_index(const std::vector<Sentence>& sentences, const IndexOptions& options = {},
                        int threads = 0);

void save_index_file(const TripleIndex& ix, const std::string& path);
TripleIndex load_index_file(const std::string& path);

}  // namespace distwsd
