#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "distwsd/corpus.hpp"
#include "distwsd/distsim.hpp"
#include "distwsd/inventory.hpp"
#include "distwsd/lesk.hpp"
#include "distwsd/triple_index.hpp"

namespace distwsd {

struct NeighborStrategy {
  enum class Kind { DistributionalTopK, LinearRightToLeft };
  Kind kind = Kind::DistributionalTopK;
  Measure measure = Measure::Lin;  // DistributionalTopK only

  static NeighborStrategy distributional(Measure m) { return {Kind::DistributionalTopK, m}; }
  static NeighborStrategy linear() { return {Kind::LinearRightToLeft, Measure::Lin}; }

  bool operator==(const NeighborStrategy&) const = default;
};

struct EngineConfig {
  int k = 4;
  NeighborStrategy strategy;
  LeskAlgorithm lesk = LeskAlgorithm::ExtendedSimplified;
  // Skip candidate neighbors sharing the target's lemma, not just the
  // target token.
  bool exclude_same_lemma = false;
  // No neighbors at all: the connection-count heuristic alone.
  bool most_connected_only = false;

  void validate() const;  // throws std::invalid_argument
};

// Short name: LeskVar, LeskB-PPVL, LeskES-PPVD/Lin, MostConnected.
// Neighbor-based configs get "@k=N" when with_k is set.
std::string config_label(const EngineConfig& cfg, bool with_k = false);

struct Position {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;

  auto operator<=>(const Position&) const = default;
  bool operator==(const Position&) const = default;
};

struct Disambiguation {
  Position target;
  WordKey word;
  std::string chosen;
  double score = 0.0;
  std::vector<WordKey> neighbors_used;
  bool tie_broken = false;

  bool operator==(const Disambiguation&) const = default;
};

struct ScoredNeighbor {
  Token token;
  std::optional<double> similarity;  // unset for linear selection
};

struct NeighborSelection {
  std::vector<ScoredNeighbor> neighbors;
  bool fell_back = false;  // no scorable candidate; linear selection used

  std::vector<Token> tokens() const;
};

// Up to k content tokens other than the target, scanning from the sentence
// end towards its start.
std::vector<Token> select_neighbors_linear(const Sentence& s, const Token& target, int k,
                                           bool exclude_same_lemma = false);

// The k content tokens most similar to the target, descending, leftmost
// first on ties. Lin and All only consider the target's POS. Falls back to
// linear selection when nothing is scorable.
NeighborSelection select_neighbors_distributional(const Sentence& s, const Token& target, int k,
                                                  Measure measure, const TripleIndex* ix,
                                                  const VectorSpace* vs,
                                                  bool exclude_same_lemma = false);

struct Resources {
  const SenseInventory& inventory;
  const TripleIndex* index = nullptr;
  const VectorSpace* vectors = nullptr;
};

// Throws MissingResource when the strategy needs an absent index/vectors.
void check_resources(const EngineConfig& cfg, const Resources& res);

// argmax over Sens(target) of the summed best neighbor-sense scores; ties go
// to the most connected sense, then the lowest id. Throws NoSenses.
Disambiguation disambiguate_word(const Sentence& s, const Token& target,
                                 const std::vector<Token>& neighbors, const SenseInventory& inv,
                                 const EngineConfig& cfg);

struct Skip {
  Position position;
  WordKey word;
  std::string reason;
};

struct CorpusResult {
  std::vector<Disambiguation> records;  // corpus order
  std::vector<Skip> skips;
};

CorpusResult disambiguate_sentence(const Sentence& s, const Resources& res,
                                   const EngineConfig& cfg);

// Sequential reference.
CorpusResult disambiguate_corpus_serial(const std::vector<Sentence>& sentences,
                                        const Resources& res, const EngineConfig& cfg);

// Sentence-parallel (OpenMP). threads <= 0 uses the OpenMP default.
CorpusResult disambiguate_corpus(const std::vector<Sentence>& sentences, const Resources& res,
                                 const EngineConfig& cfg, int threads = 0);

using BigInt = boost::multiprecision::cpp_int;

// Product of sense counts over content tokens that have at least one sense.
BigInt combination_count(const Sentence& s, const SenseInventory& inv);

// Prediction TSV: doc_id, sentence_index, token_index, lemma_POS, sense id,
// score, tie_broken (0/1), comma-joined neighbors.
void write_predictions(std::ostream& out, const std::vector<Disambiguation>& records);
std::vector<Disambiguation> read_predictions(std::istream& in);  // throws MalformedRecord

std::string format_score(double score);

}  // namespace distwsd
