#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "distwsd/triple_index.hpp"
#include "distwsd/word.hpp"

namespace distwsd {

enum class Measure { Lin, W2V, All };

std::string_view to_string(Measure m);             // "lin", "w2v", "all"
std::optional<Measure> parse_measure(std::string_view name);

// Dense word vectors keyed by "lemma_POS". All rows share one dimension and
// none is the zero vector.
class VectorSpace {
 public:
  VectorSpace() = default;
  explicit VectorSpace(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return keys_.size(); }
  bool contains(const WordKey& w) const { return ids_.contains(w); }

  // Empty span when absent.
  std::span<const double> vector(const WordKey& w) const;
  double norm(const WordKey& w) const;

  // Replaces an existing row. Throws DimensionMismatch / ZeroVector.
  void insert(const WordKey& w, std::span<const double> values);

  const std::vector<WordKey>& keys() const { return keys_; }

  std::size_t duplicate_rows() const { return duplicates_; }
  std::size_t skipped_rows() const { return skipped_; }

 private:
  friend VectorSpace load_vectors(std::istream& in);

  std::size_t dimension_ = 0;
  std::vector<WordKey> keys_;
  std::unordered_map<WordKey, std::size_t, WordKeyHash> ids_;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::size_t duplicates_ = 0;
  std::size_t skipped_ = 0;
};

// word2vec text format: "<vocab> <dim>" header then one row per token.
// Throws BadHeader, DimensionMismatch(line), ZeroVector(line).
VectorSpace load_vectors(std::istream& in);
VectorSpace load_vectors_file(const std::string& path);

struct LinScore {
  double value = 0.0;
  bool both_featureless = false;
};

// Lin's information-theoretic similarity over syntactic features. Words
// absent from the index have no features. Throws PosMismatch.
LinScore lin_score(const TripleIndex& ix, const WordKey& w1, const WordKey& w2);

// As lin_score, but throws BothFeatureless instead of flagging.
double lin_similarity(const TripleIndex& ix, const WordKey& w1, const WordKey& w2);

// Throws MissingVector.
double cosine_similarity(const VectorSpace& vs, const WordKey& w1, const WordKey& w2);

// Arithmetic mean of Lin and cosine; throws PosMismatch or constituent errors.
double combined_similarity(const TripleIndex& ix, const VectorSpace& vs, const WordKey& w1,
                           const WordKey& w2);

// Dispatch by measure. Resources may be null when the measure does not need
// them; a missing required resource throws MissingResource.
double similarity(Measure m, const TripleIndex* ix, const VectorSpace* vs, const WordKey& w1,
                  const WordKey& w2);

// Variant used when ranking neighbor candidates: nullopt for pairs that
// cannot be scored (POS mismatch under Lin/All, missing vectors), 0 for
// featureless Lin pairs.
std::optional<double> ranking_similarity(Measure m, const TripleIndex* ix, const VectorSpace* vs,
                                         const WordKey& w1, const WordKey& w2);

}  // namespace distwsd
