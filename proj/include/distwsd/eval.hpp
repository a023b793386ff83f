#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "distwsd/engine.hpp"

namespace distwsd {

struct GoldRecord {
  Position position;
  std::vector<std::string> sense_ids;  // at least one
  std::optional<WordKey> word;         // optional fifth column
};

// TSV: doc_id, sentence_index, token_index, '|'-joined sense ids, and an
// optional lemma_POS. Throws MalformedRecord, DuplicatePosition.
std::vector<GoldRecord> load_gold(std::istream& in);
std::vector<GoldRecord> load_gold_file(const std::string& path);

struct Tally {
  std::uint64_t attempted = 0;
  std::uint64_t correct = 0;

  std::optional<double> accuracy() const {
    if (attempted == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(attempted);
  }
  bool operator==(const Tally&) const = default;
};

struct EvalReport {
  std::map<PosClass, Tally> per_pos;  // Noun, Verb, Adj, Adv always present
  Tally overall;
  std::uint64_t skipped_monosemous = 0;
  std::uint64_t skipped_unknown = 0;

  EvalReport();
  bool operator==(const EvalReport&) const = default;
};

// A prediction is correct when its sense is among the gold senses. Gold
// tokens with a single sense are skipped as monosemous; tokens with no
// senses, no resolvable word, or a non-content POS are skipped as unknown.
// The gold token's word comes from the fifth gold column, the prediction at
// that position, the single word shared by all gold senses, or the corpus,
// in that order. Throws UnmatchedPrediction.
EvalReport score(const std::vector<Disambiguation>& predictions,
                 const std::vector<GoldRecord>& gold, const SenseInventory& inv,
                 const std::vector<Sentence>* corpus = nullptr);

using LabeledReports = std::vector<std::pair<std::string, EvalReport>>;

// Rows are POS classes plus an overall row; one column per label; cells are
// percentages with one decimal, or an em dash for empty buckets.
std::string render_report(const LabeledReports& reports);

nlohmann::json report_to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::json& j);
nlohmann::json reports_to_json(const LabeledReports& reports);
LabeledReports reports_from_json(const nlohmann::json& j);

struct SweepSpec {
  std::vector<int> k_values{4};
  std::vector<NeighborStrategy> strategies{NeighborStrategy::distributional(Measure::Lin)};
  std::vector<LeskAlgorithm> lesk_algorithms{LeskAlgorithm::ExtendedSimplified};
  bool include_most_connected = false;
  int threads = 0;
};

struct SweepEntry {
  std::string label;
  EngineConfig config;
  EvalReport report;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::vector<std::pair<std::string, std::string>> errors;  // (label, message)

  LabeledReports reports() const;
};

// Neighbor-free configurations (LeskVar, MostConnected) appear once.
std::vector<EngineConfig> sweep_configs(const SweepSpec& spec);

// One disambiguate_corpus + score per configuration; failures are recorded
// per configuration and the rest continue.
SweepResult sweep(const std::vector<Sentence>& corpus, const std::vector<GoldRecord>& gold,
                  const Resources& res, const SweepSpec& spec);

// label,strategy,measure,lesk,k,pos,attempted,correct,accuracy
void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace distwsd
