#include "distwsd/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <exception>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

bool is_candidate(const Token& t, const Token& target, bool exclude_same_lemma) {
  if (!t.key.pos.is_content() || t.index == target.index) return false;
  return !(exclude_same_lemma && t.key.lemma == target.key.lemma);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

void EngineConfig::validate() const {
  if (k < 1 && !most_connected_only && lesk != LeskAlgorithm::Variant) {
    throw std::invalid_argument("k must be at least 1, got " + std::to_string(k));
  }
}

std::string config_label(const EngineConfig& cfg, bool with_k) {
  if (cfg.most_connected_only) return "MostConnected";
  if (cfg.lesk == LeskAlgorithm::Variant) return "LeskVar";
  std::string label = cfg.lesk == LeskAlgorithm::Basic ? "LeskB" : "LeskES";
  if (cfg.strategy.kind == NeighborStrategy::Kind::LinearRightToLeft) {
    label += "-PPVL";
  } else {
    label += "-PPVD/";
    switch (cfg.strategy.measure) {
      case Measure::Lin: label += "Lin"; break;
      case Measure::W2V: label += "W2V"; break;
      case Measure::All: label += "ALL"; break;
    }
  }
  if (with_k) label += "@k=" + std::to_string(cfg.k);
  return label;
}

std::vector<Token> NeighborSelection::tokens() const {
  std::vector<Token> out;
  out.reserve(neighbors.size());
  for (const ScoredNeighbor& n : neighbors) out.push_back(n.token);
  return out;
}

std::vector<Token> select_neighbors_linear(const Sentence& s, const Token& target, int k,
                                           bool exclude_same_lemma) {
  std::vector<Token> out;
  if (k <= 0) return out;
  for (auto it = s.tokens.rbegin(); it != s.tokens.rend(); ++it) {
    if (!is_candidate(*it, target, exclude_same_lemma)) continue;
    out.push_back(*it);
    if (out.size() == static_cast<std::size_t>(k)) break;
  }
  return out;
}

NeighborSelection select_neighbors_distributional(const Sentence& s, const Token& target, int k,
                                                  Measure measure, const TripleIndex* ix,
                                                  const VectorSpace* vs,
                                                  bool exclude_same_lemma) {
  NeighborSelection result;
  if (k <= 0) return result;

  std::vector<ScoredNeighbor> scored;
  for (const Token& t : s.tokens) {
    if (!is_candidate(t, target, exclude_same_lemma)) continue;
    if (auto sim = ranking_similarity(measure, ix, vs, target.key, t.key)) {
      scored.push_back({t, *sim});
    }
  }

  if (scored.empty()) {
    result.fell_back = true;
    for (Token& t : select_neighbors_linear(s, target, k, exclude_same_lemma)) {
      result.neighbors.push_back({std::move(t), std::nullopt});
    }
    return result;
  }

  std::stable_sort(scored.begin(), scored.end(), [](const ScoredNeighbor& a, const ScoredNeighbor& b) {
    return *a.similarity > *b.similarity;
  });
  if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
  result.neighbors = std::move(scored);
  return result;
}

void check_resources(const EngineConfig& cfg, const Resources& res) {
  if (cfg.most_connected_only || cfg.lesk == LeskAlgorithm::Variant) return;
  if (cfg.strategy.kind != NeighborStrategy::Kind::DistributionalTopK) return;
  const Measure m = cfg.strategy.measure;
  if (m != Measure::W2V && res.index == nullptr) {
    throw Error(ErrorKind::MissingResource,
                std::string("measure '") + std::string(to_string(m)) + "' needs a triple index");
  }
  if (m != Measure::Lin && res.vectors == nullptr) {
    throw Error(ErrorKind::MissingResource,
                std::string("measure '") + std::string(to_string(m)) + "' needs word vectors");
  }
}

Disambiguation disambiguate_word(const Sentence& s, const Token& target,
                                 const std::vector<Token>& neighbors, const SenseInventory& inv,
                                 const EngineConfig& cfg) {
  const std::vector<const Sense*> candidates = inv.senses_of(target.key);
  if (candidates.empty()) throw Error(ErrorKind::NoSenses, target.key.render());

  Disambiguation d;
  d.target = {s.doc_id, s.sentence_index, target.index};
  d.word = target.key;

  std::vector<double> scores(candidates.size(), 0.0);
  if (cfg.most_connected_only) {
    // all zero: the tie-break decides
  } else if (cfg.lesk == LeskAlgorithm::Variant) {
    const ContextBag ctx = make_context(s, target, inv.options().pos_strict_overlap);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      scores[i] = static_cast<double>(lesk_variant(inv, ctx, *candidates[i]));
    }
  } else {
    const ContextBag no_context;
    for (const Token& n : neighbors) {
      d.neighbors_used.push_back(n.key);
      const std::vector<const Sense*> neighbor_senses = inv.senses_of(n.key);
      if (neighbor_senses.empty()) continue;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::size_t best = 0;
        for (const Sense* other : neighbor_senses) {
          best = std::max(best, sense_pair_score(cfg.lesk, inv, no_context, *candidates[i], *other));
        }
        scores[i] += static_cast<double>(best);
      }
    }
  }

  const double top = *std::max_element(scores.begin(), scores.end());
  std::size_t chosen = candidates.size();
  std::size_t tied = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (scores[i] != top) continue;
    ++tied;
    if (chosen == candidates.size()) {
      chosen = i;
      continue;
    }
    const auto ci = inv.connection_count(*candidates[i]);
    const auto cc = inv.connection_count(*candidates[chosen]);
    if (ci > cc || (ci == cc && candidates[i]->id < candidates[chosen]->id)) chosen = i;
  }

  d.chosen = candidates[chosen]->id;
  d.score = top;
  d.tie_broken = tied > 1;
  return d;
}

CorpusResult disambiguate_sentence(const Sentence& s, const Resources& res,
                                   const EngineConfig& cfg) {
  CorpusResult out;
  const bool needs_neighbors = !cfg.most_connected_only && cfg.lesk != LeskAlgorithm::Variant;
  for (const Token& t : s.tokens) {
    if (!t.key.pos.is_content()) continue;
    const Position pos{s.doc_id, s.sentence_index, t.index};
    const std::size_t n = res.inventory.sense_count(t.key);
    if (n == 0) {
      out.skips.push_back({pos, t.key, "unknown"});
      continue;
    }
    if (n == 1) {
      out.skips.push_back({pos, t.key, "monosemous"});
      continue;
    }
    std::vector<Token> neighbors;
    if (needs_neighbors) {
      if (cfg.strategy.kind == NeighborStrategy::Kind::LinearRightToLeft) {
        neighbors = select_neighbors_linear(s, t, cfg.k, cfg.exclude_same_lemma);
      } else {
        neighbors = select_neighbors_distributional(s, t, cfg.k, cfg.strategy.measure, res.index,
                                                    res.vectors, cfg.exclude_same_lemma)
                        .tokens();
      }
    }
    out.records.push_back(disambiguate_word(s, t, neighbors, res.inventory, cfg));
  }
  return out;
}

namespace {

CorpusResult concatenate(std::vector<CorpusResult>& parts) {
  CorpusResult out;
  for (CorpusResult& p : parts) {
    std::move(p.records.begin(), p.records.end(), std::back_inserter(out.records));
    std::move(p.skips.begin(), p.skips.end(), std::back_inserter(out.skips));
  }
  return out;
}

}  // namespace

CorpusResult disambiguate_corpus_serial(const std::vector<Sentence>& sentences,
                                        const Resources& res, const EngineConfig& cfg) {
  cfg.validate();
  check_resources(cfg, res);
  CorpusResult out;
  for (const Sentence& s : sentences) {
    CorpusResult part = disambiguate_sentence(s, res, cfg);
    std::move(part.records.begin(), part.records.end(), std::back_inserter(out.records));
    std::move(part.skips.begin(), part.skips.end(), std::back_inserter(out.skips));
  }
  return out;
}

CorpusResult disambiguate_corpus(const std::vector<Sentence>& sentences, const Resources& res,
                                 const EngineConfig& cfg, int threads) {
  cfg.validate();
  check_resources(cfg, res);
  const int workers = threads > 0 ? threads : omp_get_max_threads();
  std::vector<CorpusResult> parts(sentences.size());
  std::vector<std::exception_ptr> errors(sentences.size());
  const auto n = static_cast<std::int64_t>(sentences.size());

#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto slot = static_cast<std::size_t>(i);
    try {
      parts[slot] = disambiguate_sentence(sentences[slot], res, cfg);
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return concatenate(parts);
}

BigInt combination_count(const Sentence& s, const SenseInventory& inv) {
  BigInt product = 1;
  for (const Token& t : s.tokens) {
    if (!t.key.pos.is_content()) continue;
    const std::size_t n = inv.sense_count(t.key);
    if (n >= 1) product *= n;
  }
  return product;
}

std::string format_score(double score) { return fmt::format("{}", score); }

void write_predictions(std::ostream& out, const std::vector<Disambiguation>& records) {
  for (const Disambiguation& d : records) {
    out << d.target.doc_id << '\t' << d.target.sentence_index << '\t' << d.target.token_index
        << '\t' << d.word.render() << '\t' << d.chosen << '\t' << format_score(d.score) << '\t'
        << (d.tie_broken ? 1 : 0) << '\t';
    for (std::size_t i = 0; i < d.neighbors_used.size(); ++i) {
      if (i) out << ',';
      out << d.neighbors_used[i].render();
    }
    out << '\n';
  }
}

std::vector<Disambiguation> read_predictions(std::istream& in) {
  std::vector<Disambiguation> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(line_no) + ": " + why);
  };
  auto parse_index = [&](std::string_view text, std::size_t& value) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) fail("bad index '" + std::string(text) + "'");
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 8) fail("expected 8 columns, found " + std::to_string(f.size()));
    Disambiguation d;
    d.target.doc_id = std::string(f[0]);
    parse_index(f[1], d.target.sentence_index);
    parse_index(f[2], d.target.token_index);
    auto word = parse_word_key(f[3]);
    if (!word) fail("bad lemma_POS '" + std::string(f[3]) + "'");
    d.word = std::move(*word);
    if (f[4].empty()) fail("empty sense id");
    d.chosen = std::string(f[4]);
    {
      const auto* end = f[5].data() + f[5].size();
      auto [ptr, ec] = std::from_chars(f[5].data(), end, d.score);
      if (ec != std::errc() || ptr != end) fail("bad score '" + std::string(f[5]) + "'");
    }
    if (f[6] != "0" && f[6] != "1") fail("tie_broken must be 0 or 1");
    d.tie_broken = f[6] == "1";
    std::string_view rest = f[7];
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      auto key = parse_word_key(item);
      if (!key) fail("bad neighbor '" + std::string(item) + "'");
      d.neighbors_used.push_back(std::move(*key));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace distwsd
