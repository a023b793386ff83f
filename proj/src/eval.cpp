#include "distwsd/eval.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

std::string position_text(const Position& p) {
  return p.doc_id + " " + std::to_string(p.sentence_index) + " " + std::to_string(p.token_index);
}

std::optional<WordKey> shared_word(const GoldRecord& g, const SenseInventory& inv) {
  std::vector<WordKey> common;
  bool first = true;
  for (const std::string& id : g.sense_ids) {
    const Sense* s = inv.find(id);
    if (!s) return std::nullopt;
    std::vector<WordKey> keys = s->lemma_keys;
    std::sort(keys.begin(), keys.end());
    if (first) {
      common = std::move(keys);
      first = false;
    } else {
      std::vector<WordKey> kept;
      std::set_intersection(common.begin(), common.end(), keys.begin(), keys.end(),
                            std::back_inserter(kept));
      common = std::move(kept);
    }
  }
  if (common.size() != 1) return std::nullopt;
  return common.front();
}

json tally_json(const Tally& t) {
  json j{{"attempted", t.attempted}, {"correct", t.correct}};
  if (auto a = t.accuracy()) {
    j["accuracy"] = *a;
  } else {
    j["accuracy"] = nullptr;
  }
  return j;
}

Tally tally_from(const json& j) {
  return {j.at("attempted").get<std::uint64_t>(), j.at("correct").get<std::uint64_t>()};
}

std::string cell(const Tally& t) {
  if (auto a = t.accuracy()) return fmt::format("{:.1f}%", *a * 100.0);
  return "—";
}

// Display width for padding; the em dash is one column but three bytes.
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

}  // namespace

std::vector<GoldRecord> load_gold(std::istream& in) {
  std::vector<GoldRecord> out;
  std::set<Position> seen;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(line_no) + ": " + why);
  };
  auto parse_index = [&](std::string_view text, std::size_t& value) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
      fail("bad index '" + std::string(text) + "'");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line, '\t');
    if (f.size() != 4 && f.size() != 5) fail("expected 4 or 5 columns, found " + std::to_string(f.size()));
    GoldRecord g;
    if (f[0].empty()) fail("empty doc id");
    g.position.doc_id = std::string(f[0]);
    parse_index(f[1], g.position.sentence_index);
    parse_index(f[2], g.position.token_index);
    for (std::string_view id : split(f[3], '|')) {
      if (id.empty()) fail("empty sense id");
      g.sense_ids.emplace_back(id);
    }
    if (f.size() == 5) {
      auto key = parse_word_key(f[4]);
      if (!key) fail("bad lemma_POS '" + std::string(f[4]) + "'");
      g.word = std::move(*key);
    }
    if (!seen.insert(g.position).second) {
      throw Error(ErrorKind::DuplicatePosition, position_text(g.position));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GoldRecord> load_gold_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open gold file '" + path + "'");
  return load_gold(in);
}

EvalReport::EvalReport() {
  for (PosClass c : kContentClasses) per_pos[c] = {};
}

EvalReport score(const std::vector<Disambiguation>& predictions,
                 const std::vector<GoldRecord>& gold, const SenseInventory& inv,
                 const std::vector<Sentence>* corpus) {
  std::map<Position, const GoldRecord*> gold_at;
  for (const GoldRecord& g : gold) gold_at.emplace(g.position, &g);

  std::map<Position, const Disambiguation*> predicted_at;
  for (const Disambiguation& d : predictions) {
    if (!gold_at.contains(d.target)) {
      throw Error(ErrorKind::UnmatchedPrediction, position_text(d.target));
    }
    predicted_at[d.target] = &d;
  }

  std::map<Position, WordKey> corpus_words;
  if (corpus) {
    for (const Sentence& s : *corpus) {
      for (const Token& t : s.tokens) {
        corpus_words.emplace(Position{s.doc_id, s.sentence_index, t.index}, t.key);
      }
    }
  }

  EvalReport report;
  for (const GoldRecord& g : gold) {
    const auto pred = predicted_at.find(g.position);
    std::optional<WordKey> word = g.word;
    if (!word && pred != predicted_at.end()) word = pred->second->word;
    if (!word) word = shared_word(g, inv);
    if (!word) {
      if (auto it = corpus_words.find(g.position); it != corpus_words.end()) word = it->second;
    }
    if (!word || !word->pos.is_content()) {
      ++report.skipped_unknown;
      continue;
    }
    const std::size_t n = inv.sense_count(*word);
    if (n == 0) {
      ++report.skipped_unknown;
      continue;
    }
    if (n == 1) {
      ++report.skipped_monosemous;
      continue;
    }
    Tally& bucket = report.per_pos[word->pos.cls];
    ++bucket.attempted;
    ++report.overall.attempted;
    if (pred != predicted_at.end() &&
        std::find(g.sense_ids.begin(), g.sense_ids.end(), pred->second->chosen) !=
            g.sense_ids.end()) {
      ++bucket.correct;
      ++report.overall.correct;
    }
  }
  return report;
}

std::string render_report(const LabeledReports& reports) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"POS"};
  for (const auto& [label, r] : reports) header.push_back(label);
  rows.push_back(header);
  for (PosClass c : kContentClasses) {
    std::vector<std::string> row{std::string(class_name(c))};
    for (const auto& [label, r] : reports) row.push_back(cell(r.per_pos.at(c)));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> overall{"Overall"};
  for (const auto& [label, r] : reports) overall.push_back(cell(r.overall));
  rows.push_back(std::move(overall));

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], display_width(row[i]));
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += i + 1 == row.size() ? row[i] : pad(row[i], widths[i]);
    }
    out += '\n';
  }
  return out;
}

json report_to_json(const EvalReport& r) {
  json per_pos = json::object();
  for (const auto& [cls, t] : r.per_pos) per_pos[std::string(class_name(cls))] = tally_json(t);
  return {{"per_pos", per_pos},
          {"overall", tally_json(r.overall)},
          {"skipped_monosemous", r.skipped_monosemous},
          {"skipped_unknown", r.skipped_unknown}};
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  for (const auto& [name, t] : j.at("per_pos").items()) {
    auto cls = class_from_name(name);
    if (!cls) throw Error(ErrorKind::MalformedRecord, "unknown POS bucket '" + name + "'");
    r.per_pos[*cls] = tally_from(t);
  }
  r.overall = tally_from(j.at("overall"));
  r.skipped_monosemous = j.at("skipped_monosemous").get<std::uint64_t>();
  r.skipped_unknown = j.at("skipped_unknown").get<std::uint64_t>();
  return r;
}

json reports_to_json(const LabeledReports& reports) {
  json arr = json::array();
  for (const auto& [label, r] : reports) arr.push_back({{"label", label}, {"report", report_to_json(r)}});
  return arr;
}

LabeledReports reports_from_json(const json& j) {
  LabeledReports out;
  for (const json& item : j) {
    out.emplace_back(item.at("label").get<std::string>(), report_from_json(item.at("report")));
  }
  return out;
}

LabeledReports SweepResult::reports() const {
  LabeledReports out;
  for (const SweepEntry& e : entries) out.emplace_back(e.label, e.report);
  return out;
}

std::vector<EngineConfig> sweep_configs(const SweepSpec& spec) {
  std::vector<EngineConfig> configs;
  std::set<std::string> labels;
  auto add = [&](const EngineConfig& cfg) {
    if (labels.insert(config_label(cfg, true)).second) configs.push_back(cfg);
  };
  if (spec.include_most_connected) {
    EngineConfig cfg;
    cfg.most_connected_only = true;
    add(cfg);
  }
  for (LeskAlgorithm alg : spec.lesk_algorithms) {
    for (const NeighborStrategy& strategy : spec.strategies) {
      for (int k : spec.k_values) {
        EngineConfig cfg;
        cfg.k = k;
        cfg.strategy = strategy;
        cfg.lesk = alg;
        add(cfg);
      }
    }
  }
  return configs;
}

SweepResult sweep(const std::vector<Sentence>& corpus, const std::vector<GoldRecord>& gold,
                  const Resources& res, const SweepSpec& spec) {
  const std::vector<EngineConfig> configs = sweep_configs(spec);
  std::vector<std::optional<EvalReport>> reports(configs.size());
  std::vector<std::string> failures(configs.size());
  const int workers = spec.threads > 0 ? spec.threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(configs.size());

#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto slot = static_cast<std::size_t>(i);
    try {
      const CorpusResult run = disambiguate_corpus_serial(corpus, res, configs[slot]);
      reports[slot] = score(run.records, gold, res.inventory, &corpus);
    } catch (const std::exception& e) {
      failures[slot] = e.what();
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string label = config_label(configs[i], true);
    if (reports[i]) {
      result.entries.push_back({label, configs[i], *reports[i]});
    } else {
      result.errors.emplace_back(label, failures[i]);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "label,strategy,measure,lesk,k,pos,attempted,correct,accuracy\n";
  for (const SweepEntry& e : result.entries) {
    const EngineConfig& c = e.config;
    const bool neighborless = c.most_connected_only || c.lesk == LeskAlgorithm::Variant;
    const std::string strategy =
        neighborless ? "none"
                     : (c.strategy.kind == NeighborStrategy::Kind::LinearRightToLeft ? "linear" : "dist");
    const std::string measure = strategy == "dist" ? std::string(to_string(c.strategy.measure)) : "-";
    const std::string lesk = c.most_connected_only ? "none" : std::string(to_string(c.lesk));
    const std::string k = neighborless ? "-" : std::to_string(c.k);
    auto row = [&](std::string_view pos, const Tally& t) {
      out << e.label << ',' << strategy << ',' << measure << ',' << lesk << ',' << k << ',' << pos
          << ',' << t.attempted << ',' << t.correct << ',';
      if (auto a = t.accuracy()) out << fmt::format("{:.6f}", *a);
      out << '\n';
    };
    for (PosClass cls : kContentClasses) row(class_name(cls), e.report.per_pos.at(cls));
    row("Overall", e.report.overall);
  }
}

}  // namespace distwsd
