#include "distwsd/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "distwsd/corpus.hpp"
#include "distwsd/distsim.hpp"
#include "distwsd/engine.hpp"
#include "distwsd/error.hpp"
#include "distwsd/eval.hpp"
#include "distwsd/inventory.hpp"
#include "distwsd/lesk.hpp"
#include "distwsd/triple_index.hpp"

namespace distwsd::cli {
namespace {

// A user-facing failure detected while validating flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string absolute(const std::string& path) {
  if (path.empty()) return path;
  return std::filesystem::absolute(path).lexically_normal().string();
}

std::vector<std::string> split_items(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (in >> item) out.push_back(item);
  return out;
}

Measure measure_flag(const std::string& name) {
  auto m = parse_measure(name);
  if (!m) throw UsageError("unknown measure '" + name + "' (expected lin, w2v or all)");
  return *m;
}

LeskAlgorithm lesk_flag(const std::string& name) {
  auto a = parse_lesk(name);
  if (!a) throw UsageError("unknown Lesk algorithm '" + name + "' (expected basic, variant or extended)");
  return *a;
}

NeighborStrategy strategy_flag(const std::string& name, Measure measure) {
  if (name == "dist") return NeighborStrategy::distributional(measure);
  if (name == "linear") return NeighborStrategy::linear();
  throw UsageError("unknown strategy '" + name + "' (expected dist or linear)");
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

struct IndexArgs {
  std::string corpus;
  std::string out;
  std::string stoplist;
  bool dependent_only = false;
};

struct NeighborsArgs {
  std::string index;
  std::string vectors;
  std::string word;
  std::string sentence;
  std::string measure = "lin";
  int k = 4;
};

struct DisambiguateArgs {
  std::string corpus;
  std::string inventory;
  std::string index;
  std::string vectors;
  std::string measure = "lin";
  std::string strategy = "dist";
  std::string lesk = "extended";
  int k = 4;
  std::string out;
  bool exclude_same_lemma = false;
  bool most_connected = false;
  bool include_entities = false;
  bool pos_strict = false;
};

struct EvaluateArgs {
  std::string predictions;
  std::string gold;
  std::string inventory;
  std::string corpus;
  std::string json;
  std::string csv;
  std::string label = "system";
};

struct CombinationsArgs {
  std::string inventory;
  std::string sentence;
};

struct SweepArgs {
  std::string corpus;
  std::string gold;
  std::string inventory;
  std::string index;
  std::string vectors;
  std::string k_values = "2,3,4,5,6,7";
  std::string strategies = "linear,dist:lin";
  std::string lesk = "basic,extended";
  bool variant = false;
  bool most_connected = false;
  std::string json;
  std::string csv;
};

std::vector<int> parse_k_values(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split_items(text, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        if (lo > hi) throw UsageError("empty k range '" + item + "'");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      } else {
        out.push_back(std::stoi(item));
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad k value '" + item + "'");
    }
  }
  for (int k : out) {
    if (k < 1) throw UsageError("k must be at least 1");
  }
  if (out.empty()) throw UsageError("no k values given");
  return out;
}

int cmd_index(const IndexArgs& a, int threads, std::ostream& out) {
  IndexOptions options;
  for (const std::string& rel : split_items(a.stoplist, ',')) options.relation_stoplist.insert(rel);
  options.dependent_only = a.dependent_only;

  const auto sentences = parse_corpus_file(absolute(a.corpus));
  const TripleIndex ix = build_index(sentences, options, threads);
  save_index_file(ix, absolute(a.out));

  out << "sentences\t" << sentences.size() << '\n';
  out << "triples\t" << ix.triple_total() << '\n';
  out << "words\t" << ix.word_count() << '\n';
  for (const auto& [pos, n] : ix.pos_vocab()) out << "vocab\t" << pos.code() << '\t' << n << '\n';
  return 0;
}

int cmd_neighbors(const NeighborsArgs& a, std::ostream& out) {
  const Measure measure = measure_flag(a.measure);
  if (a.k < 0) throw UsageError("k must be non-negative");
  if (measure != Measure::W2V && a.index.empty()) {
    throw UsageError("measure '" + a.measure + "' requires --index");
  }
  if (measure != Measure::Lin && a.vectors.empty()) {
    throw UsageError("measure '" + a.measure + "' requires --vectors");
  }
  auto target_key = parse_word_key(a.word);
  if (!target_key) throw UsageError("--word must be lemma_POS, got '" + a.word + "'");
  if (a.k == 0) return 0;

  std::optional<TripleIndex> ix;
  std::optional<VectorSpace> vs;
  if (!a.index.empty()) ix = load_index_file(absolute(a.index));
  if (!a.vectors.empty()) vs = load_vectors_file(absolute(a.vectors));

  std::vector<std::string> items = split_spaces(a.sentence);
  Sentence s = sentence_from_keys(items);
  auto target = std::find_if(s.tokens.begin(), s.tokens.end(),
                             [&](const Token& t) { return t.key == *target_key; });
  if (target == s.tokens.end()) {
    items.push_back(a.word);
    s = sentence_from_keys(items);
    target = s.tokens.end() - 1;
  }

  const NeighborSelection sel = select_neighbors_distributional(
      s, *target, a.k, measure, ix ? &*ix : nullptr, vs ? &*vs : nullptr);
  if (sel.fell_back) out << "# no scorable candidates; fell back to linear right-to-left selection\n";
  std::size_t rank = 0;
  for (const ScoredNeighbor& n : sel.neighbors) {
    out << ++rank << '\t' << n.token.key.render() << '\t'
        << (n.similarity ? fmt::format("{:.6f}", *n.similarity) : std::string("-")) << '\n';
  }
  return 0;
}

int cmd_disambiguate(const DisambiguateArgs& a, int threads, std::ostream& out, std::ostream& err) {
  EngineConfig cfg;
  cfg.k = a.k;
  cfg.strategy = strategy_flag(a.strategy, measure_flag(a.measure));
  cfg.lesk = lesk_flag(a.lesk);
  cfg.exclude_same_lemma = a.exclude_same_lemma;
  cfg.most_connected_only = a.most_connected;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bool distributional = cfg.strategy.kind == NeighborStrategy::Kind::DistributionalTopK &&
                              !cfg.most_connected_only && cfg.lesk != LeskAlgorithm::Variant;
  if (distributional && cfg.strategy.measure != Measure::W2V && a.index.empty()) {
    throw UsageError("strategy 'dist' with measure '" + a.measure + "' requires --index");
  }
  if (distributional && cfg.strategy.measure != Measure::Lin && a.vectors.empty()) {
    throw UsageError("strategy 'dist' with measure '" + a.measure + "' requires --vectors");
  }

  const auto sentences = parse_corpus_file(absolute(a.corpus));
  InventoryOptions inv_options;
  inv_options.include_entities = a.include_entities;
  inv_options.pos_strict_overlap = a.pos_strict;
  const SenseInventory inv = SenseInventory::load_file(absolute(a.inventory), inv_options);
  std::optional<TripleIndex> ix;
  std::optional<VectorSpace> vs;
  if (!a.index.empty()) ix = load_index_file(absolute(a.index));
  if (!a.vectors.empty()) vs = load_vectors_file(absolute(a.vectors));

  const Resources res{inv, ix ? &*ix : nullptr, vs ? &*vs : nullptr};
  const CorpusResult result = disambiguate_corpus(sentences, res, cfg, threads);

  std::ostringstream tsv;
  write_predictions(tsv, result.records);
  write_file(absolute(a.out), tsv.str());

  std::size_t monosemous = 0;
  for (const Skip& s : result.skips) {
    if (s.reason == "monosemous") ++monosemous;
  }
  const std::size_t unknown = result.skips.size() - monosemous;
  if (unknown > 0) err << "skipped " << unknown << " tokens without senses\n";
  out << "disambiguated " << result.records.size() << " tokens; skipped " << monosemous
      << " monosemous, " << unknown << " unknown\n";
  return 0;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  std::ifstream pin(absolute(a.predictions));
  if (!pin) throw Error(ErrorKind::Io, "cannot open predictions '" + absolute(a.predictions) + "'");
  const auto predictions = read_predictions(pin);
  const auto gold = load_gold_file(absolute(a.gold));
  const SenseInventory inv = SenseInventory::load_file(absolute(a.inventory));
  std::optional<std::vector<Sentence>> corpus;
  if (!a.corpus.empty()) corpus = parse_corpus_file(absolute(a.corpus));

  const EvalReport report = score(predictions, gold, inv, corpus ? &*corpus : nullptr);
  const LabeledReports reports{{a.label, report}};
  out << render_report(reports);
  out << "attempted " << report.overall.attempted << ", skipped " << report.skipped_monosemous
      << " monosemous, " << report.skipped_unknown << " unknown\n";

  if (!a.json.empty()) write_file(absolute(a.json), reports_to_json(reports).dump(2) + "\n");
  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "label,pos,attempted,correct,accuracy\n";
    auto row = [&](std::string_view pos, const Tally& t) {
      csv << a.label << ',' << pos << ',' << t.attempted << ',' << t.correct << ',';
      if (auto acc = t.accuracy()) csv << fmt::format("{:.6f}", *acc);
      csv << '\n';
    };
    for (PosClass c : kContentClasses) row(class_name(c), report.per_pos.at(c));
    row("Overall", report.overall);
    write_file(absolute(a.csv), csv.str());
  }
  return 0;
}

int cmd_combinations(const CombinationsArgs& a, std::ostream& out) {
  const SenseInventory inv = SenseInventory::load_file(absolute(a.inventory));
  const Sentence s = sentence_from_keys(split_spaces(a.sentence));
  for (const Token& t : s.tokens) {
    if (!t.key.pos.is_content()) continue;
    out << t.key.render() << '\t' << inv.sense_count(t.key) << '\n';
  }
  out << "combinations\t" << combination_count(s, inv).str() << '\n';
  return 0;
}

int cmd_sweep(const SweepArgs& a, int threads, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.threads = threads;
  spec.k_values = parse_k_values(a.k_values);
  spec.strategies.clear();
  for (const std::string& item : split_items(a.strategies, ',')) {
    if (item == "linear") {
      spec.strategies.push_back(NeighborStrategy::linear());
    } else if (item.rfind("dist:", 0) == 0) {
      spec.strategies.push_back(NeighborStrategy::distributional(measure_flag(item.substr(5))));
    } else {
      throw UsageError("unknown strategy '" + item + "' (expected linear or dist:<measure>)");
    }
  }
  spec.lesk_algorithms.clear();
  for (const std::string& item : split_items(a.lesk, ',')) {
    spec.lesk_algorithms.push_back(lesk_flag(item));
  }
  if (a.variant) spec.lesk_algorithms.push_back(LeskAlgorithm::Variant);
  spec.include_most_connected = a.most_connected;

  bool needs_index = false;
  bool needs_vectors = false;
  for (const NeighborStrategy& s : spec.strategies) {
    if (s.kind != NeighborStrategy::Kind::DistributionalTopK) continue;
    needs_index |= s.measure != Measure::W2V;
    needs_vectors |= s.measure != Measure::Lin;
  }
  if (needs_index && a.index.empty()) throw UsageError("distributional Lin/ALL strategies require --index");
  if (needs_vectors && a.vectors.empty()) throw UsageError("W2V/ALL strategies require --vectors");

  const auto corpus = parse_corpus_file(absolute(a.corpus));
  const auto gold = load_gold_file(absolute(a.gold));
  const SenseInventory inv = SenseInventory::load_file(absolute(a.inventory));
  std::optional<TripleIndex> ix;
  std::optional<VectorSpace> vs;
  if (!a.index.empty()) ix = load_index_file(absolute(a.index));
  if (!a.vectors.empty()) vs = load_vectors_file(absolute(a.vectors));

  const SweepResult result =
      sweep(corpus, gold, Resources{inv, ix ? &*ix : nullptr, vs ? &*vs : nullptr}, spec);
  out << render_report(result.reports());
  for (const auto& [label, message] : result.errors) err << label << ": " << message << '\n';
  if (!a.json.empty()) write_file(absolute(a.json), reports_to_json(result.reports()).dump(2) + "\n");
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_sweep_csv(csv, result);
    write_file(absolute(a.csv), csv.str());
  }
  return result.errors.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributional-neighbor word sense disambiguation", "distwsd"};
  app.set_config("--config", "", "Read flags from an INI/TOML file");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Build a dependency-triple index from a corpus");
  index->add_option("--corpus", index_args.corpus, "Six-column TSV corpus")->required()->check(CLI::ExistingFile);
  index->add_option("--out", index_args.out, "Index file to write")->required();
  index->add_option("--stoplist", index_args.stoplist, "Comma-separated relations to ignore");
  index->add_flag("--dependent-only", index_args.dependent_only,
                  "Only index features on the dependent side of each triple");

  NeighborsArgs nb_args;
  auto* neighbors = app.add_subcommand("neighbors", "Rank the distributional neighbors of a word");
  neighbors->add_option("--index", nb_args.index, "Triple index file")->check(CLI::ExistingFile);
  neighbors->add_option("--vectors", nb_args.vectors, "word2vec text vectors")->check(CLI::ExistingFile);
  neighbors->add_option("--word", nb_args.word, "Target as lemma_POS")->required();
  neighbors->add_option("--sentence", nb_args.sentence, "Context as space-separated lemma_POS items")
      ->required();
  neighbors->add_option("--measure", nb_args.measure, "lin, w2v or all")->capture_default_str();
  neighbors->add_option("-k", nb_args.k, "Number of neighbors")->capture_default_str();

  DisambiguateArgs dis_args;
  auto* dis = app.add_subcommand("disambiguate", "Disambiguate every polysemous content token");
  dis->add_option("--corpus", dis_args.corpus, "Six-column TSV corpus")->required()->check(CLI::ExistingFile);
  dis->add_option("--inventory", dis_args.inventory, "Sense inventory (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  dis->add_option("--index", dis_args.index, "Triple index file")->check(CLI::ExistingFile);
  dis->add_option("--vectors", dis_args.vectors, "word2vec text vectors")->check(CLI::ExistingFile);
  dis->add_option("--measure", dis_args.measure, "lin, w2v or all")->capture_default_str();
  dis->add_option("--strategy", dis_args.strategy, "dist or linear")->capture_default_str();
  dis->add_option("--lesk", dis_args.lesk, "basic, variant or extended")->capture_default_str();
  dis->add_option("-k", dis_args.k, "Number of neighbors")->capture_default_str();
  dis->add_option("--out", dis_args.out, "Prediction TSV to write")->required();
  dis->add_flag("--exclude-same-lemma", dis_args.exclude_same_lemma,
                "Never use a token with the target's lemma as a neighbor");
  dis->add_flag("--most-connected", dis_args.most_connected,
                "Ignore neighbors; pick the most connected sense");
  dis->add_flag("--include-entities", dis_args.include_entities,
                "Keep named-entity senses among the candidates");
  dis->add_flag("--pos-strict", dis_args.pos_strict, "Match gloss words on lemma and POS");

  EvaluateArgs ev_args;
  auto* ev = app.add_subcommand("evaluate", "Score predictions against gold annotations");
  ev->add_option("--predictions", ev_args.predictions, "Prediction TSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--gold", ev_args.gold, "Gold TSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--inventory", ev_args.inventory, "Sense inventory (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--corpus", ev_args.corpus, "Corpus used to resolve gold token words")
      ->check(CLI::ExistingFile);
  ev->add_option("--json", ev_args.json, "Also write the report as JSON");
  ev->add_option("--csv", ev_args.csv, "Also write the report as CSV");
  ev->add_option("--label", ev_args.label, "Column label")->capture_default_str();

  CombinationsArgs comb_args;
  auto* comb = app.add_subcommand("combinations", "Count the sense combinations of a sentence");
  comb->add_option("--inventory", comb_args.inventory, "Sense inventory (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  comb->add_option("--sentence", comb_args.sentence, "Space-separated lemma_POS items")->required();

  SweepArgs sw_args;
  auto* sw = app.add_subcommand("sweep", "Evaluate a grid of k values, strategies and Lesk variants");
  sw->add_option("--corpus", sw_args.corpus, "Six-column TSV corpus")->required()->check(CLI::ExistingFile);
  sw->add_option("--gold", sw_args.gold, "Gold TSV")->required()->check(CLI::ExistingFile);
  sw->add_option("--inventory", sw_args.inventory, "Sense inventory (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  sw->add_option("--index", sw_args.index, "Triple index file")->check(CLI::ExistingFile);
  sw->add_option("--vectors", sw_args.vectors, "word2vec text vectors")->check(CLI::ExistingFile);
  sw->add_option("--k", sw_args.k_values, "k values, e.g. 2-7 or 2,4")->capture_default_str();
  sw->add_option("--strategies", sw_args.strategies, "linear and/or dist:<measure>, comma-separated")
      ->capture_default_str();
  sw->add_option("--lesk", sw_args.lesk, "basic and/or extended, comma-separated")->capture_default_str();
  sw->add_flag("--variant", sw_args.variant, "Add the context-only Lesk variant");
  sw->add_flag("--most-connected", sw_args.most_connected, "Add the most-connected-sense baseline");
  sw->add_option("--json", sw_args.json, "Also write all reports as JSON");
  sw->add_option("--csv", sw_args.csv, "Write the accuracy-vs-k series as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*index) return cmd_index(index_args, threads, out);
    if (*neighbors) return cmd_neighbors(nb_args, out);
    if (*dis) return cmd_disambiguate(dis_args, threads, out, err);
    if (*ev) return cmd_evaluate(ev_args, out);
    if (*comb) return cmd_combinations(comb_args, out);
    if (*sw) return cmd_sweep(sw_args, threads, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace distwsd::cli
