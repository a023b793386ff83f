#include <doctest.h>

#include <sstream>

#include "distwsd/error.hpp"
#include "distwsd/eval.hpp"
#include "fixtures.hpp"

using namespace distwsd;
using namespace distwsd::testing;

namespace {

std::vector<GoldRecord> gold_from(const std::string& text) {
  std::istringstream in(text);
  return load_gold(in);
}

std::vector<Disambiguation> predictions_file(const std::string& path) {
  std::istringstream in(slurp(path));
  return read_predictions(in);
}

Disambiguation prediction(std::string doc, std::size_t s, std::size_t t, WordKey w,
                          std::string sense) {
  Disambiguation d;
  d.target = {std::move(doc), s, t};
  d.word = std::move(w);
  d.chosen = std::move(sense);
  return d;
}

struct EvalFixture {
  SenseInventory inventory = SenseInventory::load_file(fixture("eval/inventory.jsonl"));
  std::vector<GoldRecord> gold = load_gold_file(fixture("eval/gold.tsv"));
  std::vector<Disambiguation> predictions = predictions_file(fixture("eval/predictions.tsv"));
};

const char* kTwoSense = R"(
{"id": "a.1", "lemmas": ["a_N"], "gloss": "", "synonyms": [], "relations": []}
{"id": "a.2", "lemmas": ["a_N"], "gloss": "", "synonyms": [], "relations": []}
{"id": "v.1", "lemmas": ["v_V"], "gloss": "", "synonyms": [], "relations": []}
{"id": "v.2", "lemmas": ["v_V"], "gloss": "", "synonyms": [], "relations": []}
)";

SenseInventory two_sense() {
  std::istringstream in(kTwoSense);
  return SenseInventory::load(in);
}

}  // namespace

TEST_CASE("gold loading") {
  CHECK(gold_from("").empty());
  const auto one = gold_from("d0\t3\t7\tbn:001|bn:002\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].position == Position{"d0", 3, 7});
  CHECK(one[0].sense_ids == std::vector<std::string>{"bn:001", "bn:002"});
  CHECK_FALSE(one[0].word.has_value());

  const auto with_word = gold_from("# comment\nd0\t0\t1\tbn:1\tbank_N\n");
  REQUIRE(with_word.size() == 1);
  CHECK(with_word[0].word == noun("bank"));

  try {
    gold_from("d0\t3\t7\tbn:1\nd0\t3\t7\tbn:2\n");
    FAIL("expected DuplicatePosition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicatePosition);
  }
  for (const std::string bad : {"d0\t3\t7\n", "d0\tx\t7\tbn:1\n", "d0\t3\t7\t\n", "d0\t3\t7\tbn:1|\n",
                                "d0\t3\t7\tbn:1\tbank\n", "d0\t3\t7\tbn:1\tbank_N\textra\n"}) {
    try {
      gold_from(bad);
      FAIL("expected MalformedRecord for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedRecord);
    }
  }
}

TEST_CASE("protocol fixture scores match the hand count") {
  const EvalFixture fx;
  const auto r = score(fx.predictions, fx.gold, fx.inventory);
  CHECK(r.per_pos.at(PosClass::Noun) == Tally{12, 8});
  CHECK(r.per_pos.at(PosClass::Verb) == Tally{9, 4});
  CHECK(r.per_pos.at(PosClass::Adj) == Tally{6, 5});
  CHECK(r.per_pos.at(PosClass::Adv) == Tally{3, 1});
  CHECK(r.overall == Tally{30, 18});
  CHECK(*r.overall.accuracy() == 0.6);
  CHECK(r.skipped_monosemous == 6);
  CHECK(r.skipped_unknown == 3);
  CHECK(r.overall.attempted + r.skipped_monosemous + r.skipped_unknown == fx.gold.size());

  Tally sum;
  for (const auto& [_, t] : r.per_pos) {
    sum.attempted += t.attempted;
    sum.correct += t.correct;
  }
  CHECK(sum == r.overall);
  CHECK(score(fx.predictions, fx.gold, fx.inventory) == r);
}

TEST_CASE("scoring rules") {
  const auto inv = two_sense();
  SUBCASE("perfect run") {
    const auto gold = gold_from("d\t0\t1\ta.1\nd\t0\t2\tv.2\n");
    const auto r = score({prediction("d", 0, 1, noun("a"), "a.1"), prediction("d", 0, 2, verb("v"), "v.2")},
                         gold, inv);
    CHECK(r.overall.accuracy() == 1.0);
  }
  SUBCASE("three of five") {
    const auto gold = gold_from("d\t0\t1\ta.1\nd\t0\t2\ta.1\nd\t0\t3\ta.1\nd\t0\t4\ta.2\nd\t0\t5\ta.2\n");
    std::vector<Disambiguation> preds;
    for (std::size_t t = 1; t <= 5; ++t) preds.push_back(prediction("d", 0, t, noun("a"), "a.1"));
    CHECK(score(preds, gold, inv).overall.accuracy() == 0.6);
  }
  SUBCASE("any gold sense counts") {
    const auto gold = gold_from("d\t0\t1\ta.1|a.2\n");
    CHECK(score({prediction("d", 0, 1, noun("a"), "a.2")}, gold, inv).overall == Tally{1, 1});
  }
  SUBCASE("a missing prediction is attempted and wrong") {
    const auto gold = gold_from("d\t0\t1\ta.1\n");
    CHECK(score({}, gold, inv).overall == Tally{1, 0});
  }
  SUBCASE("prediction without gold") {
    try {
      score({prediction("d", 9, 9, noun("a"), "a.1")}, gold_from("d\t0\t1\ta.1\n"), inv);
      FAIL("expected UnmatchedPrediction");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnmatchedPrediction);
    }
  }
  SUBCASE("corpus resolves the word when nothing else does") {
    // a.1 and v.1 both listed: the gold row alone does not name one word.
    const auto gold = gold_from("d0\t0\t2\ta.1|v.1\n");
    const auto corpus = corpus_from("1\tv\tv\tVB\t0\tROOT\n2\ta\ta\tNN\t1\tobj\n");
    const auto without = score({}, gold, inv);
    CHECK(without.skipped_unknown == 1);
    const auto with = score({}, gold, inv, &corpus);
    CHECK(with.per_pos.at(PosClass::Noun) == Tally{1, 0});
  }
}

TEST_CASE("report rendering") {
  EvalReport r;
  r.per_pos[PosClass::Noun] = {1000, 473};
  r.overall = {1000, 473};
  const std::string table = render_report({{"LeskES-PPVD/Lin", r}});
  CHECK(table ==
        "POS      LeskES-PPVD/Lin\n"
        "Noun     47.3%\n"
        "Verb     —\n"
        "Adj      —\n"
        "Adv      —\n"
        "Overall  47.3%\n");

  EvalReport other;
  other.per_pos[PosClass::Verb] = {3, 3};
  other.overall = {3, 3};
  const std::string two = render_report({{"A", r}, {"LeskVar", other}});
  CHECK(two.find("Verb     —      100.0%") != std::string::npos);
}

TEST_CASE("json round trip") {
  const EvalFixture fx;
  const auto r = score(fx.predictions, fx.gold, fx.inventory);
  CHECK(report_from_json(report_to_json(r)) == r);
  CHECK(report_from_json(nlohmann::json::parse(report_to_json(r).dump())) == r);
  const LabeledReports many{{"one", r}, {"two", EvalReport{}}};
  CHECK(reports_from_json(nlohmann::json::parse(reports_to_json(many).dump(2))) == many);
  CHECK(report_to_json(r)["overall"]["accuracy"] == 0.6);
  CHECK(report_to_json(EvalReport{})["overall"]["accuracy"].is_null());
  CHECK_THROWS(report_from_json(nlohmann::json::parse(R"({"per_pos": 3})")));
}

TEST_CASE("sweeps") {
  const auto corpus = parse_corpus_file(fixture("wsd/corpus.conll"));
  const auto gold = load_gold_file(fixture("wsd/gold.tsv"));
  const auto inv = SenseInventory::load_file(fixture("wsd/inventory.jsonl"));
  const auto ix = build_index_serial(parse_corpus_file(fixture("wsd/background.conll")));
  const auto vs = load_vectors_file(fixture("wsd/vectors.txt"));
  const Resources res{inv, &ix, &vs};

  SUBCASE("singleton") {
    const auto result = sweep(corpus, gold, res, SweepSpec{});
    REQUIRE(result.entries.size() == 1);
    CHECK(result.entries[0].label == "LeskES-PPVD/Lin@k=4");
    CHECK(result.errors.empty());
  }
  SUBCASE("cartesian product") {
    SweepSpec spec;
    spec.k_values = {2, 3, 4, 5, 6, 7};
    spec.strategies = {NeighborStrategy::linear(), NeighborStrategy::distributional(Measure::Lin)};
    const auto result = sweep(corpus, gold, res, spec);
    CHECK(result.entries.size() == 12);
    CHECK(result.reports().size() == 12);
    for (const auto& e : result.entries) {
      const auto& nouns = e.report.per_pos.at(PosClass::Noun);
      CHECK(nouns.attempted == 10);
      const bool dist = e.config.strategy.kind == NeighborStrategy::Kind::DistributionalTopK;
      CHECK(nouns.correct == (dist ? 10u : 0u));
    }
    std::ostringstream csv;
    write_sweep_csv(csv, result);
    const std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 12 * 5);
    CHECK(text.find("LeskES-PPVL@k=3,linear,-,extended,3,Noun,10,0,0.000000\n") != std::string::npos);
    CHECK(text.find("LeskES-PPVD/Lin@k=7,dist,lin,extended,7,Overall,10,10,1.000000\n") !=
          std::string::npos);
  }
  SUBCASE("neighbor-free configurations appear once") {
    SweepSpec spec;
    spec.k_values = {2, 3, 4};
    spec.lesk_algorithms = {LeskAlgorithm::Variant, LeskAlgorithm::Basic};
    spec.include_most_connected = true;
    const auto configs = sweep_configs(spec);
    std::vector<std::string> labels;
    for (const auto& c : configs) labels.push_back(config_label(c, true));
    CHECK(configs.size() == 5);
    CHECK(std::count(labels.begin(), labels.end(), "LeskVar") == 1);
    CHECK(std::count(labels.begin(), labels.end(), "MostConnected") == 1);
  }
  SUBCASE("a failing configuration does not stop the others") {
    SweepSpec spec;
    spec.strategies = {NeighborStrategy::distributional(Measure::W2V), NeighborStrategy::linear()};
    const Resources no_vectors{inv, &ix, nullptr};
    const auto result = sweep(corpus, gold, no_vectors, spec);
    CHECK(result.entries.size() == 1);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].first == "LeskES-PPVD/W2V@k=4");
  }
  SUBCASE("parallel sweep equals a serial one") {
    SweepSpec spec;
    spec.k_values = {2, 5};
    spec.strategies = {NeighborStrategy::linear(), NeighborStrategy::distributional(Measure::All)};
    spec.lesk_algorithms = {LeskAlgorithm::Basic, LeskAlgorithm::ExtendedSimplified};
    spec.threads = 1;
    const auto serial = sweep(corpus, gold, res, spec);
    spec.threads = 4;
    CHECK(sweep(corpus, gold, res, spec).reports() == serial.reports());
  }
}
