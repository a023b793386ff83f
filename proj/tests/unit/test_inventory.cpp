#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "distwsd/error.hpp"
#include "distwsd/inventory.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace distwsd;
using namespace distwsd::testing;

namespace {

SenseInventory inventory_from(const std::string& text, InventoryOptions opts = {}) {
  std::istringstream in(text);
  return SenseInventory::load(in, opts);
}

SenseInventory inventory12(InventoryOptions opts = {}) {
  return SenseInventory::load_file(fixture("inventory12.jsonl"), opts);
}

std::vector<std::string> ids(const std::vector<const Sense*>& senses) {
  std::vector<std::string> out;
  for (const Sense* s : senses) out.push_back(s->id);
  return out;
}

std::vector<std::string> words(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

}  // namespace

TEST_CASE("empty input") {
  const auto inv = inventory_from("");
  CHECK(inv.size() == 0);
  CHECK(inv.senses_of(noun("cat")).empty());
}

TEST_CASE("load errors") {
  const std::string rec = R"({"id": "x", "lemmas": ["a_N"], "gloss": "", "synonyms": [], "relations": []})";
  try {
    inventory_from(rec + "\n" + rec + "\n");
    FAIL("expected DuplicateSenseId");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateSenseId);
  }
  for (const std::string bad : {
           std::string("{not json"),
           std::string(R"({"lemmas": ["a_N"], "gloss": ""})"),
           std::string(R"({"id": "y", "lemmas": [], "gloss": ""})"),
           std::string(R"({"id": "y", "lemmas": ["nopos"], "gloss": ""})"),
           std::string(R"({"id": "y", "lemmas": ["a_N"], "gloss": "", "relations": [{"type": "hypernym"}]})"),
           std::string(R"({"id": "y", "lemmas": ["a_N"], "gloss": "", "connections": -3})"),
       }) {
    try {
      inventory_from(rec + "\n" + bad + "\n");
      FAIL("expected MalformedRecord for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedRecord);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("by_word matches a naive reparse of the fixture") {
  const auto inv = inventory12(InventoryOptions{.include_entities = true});
  CHECK(inv.size() == 12);
  std::map<std::string, std::vector<std::string>> want;
  std::ifstream in(fixture("inventory12.jsonl"));
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    for (const auto& l : j["lemmas"]) want[l.get<std::string>()].push_back(j["id"]);
  }
  std::map<std::string, std::vector<std::string>> got;
  for (const auto& [w, slots] : inv.by_word()) {
    for (std::size_t slot : slots) got[w.render()].push_back(inv.senses()[slot].id);
  }
  CHECK(got == want);
  for (const auto& [w, listed] : want) CHECK(ids(inv.senses_of(*parse_word_key(w))) == listed);
}

TEST_CASE("by_word and lemma keys agree in both directions") {
  const auto inv = synthetic::inventory(3);
  for (std::size_t slot = 0; slot < inv.size(); ++slot) {
    for (const auto& w : inv.senses()[slot].lemma_keys) {
      const auto& slots = inv.by_word().at(w);
      CHECK(std::find(slots.begin(), slots.end(), slot) != slots.end());
    }
  }
  for (const auto& [w, slots] : inv.by_word()) {
    for (std::size_t slot : slots) {
      const auto& keys = inv.senses()[slot].lemma_keys;
      CHECK(std::find(keys.begin(), keys.end(), w) != keys.end());
    }
  }
}

TEST_CASE("sense lookup and polysemy") {
  const auto inv = SenseInventory::load_file(fixture("combinations.jsonl"));
  CHECK(inv.senses_of(verb("place")).size() == 16);
  CHECK(inv.sense_count(verb("place")) == 16);
  CHECK(inv.senses_of(noun("nothing")).empty());

  const auto small = inventory12();
  CHECK_FALSE(small.is_polysemous(noun("nothing")));
  CHECK_FALSE(small.is_polysemous(noun("carnivore")));
  CHECK(small.is_polysemous(noun("cat")));
  CHECK(ids(small.senses_of(noun("cat"))) == words({"bn:cat.n.01", "bn:cat.n.02"}));
  CHECK(small.find("bn:law.n.02") != nullptr);
  CHECK(small.find("bn:nothing") == nullptr);
}

TEST_CASE("named entities are excluded unless requested") {
  CHECK(inventory12().senses_of(noun("paris")).empty());
  CHECK(inventory12({.include_entities = true}).senses_of(noun("paris")).size() == 1);
}

TEST_CASE("gloss bags") {
  const auto inv = inventory12();
  auto bag = [&](const char* id) { return inv.gloss_bag(*inv.find(id)); };
  CHECK(bag("bn:cat.n.01") == words({"domesticated", "feline", "mammal"}));
  CHECK(bag("bn:feline.n.01") == words({"felid", "feline"}));
  CHECK(bag("bn:carnivore.n.01") == words({"aquatic", "flesh-eating", "mammal", "terrestrial"}));
  CHECK(bag("bn:law.n.01") == words({"authority", "collection", "impose", "rule"}));

  SUBCASE("empty gloss falls back to synonyms") {
    Sense s;
    s.id = "s";
    s.lemma_keys = {noun("cat")};
    s.synonyms = {"feline", "Cat"};
    CHECK(compute_gloss_bag(s) == words({"cat", "feline"}));
    CHECK(compute_gloss_bag(s, true) == words({"cat_N", "feline_N"}));
  }
  SUBCASE("stopword gloss does not fall back") {
    Sense s;
    s.id = "s";
    s.lemma_keys = {noun("x")};
    s.gloss = "the_DT of_IN and , the";
    s.synonyms = {"x"};
    CHECK(compute_gloss_bag(s).empty());
  }
  SUBCASE("pos-strict keys") {
    const auto strict = inventory12({.pos_strict_overlap = true});
    CHECK(strict.gloss_bag(*strict.find("bn:cat.n.01")) ==
          words({"domesticated_Adj", "feline_Adj", "mammal_N"}));
  }
  SUBCASE("only content lemmas survive") {
    const auto synth = synthetic::inventory(5);
    for (const auto& s : synth.senses()) {
      for (const auto& lemma : synth.gloss_bag(s)) {
        CHECK(lemma.find('_') == std::string::npos);
        CHECK(lemma != "the");
      }
      CHECK(synth.gloss_bag(s) == compute_gloss_bag(s));
    }
  }
}

TEST_CASE("related senses and dangling targets") {
  const auto inv = inventory12();
  CHECK(inv.related_senses(*inv.find("bn:cat.n.02")).empty());
  CHECK(ids(inv.related_senses(*inv.find("bn:carnivore.n.01"))) ==
        words({"bn:feline.n.01", "bn:dog.n.01", "bn:canine.n.01"}));
  CHECK(ids(inv.related_senses(*inv.find("bn:dog.n.01"))) ==
        words({"bn:canine.n.01", "bn:carnivore.n.01"}));
  REQUIRE(inv.dangling().size() == 1);
  CHECK(inv.dangling()[0] == std::pair<std::string, std::string>{"bn:dog.n.01", "bn:pack.n.01"});

  const auto two = inventory_from(
      R"({"id": "a", "lemmas": ["a_N"], "gloss": "", "synonyms": [], "relations": [{"type": "hypernym", "target": "b"}, {"type": "meronym", "target": "zzz"}, {"type": "similar", "target": "b"}]})"
      "\n"
      R"({"id": "b", "lemmas": ["b_N"], "gloss": "", "synonyms": [], "relations": []})"
      "\n");
  CHECK(ids(two.related_senses(*two.find("a"))) == words({"b"}));
  CHECK(two.find("a")->relations[2].type.kind == RelationKind::Other);
  CHECK(two.find("a")->relations[2].type.name() == "similar");
  CHECK(RelationType::parse("holonym").kind == RelationKind::Holonym);
}

TEST_CASE("connection counts") {
  const auto inv = inventory12();
  CHECK(inv.connection_count(*inv.find("bn:cat.n.01")) == 17);
  CHECK(inv.connection_count(*inv.find("bn:cat.n.02")) == 4);
  CHECK(inv.connection_count(*inv.find("bn:feline.n.01")) == 2);

  const auto four = inventory_from(
      R"({"id": "a", "lemmas": ["a_N"], "gloss": "", "synonyms": [], "relations": [{"type": "hypernym", "target": "w"}, {"type": "hyponym", "target": "x"}, {"type": "meronym", "target": "y"}, {"type": "holonym", "target": "z"}]})"
      "\n");
  CHECK(four.connection_count(four.senses()[0]) == 4);
}

TEST_CASE("serialize then load preserves every query") {
  for (const InventoryOptions opts : {InventoryOptions{}, InventoryOptions{true, true}}) {
    const auto first = inventory12(opts);
    std::ostringstream out;
    first.serialize(out);
    const auto second = inventory_from(out.str(), opts);
    std::ostringstream again;
    second.serialize(again);
    CHECK(again.str() == out.str());
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      const Sense& a = first.senses()[i];
      const Sense& b = second.senses()[i];
      CHECK(a.id == b.id);
      CHECK(a.lemma_keys == b.lemma_keys);
      CHECK(first.gloss_bag(a) == second.gloss_bag(b));
      CHECK(first.expanded_bag(a) == second.expanded_bag(b));
      CHECK(first.connection_count(a) == second.connection_count(b));
      CHECK(ids(first.related_senses(a)) == ids(second.related_senses(b)));
    }
    CHECK(first.by_word() == second.by_word());
    CHECK(first.dangling() == second.dangling());
  }
}
