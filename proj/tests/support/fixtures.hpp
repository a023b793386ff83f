#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "distwsd/corpus.hpp"
#include "distwsd/triple_index.hpp"
#include "distwsd/word.hpp"

#ifndef DISTWSD_FIXTURES
#error "DISTWSD_FIXTURES must point at tests/fixtures"
#endif

namespace distwsd::testing {

inline std::string fixture(std::string_view rel) {
  return std::string(DISTWSD_FIXTURES) + "/" + std::string(rel);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<Sentence> corpus_from(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in);
}

inline WordKey noun(std::string_view l) { return {l, PosTag::noun()}; }
inline WordKey verb(std::string_view l) { return {l, PosTag::verb()}; }
inline WordKey adj(std::string_view l) { return {l, PosTag::adj()}; }
inline WordKey adv(std::string_view l) { return {l, PosTag::adv()}; }

inline TripleIndex nouns4_index() {
  return build_index_serial(parse_corpus_file(fixture("nouns4.conll")));
}

}  // namespace distwsd::testing
