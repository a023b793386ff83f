#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "distwsd/word.hpp"

namespace distwsd {

struct Token {
  std::size_t index = 0;  // 1-based position in the sentence
  std::string surface;
  WordKey key;
  std::size_t head = 0;  // 0 = root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string doc_id;
  std::size_t sentence_index = 0;  // 0-based within the document

  const Token& token(std::size_t index) const { return tokens.at(index - 1); }
  std::size_t size() const { return tokens.size(); }

  bool operator==(const Sentence&) const = default;
};

struct DepTriple {
  WordKey governor;
  std::string relation;
  WordKey dependent;

  auto operator<=>(const DepTriple&) const = default;
  bool operator==(const DepTriple&) const = default;
};

// Six-column TSV: ID FORM LEMMA POS HEAD DEPREL. Blank lines end a sentence,
// `# doc <id>` starts a document, other `#` lines are ignored.
struct CorpusFormat {
  PosMapper pos_mapper;
  std::string default_doc_id = "d0";
};

// Throws Error{MalformedLine, NonContiguousIds, HeadOutOfRange}; messages
// carry the 1-based line number.
std::vector<Sentence> parse_corpus(std::istream& in, const CorpusFormat& format = {});
std::vector<Sentence> parse_corpus_file(const std::string& path,
                                        const CorpusFormat& format = {});

// Writes sentences in the same TSV layout, emitting `# doc` markers whenever
// the document changes.
void serialize_corpus(std::ostream& out, const std::vector<Sentence>& sentences);

std::vector<DepTriple> extract_triples(const Sentence& s);

std::vector<Token> content_tokens(const Sentence& s);
std::vector<Token> content_tokens(const std::vector<Token>& tokens);

// Builds an ad hoc sentence from "lemma_POS" items, all attached to the root.
// Items that do not parse become Other-tagged tokens.
Sentence sentence_from_keys(const std::vector<std::string>& items,
                            const PosMapper& mapper = PosMapper::default_mapper());

}  // namespace distwsd
