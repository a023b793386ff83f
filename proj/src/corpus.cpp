#include "distwsd/corpus.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool parse_size(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string line_error(std::size_t line_no, const std::string& reason) {
  return "line " + std::to_string(line_no) + ": " + reason;
}

struct PendingSentence {
  Sentence sentence;
  std::vector<std::size_t> line_numbers;
};

void finish_sentence(PendingSentence& pending, std::vector<Sentence>& out,
                     std::size_t& next_index) {
  if (pending.sentence.tokens.empty()) return;
  const std::size_t n = pending.sentence.tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = pending.sentence.tokens[i];
    if (t.head > n) {
      throw Error(ErrorKind::HeadOutOfRange,
                  line_error(pending.line_numbers[i],
                             "head " + std::to_string(t.head) + " outside sentence of length " +
                                 std::to_string(n)));
    }
  }
  pending.sentence.sentence_index = next_index++;
  out.push_back(std::move(pending.sentence));
  pending = PendingSentence{};
}

}  // namespace

std::vector<Sentence> parse_corpus(std::istream& in, const CorpusFormat& format) {
  std::vector<Sentence> sentences;
  std::string doc_id = format.default_doc_id;
  std::size_t next_index = 0;
  PendingSentence pending;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      pending.sentence.doc_id = doc_id;
      finish_sentence(pending, sentences, next_index);
      continue;
    }
    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.substr(0, 4) == "doc ") {
        pending.sentence.doc_id = doc_id;
        finish_sentence(pending, sentences, next_index);
        std::string_view id = body.substr(4);
        while (!id.empty() && id.front() == ' ') id.remove_prefix(1);
        while (!id.empty() && id.back() == ' ') id.remove_suffix(1);
        if (id.empty()) throw Error(ErrorKind::MalformedLine, line_error(line_no, "empty doc id"));
        doc_id = std::string(id);
        next_index = 0;
      }
      continue;
    }

    const auto fields = split_tabs(line);
    if (fields.size() != 6) {
      throw Error(ErrorKind::MalformedLine,
                  line_error(line_no, "expected 6 tab-separated columns, found " +
                                          std::to_string(fields.size())));
    }
    Token token;
    if (!parse_size(fields[0], token.index) || token.index == 0) {
      throw Error(ErrorKind::MalformedLine, line_error(line_no, "bad ID '" + std::string(fields[0]) + "'"));
    }
    if (!parse_size(fields[4], token.head)) {
      throw Error(ErrorKind::MalformedLine, line_error(line_no, "bad HEAD '" + std::string(fields[4]) + "'"));
    }
    if (fields[2].empty()) throw Error(ErrorKind::MalformedLine, line_error(line_no, "empty LEMMA"));
    if (fields[3].empty()) throw Error(ErrorKind::MalformedLine, line_error(line_no, "empty POS"));
    if (fields[5].empty()) throw Error(ErrorKind::MalformedLine, line_error(line_no, "empty DEPREL"));
    if (token.index != pending.sentence.tokens.size() + 1) {
      throw Error(ErrorKind::NonContiguousIds,
                  line_error(line_no, "expected ID " +
                                          std::to_string(pending.sentence.tokens.size() + 1) +
                                          ", found " + std::to_string(token.index)));
    }
    if (token.head == token.index) {
      throw Error(ErrorKind::HeadOutOfRange, line_error(line_no, "token is its own head"));
    }
    token.surface = std::string(fields[1]);
    token.key = WordKey(fields[2], format.pos_mapper.map(fields[3]));
    token.deprel = std::string(fields[5]);
    pending.sentence.tokens.push_back(std::move(token));
    pending.line_numbers.push_back(line_no);
  }
  pending.sentence.doc_id = doc_id;
  finish_sentence(pending, sentences, next_index);
  return sentences;
}

std::vector<Sentence> parse_corpus_file(const std::string& path, const CorpusFormat& format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open corpus '" + path + "'");
  return parse_corpus(in, format);
}

void serialize_corpus(std::ostream& out, const std::vector<Sentence>& sentences) {
  const std::string* current_doc = nullptr;
  for (const Sentence& s : sentences) {
    if (current_doc == nullptr || *current_doc != s.doc_id) {
      out << "# doc " << s.doc_id << '\n';
      current_doc = &s.doc_id;
    }
    for (const Token& t : s.tokens) {
      out << t.index << '\t' << t.surface << '\t' << t.key.lemma << '\t' << t.key.pos.code()
          << '\t' << t.head << '\t' << t.deprel << '\n';
    }
    out << '\n';
  }
}

std::vector<DepTriple> extract_triples(const Sentence& s) {
  std::vector<DepTriple> triples;
  triples.reserve(s.tokens.size());
  for (const Token& t : s.tokens) {
    if (t.head == 0) continue;
    triples.push_back({s.token(t.head).key, t.deprel, t.key});
  }
  return triples;
}

std::vector<Token> content_tokens(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const Token& t : tokens) {
    if (t.key.pos.is_content()) out.push_back(t);
  }
  return out;
}

std::vector<Token> content_tokens(const Sentence& s) { return content_tokens(s.tokens); }

Sentence sentence_from_keys(const std::vector<std::string>& items, const PosMapper& mapper) {
  Sentence s;
  s.doc_id = "inline";
  for (const std::string& item : items) {
    Token t;
    t.index = s.tokens.size() + 1;
    t.surface = item;
    if (auto key = parse_word_key(item, mapper)) {
      t.key = std::move(*key);
    } else {
      t.key = WordKey(item, PosTag::other(""));
    }
    t.deprel = "root";
    s.tokens.push_back(std::move(t));
  }
  return s;
}

}  // namespace distwsd
