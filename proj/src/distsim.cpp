#include "distwsd/distsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no); }

void require_same_pos(const WordKey& w1, const WordKey& w2) {
  if (w1.pos != w2.pos) {
    throw Error(ErrorKind::PosMismatch, w1.render() + " vs " + w2.render());
  }
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::Lin: return "lin";
    case Measure::W2V: return "w2v";
    case Measure::All: return "all";
  }
  return "lin";
}

std::optional<Measure> parse_measure(std::string_view name) {
  const std::string lower = to_lower(name);
  if (lower == "lin") return Measure::Lin;
  if (lower == "w2v") return Measure::W2V;
  if (lower == "all") return Measure::All;
  return std::nullopt;
}

std::span<const double> VectorSpace::vector(const WordKey& w) const {
  auto it = ids_.find(w);
  if (it == ids_.end()) return {};
  return {data_.data() + it->second * dimension_, dimension_};
}

double VectorSpace::norm(const WordKey& w) const {
  auto it = ids_.find(w);
  return it == ids_.end() ? 0.0 : norms_[it->second];
}

void VectorSpace::insert(const WordKey& w, std::span<const double> values) {
  if (values.size() != dimension_ || dimension_ == 0) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(dimension_) +
                                                  " values for " + w.render() + ", got " +
                                                  std::to_string(values.size()));
  }
  double sq = 0.0;
  for (double v : values) sq += v * v;
  if (sq == 0.0) throw Error(ErrorKind::ZeroVector, w.render());

  auto [it, fresh] = ids_.emplace(w, keys_.size());
  if (fresh) {
    keys_.push_back(w);
    data_.insert(data_.end(), values.begin(), values.end());
    norms_.push_back(std::sqrt(sq));
  } else {
    ++duplicates_;
    std::copy(values.begin(), values.end(), data_.begin() + it->second * dimension_);
    norms_[it->second] = std::sqrt(sq);
  }
}

VectorSpace load_vectors(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t declared_rows = 0;
  std::size_t dimension = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!split_ws(line).empty()) break;
  }
  const auto header = split_ws(line);
  if (header.size() != 2 || !parse_number(header[0], declared_rows) ||
      !parse_number(header[1], dimension) || dimension == 0) {
    throw Error(ErrorKind::BadHeader, at_line(line_no) + ": expected '<vocab_size> <dimension>'");
  }

  VectorSpace vs(dimension);
  std::vector<double> row(dimension);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    ++rows;
    if (fields.size() - 1 != dimension) {
      throw Error(ErrorKind::DimensionMismatch,
                  at_line(line_no) + ": expected " + std::to_string(dimension) + " values, found " +
                      std::to_string(fields.size() - 1));
    }
    for (std::size_t i = 0; i < dimension; ++i) {
      if (!parse_number(fields[i + 1], row[i]) || !std::isfinite(row[i])) {
        throw Error(ErrorKind::DimensionMismatch,
                    at_line(line_no) + ": bad value '" + std::string(fields[i + 1]) + "'");
      }
    }
    auto key = parse_word_key(fields[0]);
    if (!key) {
      ++vs.skipped_;
      continue;
    }
    try {
      vs.insert(*key, row);
    } catch (const Error& e) {
      throw Error(e.kind(), at_line(line_no) + ": " + key->render());
    }
  }
  if (rows != declared_rows) {
    throw Error(ErrorKind::BadHeader, "header declares " + std::to_string(declared_rows) +
                                          " rows, file has " + std::to_string(rows));
  }
  return vs;
}

VectorSpace load_vectors_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open vectors '" + path + "'");
  return load_vectors(in);
}

LinScore lin_score(const TripleIndex& ix, const WordKey& w1, const WordKey& w2) {
  require_same_pos(w1, w2);
  const TripleIndex::Profile* p1 = ix.profile(w1);
  const TripleIndex::Profile* p2 = ix.profile(w2);
  const double i1 = p1 ? p1->total : 0.0;
  const double i2 = p2 ? p2->total : 0.0;

  double shared = 0.0;
  if (p1 && p2) {
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < p1->feature_ids.size() && b < p2->feature_ids.size()) {
      if (p1->feature_ids[a] < p2->feature_ids[b]) {
        ++a;
      } else if (p2->feature_ids[b] < p1->feature_ids[a]) {
        ++b;
      } else {
        shared += p1->weights[a];
        ++a;
        ++b;
      }
    }
  }

  const double denominator = i1 + i2;
  if (denominator == 0.0) {
    // Every feature is universal (or there are none): identical non-empty
    // feature sets still count as identical.
    if (p1 && p2 && !p1->feature_ids.empty() && p1->feature_ids == p2->feature_ids) {
      return {1.0, false};
    }
    return {0.0, true};
  }
  return {std::clamp(2.0 * shared / denominator, 0.0, 1.0), false};
}

double lin_similarity(const TripleIndex& ix, const WordKey& w1, const WordKey& w2) {
  const LinScore s = lin_score(ix, w1, w2);
  if (s.both_featureless) {
    throw Error(ErrorKind::BothFeatureless, w1.render() + " and " + w2.render());
  }
  return s.value;
}

double cosine_similarity(const VectorSpace& vs, const WordKey& w1, const WordKey& w2) {
  const auto v1 = vs.vector(w1);
  if (v1.empty()) throw Error(ErrorKind::MissingVector, w1.render());
  const auto v2 = vs.vector(w2);
  if (v2.empty()) throw Error(ErrorKind::MissingVector, w2.render());
  double dot = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i) dot += v1[i] * v2[i];
  return std::clamp(dot / (vs.norm(w1) * vs.norm(w2)), -1.0, 1.0);
}

double combined_similarity(const TripleIndex& ix, const VectorSpace& vs, const WordKey& w1,
                           const WordKey& w2) {
  require_same_pos(w1, w2);
  return (lin_similarity(ix, w1, w2) + cosine_similarity(vs, w1, w2)) / 2.0;
}

namespace {

const TripleIndex& need(const TripleIndex* ix) {
  if (!ix) throw Error(ErrorKind::MissingResource, "measure requires a triple index");
  return *ix;
}

const VectorSpace& need(const VectorSpace* vs) {
  if (!vs) throw Error(ErrorKind::MissingResource, "measure requires word vectors");
  return *vs;
}

}  // namespace

double similarity(Measure m, const TripleIndex* ix, const VectorSpace* vs, const WordKey& w1,
                  const WordKey& w2) {
  switch (m) {
    case Measure::Lin: return lin_similarity(need(ix), w1, w2);
    case Measure::W2V: return cosine_similarity(need(vs), w1, w2);
    case Measure::All: return combined_similarity(need(ix), need(vs), w1, w2);
  }
  throw std::logic_error("unhandled measure");
}

std::optional<double> ranking_similarity(Measure m, const TripleIndex* ix, const VectorSpace* vs,
                                         const WordKey& w1, const WordKey& w2) {
  if (m != Measure::W2V && w1.pos != w2.pos) return std::nullopt;
  double lin = 0.0;
  if (m != Measure::W2V) lin = lin_score(need(ix), w1, w2).value;
  if (m == Measure::Lin) return lin;
  const VectorSpace& space = need(vs);
  if (!space.contains(w1) || !space.contains(w2)) return std::nullopt;
  const double cos = cosine_similarity(space, w1, w2);
  return m == Measure::W2V ? cos : (lin + cos) / 2.0;
}

}  // namespace distwsd
