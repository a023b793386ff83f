#include "distwsd/triple_index.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include "distwsd/error.hpp"

namespace distwsd {
namespace {

constexpr char kMagic[4] = {'L', 'X', 'D', 'I'};
constexpr std::uint32_t kNoFeature = std::numeric_limits<std::uint32_t>::max();

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t triple_hash(const DepTriple& t) {
  return fnv1a(t.governor.render() + '\t' + t.relation + '\t' + t.dependent.render());
}

// Little-endian writer over a byte buffer.
class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void pos(const PosTag& p) {
    u8(static_cast<std::uint8_t>(p.cls));
    str(p.label);
  }
  void word(const WordKey& w) {
    str(w.lemma);
    pos(w.pos);
  }
  void raw(const char* data, std::size_t n) { buf_.append(data, n); }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  PosTag pos() {
    const std::uint8_t cls = u8();
    if (cls > static_cast<std::uint8_t>(PosClass::Other)) corrupt("bad POS class");
    PosTag p{static_cast<PosClass>(cls), str()};
    if (p.cls != PosClass::Other && !p.label.empty()) corrupt("label on content POS");
    return p;
  }
  WordKey word() {
    WordKey w;
    w.lemma = str();
    w.pos = pos();
    return w;
  }
  bool at_end() const { return pos_ == data_.size(); }

  [[noreturn]] static void corrupt(const std::string& why) {
    throw Error(ErrorKind::CorruptIndex, why);
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) corrupt("unexpected end of data");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SyntacticFeature::render() const {
  return relation + (role == FeatureRole::AsGovernor ? "^-1(" : "(") + partner.render() + ")";
}

IndexBuilder::IndexBuilder(IndexOptions options) : options_(std::move(options)) {}

void IndexBuilder::add(const Sentence& sentence) {
  for (const DepTriple& t : extract_triples(sentence)) add(t);
}

void IndexBuilder::add(const DepTriple& t) {
  if (options_.relation_stoplist.contains(t.relation)) return;
  ++triple_total_;
  checksum_ += triple_hash(t);
  features_[t.dependent].insert({t.relation, FeatureRole::AsDependent, t.governor});
  auto& governor_features = features_[t.governor];
  if (!options_.dependent_only) {
    governor_features.insert({t.relation, FeatureRole::AsGovernor, t.dependent});
  }
}

void IndexBuilder::merge(IndexBuilder&& other) {
  triple_total_ += other.triple_total_;
  checksum_ += other.checksum_;
  for (auto& [word, feats] : other.features_) {
    auto& mine = features_[word];
    if (mine.empty()) {
      mine = std::move(feats);
    } else {
      mine.merge(feats);
    }
  }
  other.features_.clear();
  other.triple_total_ = 0;
  other.checksum_ = 0;
}

TripleIndex IndexBuilder::finish() && {
  TripleIndex ix;
  ix.triple_total_ = triple_total_;
  ix.checksum_ = checksum_;

  std::set<SyntacticFeature> all;
  for (const auto& [word, feats] : features_) all.insert(feats.begin(), feats.end());
  ix.features_.assign(all.begin(), all.end());

  ix.words_.reserve(features_.size());
  ix.word_features_.reserve(features_.size());
  for (const auto& [word, feats] : features_) {
    ix.words_.push_back(word);
    ++ix.pos_vocab_[word.pos];
    std::vector<std::uint32_t> ids;
    ids.reserve(feats.size());
    for (const SyntacticFeature& f : feats) {
      const auto id = ix.find_feature(f);
      ids.push_back(id);
      ++ix.carriers_[{word.pos, id}];
    }
    ix.word_features_.push_back(std::move(ids));
  }
  features_.clear();
  ix.rebuild_derived();
  return ix;
}

std::uint32_t TripleIndex::find_feature(const SyntacticFeature& f) const {
  auto it = std::lower_bound(features_.begin(), features_.end(), f);
  if (it == features_.end() || *it != f) return kNoFeature;
  return static_cast<std::uint32_t>(it - features_.begin());
}

void TripleIndex::rebuild_derived() {
  word_ids_.clear();
  profiles_.clear();
  profiles_.reserve(words_.size());
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    const WordKey& w = words_[i];
    word_ids_.emplace(w, i);
    Profile p;
    p.feature_ids = word_features_[i];
    const double vocab = static_cast<double>(pos_vocab_.at(w.pos));
    p.weights.reserve(p.feature_ids.size());
    for (std::uint32_t id : p.feature_ids) {
      const double prob = static_cast<double>(carriers_.at({w.pos, id})) / vocab;
      const double weight = -std::log(prob);
      p.weights.push_back(weight);
      p.total += weight;
    }
    profiles_.push_back(std::move(p));
  }
}

const TripleIndex::Profile* TripleIndex::profile(const WordKey& w) const {
  auto it = word_ids_.find(w);
  return it == word_ids_.end() ? nullptr : &profiles_[it->second];
}

std::vector<SyntacticFeature> TripleIndex::features_of(const WordKey& w) const {
  std::vector<SyntacticFeature> out;
  auto it = word_ids_.find(w);
  if (it == word_ids_.end()) return out;
  for (std::uint32_t id : word_features_[it->second]) out.push_back(features_[id]);
  return out;
}

std::uint64_t TripleIndex::carriers(const PosTag& pos, const SyntacticFeature& f) const {
  const auto id = find_feature(f);
  if (id == kNoFeature) return 0;
  auto it = carriers_.find({pos, id});
  return it == carriers_.end() ? 0 : it->second;
}

std::uint64_t TripleIndex::pos_vocab_size(const PosTag& pos) const {
  auto it = pos_vocab_.find(pos);
  return it == pos_vocab_.end() ? 0 : it->second;
}

double TripleIndex::feature_probability(const SyntacticFeature& f, const PosTag& pos) const {
  const auto n = carriers(pos, f);
  if (n == 0) {
    throw Error(ErrorKind::UnknownFeature,
                "no " + pos.code() + " word carries " + f.render());
  }
  return static_cast<double>(n) / static_cast<double>(pos_vocab_size(pos));
}

double TripleIndex::information(std::span<const SyntacticFeature> fs, const PosTag& pos,
                                double log_base) const {
  const double scale = std::log(log_base);
  double total = 0.0;
  for (const SyntacticFeature& f : fs) total -= std::log(feature_probability(f, pos)) / scale;
  return total;
}

void TripleIndex::save(std::ostream& out) const {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(kIndexFormatVersion);
  w.u64(checksum_);
  w.u64(triple_total_);

  w.u32(static_cast<std::uint32_t>(pos_vocab_.size()));
  for (const auto& [pos, n] : pos_vocab_) {
    w.pos(pos);
    w.u64(n);
  }

  w.u32(static_cast<std::uint32_t>(features_.size()));
  for (const SyntacticFeature& f : features_) {
    w.str(f.relation);
    w.u8(static_cast<std::uint8_t>(f.role));
    w.word(f.partner);
  }

  w.u32(static_cast<std::uint32_t>(words_.size()));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    w.word(words_[i]);
    w.u32(static_cast<std::uint32_t>(word_features_[i].size()));
    for (std::uint32_t id : word_features_[i]) w.u32(id);
  }

  w.u32(static_cast<std::uint32_t>(carriers_.size()));
  for (const auto& [key, n] : carriers_) {
    w.pos(key.first);
    w.u32(key.second);
    w.u64(n);
  }

  const std::uint64_t sum = fnv1a(w.bytes());
  w.u64(sum);
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw Error(ErrorKind::Io, "failed writing index");
}

TripleIndex TripleIndex::load(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (data.size() < sizeof kMagic + 4 + 8) Reader::corrupt("file too short");
  if (std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) Reader::corrupt("bad magic");

  const std::string_view body(data.data(), data.size() - 8);
  Reader trailer(std::string_view(data).substr(data.size() - 8));
  if (trailer.u64() != fnv1a(body)) Reader::corrupt("checksum mismatch");

  Reader r(body.substr(sizeof kMagic));
  const std::uint32_t version = r.u32();
  if (version != kIndexFormatVersion) {
    Reader::corrupt("unsupported format version " + std::to_string(version));
  }

  TripleIndex ix;
  ix.checksum_ = r.u64();
  ix.triple_total_ = r.u64();

  const std::uint32_t n_pos = r.u32();
  for (std::uint32_t i = 0; i < n_pos; ++i) {
    PosTag pos = r.pos();
    ix.pos_vocab_[std::move(pos)] = r.u64();
  }

  const std::uint32_t n_features = r.u32();
  ix.features_.reserve(n_features);
  for (std::uint32_t i = 0; i < n_features; ++i) {
    SyntacticFeature f;
    f.relation = r.str();
    const std::uint8_t role = r.u8();
    if (role > 1) Reader::corrupt("bad feature role");
    f.role = static_cast<FeatureRole>(role);
    f.partner = r.word();
    if (!ix.features_.empty() && !(ix.features_.back() < f)) Reader::corrupt("features not sorted");
    ix.features_.push_back(std::move(f));
  }

  std::map<std::pair<PosTag, std::uint32_t>, std::uint64_t> recount;
  std::map<PosTag, std::uint64_t> vocab_recount;
  const std::uint32_t n_words = r.u32();
  ix.words_.reserve(n_words);
  ix.word_features_.reserve(n_words);
  for (std::uint32_t i = 0; i < n_words; ++i) {
    WordKey w = r.word();
    if (!ix.words_.empty() && !(ix.words_.back() < w)) Reader::corrupt("words not sorted");
    const std::uint32_t n = r.u32();
    std::vector<std::uint32_t> ids;
    ids.reserve(n);
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t id = r.u32();
      if (id >= n_features || (!ids.empty() && ids.back() >= id)) Reader::corrupt("bad feature id");
      ids.push_back(id);
      ++recount[{w.pos, id}];
    }
    ++vocab_recount[w.pos];
    ix.words_.push_back(std::move(w));
    ix.word_features_.push_back(std::move(ids));
  }

  const std::uint32_t n_carriers = r.u32();
  for (std::uint32_t i = 0; i < n_carriers; ++i) {
    PosTag pos = r.pos();
    const std::uint32_t id = r.u32();
    ix.carriers_[{std::move(pos), id}] = r.u64();
  }
  if (!r.at_end()) Reader::corrupt("trailing bytes");
  if (recount != ix.carriers_) Reader::corrupt("carrier table inconsistent with feature lists");
  if (vocab_recount != ix.pos_vocab_) Reader::corrupt("vocabulary table inconsistent");

  ix.rebuild_derived();
  return ix;
}

TripleIndex build_index_serial(const std::vector<Sentence>& sentences,
                               const IndexOptions& options) {
  IndexBuilder builder(options);
  for (const Sentence& s : sentences) builder.add(s);
  return std::move(builder).finish();
}

TripleIndex build_index(const std::vector<Sentence>& sentences, const IndexOptions& options,
                        int threads) {
  const int workers = threads > 0 ? threads : omp_get_max_threads();
  std::vector<IndexBuilder> partial(static_cast<std::size_t>(workers), IndexBuilder(options));
  const auto n = static_cast<std::int64_t>(sentences.size());

#pragma omp parallel for num_threads(workers) schedule(static)
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = n * w / workers;
    const std::int64_t end = n * (w + 1) / workers;
    for (std::int64_t i = begin; i < end; ++i) {
      partial[static_cast<std::size_t>(w)].add(sentences[static_cast<std::size_t>(i)]);
    }
  }

  IndexBuilder merged(options);
  for (IndexBuilder& b : partial) merged.merge(std::move(b));
  return std::move(merged).finish();
}

void save_index_file(const TripleIndex& ix, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write index '" + path + "'");
  ix.save(out);
}

TripleIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open index '" + path + "'");
  return TripleIndex::load(in);
}

}  // namespace distwsd
