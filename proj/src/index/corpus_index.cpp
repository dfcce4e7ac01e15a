#include "structrec/index/corpus_index.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "structrec/error.hpp"
#include "structrec/features/features.hpp"
#include "structrec/parallel.hpp"

namespace structrec::index {

using features::FeatureDictionary;
using features::Multiset;
using frontend::MethodSource;

void CsrMatrix::append_row(const Multiset<std::uint32_t>& row) {
  for (const auto& [col, count] : row.entries()) {
    cols.push_back(col);
    values.push_back(count);
  }
  row_offsets.push_back(cols.size());
}

std::uint64_t CorpusIndex::feature_total(std::size_t m) const {
  std::uint64_t t = 0;
  for (auto v : matrix.row_values(m)) t += v;
  return t;
}

bool CorpusIndex::methods_equal(const CorpusIndex& o) const {
  if (methods.size() != o.methods.size()) return false;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto &a = methods[i], &b = o.methods[i];
    if (a.project != b.project || a.path != b.path || a.name != b.name || a.text != b.text ||
        a.body_offset != b.body_offset || a.file_offset != b.file_offset || a.hash != b.hash ||
        a.kind != b.kind)
      return false;
  }
  return true;
}

namespace {

struct Featurized {
  std::vector<std::string> keys;
  std::vector<std::string> words;
};

Featurized featurize_record(const MethodSource& m) {
  auto a = frontend::load_method(m);
  Featurized f;
  for (auto& leaf : features::leaf_feature_keys(a.tree, a.vars))
    for (auto& k : leaf) f.keys.push_back(std::move(k));
  f.words = features::token_words(a.tree);
  return f;
}

Multiset<std::uint32_t> intern_all(FeatureDictionary& dict, const std::vector<std::string>& keys,
                                   std::size_t max_size, const char* what) {
  std::vector<std::uint32_t> ids;
  ids.reserve(keys.size());
  for (const auto& k : keys) {
    FeatureId id = dict.intern(k);
    if (dict.size() > max_size)
      throw CapacityError(std::string(what) + " count exceeds the configured maximum of " +
                          std::to_string(max_size));
    ids.push_back(id);
  }
  return Multiset<std::uint32_t>::from_items(std::move(ids));
}

}  // namespace

CorpusIndex build_index(std::vector<MethodSource> records, const BuildOptions& options) {
  CorpusIndex index;
  constexpr std::size_t kChunk = 1024;
  std::vector<Featurized> chunk;
  for (std::size_t begin = 0; begin < records.size(); begin += kChunk) {
    std::size_t end = std::min(records.size(), begin + kChunk);
    chunk.assign(end - begin, Featurized{});
    parallel_for(end - begin, options.workers,
                 [&](std::size_t i) { chunk[i] = featurize_record(records[begin + i]); });
    for (auto& f : chunk) {
      index.matrix.append_row(intern_all(index.features, f.keys, options.max_features, "feature"));
      index.word_matrix.append_row(
          intern_all(index.words, f.words, std::numeric_limits<std::uint32_t>::max() - 1, "word"));
    }
  }
  index.methods = std::move(records);
  return index;
}

// --- persistence ----------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'S', 'R', 'I', 'D', 'X', '\0', '\r', '\n'};
constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 8 + 8 + 8 + 8 + 4 + 4;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  std::string str() { return std::string(take(u32())); }
  std::string_view take(std::size_t n) {
    if (n > in_.size() - pos_) throw FormatError("index file truncated");
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc(std::string_view data) {
  uLong c = crc32(0L, Z_NULL, 0);
  const auto* p = reinterpret_cast<const Bytef*>(data.data());
  std::size_t left = data.size();
  while (left > 0) {
    uInt n = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    c = crc32(c, p, n);
    p += n;
    left -= n;
  }
  return static_cast<std::uint32_t>(c);
}

void write_dict(Writer& w, const FeatureDictionary& d) {
  for (std::size_t i = 0; i < d.size(); ++i) w.str(d.key(static_cast<FeatureId>(i)));
}

void write_csr(Writer& w, const CsrMatrix& m) {
  for (auto o : m.row_offsets) w.u64(o);
  for (auto c : m.cols) w.u32(c);
  for (auto v : m.values) w.u32(v);
}

FeatureDictionary read_dict(Reader& r, std::uint64_t n) {
  FeatureDictionary d;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (d.intern(r.str()) != i) throw FormatError("duplicate dictionary key");
  }
  return d;
}

CsrMatrix read_csr(Reader& r, std::uint64_t rows, std::uint64_t cols_bound) {
  if (rows + 1 > r.remaining() / 8) throw FormatError("index file truncated");
  CsrMatrix m;
  m.row_offsets.resize(rows + 1);
  for (auto& o : m.row_offsets) o = r.u64();
  if (m.row_offsets.front() != 0) throw FormatError("bad row offsets");
  for (std::size_t i = 1; i < m.row_offsets.size(); ++i)
    if (m.row_offsets[i] < m.row_offsets[i - 1]) throw FormatError("bad row offsets");
  std::uint64_t nnz = m.row_offsets.back();
  if (nnz > r.remaining() / 8) throw FormatError("index file truncated");
  m.cols.resize(nnz);
  m.values.resize(nnz);
  for (auto& c : m.cols) {
    c = r.u32();
    if (c >= cols_bound) throw FormatError("column id out of range");
  }
  for (auto& v : m.values) v = r.u32();
  return m;
}

}  // namespace

std::string serialize_index(const CorpusIndex& index) {
  Writer payload;
  write_dict(payload, index.features);
  write_csr(payload, index.matrix);
  write_dict(payload, index.words);
  write_csr(payload, index.word_matrix);
  for (const auto& m : index.methods) {
    payload.str(m.project);
    payload.str(m.path);
    payload.str(m.name);
    payload.str(m.text);
    payload.u64(m.body_offset);
    payload.u64(m.file_offset);
    payload.u64(m.hash);
    payload.u8(static_cast<std::uint8_t>(m.kind));
  }
  Writer header;
  header.bytes().append(kMagic, sizeof kMagic);
  header.u32(CorpusIndex::kFormatVersion);
  header.u32(0);
  header.u64(index.methods.size());
  header.u64(index.features.size());
  header.u64(index.words.size());
  header.u64(payload.bytes().size());
  header.u32(crc(payload.bytes()));
  header.u32(0);
  std::string out = std::move(header.bytes());
  out += payload.bytes();
  return out;
}

std::uint32_t index_checksum(std::string_view serialized) {
  if (serialized.size() < kHeaderSize) throw FormatError("index file truncated");
  Reader r(serialized.substr(kHeaderSize - 8, 4));
  return r.u32();
}

CorpusIndex deserialize_index(std::string_view bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("index file truncated");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) throw FormatError("not an index file");
  Reader h(bytes.substr(sizeof kMagic, kHeaderSize - sizeof kMagic));
  std::uint32_t version = h.u32();
  if (version != CorpusIndex::kFormatVersion)
    throw FormatError("unsupported index version " + std::to_string(version));
  h.u32();
  std::uint64_t n_methods = h.u64(), n_features = h.u64(), n_words = h.u64();
  std::uint64_t payload_size = h.u64();
  std::uint32_t checksum = h.u32();
  std::string_view payload = bytes.substr(kHeaderSize);
  if (payload.size() != payload_size) throw FormatError("index file truncated or padded");
  if (crc(payload) != checksum) throw FormatError("index checksum mismatch");

  Reader r(payload);
  CorpusIndex index;
  index.features = read_dict(r, n_features);
  index.matrix = read_csr(r, n_methods, n_features);
  index.words = read_dict(r, n_words);
  index.word_matrix = read_csr(r, n_methods, n_words);
  index.methods.resize(n_methods);
  for (auto& m : index.methods) {
    m.project = r.str();
    m.path = r.str();
    m.name = r.str();
    m.text = r.str();
    m.body_offset = r.u64();
    m.file_offset = r.u64();
    m.hash = r.u64();
    std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(frontend::SourceKind::Tree))
      throw FormatError("bad source kind");
    m.kind = static_cast<frontend::SourceKind>(kind);
    if (m.body_offset > m.text.size()) throw FormatError("bad body offset");
  }
  if (!r.done()) throw FormatError("trailing bytes in index payload");
  return index;
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  std::string bytes = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_index(ss.str());
}

// --- per-method features --------------------------------------------------

MethodFeatures compute_method_features(const CorpusIndex& index, std::size_t method) {
  MethodFeatures mf;
  mf.tree = frontend::load_method(index.methods[method]);
  auto keys = features::leaf_feature_keys(mf.tree.tree, mf.tree.vars);
  mf.leaf_ids.resize(keys.size());
  std::vector<FeatureId> all;
  for (std::size_t l = 0; l < keys.size(); ++l) {
    mf.leaf_ids[l].reserve(keys[l].size());
    for (const auto& k : keys[l]) {
      auto id = index.features.find(k);
      if (!id) throw FormatError("method " + std::to_string(method) + " has a feature missing from the index");
      mf.leaf_ids[l].push_back(*id);
      all.push_back(*id);
    }
  }
  mf.bag = Multiset<FeatureId>::from_items(std::move(all));
  return mf;
}

MethodCache::MethodCache(const CorpusIndex& index)
    : index_(index), slots_(std::make_unique<Slot[]>(index.method_count())) {}

const MethodFeatures& MethodCache::get(std::size_t method) const {
  Slot& s = slots_[method];
  std::call_once(s.once, [&] {
    s.value = std::make_unique<MethodFeatures>(compute_method_features(index_, method));
  });
  return *s.value;
}

}  // namespace structrec::index
