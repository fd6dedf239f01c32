#include "ragloop/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <future>
#include <map>

#include "ragloop/bm25_kernel.hpp"
#include "ragloop/hash.hpp"

namespace ragloop {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')) {
      current.push_back(ch);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

void Bm25Index::finalize() {
  norms_.resize(lengths_.size());
  const double k1 = params_.k1;
  const double b = params_.b;
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    norms_[i] = k1 * (1.0 - b + b * static_cast<double>(lengths_[i]) / avg_length_);
  }
  term_index_.clear();
  term_index_.reserve(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    term_index_.emplace(terms_[t], static_cast<std::uint32_t>(t));
  }
}

Bm25Index Bm25Index::build(const PassageStore& store, Bm25Params params) {
  if (store.empty()) {
    throw IndexError("cannot index an empty passage store");
  }
  if (!(params.k1 > 0.0)) {
    throw IndexError("k1 must be > 0");
  }
  if (!(params.b >= 0.0 && params.b <= 1.0)) {
    throw IndexError("b must be in [0, 1]");
  }

  Bm25Index index;
  index.params_ = params;
  const std::size_t n = store.size();
  index.passage_ids_.reserve(n);
  index.lengths_.reserve(n);

  // std::map keeps the term dictionary sorted as we go.
  std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>> postings;
  std::uint64_t total_length = 0;
  for (std::size_t ord = 0; ord < n; ++ord) {
    const Passage& p = store.at(ord);
    index.passage_ids_.push_back(p.passage_id);
    std::map<std::string, std::uint32_t> counts;
    for (auto& token : tokenize(p.title + " " + p.body)) {
      ++counts[std::move(token)];
    }
    std::uint32_t length = 0;
    for (const auto& [term, tf] : counts) {
      length += tf;
      postings[term].emplace_back(static_cast<std::uint32_t>(ord), tf);
    }
    index.lengths_.push_back(length);
    total_length += length;
  }
  index.avg_length_ = static_cast<double>(total_length) / static_cast<double>(n);

  index.terms_.reserve(postings.size());
  index.idf_.reserve(postings.size());
  index.offsets_.reserve(postings.size() + 1);
  index.offsets_.push_back(0);
  const double num_passages = static_cast<double>(n);
  for (auto& [term, plist] : postings) {
    index.terms_.push_back(term);
    const double df = static_cast<double>(plist.size());
    index.idf_.push_back(std::log(1.0 + (num_passages - df + 0.5) / (df + 0.5)));
    for (const auto& [ord, tf] : plist) {
      index.ordinals_.push_back(ord);
      index.tfs_.push_back(tf);
    }
    index.offsets_.push_back(index.ordinals_.size());
  }
  index.finalize();
  return index;
}

std::uint64_t Bm25Index::document_frequency(const std::string& term) const {
  auto it = term_index_.find(term);
  if (it == term_index_.end()) {
    return 0;
  }
  return offsets_[it->second + 1] - offsets_[it->second];
}

double Bm25Index::idf(const std::string& term) const {
  auto it = term_index_.find(term);
  return it == term_index_.end() ? 0.0 : idf_[it->second];
}

std::vector<SearchHit> Bm25Index::search(const std::string& query, int k) const {
  if (k < 1) {
    throw IndexError("k must be >= 1");
  }
  // Unique query terms in lexicographic order with their multiplicities;
  // the fixed accumulation order makes scores exactly invariant to query
  // term order.
  std::map<std::string, std::uint32_t> query_terms;
  for (auto& token : tokenize(query)) {
    ++query_terms[std::move(token)];
  }
  if (query_terms.empty()) {
    return {};
  }

  std::vector<double> scores(num_passages(), 0.0);
  const auto kernel = bm25kern::selected_kernel().fn;
  const double k1_plus_1 = params_.k1 + 1.0;
  bool any = false;
  for (const auto& [term, qtf] : query_terms) {
    auto it = term_index_.find(term);
    if (it == term_index_.end()) {
      continue;
    }
    any = true;
    const std::uint32_t t = it->second;
    const std::uint64_t begin = offsets_[t];
    const std::uint64_t count = offsets_[t + 1] - begin;
    const double weight = static_cast<double>(qtf) * idf_[t] * k1_plus_1;
    kernel(ordinals_.data() + begin, tfs_.data() + begin, count, weight, norms_.data(),
           scores.data());
  }
  if (!any) {
    return {};
  }

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t ord = 0; ord < scores.size(); ++ord) {
    if (scores[ord] > 0.0) {
      candidates.push_back(ord);
    }
  }
  const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(k), candidates.size());
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) {
      return scores[a] > scores[b];
    }
    return passage_ids_[a] < passage_ids_[b];
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top),
                    candidates.end(), better);

  std::vector<SearchHit> hits;
  hits.reserve(top);
  for (std::size_t i = 0; i < top; ++i) {
    hits.push_back({passage_ids_[candidates[i]], scores[candidates[i]], static_cast<int>(i + 1)});
  }
  return hits;
}

BatchResult Bm25Index::search_batch(const std::vector<std::string>& queries, int k,
                                    int max_queries) const {
  if (queries.empty()) {
    throw IndexError("search_batch requires at least one query");
  }
  if (queries.size() > static_cast<std::size_t>(max_queries)) {
    throw IndexError("batch of " + std::to_string(queries.size()) +
                     " queries exceeds the cap of " + std::to_string(max_queries));
  }
  BatchResult result;
  result.queries = queries;
  result.hits_per_query.resize(queries.size());
  std::vector<std::future<std::vector<SearchHit>>> futures;
  futures.reserve(queries.size());
  for (const auto& q : queries) {
    futures.push_back(
        std::async(std::launch::async, [this, &q, k] { return search(q, k); }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    result.hits_per_query[i] = futures[i].get();
  }
  return result;
}

namespace {

// Little-endian binary writer/reader for the index file.
struct Writer {
  std::string buf;
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void str(const std::string& s) {
    u64(s.size());
    buf.append(s);
  }
};

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;
  void need(std::size_t n) {
    if (pos + n > buf.size()) {
      throw IndexError("index file truncated");
    }
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v = 0;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s = buf.substr(pos, n);
    pos += n;
    return s;
  }
};

constexpr char kIndexMagic[8] = {'R', 'G', 'I', 'X', '0', '0', '0', '1'};

}  // namespace

std::string Bm25Index::fingerprint() const {
  Fnv1a64 h;
  h.update_double(params_.k1);
  h.update_double(params_.b);
  h.update_double(avg_length_);
  h.update_u64(passage_ids_.size());
  for (const auto& id : passage_ids_) {
    h.update(id);
    h.update_byte(0x1e);
  }
  for (auto len : lengths_) {
    h.update_u64(len);
  }
  h.update_u64(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    h.update(terms_[t]);
    h.update_byte(0x1f);
    h.update_double(idf_[t]);
    for (std::uint64_t i = offsets_[t]; i < offsets_[t + 1]; ++i) {
      h.update_u64(ordinals_[i]);
      h.update_u64(tfs_[i]);
    }
  }
  return hex64(h.digest());
}

void Bm25Index::save(const std::filesystem::path& path) const {
  Writer w;
  w.buf.append(kIndexMagic, sizeof kIndexMagic);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.f64(avg_length_);
  w.u64(passage_ids_.size());
  for (const auto& id : passage_ids_) {
    w.str(id);
  }
  for (auto len : lengths_) {
    w.u32(len);
  }
  w.u64(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    w.str(terms_[t]);
    w.f64(idf_[t]);
    const std::uint64_t count = offsets_[t + 1] - offsets_[t];
    w.u64(count);
    for (std::uint64_t i = offsets_[t]; i < offsets_[t + 1]; ++i) {
      w.u32(ordinals_[i]);
      w.u32(tfs_[i]);
    }
  }
  const std::uint64_t checksum = Fnv1a64::hash(w.buf);
  w.u64(checksum);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()))) {
    throw IndexError("cannot write index to " + path.string());
  }
}

Bm25Index Bm25Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IndexError("cannot open index " + path.string());
  }
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof(kIndexMagic) + 8 ||
      std::memcmp(buf.data(), kIndexMagic, sizeof kIndexMagic) != 0) {
    throw IndexError("not an index file: " + path.string());
  }
  const std::string payload = buf.substr(0, buf.size() - 8);
  Reader tail{buf, buf.size() - 8};
  if (tail.u64() != Fnv1a64::hash(payload)) {
    throw IndexError("index checksum mismatch: " + path.string());
  }

  Reader r{payload, sizeof kIndexMagic};
  Bm25Index index;
  index.params_.k1 = r.f64();
  index.params_.b = r.f64();
  index.avg_length_ = r.f64();
  const std::uint64_t n = r.u64();
  index.passage_ids_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    index.passage_ids_.push_back(r.str());
  }
  index.lengths_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    index.lengths_.push_back(r.u32());
  }
  const std::uint64_t terms = r.u64();
  index.offsets_.push_back(0);
  for (std::uint64_t t = 0; t < terms; ++t) {
    index.terms_.push_back(r.str());
    index.idf_.push_back(r.f64());
    const std::uint64_t count = r.u64();
    for (std::uint64_t i = 0; i < count; ++i) {
      index.ordinals_.push_back(r.u32());
      index.tfs_.push_back(r.u32());
    }
    index.offsets_.push_back(index.ordinals_.size());
  }
  index.finalize();
  return index;
}

}  // namespace ragloop
