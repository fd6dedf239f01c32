#include "ragloop/corpus.hpp"

#include <cctype>
#include <fstream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "ragloop/hash.hpp"
#include "ragloop/jsonl.hpp"

namespace ragloop {

namespace {

// Canonical byte stream the checksum is computed over: content only, so two
// stores with identical passages always compare equal.
void hash_passage(Fnv1a64& h, const Passage& p) {
  h.update(p.passage_id);
  h.update_byte(0x1f);
  h.update(p.title);
  h.update_byte(0x1f);
  h.update(p.body);
  h.update_byte(0x1e);
}

std::string compute_checksum(const std::vector<Passage>& passages) {
  Fnv1a64 h;
  for (const auto& p : passages) {
    hash_passage(h, p);
  }
  return hex64(h.digest());
}

constexpr const char* kStoreFormat = "ragloop.passages.v1";

}  // namespace

PassageStore::PassageStore(std::vector<Passage> passages, int passage_words,
                           std::uint64_t skipped_records)
    : passages_(std::move(passages)),
      passage_words_(passage_words),
      skipped_records_(skipped_records) {
  by_id_.reserve(passages_.size());
  for (std::size_t i = 0; i < passages_.size(); ++i) {
    by_id_.emplace(passages_[i].passage_id, i);
  }
  checksum_ = compute_checksum(passages_);
}

const Passage* PassageStore::find(const std::string& passage_id) const {
  auto it = by_id_.find(passage_id);
  return it == by_id_.end() ? nullptr : &passages_[it->second];
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) {
      words.emplace_back(text.substr(start, i - start));
    }
  }
  return words;
}

PassageStore ingest(const std::function<std::optional<RawDocument>()>& next, int passage_words,
                    std::uint64_t pre_skipped) {
  if (passage_words < 1) {
    throw IngestError("passage_words must be >= 1");
  }
  std::vector<Passage> passages;
  std::unordered_set<std::string> seen_ids;
  std::uint64_t skipped = pre_skipped;

  while (auto doc = next()) {
    if (doc->doc_id.empty() || (doc->title.empty() && doc->text.empty())) {
      ++skipped;
      continue;
    }
    if (!seen_ids.insert(doc->doc_id).second) {
      throw IngestError("duplicate doc_id: " + doc->doc_id);
    }
    const std::vector<std::string> words = split_words(doc->text);
    for (std::size_t start = 0, ordinal = 0; start < words.size();
         start += static_cast<std::size_t>(passage_words), ++ordinal) {
      const std::size_t end =
          std::min(words.size(), start + static_cast<std::size_t>(passage_words));
      std::string body = words[start];
      for (std::size_t w = start + 1; w < end; ++w) {
        body += ' ';
        body += words[w];
      }
      Passage p;
      p.passage_id = doc->doc_id + ":" + std::to_string(ordinal);
      p.title = doc->title;
      p.body = std::move(body);
      p.word_count = static_cast<std::uint32_t>(end - start);
      passages.push_back(std::move(p));
    }
  }
  return PassageStore(std::move(passages), passage_words, skipped);
}

PassageStore ingest(const std::vector<RawDocument>& documents, int passage_words) {
  std::size_t i = 0;
  return ingest(
      [&]() -> std::optional<RawDocument> {
        if (i >= documents.size()) {
          return std::nullopt;
        }
        return documents[i++];
      },
      passage_words);
}

PassageStore ingest_jsonl_file(const std::filesystem::path& input, int passage_words) {
  std::vector<RawDocument> docs;
  std::uint64_t bad_lines = 0;
  jsonl::ReadStats stats = jsonl::for_each_line(
      input,
      [&](std::size_t, const nlohmann::json& obj) {
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
            (obj.contains("title") && !obj["title"].is_string()) ||
            (obj.contains("text") && !obj["text"].is_string())) {
          ++bad_lines;
          return;
        }
        RawDocument doc;
        doc.doc_id = obj["id"].get<std::string>();
        doc.title = obj.value("title", "");
        doc.text = obj.value("text", "");
        docs.push_back(std::move(doc));
      },
      /*lenient=*/true);
  std::size_t i = 0;
  return ingest(
      [&]() -> std::optional<RawDocument> {
        if (i >= docs.size()) {
          return std::nullopt;
        }
        return std::move(docs[i++]);
      },
      passage_words, stats.skipped + bad_lines);
}

void save_store(const PassageStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw StoreCorruptError("cannot write " + path.string());
  }
  nlohmann::ordered_json header;
  header["format"] = kStoreFormat;
  header["passage_words"] = store.passage_words();
  header["count"] = store.size();
  header["skipped_records"] = store.skipped_records();
  header["checksum"] = store.checksum();
  out << header.dump() << '\n';
  for (const auto& p : store.passages()) {
    nlohmann::ordered_json rec;
    rec["id"] = p.passage_id;
    rec["title"] = p.title;
    rec["body"] = p.body;
    rec["words"] = p.word_count;
    out << rec.dump() << '\n';
  }
  if (!out) {
    throw StoreCorruptError("write failed: " + path.string());
  }
}

PassageStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw StoreCorruptError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw StoreCorruptError("empty store file: " + path.string());
  }
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != kStoreFormat) {
    throw StoreCorruptError("not a passage store: " + path.string());
  }
  const int passage_words = header.value("passage_words", 0);
  const std::size_t count = header.value("count", std::size_t{0});
  const std::uint64_t skipped = header.value("skipped_records", std::uint64_t{0});
  const std::string expected_checksum = header.value("checksum", "");

  std::vector<Passage> passages;
  passages.reserve(count);
  while (passages.size() < count && std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("id") || !rec.contains("body")) {
      throw StoreCorruptError(path.string() + ": bad passage record at index " +
                              std::to_string(passages.size()));
    }
    Passage p;
    p.passage_id = rec["id"].get<std::string>();
    p.title = rec.value("title", "");
    p.body = rec["body"].get<std::string>();
    p.word_count = rec.value("words", std::uint32_t{0});
    if (p.word_count != split_words(p.body).size()) {
      throw StoreCorruptError(path.string() + ": word count mismatch in " + p.passage_id);
    }
    passages.push_back(std::move(p));
  }
  if (passages.size() != count) {
    throw StoreCorruptError(path.string() + ": truncated store (expected " +
                            std::to_string(count) + " passages, found " +
                            std::to_string(passages.size()) + ")");
  }
  PassageStore store(std::move(passages), passage_words, skipped);
  if (store.checksum() != expected_checksum) {
    throw StoreCorruptError(path.string() + ": checksum mismatch (expected " + expected_checksum +
                            ", got " + store.checksum() + ")");
  }
  return store;
}

}  // namespace ragloop
