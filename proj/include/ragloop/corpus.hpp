#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ragloop {

struct RawDocument {
  std::string doc_id;
  std::string title;
  std::string text;
};

// One titled fixed-size chunk of a document; the retrieval unit.
struct Passage {
  std::string passage_id;  // doc_id + ":" + ordinal
  std::string title;
  std::string body;
  std::uint32_t word_count = 0;
};

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StoreCorruptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable once built; safe for concurrent readers. Iteration order is
// document order, then ordinal.
class PassageStore {
 public:
  PassageStore() = default;
  PassageStore(std::vector<Passage> passages, int passage_words, std::uint64_t skipped_records);

  const std::vector<Passage>& passages() const { return passages_; }
  std::size_t size() const { return passages_.size(); }
  bool empty() const { return passages_.empty(); }
  const Passage& at(std::size_t ordinal) const { return passages_.at(ordinal); }
  const Passage* find(const std::string& passage_id) const;

  int passage_words() const { return passage_words_; }
  std::uint64_t skipped_records() const { return skipped_records_; }
  const std::string& checksum() const { return checksum_; }

 private:
  std::vector<Passage> passages_;
  std::unordered_map<std::string, std::size_t> by_id_;
  int passage_words_ = 0;
  std::uint64_t skipped_records_ = 0;
  std::string checksum_;
};

// A word is a maximal run of non-whitespace characters.
std::vector<std::string> split_words(const std::string& text);

// Splits every document into consecutive chunks of exactly passage_words
// words (the final chunk may be shorter). Empty texts yield no passages.
// Records with an empty doc_id or with both title and text empty are skipped
// and counted in the result; duplicate doc_ids raise IngestError.
PassageStore ingest(const std::vector<RawDocument>& documents, int passage_words);

// Streaming variant: `next` yields documents until it returns nullopt and
// reports unreadable records it already dropped via `pre_skipped`.
PassageStore ingest(const std::function<std::optional<RawDocument>()>& next, int passage_words,
                    std::uint64_t pre_skipped = 0);

// Line-delimited input of {"id","title","text"}; malformed lines are skipped
// and counted.
PassageStore ingest_jsonl_file(const std::filesystem::path& input, int passage_words);

void save_store(const PassageStore& store, const std::filesystem::path& path);
PassageStore load_store(const std::filesystem::path& path);

}  // namespace ragloop
