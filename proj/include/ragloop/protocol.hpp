#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ragloop {

// The transcript tag vocabulary and prompt templates are the frozen wire
// format; see docs/protocol.md for the versioned definition.

enum class SegmentKind { Think, Search, Information, Answer, Plain };

struct Segment {
  SegmentKind kind = SegmentKind::Plain;
  std::string text;       // inner content, tags excluded
  std::size_t begin = 0;  // [begin, end) into the parsed text, tags included
  std::size_t end = 0;
  bool complete = true;   // false only for an unterminated final tag
};

enum class QueryModeKind { SingleQuery, MultiQuery };

struct QueryMode {
  QueryModeKind kind = QueryModeKind::SingleQuery;
  int max_parallel_queries = 3;

  static QueryMode single() { return {QueryModeKind::SingleQuery, 1}; }
  static QueryMode multi(int max_queries = 3) { return {QueryModeKind::MultiQuery, max_queries}; }
  bool is_multi() const { return kind == QueryModeKind::MultiQuery; }
};

// Retrieval results as the model sees them: one rendered document string per
// query ("Doc 1: <title>   <body> Doc 2: ..."), positionally aligned.
struct InformationBlock {
  std::vector<std::string> queries;
  std::vector<std::string> documents;
};

class TranscriptParseError : public std::runtime_error {
 public:
  TranscriptParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Injected when a query retrieves nothing, so the model gets an explicit
// signal instead of an empty block.
inline constexpr const char* kNoResultsSentinel = "No results found.";

const std::string& tag_open(SegmentKind kind);
const std::string& tag_close(SegmentKind kind);
const char* segment_kind_name(SegmentKind kind);

// Instruction templates, ending with "Question: "; the question is appended
// verbatim.
extern const std::string kSingleQueryInstruction;
extern const std::string kMultiQueryInstruction;

std::string build_prompt(const std::string& question, const QueryMode& mode);

// Flat grammar: the four tag pairs, no nesting. Text between tags becomes
// Plain segments; an unterminated final tag yields a segment with
// complete=false; a mismatched or nested tag raises TranscriptParseError.
std::vector<Segment> parse_transcript(const std::string& text);

// Exact inverse of parse_transcript on anything that parses.
std::string render_segments(const std::vector<Segment>& segments);

struct ExtractedQueries {
  std::vector<std::string> queries;  // empty means protocol violation; caller decides recovery
  std::optional<std::string> truncation_warning;
};

// SingleQuery: the whole trimmed text as one query (commas untouched).
// MultiQuery: split on commas, trim, drop empties, truncate to the cap with
// a warning.
ExtractedQueries extract_queries(const std::string& search_text, const QueryMode& mode);

// Renders the injected information segment. Single mode wraps the one
// document string; multi mode wraps {"query": [...], "documents": [...]}
// pretty-printed with two-space indent and that key order. Each per-query
// document string is truncated to word_cap_per_query words first. Tag
// literals inside content are neutralized so the output always re-parses as
// exactly one Information segment.
std::string format_information(const InformationBlock& block, const QueryMode& mode,
                               int word_cap_per_query = 1000);

// Inner text of the last complete Answer segment, trimmed.
std::optional<std::string> extract_answer(const std::vector<Segment>& segments);

std::string trim(const std::string& s);

}  // namespace ragloop
