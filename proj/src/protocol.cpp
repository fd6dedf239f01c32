#include "ragloop/protocol.hpp"

#include <array>
#include <cctype>

#include <json.hpp>

namespace ragloop {

namespace {

const std::array<SegmentKind, 4> kTaggedKinds = {SegmentKind::Think, SegmentKind::Search,
                                                 SegmentKind::Information, SegmentKind::Answer};

struct TagMatch {
  SegmentKind kind;
  bool closing;
  std::size_t length;
};

// At most one tag literal can match at a position: after "<" or "</" the
// kinds differ in their first letter.
std::optional<TagMatch> match_tag(const std::string& text, std::size_t pos) {
  for (SegmentKind kind : kTaggedKinds) {
    const std::string& open = tag_open(kind);
    if (text.compare(pos, open.size(), open) == 0) {
      return TagMatch{kind, false, open.size()};
    }
    const std::string& close = tag_close(kind);
    if (text.compare(pos, close.size(), close) == 0) {
      return TagMatch{kind, true, close.size()};
    }
  }
  return std::nullopt;
}

}  // namespace

const std::string& tag_open(SegmentKind kind) {
  static const std::string tags[] = {"<think>", "<search>", "<information>", "<answer>", ""};
  return tags[static_cast<int>(kind)];
}

const std::string& tag_close(SegmentKind kind) {
  static const std::string tags[] = {"</think>", "</search>", "</information>", "</answer>", ""};
  return tags[static_cast<int>(kind)];
}

const char* segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Think: return "think";
    case SegmentKind::Search: return "search";
    case SegmentKind::Information: return "information";
    case SegmentKind::Answer: return "answer";
    case SegmentKind::Plain: return "plain";
  }
  return "plain";
}

const std::string kSingleQueryInstruction =
    "Answer the given question. You must conduct reasoning inside <think> and </think> first "
    "every time you get new information. After reasoning, if you find you lack some knowledge, "
    "you can call a search engine by <search> query </search> and it will return the top "
    "searched results between <information> and </information>. You can search as many times as "
    "your want. If you find no further external knowledge needed, you can directly provide the "
    "answer inside <answer> and </answer>, without detailed illustrations. For example, "
    "<answer> Beijing </answer>. Question: ";

const std::string kMultiQueryInstruction =
    "Answer the given question. You must conduct reasoning inside <think> and </think> first "
    "every time you get new information. After reasoning, if you find you lack some knowledge, "
    "you can call a search engine by <search> query_1,query_2 </search> and it will return the "
    "top searched results for each query between <information> and </information>. You can "
    "search as many times as your want, using up to three queries each time. If you find no "
    "further external knowledge needed, you can directly provide the answer inside <answer> and "
    "</answer>, without detailed illustrations. For example, <answer> Beijing </answer>. "
    "Question: ";

std::string build_prompt(const std::string& question, const QueryMode& mode) {
  if (question.empty()) {
    throw std::invalid_argument("build_prompt: question must be nonempty");
  }
  return (mode.is_multi() ? kMultiQueryInstruction : kSingleQueryInstruction) + question;
}

std::vector<Segment> parse_transcript(const std::string& text) {
  std::vector<Segment> segments;
  std::size_t pos = 0;
  std::size_t plain_start = 0;

  auto flush_plain = [&](std::size_t upto) {
    if (upto > plain_start) {
      Segment plain;
      plain.kind = SegmentKind::Plain;
      plain.text = text.substr(plain_start, upto - plain_start);
      plain.begin = plain_start;
      plain.end = upto;
      segments.push_back(std::move(plain));
    }
  };

  while (pos < text.size()) {
    const std::size_t lt = text.find('<', pos);
    if (lt == std::string::npos) {
      break;
    }
    const auto tag = match_tag(text, lt);
    if (!tag) {
      pos = lt + 1;
      continue;
    }
    if (tag->closing) {
      throw TranscriptParseError(
          std::string("unexpected closing tag ") + tag_close(tag->kind), lt);
    }
    flush_plain(lt);

    Segment seg;
    seg.kind = tag->kind;
    seg.begin = lt;
    const std::size_t inner_start = lt + tag->length;

    // Inside a segment the only legal tag is our own closing tag.
    std::size_t scan = inner_start;
    std::optional<std::size_t> close_at;
    while (scan < text.size()) {
      const std::size_t next = text.find('<', scan);
      if (next == std::string::npos) {
        break;
      }
      const auto inner = match_tag(text, next);
      if (!inner) {
        scan = next + 1;
        continue;
      }
      if (!inner->closing || inner->kind != tag->kind) {
        throw TranscriptParseError(
            std::string("misnested tag inside ") + tag_open(tag->kind), next);
      }
      close_at = next;
      break;
    }

    if (close_at) {
      seg.text = text.substr(inner_start, *close_at - inner_start);
      seg.end = *close_at + tag_close(tag->kind).size();
      seg.complete = true;
    } else {
      seg.text = text.substr(inner_start);
      seg.end = text.size();
      seg.complete = false;
    }
    pos = seg.end;
    plain_start = seg.end;
    segments.push_back(std::move(seg));
    if (!segments.back().complete) {
      return segments;
    }
  }
  flush_plain(text.size());
  return segments;
}

std::string render_segments(const std::vector<Segment>& segments) {
  std::string out;
  for (const auto& seg : segments) {
    if (seg.kind == SegmentKind::Plain) {
      out += seg.text;
      continue;
    }
    out += tag_open(seg.kind);
    out += seg.text;
    if (seg.complete) {
      out += tag_close(seg.kind);
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

ExtractedQueries extract_queries(const std::string& search_text, const QueryMode& mode) {
  ExtractedQueries out;
  if (!mode.is_multi()) {
    std::string q = trim(search_text);
    if (!q.empty()) {
      out.queries.push_back(std::move(q));
    }
    return out;
  }

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= search_text.size()) {
    const std::size_t comma = search_text.find(',', start);
    const std::size_t end = comma == std::string::npos ? search_text.size() : comma;
    std::string piece = trim(search_text.substr(start, end - start));
    if (!piece.empty()) {
      parts.push_back(std::move(piece));
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  const std::size_t cap = static_cast<std::size_t>(std::max(mode.max_parallel_queries, 1));
  if (parts.size() > cap) {
    out.truncation_warning = "search requested " + std::to_string(parts.size()) +
                             " queries; truncated to the cap of " + std::to_string(cap);
    parts.resize(cap);
  }
  out.queries = std::move(parts);
  return out;
}

namespace {

// Tag literals inside retrieved content would corrupt the flat grammar, so
// the leading "<" is rewritten before injection.
std::string neutralize_tags(std::string text) {
  for (SegmentKind kind : kTaggedKinds) {
    for (const std::string* tag : {&tag_open(kind), &tag_close(kind)}) {
      std::size_t pos = 0;
      while ((pos = text.find(*tag, pos)) != std::string::npos) {
        text.replace(pos, 1, "&lt;");
        pos += tag->size() + 3;
      }
    }
  }
  return text;
}

// Cuts after the cap-th word, preserving the original bytes up to the cut.
std::string truncate_words(const std::string& text, int word_cap) {
  if (word_cap < 1) {
    return "";
  }
  int words = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) {
      break;
    }
    ++words;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (words == word_cap) {
      return text.substr(0, i);
    }
  }
  return text;
}

}  // namespace

std::string format_information(const InformationBlock& block, const QueryMode& mode,
                               int word_cap_per_query) {
  std::string body;
  if (!mode.is_multi()) {
    const std::string doc = block.documents.empty() ? std::string(kNoResultsSentinel)
                                                    : block.documents.front();
    body = neutralize_tags(truncate_words(doc, word_cap_per_query));
  } else {
    nlohmann::ordered_json obj;
    auto& queries = obj["query"] = nlohmann::ordered_json::array();
    auto& documents = obj["documents"] = nlohmann::ordered_json::array();
    for (const auto& q : block.queries) {
      queries.push_back(neutralize_tags(q));
    }
    for (const auto& d : block.documents) {
      documents.push_back(neutralize_tags(truncate_words(d, word_cap_per_query)));
    }
    body = obj.dump(2);
  }
  return tag_open(SegmentKind::Information) + "\n" + body + "\n" +
         tag_close(SegmentKind::Information);
}

std::optional<std::string> extract_answer(const std::vector<Segment>& segments) {
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    if (it->kind == SegmentKind::Answer && it->complete) {
      return trim(it->text);
    }
  }
  return std::nullopt;
}

}  // namespace ragloop
