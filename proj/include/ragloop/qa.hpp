#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace ragloop {

struct QaExample {
  std::string id;
  std::string question;
  std::vector<std::string> golden_answers;  // nonempty
};

struct QaLoadResult {
  std::vector<QaExample> examples;
  std::size_t skipped = 0;  // lines missing a question or any gold answer
};

// Line-delimited {"id","question","golden_answers":[...]}; a missing id
// becomes the line index.
QaLoadResult load_qa_jsonl(const std::filesystem::path& path);

// Rewrites benchmark dumps with common field spellings (question/query,
// golden_answers/answers/answer, id/_id/qid) into the canonical form above.
// Returns the number of converted examples.
std::size_t convert_qa_file(const std::filesystem::path& input,
                            const std::filesystem::path& output);

}  // namespace ragloop
