#include "ragloop/qa.hpp"

#include <fstream>

#include <json.hpp>

#include "ragloop/jsonl.hpp"

namespace ragloop {

QaLoadResult load_qa_jsonl(const std::filesystem::path& path) {
  QaLoadResult result;
  jsonl::ReadStats stats = jsonl::for_each_line(
      path,
      [&](std::size_t line_no, const nlohmann::json& obj) {
        QaExample ex;
        ex.id = obj.contains("id") && obj["id"].is_string() ? obj["id"].get<std::string>()
                                                            : std::to_string(line_no);
        ex.question = obj.value("question", "");
        if (obj.contains("golden_answers") && obj["golden_answers"].is_array()) {
          for (const auto& a : obj["golden_answers"]) {
            if (a.is_string()) {
              ex.golden_answers.push_back(a.get<std::string>());
            }
          }
        }
        if (ex.question.empty() || ex.golden_answers.empty()) {
          ++result.skipped;
          return;
        }
        result.examples.push_back(std::move(ex));
      },
      /*lenient=*/true);
  result.skipped += stats.skipped;
  return result;
}

std::size_t convert_qa_file(const std::filesystem::path& input,
                            const std::filesystem::path& output) {
  std::ofstream out(output, std::ios::trunc);
  if (!out) {
    throw jsonl::FileError("cannot write " + output.string());
  }
  std::size_t converted = 0;
  jsonl::for_each_line(
      input,
      [&](std::size_t line_no, const nlohmann::json& obj) {
        nlohmann::ordered_json rec;
        std::string id;
        for (const char* key : {"id", "_id", "qid"}) {
          if (obj.contains(key)) {
            const auto& v = obj[key];
            id = v.is_string() ? v.get<std::string>() : v.dump();
            break;
          }
        }
        if (id.empty()) {
          id = std::to_string(line_no);
        }
        std::string question;
        for (const char* key : {"question", "query"}) {
          if (obj.contains(key) && obj[key].is_string()) {
            question = obj[key].get<std::string>();
            break;
          }
        }
        std::vector<std::string> answers;
        for (const char* key : {"golden_answers", "answers", "answer"}) {
          if (!obj.contains(key)) {
            continue;
          }
          const auto& v = obj[key];
          if (v.is_string()) {
            answers.push_back(v.get<std::string>());
          } else if (v.is_array()) {
            for (const auto& a : v) {
              if (a.is_string()) {
                answers.push_back(a.get<std::string>());
              }
            }
          }
          if (!answers.empty()) {
            break;
          }
        }
        if (question.empty() || answers.empty()) {
          return;
        }
        rec["id"] = id;
        rec["question"] = question;
        rec["golden_answers"] = answers;
        out << rec.dump() << '\n';
        ++converted;
      },
      /*lenient=*/true);
  return converted;
}

}  // namespace ragloop
