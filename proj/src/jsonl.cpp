#include "ragloop/jsonl.hpp"

#include <fstream>

namespace ragloop::jsonl {

ReadStats for_each_line(const std::filesystem::path& path,
                        const std::function<void(std::size_t, const nlohmann::json&)>& fn,
                        bool lenient) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot open " + path.string());
  }
  ReadStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ++stats.lines;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      if (!lenient) {
        throw FileError(path.string() + ":" + std::to_string(line_no) + ": invalid JSON");
      }
      ++stats.skipped;
      continue;
    }
    fn(line_no, obj);
  }
  return stats;
}

std::vector<nlohmann::json> read_all(const std::filesystem::path& path, bool lenient) {
  std::vector<nlohmann::json> out;
  for_each_line(path, [&](std::size_t, const nlohmann::json& obj) { out.push_back(obj); }, lenient);
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot open " + path.string());
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
      out.push_back(line);
    }
  }
  return out;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw FileError("cannot write " + path.string());
  }
  for (const auto& line : lines) {
    out << line << '\n';
  }
}

}  // namespace ragloop::jsonl
