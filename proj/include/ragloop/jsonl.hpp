#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ragloop::jsonl {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReadStats {
  std::size_t lines = 0;    // nonempty lines seen
  std::size_t skipped = 0;  // lines that failed to parse (lenient mode only)
};

// Streams one parsed object per nonempty line. In lenient mode bad lines are
// counted and skipped; otherwise they raise FileError with the line number.
ReadStats for_each_line(const std::filesystem::path& path,
                        const std::function<void(std::size_t line_no, const nlohmann::json&)>& fn,
                        bool lenient = false);

std::vector<nlohmann::json> read_all(const std::filesystem::path& path, bool lenient = false);

// Reads raw nonempty lines without parsing (for opaque record mixing).
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

}  // namespace ragloop::jsonl
