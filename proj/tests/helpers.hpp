#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace testutil {

inline std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("vwsd_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& dir,
                                        const std::string& name,
                                        const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// A 10-candidate TSV line for quick fixtures.
inline std::string tsv_line(const std::string& focus, const std::string& context,
                            const std::string& prefix) {
  std::string line = focus + "\t" + context;
  for (int i = 1; i <= 10; ++i) {
    line += "\t" + prefix + std::to_string(i) + ".jpg";
  }
  return line;
}

}  // namespace testutil
