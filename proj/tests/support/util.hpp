#pragma once

#include <filesystem>
#include <functional>
#include <string>

namespace mcf::test {

/// Self-deleting scratch directory under the system temp root.
class TempDir {
  public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

/// Runs `fn` with stdout redirected into a buffer and returns what it wrote.
std::string capture_stdout(const std::function<void()>& fn);

/// Whole file as raw bytes.
std::string read_file_bytes(const std::string& path);

} // namespace mcf::test
