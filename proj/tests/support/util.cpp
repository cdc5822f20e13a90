#include "util.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mcf::test {

TempDir::TempDir() {
    std::random_device rd;
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto candidate = std::filesystem::temp_directory_path() /
                         ("mcf_test_" + std::to_string(rd()));
        std::error_code ec;
        if (std::filesystem::create_directory(candidate, ec)) {
            path_ = candidate;
            return;
        }
    }
    throw std::runtime_error("could not create a scratch directory");
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string capture_stdout(const std::function<void()>& fn) {
    std::fflush(stdout);
    const int saved = dup(fileno(stdout));
    if (saved < 0) throw std::runtime_error("dup failed");

    TempDir dir;
    const std::string sink = dir.file("stdout.txt");
    FILE* f = std::freopen(sink.c_str(), "w", stdout);
    if (!f) {
        close(saved);
        throw std::runtime_error("could not redirect stdout");
    }
    try {
        fn();
    } catch (...) {
        std::fflush(stdout);
        dup2(saved, fileno(stdout));
        close(saved);
        throw;
    }
    std::fflush(stdout);
    dup2(saved, fileno(stdout));
    close(saved);
    return read_file_bytes(sink);
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace mcf::test
