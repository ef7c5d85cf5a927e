#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>

#include "synsets/text.hpp"

namespace testutil {

// Scoped scratch directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("synsets-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, std::string_view content) const {
        auto p = file(name);
        synsets::atomic_write(p, content);
        return p;
    }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
