#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <string_view>

#include "ontorank/errors.hpp"

namespace test_util {

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(ONTORANK_FIXTURE_DIR) / name;
}

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ontorank-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(std::string_view name, std::string_view contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs `fn` and returns the Errc it throws; fails the test if nothing throws.
template <typename Fn>
ontorank::Errc error_of(Fn&& fn) {
  try {
    fn();
  } catch (const ontorank::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an ontorank::Error");
}

}  // namespace test_util
