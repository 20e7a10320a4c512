#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace pipelife::cli {

/// Record of one command run: what was asked, what was read and written.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_seed(const std::string& name, std::uint64_t seed) { seeds_[name] = seed; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  [[nodiscard]] nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  nlohmann::json config_ = nlohmann::json::object();
  std::map<std::string, std::uint64_t> seeds_;
  std::vector<std::filesystem::path> inputs_;
  std::vector<std::filesystem::path> outputs_;
  std::chrono::system_clock::time_point started_;
  std::chrono::steady_clock::time_point clock_start_;
};

}  // namespace pipelife::cli
