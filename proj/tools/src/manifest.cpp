#include "manifest.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <fstream>

#include "pipelife/cli.hpp"
#include "pipelife/error.hpp"

namespace pipelife::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), started_(std::chrono::system_clock::now()),
      clock_start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) { inputs_.push_back(path); }
void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

nlohmann::json RunManifest::to_json() const {
  using nlohmann::json;
  auto files = [](const std::vector<std::filesystem::path>& paths) {
    json out = json::array();
    for (const auto& p : paths) {
      json entry = {{"path", p.string()}};
      std::error_code ec;
      if (std::filesystem::is_regular_file(p, ec)) entry["sha256"] = sha256_file(p);
      out.push_back(std::move(entry));
    }
    return out;
  };
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start_).count();
  return json{{"command", command_},
              {"config", config_},
              {"seeds", seeds_},
              {"inputs", files(inputs_)},
              {"outputs", files(outputs_)},
              {"started_at", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(started_)))},
              {"duration_seconds", elapsed}};
}

void RunManifest::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::FileUnreadable, "cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace pipelife::cli
