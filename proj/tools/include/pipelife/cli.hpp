#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace pipelife::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 of a file's bytes.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

}  // namespace pipelife::cli
