#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "serialize.hpp"

namespace zfs::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kConfig = 1, kParse = 2, kNumeric = 3, kResource = 4 };

int exit_code(ErrorKind kind);

/// Result document of `compute` (no correction).
Json compute_document(const RunConfig& rc);

/// Result document of `decontaminate` (also `compute` with correction on).
Json decontaminate_document(const RunConfig& rc);

/// Scan over the builtin model's separation; CSV with CRLF line ends.
void write_scan(const RunConfig& rc, std::ostream& out);
std::vector<std::string> scan_columns();

struct ReportOptions {
  std::vector<std::filesystem::path> results;
  std::vector<std::string> references;
  bool csv = false;
};
void write_report(const ReportOptions& options, std::ostream& out);

/// Parses argv and runs one subcommand. Errors are printed to `err` and
/// mapped to the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zfs::cli
