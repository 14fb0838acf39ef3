#pragma once

// `tspga` command-line front end: solve, bench, exact, validate.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tspga {

/// Runs the CLI on `args` (without the program name). Returns the process
/// exit status. Failures print one "tspga: error: ..." line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tspga
