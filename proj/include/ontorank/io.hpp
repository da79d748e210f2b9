#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

namespace ontorank {

/// Opens `path` for reading or throws Error{FileNotFound} naming the path.
std::ifstream open_input(const std::filesystem::path& path);

/// Calls `fn(line_number, line)` for every line, 1-based, with a trailing
/// carriage return removed.
void for_each_line(std::istream& in,
                   const std::function<void(std::size_t, std::string_view)>& fn);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written file.
void write_atomically(const std::filesystem::path& path,
                      std::string_view contents);

std::string_view trim(std::string_view s) noexcept;

/// Sink for non-fatal loader diagnostics.
using WarningSink = std::function<void(std::string_view)>;

/// Default sink: prints "warning: ..." to stderr.
void warn_to_stderr(std::string_view message);

}  // namespace ontorank
