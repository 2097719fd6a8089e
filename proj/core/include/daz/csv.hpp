#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace daz {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Comma-separated numeric rows. Blank lines and lines starting with '#'
/// are skipped, and so is a leading header row whose first cell is not a
/// number. Throws InvalidArgument naming the path and line on a
/// malformed entry.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path);

/// Writes rows of numbers with an optional header row.
void write_numeric_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace daz
