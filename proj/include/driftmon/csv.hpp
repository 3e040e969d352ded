#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace driftmon::csv {

// Minimal CSV support: comma-separated, UTF-8, first row is the header.
// Double-quoted fields with "" escapes are accepted; embedded newlines inside
// quoted fields are not (one record per line). CRLF line endings tolerated.

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // each row has header.size() cells
    // 1-based file line number of each data row (for error messages).
    std::vector<std::size_t> line_numbers;
};

// Parse one CSV line into cells. Throws DataError on unbalanced quotes.
std::vector<std::string> parse_line(const std::string& line, std::size_t line_no);

// Read a whole file. Ragged rows -> DataError naming the line.
Table read_file(const std::filesystem::path& path);

// Quote a cell if it contains a comma, quote, or leading/trailing space.
std::string escape(const std::string& cell);

// Join cells into one CSV line (no trailing newline).
std::string join(const std::vector<std::string>& cells);

} // namespace driftmon::csv
