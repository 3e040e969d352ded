#include "driftmon/csv.hpp"

#include <fstream>
#include <sstream>

#include "driftmon/errors.hpp"

namespace driftmon::csv {

std::vector<std::string> parse_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (in_quotes) {
        throw DataError("unbalanced quote at line " + std::to_string(line_no));
    }
    cells.push_back(std::move(cur));
    return cells;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path.string());
    }
    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && line_no > 1) continue; // tolerate blank lines in the body
        auto cells = parse_line(line, line_no);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DataError("malformed row at line " + std::to_string(line_no) +
                            ": expected " + std::to_string(t.header.size()) +
                            " fields, got " + std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
        t.line_numbers.push_back(line_no);
    }
    if (t.header.empty()) {
        throw DataError("empty file: " + path.string());
    }
    return t;
}

std::string escape(const std::string& cell) {
    const bool needs_quotes =
        cell.find_first_of(",\"\n") != std::string::npos ||
        (!cell.empty() && (cell.front() == ' ' || cell.back() == ' '));
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(cells[i]);
    }
    return out;
}

} // namespace driftmon::csv
