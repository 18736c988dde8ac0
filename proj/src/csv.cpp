#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dcsclust/csv.hpp"

namespace dcsclust {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool is_missing(std::string cell) {
    std::transform(cell.begin(), cell.end(), cell.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return cell.empty() || cell == "na" || cell == "nan" || cell == "null";
}

bool parse_number(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace

std::vector<ReturnSeries> ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open input file '" + path.string() + "'");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw IngestError("input file is empty");
    if (lines.size() == 1) throw IngestError("input has a header but no data rows");

    const std::vector<std::string> header = split_line(lines[0]);
    const std::size_t ncol = header.size();
    if (ncol == 0) throw IngestError("input header is empty");

    // a leading date/index column is recognized by its first body cell
    const std::vector<std::string> first_row = split_line(lines[1]);
    if (first_row.size() != ncol) {
        throw IngestError("row 2 has " + std::to_string(first_row.size())
                          + " cells, header has " + std::to_string(ncol));
    }
    double probe = 0.0;
    const bool has_date_col =
        !is_missing(first_row[0]) && !parse_number(first_row[0], probe);
    const std::size_t first_series = has_date_col ? 1 : 0;
    if (first_series >= ncol) throw IngestError("no series columns found");

    std::set<std::string> seen;
    std::vector<ReturnSeries> panel;
    for (std::size_t j = first_series; j < ncol; ++j) {
        const std::string id = trim(header[j]);
        if (id.empty()) {
            throw IngestError("column " + std::to_string(j + 1) + " has an empty name");
        }
        if (!seen.insert(id).second) {
            throw IngestError("duplicate column name '" + id + "'");
        }
        panel.push_back(ReturnSeries{id, {}});
    }

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string> cells = split_line(lines[r]);
        if (cells.size() != ncol) {
            throw IngestError("row " + std::to_string(r + 1) + " has "
                              + std::to_string(cells.size()) + " cells, header has "
                              + std::to_string(ncol));
        }
        for (std::size_t j = first_series; j < ncol; ++j) {
            const std::string& cell = cells[j];
            if (is_missing(cell)) continue;  // drop this column's point only
            double value = 0.0;
            if (!parse_number(cell, value)) {
                throw IngestError("row " + std::to_string(r + 1) + ", column '"
                                  + trim(header[j]) + "': cannot parse '" + cell + "'");
            }
            if (!std::isfinite(value)) {
                throw IngestError("row " + std::to_string(r + 1) + ", column '"
                                  + trim(header[j]) + "': non-finite value");
            }
            panel[j - first_series].values.push_back(value);
        }
    }
    return panel;
}

std::string format_fixed(double x, int precision) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed,
                                   precision);
    return std::string(buf, res.ptr);
}

std::string format_full(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace dcsclust
