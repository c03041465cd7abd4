#include "tfsdr/data.hpp"

#include "tfsdr/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

namespace tfsdr {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string_view rest(line);
    while (true) {
        const auto comma = rest.find(',');
        cells.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
    return value;
}

}  // namespace

ColumnRef ColumnRef::parse(const std::string& text) {
    ColumnRef ref;
    long index = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (!text.empty() && ec == std::errc() && ptr == text.data() + text.size() && index >= 0) {
        ref.index = index;
    } else {
        ref.name = text;
    }
    return ref;
}

Dataset load_csv(const std::filesystem::path& path, const ColumnRef& response, double min_ratio) {
    std::ifstream in(path);
    if (!in) throw SdrError(ErrorCode::Io, "cannot open '" + path.string() + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw SdrError(ErrorCode::InvalidInput, "'" + path.string() + "' has no data rows");

    std::vector<std::string> header;
    bool has_header = false;
    for (const auto& cell : rows.front()) {
        if (!parse_number(cell)) has_header = true;
    }
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
    }
    if (rows.empty()) throw SdrError(ErrorCode::InvalidInput, "'" + path.string() + "' has no data rows");

    const std::size_t width = rows.front().size();
    if (width < 2) throw SdrError(ErrorCode::InvalidInput, "CSV needs a response and at least one predictor");
    if (has_header && header.size() != width) {
        throw SdrError(ErrorCode::InvalidInput, "header has " + std::to_string(header.size()) +
                                                    " cells but data rows have " + std::to_string(width));
    }

    std::size_t target = 0;
    if (response.index >= 0) {
        target = static_cast<std::size_t>(response.index);
    } else {
        if (!has_header) throw SdrError(ErrorCode::Config, "response given by name but the CSV has no header");
        const auto it = std::find(header.begin(), header.end(), response.name);
        if (it == header.end()) throw SdrError(ErrorCode::Config, "no column named '" + response.name + "'");
        target = static_cast<std::size_t>(it - header.begin());
    }
    if (target >= width) {
        throw SdrError(ErrorCode::Config, "response column " + std::to_string(target) + " out of range");
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix x(n, static_cast<Eigen::Index>(width - 1));
    Vector y(n);
    const std::size_t first_line = has_header ? 2 : 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        const std::size_t line_no = first_line + static_cast<std::size_t>(i);
        if (row.size() != width) {
            throw SdrError(ErrorCode::InvalidInput, "row " + std::to_string(line_no) + ": expected " +
                                                        std::to_string(width) + " cells, found " +
                                                        std::to_string(row.size()));
        }
        Eigen::Index col = 0;
        for (std::size_t j = 0; j < width; ++j) {
            const auto value = parse_number(row[j]);
            if (!value || !std::isfinite(*value)) {
                const std::string column = has_header ? "'" + header[j] + "'" : std::to_string(j);
                throw SdrError(ErrorCode::InvalidInput, "row " + std::to_string(line_no) + ", column " + column +
                                                            ": non-finite or non-numeric value '" + row[j] + "'");
            }
            if (j == target) {
                y(i) = *value;
            } else {
                x(i, col++) = *value;
            }
        }
    }
    return Dataset::make(std::move(x), std::move(y), min_ratio);
}

}  // namespace tfsdr
