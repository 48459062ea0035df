#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lakm/harness.hpp"

namespace lakm::harness {

namespace {

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

// Comma-separated when the line has a comma, whitespace-separated otherwise.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    if (line.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return out;
    }
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

PointSet parse_dataset(std::istream& in, const std::string& source, bool skip_header) {
    std::vector<double> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line);
        if (rows == 0) {
            width = fields.size();
        } else if (fields.size() != width) {
            throw Error(where(source, line_no) + "expected " + std::to_string(width) + " fields, found " +
                        std::to_string(fields.size()));
        }
        for (auto f : fields) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
                throw Error(where(source, line_no) + "cannot parse '" + std::string(f) + "' as a number");
            }
            if (!std::isfinite(v)) throw Error(where(source, line_no) + "non-finite value");
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw Error(source + ": no data rows");
    if (width == 0) throw Error(source + ": empty rows");
    return PointSet(rows, width, std::move(values));
}

PointSet load_dataset(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw Error(path + ": cannot open dataset");
    return parse_dataset(in, path, skip_header);
}

Partition parse_labels(std::istream& in, const std::string& source, std::size_t n) {
    std::vector<long long> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view s = trim(line);
        if (s.empty()) continue;
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw Error(where(source, line_no) + "cannot parse '" + std::string(s) + "' as an integer label");
        }
        raw.push_back(v);
    }
    if (raw.size() != n) {
        throw Error(source + ": expected " + std::to_string(n) + " labels, found " + std::to_string(raw.size()));
    }
    std::map<long long, int> ids;
    for (auto v : raw) ids.emplace(v, 0);
    int next = 0;
    for (auto& [value, id] : ids) id = next++;
    std::vector<int> labels;
    labels.reserve(raw.size());
    for (auto v : raw) labels.push_back(ids.at(v));
    return Partition(std::move(labels), std::max(next, 1));
}

Partition load_labels(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw Error(path + ": cannot open labels");
    return parse_labels(in, path, n);
}

}  // namespace lakm::harness
