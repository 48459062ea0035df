#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include "json.hpp"

#include "lakm/harness.hpp"

namespace lakm::harness {

namespace {

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string seed_field(const ResultRecord& r) {
    switch (r.kind) {
        case RowKind::mean: return "mean";
        case RowKind::stddev: return "std";
        case RowKind::run: break;
    }
    return std::to_string(r.seed);
}

std::string joined_warnings(const ResultRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.warnings.size(); ++i) {
        if (i > 0) out += ';';
        out += r.warnings[i];
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        out << csv_quote(r.method) << ',' << r.k << ',' << number(r.alpha_true) << ',' << number(r.alpha_used) << ','
            << seed_field(r) << ',' << number(r.cost) << ',' << number(r.time_ms) << ',' << number(r.ari) << ','
            << number(r.nmi) << ',' << csv_quote(joined_warnings(r)) << ',' << number(r.achieved_alpha) << ','
            << (r.kind == RowKind::run ? std::to_string(r.labels_hash) : std::string()) << '\n';
    }
}

void write_json(const std::vector<ResultRecord>& records, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json o;
        o["method"] = r.method;
        o["k"] = r.k;
        o["alpha_true"] = json_number(r.alpha_true);
        o["alpha_used"] = json_number(r.alpha_used);
        if (r.kind == RowKind::run) {
            o["seed"] = r.seed;
        } else {
            o["seed"] = seed_field(r);
        }
        o["cost"] = json_number(r.cost);
        o["time_ms"] = json_number(r.time_ms);
        o["ari"] = json_number(r.ari);
        o["nmi"] = json_number(r.nmi);
        o["warnings"] = r.warnings;
        o["achieved_alpha"] = json_number(r.achieved_alpha);
        if (r.kind == RowKind::run) {
            o["labels_hash"] = r.labels_hash;
        } else {
            o["labels_hash"] = nullptr;
        }
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {"method", "k",        "alpha_true", "alpha_used",
                                                  "seed",   "cost",     "time_ms",    "ari",
                                                  "nmi",    "warnings", "achieved_alpha", "labels_hash"};
    return cols;
}

void write_results(const std::vector<ResultRecord>& records, std::ostream& out, OutputFormat format) {
    if (format == OutputFormat::csv) {
        write_csv(records, out);
    } else {
        write_json(records, out);
    }
    if (!out) throw Error("write_results: output stream failed");
}

void write_results(const std::vector<ResultRecord>& records, const std::string& path, OutputFormat format) {
    if (path == "-") {
        write_results(records, std::cout, format);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open for writing");
    write_results(records, out, format);
}

}  // namespace lakm::harness
