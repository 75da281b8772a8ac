#include "metaplan/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string_view>
#include <system_error>

namespace metaplan {

ParseError::ParseError(std::string path, std::size_t line,
                       const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
      path_(std::move(path)),
      line_(line) {}

namespace {

constexpr std::array<std::string_view, 7> kHeader = {
    "id",          "label",          "sublabel",      "discovery_beta",
    "discovery_se", "replication_beta", "replication_se"};
constexpr std::string_view kNewSe = "new_se";

// Splits one CSV line into fields.  Double-quoted fields may contain commas
// and doubled quotes ("" for a literal quote).
std::vector<std::string> split_csv(const std::string& line,
                                   const std::string& name, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty()) {
                throw ParseError(name, lineno,
                                 "quote may only open at the start of a field");
            }
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw ParseError(name, lineno, "unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
}

double parse_number(const std::string& text, const std::string& column,
                    const std::string& name, std::size_t lineno) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ParseError(name, lineno,
                         "column '" + column + "' is not a number: '" + text +
                             "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(name, lineno,
                         "column '" + column + "' must be finite: '" + text +
                             "'");
    }
    return value;
}

double parse_se(const std::string& text, const std::string& column,
                const std::string& name, std::size_t lineno) {
    const double value = parse_number(text, column, name, lineno);
    if (value <= 0.0) {
        throw ParseError(name, lineno,
                         "column '" + column + "' must be positive: '" + text +
                             "'");
    }
    return value;
}

// Writes a double with the shortest digit string that round-trips.
std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf.data(), ptr);
}

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n") != std::string::npos;
}

std::string quote_csv(const std::string& field) {
    if (!needs_quoting(field)) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace

std::vector<CovariateRecord> parse_records(std::istream& in,
                                           const std::string& name) {
    std::string line;
    std::size_t lineno = 0;

    // Header.
    bool has_new_se = false;
    {
        if (!std::getline(in, line)) {
            throw ParseError(name, 1, "empty input; expected a header line");
        }
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto fields = split_csv(line, name, lineno);
        if (fields.size() != kHeader.size() &&
            fields.size() != kHeader.size() + 1) {
            throw ParseError(name, lineno,
                             "header has " + std::to_string(fields.size()) +
                                 " columns; expected " +
                                 std::to_string(kHeader.size()) + " or " +
                                 std::to_string(kHeader.size() + 1));
        }
        for (std::size_t i = 0; i < kHeader.size(); ++i) {
            if (fields[i] != kHeader[i]) {
                throw ParseError(name, lineno,
                                 "header column " + std::to_string(i + 1) +
                                     " is '" + fields[i] + "'; expected '" +
                                     std::string(kHeader[i]) + "'");
            }
        }
        if (fields.size() == kHeader.size() + 1) {
            if (fields.back() != kNewSe) {
                throw ParseError(name, lineno,
                                 "header column " +
                                     std::to_string(kHeader.size() + 1) +
                                     " is '" + fields.back() +
                                     "'; expected '" + std::string(kNewSe) +
                                     "'");
            }
            has_new_se = true;
        }
    }
    const std::size_t expected_fields = kHeader.size() + (has_new_se ? 1 : 0);

    std::vector<CovariateRecord> records;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line, name, lineno);
        if (fields.size() != expected_fields) {
            throw ParseError(name, lineno,
                             "row has " + std::to_string(fields.size()) +
                                 " columns; expected " +
                                 std::to_string(expected_fields));
        }
        CovariateRecord rec;
        rec.id = fields[0];
        if (rec.id.empty()) {
            throw ParseError(name, lineno, "column 'id' must not be empty");
        }
        if (!seen.insert(rec.id).second) {
            throw ParseError(name, lineno,
                             "duplicate covariate id '" + rec.id + "'");
        }
        rec.label = fields[1];
        rec.sublabel = fields[2];
        rec.discovery_beta =
            parse_number(fields[3], "discovery_beta", name, lineno);
        rec.discovery_se = parse_se(fields[4], "discovery_se", name, lineno);
        rec.replication_beta =
            parse_number(fields[5], "replication_beta", name, lineno);
        rec.replication_se =
            parse_se(fields[6], "replication_se", name, lineno);
        if (has_new_se && !fields[7].empty()) {
            rec.new_se = parse_se(fields[7], "new_se", name, lineno);
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw ParseError(name, lineno, "no records after the header");
    }
    return records;
}

std::vector<CovariateRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return parse_records(in, path);
}

std::string serialize_records(const std::vector<CovariateRecord>& records) {
    bool any_new_se = false;
    for (const auto& rec : records) {
        if (rec.new_se.has_value()) {
            any_new_se = true;
            break;
        }
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < kHeader.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << kHeader[i];
    }
    if (any_new_se) {
        out << ',' << kNewSe;
    }
    out << '\n';
    for (const auto& rec : records) {
        out << quote_csv(rec.id) << ',' << quote_csv(rec.label) << ','
            << quote_csv(rec.sublabel) << ','
            << format_number(rec.discovery_beta) << ','
            << format_number(rec.discovery_se) << ','
            << format_number(rec.replication_beta) << ','
            << format_number(rec.replication_se);
        if (any_new_se) {
            out << ',';
            if (rec.new_se.has_value()) {
                out << format_number(*rec.new_se);
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace metaplan
