#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "metaplan/pipeline.hpp"

namespace metaplan {

// Error raised for malformed input files.  Carries the offending location so
// callers can report "file:line: message" without re-parsing.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::size_t line, const std::string& message);

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

// Reads covariate records from CSV text.  The first line must be the exact
// header
//   id,label,sublabel,discovery_beta,discovery_se,replication_beta,replication_se
// optionally extended with a trailing ",new_se" column.  Fields may be quoted
// with double quotes; embedded quotes are doubled.  Blank lines are skipped.
// `name` labels the source in error messages.
std::vector<CovariateRecord> parse_records(std::istream& in,
                                           const std::string& name);

// Convenience wrapper: opens `path` and parses it.
std::vector<CovariateRecord> load_records(const std::string& path);

// Writes records back out in the same CSV dialect.  The new_se column is
// emitted only when at least one record carries an explicit value, so a
// load/serialize/load round trip reproduces the records exactly.
std::string serialize_records(const std::vector<CovariateRecord>& records);

}  // namespace metaplan
