#include "metaplan/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace metaplan {

namespace {

#ifndef METAPLAN_VERSION_STRING
#define METAPLAN_VERSION_STRING "0.0.0"
#endif

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

std::string general(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string md_cell(const std::string& cell) {
    std::string out;
    for (const char c : cell) {
        if (c == '|') {
            out += "\\|";
        } else {
            out += c;
        }
    }
    return out;
}

std::string render(const Table& table, const ReportOptions& options) {
    std::ostringstream out;
    switch (options.format) {
        case ReportFormat::tsv: {
            if (options.version_header) {
                out << "# metaplan " METAPLAN_VERSION_STRING "\n";
            }
            for (std::size_t i = 0; i < table.header.size(); ++i) {
                out << (i ? "\t" : "") << table.header[i];
            }
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? "\t" : "") << row[i];
                }
                out << '\n';
            }
            break;
        }
        case ReportFormat::csv: {
            if (options.version_header) {
                out << "# metaplan " METAPLAN_VERSION_STRING "\n";
            }
            for (std::size_t i = 0; i < table.header.size(); ++i) {
                out << (i ? "," : "") << csv_cell(table.header[i]);
            }
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? "," : "") << csv_cell(row[i]);
                }
                out << '\n';
            }
            break;
        }
        case ReportFormat::md: {
            if (options.version_header) {
                out << "<!-- metaplan " METAPLAN_VERSION_STRING " -->\n";
            }
            out << '|';
            for (const auto& cell : table.header) {
                out << ' ' << md_cell(cell) << " |";
            }
            out << "\n|";
            for (std::size_t i = 0; i < table.header.size(); ++i) {
                out << " --- |";
            }
            out << '\n';
            for (const auto& row : table.rows) {
                out << '|';
                for (const auto& cell : row) {
                    out << ' ' << md_cell(cell) << " |";
                }
                out << '\n';
            }
            break;
        }
    }
    return out.str();
}

std::string starred(std::string cell, Category cat) {
    if (cat == Category::I) {
        cell += '*';
    }
    return cell;
}

std::string bit_pair(bool after, bool before) {
    std::string out;
    out += after ? '1' : '0';
    out += '-';
    out += before ? '1' : '0';
    return out;
}

std::string category_cell(const CovariateEvaluation& e) {
    std::string out{to_string(e.bfdr.category)};
    if (e.bfdr.anomalous) {
        out += " (anomaly)";
    }
    return out;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& text) {
    if (text == "tsv") {
        return ReportFormat::tsv;
    }
    if (text == "csv") {
        return ReportFormat::csv;
    }
    if (text == "md") {
        return ReportFormat::md;
    }
    throw std::invalid_argument("unknown report format '" + text +
                                "'; expected tsv, csv, or md");
}

std::string to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::tsv:
            return "tsv";
        case ReportFormat::csv:
            return "csv";
        case ReportFormat::md:
            return "md";
    }
    throw std::invalid_argument("unknown report format");
}

std::string render_rank(const std::vector<CovariateEvaluation>& evals,
                        const ReportOptions& options) {
    Table table;
    table.header = {"id", "cp",      "dlogp", "lcl",
                    "kl_x1000", "de", "bf",    "bfdr"};
    for (const CovariateEvaluation& e : evals) {
        std::vector<std::string> row;
        row.push_back(e.id);
        row.push_back(starred(fixed(e.values.cp, 2), e.cp_cat));
        if (e.values.dlogp_applicable) {
            row.push_back(starred(fixed(e.values.dlogp, 1), e.dlogp_cat));
        } else {
            row.push_back("--");
        }
        row.push_back(starred(fixed(e.values.lcl, 3), e.lcl_cat));
        row.push_back(starred(
            std::to_string(std::llround(e.values.kl * 1000.0)), e.kl_cat));
        row.push_back(starred(fixed(e.values.de, 3), e.de_cat));
        row.push_back(bit_pair(e.bf_cat == Category::I || e.bf_cat == Category::II,
                               e.bf_cat == Category::I));
        row.push_back(bit_pair(e.bfdr.in_after, e.bfdr.in_before));
        table.rows.push_back(std::move(row));
    }
    return render(table, options);
}

std::string render_classify(const std::vector<CovariateEvaluation>& evals,
                            const ReportOptions& options) {
    Table table;
    table.header = {"id", "cp", "dlogp", "lcl", "kl", "de", "bf", "bfdr"};
    for (const CovariateEvaluation& e : evals) {
        table.rows.push_back({e.id, std::string{to_string(e.cp_cat)},
                              std::string{to_string(e.dlogp_cat)},
                              std::string{to_string(e.lcl_cat)},
                              std::string{to_string(e.kl_cat)},
                              std::string{to_string(e.de_cat)},
                              std::string{to_string(e.bf_cat)},
                              category_cell(e)});
    }
    return render(table, options);
}

std::string render_sweep(const SweepResult& sweep, const ReportOptions& options) {
    Table table;
    const char* axis_name =
        sweep.axis == SweepAxis::sample_size ? "n" : "pi0";
    table.header = {"id", axis_name, "value", "category"};
    for (const SweepPoint& p : sweep.points) {
        std::vector<std::string> row;
        row.push_back(p.covariate_id);
        row.push_back(general(p.axis_value));
        if (p.applicable && !std::isnan(p.value)) {
            row.push_back(general(p.value));
        } else {
            row.push_back("--");
        }
        row.push_back(std::string{to_string(p.category)});
        table.rows.push_back(std::move(row));
    }
    return render(table, options);
}

std::string render_min_n(const std::vector<MinSampleRow>& rows,
                         const ReportOptions& options) {
    Table table;
    table.header = {"id", "criterion", "target", "attainable", "n", "method"};
    for (const MinSampleRow& r : rows) {
        std::vector<std::string> row;
        row.push_back(r.id);
        row.push_back(std::string{to_string(r.criterion)});
        row.push_back(general(r.target));
        row.push_back(r.result.attainable ? "yes" : "no");
        row.push_back(r.result.attainable ? general(r.result.sample_size)
                                          : "--");
        row.push_back(r.result.method);
        table.rows.push_back(std::move(row));
    }
    return render(table, options);
}

}  // namespace metaplan
