#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "metaplan/config.hpp"
#include "metaplan/io.hpp"
#include "metaplan/pipeline.hpp"
#include "metaplan/planner.hpp"
#include "metaplan/report.hpp"

namespace {

struct CommonArgs {
    std::string input;
    std::string config_path;
    std::string output;
    std::string format = "tsv";
    bool no_version_header = false;
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--input", args.input, "covariate CSV file")
        ->required();
    sub->add_option("--config", args.config_path,
                    "key = value configuration file");
    sub->add_option("--output", args.output,
                    "write the report to this file instead of stdout");
    sub->add_option("--format", args.format,
                    "report format: tsv, csv, or md");
    sub->add_flag("--no-version-header", args.no_version_header,
                  "omit the leading version comment line");
    for (const std::string& key : metaplan::config_keys()) {
        auto [it, inserted] = args.overrides.emplace(key, "");
        (void)inserted;
        sub->add_option("--" + key, it->second,
                        "override configuration key '" + key + "'");
    }
}

// Errors raised while interpreting command-line text are usage errors, not
// numeric domain violations; rebadge them so the exit code comes out right.
template <typename Fn>
auto as_usage_error(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
    }
}

metaplan::RunConfig assemble_config(const CLI::App* sub,
                                    const CommonArgs& args) {
    metaplan::RunConfig cfg;
    if (!args.config_path.empty()) {
        metaplan::load_config_file(args.config_path, cfg);
    }
    for (const std::string& key : metaplan::config_keys()) {
        if (sub->count("--" + key) > 0) {
            as_usage_error([&] {
                metaplan::apply_config_key(cfg, key, args.overrides.at(key));
            });
        }
    }
    return cfg;
}

std::vector<double> prior_grid_from_log10(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !(step > 0.0) ||
        to < from) {
        throw std::invalid_argument(
            "prior sweep needs log10-from <= log10-to and a positive "
            "log10-step");
    }
    const int count =
        static_cast<int>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 0; i < count; ++i) {
        grid.push_back(std::pow(10.0, from + i * step));
    }
    return grid;
}

void emit(const std::string& text, const CommonArgs& args) {
    if (args.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.output);
    if (!out) {
        throw std::invalid_argument("cannot open output file '" + args.output +
                                    "'");
    }
    out << text;
    if (!out) {
        throw std::invalid_argument("failed writing output file '" +
                                    args.output + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "metaplan: project how a planned study would update per-covariate "
        "evidence and score which covariates are worth the investment"};
    app.set_version_flag("--version", "metaplan " METAPLAN_VERSION_STRING);
    app.require_subcommand(1);

    CommonArgs args;

    CLI::App* rank_cmd = app.add_subcommand(
        "rank", "score every covariate and print the summary table");
    CLI::App* classify_cmd = app.add_subcommand(
        "classify", "print the per-criterion category of every covariate");
    CLI::App* sweep_n_cmd = app.add_subcommand(
        "sweep-n", "trace one criterion across a grid of study sample sizes");
    CLI::App* sweep_prior_cmd = app.add_subcommand(
        "sweep-prior",
        "trace the selection state across a grid of prior inclusion "
        "probabilities");
    CLI::App* min_n_cmd = app.add_subcommand(
        "min-n",
        "smallest study sample size at which a criterion reaches a target");

    for (CLI::App* sub : {rank_cmd, classify_cmd, sweep_n_cmd, sweep_prior_cmd,
                          min_n_cmd}) {
        add_common(sub, args);
    }

    std::string criterion_name = "de";
    double n_min = 1000.0;
    double n_max = 200000.0;
    int points = 200;
    sweep_n_cmd->add_option("--criterion", criterion_name,
                            "criterion to trace: cp, dlogp, lcl, kl, de, bf, "
                            "or bfdr");
    sweep_n_cmd->add_option("--n-min", n_min, "smallest sample size");
    sweep_n_cmd->add_option("--n-max", n_max, "largest sample size");
    sweep_n_cmd->add_option("--points", points,
                            "number of log-spaced grid points");

    double log10_from = -16.0;
    double log10_to = -0.2;
    double log10_step = 0.2;
    sweep_prior_cmd->add_option("--log10-from", log10_from,
                                "log10 of the smallest prior probability");
    sweep_prior_cmd->add_option("--log10-to", log10_to,
                                "log10 of the largest prior probability");
    sweep_prior_cmd->add_option("--log10-step", log10_step,
                                "log10 spacing between grid points");

    double target = 0.01;
    min_n_cmd->add_option("--criterion", criterion_name,
                          "criterion to drive to the target: cp, dlogp, lcl, "
                          "kl, de, or bf");
    min_n_cmd->add_option("--target", target,
                          "value the criterion must reach");
    min_n_cmd->add_option("--n-min", n_min, "smallest sample size considered");
    min_n_cmd->add_option("--n-max", n_max, "largest sample size considered");
    min_n_cmd->add_option("--points", points,
                          "number of log-spaced grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();

        metaplan::ReportOptions report_options;
        report_options.format = as_usage_error(
            [&] { return metaplan::report_format_from_string(args.format); });
        report_options.version_header = !args.no_version_header;

        const metaplan::RunConfig cfg = assemble_config(sub, args);
        const std::vector<metaplan::CovariateRecord> records =
            metaplan::load_records(args.input);

        std::string text;
        if (sub == rank_cmd) {
            text = metaplan::render_rank(metaplan::evaluate_records(records, cfg),
                                        report_options);
        } else if (sub == classify_cmd) {
            text = metaplan::render_classify(
                metaplan::evaluate_records(records, cfg), report_options);
        } else if (sub == sweep_n_cmd) {
            metaplan::SweepSpec spec;
            spec.axis = metaplan::SweepAxis::sample_size;
            spec.criterion = as_usage_error(
                [&] { return metaplan::criterion_from_string(criterion_name); });
            spec.grid = metaplan::log_spaced_grid(n_min, n_max, points);
            text = metaplan::render_sweep(
                metaplan::sweep_sample_size(records, cfg, spec), report_options);
        } else if (sub == sweep_prior_cmd) {
            metaplan::SweepSpec spec;
            spec.axis = metaplan::SweepAxis::prior_prob;
            spec.criterion = metaplan::CriterionId::BFDR_INPUT;
            spec.grid = prior_grid_from_log10(log10_from, log10_to, log10_step);
            text = metaplan::render_sweep(
                metaplan::sweep_prior(records, cfg, spec), report_options);
        } else {
            const metaplan::CriterionId criterion = as_usage_error(
                [&] { return metaplan::criterion_from_string(criterion_name); });
            if (criterion == metaplan::CriterionId::BFDR_INPUT) {
                throw std::invalid_argument(
                    "min-n does not apply to the cross-covariate selection; "
                    "pick one of cp, dlogp, lcl, kl, de, bf");
            }
            std::vector<metaplan::MinSampleRow> rows;
            rows.reserve(records.size());
            for (const metaplan::CovariateRecord& record : records) {
                rows.push_back({record.id, criterion, target,
                                metaplan::min_sample_size(record, cfg, criterion,
                                                          target, n_min, n_max,
                                                          points)});
            }
            text = metaplan::render_min_n(rows, report_options);
        }
        emit(text, args);
    } catch (const metaplan::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
