#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "metaplan/config.hpp"
#include "metaplan/io.hpp"
#include "metaplan/pipeline.hpp"
#include "metaplan/planner.hpp"
#include "metaplan/report.hpp"

namespace py = pybind11;

namespace {

metaplan::ReportOptions make_options(const std::string& format,
                                     bool version_header) {
    metaplan::ReportOptions options;
    options.format = metaplan::report_format_from_string(format);
    options.version_header = version_header;
    return options;
}

py::dict categories_dict(const metaplan::CovariateEvaluation& e) {
    py::dict out;
    out["cp"] = metaplan::to_string(e.cp_cat);
    out["dlogp"] = metaplan::to_string(e.dlogp_cat);
    out["lcl"] = metaplan::to_string(e.lcl_cat);
    out["kl"] = metaplan::to_string(e.kl_cat);
    out["de"] = metaplan::to_string(e.de_cat);
    out["bf"] = metaplan::to_string(e.bf_cat);
    out["bfdr"] = metaplan::to_string(e.bfdr.category);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Projects how a planned study would update per-covariate evidence in "
        "a meta-analytic model and scores which covariates reward the "
        "investment.";
    m.attr("__version__") = METAPLAN_VERSION_STRING;

    py::class_<metaplan::CovariateRecord>(m, "CovariateRecord")
        .def(py::init([](std::string id, std::string label,
                         std::string sublabel, double discovery_beta,
                         double discovery_se, double replication_beta,
                         double replication_se, std::optional<double> new_se) {
                 metaplan::CovariateRecord rec;
                 rec.id = std::move(id);
                 rec.label = std::move(label);
                 rec.sublabel = std::move(sublabel);
                 rec.discovery_beta = discovery_beta;
                 rec.discovery_se = discovery_se;
                 rec.replication_beta = replication_beta;
                 rec.replication_se = replication_se;
                 rec.new_se = new_se;
                 return rec;
             }),
             py::arg("id"), py::arg("label") = "", py::arg("sublabel") = "",
             py::arg("discovery_beta") = 0.0, py::arg("discovery_se") = 1.0,
             py::arg("replication_beta") = 0.0,
             py::arg("replication_se") = 1.0,
             py::arg("new_se") = std::nullopt)
        .def_readwrite("id", &metaplan::CovariateRecord::id)
        .def_readwrite("label", &metaplan::CovariateRecord::label)
        .def_readwrite("sublabel", &metaplan::CovariateRecord::sublabel)
        .def_readwrite("discovery_beta",
                       &metaplan::CovariateRecord::discovery_beta)
        .def_readwrite("discovery_se",
                       &metaplan::CovariateRecord::discovery_se)
        .def_readwrite("replication_beta",
                       &metaplan::CovariateRecord::replication_beta)
        .def_readwrite("replication_se",
                       &metaplan::CovariateRecord::replication_se)
        .def_readwrite("new_se", &metaplan::CovariateRecord::new_se)
        .def("__eq__", [](const metaplan::CovariateRecord& a,
                          const metaplan::CovariateRecord& b) { return a == b; })
        .def("__repr__", [](const metaplan::CovariateRecord& rec) {
            return "CovariateRecord(id='" + rec.id + "')";
        });

    py::class_<metaplan::RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_property(
            "delta",
            [](const metaplan::RunConfig& c) { return c.criteria.delta; },
            [](metaplan::RunConfig& c, double v) { c.criteria.delta = v; })
        .def_property(
            "alpha",
            [](const metaplan::RunConfig& c) { return c.criteria.alpha; },
            [](metaplan::RunConfig& c, double v) { c.criteria.alpha = v; })
        .def_property(
            "sigma_init_sq",
            [](const metaplan::RunConfig& c) { return c.criteria.sigma_init_sq; },
            [](metaplan::RunConfig& c, double v) { c.criteria.sigma_init_sq = v; })
        .def_property(
            "omega",
            [](const metaplan::RunConfig& c) { return c.criteria.omega; },
            [](metaplan::RunConfig& c, double v) { c.criteria.omega = v; })
        .def_property(
            "pi0", [](const metaplan::RunConfig& c) { return c.criteria.pi0; },
            [](metaplan::RunConfig& c, double v) { c.criteria.pi0 = v; })
        .def_property(
            "bf_limit",
            [](const metaplan::RunConfig& c) { return c.criteria.bf_limit; },
            [](metaplan::RunConfig& c, double v) { c.criteria.bf_limit = v; })
        .def_property(
            "bfdr_level",
            [](const metaplan::RunConfig& c) { return c.criteria.bfdr_level; },
            [](metaplan::RunConfig& c, double v) { c.criteria.bfdr_level = v; })
        .def_property(
            "evidence_source",
            [](const metaplan::RunConfig& c) {
                return std::string(metaplan::to_string(c.evidence_source));
            },
            [](metaplan::RunConfig& c, const std::string& v) {
                c.evidence_source = metaplan::evidence_source_from_string(v);
            })
        .def_readwrite("gamma_sq", &metaplan::RunConfig::gamma_sq)
        .def_readwrite("n_ref", &metaplan::RunConfig::n_ref)
        .def("set", &metaplan::apply_config_key, py::arg("key"),
             py::arg("value"),
             "Apply one configuration key by name, as a config file would.")
        .def("validate", &metaplan::RunConfig::validate);

    py::class_<metaplan::CovariateEvaluation>(m, "CovariateEvaluation")
        .def_readonly("id", &metaplan::CovariateEvaluation::id)
        .def_readonly("label", &metaplan::CovariateEvaluation::label)
        .def_property_readonly(
            "cp",
            [](const metaplan::CovariateEvaluation& e) { return e.values.cp; })
        .def_property_readonly(
            "dlogp",
            [](const metaplan::CovariateEvaluation& e)
                -> std::optional<double> {
                if (!e.values.dlogp_applicable) {
                    return std::nullopt;
                }
                return e.values.dlogp;
            })
        .def_property_readonly(
            "lcl",
            [](const metaplan::CovariateEvaluation& e) { return e.values.lcl; })
        .def_property_readonly(
            "kl",
            [](const metaplan::CovariateEvaluation& e) { return e.values.kl; })
        .def_property_readonly(
            "de",
            [](const metaplan::CovariateEvaluation& e) { return e.values.de; })
        .def_property_readonly(
            "log_bf_before",
            [](const metaplan::CovariateEvaluation& e) {
                return e.values.bf.log_before;
            })
        .def_property_readonly(
            "log_bf_after",
            [](const metaplan::CovariateEvaluation& e) {
                return e.values.bf.log_after;
            })
        .def_readonly("lfdr_before",
                      &metaplan::CovariateEvaluation::lfdr_before)
        .def_readonly("lfdr_after", &metaplan::CovariateEvaluation::lfdr_after)
        .def_property_readonly("categories", &categories_dict)
        .def_property_readonly(
            "selected_before",
            [](const metaplan::CovariateEvaluation& e) {
                return e.bfdr.in_before;
            })
        .def_property_readonly(
            "selected_after",
            [](const metaplan::CovariateEvaluation& e) {
                return e.bfdr.in_after;
            })
        .def_property_readonly(
            "selection_anomalous",
            [](const metaplan::CovariateEvaluation& e) {
                return e.bfdr.anomalous;
            })
        .def("__repr__", [](const metaplan::CovariateEvaluation& e) {
            return "CovariateEvaluation(id='" + e.id + "')";
        });

    py::class_<metaplan::SweepPoint>(m, "SweepPoint")
        .def_readonly("id", &metaplan::SweepPoint::covariate_id)
        .def_readonly("axis_value", &metaplan::SweepPoint::axis_value)
        .def_property_readonly(
            "value",
            [](const metaplan::SweepPoint& p) -> std::optional<double> {
                if (!p.applicable) {
                    return std::nullopt;
                }
                return p.value;
            })
        .def_property_readonly("category", [](const metaplan::SweepPoint& p) {
            return metaplan::to_string(p.category);
        });

    py::class_<metaplan::MinSampleResult>(m, "MinSampleResult")
        .def_readonly("attainable", &metaplan::MinSampleResult::attainable)
        .def_readonly("sample_size", &metaplan::MinSampleResult::sample_size)
        .def_readonly("method", &metaplan::MinSampleResult::method);

    m.def("load_records", &metaplan::load_records, py::arg("path"),
          "Read covariate records from a CSV file.");
    m.def(
        "serialize_records",
        [](const std::vector<metaplan::CovariateRecord>& records) {
            return metaplan::serialize_records(records);
        },
        py::arg("records"), "Write records back to CSV text.");
    m.def(
        "parse_records",
        [](const std::string& text, const std::string& name) {
            std::istringstream in(text);
            return metaplan::parse_records(in, name);
        },
        py::arg("text"), py::arg("name") = "<string>",
        "Parse covariate records from CSV text.");

    m.def("evaluate_records", &metaplan::evaluate_records, py::arg("records"),
          py::arg("config") = metaplan::RunConfig{},
          py::arg("sample_size") = std::nullopt,
          "Score every record: projected evidence, all seven criteria, "
          "categories, and the cross-covariate selection.");

    m.def(
        "sweep_sample_size",
        [](const std::vector<metaplan::CovariateRecord>& records,
           const metaplan::RunConfig& cfg, const std::string& criterion,
           std::vector<double> grid) {
            metaplan::SweepSpec spec;
            spec.axis = metaplan::SweepAxis::sample_size;
            spec.criterion = metaplan::criterion_from_string(criterion);
            spec.grid = std::move(grid);
            return metaplan::sweep_sample_size(records, cfg, spec).points;
        },
        py::arg("records"), py::arg("config") = metaplan::RunConfig{},
        py::arg("criterion") = "de",
        py::arg("grid") = metaplan::default_sample_size_grid(),
        "Trace one criterion across study sample sizes.");
    m.def(
        "sweep_prior",
        [](const std::vector<metaplan::CovariateRecord>& records,
           const metaplan::RunConfig& cfg, std::vector<double> grid) {
            metaplan::SweepSpec spec;
            spec.axis = metaplan::SweepAxis::prior_prob;
            spec.criterion = metaplan::CriterionId::BFDR_INPUT;
            spec.grid = std::move(grid);
            return metaplan::sweep_prior(records, cfg, spec).points;
        },
        py::arg("records"), py::arg("config") = metaplan::RunConfig{},
        py::arg("grid") = metaplan::default_prior_grid(),
        "Trace the selection state across prior inclusion probabilities.");

    m.def(
        "min_sample_size",
        [](const metaplan::CovariateRecord& record,
           const metaplan::RunConfig& cfg, const std::string& criterion,
           double target, double n_lo, double n_hi, int points) {
            return metaplan::min_sample_size(
                record, cfg, metaplan::criterion_from_string(criterion), target,
                n_lo, n_hi, points);
        },
        py::arg("record"), py::arg("config") = metaplan::RunConfig{},
        py::arg("criterion") = "de", py::arg("target") = 0.01,
        py::arg("n_lo") = 1000.0, py::arg("n_hi") = 200000.0,
        py::arg("points") = 200,
        "Smallest sample size on a log grid at which the criterion reaches "
        "the target.");

    m.def(
        "render_rank",
        [](const std::vector<metaplan::CovariateEvaluation>& evals,
           const std::string& format, bool version_header) {
            return metaplan::render_rank(evals,
                                         make_options(format, version_header));
        },
        py::arg("evaluations"), py::arg("format") = "tsv",
        py::arg("version_header") = true);
    m.def(
        "render_classify",
        [](const std::vector<metaplan::CovariateEvaluation>& evals,
           const std::string& format, bool version_header) {
            return metaplan::render_classify(
                evals, make_options(format, version_header));
        },
        py::arg("evaluations"), py::arg("format") = "tsv",
        py::arg("version_header") = true);
}
