// Thin Python surface over the pipeline: text in, text out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "logsim/error.hpp"
#include "logsim/eventlog.hpp"
#include "logsim/pipeline.hpp"
#include "logsim/pnml.hpp"

namespace py = pybind11;

namespace {

using namespace logsim;

struct Columns {
    std::string case_column;
    std::string activity_column;
    std::string timestamp_column;
    std::optional<std::string> lifecycle_column;
    std::optional<std::string> start_column;
    std::string timestamp_format;
};

EventLog read_log(const std::string& csv, const Columns& c) {
    CsvMapping m;
    m.case_column = c.case_column;
    m.activity_column = c.activity_column;
    m.timestamp_column = c.timestamp_column;
    m.lifecycle_column = c.lifecycle_column;
    m.timestamp_format = c.timestamp_format;
    m.start_column = c.start_column;
    if (!m.start_column) {
        const auto header = csv_header(csv);
        if (std::find(header.begin(), header.end(), "start_timestamp") != header.end()) {
            m.start_column = "start_timestamp";
        }
    }
    return parse_csv(csv, m);
}

RunOptions run_options(std::size_t cases, std::uint64_t seed, std::optional<double> arrival,
                       const std::map<std::string, std::string>& durations,
                       const std::map<std::string, std::string>& capacities, std::optional<std::string> anchor,
                       std::optional<std::string> business_hours, std::optional<std::size_t> max_len,
                       std::size_t retries) {
    RunOptions r;
    r.cases = cases;
    r.seed = seed;
    r.arrival_mean = arrival;
    r.durations.assign(durations.begin(), durations.end());
    r.capacities.assign(capacities.begin(), capacities.end());
    r.anchor = std::move(anchor);
    r.business_hours = std::move(business_hours);
    r.max_len = max_len;
    r.retries = retries;
    return r;
}

std::string run(const PetriNet& net, const PerfProfile& profile, const RunOptions& options, bool include_start) {
    const auto prepared = prepare_run(profile, options);
    return write_csv(simulate_log(net, profile, prepared.config, prepared.calendar).log, include_start);
}

}  // namespace

PYBIND11_MODULE(_logsim, m) {
    m.doc() = "Event log simulation from discovered Petri nets";
    m.attr("__version__") = LOGSIM_VERSION;
    py::register_exception<Error>(m, "LogsimError", PyExc_ValueError);

    py::class_<Columns>(m, "Columns")
        .def(py::init<std::string, std::string, std::string, std::optional<std::string>, std::optional<std::string>,
                      std::string>(),
             py::arg("case_column") = "case_id", py::arg("activity_column") = "activity",
             py::arg("timestamp_column") = "timestamp", py::arg("lifecycle_column") = py::none(),
             py::arg("start_column") = py::none(), py::arg("timestamp_format") = std::string(kDefaultTimestampFormat));

    m.def(
        "discover",
        [](const std::string& csv, const std::string& business_hours, std::optional<double> arrival,
           const Columns& columns) {
            py::gil_scoped_release release;
            const auto model = discover_model(read_log(csv, columns), BusinessCalendar::parse(business_hours), arrival);
            return std::make_pair(export_pnml(model.net), format_profile(model.profile));
        },
        py::arg("csv"), py::arg("business_hours") = "24/7", py::arg("arrival") = py::none(),
        py::arg("columns") = Columns{"case_id", "activity", "timestamp", std::nullopt, std::nullopt,
                                     std::string(kDefaultTimestampFormat)},
        "Mine a net and profile from CSV text. Returns (pnml, profile) texts.");

    m.def(
        "simulate",
        [](const std::string& pnml, const std::string& profile, std::size_t cases, std::uint64_t seed,
           std::optional<double> arrival, const std::map<std::string, std::string>& durations,
           const std::map<std::string, std::string>& capacities, std::optional<std::string> anchor,
           std::optional<std::string> business_hours, std::optional<std::size_t> max_len, std::size_t retries,
           bool include_start) {
            py::gil_scoped_release release;
            const auto options = run_options(cases, seed, arrival, durations, capacities, std::move(anchor),
                                             std::move(business_hours), max_len, retries);
            return run(import_pnml(pnml), parse_profile(profile), options, include_start);
        },
        py::arg("pnml"), py::arg("profile"), py::arg("cases"), py::kw_only(), py::arg("seed") = 0,
        py::arg("arrival") = py::none(), py::arg("durations") = std::map<std::string, std::string>{},
        py::arg("capacities") = std::map<std::string, std::string>{}, py::arg("anchor") = py::none(),
        py::arg("business_hours") = py::none(), py::arg("max_len") = py::none(), py::arg("retries") = 25,
        py::arg("include_start") = true, "Simulate from PNML and profile texts. Returns CSV text.");

    m.def(
        "simulate_log",
        [](const std::string& csv, std::size_t cases, std::uint64_t seed, std::optional<double> arrival,
           const std::map<std::string, std::string>& durations, const std::map<std::string, std::string>& capacities,
           std::optional<std::string> anchor, const std::string& business_hours, std::optional<std::size_t> max_len,
           std::size_t retries, bool include_start, const Columns& columns) {
            py::gil_scoped_release release;
            const auto model = discover_model(read_log(csv, columns), BusinessCalendar::parse(business_hours), arrival);
            const auto options = run_options(cases, seed, arrival, durations, capacities, std::move(anchor),
                                             std::nullopt, max_len, retries);
            return run(model.net, model.profile, options, include_start);
        },
        py::arg("csv"), py::arg("cases"), py::kw_only(), py::arg("seed") = 0, py::arg("arrival") = py::none(),
        py::arg("durations") = std::map<std::string, std::string>{},
        py::arg("capacities") = std::map<std::string, std::string>{}, py::arg("anchor") = py::none(),
        py::arg("business_hours") = "24/7", py::arg("max_len") = py::none(), py::arg("retries") = 25,
        py::arg("include_start") = true,
        py::arg("columns") = Columns{"case_id", "activity", "timestamp", std::nullopt, std::nullopt,
                                     std::string(kDefaultTimestampFormat)},
        "Discover from CSV text and simulate in one step. Returns CSV text.");
}
