#include "logsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "logsim/error.hpp"
#include "logsim/pipeline.hpp"
#include "logsim/pnml.hpp"
#include "logsim/transform.hpp"

namespace logsim::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ColumnOptions {
    std::string case_column = "case_id";
    std::string activity_column = "activity";
    std::string timestamp_column = "timestamp";
    std::string lifecycle_column;
    std::string start_column;
    std::string timestamp_format{kDefaultTimestampFormat};

    void attach(CLI::App& cmd) {
        cmd.add_option("--case-column", case_column, "Case id column")->capture_default_str();
        cmd.add_option("--activity-column", activity_column, "Activity column")->capture_default_str();
        cmd.add_option("--timestamp-column", timestamp_column, "Timestamp column")->capture_default_str();
        cmd.add_option("--lifecycle-column", lifecycle_column, "Lifecycle (start/complete) column");
        cmd.add_option("--start-column", start_column,
                       "Start timestamp column (default: start_timestamp when present)");
        cmd.add_option("--timestamp-format", timestamp_format, "strftime-style timestamp format")
            ->capture_default_str();
    }
};

struct DiscoverOptions {
    std::string in;
    std::string pnml;
    std::string profile;
    std::string business_hours = "24/7";
    std::optional<double> arrival;
    ColumnOptions columns;
};

struct SimulateOptions {
    std::string in;
    std::string pnml;
    std::string profile;
    std::string out;
    std::size_t cases = 0;
    std::uint64_t seed = 0;
    std::optional<double> arrival;
    std::vector<std::string> durations;
    std::vector<std::string> capacities;
    std::string anchor;
    std::string business_hours;
    std::optional<std::size_t> max_len;
    std::size_t retries = 25;
    bool no_start_column = false;
    ColumnOptions columns;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << data) || !out.flush()) {
        throw Error("cannot write '" + path + "'");
    }
}

EventLog load_log(const std::string& path, const ColumnOptions& opts) {
    const std::string text = read_file(path);
    CsvMapping mapping;
    mapping.case_column = opts.case_column;
    mapping.activity_column = opts.activity_column;
    mapping.timestamp_column = opts.timestamp_column;
    mapping.timestamp_format = opts.timestamp_format;
    if (!opts.lifecycle_column.empty()) {
        mapping.lifecycle_column = opts.lifecycle_column;
    }
    if (!opts.start_column.empty()) {
        mapping.start_column = opts.start_column;
    } else {
        const auto header = csv_header(text);
        if (std::find(header.begin(), header.end(), "start_timestamp") != header.end()) {
            mapping.start_column = "start_timestamp";
        }
    }
    return parse_csv(text, mapping);
}

BusinessCalendar parse_calendar(const std::string& spec) {
    try {
        return BusinessCalendar::parse(spec);
    } catch (const ConfigError& e) {
        throw OptionError(e.what());
    }
}

void print_discovery(std::ostream& out, const EventLog& log, const DiscoveredModel& model) {
    std::size_t labeled = 0;
    for (const auto& t : model.net.transitions()) {
        labeled += t.silent() ? 0 : 1;
    }
    out << "cases: " << log.size() << "\n"
        << "activities: " << log.activity_alphabet().size() << "\n"
        << "net: " << model.net.places().size() << " places, " << labeled << " labeled transitions, "
        << model.net.arc_count() << " arcs\n"
        << "max trace length: " << model.profile.max_len << "\n"
        << "mean inter-arrival (s): " << model.profile.inter_arrival.mean() << "\n"
        << "inter-arrival distribution: " << model.profile.inter_arrival.to_string() << "\n";
}

int cmd_discover(const DiscoverOptions& opts, std::ostream& out) {
    const auto cal = parse_calendar(opts.business_hours);
    const EventLog log = load_log(opts.in, opts.columns);
    const DiscoveredModel model = discover_model(log, cal, opts.arrival);
    write_file(opts.pnml, export_pnml(model.net));
    write_file(opts.profile, format_profile(model.profile));
    print_discovery(out, log, model);
    return kExitOk;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
    const bool one_shot = !opts.in.empty();
    if (one_shot == (!opts.pnml.empty() || !opts.profile.empty())) {
        throw UsageError("give either --in, or both --pnml and --profile");
    }
    if (!one_shot && (opts.pnml.empty() || opts.profile.empty())) {
        throw UsageError("--pnml and --profile must be given together");
    }

    RunOptions run;
    run.cases = opts.cases;
    run.seed = opts.seed;
    run.arrival_mean = opts.arrival;
    run.max_len = opts.max_len;
    run.retries = opts.retries;
    for (const auto& d : opts.durations) {
        run.durations.push_back(split_assignment(d));
    }
    for (const auto& c : opts.capacities) {
        run.capacities.push_back(split_assignment(c));
    }
    if (!opts.anchor.empty()) {
        run.anchor = opts.anchor;
    }
    if (!opts.business_hours.empty()) {
        run.business_hours = opts.business_hours;
    }

    std::optional<PetriNet> net;
    PerfProfile profile;
    if (one_shot) {
        const auto cal = parse_calendar(opts.business_hours.empty() ? "24/7" : opts.business_hours);
        const EventLog log = load_log(opts.in, opts.columns);
        auto model = discover_model(log, cal, opts.arrival);
        net.emplace(std::move(model.net));
        profile = std::move(model.profile);
    } else {
        net.emplace(import_pnml(read_file(opts.pnml)));
        profile = parse_profile(read_file(opts.profile));
    }
    const PreparedRun prepared = prepare_run(profile, run);

    const SimulatedLog sim = simulate_log(*net, profile, prepared.config, prepared.calendar);
    write_file(opts.out, write_csv(sim.log, !opts.no_start_column));

    const RunStats stats = summarize(sim.run);
    out << "cases: " << stats.cases << "\n"
        << "simulated mean inter-arrival (s): " << stats.mean_inter_arrival << "\n"
        << "aborted-case retries: " << stats.retries << "\n";
    for (const auto& [activity, a] : stats.activities) {
        out << "activity " << std::quoted(activity) << ": n=" << a.count << " mean wait (s)=" << a.mean_wait
            << " mean service (s)=" << a.mean_service << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mine a workflow net and performance profile from an event log and simulate new logs"};
    app.name(args.empty() ? "logsim" : args[0]);
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags win");

    DiscoverOptions d;
    auto* discover = app.add_subcommand("discover", "Write a PNML net and a profile mined from a log");
    discover->add_option("--in", d.in, "Input event log (CSV)")->required();
    discover->add_option("--pnml", d.pnml, "Output PNML file")->required();
    discover->add_option("--profile", d.profile, "Output profile file")->required();
    discover->add_option("--business-hours", d.business_hours, "\"24/7\" or e.g. \"Mon-Fri 09:00-17:00\"")
        ->capture_default_str();
    discover->add_option("--arrival", d.arrival, "Mean inter-arrival seconds, used when the log has one case");
    d.columns.attach(*discover);

    SimulateOptions s;
    auto* simulate = app.add_subcommand("simulate", "Simulate a log from a log, or from a net and profile");
    simulate->add_option("--in", s.in, "Input event log (CSV); discovers the model first");
    simulate->add_option("--pnml", s.pnml, "PNML net");
    simulate->add_option("--profile", s.profile, "Profile file");
    simulate->add_option("--out", s.out, "Output CSV")->required();
    simulate->add_option("--cases", s.cases, "Number of cases to simulate")->required();
    simulate->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    simulate->add_option("--arrival", s.arrival, "Mean inter-arrival seconds (normal, sd = mean/10)");
    simulate->add_option("--duration", s.durations,
                         "ACT=SECONDS rescales the activity's distribution to that mean; "
                         "ACT=kind:p1[:p2] replaces it (repeatable)");
    simulate->add_option("--capacity", s.capacities, "ACT=K or ACT=inf; '*=K' sets the default (repeatable)");
    simulate->add_option("--anchor", s.anchor, "Real time of clock 0, \"YYYY-MM-DD HH:MM:SS\"");
    simulate->add_option("--business-hours", s.business_hours, "Overrides the profile calendar");
    simulate->add_option("--max-len", s.max_len, "Maximum labeled activities per case");
    simulate->add_option("--retries", s.retries, "Regenerations allowed per case")->capture_default_str();
    simulate->add_flag("--no-start-column", s.no_start_column, "Write case_id,activity,timestamp only");
    s.columns.attach(*simulate);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (discover->parsed()) {
            return cmd_discover(d, out);
        }
        return cmd_simulate(s, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OptionError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace logsim::cli
