// Acceptance suite: one PASS/FAIL line per headline criterion, exit status 1
// if any fails. Every tolerance is a named constant below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logsim/calendar.hpp"
#include "logsim/discovery.hpp"
#include "logsim/engine.hpp"
#include "logsim/eventlog.hpp"
#include "logsim/perfmine.hpp"
#include "logsim/pipeline.hpp"
#include "logsim/transform.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace logsim;
using testing::Variant;

constexpr std::size_t kSourceTraces = 200;
constexpr std::uint64_t kSourceSeed = 2024;
constexpr std::size_t kCases = 1000;
constexpr std::uint64_t kRunSeed = 1;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kArrivalMean = 300.0;
constexpr double kArrivalTolerance = 0.05;
constexpr double kDurationTolerance = 0.05;
constexpr std::size_t kQueueCases = 20;
constexpr double kQueueGap = 5.0;
constexpr double kQueueService = 10.0;
constexpr std::size_t kLoopMaxLen = 6;
constexpr std::uint64_t kLoopSeeds = 10;
constexpr int kInversionClocks = 1000;
constexpr int kOracleLogs = 300;
constexpr std::size_t kOracleMaxActivities = 6;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CsvMapping with_start() {
    CsvMapping m;
    m.start_column = "start_timestamp";
    return m;
}

std::set<Variant> variants_of(const EventLog& log) {
    std::set<Variant> out;
    for (const auto& [v, n] : trace_variants(log)) {
        out.insert(v);
    }
    return out;
}

Outcome round_trip() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto source = testing::synthetic_loan_log(kSourceTraces, kSourceSeed);
    const BusinessCalendar always_on;
    const auto model = discover_model(source, always_on);
    RunOptions opts;
    opts.cases = kCases;
    opts.seed = kRunSeed;
    const auto prepared = prepare_run(model.profile, opts);
    const auto sim = simulate_log(model.net, model.profile, prepared.config, prepared.calendar);
    // through the CSV, as a user would
    const auto reread = parse_csv(write_csv(sim.log, true), with_start());
    const auto rediscovered = discover_alpha(reread);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto observed = variants_of(reread);
    std::size_t illegal = 0;
    for (const auto& t : reread.traces()) {
        if (!can_replay(model.net, t.activities())) {
            ++illegal;
        }
    }
    std::set<Variant> original_restricted;
    std::set<Variant> rediscovered_restricted;
    for (const auto& v : observed) {
        if (can_replay(model.net, v)) {
            original_restricted.insert(v);
        }
        if (can_replay(rediscovered, v)) {
            rediscovered_restricted.insert(v);
        }
    }
    // Both nets are loop-free here, so their full languages are finite.
    const bool same_language = testing::language(model.net, model.profile.max_len + 2) ==
                               testing::language(rediscovered, model.profile.max_len + 2);
    const bool eight = model.net.labels().size() == 8 && rediscovered.labels().size() == 8;
    Outcome o;
    o.pass = eight && illegal == 0 && original_restricted == rediscovered_restricted && seconds < kRoundTripSeconds &&
             reread.size() == kCases;
    o.detail = std::to_string(observed.size()) + " variants, " + std::to_string(illegal) +
               " illegal traces, restricted sets " + (original_restricted == rediscovered_restricted ? "equal" : "differ") +
               ", full languages " + (same_language ? "equal" : "differ") + ", " + fmt(seconds) + " s";
    return o;
}

Outcome case_count() {
    const auto source = testing::synthetic_loan_log(kSourceTraces, kSourceSeed);
    const auto model = discover_model(source, BusinessCalendar{});
    RunOptions opts;
    opts.cases = kCases;
    opts.seed = kRunSeed;
    const auto prepared = prepare_run(model.profile, opts);
    const auto sim = simulate_log(model.net, model.profile, prepared.config, prepared.calendar);
    const auto reread = parse_csv(write_csv(sim.log));
    std::set<std::string> ids;
    for (const auto& t : reread.traces()) {
        ids.insert(t.case_id());
    }
    std::set<std::string> expected;
    for (std::size_t k = 1; k <= kCases; ++k) {
        expected.insert(std::to_string(k));
    }
    return {ids == expected, std::to_string(ids.size()) + " distinct ids"};
}

Outcome arrival_fidelity() {
    const auto source = testing::synthetic_loan_log(kSourceTraces, kSourceSeed);
    const auto model = discover_model(source, BusinessCalendar{});
    RunOptions opts;
    opts.cases = kCases;
    opts.seed = kRunSeed;
    opts.arrival_mean = kArrivalMean;
    const auto prepared = prepare_run(model.profile, opts);
    const auto sim = simulate_log(model.net, model.profile, prepared.config, prepared.calendar);
    std::vector<Timestamp> arrivals;
    for (const auto& t : sim.log.traces()) {
        arrivals.push_back(t.events().front().timestamp);
    }
    std::sort(arrivals.begin(), arrivals.end());
    const double mean = static_cast<double>((arrivals.back() - arrivals.front()).count()) /
                        static_cast<double>(arrivals.size() - 1);
    const double rel = std::abs(mean - kArrivalMean) / kArrivalMean;
    return {rel <= kArrivalTolerance, "mean inter-arrival " + fmt(mean) + " s (" + fmt(100 * rel) + "% off)"};
}

Outcome duration_fidelity() {
    const auto source = testing::synthetic_loan_log(kSourceTraces, kSourceSeed);
    const auto model = discover_model(source, BusinessCalendar{});
    RunOptions opts;
    opts.cases = kCases;
    opts.seed = kRunSeed;
    opts.capacities = {{"*", "inf"}};
    const auto prepared = prepare_run(model.profile, opts);
    const auto sim = simulate_log(model.net, model.profile, prepared.config, prepared.calendar);
    const auto reread = parse_csv(write_csv(sim.log, true), with_start());
    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (const auto& t : reread.traces()) {
        std::map<std::string, std::vector<Timestamp>> open;
        for (const auto& e : t.events()) {
            if (e.lifecycle == Lifecycle::start) {
                open[e.activity].push_back(e.timestamp);
            } else {
                auto& q = open[e.activity];
                sums[e.activity].first += static_cast<double>((e.timestamp - q.front()).count());
                sums[e.activity].second += 1;
                q.erase(q.begin());
            }
        }
    }
    bool pass = sums.size() == 8;
    double worst = 0;
    std::string worst_act;
    for (const auto& [act, s] : sums) {
        const double target = model.profile.activity_durations.at(act).mean();
        const double rel = std::abs(s.first / static_cast<double>(s.second) - target) / target;
        if (rel > worst) {
            worst = rel;
            worst_act = act;
        }
        pass = pass && rel <= kDurationTolerance;
    }
    return {pass, std::to_string(sums.size()) + " activities, worst " + worst_act + " " + fmt(100 * worst) + "% off"};
}

Outcome queueing() {
    const auto net = testing::sequence_net({"a", "b"});
    PerfProfile p;
    p.inter_arrival = Distribution::fixed(kQueueGap);
    p.activity_durations = {{"a", Distribution::fixed(kQueueService)}, {"b", Distribution::fixed(kQueueService)}};
    p.transition_weights = {{"a", 1}, {"b", 1}};
    p.max_len = 2;
    SimConfig cfg;
    cfg.num_cases = kQueueCases;
    cfg.seed = kRunSeed;
    auto wait_at_a = [&](const std::vector<SimEventRecord>& rs, std::size_t k) {
        for (const auto& r : rs) {
            if (r.case_id == std::to_string(k) && r.activity == "a") {
                return r.wait;
            }
        }
        return -1.0;
    };
    const auto single = run_simulation(net, p, cfg);
    bool linear = true;
    for (std::size_t k = 1; k <= kQueueCases; ++k) {
        // single server, arrivals every gap, service > gap: case k starts at
        // (k - 1) * service and arrived at (k - 1) * gap
        const double expected = static_cast<double>(k - 1) * (kQueueService - kQueueGap);
        linear = linear && wait_at_a(single, k) == expected;
    }
    cfg.capacities = {{"a", 2}};
    const auto pair = run_simulation(net, p, cfg);
    const double second = wait_at_a(pair, 2);
    return {linear && second == 0.0, std::string("capacity 1 waits ") + (linear ? "exact" : "wrong") +
                                         " for cases 1.." + std::to_string(kQueueCases) + ", capacity 2 case 2 wait " +
                                         fmt(second)};
}

Outcome determinism() {
    const auto source = testing::synthetic_loan_log(kSourceTraces, kSourceSeed);
    const auto model = discover_model(source, BusinessCalendar{});
    auto csv_for = [&](std::uint64_t seed) {
        RunOptions opts;
        opts.cases = kCases;
        opts.seed = seed;
        const auto prepared = prepare_run(model.profile, opts);
        return write_csv(simulate_log(model.net, model.profile, prepared.config, prepared.calendar).log, true);
    };
    const auto a = csv_for(kRunSeed);
    const auto b = csv_for(kRunSeed);
    const auto c = csv_for(kRunSeed + 1);
    return {a == b && a != c, std::string("same seed ") + (a == b ? "identical" : "differs") + ", other seed " +
                                  (a != c ? "differs" : "identical")};
}

Outcome max_len_cap() {
    const auto net = testing::loop_net();
    PerfProfile p;
    p.inter_arrival = Distribution::exponential(1.0 / 60);
    for (const auto& l : net.labels()) {
        p.activity_durations[l] = Distribution::normal(30, 5);
        p.transition_weights[l] = 1;
    }
    p.transition_weights["c"] = 3;
    p.max_len = 100;
    std::size_t longest = 0;
    std::size_t retries = 0;
    bool legal = true;
    for (std::uint64_t seed = 1; seed <= kLoopSeeds; ++seed) {
        SimConfig cfg;
        cfg.num_cases = kCases;
        cfg.seed = seed;
        cfg.max_len_override = kLoopMaxLen;
        cfg.max_case_retries = 100;
        const auto res = simulate(net, p, cfg);
        retries += res.retries;
        std::map<std::string, std::vector<std::string>> traces;
        for (const auto& r : res.records) {
            traces[r.case_id].push_back(r.activity);
        }
        legal = legal && traces.size() == kCases;
        for (const auto& [id, t] : traces) {
            longest = std::max(longest, t.size());
            legal = legal && can_replay(net, t);
        }
    }
    return {legal && longest <= kLoopMaxLen,
            "longest trace " + std::to_string(longest) + ", " + std::to_string(retries) + " regenerated cases"};
}

Outcome inversion() {
    const auto cal = BusinessCalendar::parse("Mon-Fri 09:00-17:00");
    const auto anchor = testing::at(2024, 1, 1, 9, 0, 0);  // a Monday
    std::mt19937_64 gen(kRunSeed);
    std::uniform_int_distribution<long long> clock(0, 5LL * 365 * 86400);
    int bad = 0;
    for (int i = 0; i < kInversionClocks; ++i) {
        const auto c = clock(gen);
        if (business_seconds_between(cal, anchor, to_timestamp(cal, anchor, static_cast<double>(c))) != c) {
            ++bad;
        }
    }
    return {bad == 0, std::to_string(kInversionClocks - bad) + "/" + std::to_string(kInversionClocks) + " exact"};
}

Outcome oracle_suites() {
    std::mt19937_64 gen(kRunSeed);
    int footprint_bad = 0;
    int pairs_bad = 0;
    for (int round = 0; round < kOracleLogs; ++round) {
        const auto alphabet = std::uniform_int_distribution<std::size_t>(1, kOracleMaxActivities)(gen);
        std::vector<std::pair<Variant, int>> spec;
        std::vector<Variant> traces;
        const int count = std::uniform_int_distribution<int>(1, 8)(gen);
        for (int i = 0; i < count; ++i) {
            Variant v;
            const int len = std::uniform_int_distribution<int>(1, 8)(gen);
            for (int j = 0; j < len; ++j) {
                v.emplace_back(1, static_cast<char>('a' + std::uniform_int_distribution<std::size_t>(0, alphabet - 1)(gen)));
            }
            traces.push_back(v);
            spec.emplace_back(v, 1);
        }
        const Footprint fp(build_dfg(testing::log_of(spec)));
        for (const auto& a : fp.activities()) {
            for (const auto& b : fp.activities()) {
                if (relation_symbol(fp.relation(a, b)) != testing::oracle::relation(traces, a, b)) {
                    ++footprint_bad;
                }
            }
        }
        std::set<testing::oracle::Pair> got;
        for (const auto& p : maximal_alpha_pairs(fp)) {
            got.emplace(p.inputs, p.outputs);
        }
        if (got != testing::oracle::maximal_pairs(traces)) {
            ++pairs_bad;
        }
    }

    int iqr_bad = 0;
    for (int round = 0; round < kOracleLogs; ++round) {
        std::vector<double> xs(std::uniform_int_distribution<std::size_t>(1, 60)(gen));
        std::lognormal_distribution<double> heavy(3, 1.3);
        for (auto& x : xs) {
            x = std::round(heavy(gen));
        }
        const double q1 = testing::oracle::quantile(xs, 0.25);
        const double q3 = testing::oracle::quantile(xs, 0.75);
        std::vector<double> expected;
        for (double x : xs) {
            if (x >= q1 - 1.5 * (q3 - q1) && x <= q3 + 1.5 * (q3 - q1)) {
                expected.push_back(x);
            }
        }
        if (expected.empty()) {
            expected = xs;
        }
        if (remove_outliers(xs) != expected) {
            ++iqr_bad;
        }
    }

    // weighted choice among n parallel transitions vs a cumulative-sum table
    int select_bad = 0;
    PetriNet::Builder b;
    const auto src = b.add_place("source");
    const auto sink = b.add_place("sink");
    std::vector<TransitionId> ids;
    std::vector<std::string> labels;
    for (char c = 'a'; c <= 'f'; ++c) {
        labels.emplace_back(1, c);
        ids.push_back(b.add_transition(labels.back(), labels.back()));
        b.add_arc(src, ids.back());
        b.add_arc(ids.back(), sink);
    }
    const auto net = std::move(b).build();
    for (int round = 0; round < kOracleLogs * 10; ++round) {
        std::map<std::string, double> w;
        std::vector<double> table;
        double total = 0;
        for (const auto& l : labels) {
            w[l] = std::uniform_int_distribution<int>(1, 9)(gen);
            total += w[l];
            table.push_back(total);
        }
        const double draw = std::uniform_real_distribution<double>(0, 1)(gen);
        std::size_t expect = 0;
        while (expect + 1 < table.size() && !(draw * total < table[expect])) {
            ++expect;
        }
        if (select_transition(net, ids, w, draw) != ids[expect]) {
            ++select_bad;
        }
    }
    return {footprint_bad == 0 && pairs_bad == 0 && iqr_bad == 0 && select_bad == 0,
            std::to_string(kOracleLogs) + " logs: footprint mismatches " + std::to_string(footprint_bad) +
                ", maximal-pair mismatches " + std::to_string(pairs_bad) + ", IQR mismatches " +
                std::to_string(iqr_bad) + ", selection mismatches " + std::to_string(select_bad)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"round-trip discover/simulate/rediscover", round_trip},
        {"case count 1..1000", case_count},
        {"arrival fidelity (override 300 s, 5%)", arrival_fidelity},
        {"duration fidelity (unlimited capacity, 5%)", duration_fidelity},
        {"queueing from capacity", queueing},
        {"determinism", determinism},
        {"max-length cap (6, 10 seeds)", max_len_cap},
        {"business-time inversion", inversion},
        {"oracle equivalence suites", oracle_suites},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %s  [%s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
