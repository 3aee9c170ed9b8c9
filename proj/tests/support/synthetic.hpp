#pragma once

// Synthetic loan-handling log with eight activities:
//   register ; (check_basic XOR check_full) ; (verify_income AND assess_risk)
//   ; decide ; (approve XOR reject)
// Start and complete events, normal service times, exponential arrivals,
// no resource contention. Generated with the standard library's engines so it
// shares nothing with the simulator under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "logsim/eventlog.hpp"
#include "support/fixtures.hpp"

namespace logsim::testing {

inline const std::map<std::string, double>& synthetic_mean_durations() {
    static const std::map<std::string, double> means = {
        {"register", 300},       {"check_basic", 600},  {"check_full", 1500}, {"verify_income", 1000},
        {"assess_risk", 1100},   {"decide", 450},       {"approve", 200},     {"reject", 150},
    };
    return means;
}

inline EventLog synthetic_loan_log(std::size_t traces, std::uint64_t seed, double mean_gap = 600.0) {
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> gap(1.0 / mean_gap);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const auto& means = synthetic_mean_durations();
    auto duration = [&](const std::string& a) {
        std::normal_distribution<double> d(means.at(a), 0.15 * means.at(a));
        return std::max(1.0, std::round(d(gen)));
    };

    std::vector<Trace> out;
    double arrival = 0.0;
    const Timestamp origin = at(2024, 1, 1, 8, 0, 0);
    for (std::size_t k = 0; k < traces; ++k) {
        if (k > 0) {
            arrival += std::round(gap(gen));
        }
        const std::string id = std::to_string(k + 1);
        std::vector<Event> events;
        auto run = [&](const std::string& a, double start) {
            const double end = start + duration(a);
            events.push_back(Event{id, a, origin + std::chrono::seconds{static_cast<long long>(start)}, Lifecycle::start});
            events.push_back(Event{id, a, origin + std::chrono::seconds{static_cast<long long>(end)}});
            return end;
        };
        double t = run("register", arrival);
        t = run(coin(gen) < 0.6 ? "check_basic" : "check_full", t);
        const double t1 = run("verify_income", t);
        const double t2 = run("assess_risk", t);
        t = run("decide", std::max(t1, t2));
        run(coin(gen) < 0.7 ? "approve" : "reject", t);
        // Events were produced branch by branch; order them by time with
        // completes of equal-time pairs kept in production order.
        std::stable_sort(events.begin(), events.end(),
                         [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
        out.emplace_back(id, std::move(events));
    }
    return EventLog(std::move(out));
}

}  // namespace logsim::testing
