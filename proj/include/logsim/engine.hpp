#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logsim/distribution.hpp"
#include "logsim/perfmine.hpp"
#include "logsim/petrinet.hpp"
#include "logsim/time.hpp"

namespace logsim {

inline constexpr std::uint32_t kUnlimitedCapacity = std::numeric_limits<std::uint32_t>::max();

struct SimConfig {
    std::size_t num_cases = 0;
    std::uint64_t seed = 0;
    std::optional<Distribution> arrival_override;
    std::map<std::string, Distribution> duration_overrides;
    // Per-activity number of parallel servers; kUnlimitedCapacity for no limit.
    std::map<std::string, std::uint32_t> capacities;
    std::uint32_t default_capacity = 1;
    Timestamp anchor{};
    std::optional<std::size_t> max_len_override;
    std::size_t max_case_retries = 25;
};

// Arrival process used when the user overrides the mean inter-arrival time:
// normal with sd = mean / 10.
Distribution arrival_for_mean(double mean_seconds);

// One executed activity, clocks in simulation seconds.
struct SimEventRecord {
    std::string case_id;
    std::string activity;
    double start_clock = 0.0;
    double complete_clock = 0.0;
    double wait = 0.0;  // start_clock - time the case joined the station queue

    bool operator==(const SimEventRecord&) const = default;
};

struct SimulationResult {
    // In completion order.
    std::vector<SimEventRecord> records;
    // Arrival clock of case i + 1.
    std::vector<double> arrival_clocks;
    // Cases aborted (length cap or deadlock) and regenerated.
    std::size_t retries = 0;
};

// Discrete-event run of the net under the profile. Cases arrive by the
// inter-arrival process and each replays the token game from the initial
// marking; labeled transitions queue FIFO at a per-activity station and fire
// on completion, silent transitions fire at once. A case that would exceed the
// length cap or that deadlocks is rolled back, together with everything that
// happened since its arrival, and regenerated with a fresh random stream.
//
// Throws ConfigError when the profile lacks a duration or weight for a label,
// SimulationError when a case exhausts its retries.
SimulationResult simulate(const PetriNet& net, const PerfProfile& profile, const SimConfig& config);

std::vector<SimEventRecord> run_simulation(const PetriNet& net, const PerfProfile& profile,
                                           const SimConfig& config);

// Weighted choice by cumulative-sum inversion over `enabled` in id order.
// Labeled transitions weigh weights[label]; silent ones weigh the mean of all
// weights. `draw` is uniform on [0, 1).
TransitionId select_transition(const PetriNet& net, std::span<const TransitionId> enabled,
                               const std::map<std::string, double>& weights, double draw);

}  // namespace logsim
