#include "logsim/engine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <tuple>

#include "logsim/error.hpp"
#include "logsim/random.hpp"

namespace logsim {

Distribution arrival_for_mean(double mean_seconds) {
    if (!(mean_seconds > 0)) {
        throw ConfigError("arrival mean must be positive");
    }
    return Distribution::normal(mean_seconds, mean_seconds / 10.0);
}

namespace {

constexpr std::size_t kSilent = static_cast<std::size_t>(-1);

TransitionId select_weighted(std::span<const TransitionId> enabled, std::span<const double> weight_of,
                             double draw) {
    double total = 0.0;
    for (auto t : enabled) {
        total += weight_of[index_of(t)];
    }
    const double target = draw * total;
    double cumulative = 0.0;
    for (auto t : enabled) {
        cumulative += weight_of[index_of(t)];
        if (target < cumulative) {
            return t;
        }
    }
    return enabled.back();
}

double mean_weight(const std::map<std::string, double>& weights) {
    if (weights.empty()) {
        return 1.0;
    }
    double sum = 0.0;
    for (const auto& [label, w] : weights) {
        sum += w;
    }
    return sum / static_cast<double>(weights.size());
}

std::vector<double> transition_weights(const PetriNet& net, const std::map<std::string, double>& weights) {
    const double silent = mean_weight(weights);
    std::vector<double> out;
    out.reserve(net.transitions().size());
    for (const auto& t : net.transitions()) {
        if (t.silent()) {
            out.push_back(silent);
            continue;
        }
        auto it = weights.find(*t.label);
        if (it == weights.end() || !(it->second > 0)) {
            throw ConfigError("no positive transition weight for activity '" + *t.label + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

enum class EventKind : std::uint8_t { case_arrival, activity_complete };

struct PendingEvent {
    double fire_at = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::case_arrival;
    std::size_t case_index = 0;
    TransitionId transition{};
    double start = 0.0;
    double enqueue = 0.0;
};

struct Later {
    bool operator()(const PendingEvent& a, const PendingEvent& b) const {
        return std::tie(a.fire_at, a.sequence) > std::tie(b.fire_at, b.sequence);
    }
};

struct QueuedCase {
    std::size_t case_index;
    TransitionId transition;
    double enqueue;
};

struct Station {
    std::uint32_t capacity = 1;
    std::uint32_t busy = 0;
    std::deque<QueuedCase> queue;
};

struct CaseState {
    Marking marking;
    SplitMix64 rng;
    std::size_t labeled = 0;
    std::size_t in_flight = 0;
};

struct RawRecord {
    std::size_t case_index;
    std::size_t station;
    double start;
    double complete;
    double wait;
};

// Everything a rollback has to restore. Records live outside and are
// truncated to `records`.
struct State {
    double clock = 0.0;
    std::uint64_t sequence = 0;
    std::priority_queue<PendingEvent, std::vector<PendingEvent>, Later> agenda;
    std::vector<Station> stations;
    std::map<std::size_t, CaseState> active;
    std::size_t records = 0;
};

struct Abort {
    std::size_t case_index;
    std::string reason;
    Marking marking;
};

class Engine {
public:
    Engine(const PetriNet& net, const PerfProfile& profile, const SimConfig& config);

    SimulationResult run();

private:
    void schedule(EventKind kind, double at, std::size_t case_index, TransitionId t = {},
                  double start = 0.0, double enqueue = 0.0);
    void on_arrival(std::size_t k);
    void on_complete(const PendingEvent& ev);
    void advance_case(std::size_t k);
    void enqueue(std::size_t station, QueuedCase q);
    void start_service(std::size_t station, QueuedCase q);
    void roll_back(const Abort& abort);

    const PetriNet& net_;
    const SimConfig& config_;
    std::size_t max_len_;
    std::vector<std::size_t> station_of_;
    std::vector<double> weight_of_;
    std::vector<std::string> station_names_;
    std::vector<Distribution> duration_of_;
    std::vector<double> arrivals_;
    std::vector<std::size_t> attempts_;
    std::vector<RawRecord> records_;
    std::size_t retries_ = 0;
    State state_;
    std::map<std::size_t, State> snapshots_;
};

Engine::Engine(const PetriNet& net, const PerfProfile& profile, const SimConfig& config)
    : net_(net), config_(config), max_len_(config.max_len_override.value_or(profile.max_len)) {
    if (max_len_ < 1) {
        throw ConfigError("maximum trace length must be at least 1");
    }
    if (config.default_capacity < 1) {
        throw ConfigError("default capacity must be at least 1");
    }
    weight_of_ = transition_weights(net, profile.transition_weights);

    station_names_ = net.labels();
    for (const auto& label : station_names_) {
        if (auto it = config.duration_overrides.find(label); it != config.duration_overrides.end()) {
            duration_of_.push_back(it->second);
        } else if (auto jt = profile.activity_durations.find(label); jt != profile.activity_durations.end()) {
            duration_of_.push_back(jt->second);
        } else {
            throw ConfigError("no duration distribution for activity '" + label + "'");
        }
        std::uint32_t capacity = config.default_capacity;
        if (auto ct = config.capacities.find(label); ct != config.capacities.end()) {
            capacity = ct->second;
        }
        if (capacity < 1) {
            throw ConfigError("capacity of '" + label + "' must be at least 1");
        }
        state_.stations.push_back(Station{capacity, 0, {}});
    }
    for (const auto& t : net.transitions()) {
        station_of_.push_back(t.silent() ? kSilent
                                         : static_cast<std::size_t>(
                                               std::lower_bound(station_names_.begin(), station_names_.end(), *t.label) -
                                               station_names_.begin()));
    }

    const Distribution arrival = config.arrival_override.value_or(profile.inter_arrival);
    SplitMix64 arrival_rng(derive_seed(config.seed, 0));
    double clock = 0.0;
    for (std::size_t k = 0; k < config.num_cases; ++k) {
        if (k > 0) {
            clock += sample(arrival, arrival_rng);
        }
        arrivals_.push_back(clock);
    }
    attempts_.assign(config.num_cases, 0);
}

void Engine::schedule(EventKind kind, double at, std::size_t case_index, TransitionId t, double start,
                      double enqueue) {
    state_.agenda.push(PendingEvent{at, state_.sequence++, kind, case_index, t, start, enqueue});
}

void Engine::on_arrival(std::size_t k) {
    if (k + 1 < arrivals_.size()) {
        schedule(EventKind::case_arrival, arrivals_[k + 1], k + 1);
    }
    state_.active.insert_or_assign(
        k, CaseState{net_.initial_marking(), SplitMix64(derive_seed(config_.seed, k + 1, attempts_[k])), 0, 0});
    advance_case(k);
}

void Engine::on_complete(const PendingEvent& ev) {
    const std::size_t s = station_of_[index_of(ev.transition)];
    records_.push_back(RawRecord{ev.case_index, s, ev.start, state_.clock, ev.start - ev.enqueue});
    auto& station = state_.stations[s];
    --station.busy;
    if (!station.queue.empty()) {
        const QueuedCase next = station.queue.front();
        station.queue.pop_front();
        start_service(s, next);
    }
    auto& c = state_.active.at(ev.case_index);
    for (auto p : net_.transition(ev.transition).outputs) {
        c.marking.add(p);
    }
    --c.in_flight;
    advance_case(ev.case_index);
}

void Engine::advance_case(std::size_t k) {
    auto& c = state_.active.at(k);
    const std::size_t silent_limit = 4 * net_.transitions().size() + 16;
    std::size_t silent_steps = 0;
    std::vector<TransitionId> ready;
    while (true) {
        ready.clear();
        for (std::size_t i = 0; i < net_.transitions().size(); ++i) {
            const auto t = static_cast<TransitionId>(i);
            if (is_enabled(net_, c.marking, t)) {
                ready.push_back(t);
            }
        }
        if (ready.empty()) {
            break;
        }
        const TransitionId t = select_weighted(ready, weight_of_, c.rng.uniform());
        const auto& tr = net_.transition(t);
        if (tr.silent()) {
            if (++silent_steps > silent_limit) {
                throw Abort{k, "silent transitions do not terminate", c.marking};
            }
            for (auto p : tr.inputs) {
                c.marking.remove(p);
            }
            for (auto p : tr.outputs) {
                c.marking.add(p);
            }
            continue;
        }
        if (c.labeled + 1 > max_len_) {
            throw Abort{k, "trace would exceed " + std::to_string(max_len_) + " activities", c.marking};
        }
        for (auto p : tr.inputs) {
            c.marking.remove(p);
        }
        ++c.labeled;
        ++c.in_flight;
        enqueue(station_of_[index_of(t)], QueuedCase{k, t, state_.clock});
    }
    if (c.in_flight == 0) {
        if (!is_final(net_, c.marking)) {
            throw Abort{k, "deadlock", c.marking};
        }
        state_.active.erase(k);
        snapshots_.erase(k);
    }
}

void Engine::enqueue(std::size_t station, QueuedCase q) {
    auto& st = state_.stations[station];
    if (st.busy < st.capacity) {
        start_service(station, q);
    } else {
        st.queue.push_back(q);
    }
}

void Engine::start_service(std::size_t station, QueuedCase q) {
    ++state_.stations[station].busy;
    auto& c = state_.active.at(q.case_index);
    const double duration = sample(duration_of_[station], c.rng);
    schedule(EventKind::activity_complete, state_.clock + duration, q.case_index, q.transition, state_.clock,
             q.enqueue);
}

void Engine::roll_back(const Abort& abort) {
    if (attempts_[abort.case_index] >= config_.max_case_retries) {
        throw SimulationError("case " + std::to_string(abort.case_index + 1) + " exhausted " +
                              std::to_string(config_.max_case_retries) + " retries (" + abort.reason +
                              "); last marking " + net_.describe(abort.marking));
    }
    ++attempts_[abort.case_index];
    ++retries_;
    auto it = snapshots_.find(abort.case_index);
    state_ = it->second;
    snapshots_.erase(it, snapshots_.end());
    records_.resize(state_.records);
}

SimulationResult Engine::run() {
    if (!arrivals_.empty()) {
        schedule(EventKind::case_arrival, arrivals_[0], 0);
    }
    while (!state_.agenda.empty()) {
        const PendingEvent ev = state_.agenda.top();
        if (ev.kind == EventKind::case_arrival) {
            state_.records = records_.size();
            snapshots_.insert_or_assign(ev.case_index, state_);
        }
        state_.agenda.pop();
        state_.clock = ev.fire_at;
        try {
            if (ev.kind == EventKind::case_arrival) {
                on_arrival(ev.case_index);
            } else {
                on_complete(ev);
            }
        } catch (const Abort& abort) {
            roll_back(abort);
        }
    }

    SimulationResult result;
    result.records.reserve(records_.size());
    for (const auto& r : records_) {
        result.records.push_back(SimEventRecord{std::to_string(r.case_index + 1), station_names_[r.station],
                                                r.start, r.complete, r.wait});
    }
    result.arrival_clocks = arrivals_;
    result.retries = retries_;
    return result;
}

}  // namespace

TransitionId select_transition(const PetriNet& net, std::span<const TransitionId> enabled,
                               const std::map<std::string, double>& weights, double draw) {
    if (enabled.empty()) {
        throw PreconditionError("select_transition needs at least one enabled transition");
    }
    std::vector<TransitionId> sorted(enabled.begin(), enabled.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> weight_of(net.transitions().size(), 0.0);
    const double silent = mean_weight(weights);
    for (auto t : sorted) {
        const auto& tr = net.transition(t);
        if (tr.silent()) {
            weight_of[index_of(t)] = silent;
            continue;
        }
        auto it = weights.find(*tr.label);
        if (it == weights.end() || !(it->second > 0)) {
            throw ConfigError("no positive transition weight for activity '" + *tr.label + "'");
        }
        weight_of[index_of(t)] = it->second;
    }
    return select_weighted(sorted, weight_of, draw);
}

SimulationResult simulate(const PetriNet& net, const PerfProfile& profile, const SimConfig& config) {
    return Engine(net, profile, config).run();
}

std::vector<SimEventRecord> run_simulation(const PetriNet& net, const PerfProfile& profile,
                                           const SimConfig& config) {
    return simulate(net, profile, config).records;
}

}  // namespace logsim
