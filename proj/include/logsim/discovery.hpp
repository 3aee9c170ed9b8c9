#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "logsim/eventlog.hpp"
#include "logsim/petrinet.hpp"

namespace logsim {

// Directly-follows graph over complete events.
struct Dfg {
    std::map<std::pair<std::string, std::string>, std::size_t> edges;
    std::map<std::string, std::size_t> starts;
    std::map<std::string, std::size_t> ends;
    std::size_t trace_count = 0;

    std::vector<std::string> activities() const;
};

// Throws EmptyLogError on an empty log and PreconditionError if a trace has
// no complete events.
Dfg build_dfg(const EventLog& log);

enum class Relation {
    causal,          // a -> b
    reverse_causal,  // a <- b
    parallel,        // a || b
    unrelated,       // a # b
};

char relation_symbol(Relation r);

class Footprint {
public:
    explicit Footprint(const Dfg& dfg);

    const std::vector<std::string>& activities() const noexcept { return activities_; }
    Relation relation(std::size_t a, std::size_t b) const { return relations_[a * activities_.size() + b]; }
    Relation relation(const std::string& a, const std::string& b) const;
    std::size_t index(const std::string& activity) const;

    // Matrix rendering, one row per activity, for diagnostics.
    std::string to_string() const;

private:
    std::vector<std::string> activities_;
    std::vector<Relation> relations_;
};

// A candidate place of the Alpha algorithm: every input activity causally
// precedes every output activity, and inputs (resp. outputs) are pairwise
// unrelated.
struct AlphaPair {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    auto operator<=>(const AlphaPair&) const = default;
};

// Maximal Alpha pairs, sorted lexicographically by (inputs, outputs).
// Limited to alphabets of at most 64 activities; throws DiscoveryError above.
std::vector<AlphaPair> maximal_alpha_pairs(const Footprint& footprint);

// Classic Alpha algorithm. Places are named "source", "sink" and
// "({inputs},{outputs})"; transitions are named and labeled by activity.
// Throws DiscoveryError when the mined net is not a workflow net.
PetriNet discover_alpha(const EventLog& log);

std::size_t max_trace_length(const EventLog& log);

}  // namespace logsim
