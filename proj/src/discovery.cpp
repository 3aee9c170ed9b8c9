#include "logsim/discovery.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "logsim/error.hpp"

namespace logsim {

std::vector<std::string> Dfg::activities() const {
    std::set<std::string> names;
    for (const auto& [edge, n] : edges) {
        names.insert(edge.first);
        names.insert(edge.second);
    }
    for (const auto& [a, n] : starts) {
        names.insert(a);
    }
    for (const auto& [a, n] : ends) {
        names.insert(a);
    }
    return {names.begin(), names.end()};
}

Dfg build_dfg(const EventLog& log) {
    if (log.empty()) {
        throw EmptyLogError("cannot build a directly-follows graph from an empty log");
    }
    Dfg dfg;
    for (const auto& trace : log.traces()) {
        const auto acts = trace.activities();
        if (acts.empty()) {
            throw PreconditionError("case '" + trace.case_id() + "' has no complete events");
        }
        ++dfg.starts[acts.front()];
        ++dfg.ends[acts.back()];
        for (std::size_t i = 0; i + 1 < acts.size(); ++i) {
            ++dfg.edges[{acts[i], acts[i + 1]}];
        }
        ++dfg.trace_count;
    }
    return dfg;
}

char relation_symbol(Relation r) {
    switch (r) {
        case Relation::causal: return '>';
        case Relation::reverse_causal: return '<';
        case Relation::parallel: return '|';
        case Relation::unrelated: return '#';
    }
    return '?';
}

Footprint::Footprint(const Dfg& dfg) : activities_(dfg.activities()) {
    const std::size_t n = activities_.size();
    relations_.assign(n * n, Relation::unrelated);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const bool ab = dfg.edges.count({activities_[a], activities_[b]}) > 0;
            const bool ba = dfg.edges.count({activities_[b], activities_[a]}) > 0;
            Relation r = Relation::unrelated;
            if (ab && ba) {
                r = Relation::parallel;
            } else if (ab) {
                r = Relation::causal;
            } else if (ba) {
                r = Relation::reverse_causal;
            }
            relations_[a * n + b] = r;
        }
    }
}

std::size_t Footprint::index(const std::string& activity) const {
    auto it = std::lower_bound(activities_.begin(), activities_.end(), activity);
    if (it == activities_.end() || *it != activity) {
        throw PreconditionError("activity '" + activity + "' is not in the footprint");
    }
    return static_cast<std::size_t>(it - activities_.begin());
}

Relation Footprint::relation(const std::string& a, const std::string& b) const {
    return relation(index(a), index(b));
}

std::string Footprint::to_string() const {
    std::string out;
    for (std::size_t a = 0; a < activities_.size(); ++a) {
        out += activities_[a] + ":";
        for (std::size_t b = 0; b < activities_.size(); ++b) {
            out += ' ';
            out += relation_symbol(relation(a, b));
        }
        out += '\n';
    }
    return out;
}

namespace {

using Mask = std::uint64_t;

std::vector<std::string> names_of(Mask m, const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (m >> i & 1U) {
            out.push_back(names[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<AlphaPair> maximal_alpha_pairs(const Footprint& footprint) {
    const auto& names = footprint.activities();
    const std::size_t n = names.size();
    if (n > 64) {
        throw DiscoveryError("alphabet of " + std::to_string(n) +
                             " activities exceeds the Alpha miner limit of 64; supply a PNML net");
    }
    std::vector<Mask> causal(n, 0);
    std::vector<Mask> unrelated(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto r = footprint.relation(a, b);
            if (r == Relation::causal) {
                causal[a] |= Mask{1} << b;
            } else if (r == Relation::unrelated) {
                unrelated[a] |= Mask{1} << b;
            }
        }
    }

    auto can_add_input = [&](Mask in, Mask out, std::size_t x) {
        return (in >> x & 1U) == 0 && (unrelated[x] >> x & 1U) && (in & ~unrelated[x]) == 0 &&
               (out & ~causal[x]) == 0;
    };
    auto can_add_output = [&](Mask in, Mask out, std::size_t y) {
        if ((out >> y & 1U) || !(unrelated[y] >> y & 1U) || (out & ~unrelated[y]) != 0) {
            return false;
        }
        for (std::size_t a = 0; a < n; ++a) {
            if ((in >> a & 1U) && !(causal[a] >> y & 1U)) {
                return false;
            }
        }
        return true;
    };

    // Valid pairs are closed under taking non-empty subsets, so a pair is
    // maximal exactly when no single activity can be added to either side.
    std::set<std::pair<Mask, Mask>> seen;
    std::vector<std::pair<Mask, Mask>> stack;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if ((causal[a] >> b & 1U) && (unrelated[a] >> a & 1U) && (unrelated[b] >> b & 1U)) {
                stack.emplace_back(Mask{1} << a, Mask{1} << b);
            }
        }
    }
    std::vector<AlphaPair> maximal;
    while (!stack.empty()) {
        const auto [in, out] = stack.back();
        stack.pop_back();
        if (!seen.emplace(in, out).second) {
            continue;
        }
        bool extended = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (can_add_input(in, out, x)) {
                extended = true;
                stack.emplace_back(in | Mask{1} << x, out);
            }
            if (can_add_output(in, out, x)) {
                extended = true;
                stack.emplace_back(in, out | Mask{1} << x);
            }
        }
        if (!extended) {
            maximal.push_back(AlphaPair{names_of(in, names), names_of(out, names)});
        }
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

PetriNet discover_alpha(const EventLog& log) {
    const Dfg dfg = build_dfg(log);
    const Footprint footprint(dfg);
    const auto pairs = maximal_alpha_pairs(footprint);

    PetriNet::Builder builder;
    const PlaceId source = builder.add_place("source");
    std::vector<PlaceId> pair_places;
    for (const auto& pair : pairs) {
        std::string name = "({";
        for (std::size_t i = 0; i < pair.inputs.size(); ++i) {
            name += (i ? "," : "") + pair.inputs[i];
        }
        name += "},{";
        for (std::size_t i = 0; i < pair.outputs.size(); ++i) {
            name += (i ? "," : "") + pair.outputs[i];
        }
        name += "})";
        pair_places.push_back(builder.add_place(std::move(name)));
    }
    const PlaceId sink = builder.add_place("sink");

    std::map<std::string, TransitionId> transitions;
    for (const auto& a : footprint.activities()) {
        transitions.emplace(a, builder.add_transition(a, a));
    }
    for (const auto& [a, n] : dfg.starts) {
        builder.add_arc(source, transitions.at(a));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (const auto& a : pairs[i].inputs) {
            builder.add_arc(transitions.at(a), pair_places[i]);
        }
        for (const auto& b : pairs[i].outputs) {
            builder.add_arc(pair_places[i], transitions.at(b));
        }
    }
    for (const auto& [a, n] : dfg.ends) {
        builder.add_arc(transitions.at(a), sink);
    }
    try {
        return std::move(builder).build();
    } catch (const WorkflowNetError& e) {
        throw DiscoveryError(std::string("discovered net is not a workflow net (") + e.what() +
                             "); supply a PNML model instead");
    }
}

std::size_t max_trace_length(const EventLog& log) {
    if (log.empty()) {
        throw EmptyLogError("cannot compute the maximum trace length of an empty log");
    }
    std::size_t longest = 0;
    for (const auto& t : log.traces()) {
        longest = std::max(longest, t.complete_count());
    }
    return longest;
}

}  // namespace logsim
