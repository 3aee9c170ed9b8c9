#include "logsim/petrinet.hpp"

#include <algorithm>
#include <set>

#include "logsim/error.hpp"

namespace logsim {

Marking::Marking(std::initializer_list<std::pair<const PlaceId, std::uint32_t>> init) {
    for (const auto& [p, n] : init) {
        add(p, n);
    }
}

void Marking::add(PlaceId p, std::uint32_t n) {
    if (n > 0) {
        tokens_[p] += n;
    }
}

void Marking::remove(PlaceId p, std::uint32_t n) {
    if (n == 0) {
        return;
    }
    auto it = tokens_.find(p);
    if (it == tokens_.end() || it->second < n) {
        throw PreconditionError("not enough tokens in place " + std::to_string(index_of(p)));
    }
    it->second -= n;
    if (it->second == 0) {
        tokens_.erase(it);
    }
}

std::uint32_t Marking::count(PlaceId p) const {
    auto it = tokens_.find(p);
    return it == tokens_.end() ? 0 : it->second;
}

std::uint64_t Marking::total() const {
    std::uint64_t n = 0;
    for (const auto& [p, k] : tokens_) {
        n += k;
    }
    return n;
}

bool Marking::covers(const Marking& other) const {
    return std::all_of(other.tokens_.begin(), other.tokens_.end(),
                       [this](const auto& kv) { return count(kv.first) >= kv.second; });
}

PlaceId PetriNet::Builder::add_place(std::string name) {
    const auto id = static_cast<PlaceId>(places_.size());
    if (!place_names_.emplace(name, id).second) {
        throw StructuralError("duplicate place '" + name + "'");
    }
    places_.push_back(Place{std::move(name), {}, {}});
    return id;
}

TransitionId PetriNet::Builder::add_transition(std::string name, std::optional<std::string> label) {
    const auto id = static_cast<TransitionId>(transitions_.size());
    if (label && label->empty()) {
        throw StructuralError("transition '" + name + "' has an empty label");
    }
    if (!transition_names_.emplace(name, id).second) {
        throw StructuralError("duplicate transition '" + name + "'");
    }
    transitions_.push_back(Transition{std::move(name), std::move(label), {}, {}});
    return id;
}

void PetriNet::Builder::add_arc(PlaceId from, TransitionId to) {
    if (index_of(from) >= places_.size() || index_of(to) >= transitions_.size()) {
        throw StructuralError("arc references an unknown node");
    }
    auto& ins = transitions_[index_of(to)].inputs;
    if (std::find(ins.begin(), ins.end(), from) != ins.end()) {
        throw StructuralError("duplicate arc " + places_[index_of(from)].name + " -> " +
                              transitions_[index_of(to)].name);
    }
    ins.push_back(from);
    places_[index_of(from)].outputs.push_back(to);
}

void PetriNet::Builder::add_arc(TransitionId from, PlaceId to) {
    if (index_of(to) >= places_.size() || index_of(from) >= transitions_.size()) {
        throw StructuralError("arc references an unknown node");
    }
    auto& outs = transitions_[index_of(from)].outputs;
    if (std::find(outs.begin(), outs.end(), to) != outs.end()) {
        throw StructuralError("duplicate arc " + transitions_[index_of(from)].name + " -> " +
                              places_[index_of(to)].name);
    }
    outs.push_back(to);
    places_[index_of(to)].inputs.push_back(from);
}

PetriNet PetriNet::Builder::build() && {
    std::vector<PlaceId> sources;
    std::vector<PlaceId> sinks;
    for (std::size_t i = 0; i < places_.size(); ++i) {
        if (places_[i].inputs.empty()) {
            sources.push_back(static_cast<PlaceId>(i));
        }
        if (places_[i].outputs.empty()) {
            sinks.push_back(static_cast<PlaceId>(i));
        }
    }
    if (sources.size() != 1) {
        throw WorkflowNetError("expected exactly one source place, found " +
                               std::to_string(sources.size()));
    }
    if (sinks.size() != 1) {
        throw WorkflowNetError("expected exactly one sink place, found " +
                               std::to_string(sinks.size()));
    }
    if (sources[0] == sinks[0]) {
        throw WorkflowNetError("source and sink are the same place");
    }

    // Nodes are numbered places first, then transitions.
    const std::size_t np = places_.size();
    const std::size_t nt = transitions_.size();
    auto reach = [&](std::size_t start, bool forward) {
        std::vector<bool> seen(np + nt, false);
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            auto visit = [&](std::size_t m) {
                if (!seen[m]) {
                    seen[m] = true;
                    stack.push_back(m);
                }
            };
            if (n < np) {
                for (auto t : forward ? places_[n].outputs : places_[n].inputs) {
                    visit(np + index_of(t));
                }
            } else {
                for (auto p : forward ? transitions_[n - np].outputs : transitions_[n - np].inputs) {
                    visit(index_of(p));
                }
            }
        }
        return seen;
    };
    const auto from_source = reach(index_of(sources[0]), true);
    const auto to_sink = reach(index_of(sinks[0]), false);
    for (std::size_t n = 0; n < np + nt; ++n) {
        if (!from_source[n] || !to_sink[n]) {
            const std::string what = n < np ? "place '" + places_[n].name + "'"
                                            : "transition '" + transitions_[n - np].name + "'";
            throw WorkflowNetError(what + " is not on a path from source to sink");
        }
    }

    PetriNet net;
    net.places_ = std::move(places_);
    net.transitions_ = std::move(transitions_);
    net.source_ = sources[0];
    net.sink_ = sinks[0];
    return net;
}

std::optional<PlaceId> PetriNet::find_place(std::string_view name) const {
    for (std::size_t i = 0; i < places_.size(); ++i) {
        if (places_[i].name == name) {
            return static_cast<PlaceId>(i);
        }
    }
    return std::nullopt;
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view name) const {
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].name == name) {
            return static_cast<TransitionId>(i);
        }
    }
    return std::nullopt;
}

std::vector<std::string> PetriNet::labels() const {
    std::set<std::string> out;
    for (const auto& t : transitions_) {
        if (t.label) {
            out.insert(*t.label);
        }
    }
    return {out.begin(), out.end()};
}

std::size_t PetriNet::arc_count() const {
    std::size_t n = 0;
    for (const auto& t : transitions_) {
        n += t.inputs.size() + t.outputs.size();
    }
    return n;
}

std::string PetriNet::describe(const Marking& m) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [p, n] : m.tokens()) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += index_of(p) < places_.size() ? places_[index_of(p)].name
                                            : "#" + std::to_string(index_of(p));
        out += ":" + std::to_string(n);
    }
    return out + "}";
}

void validate_marking(const PetriNet& net, const Marking& m) {
    for (const auto& [p, n] : m.tokens()) {
        if (index_of(p) >= net.places().size()) {
            throw StructuralError("marking references unknown place #" + std::to_string(index_of(p)));
        }
    }
}

bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t) {
    const auto& ins = net.transition(t).inputs;
    return std::all_of(ins.begin(), ins.end(), [&](PlaceId p) { return m.count(p) > 0; });
}

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m) {
    validate_marking(net, m);
    std::vector<TransitionId> out;
    for (std::size_t i = 0; i < net.transitions().size(); ++i) {
        const auto t = static_cast<TransitionId>(i);
        if (is_enabled(net, m, t)) {
            out.push_back(t);
        }
    }
    return out;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
    validate_marking(net, m);
    if (index_of(t) >= net.transitions().size()) {
        throw StructuralError("unknown transition #" + std::to_string(index_of(t)));
    }
    if (!is_enabled(net, m, t)) {
        throw PreconditionError("transition '" + net.transition(t).name + "' is not enabled in " +
                                net.describe(m));
    }
    Marking out = m;
    for (auto p : net.transition(t).inputs) {
        out.remove(p);
    }
    for (auto p : net.transition(t).outputs) {
        out.add(p);
    }
    return out;
}

bool is_final(const PetriNet& net, const Marking& m) {
    return m == net.final_marking();
}

bool can_replay(const PetriNet& net, std::span<const std::string> labels) {
    // Depth-first search over (position, marking). Silent transitions can make
    // the state space unbounded, so markings above a token bound are pruned.
    const std::uint64_t token_bound = 2 * net.places().size() + labels.size() + 2;
    std::set<std::pair<std::size_t, Marking>> seen;
    std::vector<std::pair<std::size_t, Marking>> stack{{0, net.initial_marking()}};
    while (!stack.empty()) {
        auto [pos, m] = std::move(stack.back());
        stack.pop_back();
        if (!seen.emplace(pos, m).second) {
            continue;
        }
        if (pos == labels.size() && is_final(net, m)) {
            return true;
        }
        for (std::size_t i = 0; i < net.transitions().size(); ++i) {
            const auto t = static_cast<TransitionId>(i);
            const auto& tr = net.transition(t);
            if (!is_enabled(net, m, t)) {
                continue;
            }
            if (tr.silent()) {
                Marking next = fire(net, m, t);
                if (next.total() <= token_bound) {
                    stack.emplace_back(pos, std::move(next));
                }
            } else if (pos < labels.size() && *tr.label == labels[pos]) {
                stack.emplace_back(pos + 1, fire(net, m, t));
            }
        }
    }
    return false;
}

}  // namespace logsim
