#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logsim {

enum class PlaceId : std::uint32_t {};
enum class TransitionId : std::uint32_t {};

constexpr std::size_t index_of(PlaceId p) noexcept { return static_cast<std::size_t>(p); }
constexpr std::size_t index_of(TransitionId t) noexcept { return static_cast<std::size_t>(t); }

// Token multiset over places. Keys with zero tokens are never stored.
class Marking {
public:
    Marking() = default;
    Marking(std::initializer_list<std::pair<const PlaceId, std::uint32_t>> init);

    void add(PlaceId p, std::uint32_t n = 1);
    // Throws PreconditionError if fewer than n tokens are present.
    void remove(PlaceId p, std::uint32_t n = 1);

    std::uint32_t count(PlaceId p) const;
    std::uint64_t total() const;
    bool empty() const noexcept { return tokens_.empty(); }
    // Sub-multiset test: every place holds at least as many tokens in *this.
    bool covers(const Marking& other) const;

    const std::map<PlaceId, std::uint32_t>& tokens() const noexcept { return tokens_; }

    bool operator==(const Marking&) const = default;
    auto operator<=>(const Marking&) const = default;

private:
    std::map<PlaceId, std::uint32_t> tokens_;
};

struct Place {
    std::string name;
    std::vector<TransitionId> inputs;   // transitions producing into this place
    std::vector<TransitionId> outputs;  // transitions consuming from this place
};

struct Transition {
    std::string name;
    std::optional<std::string> label;  // absent = silent
    std::vector<PlaceId> inputs;
    std::vector<PlaceId> outputs;

    bool silent() const noexcept { return !label.has_value(); }
};

// Ordinary (arc weight 1) labeled workflow net. Immutable once built; the
// builder verifies the workflow-net shape.
class PetriNet {
public:
    class Builder {
    public:
        PlaceId add_place(std::string name);
        TransitionId add_transition(std::string name, std::optional<std::string> label);
        void add_arc(PlaceId from, TransitionId to);
        void add_arc(TransitionId from, PlaceId to);

        // Infers source (no in-arcs) and sink (no out-arcs), both unique, and
        // checks every node lies on a source-to-sink path.
        // Throws WorkflowNetError otherwise.
        PetriNet build() &&;

    private:
        std::vector<Place> places_;
        std::vector<Transition> transitions_;
        std::map<std::string, PlaceId, std::less<>> place_names_;
        std::map<std::string, TransitionId, std::less<>> transition_names_;
    };

    const std::vector<Place>& places() const noexcept { return places_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }
    const Place& place(PlaceId p) const { return places_.at(index_of(p)); }
    const Transition& transition(TransitionId t) const { return transitions_.at(index_of(t)); }

    PlaceId source() const noexcept { return source_; }
    PlaceId sink() const noexcept { return sink_; }
    Marking initial_marking() const { return Marking{{source_, 1}}; }
    Marking final_marking() const { return Marking{{sink_, 1}}; }

    std::optional<PlaceId> find_place(std::string_view name) const;
    std::optional<TransitionId> find_transition(std::string_view name) const;
    // Distinct labels of visible transitions, sorted.
    std::vector<std::string> labels() const;
    std::size_t arc_count() const;

    std::string describe(const Marking& m) const;

private:
    PetriNet() = default;

    std::vector<Place> places_;
    std::vector<Transition> transitions_;
    PlaceId source_{};
    PlaceId sink_{};
};

// Throws StructuralError if m references a place outside the net.
void validate_marking(const PetriNet& net, const Marking& m);

// Transitions whose every input place is marked, in id order.
std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m);
bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t);
// Throws PreconditionError if t is not enabled.
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);
bool is_final(const PetriNet& net, const Marking& m);

// True if the label sequence is a firing sequence from the initial to the
// final marking, with silent transitions fired freely in between.
bool can_replay(const PetriNet& net, std::span<const std::string> labels);

}  // namespace logsim
