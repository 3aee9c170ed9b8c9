#pragma once

// Test-only helpers: log builders, small nets, and brute-force oracles that
// deliberately avoid the library code paths they are used to check.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "logsim/eventlog.hpp"
#include "logsim/petrinet.hpp"

namespace logsim::testing {

using Variant = std::vector<std::string>;

inline Timestamp at(int y, unsigned m, unsigned d, int hh = 0, int mm = 0, int ss = 0) {
    using namespace std::chrono;
    return sys_days{year{y} / month{m} / day{d}} + hours{hh} + minutes{mm} + seconds{ss};
}

// Complete-only log: every variant repeated `count` times, cases "1".."N",
// events one minute apart, cases one hour apart.
inline EventLog log_of(const std::vector<std::pair<Variant, int>>& variants) {
    std::vector<Trace> traces;
    Timestamp t0 = at(2024, 1, 1, 0, 0, 0);
    int case_no = 0;
    for (const auto& [activities, count] : variants) {
        for (int i = 0; i < count; ++i) {
            const std::string id = std::to_string(++case_no);
            std::vector<Event> events;
            Timestamp t = t0 + std::chrono::hours{case_no};
            for (const auto& a : activities) {
                events.push_back(Event{id, a, t});
                t += std::chrono::minutes{1};
            }
            traces.emplace_back(id, std::move(events));
        }
    }
    return EventLog(std::move(traces));
}

// source -> t1 -> p1 -> t2 -> ... -> sink, transitions labeled in order.
inline PetriNet sequence_net(const std::vector<std::string>& labels) {
    PetriNet::Builder b;
    PlaceId prev = b.add_place("source");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto t = b.add_transition(labels[i], labels[i]);
        b.add_arc(prev, t);
        prev = b.add_place(i + 1 == labels.size() ? "sink" : "p" + std::to_string(i + 1));
        b.add_arc(t, prev);
    }
    return std::move(b).build();
}

// a ; (b c)* loop: source -a-> p1 -b-> p2 -c-> p1, p2 -d-> sink.
// Traces are a b (c b)^k d, of length 3 + 2k.
inline PetriNet loop_net() {
    PetriNet::Builder b;
    const auto source = b.add_place("source");
    const auto p1 = b.add_place("p1");
    const auto p2 = b.add_place("p2");
    const auto sink = b.add_place("sink");
    const auto ta = b.add_transition("a", "a");
    const auto tb = b.add_transition("b", "b");
    const auto tc = b.add_transition("c", "c");
    const auto td = b.add_transition("d", "d");
    b.add_arc(source, ta);
    b.add_arc(ta, p1);
    b.add_arc(p1, tb);
    b.add_arc(tb, p2);
    b.add_arc(p2, tc);
    b.add_arc(tc, p1);
    b.add_arc(p2, td);
    b.add_arc(td, sink);
    return std::move(b).build();
}

// Labeled firing sequences from the initial to the final marking of length at
// most max_len, by exhaustive search (silent transitions not supported).
inline std::set<Variant> language(const PetriNet& net, std::size_t max_len) {
    std::set<Variant> out;
    std::vector<std::pair<std::map<std::size_t, int>, Variant>> stack;
    std::map<std::size_t, int> initial{{index_of(net.source()), 1}};
    stack.emplace_back(initial, Variant{});
    while (!stack.empty()) {
        auto [marking, word] = stack.back();
        stack.pop_back();
        if (marking == std::map<std::size_t, int>{{index_of(net.sink()), 1}}) {
            out.insert(word);
        }
        if (word.size() == max_len) {
            continue;
        }
        for (const auto& t : net.transitions()) {
            bool ok = std::all_of(t.inputs.begin(), t.inputs.end(), [&](PlaceId p) {
                auto it = marking.find(index_of(p));
                return it != marking.end() && it->second > 0;
            });
            if (!ok) {
                continue;
            }
            auto next = marking;
            for (auto p : t.inputs) {
                if (--next[index_of(p)] == 0) {
                    next.erase(index_of(p));
                }
            }
            for (auto p : t.outputs) {
                ++next[index_of(p)];
            }
            auto w = word;
            w.push_back(t.label.value_or(""));
            stack.emplace_back(std::move(next), std::move(w));
        }
    }
    return out;
}

namespace oracle {

// Footprint symbol for (a, b) straight from the traces: '>' causal, '<'
// reverse, '|' parallel, '#' unrelated.
inline char relation(const std::vector<Variant>& traces, const std::string& a, const std::string& b) {
    bool ab = false;
    bool ba = false;
    for (const auto& t : traces) {
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            ab = ab || (t[i] == a && t[i + 1] == b);
            ba = ba || (t[i] == b && t[i + 1] == a);
        }
    }
    if (ab && ba) {
        return '|';
    }
    if (ab) {
        return '>';
    }
    if (ba) {
        return '<';
    }
    return '#';
}

using Pair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Every (A, B) over all subset pairs, filtered to valid, then to maximal.
inline std::set<Pair> maximal_pairs(const std::vector<Variant>& traces) {
    std::set<std::string> alphabet;
    for (const auto& t : traces) {
        alphabet.insert(t.begin(), t.end());
    }
    const std::vector<std::string> acts(alphabet.begin(), alphabet.end());
    const std::size_t n = acts.size();
    auto subset = [&](unsigned mask) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) {
                out.push_back(acts[i]);
            }
        }
        return out;
    };
    auto valid = [&](const std::vector<std::string>& A, const std::vector<std::string>& B) {
        for (const auto& a : A) {
            for (const auto& b : B) {
                if (relation(traces, a, b) != '>') {
                    return false;
                }
            }
        }
        for (const auto& x : A) {
            for (const auto& y : A) {
                if (relation(traces, x, y) != '#') {
                    return false;
                }
            }
        }
        for (const auto& x : B) {
            for (const auto& y : B) {
                if (relation(traces, x, y) != '#') {
                    return false;
                }
            }
        }
        return true;
    };
    std::vector<std::pair<unsigned, unsigned>> all;
    for (unsigned a = 1; a < (1U << n); ++a) {
        for (unsigned b = 1; b < (1U << n); ++b) {
            if (valid(subset(a), subset(b))) {
                all.emplace_back(a, b);
            }
        }
    }
    std::set<Pair> out;
    for (const auto& [a, b] : all) {
        const bool dominated = std::any_of(all.begin(), all.end(), [&](const auto& other) {
            return (other.first | a) == other.first && (other.second | b) == other.second &&
                   other != std::make_pair(a, b);
        });
        if (!dominated) {
            out.emplace(subset(a), subset(b));
        }
    }
    return out;
}

// Linear-interpolation quantile written from the textbook definition:
// position h = (n - 1) q on the 1-based order statistics x_(1..n).
inline double quantile(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    const double h = (static_cast<double>(xs.size()) - 1.0) * q + 1.0;
    const auto j = static_cast<std::size_t>(h);  // 1-based floor
    const double g = h - static_cast<double>(j);
    const double lo = xs[j - 1];
    const double hi = j < xs.size() ? xs[j] : xs[j - 1];
    return lo + g * (hi - lo);
}

}  // namespace oracle
}  // namespace logsim::testing
