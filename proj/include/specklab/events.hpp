#pragma once

#include "specklab/scenario.hpp"

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <vector>

namespace specklab {

/// Outcome assignment to a subset of measurements, sorted by measurement.
/// Full events are the special case where the domain is a maximal context.
struct GeneralizedEvent {
    std::vector<int> measurements;
    std::vector<int> outcomes;

    auto operator<=>(const GeneralizedEvent&) const = default;

    /// Outcome of measurement m, or -1 when m is outside the domain.
    int outcome_of(int m) const;
};

/// (a|x): a maximal context x with one outcome per measurement of x.
struct Event {
    std::vector<int> context;
    std::vector<int> outcomes;

    auto operator<=>(const Event&) const = default;

    GeneralizedEvent as_generalized() const { return {context, outcomes}; }
};

/// True iff some measurement in both domains receives different outcomes.
/// Disjoint domains are never exclusive.
bool are_exclusive(const GeneralizedEvent& u, const GeneralizedEvent& v);
bool are_exclusive(const Event& u, const Event& v);

/// The vertex set V(H[X,O,M]) in canonical order (context lex, then outcome
/// tuple lex) with constant-time coordinate lookup.
class EventSpace {
public:
    explicit EventSpace(MarginalScenario scenario);

    const MarginalScenario& scenario() const { return scenario_; }
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    /// Coordinate of the event with the given context index and outcome tuple.
    std::size_t index(std::size_t context, const std::vector<int>& outcomes) const;
    std::size_t index(const Event& e) const;
    std::size_t context_offset(std::size_t context) const { return offsets_[context]; }
    std::size_t context_of(std::size_t event) const { return context_of_[event]; }

    /// Coordinates of the events of `context` agreeing with `g` on g's domain.
    /// g's domain must be contained in the context.
    std::vector<std::size_t> refinement(std::size_t context, const GeneralizedEvent& g) const;

    /// Refinement in the lexicographically smallest context containing g's domain.
    std::vector<std::size_t> refinement(const GeneralizedEvent& g) const;

private:
    MarginalScenario scenario_;
    std::vector<Event> events_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> context_of_;
};

std::vector<Event> enumerate_events(const MarginalScenario& s);

struct ExclusivityGraph {
    std::vector<Event> vertices;
    std::vector<boost::dynamic_bitset<>> adjacency;

    bool adjacent(std::size_t u, std::size_t v) const { return adjacency[u][v]; }
    std::size_t degree(std::size_t v) const { return adjacency[v].count(); }
    std::size_t edge_count() const;
};

ExclusivityGraph build_exclusivity_graph(const MarginalScenario& s);

/// True iff the listed vertices are pairwise adjacent.
bool is_clique(const ExclusivityGraph& g, const std::vector<std::size_t>& vertices);

/// Bron-Kerbosch with Tomita pivoting. Each clique sorted; list sorted.
/// Throws SizeLimitError once more than `limit` cliques are found.
std::vector<std::vector<std::size_t>> enumerate_maximal_cliques(const ExclusivityGraph& g,
                                                                std::size_t limit = 1'000'000);

/// Every clique (not only maximal ones), including singletons.
std::vector<std::vector<std::size_t>> enumerate_all_cliques(const ExclusivityGraph& g,
                                                            std::size_t limit = 1'000'000);

struct ProtocolHyperedge {
    std::vector<std::size_t> events;  // sorted event coordinates

    auto operator<=>(const ProtocolHyperedge&) const = default;
};

/// Hyperedges generated by adaptive measurement protocols: starting from the
/// empty record, repeatedly pick a measurement compatible with the ones made
/// so far (possibly depending on the outcomes seen) until the measured set is
/// a maximal context. Deduplicated by event set, sorted.
/// `limit` bounds the number of distinct protocol trees explored.
std::vector<ProtocolHyperedge> enumerate_protocol_hyperedges(const MarginalScenario& s,
                                                             unsigned long long limit = 1'000'000);

}  // namespace specklab
