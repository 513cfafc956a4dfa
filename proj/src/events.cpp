#include "specklab/events.hpp"

#include "specklab/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace specklab {

int GeneralizedEvent::outcome_of(int m) const
{
    auto it = std::lower_bound(measurements.begin(), measurements.end(), m);
    if (it == measurements.end() || *it != m)
        return -1;
    return outcomes[static_cast<std::size_t>(it - measurements.begin())];
}

namespace {

template <class A, class B>
bool exclusive_on_shared(const std::vector<int>& ma, const A& oa, const std::vector<int>& mb, const B& ob)
{
    std::size_t i = 0, j = 0;
    while (i < ma.size() && j < mb.size()) {
        if (ma[i] < mb[j]) {
            ++i;
        } else if (mb[j] < ma[i]) {
            ++j;
        } else {
            if (oa[i] != ob[j])
                return true;
            ++i;
            ++j;
        }
    }
    return false;
}

}  // namespace

bool are_exclusive(const GeneralizedEvent& u, const GeneralizedEvent& v)
{
    return exclusive_on_shared(u.measurements, u.outcomes, v.measurements, v.outcomes);
}

bool are_exclusive(const Event& u, const Event& v)
{
    return exclusive_on_shared(u.context, u.outcomes, v.context, v.outcomes);
}

EventSpace::EventSpace(MarginalScenario scenario) : scenario_(std::move(scenario))
{
    const int k = scenario_.outcomes;
    for (std::size_t c = 0; c < scenario_.contexts.size(); ++c) {
        offsets_.push_back(events_.size());
        const auto& ctx = scenario_.contexts[c];
        std::vector<int> tuple(ctx.size(), 0);
        bool done = false;
        while (!done) {
            events_.push_back(Event{ctx, tuple});
            context_of_.push_back(c);
            // odometer, last position fastest => lexicographic order
            int pos = static_cast<int>(tuple.size()) - 1;
            while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == k) {
                tuple[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            done = pos < 0;
        }
    }
}

std::size_t EventSpace::index(std::size_t context, const std::vector<int>& outcomes) const
{
    std::size_t local = 0;
    for (int a : outcomes)
        local = local * static_cast<std::size_t>(scenario_.outcomes) + static_cast<std::size_t>(a);
    return offsets_.at(context) + local;
}

std::size_t EventSpace::index(const Event& e) const
{
    auto it = std::lower_bound(scenario_.contexts.begin(), scenario_.contexts.end(), e.context);
    if (it == scenario_.contexts.end() || *it != e.context)
        throw ConstraintViolation("event context is not a maximal context of the scenario");
    for (int a : e.outcomes)
        if (a < 0 || a >= scenario_.outcomes)
            throw ConstraintViolation("event outcome out of range");
    if (e.outcomes.size() != e.context.size())
        throw ConstraintViolation("event outcome tuple does not match its context");
    return index(static_cast<std::size_t>(it - scenario_.contexts.begin()), e.outcomes);
}

std::vector<std::size_t> EventSpace::refinement(std::size_t context, const GeneralizedEvent& g) const
{
    const auto& ctx = scenario_.contexts.at(context);
    if (!is_subset(g.measurements, ctx))
        throw ConstraintViolation("generalized event domain not contained in the context");
    std::vector<std::size_t> out;
    const std::size_t begin = offsets_[context];
    const std::size_t end = context + 1 < offsets_.size() ? offsets_[context + 1] : events_.size();
    for (std::size_t e = begin; e < end; ++e) {
        const auto& ev = events_[e];
        bool match = true;
        for (std::size_t i = 0; i < ctx.size() && match; ++i) {
            int want = g.outcome_of(ctx[i]);
            if (want >= 0 && ev.outcomes[i] != want)
                match = false;
        }
        if (match)
            out.push_back(e);
    }
    return out;
}

std::vector<std::size_t> EventSpace::refinement(const GeneralizedEvent& g) const
{
    int c = smallest_context_containing(scenario_, g.measurements);
    if (c < 0)
        throw ConstraintViolation("generalized event domain is not contained in any context");
    return refinement(static_cast<std::size_t>(c), g);
}

std::vector<Event> enumerate_events(const MarginalScenario& s)
{
    return EventSpace(s).events();
}

std::size_t ExclusivityGraph::edge_count() const
{
    std::size_t total = 0;
    for (const auto& row : adjacency)
        total += row.count();
    return total / 2;
}

ExclusivityGraph build_exclusivity_graph(const MarginalScenario& s)
{
    ExclusivityGraph g;
    g.vertices = enumerate_events(s);
    const std::size_t n = g.vertices.size();
    g.adjacency.assign(n, boost::dynamic_bitset<>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (are_exclusive(g.vertices[u], g.vertices[v])) {
                g.adjacency[u][v] = true;
                g.adjacency[v][u] = true;
            }
    return g;
}

bool is_clique(const ExclusivityGraph& g, const std::vector<std::size_t>& vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j] || !g.adjacent(vertices[i], vertices[j]))
                return false;
    return true;
}

namespace {

using Bits = boost::dynamic_bitset<>;

void bron_kerbosch(const ExclusivityGraph& g, std::vector<std::size_t>& r, Bits p, Bits x,
                   std::vector<std::vector<std::size_t>>& out, std::size_t limit)
{
    if (p.none() && x.none()) {
        if (out.size() >= limit)
            throw SizeLimitError("maximal clique enumeration exceeded its bound", limit);
        auto c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    // pivot: vertex of P u X with most neighbours in P
    Bits px = p | x;
    std::size_t pivot = px.find_first();
    std::size_t best = 0;
    for (auto u = px.find_first(); u != Bits::npos; u = px.find_next(u)) {
        auto cnt = (p & g.adjacency[u]).count();
        if (cnt > best || u == px.find_first()) {
            best = cnt;
            pivot = u;
        }
    }
    Bits candidates = p - g.adjacency[pivot];
    for (auto v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
        r.push_back(v);
        bron_kerbosch(g, r, p & g.adjacency[v], x & g.adjacency[v], out, limit);
        r.pop_back();
        p[v] = false;
        x[v] = true;
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_maximal_cliques(const ExclusivityGraph& g, std::size_t limit)
{
    const std::size_t n = g.vertices.size();
    std::vector<std::vector<std::size_t>> out;
    if (n == 0)
        return out;
    Bits p(n);
    p.set();
    Bits x(n);
    std::vector<std::size_t> r;
    bron_kerbosch(g, r, p, x, out, limit);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> enumerate_all_cliques(const ExclusivityGraph& g, std::size_t limit)
{
    const std::size_t n = g.vertices.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    std::function<void(const Bits&)> extend = [&](const Bits& cand) {
        for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
            current.push_back(v);
            if (out.size() >= limit)
                throw SizeLimitError("clique enumeration exceeded its bound", limit);
            out.push_back(current);
            Bits next = cand & g.adjacency[v];
            // only larger indices, so each clique is produced once
            for (auto u = next.find_first(); u != Bits::npos && u <= v; u = next.find_next(u))
                next[u] = false;
            extend(next);
            current.pop_back();
        }
    };
    Bits all(n);
    all.set();
    extend(all);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProtocolHyperedge> enumerate_protocol_hyperedges(const MarginalScenario& s, unsigned long long limit)
{
    const EventSpace space(s);
    const int k = s.outcomes;
    using EdgeSet = std::set<std::vector<std::size_t>>;
    using Key = std::pair<std::vector<int>, std::vector<int>>;  // measured set, outcomes

    auto is_context = [&](const std::vector<int>& t) {
        return std::binary_search(s.contexts.begin(), s.contexts.end(), t);
    };
    auto extensions = [&](const std::vector<int>& t) {
        std::vector<int> out;
        for (int m = 1; m <= s.measurements; ++m) {
            if (std::binary_search(t.begin(), t.end(), m))
                continue;
            auto bigger = t;
            bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), m), m);
            if (smallest_context_containing(s, bigger) >= 0)
                out.push_back(m);
        }
        return out;
    };
    auto extend = [](const std::vector<int>& t, const std::vector<int>& a, int m, int b) {
        Key key{t, a};
        auto pos = std::upper_bound(key.first.begin(), key.first.end(), m) - key.first.begin();
        key.first.insert(key.first.begin() + pos, m);
        key.second.insert(key.second.begin() + pos, b);
        return key;
    };

    // Number of protocol trees below a node, saturating above the limit.
    std::map<Key, unsigned long long> count_memo;
    std::function<unsigned long long(const Key&)> count = [&](const Key& node) -> unsigned long long {
        if (is_context(node.first))
            return 1;
        if (auto it = count_memo.find(node); it != count_memo.end())
            return it->second;
        unsigned long long total = 0;
        for (int m : extensions(node.first)) {
            unsigned long long prod = 1;
            for (int b = 0; b < k; ++b) {
                auto c = count(extend(node.first, node.second, m, b));
                prod = (c != 0 && prod > (limit + 1) / c) ? limit + 1 : prod * c;
            }
            total = std::min(limit + 1, total + prod);
        }
        count_memo[node] = total;
        return total;
    };
    const Key root{{}, {}};
    if (count(root) > limit)
        throw SizeLimitError("protocol enumeration exceeded its bound", limit);

    std::map<Key, EdgeSet> memo;
    std::function<const EdgeSet&(const Key&)> edges = [&](const Key& node) -> const EdgeSet& {
        if (auto it = memo.find(node); it != memo.end())
            return it->second;
        EdgeSet result;
        if (is_context(node.first)) {
            auto ctx = std::lower_bound(s.contexts.begin(), s.contexts.end(), node.first) - s.contexts.begin();
            result.insert({space.index(static_cast<std::size_t>(ctx), node.second)});
        } else {
            for (int m : extensions(node.first)) {
                EdgeSet acc{{}};
                for (int b = 0; b < k; ++b) {
                    const EdgeSet& branch = edges(extend(node.first, node.second, m, b));
                    EdgeSet next;
                    for (const auto& left : acc)
                        for (const auto& right : branch) {
                            std::vector<std::size_t> merged;
                            std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                                           std::back_inserter(merged));
                            next.insert(std::move(merged));
                        }
                    acc = std::move(next);
                }
                result.insert(acc.begin(), acc.end());
            }
        }
        return memo.emplace(node, std::move(result)).first->second;
    };

    std::vector<ProtocolHyperedge> out;
    for (const auto& e : edges(root))
        out.push_back(ProtocolHyperedge{e});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace specklab
