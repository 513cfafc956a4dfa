#pragma once

// Brute-force reference implementations used to cross-check the library.
// Deliberately naive: nothing here shares code with src/.

#include "specklab/events.hpp"

#include <random>
#include <vector>

namespace oracle {

inline bool exclusive(const specklab::GeneralizedEvent& u, const specklab::GeneralizedEvent& v)
{
    for (std::size_t i = 0; i < u.measurements.size(); ++i)
        for (std::size_t j = 0; j < v.measurements.size(); ++j)
            if (u.measurements[i] == v.measurements[j] && u.outcomes[i] != v.outcomes[j])
                return true;
    return false;
}

// Does the full context event e agree with g on every measurement of g?
inline bool refines(const specklab::Event& e, const specklab::GeneralizedEvent& g)
{
    for (std::size_t i = 0; i < g.measurements.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < e.context.size(); ++j)
            if (e.context[j] == g.measurements[i]) {
                if (e.outcomes[j] != g.outcomes[i])
                    return false;
                found = true;
            }
        if (!found)
            return false;
    }
    return true;
}

inline long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// Number of k-subsets of an n-set.
inline long long choose(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Random context family: pick random subsets, drop the ones contained in others.
inline specklab::MarginalScenario random_scenario(std::mt19937_64& rng, int max_measurements = 4)
{
    specklab::MarginalScenario s;
    s.measurements = 2 + static_cast<int>(rng() % (max_measurements - 1));
    s.outcomes = 2 + static_cast<int>(rng() % 2);
    std::vector<unsigned> masks;
    const unsigned full = (1u << s.measurements) - 1;
    for (int tries = 0; tries < 3; ++tries) {
        unsigned m = 1 + static_cast<unsigned>(rng() % full);
        masks.push_back(m);
    }
    for (int i = 0; i < s.measurements; ++i)
        masks.push_back(1u << i);
    std::vector<unsigned> maximal;
    for (auto m : masks) {
        bool dominated = false;
        for (auto o : masks)
            if (o != m && (m & o) == m)
                dominated = true;
        if (!dominated && std::find(maximal.begin(), maximal.end(), m) == maximal.end())
            maximal.push_back(m);
    }
    std::sort(maximal.begin(), maximal.end());
    for (auto m : maximal) {
        std::vector<int> c;
        for (int i = 0; i < s.measurements; ++i)
            if (m & (1u << i))
                c.push_back(i + 1);
        s.contexts.push_back(c);
    }
    return s;
}

}  // namespace oracle
