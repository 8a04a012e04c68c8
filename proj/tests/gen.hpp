#pragma once

#include <algorithm>
#include <random>
#include <vector>

namespace testgen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Nondecreasing sequence of length len with values in [0, n].
inline std::vector<int> monotone(Rng& rng, int len, int n) {
    std::vector<int> v(len);
    for (int& x : v)
        x = uniform(rng, 0, n);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace testgen
