#ifndef LAKM_SAMPLING_HPP
#define LAKM_SAMPLING_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "lakm/rng.hpp"

namespace lakm {

/// C(n, s), saturating at SIZE_MAX.
inline std::size_t binomial(std::size_t n, std::size_t s) {
    if (s > n) return 0;
    s = std::min(s, n - s);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= s; ++i) {
        r = r * (n - s + i) / i;
        if (r > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(r);
}

/// Size-s subsets of {0..n-1}. All of them in lexicographic order when there
/// are at most `cap`, otherwise `cap` distinct uniform draws in draw order.
/// Each subset is sorted ascending.
inline std::vector<std::vector<std::size_t>> choose_subsets(std::size_t n, std::size_t s, std::size_t cap, Rng& rng) {
    std::vector<std::vector<std::size_t>> out;
    if (s == 0 || s > n || cap == 0) return out;
    const std::size_t total = binomial(n, s);
    if (total <= cap) {
        out.reserve(total);
        std::vector<std::size_t> c(s);
        std::iota(c.begin(), c.end(), std::size_t{0});
        while (true) {
            out.push_back(c);
            std::size_t i = s;
            while (i > 0 && c[i - 1] == n - s + (i - 1)) --i;
            if (i == 0) break;
            ++c[i - 1];
            for (std::size_t j = i; j < s; ++j) c[j] = c[j - 1] + 1;
        }
        return out;
    }
    std::set<std::vector<std::size_t>> seen;
    out.reserve(cap);
    while (out.size() < cap) {
        auto pick = rng.sample_without_replacement(n, s);
        std::sort(pick.begin(), pick.end());
        if (seen.insert(pick).second) out.push_back(std::move(pick));
    }
    return out;
}

}  // namespace lakm

#endif  // LAKM_SAMPLING_HPP
