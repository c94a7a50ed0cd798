#pragma once

// Test-only oracles, independent of the implementation paths they check:
// portrait comparison uses only the letter-by-letter tree action, and the
// small-ball enumerators use only word reduction.

#include <grig/group.hpp>

#include <random>
#include <string>
#include <vector>

namespace grig::oracle {

/// Compare two elements by their action on every vertex up to `level`.
inline bool portrait_equal(const GroupElement& g, const GroupElement& h, int level) {
    std::vector<std::string> layer{""};
    for (int n = 1; n <= level; ++n) {
        std::vector<std::string> next;
        next.reserve(layer.size() * 2);
        for (const auto& v : layer) {
            next.push_back(v + "0");
            next.push_back(v + "1");
        }
        layer = std::move(next);
        for (const auto& v : layer)
            if (act(g, Vertex(v)) != act(h, Vertex(v))) return false;
    }
    return true;
}

inline bool portrait_trivial(const GroupElement& g, int level) {
    return portrait_equal(g, GroupElement{}, level);
}

/// Order by repeated multiplication, deciding triviality with portraits only.
inline std::uint64_t portrait_order(const GroupElement& g, int level, std::uint64_t cap = 64) {
    GroupElement t = g;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (portrait_trivial(t, level)) return n;
        t = multiply(t, g);
    }
    throw std::runtime_error("portrait_order cap exceeded");
}

/// All reduced words of length <= n (not deduplicated as group elements).
inline std::vector<GroupElement> reduced_words_upto(int n) {
    std::vector<GroupElement> all{GroupElement{}};
    std::vector<GroupElement> frontier{GroupElement{}};
    for (int k = 0; k < n; ++k) {
        std::vector<GroupElement> next;
        for (const auto& w : frontier)
            for (char ch : {'a', 'b', 'c', 'd'}) {
                GroupElement r = multiply(w, GroupElement::reduce(std::string(1, ch)));
                if (r.length() == w.length() + 1) next.push_back(r);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

inline GroupElement random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> let(0, 3);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back("abcd"[let(rng)]);
    return GroupElement::reduce(s);
}

}  // namespace grig::oracle
