#pragma once

// Exact arithmetic in the Grigorchuk group: reduced words over {a,b,c,d},
// the action on the binary rooted tree, the splitting homomorphism psi,
// the word problem, lengths and orders.

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

namespace grig {

/// Element of the Grigorchuk group as a reduced word over {a,b,c,d}.
///
/// Invariants of the stored word: no two adjacent equal letters, and no two
/// adjacent letters from {b,c,d}; hence it alternates [a]x1 a x2 a ... a xn [a]
/// with xi in {b,c,d}. The empty word is the identity. Reduced words are
/// canonical only for the free-product relations (1); equality of group
/// elements is decided by `equal`.
class GroupElement {
public:
    GroupElement() = default;

    /// Reduce an arbitrary letter sequence using a^2=b^2=c^2=d^2=1 and the
    /// Klein table on {b,c,d} (bc=cb=d etc., forced by bcd=1).
    static GroupElement reduce(std::string_view raw) {
        GroupElement g;
        for (char ch : raw) g.push_reduce(ch);
        return g;
    }

    /// Parse textual syntax: letters from {a,b,c,d}, or "1"/"" for identity.
    static GroupElement parse(std::string_view text) {
        if (text == "1") return GroupElement{};
        for (char ch : text)
            if (ch != 'a' && ch != 'b' && ch != 'c' && ch != 'd')
                throw std::invalid_argument("bad group element character: '" +
                                            std::string(1, ch) + "'");
        return reduce(text);
    }

    const std::string& word() const { return w_; }
    bool is_identity() const { return w_.empty(); }
    std::size_t length() const { return w_.size(); }

    /// Display form; "1" for the identity.
    std::string str() const { return w_.empty() ? "1" : w_; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
    friend GroupElement multiply(const GroupElement&, const GroupElement&);
    friend GroupElement inverse(const GroupElement&);

    void push_reduce(char cur) {
        while (true) {
            if (w_.empty()) { w_.push_back(cur); return; }
            char t = w_.back();
            if (t == cur) { w_.pop_back(); return; }
            if (t != 'a' && cur != 'a') {
                // two distinct letters of {b,c,d} collapse to the third
                w_.pop_back();
                cur = third(t, cur);
                continue;
            }
            w_.push_back(cur);
            return;
        }
    }

    static char third(char x, char y) {
        return static_cast<char>('b' + 'c' + 'd' - x - y);
    }

    std::string w_;
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    GroupElement r = g;
    for (char ch : h.w_) r.push_reduce(ch);
    return r;
}

/// All generators are involutions, so the inverse is the reversed word.
inline GroupElement inverse(const GroupElement& g) {
    std::string rev(g.word().rbegin(), g.word().rend());
    return GroupElement::reduce(rev);
}

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return multiply(g, h);
}

inline std::size_t length(const GroupElement& g) { return g.length(); }

/// Number of occurrences of the letter a.
inline std::size_t a_count(const GroupElement& g) {
    std::size_t n = 0;
    for (char ch : g.word()) n += (ch == 'a');
    return n;
}

/// g stabilizes the first tree level iff its a-count is even.
inline bool in_st1(const GroupElement& g) { return a_count(g) % 2 == 0; }

/// The closest element of St(1): g itself, or g*a.
inline GroupElement bar(const GroupElement& g) {
    return in_st1(g) ? g : multiply(g, GroupElement::reduce("a"));
}

/// Vertex of the binary rooted tree: a finite word over {0,1}.
class Vertex {
public:
    Vertex() = default;
    explicit Vertex(std::string path) : p_(std::move(path)) {
        for (char ch : p_)
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("vertex path must be binary");
    }
    const std::string& path() const { return p_; }
    friend bool operator==(const Vertex&, const Vertex&) = default;

private:
    std::string p_;
};

namespace detail {
inline std::string act_letter(char g, std::string v) {
    if (v.empty()) return v;
    if (g == 'a') { v[0] = (v[0] == '0') ? '1' : '0'; return v; }
    char x = v[0];
    std::string tail = v.substr(1);
    switch (g) {
        case 'b': tail = act_letter(x == '0' ? 'a' : 'c', std::move(tail)); break;
        case 'c': tail = act_letter(x == '0' ? 'a' : 'd', std::move(tail)); break;
        case 'd': if (x == '1') tail = act_letter('b', std::move(tail)); break;
        default: throw std::logic_error("bad letter");
    }
    return x + tail;
}
}  // namespace detail

/// Tree action. The word acts as a composition of automorphisms, rightmost
/// letter first, so that act(g*h, v) == act(g, act(h, v)).
inline Vertex act(const GroupElement& g, const Vertex& v) {
    std::string cur = v.path();
    for (auto it = g.word().rbegin(); it != g.word().rend(); ++it)
        cur = detail::act_letter(*it, std::move(cur));
    return Vertex(cur);
}

/// The splitting homomorphism psi: St_Gamma(1) -> Gamma x Gamma, computed by
/// factoring the reduced word into {b,c,d,aba,aca,ada} and mapping each factor
/// through the table psi(b)=(a,c), psi(c)=(a,d), psi(d)=(1,b),
/// psi(aba)=(c,a), psi(aca)=(d,a), psi(ada)=(b,1).
inline std::pair<GroupElement, GroupElement> psi(const GroupElement& g) {
    if (!in_st1(g))
        throw std::invalid_argument("psi: element not in St(1): " + g.str());
    static constexpr const char* tab0[2][3] = {{"a", "a", ""}, {"c", "d", "b"}};
    static constexpr const char* tab1[2][3] = {{"c", "d", "b"}, {"a", "a", ""}};
    GroupElement c0, c1;
    int parity = 0;
    for (char ch : g.word()) {
        if (ch == 'a') { parity ^= 1; continue; }
        int k = ch - 'b';
        c0 = multiply(c0, GroupElement::reduce(tab0[parity][k]));
        c1 = multiply(c1, GroupElement::reduce(tab1[parity][k]));
    }
    return {c0, c1};
}

inline GroupElement psi0(const GroupElement& g) { return psi(g).first; }
inline GroupElement psi1(const GroupElement& g) { return psi(g).second; }

namespace detail {
struct TrivialCache {
    std::unordered_map<std::string, bool> map;
    std::mutex mu;
    std::size_t limit = 0;  // 0 = unbounded
    static TrivialCache& instance() {
        static TrivialCache c;
        return c;
    }
};
}  // namespace detail

/// Cap the word-problem memo cache (0 = unbounded, the default).
inline void set_trivial_cache_limit(std::size_t n) {
    auto& c = detail::TrivialCache::instance();
    std::lock_guard lk(c.mu);
    c.limit = n;
}

/// Word problem: is g the identity automorphism? Recursive triviality via
/// psi; terminates because both components of psi are strictly shorter than
/// any reduced St(1)-word of length >= 2. Memoized on the reduced word.
inline bool is_trivial(const GroupElement& g) {
    if (g.is_identity()) return true;
    if (g.length() == 1) return false;
    if (!in_st1(g)) return false;
    auto& cache = detail::TrivialCache::instance();
    {
        std::lock_guard lk(cache.mu);
        auto it = cache.map.find(g.word());
        if (it != cache.map.end()) return it->second;
    }
    auto [p0, p1] = psi(g);
    if (p0.length() >= g.length() || p1.length() >= g.length())
        throw std::logic_error("psi failed to contract: " + g.str());
    bool ans = is_trivial(p0) && is_trivial(p1);
    {
        std::lock_guard lk(cache.mu);
        if (cache.limit == 0 || cache.map.size() < cache.limit)
            cache.map.emplace(g.word(), ans);
    }
    return ans;
}

inline bool equal(const GroupElement& g, const GroupElement& h) {
    if (g == h) return true;
    return is_trivial(multiply(g, inverse(h)));
}

/// Order of g, a power of 2 (Gamma is a 2-group). Computed by repeated
/// squaring; `max_doublings` caps the search and exceeding it throws.
inline std::uint64_t order(const GroupElement& g, int max_doublings = 30) {
    if (is_trivial(g)) return 1;
    GroupElement t = g;
    std::uint64_t n = 1;
    for (int i = 0; i < max_doublings; ++i) {
        t = multiply(t, t);
        n *= 2;
        if (is_trivial(t)) return n;
    }
    throw std::runtime_error("order: iteration cap exceeded for " + g.str());
}

}  // namespace grig
