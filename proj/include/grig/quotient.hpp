#pragma once

// The finite quotient Gamma/K of order 16 (K = normal closure of abab),
// the projection pi_K, the St-coset parity, and the psi-image membership
// data (F, omega): a pair (g0,g1) lies in the image of psi iff the pair of
// its pi_K-projections lies in F, and then pi_K of the preimage is omega of
// that pair.

#include <grig/group.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace grig {

/// Element of Gamma/K = Z/2 (image of b) x D8 (images of a and d).
/// The dihedral part is r^rot s^refl with s = aK and r = adK, r^4 = s^2 = 1,
/// s r = r^-1 s. Exactly 16 distinct values.
struct QElement {
    std::uint8_t b = 0;     // Z/2
    std::uint8_t rot = 0;   // Z/4
    std::uint8_t refl = 0;  // Z/2

    friend bool operator==(const QElement&, const QElement&) = default;
    friend auto operator<=>(const QElement&, const QElement&) = default;

    std::uint8_t pack() const {
        return static_cast<std::uint8_t>(b << 3 | rot << 1 | refl);
    }
    static QElement unpack(std::uint8_t v) {
        return QElement{static_cast<std::uint8_t>(v >> 3 & 1),
                        static_cast<std::uint8_t>(v >> 1 & 3),
                        static_cast<std::uint8_t>(v & 1)};
    }
};

inline QElement qmul(const QElement& x, const QElement& y) {
    return QElement{
        static_cast<std::uint8_t>((x.b + y.b) & 1),
        static_cast<std::uint8_t>((x.rot + (x.refl ? 4 - y.rot : y.rot)) & 3),
        static_cast<std::uint8_t>((x.refl + y.refl) & 1)};
}

inline QElement qinv(const QElement& x) {
    return QElement{x.b, static_cast<std::uint8_t>(x.refl ? x.rot : (4 - x.rot) & 3),
                    x.refl};
}

inline QElement qpow(QElement x, int e) {
    QElement r;
    if (e < 0) { x = qinv(x); e = -e; }
    for (; e; --e) r = qmul(r, x);
    return r;
}

/// pi_K: map each letter through the generator dictionary and multiply.
inline QElement pi_K(const GroupElement& g) {
    static constexpr QElement qa{0, 0, 1}, qb{1, 0, 0}, qd{0, 3, 1}, qc{1, 3, 1};
    QElement r;
    for (char ch : g.word()) {
        switch (ch) {
            case 'a': r = qmul(r, qa); break;
            case 'b': r = qmul(r, qb); break;
            case 'c': r = qmul(r, qc); break;
            case 'd': r = qmul(r, qd); break;
        }
    }
    return r;
}

/// St-coset of any preimage; well defined since K <= St(1).
inline int st_coset(const QElement& q) { return (q.rot + q.refl) & 1; }

/// q itself if it lies in St(1)/K, else q * pi_K(a).
inline QElement bar_q(const QElement& q) {
    return st_coset(q) == 0 ? q : qmul(q, pi_K(GroupElement::parse("a")));
}

/// The 16 elements with canonical witness words, the multiplication-closed
/// F/omega table, and the fixed total order (by canonical name, shortest
/// first then lexicographic). Computed once, then shared read-only.
class QuotientTable {
public:
    static const QuotientTable& instance() {
        static QuotientTable t;
        return t;
    }

    /// Canonical witness word for q (the first reduced word hitting q in
    /// (length, lex) enumeration); identity prints as "1".
    const std::string& name(const QElement& q) const { return names_[q.pack()]; }

    QElement by_name(const std::string& n) const {
        auto it = by_name_.find(n);
        if (it == by_name_.end())
            throw std::invalid_argument("unknown Gamma/K element name: " + n);
        return it->second;
    }

    /// Canonical transversal representative with pi_K(rep(q)) == q.
    GroupElement rep(const QElement& q) const {
        const std::string& n = names_[q.pack()];
        return GroupElement::parse(n == "1" ? "" : n);
    }

    /// Position of q in the fixed total order on Gamma/K.
    int order_index(const QElement& q) const { return order_index_[q.pack()]; }

    /// All 16 elements in the fixed total order.
    const std::vector<QElement>& elements() const { return elements_; }

    bool in_psi_image(const QElement& q0, const QElement& q1) const {
        return omega_[q0.pack()][q1.pack()] >= 0;
    }

    /// omega(q0, q1); throws off F.
    QElement omega(const QElement& q0, const QElement& q1) const {
        int w = omega_[q0.pack()][q1.pack()];
        if (w < 0) throw std::invalid_argument("omega: pair not in F");
        return QElement::unpack(static_cast<std::uint8_t>(w));
    }

    std::size_t f_size() const { return f_size_; }

    /// All pairs of F whose omega value is q (the per-variable fiber used by
    /// the splitting constraint family).
    const std::vector<std::pair<QElement, QElement>>& fiber(const QElement& q) const {
        return fibers_[q.pack()];
    }

    /// Plain-text dump of the 16-element multiplication table and the
    /// F/omega table (golden-tested; also shown by `grigsolve quotient-table`).
    std::string dump() const;

private:
    QuotientTable() {
        // canonical names by (length, lex) BFS over reduced words
        std::vector<GroupElement> frontier{GroupElement{}};
        std::set<std::uint8_t> seen;
        int found = 0;
        for (int len = 0; len <= 6 && found < 16; ++len) {
            std::vector<GroupElement> next;
            for (const auto& w : frontier) {
                QElement q = pi_K(w);
                if (!seen.count(q.pack())) {
                    seen.insert(q.pack());
                    names_[q.pack()] = w.str();
                    ++found;
                }
                for (char ch : {'a', 'b', 'c', 'd'}) {
                    GroupElement r = multiply(w, GroupElement::reduce(std::string(1, ch)));
                    if (r.length() == w.length() + 1) next.push_back(r);
                }
            }
            std::sort(next.begin(), next.end(),
                      [](const GroupElement& x, const GroupElement& y) {
                          return x.word() < y.word();
                      });
            next.erase(std::unique(next.begin(), next.end()), next.end());
            frontier = std::move(next);
        }
        if (found != 16) throw std::logic_error("Gamma/K enumeration incomplete");

        for (std::uint8_t v = 0; v < 16; ++v) elements_.push_back(QElement::unpack(v));
        std::sort(elements_.begin(), elements_.end(),
                  [this](const QElement& x, const QElement& y) {
                      const auto& nx = names_[x.pack()];
                      const auto& ny = names_[y.pack()];
                      if (nx.size() != ny.size()) return nx.size() < ny.size();
                      return nx < ny;
                  });
        for (int i = 0; i < 16; ++i) order_index_[elements_[i].pack()] = i;
        for (int i = 0; i < 16; ++i)
            by_name_[names_[static_cast<std::size_t>(i)]] = QElement::unpack(
                static_cast<std::uint8_t>(i));

        // F/omega: closure of the graph subgroup of (Gamma/K)^3 generated by
        // (pi_K psi0(g), pi_K psi1(g), pi_K(g)) over generators of St(1).
        for (auto& row : omega_) row.fill(-1);
        std::set<std::array<std::uint8_t, 3>> triples;
        triples.insert({0, 0, 0});
        for (const char* g : {"b", "c", "d", "aba", "aca", "ada"}) {
            GroupElement e = GroupElement::parse(g);
            auto [p0, p1] = psi(e);
            triples.insert({pi_K(p0).pack(), pi_K(p1).pack(), pi_K(e).pack()});
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::set<std::array<std::uint8_t, 3>> add;
            for (const auto& t1 : triples)
                for (const auto& t2 : triples) {
                    std::array<std::uint8_t, 3> t{
                        qmul(QElement::unpack(t1[0]), QElement::unpack(t2[0])).pack(),
                        qmul(QElement::unpack(t1[1]), QElement::unpack(t2[1])).pack(),
                        qmul(QElement::unpack(t1[2]), QElement::unpack(t2[2])).pack()};
                    if (!triples.count(t)) add.insert(t);
                }
            if (!add.empty()) { triples.insert(add.begin(), add.end()); grew = true; }
        }
        for (const auto& t : triples) {
            int& cell = omega_[t[0]][t[1]];
            if (cell >= 0 && cell != t[2])
                throw std::logic_error("omega is not well defined");  // contradicts K x K <= psi(K)
            cell = t[2];
            if (cell == t[2] && names_[t[2]].empty())
                throw std::logic_error("omega value outside enumerated quotient");
        }
        f_size_ = triples.size();
        std::size_t pairs = 0;
        for (auto& row : omega_)
            for (int w : row) pairs += (w >= 0);
        if (pairs != f_size_) throw std::logic_error("F closure is not a graph");
        for (std::uint8_t q0 = 0; q0 < 16; ++q0)
            for (std::uint8_t q1 = 0; q1 < 16; ++q1)
                if (omega_[q0][q1] >= 0)
                    fibers_[omega_[q0][q1]].push_back(
                        {QElement::unpack(q0), QElement::unpack(q1)});
    }

    std::array<std::string, 16> names_;
    std::map<std::string, QElement> by_name_;
    std::vector<QElement> elements_;
    std::array<int, 16> order_index_{};
    std::array<std::array<int, 16>, 16> omega_;
    std::array<std::vector<std::pair<QElement, QElement>>, 16> fibers_;
    std::size_t f_size_ = 0;
};

inline std::string QuotientTable::dump() const {
    std::ostringstream os;
    os << "Gamma/K multiplication table (" << elements_.size() << " elements)\n";
    os << "     ";
    for (const auto& q : elements_) os << ' ' << name(q);
    os << '\n';
    for (const auto& x : elements_) {
        os << std::string(5 - std::min<std::size_t>(5, name(x).size()), ' ') << name(x);
        for (const auto& y : elements_) os << ' ' << name(qmul(x, y));
        os << '\n';
    }
    os << "\nF / omega table (" << f_size_ << " pairs)\n";
    for (const auto& x : elements_)
        for (const auto& y : elements_)
            if (in_psi_image(x, y))
                os << "(" << name(x) << ", " << name(y) << ") -> " << name(omega(x, y))
                   << '\n';
    return os.str();
}

/// Convenience: the table's canonical name of pi_K(g).
inline std::string quotient_name(const QElement& q) {
    return QuotientTable::instance().name(q);
}

}  // namespace grig
