#pragma once

// Words in Gamma * F_X: mixed words of group constants and signed variable
// occurrences, quadratic/standard classification, constraints modulo K with
// their induced homomorphisms, sigma, and the join operation #.

#include <grig/group.hpp>
#include <grig/quotient.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace grig {

/// Equation variable. The path records descendant lineage: splitting a
/// variable (name, p) produces (name, p+"0") and (name, p+"1").
struct Variable {
    std::string name;
    std::string path;

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;

    std::string str() const { return path.empty() ? name : name + ":" + path; }
};

inline Variable descendant(const Variable& v, int i) {
    return Variable{v.name, v.path + (i == 0 ? "0" : "1")};
}

struct VarOcc {
    Variable var;
    int sign = 1;  // +1 or -1
    friend bool operator==(const VarOcc&, const VarOcc&) = default;
};

using Atom = std::variant<GroupElement, VarOcc>;

inline bool is_const(const Atom& a) { return std::holds_alternative<GroupElement>(a); }

/// Word over Gamma and X^{+-1}. Always normalized: adjacent constants are
/// merged (multiplying in Gamma) and identity constants dropped. Inverse
/// variable pairs x x^-1 are kept unless `free_reduce` is requested.
class MixedWord {
public:
    MixedWord() = default;

    static MixedWord constant(GroupElement g) {
        MixedWord w;
        w.push(Atom{std::move(g)}, false);
        return w;
    }
    static MixedWord var(Variable v, int sign = 1) {
        MixedWord w;
        w.push(Atom{VarOcc{std::move(v), sign}}, false);
        return w;
    }
    static MixedWord from_atoms(std::vector<Atom> atoms, bool full_reduce = false) {
        MixedWord w;
        for (auto& a : atoms) w.push(std::move(a), full_reduce);
        return w;
    }

    const std::vector<Atom>& atoms() const { return a_; }
    bool empty() const { return a_.empty(); }
    std::size_t size() const { return a_.size(); }

    friend bool operator==(const MixedWord&, const MixedWord&) = default;

    friend MixedWord concat(const MixedWord& x, const MixedWord& y) {
        MixedWord r = x;
        for (const auto& a : y.a_) r.push(a, false);
        return r;
    }

    friend MixedWord inverse(const MixedWord& w) {
        MixedWord r;
        for (auto it = w.a_.rbegin(); it != w.a_.rend(); ++it) {
            if (is_const(*it))
                r.push(Atom{inverse(std::get<GroupElement>(*it))}, false);
            else {
                VarOcc o = std::get<VarOcc>(*it);
                o.sign = -o.sign;
                r.push(Atom{o}, false);
            }
        }
        return r;
    }

    /// Full reduction in the free product: also cancels x^e x^-e pairs.
    friend MixedWord free_reduce(const MixedWord& w) {
        MixedWord r;
        for (const auto& a : w.a_) r.push(a, true);
        return r;
    }

    std::string str() const {
        if (a_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& a : a_) {
            if (!first) os << ' ';
            first = false;
            if (is_const(a))
                os << std::get<GroupElement>(a).str();
            else {
                const auto& o = std::get<VarOcc>(a);
                os << o.var.str();
                if (o.sign < 0) os << "^-1";
            }
        }
        return os.str();
    }

private:
    void push(Atom a, bool full) {
        if (is_const(a)) {
            auto& g = std::get<GroupElement>(a);
            if (g.is_identity()) return;
            if (!a_.empty() && is_const(a_.back())) {
                GroupElement m = multiply(std::get<GroupElement>(a_.back()), g);
                a_.pop_back();
                push(Atom{std::move(m)}, full);
                return;
            }
            a_.push_back(std::move(a));
            return;
        }
        const auto& o = std::get<VarOcc>(a);
        if (o.sign != 1 && o.sign != -1) throw std::invalid_argument("bad sign");
        if (full && !a_.empty() && !is_const(a_.back())) {
            const auto& p = std::get<VarOcc>(a_.back());
            if (p.var == o.var && p.sign == -o.sign) {
                a_.pop_back();
                // cancellation may expose a constant pair
                if (a_.size() >= 2 && is_const(a_.back())) {
                    Atom c = a_.back();
                    a_.pop_back();
                    push(std::move(c), full);
                }
                return;
            }
        }
        a_.push_back(std::move(a));
    }

    std::vector<Atom> a_;
};

inline std::set<Variable> vars(const MixedWord& w) {
    std::set<Variable> s;
    for (const auto& a : w.atoms())
        if (!is_const(a)) s.insert(std::get<VarOcc>(a).var);
    return s;
}

inline int occurrence_count(const MixedWord& w, const Variable& v) {
    int n = 0;
    for (const auto& a : w.atoms())
        if (!is_const(a) && std::get<VarOcc>(a).var == v) ++n;
    return n;
}

inline bool is_quadratic(const MixedWord& w) {
    std::map<Variable, int> n;
    for (const auto& a : w.atoms())
        if (!is_const(a)) ++n[std::get<VarOcc>(a).var];
    return std::all_of(n.begin(), n.end(), [](const auto& kv) { return kv.second == 2; });
}

/// Orientable: the two occurrences of every variable have opposite signs.
/// Requires a quadratic word.
inline bool is_orientable(const MixedWord& w) {
    if (!is_quadratic(w)) throw std::invalid_argument("orientability needs a quadratic word");
    std::map<Variable, int> sum;
    for (const auto& a : w.atoms())
        if (!is_const(a)) sum[std::get<VarOcc>(a).var] += std::get<VarOcc>(a).sign;
    return std::all_of(sum.begin(), sum.end(), [](const auto& kv) { return kv.second == 0; });
}

using Assignment = std::map<Variable, GroupElement>;

/// Evaluate through the Gamma-homomorphism sending x to alpha(x).
inline GroupElement eval(const MixedWord& w, const Assignment& alpha) {
    GroupElement r;
    for (const auto& a : w.atoms()) {
        if (is_const(a)) {
            r = multiply(r, std::get<GroupElement>(a));
        } else {
            const auto& o = std::get<VarOcc>(a);
            auto it = alpha.find(o.var);
            if (it == alpha.end())
                throw std::invalid_argument("eval: no assignment for " + o.var.str());
            r = multiply(r, o.sign > 0 ? it->second : inverse(it->second));
        }
    }
    return r;
}

/// Constraint modulo K: a finite map from variables to Gamma/K.
using Constraint = std::map<Variable, QElement>;

inline Constraint restrict_to(const Constraint& c, const std::set<Variable>& dom) {
    Constraint r;
    for (const auto& v : dom) {
        auto it = c.find(v);
        if (it != c.end()) r.emplace(v, it->second);
    }
    return r;
}

/// Evaluate in Gamma/K: constants through pi_K, variables through gamma.
/// With `extend_identity`, unconstrained variables count as trivial (the
/// arbitrary-extension convention used for constraint transport).
inline QElement gamma_eval(const MixedWord& w, const Constraint& gamma,
                           bool extend_identity = false) {
    QElement r;
    for (const auto& a : w.atoms()) {
        QElement q;
        if (is_const(a)) {
            q = pi_K(std::get<GroupElement>(a));
        } else {
            const auto& o = std::get<VarOcc>(a);
            auto it = gamma.find(o.var);
            if (it == gamma.end()) {
                if (!extend_identity)
                    throw std::invalid_argument("gamma_eval: no constraint for " +
                                                o.var.str());
                q = QElement{};
            } else {
                q = it->second;
            }
            if (o.sign < 0) q = qinv(q);
        }
        r = qmul(r, q);
    }
    return r;
}

/// The St(1)-coset (0 or 1) of w under the constraint.
inline int sigma_w(const MixedWord& w, const Constraint& gamma,
                   bool extend_identity = false) {
    return st_coset(gamma_eval(w, gamma, extend_identity));
}

namespace detail {
inline std::size_t unique_occurrence(const MixedWord& w, const Variable& x) {
    std::size_t pos = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& a = w.atoms()[i];
        if (!is_const(a) && std::get<VarOcc>(a).var == x) {
            if (pos != w.size())
                throw std::invalid_argument("join: " + x.str() + " occurs twice");
            pos = i;
        }
    }
    if (pos == w.size())
        throw std::invalid_argument("join: " + x.str() + " does not occur");
    return pos;
}

inline MixedWord slice(const MixedWord& w, std::size_t from, std::size_t to) {
    std::vector<Atom> a(w.atoms().begin() + static_cast<std::ptrdiff_t>(from),
                        w.atoms().begin() + static_cast<std::ptrdiff_t>(to));
    return MixedWord::from_atoms(std::move(a));
}
}  // namespace detail

/// Eliminate a variable occurring exactly once in each word:
/// with Wi = Ui x^{ei} Vi the result is U1 (V2 U2)^{-e1 e2} V1.
inline MixedWord join(const MixedWord& w1, const MixedWord& w2, const Variable& x) {
    std::size_t p1 = detail::unique_occurrence(w1, x);
    std::size_t p2 = detail::unique_occurrence(w2, x);
    int e1 = std::get<VarOcc>(w1.atoms()[p1]).sign;
    int e2 = std::get<VarOcc>(w2.atoms()[p2]).sign;
    MixedWord u1 = detail::slice(w1, 0, p1);
    MixedWord v1 = detail::slice(w1, p1 + 1, w1.size());
    MixedWord u2 = detail::slice(w2, 0, p2);
    MixedWord v2 = detail::slice(w2, p2 + 1, w2.size());
    MixedWord mid = concat(v2, u2);
    if (e1 * e2 > 0) mid = inverse(mid);
    return free_reduce(concat(u1, concat(mid, v1)));
}

/// Constrained join (Lemma on join correctness): requires gamma(Wi) = 1; the
/// result carries gamma restricted to the surviving variables.
inline std::pair<MixedWord, Constraint> join_constrained(const MixedWord& w1,
                                                         const MixedWord& w2,
                                                         const Variable& x,
                                                         const Constraint& gamma) {
    if (gamma_eval(w1, gamma) != QElement{} || gamma_eval(w2, gamma) != QElement{})
        throw std::invalid_argument("join_constrained: gamma(Wi) != 1");
    MixedWord j = join(w1, w2, x);
    return {j, restrict_to(gamma, vars(j))};
}

// ---------------------------------------------------------------------------
// Standard quadratic words

struct CoeffFactor {
    Variable z;
    GroupElement c;
    friend bool operator==(const CoeffFactor&, const CoeffFactor&) = default;
};

/// Standard quadratic word: [x1,y1]...[xg,yg] z1^-1 c1 z1 ... zm^-1 cm zm
/// (orientable) or x1^2...xg^2 z1^-1 c1 z1 ... (non-orientable, g > 0).
/// Commutators are written as [x,y] = x^-1 y^-1 x y.
struct StandardQuadratic {
    bool orientable = true;
    std::vector<std::pair<Variable, Variable>> commutators;  // orientable part
    std::vector<Variable> squares;                           // non-orientable part
    std::vector<CoeffFactor> coefficients;

    std::size_t genus() const {
        return orientable ? commutators.size() : squares.size();
    }

    std::set<Variable> all_vars() const {
        std::set<Variable> s;
        for (const auto& [x, y] : commutators) { s.insert(x); s.insert(y); }
        for (const auto& x : squares) s.insert(x);
        for (const auto& f : coefficients) s.insert(f.z);
        return s;
    }

    void validate() const {
        if (orientable && !squares.empty())
            throw std::logic_error("orientable standard word with squares");
        if (!orientable && (!commutators.empty() || squares.empty()))
            throw std::logic_error("non-orientable standard word needs squares only");
        std::size_t n = 2 * commutators.size() + squares.size() + coefficients.size();
        if (all_vars().size() != n)
            throw std::logic_error("standard word variables are not distinct");
        for (const auto& f : coefficients)
            if (f.c.is_identity())
                throw std::logic_error("standard word with trivial coefficient");
    }

    MixedWord render() const {
        std::vector<Atom> a;
        for (const auto& [x, y] : commutators) {
            a.push_back(Atom{VarOcc{x, -1}});
            a.push_back(Atom{VarOcc{y, -1}});
            a.push_back(Atom{VarOcc{x, 1}});
            a.push_back(Atom{VarOcc{y, 1}});
        }
        for (const auto& x : squares) {
            a.push_back(Atom{VarOcc{x, 1}});
            a.push_back(Atom{VarOcc{x, 1}});
        }
        for (const auto& f : coefficients) {
            a.push_back(Atom{VarOcc{f.z, -1}});
            a.push_back(Atom{f.c});
            a.push_back(Atom{VarOcc{f.z, 1}});
        }
        return MixedWord::from_atoms(std::move(a));
    }
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {
inline bool group_word_token(const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char ch) {
        return ch == 'a' || ch == 'b' || ch == 'c' || ch == 'd' || ch == '1';
    });
}

inline Variable parse_variable(const std::string& t) {
    auto colon = t.find(':');
    Variable v;
    if (colon == std::string::npos) {
        v.name = t;
    } else {
        v.name = t.substr(0, colon);
        v.path = t.substr(colon + 1);
        for (char ch : v.path)
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("bad descendant path in '" + t + "'");
    }
    if (v.name.empty()) throw std::invalid_argument("empty variable name");
    for (char ch : v.name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
            throw std::invalid_argument("bad variable name '" + t + "'");
    return v;
}
}  // namespace detail

/// Equation grammar: whitespace-separated factors, each one of
///   [x,y]           commutator sugar, x^-1 y^-1 x y
///   ident / ident^-1    a variable occurrence (identifiers are tokens that
///                       are not group words; descendants print as name:path)
///   word / word^-1      a coefficient over {a,b,c,d}, "1" for identity
inline MixedWord parse_mixed_word(const std::string& text) {
    std::istringstream is(text);
    std::vector<Atom> atoms;
    std::string tok;
    while (is >> tok) {
        if (tok.size() >= 3 && tok.front() == '[' && tok.back() == ']') {
            auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("bad commutator token '" + tok + "'");
            Variable x = detail::parse_variable(tok.substr(1, comma - 1));
            Variable y = detail::parse_variable(tok.substr(comma + 1, tok.size() - comma - 2));
            atoms.push_back(Atom{VarOcc{x, -1}});
            atoms.push_back(Atom{VarOcc{y, -1}});
            atoms.push_back(Atom{VarOcc{x, 1}});
            atoms.push_back(Atom{VarOcc{y, 1}});
            continue;
        }
        int sign = 1;
        if (tok.size() > 3 && tok.ends_with("^-1")) {
            sign = -1;
            tok = tok.substr(0, tok.size() - 3);
        }
        if (detail::group_word_token(tok)) {
            std::string letters;
            for (char ch : tok)
                if (ch != '1') letters.push_back(ch);
            GroupElement g = GroupElement::reduce(letters);
            atoms.push_back(Atom{sign > 0 ? g : inverse(g)});
        } else {
            atoms.push_back(Atom{VarOcc{detail::parse_variable(tok), sign}});
        }
    }
    return MixedWord::from_atoms(std::move(atoms));
}

/// Constraint lines: `var = <canonical Gamma/K name>` (names as in the
/// quotient dump). Blank lines and '#' comments are ignored.
inline Constraint parse_constraint_lines(const std::vector<std::string>& lines) {
    Constraint c;
    for (const auto& raw : lines) {
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream is(line);
        std::string v, eq, name;
        if (!(is >> v)) continue;
        if (!(is >> eq >> name) || eq != "=" || (is >> std::ws, !is.eof()))
            throw std::invalid_argument("bad constraint line: " + raw);
        Variable var = detail::parse_variable(v);
        if (c.count(var)) throw std::invalid_argument("duplicate constraint for " + v);
        c.emplace(var, QuotientTable::instance().by_name(name));
    }
    return c;
}

}  // namespace grig
