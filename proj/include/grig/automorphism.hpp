#pragma once

// Finitely supported Gamma-automorphisms of Gamma * F_X as explicit lists of
// elementary substitutions, composable, invertible and transportable over
// constraints.

#include <grig/words.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace grig {

/// One elementary substitution v -> w where v occurs in w exactly once (with
/// either sign). Such a map extends to a Gamma-automorphism fixing every
/// other variable, with an explicit inverse.
struct ElementarySubst {
    Variable v;
    MixedWord replacement;

    ElementarySubst(Variable var, MixedWord repl)
        : v(std::move(var)), replacement(std::move(repl)) {
        if (occurrence_count(replacement, v) != 1)
            throw std::invalid_argument("elementary substitution must mention " +
                                        v.str() + " exactly once");
    }

    ElementarySubst inverted() const {
        std::size_t p = detail::unique_occurrence(replacement, v);
        int sign = std::get<VarOcc>(replacement.atoms()[p]).sign;
        MixedWord a = detail::slice(replacement, 0, p);
        MixedWord b = detail::slice(replacement, p + 1, replacement.size());
        // v -> A v B inverts to v -> A^-1 v B^-1; v -> A v^-1 B to v -> B v^-1 A
        MixedWord r;
        if (sign > 0) {
            r = concat(inverse(a), concat(MixedWord::var(v, 1), inverse(b)));
        } else {
            r = concat(b, concat(MixedWord::var(v, -1), a));
        }
        return ElementarySubst(v, r);
    }
};

inline MixedWord apply(const ElementarySubst& e, const MixedWord& w) {
    std::vector<Atom> out;
    for (const auto& a : w.atoms()) {
        if (!is_const(a) && std::get<VarOcc>(a).var == e.v) {
            MixedWord piece = std::get<VarOcc>(a).sign > 0 ? e.replacement
                                                           : inverse(e.replacement);
            for (const auto& pa : piece.atoms()) out.push_back(pa);
        } else {
            out.push_back(a);
        }
    }
    return MixedWord::from_atoms(std::move(out), true);
}

/// Composition of elementary substitutions, applied left to right.
class SubstitutionAutomorphism {
public:
    SubstitutionAutomorphism() = default;
    explicit SubstitutionAutomorphism(std::vector<ElementarySubst> steps)
        : steps_(std::move(steps)) {}

    static SubstitutionAutomorphism identity() { return {}; }

    const std::vector<ElementarySubst>& steps() const { return steps_; }
    bool is_identity() const { return steps_.empty(); }

    void append(ElementarySubst e) { steps_.push_back(std::move(e)); }
    void append(const SubstitutionAutomorphism& phi) {
        steps_.insert(steps_.end(), phi.steps_.begin(), phi.steps_.end());
    }

    MixedWord apply(const MixedWord& w) const {
        MixedWord r = free_reduce(w);
        for (const auto& e : steps_) r = grig::apply(e, r);
        return r;
    }

    SubstitutionAutomorphism inverse() const {
        std::vector<ElementarySubst> inv;
        inv.reserve(steps_.size());
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
            inv.push_back(it->inverted());
        return SubstitutionAutomorphism(std::move(inv));
    }

    /// Trace format: one `var -> word` line per elementary substitution.
    std::string trace() const {
        std::ostringstream os;
        for (const auto& e : steps_) os << e.v.str() << " -> " << e.replacement.str() << '\n';
        return os.str();
    }

private:
    std::vector<ElementarySubst> steps_;
};

/// Transport a constraint through an automorphism: extend gamma by the
/// identity to a homomorphism, compose with phi, restrict to target_vars.
inline Constraint transport(const Constraint& gamma, const SubstitutionAutomorphism& phi,
                            const std::set<Variable>& target_vars) {
    Constraint zeta;
    for (const auto& v : target_vars) {
        MixedWord image = phi.apply(MixedWord::var(v, 1));
        zeta.emplace(v, gamma_eval(image, gamma, /*extend_identity=*/true));
    }
    return zeta;
}

}  // namespace grig
