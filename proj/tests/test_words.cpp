#include <grig/automorphism.hpp>
#include <grig/words.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"

using namespace grig;

static GroupElement ge(const char* s) { return GroupElement::parse(s); }
static Variable vx{"x", ""}, vy{"y", ""}, vz{"z", ""};

TEST_CASE("mixed word normalization and printing", "[words]") {
    auto w = MixedWord::from_atoms(
        {Atom{ge("ab")}, Atom{ge("ba")}, Atom{VarOcc{vx, 1}}, Atom{GroupElement{}},
         Atom{VarOcc{vx, -1}}, Atom{ge("b")}, Atom{ge("c")}});
    // constants merged, identities dropped, variable pair kept
    CHECK(w.size() == 3);
    CHECK(w.str() == "x x^-1 d");
    CHECK(free_reduce(w).str() == "d");
    auto ww = MixedWord::from_atoms({Atom{VarOcc{vx, 1}}, Atom{ge("b")},
                                     Atom{ge("b")}, Atom{VarOcc{vx, -1}},
                                     Atom{VarOcc{vy, 1}}});
    CHECK(free_reduce(ww).str() == "y");
}

TEST_CASE("vars, quadratic, orientability", "[words]") {
    auto w1 = parse_mixed_word("x c x^-1");
    CHECK(vars(w1) == std::set<Variable>{vx});
    CHECK(is_quadratic(w1));
    CHECK(is_orientable(w1));
    auto w2 = parse_mixed_word("x c x");
    CHECK(is_quadratic(w2));
    CHECK_FALSE(is_orientable(w2));
    auto w3 = parse_mixed_word("x c");
    CHECK_FALSE(is_quadratic(w3));
    auto w4 = parse_mixed_word("[x,y] z^-1 c z");
    CHECK(vars(w4) == std::set<Variable>{vx, vy, vz});
    CHECK(is_quadratic(w4));
    CHECK(is_orientable(w4));
    CHECK(vars(parse_mixed_word("abab")).empty());
}

TEST_CASE("eval", "[words]") {
    Assignment al{{vx, ge("a")}, {vy, ge("b")}};
    CHECK(eval(parse_mixed_word("[x,y]"), al) == ge("abab"));
    CHECK(eval(parse_mixed_word("ab ba d"), {}) == ge("d"));
    CHECK(eval(parse_mixed_word("x x^-1"), al).is_identity());
    CHECK_THROWS_AS(eval(parse_mixed_word("q"), al), std::invalid_argument);

    // homomorphism in each letter position
    std::mt19937 rng(8);
    for (int t = 0; t < 100; ++t) {
        auto u = MixedWord::from_atoms({Atom{oracle::random_word(rng, 6)},
                                        Atom{VarOcc{vx, 1}}});
        auto v = MixedWord::from_atoms({Atom{VarOcc{vy, -1}},
                                        Atom{oracle::random_word(rng, 6)}});
        Assignment a{{vx, oracle::random_word(rng, 6)}, {vy, oracle::random_word(rng, 6)}};
        CHECK(equal(eval(concat(u, v), a), multiply(eval(u, a), eval(v, a))));
    }
}

TEST_CASE("gamma_eval and sigma", "[words]") {
    Constraint g{{vx, pi_K(ge("ab"))}, {vy, pi_K(ge("d"))}};
    CHECK(gamma_eval(parse_mixed_word("abab d"), {}) == pi_K(ge("d")));
    CHECK(gamma_eval(parse_mixed_word("x x^-1"), g) == QElement{});
    CHECK(sigma_w(parse_mixed_word("[x,y]"), g) == 0);
    CHECK(sigma_w(MixedWord::var(vx), g) == st_coset(g[vx]));
    CHECK(sigma_w(parse_mixed_word("ad b"), {}) == 1);

    // pi_K-compatibility: gamma_eval = pi_K(eval) when alpha satisfies gamma
    std::mt19937 rng(12);
    for (int t = 0; t < 500; ++t) {
        Assignment a{{vx, oracle::random_word(rng, 8)}, {vy, oracle::random_word(rng, 8)}};
        Constraint c{{vx, pi_K(a[vx])}, {vy, pi_K(a[vy])}};
        auto w = MixedWord::from_atoms({Atom{VarOcc{vx, 1}}, Atom{oracle::random_word(rng, 5)},
                                        Atom{VarOcc{vy, -1}}, Atom{VarOcc{vx, -1}},
                                        Atom{oracle::random_word(rng, 5)}});
        CHECK(gamma_eval(w, c) == pi_K(eval(w, a)));
    }
}

TEST_CASE("join", "[words]") {
    auto w1 = parse_mixed_word("x ab");
    auto w2 = parse_mixed_word("x^-1 d");
    Variable x = vx;
    CHECK(join(w1, w2, x).str() == "d ab");
    CHECK(join(MixedWord::var(x), MixedWord::var(x, -1), x).empty());
    CHECK_THROWS_AS(join(parse_mixed_word("x c x"), w2, x), std::invalid_argument);
    CHECK_THROWS_AS(join(parse_mixed_word("y c"), w2, x), std::invalid_argument);

    // solution transfer: any alpha solving both W1=1, W2=1 solves the join;
    // any solution of the join extends to the pair by expressing x from W2
    std::mt19937 rng(77);
    auto ball = oracle::reduced_words_upto(2);
    for (int t = 0; t < 30; ++t) {
        auto c1 = oracle::random_word(rng, 2);
        auto c2 = oracle::random_word(rng, 2);
        MixedWord a = MixedWord::from_atoms(
            {Atom{VarOcc{vy, 1}}, Atom{c1}, Atom{VarOcc{vx, 1}}});
        MixedWord b = MixedWord::from_atoms(
            {Atom{VarOcc{vx, -1}}, Atom{c2}, Atom{VarOcc{vy, -1}}});
        MixedWord j = join(a, b, vx);
        for (const auto& gy : ball)
            for (const auto& gx : ball) {
                Assignment al{{vx, gx}, {vy, gy}};
                if (is_trivial(eval(a, al)) && is_trivial(eval(b, al)))
                    CHECK(is_trivial(eval(j, al)));
            }
        for (const auto& gy : ball) {
            Assignment al{{vy, gy}};
            if (is_trivial(eval(j, al))) {
                // x = (V2 U2)^{-e2} evaluated
                GroupElement xv = eval(inverse(concat(detail::slice(b, 1, 3),
                                                      detail::slice(b, 0, 0))),
                                       al);
                al[vx] = xv;
                CHECK(is_trivial(eval(a, al)));
                CHECK(is_trivial(eval(b, al)));
            }
        }
    }
}

TEST_CASE("join_constrained", "[words]") {
    auto w1 = parse_mixed_word("x abab");
    auto w2 = parse_mixed_word("x^-1");
    Constraint g{{vx, pi_K(ge("abab"))}};  // = identity in Gamma/K
    auto [j, gj] = join_constrained(w1, w2, vx, g);
    CHECK(j.str() == "abab");
    CHECK(gj.empty());
    Constraint bad{{vx, pi_K(ge("a"))}};
    CHECK_THROWS_AS(join_constrained(w1, w2, vx, bad), std::invalid_argument);
}

TEST_CASE("standard quadratic rendering", "[words]") {
    StandardQuadratic q;
    q.orientable = true;
    q.commutators = {{vx, vy}};
    q.coefficients = {{vz, ge("ab")}};
    q.validate();
    CHECK(q.render().str() == "x^-1 y^-1 x y z^-1 ab z");
    CHECK(q.genus() == 1);

    StandardQuadratic n;
    n.orientable = false;
    n.squares = {vx, vy};
    n.validate();
    CHECK(n.render().str() == "x x y y");

    StandardQuadratic bad;
    bad.orientable = false;
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
}

TEST_CASE("parser diagnostics", "[words]") {
    CHECK(parse_mixed_word("[x,y] ab^-1 z1").size() == 6);
    CHECK(parse_mixed_word("1").empty());
    CHECK_THROWS_AS(parse_mixed_word("[xy]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mixed_word("x$"), std::invalid_argument);
    auto c = parse_constraint_lines({"x = ab", "", "# comment", "y:0 = 1"});
    CHECK(c.size() == 2);
    CHECK(c[vx] == pi_K(ge("ab")));
    CHECK(c[Variable{"y", "0"}] == QElement{});
    CHECK_THROWS_AS(parse_constraint_lines({"x = zz"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_constraint_lines({"x ab"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_constraint_lines({"x = ab", "x = d"}), std::invalid_argument);
}

TEST_CASE("elementary substitutions", "[words][autom]") {
    // spec example: (z1 -> z1 V^-1) applied to U z1^-1 c1 z1 V gives U V z1^-1 c1 z1
    Variable z1{"z1", ""};
    auto V = parse_mixed_word("y^-1 d");
    auto U = parse_mixed_word("x ab x^-1");
    ElementarySubst e(z1, concat(MixedWord::var(z1), inverse(V)));
    auto w = concat(U, concat(parse_mixed_word("z1^-1 c z1"), V));
    auto img = apply(e, w);
    CHECK(img == free_reduce(concat(U, concat(V, parse_mixed_word("z1^-1 c z1")))));

    CHECK_THROWS_AS(ElementarySubst(z1, parse_mixed_word("x y")), std::invalid_argument);
    CHECK_THROWS_AS(ElementarySubst(z1, parse_mixed_word("z1 z1")), std::invalid_argument);
}

TEST_CASE("automorphism composition and inverse", "[words][autom]") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> pick(0, 2);
    Variable vs[3] = {vx, vy, vz};
    for (int t = 0; t < 60; ++t) {
        SubstitutionAutomorphism phi;
        for (int s = 0; s < 4; ++s) {
            Variable v = vs[pick(rng)];
            // v -> A v^e B with random constant/variable dressing
            std::vector<Atom> repl;
            if (pick(rng) == 0) repl.push_back(Atom{VarOcc{vs[pick(rng)], 1}});
            repl.push_back(Atom{oracle::random_word(rng, 3)});
            repl.push_back(Atom{VarOcc{v, pick(rng) == 0 ? -1 : 1}});
            repl.push_back(Atom{oracle::random_word(rng, 3)});
            auto w = MixedWord::from_atoms(std::move(repl));
            if (occurrence_count(w, v) != 1) { --s; continue; }
            phi.append(ElementarySubst(v, w));
        }
        auto w = MixedWord::from_atoms({Atom{VarOcc{vx, 1}}, Atom{oracle::random_word(rng, 4)},
                                        Atom{VarOcc{vy, -1}}, Atom{VarOcc{vz, 1}},
                                        Atom{oracle::random_word(rng, 4)}});
        CHECK(phi.inverse().apply(phi.apply(w)) == free_reduce(w));
        CHECK(phi.apply(phi.inverse().apply(w)) == free_reduce(w));
    }
    CHECK(SubstitutionAutomorphism::identity().apply(parse_mixed_word("x c")) ==
          parse_mixed_word("x c"));
}

TEST_CASE("constraint transport", "[words][autom]") {
    // identity automorphism leaves gamma unchanged
    Constraint g{{vx, pi_K(ge("ab"))}};
    auto t = transport(g, SubstitutionAutomorphism::identity(), {vx});
    CHECK(t == g);

    // phi = (z -> z V^-1) with constant V: zeta(z) = gamma(z) * pi_K(V)^-1
    auto V = ge("ad");
    SubstitutionAutomorphism phi;
    phi.append(ElementarySubst(vz, concat(MixedWord::var(vz), MixedWord::constant(inverse(V)))));
    Constraint gz{{vz, pi_K(ge("bab"))}};
    auto tz = transport(gz, phi, {vz});
    CHECK(tz[vz] == qmul(pi_K(ge("bab")), qinv(pi_K(V))));

    // trace format
    CHECK(phi.trace() == "z -> z da\n");
}
