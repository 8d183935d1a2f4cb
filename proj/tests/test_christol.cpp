#include <doctest.h>

#include "fixtures.hpp"

using namespace nott;
using namespace fixtures;

static const char* EQ11 = "(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t";

TEST_CASE("orbit of the differential-forms example matrices") {
    // the 8x8 matrices of the running example; the third listed vector starts
    MatrixSpace sp;
    sp.p_ = 2;
    sp.start = {0, 1, 0, 0, 0, 0, 1, 0};
    sp.mats = {{{1, 0, 0, 0, 0, 0, 0, 0},
                {0, 1, 0, 0, 0, 0, 1, 0},
                {0, 1, 0, 0, 0, 0, 0, 0},
                {0, 0, 0, 1, 0, 0, 1, 0},
                {0, 1, 1, 0, 1, 0, 1, 1},
                {0, 1, 0, 1, 0, 0, 1, 0},
                {0, 0, 0, 0, 0, 0, 0, 0},
                {0, 0, 1, 0, 1, 0, 0, 1}},
               {{1, 0, 0, 0, 0, 1, 0, 0},
                {1, 0, 0, 0, 0, 0, 0, 0},
                {0, 1, 0, 0, 0, 0, 1, 0},
                {1, 1, 0, 1, 0, 1, 1, 0},
                {0, 0, 0, 1, 0, 0, 1, 0},
                {0, 0, 0, 0, 0, 0, 0, 0},
                {0, 1, 0, 1, 0, 0, 1, 0},
                {0, 0, 0, 0, 0, 0, 0, 0}}};
    auto orb = build_graph(sp);
    CHECK(orb.graph.states() == 5);
    SUBCASE("identity maps give a single self-loop vertex") {
        MatrixSpace id;
        id.p_ = 2;
        id.start = {1, 0};
        id.mats = {{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}};
        auto o2 = build_graph(id);
        CHECK(o2.graph.states() == 1);
        CHECK(o2.graph.step(0, 0) == 0);
        CHECK(o2.graph.step(0, 1) == 0);
    }
    SUBCASE("orbit cap") {
        CHECK_THROWS_AS(build_graph(sp, 2), error);
    }
}

TEST_CASE("Ore form of the running example") {
    OreForm G = to_ore_form(parse_poly(EQ11));
    REQUIRE(G.dprime() == 3);
    CHECK(BiPoly::from_t(G.B[0]).print() == "t^7+t^5");
    CHECK(BiPoly::from_t(G.B[1]).print() == "t^7+t^6+t^5+t^4+t^2");
    CHECK(BiPoly::from_t(G.B[2]).print() == "t^8+t^4+t^2+1");
    CHECK(BiPoly::from_t(G.B[3]).print() == "t^8+1");
    SUBCASE("the Ore polynomial annihilates every root") {
        TruncSeries s = hensel_root(parse_poly(EQ11), parse_series("t+t^2+O(t^3)"), 300);
        TruncSeries acc(2, 300);
        TruncSeries pw = s;
        for (size_t i = 0; i < G.B.size(); ++i) {
            acc = acc + TruncSeries::from_poly(G.B[i], 300) * pw;
            pw = pw * pw;
        }
        CHECK(acc.is_zero());
    }
    SUBCASE("an input already in Ore form comes back unchanged") {
        OreForm H = to_ore_form(parse_poly("X^4+t*X^2+X"));
        REQUIRE(H.dprime() == 2);
        CHECK(H.B[0] == FpPoly::one(2));
        CHECK(H.B[1] == FpPoly(2, {0, 1}));
        CHECK(H.B[2] == FpPoly::one(2));
    }
    SUBCASE("Artin-Schreier input: the form annihilates the root span") {
        // X^2+X+t has roots s and s+1; the span contains the constant 1
        OreForm H = to_ore_form(parse_poly("X^2+X+t"));
        FpPoly at_one(2);
        for (auto& b : H.B) at_one = at_one + b;
        CHECK(at_one.is_zero());
    }
    SUBCASE("verified against both truncated roots of X^2+tX+t") {
        BiPoly F = parse_poly("X^2+t*X+t");
        OreForm H = to_ore_form(F);
        long m = hensel_discriminant_ord(F);
        for (auto& q : truncated_solutions(F, 2 * m, SeriesPrefix::none(2))) {
            TruncSeries root = hensel_root(F, TruncSeries::from_poly(q, 2 * m + 1), 128);
            TruncSeries acc(2, 128);
            TruncSeries pw = root;
            for (size_t i = 0; i < H.B.size(); ++i) {
                acc = acc + TruncSeries::from_poly(H.B[i], 128) * pw;
                pw = pw * pw;
            }
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("Ore operator space") {
    OreForm G = to_ore_form(parse_poly(EQ11));
    OreSpace sp = ore_space(G, 2);
    CHECK(sp.N == 49);
    CHECK(sp.dim() == 150);
    auto s0 = sp.s0();
    CHECK(s0[0] == G.B[0]);  // s0 = B_0 X
    auto orb = build_graph(sp);
    CHECK(orb.graph.states() == 5);
    SUBCASE("orbit never exceeds p^dim") {
        CHECK(orb.graph.states() <= 1l << std::min<long>(sp.dim(), 40));
    }
    SUBCASE("direct labels reproduce the figure") {
        TruncSeries seed = hensel_root(parse_poly(EQ11), parse_series("t+t^2+O(t^3)"), 64);
        auto labels = ore_labels(sp, orb.elems, parse_poly(EQ11), seed);
        Dfao A = minimize(with_labels(orb.graph, labels));
        CHECK(equal_series(A, fig2_sigma_min()));
    }
}

TEST_CASE("diagonal method, special case") {
    DiagonalSpace sp = diagonal_space(parse_poly(EQ11));
    CHECK(sp.P == parse_poly("t^3*X^6+t^2*X^5+(t^3+t)*X^4+X^3+t*X^2+X"));
    CHECK(sp.Q == parse_poly("t^3*X^5+(t^3+t^2)*X^4+(t^3+t)*X^3+(t^3+t+1)*X^2+t*X+t+1"));
    CHECK(sp.dim() == 28);
    auto orb = build_graph(sp);
    CHECK(orb.graph.states() == 6);  // merges to 5 after minimization
    std::vector<uint8_t> labels;
    for (auto& e : orb.elems) labels.push_back(static_cast<uint8_t>(sp.label(e)));
    CHECK(minimize(with_labels(orb.graph, labels)).states() == 5);
}

TEST_CASE("hensel labels agree with the direct labelings") {
    BiPoly F = parse_poly(EQ11);
    TruncSeries seed = hensel_root(F, parse_series("t+t^2+O(t^3)"), 64);
    DiagonalSpace sp = diagonal_space(F);
    auto orb = build_graph(sp);
    auto hl = hensel_labels(orb.graph, F, seed);
    std::vector<uint8_t> dl;
    for (auto& e : orb.elems) dl.push_back(static_cast<uint8_t>(sp.label(e)));
    CHECK(hl == dl);
    // the 13-state (1,5) automaton through the hensel route
    BiPoly F15 = parse_poly("t^2*X^3+(t+1)^3*X+t^3+t");
    auto sols = solve(F15, SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 128});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].automaton.states() == 13);
    DiagonalSpace sp15 = diagonal_space(F15);
    auto orb15 = build_graph(sp15);
    auto hl15 = hensel_labels(orb15.graph, F15, sols[0].series);
    CHECK(equal_series(minimize(with_labels(orb15.graph, hl15)),
                       read_dfao_file(catalog_dir() + "/automata/fig5_sigma_15.aut")));
}

TEST_CASE("solve") {
    auto sols = solve(parse_poly(EQ11), SeriesPrefix::parse("t+O(t^2)"),
                      SolveOptions{Method::both, 200});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].automaton.states() == 5);
    CHECK(equal_series(sols[0].automaton, fig2_sigma_min()));
    CHECK(sols[0].series.truncated(8) == parse_series("t+t^2+t^4+t^5+t^7+O(t^8)"));
    SUBCASE("identity equation gives the 3-state automaton of t") {
        auto st = solve(parse_poly("X+t"), SeriesPrefix::none(2), SolveOptions{Method::both, 64});
        REQUIRE(st.size() == 1);
        CHECK(st[0].automaton.states() == 3);
    }
    SUBCASE("Klopsch equation with the longer printed prefix") {
        auto kk = solve(parse_poly("(t^3+1)*X^3+t^3"), SeriesPrefix::parse("t+t^4+O(t^5)"),
                        SolveOptions{Method::diagonal, 64});
        REQUIRE(kk.size() == 1);
        CHECK(equal_series(kk[0].automaton, fig1_klopsch3()));
        CHECK(kk[0].automaton.states() == 6);
    }
    SUBCASE("solver soundness on every emitted solution") {
        auto all = solve(parse_poly("t^4*X^4+(t^2+1)*X^3+(t^3+t)*X^2+t^2*X+t^3"),
                         SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 200});
        CHECK(all.size() == 3);
        for (auto& s : all)
            CHECK(series_prefix(s.automaton, 200) == s.series);
    }
    SUBCASE("reducible belt-and-braces path") {
        // (X^2+X+t)(X+t) has two roots with sigma(0)=0; squarefree_part is a no-op
        BiPoly F = parse_poly("(X^2+X+t)*(X+t)");
        auto sols2 = solve(F, SeriesPrefix::none(2), SolveOptions{Method::diagonal, 64});
        CHECK(sols2.size() == 3);
    }
}

TEST_CASE("cross-method agreement on catalog equations of degree <= 4") {
    for (auto& e : load_catalog()) {
        if (e.equation.deg_x() > 4) continue;
        auto d = solve(e.equation, e.seed, SolveOptions{Method::diagonal, 128});
        auto o = solve(e.equation, e.seed, SolveOptions{Method::ore, 128});
        REQUIRE(d.size() == o.size());
        for (size_t i = 0; i < d.size(); ++i)
            CHECK(equal_series(d[i].automaton, o[i].automaton));
    }
}
