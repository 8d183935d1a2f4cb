#include <doctest.h>

#include "fixtures.hpp"

using namespace nott;
using namespace fixtures;

TEST_CASE("guess_equation recovers printed equations") {
    auto sols = solve(parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"),
                      SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 300});
    auto ce = guess_equation(sols[0].automaton);
    CHECK(ce.F == parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"));
    CHECK(equal_series(ce.witness, sols[0].automaton));

    CHECK(guess_equation(automaton_of_t(2)).F == parse_poly("X+t"));
    CHECK(guess_equation(fig1_klopsch3()).F == parse_poly("(t^3+1)*X^3+t^3"));
}

TEST_CASE("compose_power") {
    BiPoly Fcs = parse_poly("(t+1)^2*X^2+X+t");
    auto scs = solve(Fcs, SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 300});
    auto [F1, s1] = compose_power(Fcs, scs[0].series, 1);
    // the square satisfies the printed (t^2+1)X^2 + X + t^2 + t
    CHECK(eval_poly(parse_poly("(t^2+1)*X^2+X+t^2+t"), s1).is_zero());
    CHECK(eval_poly(F1, s1).is_zero());
    SUBCASE("n = 0 is the identity") {
        auto [F0, s0] = compose_power(Fcs, scs[0].series, 0);
        CHECK(F0 == Fcs);
        CHECK(s0 == scs[0].series);
    }
    SUBCASE("sigma_min squared has depth 3") {
        BiPoly F = parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t");
        auto sols = solve(F, SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 300});
        auto [F1b, s1b] = compose_power(F, sols[0].series, 1);
        CHECK(depth(s1b) == 3);
        CHECK(eval_poly(F1b, s1b).is_zero());
    }
}

TEST_CASE("exact_order") {
    auto sols = solve(parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"),
                      SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 300});
    auto r = exact_order(sols[0].automaton);
    CHECK(r.finite);
    CHECK(r.log2_order == 2);
    CHECK(r.certified);
    SUBCASE("even depth means infinite order") {
        auto r2 = exact_order(poly_automaton(FpPoly(2, {0, 1, 0, 1})));  // t + t^3
        CHECK_FALSE(r2.finite);
    }
    SUBCASE("order 2 certified for Klopsch m = 3") {
        auto rk = exact_order(fig1_klopsch3());
        CHECK(rk.finite);
        CHECK(rk.log2_order == 1);
        CHECK(rk.certified);
    }
    SUBCASE("the truncated filter and the certificate agree when both apply") {
        // sigma_CS (order 4, degree-2 equation)
        auto cs = solve(parse_poly("(t+1)^2*X^2+X+t"), SeriesPrefix::parse("t+O(t^2)"),
                        SolveOptions{Method::diagonal, 300});
        auto rc = exact_order(cs[0].automaton);
        CHECK(rc.finite);
        CHECK(rc.log2_order == 2);
        CHECK(rc.certified);
    }
}

TEST_CASE("break sequences") {
    auto sols = solve(parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"),
                      SeriesPrefix::parse("t+O(t^2)"), SolveOptions{Method::diagonal, 300});
    CHECK(break_sequence(sols[0].automaton, 2) == std::vector<long>{1, 3});
    // definition case: t + t^{m+1} has b_0 = m
    CHECK(break_sequence_series(parse_series("t+t^6+O(t^32)"), 1) == std::vector<long>{5});
    // the order-8 entry: (1, 3, 11)
    auto e8 = load_entry("sigma_8");
    REQUIRE(e8);
    auto s8 = solve(e8->equation, e8->seed, SolveOptions{Method::diagonal, 64});
    REQUIRE(s8.size() == 1);
    CHECK(break_sequence(s8[0].automaton, 3) == std::vector<long>{1, 3, 11});
    // deg = h for certified equations of finite-order series (d = h proposition)
    auto ce = guess_equation(s8[0].automaton);
    CHECK(ce.F.deg_x() == ce.F.deg_t());
}
