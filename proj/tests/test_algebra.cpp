#include <doctest.h>

#include "series.hpp"

#include <random>

using namespace nott;

namespace {
FpPoly rand_poly(std::mt19937_64& rng, int p, long maxdeg) {
    std::uniform_int_distribution<long> dd(0, maxdeg);
    std::uniform_int_distribution<int> dc(0, p - 1);
    std::vector<uint8_t> c(dd(rng) + 1);
    for (auto& x : c) x = static_cast<uint8_t>(dc(rng));
    return FpPoly(p, std::move(c));
}
}  // namespace

TEST_CASE("ring ops on F_2[t]") {
    FpPoly a(2, {1, 0, 1}), b(2, {1, 1});
    CHECK(gcd(a, b) == b);  // t^2+1 = (t+1)^2
    FpPoly f = FpPoly(2, {1, 1}).pow(3) * FpPoly(2, {0, 1});
    CHECK(squarefree_part(f) == FpPoly(2, {0, 1, 1}));
    auto fac = factor_univariate(FpPoly(2, {0, 1, 0, 0, 1}));  // t^4 + t
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].first == FpPoly(2, {0, 1}));
    CHECK(fac.factors[1].first == FpPoly(2, {1, 1}));
    CHECK(fac.factors[2].first == FpPoly(2, {1, 1, 1}));
    CHECK_THROWS_AS(FpPoly(2, {1}).exact_div(FpPoly(2, {1, 1})), error);
    CHECK_THROWS_AS(FpPoly(2, {1}).divrem(FpPoly(2)), error);
}

TEST_CASE("factorization reproduces the input and yields irreducibles") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        int p = (iter % 3 == 0) ? 3 : 2;
        FpPoly f = rand_poly(rng, p, 12);
        if (f.deg() < 1) continue;
        auto fac = factor_univariate(f);
        FpPoly prod = FpPoly::constant(p, fac.unit);
        for (auto& [g, m] : fac.factors) {
            prod = prod * g.pow(m);
            // irreducibility: no roots in F_{p^k} for k <= deg/2, via gcd with
            // t^{p^k} - t
            for (long k = 1; 2 * k <= g.deg(); ++k) {
                FpPoly tq = FpPoly::monomial(p, 1);
                long e = 1;
                for (long i = 0; i < k; ++i) e *= p;
                // t^(p^k) mod g by repeated frobenius of t reduced mod g
                FpPoly x = FpPoly::monomial(p, 1);
                for (long i = 0; i < k; ++i) x = x.frobenius().divrem(g).second;
                FpPoly d = gcd(x - FpPoly::monomial(p, 1), g);
                CHECK(d.deg() == 0);
            }
        }
        CHECK(prod == f);
    }
}

TEST_CASE("cartier operators") {
    CHECK(FpPoly(2, {0, 1, 0, 1}).cartier(1) == FpPoly(2, {1, 1}));  // C_1(t^3+t) = t+1
    BiPoly f = parse_poly("t^2*X^2+t*X");
    CHECK(f.cartier(0) == parse_poly("t*X"));
    CHECK(parse_poly("t^3*X+t*X^3").cartier(0).is_zero());

    SUBCASE("Frobenius descent identity C_r(f^p g) = f C_r(g)") {
        std::mt19937_64 rng(11);
        for (int iter = 0; iter < 100; ++iter) {
            int p = iter % 2 ? 2 : 3;
            FpPoly f = rand_poly(rng, p, 10), g = rand_poly(rng, p, 10);
            for (int r = 0; r < p; ++r)
                CHECK((f.frobenius() * g).cartier(r) == f * g.cartier(r));
        }
    }
    SUBCASE("reconstruction: sum_r t^r (C_r f)(t^p) = f, exhaustive deg <= 64") {
        for (unsigned long long bits = 0; bits < (1u << 16); bits += 257) {
            std::vector<uint8_t> c(64, 0);
            for (int i = 0; i < 64; ++i) c[i] = static_cast<uint8_t>((bits >> (i % 16)) & 1);
            FpPoly f(2, c);
            FpPoly sum(2);
            for (int r = 0; r < 2; ++r)
                sum = sum + f.cartier(r).frobenius().shifted(r);
            CHECK(sum == f);
        }
        // and truly exhaustively for deg < 8
        for (unsigned bits = 0; bits < 256; ++bits) {
            std::vector<uint8_t> c(8);
            for (int i = 0; i < 8; ++i) c[i] = (bits >> i) & 1;
            FpPoly f(2, c);
            FpPoly sum = f.cartier(0).frobenius() + f.cartier(1).frobenius().shifted(1);
            CHECK(sum == f);
        }
    }
}

TEST_CASE("resultants") {
    CHECK(resultant_y(parse_poly("X+t"), parse_poly("t+X")) == parse_poly("X+t"));
    CHECK(resultant_y(parse_poly("X^2+t"), parse_poly("t+X")) == parse_poly("X^2+t"));
    SUBCASE("vanishes at common-root specializations") {
        // F of the running order-4 example at (t, sigma(sigma(t)))
        BiPoly F = parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t");
        TruncSeries s = hensel_root(F, parse_series("t+t^2+O(t^3)"), 200);
        BiPoly R = resultant_y(F, F);
        CHECK(eval_poly(R, compose(s, s)).is_zero());
    }
}

TEST_CASE("newton slopes") {
    auto ns = newton_slopes(parse_poly("X^2+t*X+t^2"), Place::t);
    REQUIRE(ns.slopes.size() == 1);
    CHECK(ns.slopes[0].first == make_rational(1, 1));
    CHECK(ns.slopes[0].second == 2);
    // sigma_min equation: V_t = {0^2, 1}
    auto nm = newton_slopes(parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"), Place::t);
    REQUIRE(nm.slopes.size() == 2);
    CHECK(nm.slopes[0].first == make_rational(0, 1));
    CHECK(nm.slopes[0].second == 2);
    CHECK(nm.slopes[1].first == make_rational(1, 1));
    CHECK(nm.slopes[1].second == 1);
    // sigma_8: V_t = {(-2)^2, (-1)^2, 0, 1}
    auto n8 = newton_slopes(
        parse_poly("t^6*X^6+(t^6+t^2)*X^4+(t^6+t^5+t^4+t^3+t^2+1)*X^2+(t+1)^3*X+t^6+t^5+t^2+t"),
        Place::t);
    REQUIRE(n8.slopes.size() == 4);
    CHECK(n8.slopes[0].first == make_rational(-2, 1));
    CHECK(n8.slopes[0].second == 2);
    CHECK(n8.slopes[3].first == make_rational(1, 1));
}

TEST_CASE("series arithmetic") {
    TruncSeries a = parse_series("1+t+O(t^4)");
    CHECK((a * a) == parse_series("1+t^2+O(t^4)"));
    CHECK(a.invert_unit() == parse_series("1+t+t^2+t^3+O(t^4)"));
    CHECK_THROWS_AS(parse_series("t+O(t^4)").invert_unit(), error);
    CHECK(compose(parse_series("t+t^2+O(t^7)"), parse_series("t+t^3+O(t^7)")) ==
          parse_series("t+t^2+t^3+t^6+O(t^7)"));
    // phi is an involution
    TruncSeries phi(2, 200);
    for (long i = 1; i < 200; ++i) phi.set_coeff(i, 1);
    CHECK(compose(phi, phi) == TruncSeries::identity(2, 200));
}

TEST_CASE("compositional inverse") {
    CHECK(comp_inverse(parse_series("t+t^2+O(t^5)")) == parse_series("t+t^2+t^4+O(t^5)"));
    CHECK(comp_inverse(TruncSeries::identity(2, 16)) == TruncSeries::identity(2, 16));
    CHECK(comp_inverse(parse_series("t+t^3+O(t^12)")) ==
          parse_series("t+t^3+t^5+t^9+t^11+O(t^12)"));
    SUBCASE("compose(s, comp_inverse(s)) = t for random s, N = 128") {
        std::mt19937_64 rng(5);
        for (int iter = 0; iter < 25; ++iter) {
            TruncSeries s(2, 128);
            s.set_coeff(1, 1);
            for (long i = 2; i < 128; ++i) s.set_coeff(i, static_cast<int>(rng() & 1));
            CHECK(compose(s, comp_inverse(s)) == TruncSeries::identity(2, 128));
        }
    }
}

TEST_CASE("hensel lifting") {
    BiPoly F = parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t");
    TruncSeries r = hensel_root(F, parse_series("t+t^2+O(t^3)"), 8);
    CHECK(r == parse_series("t+t^2+t^4+t^5+t^7+O(t^8)"));
    CHECK(eval_poly(F, hensel_root(F, parse_series("t+t^2+O(t^3)"), 200)).is_zero());
    // Artin-Schreier equations with polynomial roots, pinned exactly
    BiPoly G = parse_poly("X^2+X+t^2+t");
    CHECK(hensel_root(G, parse_series("t+O(t^2)"), 50) == TruncSeries::from_poly(FpPoly(2, {0, 1}), 50));
    BiPoly G2 = parse_poly("X^2+X+t^4+t");
    CHECK(hensel_root(G2, parse_series("t+O(t^2)"), 50) ==
          TruncSeries::from_poly(FpPoly(2, {0, 1, 1}), 50));
    // the (1,5) equation
    BiPoly H = parse_poly("t^2*X^3+(t+1)^3*X+t^3+t");
    CHECK(hensel_root(H, parse_series("t+t^2+O(t^3)"), 7) ==
          parse_series("t+t^2+t^3+t^4+t^6+O(t^7)"));
    // a seed that does not lift is reported with the failing index
    CHECK_THROWS_WITH_AS(hensel_root(F, parse_series("t+t^3+O(t^4)"), 8),
                         doctest::Contains("not liftable"), error);
}

TEST_CASE("truncated solutions") {
    BiPoly F = parse_poly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t");
    long m = hensel_discriminant_ord(F);
    CHECK(m == 6);
    auto seeds = truncated_solutions(F, 2 * m, SeriesPrefix::parse("t+O(t^2)"));
    CHECK(seeds.size() == 1);
    // the order-4 (1,9) equation also has a unique t + O(t^2) seed
    BiPoly F19 = parse_poly(
        "t^2*X^7+t^3*X^6+(t^5+t^4+t^2)*X^5+(t^5+t^3)*X^4+(t^7+t^5+t^4+t^3+t)*X^3+t^5*X^2+(t^3+t+1)*X+t");
    auto s19 = truncated_solutions(F19, 2 * hensel_discriminant_ord(F19), SeriesPrefix::parse("t+O(t^2)"));
    CHECK(s19.size() == 1);
    auto both = truncated_solutions(parse_poly("X^2+X"), 0, SeriesPrefix::none(2));
    CHECK(both.size() == 2);  // 0 and 1
}

TEST_CASE("polynomial text format") {
    std::string txt = "(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t";
    BiPoly F = parse_poly(txt);
    CHECK(F.print() == "(t^3+t^2+t+1)*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t");
    CHECK(parse_poly(F.print()) == F);
    CHECK(parse_poly(" t * X + 1 ") == parse_poly("t*X+1"));
    CHECK_THROWS_AS(parse_poly("t+"), error);
    CHECK_THROWS_AS(parse_poly("(t"), error);
    CHECK_THROWS_AS(parse_poly("y+t"), error);
    // round trip on random polynomials
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<FpPoly> rows;
        for (int i = 0; i < 4; ++i) rows.push_back(rand_poly(rng, 2, 6));
        BiPoly G(2, rows);
        CHECK(parse_poly(G.print()) == G);
    }
}

TEST_CASE("squarefree and radical in X") {
    BiPoly F = parse_poly("(X+t)^2*(X^2+X+t)");
    bool fl = false;
    BiPoly s = squarefree_part_x(F, &fl);
    CHECK(!fl);
    // in characteristic 2 the squared factor drops out of f / gcd(f, f')
    CHECK(s.deg_x() == 2);
    CHECK(gcd_x(s, s.derivative_x()).deg_x() == 0);
    CHECK(radical_x(F, &fl).deg_x() == 3);
    // a factor with multiplicity 2 survives in the radical
    BiPoly G = parse_poly("(X^2+X+t)^2*(X+t)");
    BiPoly r = radical_x(G, &fl);
    CHECK(!fl);
    CHECK(r.deg_x() == 3);
    CHECK(eval_poly(r, hensel_root(parse_poly("X^2+X+t"), parse_series("t+O(t^2)"), 64)).is_zero());
}
