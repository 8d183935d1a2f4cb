// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include "fixtures.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>

using namespace nott;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    std::string id;
    Clock::time_point t0 = Clock::now();
    bool ok = true;
    std::string why;

    explicit Criterion(std::string id_) : id(std::move(id_)) {}
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
    ~Criterion() {
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("%-4s %s  (%.2fs)%s%s\n", id.c_str(), ok ? "PASS" : "FAIL", s,
                    ok ? "" : "  -- ", why.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

Dfao solved(const std::string& name, long prec = 200) {
    auto e = load_entry(name);
    if (!e) throw error(errc::io, "missing catalog entry " + name);
    auto sols = solve(e->equation, e->seed, SolveOptions{e->method, prec});
    if (sols.size() != 1) throw error(errc::internal, name + ": not uniquely solved");
    return sols[0].automaton;
}

std::string fixture_path(const std::string& f) {
    return default_catalog_dir() + "/automata/" + f;
}

}  // namespace

int main() {
    std::printf("acceptance criteria\n-------------------\n");

    {  // 1: solver golden path
        Criterion c("C1");
        try {
            auto e = load_entry("sigma_min");
            auto sols = solve(e->equation, e->seed, SolveOptions{Method::both, 200});
            c.expect(sols.size() == 1, "unique solution");
            c.expect(sols[0].automaton.states() == 5, "5 states");
            c.expect(equal_series(sols[0].automaton, read_dfao_file(fixture_path("fig2_sigma_min.aut"))),
                     "equal_series to the figure fixture");
            c.expect(series_prefix(sols[0].automaton, 8) == parse_series("t+t^2+t^4+t^5+t^7+O(t^8)"),
                     "series prefix");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 2: ore and diagonal agree on catalog equations of degree <= 4
        Criterion c("C2");
        try {
            int checked = 0;
            for (auto& e : load_catalog()) {
                if (e.equation.deg_x() > 4) continue;
                auto d = solve(e.equation, e.seed, SolveOptions{Method::diagonal, 128});
                auto o = solve(e.equation, e.seed, SolveOptions{Method::ore, 128});
                c.expect(d.size() == o.size(), e.name + ": solution counts differ");
                for (size_t i = 0; i < std::min(d.size(), o.size()); ++i)
                    c.expect(equal_series(d[i].automaton, o[i].automaton),
                             e.name + ": routes disagree");
                ++checked;
            }
            c.expect(checked >= 18, "enough equations checked");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 3: state counts, including the stretch tier
        Criterion c("C3");
        const std::pair<const char*, long> rows[] = {
            {"sigma_K3", 6},  {"sigma_CS", 7},  {"sigma_CS3", 7}, {"sigma_CS2", 7},
            {"sigma_J", 9},   {"sigma_J3", 11}, {"sigma_T1", 9},  {"sigma_T2", 17},
            {"sigma_T3", 17}, {"sigma_T4", 17}, {"sigma_15", 13}, {"sigma_V2", 14},
            {"sigma_V1", 18}, {"sigma_V3", 25}, {"sigma_S1", 5},  {"sigma_19", 110},
            {"sigma_8", 320}};
        for (auto& [name, n] : rows) {
            try {
                long got = solved(name, 64).states();
                c.expect(got == n, std::string(name) + ": got " + std::to_string(got) +
                                       ", expected " + std::to_string(n));
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
    }

    {  // 4: Klopsch state counts
        Criterion c("C4");
        try {
            auto counts = klopsch_state_counts({1, 3, 5, 7, 9, 11, 13, 15, 17});
            c.expect(counts == std::vector<long>{2, 6, 14, 9, 28, 53, 67, 12, 54},
                     "counts differ from the published sequence");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 5: order certification
        Criterion c("C5");
        auto check_order = [&](const char* name, long want, bool want_cert) {
            try {
                auto r = exact_order(solved(name));
                c.expect(r.finite && (1l << r.log2_order) == want,
                         std::string(name) + ": wrong order");
                if (want_cert) c.expect(r.certified, std::string(name) + ": not certified");
                else c.expect(r.filter_precision >= 512,
                              std::string(name) + ": deep filter tier not reached");
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        };
        // equations of X-degree <= 4 are certified exactly; above that the
        // truncated filter at t^512 is the accepted evidence
        for (auto* n : {"sigma_min", "sigma_CS", "sigma_J", "sigma_T1", "sigma_T2", "sigma_T3",
                        "sigma_T4", "sigma_15"})
            check_order(n, 4, true);
        for (auto* n : {"sigma_K3", "sigma_V1", "sigma_V2", "sigma_V3", "sigma_S1", "sigma_S3",
                        "sigma_S5"})
            check_order(n, 2, true);
        for (auto* n : {"sigma_K5", "sigma_K7", "sigma_K9", "sigma_K11"})
            check_order(n, 2, false);
        check_order("sigma_8", 8, false);
    }

    {  // 6: break sequences
        Criterion c("C6");
        const std::pair<const char*, std::vector<long>> rows[] = {
            {"sigma_min", {1, 3}}, {"sigma_CS", {1, 3}},  {"sigma_CS3", {1, 3}},
            {"sigma_J", {1, 3}},   {"sigma_15", {1, 5}},  {"sigma_19", {1, 9}},
            {"sigma_8", {1, 3, 11}}, {"sigma_V1", {1}},   {"sigma_V2", {5}}};
        for (auto& [name, want] : rows) {
            try {
                auto got = break_sequence(solved(name, 64), static_cast<int>(want.size()));
                c.expect(got == want, std::string(name) + ": breaks differ");
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
    }

    {  // 7: Witt vectors and break prediction
        Criterion c("C7");
        try {
            auto b1 = ks_breaks({{1, WittVec::constants({1, 0})}}, 2);
            c.expect(b1.upper == std::vector<long>{1, 2} && b1.lower == std::vector<long>{1, 3},
                     "minimal case");
            auto b2 = ks_breaks({{1, WittVec::constants({1, 0})}, {3, WittVec::constants({0, 1})}}, 2);
            c.expect(b2.upper == std::vector<long>{1, 3} && b2.lower == std::vector<long>{1, 5},
                     "two-term case");
            auto b2b = ks_breaks({{1, WittVec::constants({1, 0})}, {5, WittVec::constants({0, 1})}}, 2);
            c.expect(b2b.upper == std::vector<long>{1, 5} && b2b.lower == std::vector<long>{1, 9},
                     "m = 5 case");
            for (auto& seq : {std::vector<long>{1, 3}, {1, 5}, {1, 9}, {1, 3, 11}})
                c.expect(upper_to_lower(lower_to_upper(seq).upper).lower == seq, "round trip");
            std::mt19937_64 rng(2);
            auto rp = [&](long d) {
                std::vector<uint8_t> v(d + 1);
                for (auto& x : v) x = static_cast<uint8_t>(rng() & 1);
                return FpPoly(2, v);
            };
            int instances = 0;
            for (int n : {2, 3})
                for (int iter = 0; iter < 200; ++iter, ++instances) {
                    WittVec x = WittVec::zero(n), y = x, z = x;
                    for (int i = 0; i < n; ++i) {
                        x.a[i] = rp(4);
                        y.a[i] = rp(4);
                        z.a[i] = rp(4);
                    }
                    c.expect((x + y) == (y + x), "commutativity");
                    c.expect(((x + y) + z) == (x + (y + z)), "associativity of +");
                    c.expect(((x * y) * z) == (x * (y * z)), "associativity of *");
                    c.expect(((x + y) * z) == (x * z + y * z), "distributivity");
                    c.expect((x + y).wp() == x.wp() + y.wp(), "wp additive");
                }
            c.expect(instances == 400, "400 instances");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 8: hierarchy classification of every catalog row with a class
        Criterion c("C8");
        const std::pair<const char*, const char*> rows[] = {
            {"sigma_CS3", "S"},   {"sigma_T1", "S"},   {"sigma_T2", "S"},  {"sigma_T3", "S"},
            {"sigma_T4", "S"},    {"sigma_S1", "S"},   {"sigma_S3", "S"},  {"sigma_S5", "S"},
            {"sigma_CS", "hatS"}, {"sigma_CS2", "hatS"}, {"sigma_J", "QS"}, {"sigma_J3", "QS"},
            {"sigma_K3", "notQS"}, {"sigma_K5", "notQS"}, {"sigma_K7", "notQS"},
            {"sigma_K9", "notQS"}, {"sigma_K11", "notQS"}, {"sigma_V1", "notQS"},
            {"sigma_V2", "notQS"}, {"sigma_V3", "notQS"}, {"sigma_min", "notQS"},
            {"sigma_15", "notQS"}, {"sigma_19", "notQS"}, {"sigma_8", "notQS"}};
        const std::pair<const char*, long> ranks[] = {{"sigma_CS3", 1}, {"sigma_T1", 2},
                                                      {"sigma_T2", 3},  {"sigma_T3", 3},
                                                      {"sigma_T4", 3},  {"sigma_S1", 1},
                                                      {"sigma_S3", 1},  {"sigma_S5", 2}};
        for (auto& [name, want] : rows) {
            try {
                auto e = load_entry(name);
                auto rep = classify_hierarchy(solved(name), &e->equation);
                c.expect(level_name(rep.level) == want,
                         std::string(name) + ": got " + level_name(rep.level));
                if (std::string(name) == "sigma_min" || std::string(name) == "sigma_19")
                    c.expect(rep.qs_how == "odd-degree",
                             std::string(name) + ": expected the field-theoretic route");
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
        for (auto& [name, want] : ranks) {
            try {
                auto sp = is_sparse(solved(name));
                c.expect(sp.sparse && sp.rank == want, std::string(name) + ": rank");
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
    }

    {  // 9: stored hatS witnesses replay
        Criterion c("C9");
        for (auto* name : {"sigma_J", "sigma_J3", "sigma_V1", "sigma_V2", "sigma_K3", "sigma_15"}) {
            try {
                auto e = load_entry(name);
                c.expect(e && e->witness, std::string(name) + ": witness row missing");
                if (e && e->witness)
                    c.expect(replay_hatS_witness(solved(name), witness_to_walk_order(*e->witness)),
                             std::string(name) + ": row does not replay");
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
    }

    {  // 10: Klein four-group
        Criterion c("C10");
        try {
            auto v1 = load_entry("sigma_V1"), v2 = load_entry("sigma_V2");
            auto a = solve(v1->equation, v1->seed, SolveOptions{Method::diagonal, 200})[0].series;
            auto b = solve(v2->equation, v2->seed, SolveOptions{Method::diagonal, 200})[0].series;
            c.expect(compose(a, a) == TruncSeries::identity(2, 200), "V1 squares to t");
            c.expect(compose(b, b) == TruncSeries::identity(2, 200), "V2 squares to t");
            c.expect(compose(a, b) == compose(b, a), "generators commute");
            c.expect(depth(a) == 1 && depth(b) == 5, "depths (1, 5)");
            long dmax = std::max({*depth(a), *depth(b), *depth(compose(a, b))});
            c.expect(dmax >= 5, "some nontrivial element has depth >= 5");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 11: enumeration
        Criterion c("C11");
        try {
            SearchConfig cfg;
            cfg.max_states = 5;
            cfg.order_log2 = 2;
            cfg.workers = 4;
            auto r = enumerate_finite_order(cfg);
            c.expect(r.automata.size() == 1, "exactly one automaton");
            if (r.automata.size() == 1)
                c.expect(equal_series(r.automata[0], read_dfao_file(fixture_path("fig2_sigma_min.aut"))),
                         "it is the 5-state order-4 automaton");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 12: synchronization
        Criterion c("C12");
        try {
            c.expect(verify_sync_word(solved("sigma_K3", 64), "1011"), "1011 synchronizes K3");
            c.expect(verify_sync_word(solved("sigma_min", 64), "111"), "111 synchronizes sigma_min");
            auto sj = sync_analysis(solved("sigma_J", 64));
            c.expect(!sj.synchronizing && sj.absorbing.size() == 2,
                     "sigma_J: two absorbing states, not synchronizing");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // 13: closed-form coefficient streams
        Criterion c("C13");
        const std::pair<const char*, long> forms[] = {
            {"sigma_CS", 200},  {"sigma_CS3", 2000}, {"sigma_J", 200},  {"sigma_J3", 200},
            {"sigma_CS2", 200}, {"sigma_S1", 2000},  {"sigma_S3", 2000}, {"sigma_T1", 2000},
            {"sigma_T2", 2000}, {"sigma_T3", 2000},  {"sigma_T4", 2000}};
        for (auto& [name, prec] : forms) {
            try {
                Dfao A = solved(name, 64);
                c.expect(series_prefix(A, prec) == closed_form(name, prec),
                         std::string(name) + ": stream differs before t^" + std::to_string(prec));
            } catch (const std::exception& e) {
                c.expect(false, std::string(name) + ": " + e.what());
            }
        }
    }

    {  // 14: order-8 conjugacy normal forms
        Criterion c("C14");
        try {
            TruncSeries s8 = hensel_root(load_entry("sigma_8")->equation,
                                         parse_series("t+t^2+O(t^3)"), 48);
            TruncSeries s82 = hensel_root(load_entry("sigma_82")->equation,
                                          parse_series("t+t^2+t^5+t^9+t^11+O(t^13)"), 48);
            auto cube = [](const TruncSeries& s) { return compose(compose(s, s), s); };
            std::set<std::pair<int, int>> seen;
            seen.insert(normalize_order8(s8));
            seen.insert(normalize_order8(cube(s8)));
            seen.insert(normalize_order8(s82));
            seen.insert(normalize_order8(cube(s82)));
            c.expect(seen.size() == 4, "four distinct (b4, b11) values");
            c.expect(normalize_order8(s8) == std::pair<int, int>{1, 1}, "sigma_8 lands on (1,1)");
            c.expect(normalize_order8(cube(s8)) == std::pair<int, int>{0, 1},
                     "sigma_8 cubed lands on (0,1)");
            c.expect(normalize_order8(s82) == std::pair<int, int>{1, 0}, "sigma_82 lands on (1,0)");
            // sigma ~ sigma^5, sigma !~ sigma^3 at the normal-form level
            TruncSeries s5 = compose(compose(cube(s8), s8), s8);
            c.expect(normalize_order8(s5) == normalize_order8(s8), "sigma ~ sigma^5");
            c.expect(normalize_order8(cube(s8)) != normalize_order8(s8), "sigma !~ sigma^3");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    {  // property backstop: always on
        Criterion c("P");
        try {
            std::mt19937_64 rng(99);
            long cases = 0;
            // Cartier reconstruction
            for (int iter = 0; iter < 500; ++iter, ++cases) {
                std::vector<uint8_t> v(1 + rng() % 64);
                for (auto& x : v) x = static_cast<uint8_t>(rng() & 1);
                FpPoly f(2, v);
                FpPoly sum = f.cartier(0).frobenius() + f.cartier(1).frobenius().shifted(1);
                c.expect(sum == f, "cartier reconstruction");
            }
            // Hensel residuals on every catalog equation
            for (auto& e : load_catalog()) {
                ++cases;
                auto sols = solve(e.equation, e.seed, SolveOptions{e.method, 200});
                for (auto& s : sols)
                    c.expect(eval_poly(e.equation, s.series).is_zero(),
                             e.name + ": nonzero residual");
            }
            // minimize idempotence + equal_series laws + coeff/prefix agreement
            std::vector<Dfao> pool;
            for (int iter = 0; iter < 400; ++iter, ++cases) {
                Dfao A = fixtures::random_dfao(rng, 2 + static_cast<int>(rng() % 7));
                Dfao M = minimize(A);
                c.expect(minimize(M) == M, "minimize idempotent");
                c.expect(equal_series(A, M), "minimize preserves the series");
                if (pool.size() < 12) pool.push_back(A);
            }
            for (auto& A : pool)
                for (auto& B : pool) {
                    ++cases;
                    bool ab = equal_series(A, B);
                    c.expect(ab == equal_series(B, A), "equal_series symmetric");
                    if (ab)
                        c.expect(series_prefix(A, 128) == series_prefix(B, 128),
                                 "equal automata share series");
                }
            // counting vs rank oracle on sparse catalog automata
            for (auto* name : {"sigma_CS3", "sigma_T1", "sigma_T2", "sigma_S1"}) {
                ++cases;
                Dfao A = solved(name, 64);
                long rank = is_sparse(A).rank;
                double C = 0;
                for (int L = 8; L <= 20; ++L)
                    C = std::max(C, double(counting_function(A, 1ull << L)) / std::pow(L, rank));
                double at24 = double(counting_function(A, 1ull << 24)) / std::pow(24.0, rank);
                c.expect(at24 <= C * 1.05 + 1, std::string(name) + ": counting outgrew its rank");
            }
            c.expect(cases >= 1000, "1000+ randomized cases");
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }

    std::printf("-------------------\n%s\n", g_failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
    return g_failures ? 1 : 0;
}
