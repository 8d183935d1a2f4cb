// Command-line driver; all functionality is reached through the C API.
#include "nott.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string slurp_or_literal(const std::string& arg) {
    std::ifstream f(arg);
    if (!f.good()) return arg;
    std::ostringstream os;
    os << f.rdbuf();
    std::string s = os.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

struct PolyHandle {
    nott_poly* p = nullptr;
    ~PolyHandle() { nott_poly_free(p); }
};
struct AutHandle {
    nott_aut* a = nullptr;
    ~AutHandle() { nott_aut_free(a); }
};

int fail(const std::string& what) {
    std::cerr << "error: " << what << ": " << nott_last_error() << "\n";
    return 1;
}

void print_owned(char* s) {
    if (s) {
        std::cout << s;
        nott_string_free(s);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for 2-automatic power series and finite-order elements under composition"};
    app.require_subcommand(1);

    // shared option storage
    std::string eq, prefix = "t+O(t^2)", method = "diagonal", aut_path, out, eq_path, catalog_dir;
    std::string terms;
    long prec = 200, mmax = 64;
    int kexp = 0, nlen = 2, nmax = 4, workers = 1, maxstates = 5;
    long order_target = 4;
    unsigned long long kidx = 0;
    bool exact = false, dot = false;

    auto* c_solve = app.add_subcommand("solve", "solve F(t,X) = 0 into minimal automata");
    c_solve->add_option("--eq", eq, "polynomial text or file")->required();
    c_solve->add_option("--prefix", prefix, "series constraint, e.g. t+O(t^2)");
    c_solve->add_option("--method", method, "ore | diagonal | both");
    c_solve->add_option("-N,--prec", prec, "series precision");
    c_solve->add_option("--out", out, "write the automaton (first solution) here");
    c_solve->add_flag("--dot", dot, "print dot instead of the codec");

    auto* c_coeff = app.add_subcommand("coeff", "coefficient a_k of the series of an automaton");
    c_coeff->add_option("--automaton", aut_path)->required();
    c_coeff->add_option("--k", kidx)->required();

    auto* c_series = app.add_subcommand("series", "series prefix of an automaton");
    c_series->add_option("--automaton", aut_path)->required();
    c_series->add_option("-N,--prec", prec);

    auto* c_min = app.add_subcommand("minimize", "minimize an automaton");
    c_min->add_option("--automaton", aut_path)->required();
    c_min->add_option("--out", out);
    c_min->add_flag("--dot", dot);

    auto* c_order = app.add_subcommand("order", "compositional order of the series");
    c_order->add_option("--automaton", aut_path)->required();
    c_order->add_option("--nmax", nmax);
    c_order->add_flag("--exact", exact, "force the resultant certificate");

    auto* c_breaks = app.add_subcommand("breaks", "lower break sequence");
    c_breaks->add_option("--automaton", aut_path)->required();
    c_breaks->add_option("-n", nlen, "number of entries");

    auto* c_power = app.add_subcommand("power", "equation of the 2^n-th compositional power");
    c_power->add_option("--eq", eq)->required();
    c_power->add_option("--prefix", prefix);
    c_power->add_option("-n", kexp)->required();

    auto* c_classify = app.add_subcommand("classify", "sparseness hierarchy classification");
    c_classify->add_option("--automaton", aut_path)->required();
    c_classify->add_option("--eq", eq_path, "certified equation (enables field tests and the twist)");
    c_classify->add_option("--mmax", mmax);

    auto* c_sync = app.add_subcommand("sync", "absorbing states and synchronizing word");
    c_sync->add_option("--automaton", aut_path)->required();

    auto* c_enum = app.add_subcommand("enumerate", "minimal automata of a given finite order");
    c_enum->add_option("-N,--states", maxstates, "maximum number of states");
    c_enum->add_option("--order", order_target, "target order (a power of 2)");
    c_enum->add_option("--out", out, "output directory");
    c_enum->add_option("--workers", workers);

    auto* c_catalog = app.add_subcommand("catalog", "catalog drivers");
    std::string cat_action = "verify", cat_name;
    c_catalog->add_option("action", cat_action, "verify | list");
    c_catalog->add_option("name", cat_name, "entry name (default: all)");
    c_catalog->add_option("--dir", catalog_dir, "catalog directory");
    c_catalog->add_option("--workers", workers, "parallel verification workers");

    auto* c_witt = app.add_subcommand("witt-breaks", "break sequence from Witt vector data");
    c_witt->add_option("--terms", terms, "e.g. \"1:(1,0);3:(0,1)\"")->required();
    c_witt->add_option("-n", nlen, "Witt length")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (c_solve->parsed()) {
        PolyHandle f{nott_poly_parse(slurp_or_literal(eq).c_str(), 2)};
        if (!f.p) return fail("parse");
        nott_sols* sols = nott_solve(f.p, prefix.c_str(), method.c_str(), prec);
        if (!sols) return fail("solve");
        long n = nott_sols_count(sols);
        std::cout << "solutions = " << n << "\n";
        for (long i = 0; i < n; ++i) {
            AutHandle a{nott_sols_aut(sols, i)};
            char* s = nott_sols_series(sols, i);
            std::cout << "-- solution " << (i + 1) << ": " << nott_aut_states(a.a)
                      << " states, series " << s << "\n";
            nott_string_free(s);
            if (i == 0 && !out.empty()) {
                if (nott_aut_write(a.a, out.c_str()) != NOTT_OK) return fail("write");
            } else if (out.empty()) {
                print_owned(dot ? nott_aut_dot(a.a) : nott_aut_print(a.a));
            }
        }
        nott_sols_free(sols);
        return 0;
    }
    if (c_coeff->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        int c = nott_aut_coeff(a.a, kidx);
        if (c < 0) return fail("coeff");
        std::cout << c << "\n";
        return 0;
    }
    if (c_series->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        char* s = nott_aut_series(a.a, prec);
        if (!s) return fail("series");
        std::cout << s << "\n";
        nott_string_free(s);
        return 0;
    }
    if (c_min->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        AutHandle m{nott_aut_minimize(a.a)};
        if (!m.a) return fail("minimize");
        std::cerr << nott_aut_states(a.a) << " -> " << nott_aut_states(m.a) << " states\n";
        if (!out.empty()) {
            if (nott_aut_write(m.a, out.c_str()) != NOTT_OK) return fail("write");
        } else {
            print_owned(dot ? nott_aut_dot(m.a) : nott_aut_print(m.a));
        }
        return 0;
    }
    if (c_order->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        long order = 0, fp = 0;
        int cert = 0;
        if (nott_order(a.a, nmax, exact ? 1 : 0, &order, &cert, &fp) != NOTT_OK)
            return fail("order");
        if (order == 0) {
            std::cout << "order = not finite up to 2^" << nmax << " (filter at t^" << fp << ")\n";
        } else {
            std::cout << "order = " << order << " ("
                      << (cert ? "certified" : "truncated filter at t^" + std::to_string(fp))
                      << ")\n";
        }
        return 0;
    }
    if (c_breaks->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        std::vector<long> b(nlen);
        if (nott_breaks(a.a, nlen, b.data()) != NOTT_OK) return fail("breaks");
        std::cout << "breaks = (";
        for (int i = 0; i < nlen; ++i) std::cout << (i ? "," : "") << b[i];
        std::cout << ")\n";
        return 0;
    }
    if (c_power->parsed()) {
        PolyHandle f{nott_poly_parse(slurp_or_literal(eq).c_str(), 2)};
        if (!f.p) return fail("parse");
        char* series = nullptr;
        PolyHandle g{nott_compose_power(f.p, prefix.c_str(), kexp, &series)};
        if (!g.p) return fail("power");
        print_owned(nott_poly_print(g.p));
        std::cout << "\n";
        if (series) {
            std::cout << "series = " << series << "\n";
            nott_string_free(series);
        }
        return 0;
    }
    if (c_classify->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        PolyHandle f;
        if (!eq_path.empty()) {
            f.p = nott_poly_parse(slurp_or_literal(eq_path).c_str(), 2);
            if (!f.p) return fail("parse equation");
        }
        char* rep = nott_classify(a.a, f.p, mmax);
        if (!rep) return fail("classify");
        print_owned(rep);
        return 0;
    }
    if (c_sync->parsed()) {
        AutHandle a{nott_aut_read(aut_path.c_str())};
        if (!a.a) return fail("read");
        char* rep = nott_sync(a.a);
        if (!rep) return fail("sync");
        print_owned(rep);
        return 0;
    }
    if (c_enum->parsed()) {
        int lg = 0;
        while ((1l << lg) < order_target) ++lg;
        if ((1l << lg) != order_target) {
            std::cerr << "error: --order must be a power of 2\n";
            return 2;
        }
        long found = 0;
        if (nott_enumerate(maxstates, lg, workers, out.empty() ? nullptr : out.c_str(), &found) !=
            NOTT_OK)
            return fail("enumerate");
        std::cout << "found = " << found << "\n";
        return 0;
    }
    if (c_catalog->parsed()) {
        const char* dir = catalog_dir.empty() ? nullptr : catalog_dir.c_str();
        if (cat_action == "list") {
            char* s = nott_catalog_list(dir);
            if (!s) return fail("catalog");
            print_owned(s);
            return 0;
        }
        if (cat_action != "verify") {
            std::cerr << "error: unknown catalog action " << cat_action << "\n";
            return 2;
        }
        int pass = 0;
        char* rep = nott_catalog_verify(cat_name.empty() ? nullptr : cat_name.c_str(), dir,
                                       workers, &pass);
        if (!rep) return fail("catalog");
        print_owned(rep);
        return pass ? 0 : 1;
    }
    if (c_witt->parsed()) {
        std::vector<long> lower(nlen), upper(nlen);
        if (nott_witt_breaks(terms.c_str(), nlen, lower.data(), upper.data()) != NOTT_OK)
            return fail("witt-breaks");
        std::cout << "upper = <";
        for (int i = 0; i < nlen; ++i) std::cout << (i ? "," : "") << upper[i];
        std::cout << ">\nlower = (";
        for (int i = 0; i < nlen; ++i) std::cout << (i ? "," : "") << lower[i];
        std::cout << ")\n";
        return 0;
    }
    return 2;
}
