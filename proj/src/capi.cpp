#include "nott.h"

#include "catalog.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nott;

struct nott_poly {
    BiPoly f;
};
struct nott_aut {
    Dfao a;
};
struct nott_sols {
    std::vector<Solution> sols;
};

namespace {

thread_local std::string g_last_error;

int code_of(const error& e) {
    switch (e.code) {
        case errc::parse: return NOTT_ERR_PARSE;
        case errc::domain: return NOTT_ERR_DOMAIN;
        case errc::not_exact: return NOTT_ERR_NOT_EXACT;
        case errc::limit: return NOTT_ERR_LIMIT;
        case errc::io: return NOTT_ERR_IO;
        default: return NOTT_ERR_INTERNAL;
    }
}

template <typename F>
auto guard_ptr(F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const error& e) {
        g_last_error = e.what();
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

template <typename F>
int guard_status(F&& fn) {
    try {
        fn();
        return NOTT_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return code_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NOTT_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Method parse_method(const char* m) {
    std::string s = m ? m : "diagonal";
    if (s == "ore") return Method::ore;
    if (s == "both") return Method::both;
    if (s == "diagonal" || s.empty()) return Method::diagonal;
    throw error(errc::parse, "unknown method " + s + " (want ore, diagonal or both)");
}

}  // namespace

extern "C" {

const char* nott_last_error(void) { return g_last_error.c_str(); }
void nott_string_free(char* s) { std::free(s); }

nott_poly* nott_poly_parse(const char* text, int p) {
    return guard_ptr([&]() -> nott_poly* { return new nott_poly{parse_poly(text, p)}; });
}
char* nott_poly_print(const nott_poly* f) {
    return guard_ptr([&] { return dup_string(f->f.print()); });
}
long nott_poly_deg_x(const nott_poly* f) { return f->f.deg_x(); }
long nott_poly_deg_t(const nott_poly* f) { return f->f.deg_t(); }
void nott_poly_free(nott_poly* f) { delete f; }

nott_aut* nott_aut_parse(const char* text) {
    return guard_ptr([&]() -> nott_aut* { return new nott_aut{parse_dfao(text)}; });
}
nott_aut* nott_aut_read(const char* path) {
    return guard_ptr([&]() -> nott_aut* { return new nott_aut{read_dfao_file(path)}; });
}
nott_status nott_aut_write(const nott_aut* a, const char* path) {
    return static_cast<nott_status>(guard_status([&] { write_dfao_file(a->a, path); }));
}
char* nott_aut_print(const nott_aut* a) {
    return guard_ptr([&] { return dup_string(print_dfao(a->a)); });
}
char* nott_aut_dot(const nott_aut* a) {
    return guard_ptr([&] { return dup_string(dfao_dot(a->a)); });
}
long nott_aut_states(const nott_aut* a) { return a->a.states(); }
int nott_aut_p(const nott_aut* a) { return a->a.p; }

int nott_aut_validate(const nott_aut* a, char** report) {
    auto v = validate(a->a);
    if (report) {
        std::ostringstream os;
        for (auto& x : v) os << x.what << "\n";
        *report = dup_string(os.str());
    }
    return v.empty() ? 1 : 0;
}

int nott_aut_coeff(const nott_aut* a, uint64_t k) {
    try {
        return coeff_at(a->a, k);
    } catch (const error& e) {
        g_last_error = e.what();
        return -1;
    }
}

char* nott_aut_series(const nott_aut* a, long n) {
    return guard_ptr([&] { return dup_string(series_prefix(a->a, n).print()); });
}

nott_aut* nott_aut_minimize(const nott_aut* a) {
    return guard_ptr([&]() -> nott_aut* { return new nott_aut{minimize(a->a)}; });
}

int nott_aut_equal_series(const nott_aut* a, const nott_aut* b) {
    try {
        return equal_series(a->a, b->a) ? 1 : 0;
    } catch (const error& e) {
        g_last_error = e.what();
        return -1;
    }
}

void nott_aut_free(nott_aut* a) { delete a; }

nott_sols* nott_solve(const nott_poly* f, const char* prefix, const char* method,
                      long series_prec) {
    return guard_ptr([&]() -> nott_sols* {
        SolveOptions opt;
        opt.method = parse_method(method);
        if (series_prec > 0) opt.series_prec = series_prec;
        auto pre = SeriesPrefix::parse(prefix ? prefix : "", f->f.p());
        return new nott_sols{solve(f->f, pre, opt)};
    });
}
long nott_sols_count(const nott_sols* s) { return static_cast<long>(s->sols.size()); }
nott_aut* nott_sols_aut(const nott_sols* s, long i) {
    if (i < 0 || i >= nott_sols_count(s)) {
        g_last_error = "solution index out of range";
        return nullptr;
    }
    return new nott_aut{s->sols[i].automaton};
}
char* nott_sols_series(const nott_sols* s, long i) {
    if (i < 0 || i >= nott_sols_count(s)) {
        g_last_error = "solution index out of range";
        return nullptr;
    }
    return dup_string(s->sols[i].series.print());
}
void nott_sols_free(nott_sols* s) { delete s; }

nott_poly* nott_guess_equation(const nott_aut* a) {
    return guard_ptr([&]() -> nott_poly* { return new nott_poly{guess_equation(a->a).F}; });
}

nott_status nott_order(const nott_aut* a, int nmax, int exact, long* order, int* certified,
                       long* filter_prec) {
    return static_cast<nott_status>(guard_status([&] {
        OrderOptions oo;
        if (nmax > 0) oo.nmax = nmax;
        oo.force_certify = exact != 0;
        auto r = exact_order(a->a, oo);
        if (order) *order = r.finite ? (1l << r.log2_order) : 0;
        if (certified) *certified = r.certified ? 1 : 0;
        if (filter_prec) *filter_prec = r.filter_precision;
    }));
}

nott_status nott_breaks(const nott_aut* a, int n, long* out) {
    return static_cast<nott_status>(guard_status([&] {
        auto b = break_sequence(a->a, n);
        for (int i = 0; i < n; ++i) out[i] = b[i];
    }));
}

nott_poly* nott_compose_power(const nott_poly* f, const char* prefix, int n, char** series_out) {
    return guard_ptr([&]() -> nott_poly* {
        TruncSeries seed = parse_series(prefix, f->f.p());
        if (seed.precision() < 64) seed = hensel_root(f->f, seed, 64);
        auto [F, s] = compose_power(f->f, seed, n);
        if (series_out) *series_out = dup_string(s.print());
        return new nott_poly{F};
    });
}

char* nott_classify(const nott_aut* a, const nott_poly* f_or_null, long mmax) {
    return guard_ptr([&] {
        ClassifyOptions opt;
        if (mmax > 0) opt.mmax = mmax;
        auto rep = classify_hierarchy(a->a, f_or_null ? &f_or_null->f : nullptr, opt);
        return dup_string(print_report(rep));
    });
}

char* nott_sync(const nott_aut* a) {
    return guard_ptr([&] {
        auto r = sync_analysis(a->a);
        std::ostringstream os;
        os << "absorbing = " << r.absorbing.size();
        for (auto s : r.absorbing) os << " " << (s + 1);
        os << "\n";
        if (r.synchronizing) os << "synchronizing = yes\nword = " << r.word << "\n";
        else os << "synchronizing = no (" << r.obstruction << ")\n";
        return dup_string(os.str());
    });
}

nott_status nott_enumerate(int max_states, int order_log2, int workers, const char* out_dir,
                           long* found) {
    return static_cast<nott_status>(guard_status([&] {
        SearchConfig cfg;
        cfg.max_states = max_states;
        cfg.order_log2 = order_log2;
        if (workers > 0) cfg.workers = workers;
        auto r = enumerate_finite_order(cfg);
        if (found) *found = static_cast<long>(r.automata.size());
        if (out_dir && *out_dir) {
            std::filesystem::create_directories(out_dir);
            std::ostringstream manifest;
            manifest << "max_states = " << cfg.max_states << "\n"
                     << "order = " << (1l << cfg.order_log2) << "\n"
                     << "generated = " << r.stats.generated << "\n"
                     << "structural_ok = " << r.stats.lz_ok << "\n"
                     << "prefiltered = " << r.stats.prefiltered << "\n"
                     << "distinct_minimal = " << r.stats.dedup << "\n"
                     << "certified = " << r.stats.certified << "\n"
                     << "found = " << r.automata.size() << "\n";
            for (size_t i = 0; i < r.automata.size(); ++i) {
                std::string name = "order" + std::to_string(1l << cfg.order_log2) + "_" +
                                   std::to_string(i + 1) + ".aut";
                write_dfao_file(r.automata[i], std::string(out_dir) + "/" + name);
                manifest << "automaton = " << name << "\n";
            }
            std::ofstream mf(std::string(out_dir) + "/manifest.txt");
            mf << manifest.str();
        }
    }));
}

char* nott_catalog_verify(const char* name_or_null, const char* dir_or_null, int workers,
                          int* pass) {
    return guard_ptr([&] {
        std::string dir = dir_or_null ? dir_or_null : "";
        VerifyOptions vo;
        vo.catalog_dir = dir;
        std::vector<CatalogEntry> selected;
        for (auto& e : load_catalog(dir))
            if (!name_or_null || !*name_or_null || e.name == name_or_null) selected.push_back(e);
        if (selected.empty())
            throw error(errc::domain,
                        std::string("no catalog entry named ") + (name_or_null ? name_or_null : ""));
        auto reps = catalog_verify_all(selected, vo, workers);
        std::ostringstream os;
        bool all = true;
        for (auto& rep : reps) {
            os << print_verify(rep);
            all &= rep.pass;
        }
        if (pass) *pass = all ? 1 : 0;
        return dup_string(os.str());
    });
}

char* nott_catalog_list(const char* dir_or_null) {
    return guard_ptr([&] {
        std::ostringstream os;
        for (auto& e : load_catalog(dir_or_null ? dir_or_null : ""))
            os << e.name << "\n";
        return dup_string(os.str());
    });
}

nott_status nott_witt_breaks(const char* terms, int n, long* lower, long* upper) {
    return static_cast<nott_status>(guard_status([&] {
        // "i:(a0,a1,...);j:(...)"
        std::vector<std::pair<long, WittVec>> tv;
        std::istringstream is(terms ? terms : "");
        std::string part;
        while (std::getline(is, part, ';')) {
            auto colon = part.find(':');
            if (colon == std::string::npos) throw error(errc::parse, "expected i:(components)");
            long idx = std::stol(part.substr(0, colon));
            auto l = part.find('('), r = part.find(')');
            if (l == std::string::npos || r == std::string::npos || r < l)
                throw error(errc::parse, "expected (a0,a1,...)");
            std::vector<int> comps;
            std::istringstream cs(part.substr(l + 1, r - l - 1));
            std::string c;
            while (std::getline(cs, c, ',')) comps.push_back(std::stoi(c));
            tv.emplace_back(idx, WittVec::constants(comps));
        }
        auto b = ks_breaks(tv, n);
        for (int i = 0; i < n; ++i) {
            if (lower) lower[i] = b.lower[i];
            if (upper) upper[i] = b.upper[i];
        }
    }));
}

}  // extern "C"
