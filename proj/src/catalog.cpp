#include "catalog.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nott {

namespace fs = std::filesystem;

std::string default_catalog_dir() {
    if (const char* env = std::getenv("NOTT_CATALOG_DIR")) return env;
#ifdef NOTT_CATALOG_DEFAULT
    return NOTT_CATALOG_DEFAULT;
#else
    return "catalog";
#endif
}

HatSWitness witness_to_walk_order(const HatSWitness& t) {
    auto rev = [](std::string s) {
        std::reverse(s.begin(), s.end());
        return s;
    };
    return HatSWitness{rev(t.w0), rev(t.w1), rev(t.w2), t.digit};
}

namespace {

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok == "eps" || tok.empty()) continue;
        out.push_back(std::stol(tok));
    }
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

CatalogEntry parse_entry(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error(errc::io, "cannot open catalog entry " + path);
    CatalogEntry e;
    e.raw_path = path;
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    auto get = [&](const std::string& k) -> std::string {
        auto it = kv.find(k);
        return it == kv.end() ? std::string() : it->second;
    };
    e.name = get("name");
    if (e.name.empty()) throw error(errc::parse, path + ": missing name");
    if (get("equation").empty()) throw error(errc::parse, path + ": missing equation");
    e.equation = parse_poly(get("equation"));
    e.seed = SeriesPrefix::parse(get("seed").empty() ? "t+O(t^2)" : get("seed"));
    if (get("method") == "ore") e.method = Method::ore;
    if (get("method") == "both") e.method = Method::both;
    if (!get("order").empty()) e.order = std::stol(get("order"));
    if (!get("breaks").empty()) e.breaks = parse_longs(get("breaks"));
    if (!get("states").empty()) e.states = std::stol(get("states"));
    if (!get("states_reported").empty()) e.states_reported = std::stol(get("states_reported"));
    e.cls = get("class");
    if (!get("rank").empty()) e.rank = std::stol(get("rank"));
    if (!get("hatS_m").empty()) e.hatS_m = std::stol(get("hatS_m"));
    e.closed_form = get("closed_form");
    if (!get("closed_form_prec").empty()) e.closed_form_prec = std::stol(get("closed_form_prec"));
    e.fixture = get("fixture");
    e.sync_word = get("sync_word");
    if (!get("sync_absorbing").empty()) e.sync_absorbing = std::stol(get("sync_absorbing"));
    if (!get("witness").empty()) {
        std::istringstream is(get("witness"));
        std::string w2, w1, w0, dig;
        std::getline(is, w2, ',');
        std::getline(is, w1, ',');
        std::getline(is, w0, ',');
        std::getline(is, dig, ',');
        auto clean = [&](std::string s) {
            s = strip(s);
            return s == "eps" ? std::string() : s;
        };
        e.witness = HatSWitness{clean(w2), clean(w1), clean(w0), std::stoi(strip(dig))};
    }
    if (!get("normalize").empty()) {
        auto v = parse_longs(get("normalize"));
        if (v.size() != 2) throw error(errc::parse, path + ": normalize needs b4,b11");
        e.normalize = {static_cast<int>(v[0]), static_cast<int>(v[1])};
    }
    return e;
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& dir_in) {
    std::string dir = dir_in.empty() ? default_catalog_dir() : dir_in;
    std::vector<CatalogEntry> out;
    if (!fs::is_directory(dir)) throw error(errc::io, "catalog directory not found: " + dir);
    std::vector<std::string> paths;
    for (auto& p : fs::directory_iterator(dir))
        if (p.path().extension() == ".cat") paths.push_back(p.path().string());
    std::sort(paths.begin(), paths.end());
    for (auto& p : paths) out.push_back(parse_entry(p));
    return out;
}

std::optional<CatalogEntry> load_entry(const std::string& name, const std::string& dir) {
    for (auto& e : load_catalog(dir))
        if (e.name == name) return e;
    return std::nullopt;
}

namespace {

void item(VerifyReport& r, const std::string& what, bool pass, const std::string& detail = "") {
    r.items.push_back({what, pass, detail});
    r.pass &= pass;
}

}  // namespace

VerifyReport catalog_verify(const CatalogEntry& e, const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.name = e.name;
    std::string dir = opt.catalog_dir.empty() ? default_catalog_dir() : opt.catalog_dir;

    SolveOptions so;
    so.method = e.method;
    so.series_prec = opt.series_prec;
    std::vector<Solution> sols;
    try {
        sols = solve(e.equation, e.seed, so);
    } catch (const error& ex) {
        item(rep, "solve", false, ex.what());
        return rep;
    }
    if (sols.size() != 1) {
        item(rep, "solve", false, "expected a unique matching solution, got " +
                                      std::to_string(sols.size()));
        return rep;
    }
    const Dfao& A = sols[0].automaton;
    item(rep, "solve", true, "unique solution");
    item(rep, "fixture-minimal", minimize(A) == A, "stored solutions are minimal");

    if (e.states >= 0)
        item(rep, "states", A.states() == e.states,
             "got " + std::to_string(A.states()) + ", expected " + std::to_string(e.states));
    else if (e.states_reported >= 0)
        item(rep, "states-reported", true, std::to_string(A.states()) + " states (conjectured " +
                                               std::to_string(e.states_reported) + ", not asserted)");

    if (!e.fixture.empty()) {
        try {
            Dfao F = read_dfao_file(dir + "/automata/" + e.fixture);
            item(rep, "fixture-valid", is_valid(F));
            item(rep, "fixture-equal", equal_series(A, F), e.fixture);
        } catch (const error& ex) {
            item(rep, "fixture", false, ex.what());
        }
    }

    if (e.order > 0) {
        try {
            auto ord = exact_order(A);
            long got = ord.finite ? (1l << ord.log2_order) : -1;
            std::string ev = ord.certified ? "certified"
                                           : "filter at t^" + std::to_string(ord.filter_precision);
            item(rep, "order", got == e.order,
                 "got " + std::to_string(got) + " (" + ev + "), expected " + std::to_string(e.order));
        } catch (const error& ex) {
            item(rep, "order", false, ex.what());
        }
    }

    if (!e.breaks.empty()) {
        try {
            auto br = break_sequence(A, static_cast<int>(e.breaks.size()));
            item(rep, "breaks", br == e.breaks, "");
        } catch (const error& ex) {
            item(rep, "breaks", false, ex.what());
        }
    }

    if (!e.closed_form.empty()) {
        TruncSeries cf = closed_form(e.closed_form, e.closed_form_prec);
        item(rep, "closed-form", series_prefix(A, e.closed_form_prec) == cf,
             e.closed_form + " to t^" + std::to_string(e.closed_form_prec));
    }

    if (opt.classify && !e.cls.empty()) {
        try {
            ClassifyOptions co;
            co.mmax = opt.mmax;
            co.series_prec = opt.series_prec;
            ClassReport cr = classify_hierarchy(A, &e.equation, co);
            item(rep, "class", level_name(cr.level) == e.cls,
                 "got " + level_name(cr.level) + ", expected " + e.cls);
            if (e.rank >= 0)
                item(rep, "rank", cr.sparse.sparse && cr.sparse.rank == e.rank,
                     "got " + std::to_string(cr.sparse.rank) + ", expected " + std::to_string(e.rank));
            if (e.hatS_m >= 0)
                item(rep, "hatS-m", cr.hatS.verdict == Verdict::yes && cr.hatS.m == e.hatS_m,
                     "got m=" + std::to_string(cr.hatS.m));
        } catch (const error& ex) {
            item(rep, "class", false, ex.what());
        }
    }

    if (e.witness) {
        bool ok = replay_hatS_witness(A, witness_to_walk_order(*e.witness));
        item(rep, "hatS-witness", ok, "stored row replays");
    }

    if (!e.sync_word.empty()) {
        item(rep, "sync-word", verify_sync_word(A, e.sync_word), e.sync_word);
        auto sy = sync_analysis(A);
        item(rep, "sync-analysis", sy.synchronizing, sy.word);
    }
    if (e.sync_absorbing >= 0) {
        auto sy = sync_analysis(A);
        item(rep, "not-synchronizing",
             !sy.synchronizing && static_cast<long>(sy.absorbing.size()) == e.sync_absorbing,
             sy.obstruction);
    }

    if (e.normalize) {
        long need = 16;
        TruncSeries s = sols[0].series.precision() >= need ? sols[0].series.truncated(need)
                                                           : series_prefix(A, need);
        auto nb = normalize_order8(s);
        item(rep, "normal-form",
             nb.first == e.normalize->first && nb.second == e.normalize->second,
             "got (" + std::to_string(nb.first) + "," + std::to_string(nb.second) + ")");
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<VerifyReport> catalog_verify_all(const std::vector<CatalogEntry>& entries,
                                             const VerifyOptions& opt, int workers) {
    std::vector<VerifyReport> out(entries.size());
    if (workers <= 1) {
        for (size_t i = 0; i < entries.size(); ++i) out[i] = catalog_verify(entries[i], opt);
        return out;
    }
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            out[i] = catalog_verify(entries[i], opt);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

std::string print_verify(const VerifyReport& r) {
    std::ostringstream os;
    os << "== " << r.name << (r.pass ? " PASS" : " FAIL") << "  ("
       << static_cast<long>(r.seconds * 1000) << " ms)\n";
    for (auto& it : r.items) {
        os << "   " << (it.pass ? "ok  " : "FAIL") << " " << it.what;
        if (!it.detail.empty()) os << ": " << it.detail;
        os << "\n";
    }
    return os.str();
}

std::vector<long> klopsch_state_counts(const std::vector<long>& ms) {
    std::vector<long> out;
    for (long m : ms) {
        SolveOptions so;
        so.method = Method::ore;
        so.series_prec = 64;
        auto sols = solve(klopsch_equation(m), SeriesPrefix::parse("t+O(t^2)"), so);
        if (sols.size() != 1) throw error(errc::internal, "klopsch equation not uniquely solved");
        out.push_back(sols[0].automaton.states());
    }
    return out;
}

}
