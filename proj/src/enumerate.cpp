#include "enumerate.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace nott {

namespace {

struct Gen {
    int p = 2;
    int k = 0;           // exact number of states
    const SearchConfig* cfg;
    int partition = 1, residue = 0;
    SearchStats stats;
    std::map<std::string, Dfao> found;  // canonical form -> automaton

    std::vector<uint32_t> next;
    std::vector<int> cls;  // union-find over 0-edge label classes

    int find(int x) { return cls[x] == x ? x : cls[x] = find(cls[x]); }

    void process_table() {
        ++stats.generated;
        // label classes forced by leading-zeros invariance along 0-edges
        cls.assign(k, 0);
        for (int s = 0; s < k; ++s) cls[s] = s;
        for (int s = 0; s < k; ++s) {
            int a = find(s), b = find(static_cast<int>(next[s * p + 0]));
            if (a != b) cls[a] = b;
        }
        int zero_cls = find(0);
        int one_cls = find(static_cast<int>(next[1]));  // delta(start, 1) must read 1
        if (one_cls == zero_cls) return;                // a_1 = 1 contradicts a_0 = 0
        std::vector<int> free_cls;
        for (int s = 0; s < k; ++s)
            if (find(s) == s && s != zero_cls && s != one_cls) free_cls.push_back(s);
        long combos = 1l << free_cls.size();
        for (long mask = 0; mask < combos; ++mask) {
            Dfao A;
            A.p = p;
            A.start = 0;
            A.next = next;
            A.label.assign(k, 0);
            for (int s = 0; s < k; ++s) {
                int c = find(s);
                if (c == zero_cls) A.label[s] = 0;
                else if (c == one_cls) A.label[s] = 1;
                else {
                    size_t idx = std::lower_bound(free_cls.begin(), free_cls.end(), c) - free_cls.begin();
                    A.label[s] = static_cast<uint8_t>((mask >> idx) & 1);
                }
            }
            ++stats.lz_ok;
            // staged truncated-composition filter
            bool keep = true;
            for (long prec : {16l, 64l, cfg->prefilter}) {
                TruncSeries s = series_prefix(A, prec);
                TruncSeries id = TruncSeries::identity(p, prec);
                TruncSeries cur = s;
                bool earlier_identity = false;
                for (int j = 0; j < cfg->order_log2; ++j) {
                    if (cur == id) earlier_identity = true;
                    cur = compose(cur, cur);
                }
                if (earlier_identity || cur != id) {
                    keep = false;
                    break;
                }
            }
            if (!keep) continue;
            ++stats.prefiltered;
            Dfao M = minimize(A);
            if (M.states() < k) continue;  // already seen with fewer states
            std::string key = print_dfao(M);
            if (found.emplace(std::move(key), M).second) ++stats.dedup;
        }
    }

    // canonical initially-connected generation: scanning slots in order, a new
    // state may only be introduced as max-used + 1
    void dfs(int slot, int maxused) {
        if (slot == k * p) {
            if (maxused == k - 1) process_table();
            return;
        }
        // accessibility within the scan: state slot/p must already be discovered
        if (slot / p > maxused) return;
        int hi = std::min(maxused + 1, k - 1);
        for (int tgt = 0; tgt <= hi; ++tgt) {
            if (slot == 1 && partition > 1 && tgt % partition != residue) continue;
            next[slot] = static_cast<uint32_t>(tgt);
            dfs(slot + 1, std::max(maxused, tgt));
        }
    }

    void run() {
        next.assign(k * p, 0);
        dfs(0, 0);
    }
};

}  // namespace

SearchResult enumerate_finite_order(const SearchConfig& cfg) {
    if (cfg.max_states > 6) throw error(errc::limit, "state budget is capped at 6");
    if (cfg.order_log2 > 3) throw error(errc::limit, "order exponent is capped at 3");
    SearchResult out;
    std::map<std::string, Dfao> all;
    for (int k = 1; k <= cfg.max_states; ++k) {
        int workers = std::max(1, cfg.workers);
        std::vector<Gen> gens(workers);
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            gens[w].p = 2;
            gens[w].k = k;
            gens[w].cfg = &cfg;
            gens[w].partition = workers;
            gens[w].residue = w;
            threads.emplace_back([&gens, w] { gens[w].run(); });
        }
        for (auto& t : threads) t.join();
        for (auto& g : gens) {
            out.stats.generated += g.stats.generated;
            out.stats.lz_ok += g.stats.lz_ok;
            out.stats.prefiltered += g.stats.prefiltered;
            for (auto& [key, A] : g.found) all.emplace(key, A);
        }
    }
    out.stats.dedup = all.size();
    for (auto& [key, A] : all) {
        if (cfg.certify) {
            OrderOptions oo;
            oo.nmax = cfg.order_log2 + 1;
            auto ord = exact_order(A, oo);
            if (!(ord.finite && ord.log2_order == cfg.order_log2 && ord.certified)) continue;
            ++out.stats.certified;
        }
        out.automata.push_back(A);
    }
    return out;
}

}
