#include "classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace nott {

namespace {

// states that can reach a 1-labeled state
std::vector<char> coaccessible(const Dfao& A) {
    long n = A.states();
    std::vector<std::vector<uint32_t>> rev(n);
    for (long s = 0; s < n; ++s)
        for (int r = 0; r < A.p; ++r) rev[A.step(s, r)].push_back(static_cast<uint32_t>(s));
    std::vector<char> mark(n, 0);
    std::queue<uint32_t> q;
    for (long s = 0; s < n; ++s)
        if (A.label[s]) {
            mark[s] = 1;
            q.push(static_cast<uint32_t>(s));
        }
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop();
        for (auto u : rev[s])
            if (!mark[u]) {
                mark[u] = 1;
                q.push(u);
            }
    }
    return mark;
}

// iterative Tarjan SCC over an implicit graph
struct SccResult {
    std::vector<long> comp;  // node -> component id (reverse topological)
    long count = 0;
};

template <typename Succ>
SccResult tarjan(long n, Succ succ) {
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<long> low(n, -1), num(n, -1);
    std::vector<char> onstack(n, 0);
    std::vector<long> stk;
    long timer = 0;
    struct Frame {
        long v;
        int edge;
    };
    for (long root = 0; root < n; ++root) {
        if (num[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        num[root] = low[root] = timer++;
        stk.push_back(root);
        onstack[root] = 1;
        while (!call.empty()) {
            auto& fr = call.back();
            long v = fr.v;
            auto edges = succ(v);
            if (fr.edge < static_cast<int>(edges.size())) {
                long u = edges[fr.edge++];
                if (num[u] < 0) {
                    num[u] = low[u] = timer++;
                    stk.push_back(u);
                    onstack[u] = 1;
                    call.push_back({u, 0});
                } else if (onstack[u]) {
                    low[v] = std::min(low[v], num[u]);
                }
            } else {
                if (low[v] == num[v]) {
                    for (;;) {
                        long w = stk.back();
                        stk.pop_back();
                        onstack[w] = 0;
                        res.comp[w] = res.count;
                        if (w == v) break;
                    }
                    ++res.count;
                }
                call.pop_back();
                if (!call.empty()) {
                    long parent = call.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return res;
}

}  // namespace

std::vector<uint32_t> tied_vertices(const Dfao& A) {
    long n = A.states();
    auto coacc = coaccessible(A);
    // Pair graph with independent digits on the two tracks. Two distinct
    // equal-length closed walks at v exist exactly when the SCC of (v,v)
    // contains an edge whose two digit choices differ (an off-diagonal node is
    // not required: parallel edges reconverge instantly).
    long N = n * n;
    auto succ = [&](long x) {
        std::vector<long> out;
        out.reserve(A.p * A.p);
        long u = x / n, w = x % n;
        for (int a = 0; a < A.p; ++a)
            for (int b = 0; b < A.p; ++b)
                out.push_back(static_cast<long>(A.step(u, a)) * n + A.step(w, b));
        return out;
    };
    SccResult scc = tarjan(N, succ);
    std::vector<char> comp_tied(scc.count, 0);
    for (long u = 0; u < n; ++u)
        for (long w = 0; w < n; ++w) {
            long x = u * n + w;
            for (int a = 0; a < A.p; ++a)
                for (int b = 0; b < A.p; ++b) {
                    if (a == b) continue;
                    long y = static_cast<long>(A.step(u, a)) * n + A.step(w, b);
                    if (scc.comp[y] == scc.comp[x]) comp_tied[scc.comp[x]] = 1;
                }
        }
    std::vector<uint32_t> out;
    for (long v = 0; v < n; ++v) {
        if (!coacc[v]) continue;
        if (comp_tied[scc.comp[v * n + v]]) out.push_back(static_cast<uint32_t>(v));
    }
    return out;
}

namespace {

// digits of a BFS path in an implicit graph; returns walk-order digit string
template <typename Succ>
std::optional<std::string> bfs_path(long n, long from, long to, Succ succ) {
    std::vector<long> prev(n, -2), prevdig(n, -1);
    std::queue<long> q;
    q.push(from);
    prev[from] = -1;
    while (!q.empty()) {
        long x = q.front();
        q.pop();
        if (x == to && x != from) break;
        auto edges = succ(x);
        for (auto& [y, d] : edges) {
            if (prev[y] != -2) continue;
            prev[y] = x;
            prevdig[y] = d;
            q.push(y);
        }
    }
    if (prev[to] == -2) return std::nullopt;
    std::string s;
    for (long x = to; prev[x] >= 0; x = prev[x]) s.push_back(static_cast<char>('0' + prevdig[x]));
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

std::optional<TiedWitness> tied_witness(const Dfao& A, uint32_t v) {
    long n = A.states();
    auto coacc = coaccessible(A);
    if (!coacc[v]) return std::nullopt;
    long N = n * n;
    auto succ2 = [&](long x) {
        std::vector<std::pair<long, int>> out;
        long u = x / n, w = x % n;
        for (int a = 0; a < A.p; ++a)
            for (int b = 0; b < A.p; ++b)
                out.push_back({static_cast<long>(A.step(u, a)) * n + A.step(w, b), a * A.p + b});
        return out;
    };
    // find a difference-edge inside the SCC of (v,v), then paths there and back
    auto succ_plain = [&](long x) {
        std::vector<long> out;
        for (auto& [y, d] : succ2(x)) out.push_back(y);
        return out;
    };
    SccResult scc = tarjan(N, succ_plain);
    long diag = static_cast<long>(v) * n + v;
    long esrc = -1, edst = -1;
    int edig = -1;
    for (long u = 0; u < n && esrc < 0; ++u)
        for (long w = 0; w < n && esrc < 0; ++w) {
            long x = u * n + w;
            if (scc.comp[x] != scc.comp[diag]) continue;
            for (int a = 0; a < A.p && esrc < 0; ++a)
                for (int b = 0; b < A.p; ++b) {
                    if (a == b) continue;
                    long y = static_cast<long>(A.step(u, a)) * n + A.step(w, b);
                    if (scc.comp[y] == scc.comp[diag]) {
                        esrc = x;
                        edst = y;
                        edig = a * A.p + b;
                        break;
                    }
                }
        }
    if (esrc < 0) return std::nullopt;
    auto leg1 = bfs_path(N, diag, esrc, succ2);
    auto leg2 = bfs_path(N, edst, diag, succ2);
    if (!leg1 || !leg2) return std::nullopt;
    TiedWitness wit;
    wit.vertex = v;
    std::string digits = *leg1 + std::string(1, static_cast<char>('0' + edig)) + *leg2;
    for (char c : digits) {
        int pair = c - '0';
        wit.walk1.push_back(static_cast<char>('0' + pair / A.p));
        wit.walk2.push_back(static_cast<char>('0' + pair % A.p));
    }
    // access path start -> v and path v -> some 1-label
    auto succ1 = [&](long x) {
        std::vector<std::pair<long, int>> out;
        for (int r = 0; r < A.p; ++r) out.push_back({A.step(x, r), r});
        return out;
    };
    auto acc = bfs_path(n, A.start, v, succ1);
    wit.access = acc ? *acc : std::string();
    long one = -1;
    for (long s = 0; s < n; ++s)
        if (A.label[s]) one = s;
    if (A.label[v]) {
        wit.to_one = "";
    } else if (one >= 0) {
        // nearest 1-label from v
        long bestlen = -1;
        for (long s = 0; s < n; ++s) {
            if (!A.label[s]) continue;
            auto pth = bfs_path(n, v, s, succ1);
            if (pth && (bestlen < 0 || static_cast<long>(pth->size()) < bestlen)) {
                bestlen = static_cast<long>(pth->size());
                wit.to_one = *pth;
            }
        }
    }
    return wit;
}

SparseResult is_sparse(const Dfao& A) {
    SparseResult res;
    auto tied = tied_vertices(A);
    if (!tied.empty()) {
        res.sparse = false;
        res.witness = tied_witness(A, tied.front());
        return res;
    }
    res.sparse = true;
    // rank: longest chain of nontrivial SCCs in orbit-trimmed graph
    long n = A.states();
    auto coacc = coaccessible(A);
    auto succ = [&](long x) {
        std::vector<long> out;
        if (!coacc[x]) return out;
        for (int r = 0; r < A.p; ++r) {
            long y = A.step(x, r);
            if (coacc[y]) out.push_back(y);
        }
        return out;
    };
    SccResult scc = tarjan(n, succ);
    // nontrivial = has an internal edge
    std::vector<char> nontrivial(scc.count, 0);
    for (long s = 0; s < n; ++s) {
        if (!coacc[s]) continue;
        for (long y : succ(s))
            if (scc.comp[y] == scc.comp[s]) nontrivial[scc.comp[s]] = 1;
    }
    // every nontrivial SCC of a sparse trimmed automaton must be a simple cycle
    for (long s = 0; s < n; ++s) {
        if (!coacc[s] || !nontrivial[scc.comp[s]]) continue;
        int inside = 0;
        for (long y : succ(s))
            if (scc.comp[y] == scc.comp[s]) ++inside;
        if (inside != 1)
            throw error(errc::internal, "sparse automaton with a non-cycle component");
    }
    // rank = max number of cycle components on a condensation path from the
    // start that ends with a 1-digit edge into a 1-labeled state. A pumped
    // cycle below a more significant 1 always produces new integers; cycles
    // pumped beyond the last 1 only pad leading zeros and do not count.
    long rank = 0;
    if (coacc[A.start]) {
        // dist[c] = max nontrivial components on a path startcomp -> c, inclusive
        std::vector<long> dist(scc.count, -1);
        long c0 = scc.comp[A.start];
        dist[c0] = nontrivial[c0] ? 1 : 0;
        // Tarjan ids are reverse topological: sources high, sinks low
        for (long c = scc.count - 1; c >= 0; --c) {
            if (dist[c] < 0) continue;
            for (long s = 0; s < n; ++s) {
                if (!coacc[s] || scc.comp[s] != c) continue;
                for (long y : succ(s)) {
                    long cy = scc.comp[y];
                    if (cy == c) continue;
                    long cand = dist[c] + (nontrivial[cy] ? 1 : 0);
                    dist[cy] = std::max(dist[cy], cand);
                }
            }
        }
        for (long s = 0; s < n; ++s) {
            if (!coacc[s] || dist[scc.comp[s]] < 0) continue;
            for (int r = 1; r < A.p; ++r) {  // a nonzero digit ends a canonical expansion
                long z = A.step(s, r);
                if (A.label[z]) rank = std::max(rank, dist[scc.comp[s]]);
            }
        }
    }
    res.rank = rank;
    return res;
}

std::vector<SupportPattern> decompose_sparse(const Dfao& A, size_t cap) {
    auto sp = is_sparse(A);
    if (!sp.sparse) throw error(errc::domain, "decompose_sparse needs a sparse automaton");
    long n = A.states();
    auto coacc = coaccessible(A);
    if (!coacc[A.start]) return {};
    // trimmed successors with digits
    auto succ = [&](long x) {
        std::vector<std::pair<long, int>> out;
        for (int r = 0; r < A.p; ++r) {
            long y = A.step(x, r);
            if (coacc[y]) out.push_back({y, r});
        }
        return out;
    };
    auto plain = [&](long x) {
        std::vector<long> out;
        for (auto& [y, d] : succ(x)) out.push_back(y);
        return out;
    };
    SccResult scc = tarjan(n, plain);
    std::vector<char> nontrivial(scc.count, 0);
    for (long s = 0; s < n; ++s)
        if (coacc[s])
            for (long y : plain(s))
                if (scc.comp[y] == scc.comp[s]) nontrivial[scc.comp[s]] = 1;
    // cycle word from a node inside its (simple-cycle) SCC, walk order
    auto cycle_word = [&](long v) {
        std::string wdigits;
        long x = v;
        do {
            for (auto& [y, d] : succ(x))
                if (scc.comp[y] == scc.comp[x]) {
                    wdigits.push_back(static_cast<char>('0' + d));
                    x = y;
                    break;
                }
        } while (x != v);
        return wdigits;
    };
    // DFS over simple walks; a loop block opens at the entry node of each
    // visited nontrivial SCC. Walk = segs[0] loops[0]* segs[1] ... segs[k].
    std::vector<SupportPattern> out;
    std::vector<char> onpath(n, 0);
    std::vector<std::string> segs{""}, loops;
    if (nontrivial[scc.comp[A.start]]) {
        loops.push_back(cycle_word(A.start));
        segs.push_back("");
    }
    auto emit = [&](void) {
        // pattern string is the reversed walk; pieces reverse blockwise
        long r = static_cast<long>(loops.size());
        SupportPattern P;
        P.v.resize(r + 1);
        P.w.resize(r + 1);
        for (long b = 0; b <= r; ++b) {
            std::string v = segs[b];
            std::reverse(v.begin(), v.end());
            P.v[b] = std::move(v);
        }
        for (long b = 1; b <= r; ++b) {
            std::string w = loops[b - 1];
            std::reverse(w.begin(), w.end());
            P.w[b] = std::move(w);
        }
        out.push_back(std::move(P));
        if (out.size() > cap) throw error(errc::limit, "pattern cap exceeded");
    };
    // emission: a canonical expansion ends with a nonzero digit into a
    // 1-labeled state (or is empty, for k = 0)
    std::function<void(long)> dfs = [&](long x) {
        for (int r = 0; r < A.p; ++r) {
            long y = A.step(x, r);
            if (r > 0 && A.label[y]) {
                segs.back().push_back(static_cast<char>('0' + r));
                emit();
                segs.back().pop_back();
            }
            if (!coacc[y] || onpath[y]) continue;  // full cycles become loop blocks
            onpath[y] = 1;
            bool newblock = nontrivial[scc.comp[y]] && scc.comp[y] != scc.comp[x];
            segs.back().push_back(static_cast<char>('0' + r));
            if (newblock) {
                loops.push_back(cycle_word(y));
                segs.push_back("");
            }
            dfs(y);
            if (newblock) {
                loops.pop_back();
                segs.pop_back();
            }
            segs.back().pop_back();
            onpath[y] = 0;
        }
    };
    if (A.label[A.start]) emit();  // k = 0
    onpath[A.start] = 1;
    dfs(A.start);
    return out;
}

unsigned long long counting_function(const Dfao& A, unsigned long long N) {
    // digits of N, LSB first
    std::vector<int> nd;
    for (unsigned long long x = N;; x /= A.p) {
        nd.push_back(static_cast<int>(x % A.p));
        if (x < static_cast<unsigned long long>(A.p)) break;
    }
    long L = static_cast<long>(nd.size());
    long n = A.states();
    // dp[state][cmp]: count of digit prefixes; cmp: 0 '<', 1 '=', 2 '>'
    std::vector<unsigned long long> dp(n * 3, 0), nx;
    dp[A.start * 3 + 1] = 1;
    for (long i = 0; i < L; ++i) {
        nx.assign(n * 3, 0);
        for (long s = 0; s < n; ++s)
            for (int c = 0; c < 3; ++c) {
                auto v = dp[s * 3 + c];
                if (!v) continue;
                for (int d = 0; d < A.p; ++d) {
                    int c2 = d < nd[i] ? 0 : (d == nd[i] ? c : 2);
                    nx[A.step(s, d) * 3 + c2] += v;
                }
            }
        dp.swap(nx);
    }
    unsigned long long total = 0;
    for (long s = 0; s < n; ++s)
        if (A.label[s]) total += dp[s * 3 + 0] + dp[s * 3 + 1];
    return total;
}

// ------------------------------------------------------------------ hatS test

namespace {

Dfao restart_at(const Dfao& A, uint32_t v) {
    Dfao B = A;
    B.start = v;
    return prune(B);
}

}  // namespace

bool replay_hatS_witness(const Dfao& A, const HatSWitness& w) {
    // walks w2 w1^l w0 from the start must reach one vertex v for all l, and
    // exactly one of the child automata at v must be sparse, the non-sparse
    // one behind the stored digit
    if (w.w1.empty()) return false;
    auto walk = [&](const std::string& digits, uint32_t from) {
        uint32_t s = from;
        for (char c : digits) s = A.step(s, c - '0');
        return s;
    };
    uint32_t v = UINT32_MAX;
    for (int l = 0; l <= 3; ++l) {
        uint32_t s = A.start;
        s = walk(w.w2, s);
        for (int i = 0; i < l; ++i) s = walk(w.w1, s);
        s = walk(w.w0, s);
        if (v == UINT32_MAX) v = s;
        else if (s != v) return false;
    }
    Dfao A0 = restart_at(A, A.step(v, 0));
    Dfao A1 = restart_at(A, A.step(v, 1));
    bool s0 = is_sparse(A0).sparse, s1 = is_sparse(A1).sparse;
    if (s0 == s1) return false;
    return (w.digit == 0) ? !s0 : !s1;
}

HatSResult hatS_test(const Dfao& A, long mmax) {
    HatSResult res;
    res.mmax = mmax;
    for (long m = 1; m <= mmax; ++m) {
        if (is_sparse(mul_by_binomial(A, m)).sparse) {
            res.verdict = Verdict::yes;
            res.m = m;
            return res;
        }
    }
    // negative arm: vertices with arbitrarily long access walks are those
    // reachable from a start-reachable nontrivial SCC
    long n = A.states();
    auto plain = [&](long x) {
        std::vector<long> out;
        for (int r = 0; r < A.p; ++r) out.push_back(A.step(x, r));
        return out;
    };
    SccResult scc = tarjan(n, plain);
    std::vector<char> nontrivial(scc.count, 0);
    for (long s = 0; s < n; ++s)
        for (long y : plain(s))
            if (scc.comp[y] == scc.comp[s]) nontrivial[scc.comp[s]] = 1;
    std::vector<char> candidate(n, 0);
    {
        std::queue<long> q;
        for (long s = 0; s < n; ++s)
            if (nontrivial[scc.comp[s]]) {
                candidate[s] = 1;
                q.push(s);
            }
        while (!q.empty()) {
            long s = q.front();
            q.pop();
            for (long y : plain(s))
                if (!candidate[y]) {
                    candidate[y] = 1;
                    q.push(y);
                }
        }
    }
    auto succ1 = [&](long x) {
        std::vector<std::pair<long, int>> out;
        for (int r = 0; r < A.p; ++r) out.push_back({A.step(x, r), r});
        return out;
    };
    for (long v = 0; v < n; ++v) {
        if (!candidate[v]) continue;
        bool s0 = is_sparse(restart_at(A, A.step(v, 0))).sparse;
        bool s1 = is_sparse(restart_at(A, A.step(v, 1))).sparse;
        if (s0 == s1) continue;
        // witness words: start -w2-> u (on a cycle), cycle word w1 at u, u -w0-> v
        long u = -1;
        {
            // nearest start-reachable cycle node from which v is reachable
            std::vector<char> canreachv(n, 0);
            std::vector<std::vector<long>> rev(n);
            for (long s = 0; s < n; ++s)
                for (long y : plain(s)) rev[y].push_back(s);
            std::queue<long> q;
            q.push(v);
            canreachv[v] = 1;
            while (!q.empty()) {
                long s = q.front();
                q.pop();
                for (long y : rev[s])
                    if (!canreachv[y]) {
                        canreachv[y] = 1;
                        q.push(y);
                    }
            }
            // BFS from start to the closest cycle node that can reach v
            std::vector<long> prev(n, -2), pd(n, -1);
            std::queue<long> bq;
            bq.push(A.start);
            prev[A.start] = -1;
            while (!bq.empty()) {
                long s = bq.front();
                bq.pop();
                if (nontrivial[scc.comp[s]] && canreachv[s]) {
                    u = s;
                    break;
                }
                for (auto& [y, d] : succ1(s))
                    if (prev[y] == -2) {
                        prev[y] = s;
                        pd[y] = d;
                        bq.push(y);
                    }
            }
            if (u < 0) continue;
            HatSWitness wit;
            for (long x = u; prev[x] >= 0; x = prev[x])
                wit.w2.push_back(static_cast<char>('0' + pd[x]));
            std::reverse(wit.w2.begin(), wit.w2.end());
            // shortest closed walk u -> u: one step out, then BFS back
            std::string cyc;
            for (int r = 0; r < A.p; ++r) {
                auto back = bfs_path(n, A.step(u, r), u, succ1);
                if (A.step(u, r) == static_cast<uint32_t>(u)) back = std::string();
                if (back) {
                    std::string cand = std::string(1, static_cast<char>('0' + r)) + *back;
                    if (cyc.empty() || cand.size() < cyc.size()) cyc = cand;
                }
            }
            if (cyc.empty()) continue;
            wit.w1 = cyc;
            auto tail = bfs_path(n, u, v, succ1);
            if (!tail) continue;
            wit.w0 = *tail;
            wit.digit = s0 ? 1 : 0;  // the non-sparse side
            if (replay_hatS_witness(A, wit)) {
                res.verdict = Verdict::no;
                res.witness = wit;
                return res;
            }
        }
    }
    res.verdict = Verdict::inconclusive;
    return res;
}

// ----------------------------------------------------------------- field tests

std::string print_slopes(const NewtonSlopes& ns) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [sl, mult] : ns.slopes) {
        if (!first) os << ",";
        first = false;
        os << print_rational(sl);
        if (mult > 1) os << "^" << mult;
    }
    os << "}";
    if (ns.roots_at_zero) os << " (+" << ns.roots_at_zero << " roots at X=0)";
    return os.str();
}

namespace {

long slope_mult_gcd(const NewtonSlopes& ns) {
    long g = 0;
    for (auto& [sl, mult] : ns.slopes) g = std::gcd(g, mult);
    return g;
}

bool is_power_of_two(long x) { return x > 0 && (x & (x - 1)) == 0; }

// cubic has a root in F_2(t)? rational root search u/v, u | c0-part, v | c3
bool cubic_has_rational_root(const BiPoly& R) {
    int p = R.p();
    const FpPoly c3 = R.coeff_x(3), c2 = R.coeff_x(2), c1 = R.coeff_x(1), c0 = R.coeff_x(0);
    if (c0.is_zero()) return true;  // X = 0
    // strip t-powers: root u/v with u | c0, v | c3 up to units and t-powers
    auto divisors_with_t = [&](const FpPoly& f) {
        long tord = f.ord();
        FpPoly core(p, std::vector<uint8_t>(f.coeffs().begin() + tord, f.coeffs().end()));
        auto divs = monic_divisors(core);
        std::vector<FpPoly> out;
        for (auto& d : divs)
            for (long e = 0; e <= tord; ++e) out.push_back(d.shifted(e));
        return out;
    };
    for (const auto& u : divisors_with_t(c0))
        for (const auto& v : divisors_with_t(c3)) {
            // c3 u^3 + c2 u^2 v + c1 u v^2 + c0 v^3 = 0 ?
            FpPoly lhs = c3 * u.pow(3) + c2 * u.pow(2) * v + c1 * u * v.pow(2) + c0 * v.pow(3);
            if (lhs.is_zero()) return true;
        }
    return false;
}

}  // namespace

std::vector<FieldCertificate> field_tests(const BiPoly& F) {
    std::vector<FieldCertificate> out;
    long d = F.deg_x();
    NewtonSlopes vt = newton_slopes(F, Place::t);
    // (i) degree not a power of two plus trivial gcd of slope multiplicities
    if (!is_power_of_two(d) && slope_mult_gcd(vt) == 1) {
        out.push_back({"odd-degree",
                       "deg=" + std::to_string(d) + " V_t=" + print_slopes(vt), true, true});
    }
    // (ii) quartic: irreducible cubic resolvent with trivial slope gcds
    if (d == 4) {
        const FpPoly &a4 = F.coeff_x(4), &a3 = F.coeff_x(3), &a2 = F.coeff_x(2),
                     &a1 = F.coeff_x(1), &a0 = F.coeff_x(0);
        std::vector<FpPoly> rc{a0 * a3 * a3 + a1 * a1 * a4, a1 * a3 * a4, a2 * a4 * a4,
                               a4 * a4 * a4};
        BiPoly R3(F.p(), std::move(rc));
        if (R3.deg_x() == 3 && !cubic_has_rational_root(R3)) {
            NewtonSlopes vr = newton_slopes(R3, Place::t);
            if (slope_mult_gcd(vt) == 1 && slope_mult_gcd(vr) == 1)
                out.push_back({"cubic-resolvent",
                               "R3=" + R3.print() + " V_t(F)=" + print_slopes(vt) +
                                   " V_t(R3)=" + print_slopes(vr),
                               true, true});
        }
    }
    // (iii) integrality indicator: leading X-coefficient not a monomial
    if (!F.lead_x().is_monomial()) {
        out.push_back({"integrality", "leading coefficient " +
                                          BiPoly::from_t(F.lead_x()).print() +
                                          " has a root outside {0}",
                       false, true});
    }
    // (iv) Kummer special case F = (t^m+1)X^m + t^m, m odd >= 3
    if (d >= 3 && d % 2 == 1 && F == klopsch_equation(d)) {
        out.push_back({"kummer",
                       "t^{mj}+1 and t^{mj}+(t+1)^{mj} are squarefree for odd j (m=" +
                           std::to_string(d) + ")",
                       true, true});
    }
    return out;
}

// -------------------------------------------------------------- classification

std::string level_name(Level l) {
    switch (l) {
        case Level::S: return "S";
        case Level::hatS: return "hatS";
        case Level::QS: return "QS";
        case Level::notQS: return "notQS";
        default: return "inconclusive";
    }
}

ClassReport classify_hierarchy(const Dfao& A, const BiPoly* F, const ClassifyOptions& opt) {
    ClassReport rep;
    rep.sparse = is_sparse(A);
    for (int L = 4; L <= 20; L += 4)
        rep.counting_samples.push_back({1ull << L, counting_function(A, 1ull << L)});
    if (F) rep.certs = field_tests(*F);
    bool field_not_qs = false, field_not_sparse = false;
    for (auto& c : rep.certs) {
        field_not_qs |= c.not_qs;
        field_not_sparse |= c.not_sparse;
    }
    if (rep.sparse.sparse) {
        if (field_not_qs) throw error(errc::internal, "field test contradicts sparseness");
        rep.level = Level::S;
        rep.hatS.verdict = Verdict::yes;
        rep.hatS.m = 0;  // sparse already
        rep.in_qs = Verdict::yes;
        rep.qs_how = "sparse";
        return rep;
    }
    // a not-QS field certificate short-circuits the combinatorial arms
    if (field_not_qs) {
        rep.level = Level::notQS;
        rep.in_qs = Verdict::no;
        for (auto& c : rep.certs)
            if (c.not_qs) {
                rep.qs_how = c.test;
                break;
            }
        return rep;
    }
    rep.hatS = hatS_test(A, opt.mmax);
    if (rep.hatS.verdict == Verdict::yes) {
        rep.level = Level::hatS;
        rep.in_qs = Verdict::yes;
        rep.qs_how = "hatS m=" + std::to_string(rep.hatS.m);
        return rep;
    }
    // combinatorial QS arm: test sigma o phi when the equation is available
    if (F && opt.try_twist && rep.hatS.verdict == Verdict::no) {
        rep.twist_attempted = true;
        BiPoly Ft = phi_twist(*F);
        TruncSeries tw = compose(series_prefix(A, opt.series_prec), phi_series(A.p, opt.series_prec));
        SeriesPrefix pre{A.p, {}};
        pre.coeffs.assign(tw.coeffs().begin(), tw.coeffs().end());
        auto sols = solve(Ft, pre, SolveOptions{Method::diagonal, opt.series_prec});
        if (sols.size() == 1) {
            const Dfao& At = sols[0].automaton;
            if (is_sparse(At).sparse) {
                rep.level = Level::QS;
                rep.in_qs = Verdict::yes;
                rep.qs_how = "twist sparse";
                return rep;
            }
            rep.twist_hatS = hatS_test(At, opt.mmax);
            if (rep.twist_hatS.verdict == Verdict::yes) {
                rep.level = Level::QS;
                rep.in_qs = Verdict::yes;
                rep.qs_how = "twist hatS m=" + std::to_string(rep.twist_hatS.m);
                return rep;
            }
            if (rep.twist_hatS.verdict == Verdict::no) {
                rep.level = Level::notQS;
                rep.in_qs = Verdict::no;
                rep.qs_how = "witnesses for both sigma and sigma o phi";
                return rep;
            }
        }
    }
    rep.level = Level::inconclusive;
    rep.in_qs = Verdict::inconclusive;
    return rep;
}

std::string print_report(const ClassReport& r) {
    std::ostringstream os;
    os << "level = " << level_name(r.level) << "\n";
    if (r.sparse.sparse) {
        os << "sparse = yes rank=" << r.sparse.rank << "\n";
    } else {
        os << "sparse = no\n";
        if (r.sparse.witness) {
            auto& w = *r.sparse.witness;
            os << "tied_vertex = " << (w.vertex + 1) << " access=" << (w.access.empty() ? "eps" : w.access)
               << " walks=(" << w.walk1 << "," << w.walk2 << ")"
               << " to_one=" << (w.to_one.empty() ? "eps" : w.to_one) << "\n";
        }
        switch (r.hatS.verdict) {
            case Verdict::yes: os << "hatS = yes m=" << r.hatS.m << "\n"; break;
            case Verdict::no: {
                auto& w = *r.hatS.witness;
                os << "hatS = no w2=" << (w.w2.empty() ? "eps" : w.w2) << " w1=" << w.w1
                   << " w0=" << (w.w0.empty() ? "eps" : w.w0) << " digit=" << w.digit << "\n";
                break;
            }
            default:
                if (r.hatS.mmax == 0)
                    os << "hatS = not attempted (settled by a field certificate)\n";
                else
                    os << "hatS = inconclusive mmax=" << r.hatS.mmax << "\n";
        }
    }
    os << "QS = " << (r.in_qs == Verdict::yes ? "yes" : r.in_qs == Verdict::no ? "no" : "inconclusive");
    if (!r.qs_how.empty()) os << " (" << r.qs_how << ")";
    os << "\n";
    for (auto& c : r.certs)
        os << "field_cert = " << c.test << (c.not_qs ? " [not QS] " : " [not S] ") << c.detail
           << "\n";
    for (auto& [N, cnt] : r.counting_samples) os << "count_upto " << N << " = " << cnt << "\n";
    return os.str();
}

// ------------------------------------------------------------- synchronization

SyncResult sync_analysis(const Dfao& A) {
    SyncResult res;
    long n = A.states();
    for (long s = 0; s < n; ++s) {
        bool absorbing = true;
        for (int r = 0; r < A.p; ++r) absorbing &= (A.step(s, r) == static_cast<uint32_t>(s));
        if (absorbing) res.absorbing.push_back(static_cast<uint32_t>(s));
    }
    if (res.absorbing.size() > 1) {
        res.synchronizing = false;
        res.obstruction = std::to_string(res.absorbing.size()) + " absorbing states";
        return res;
    }
    // same-digit pair graph; all pairs mergeable <=> synchronizing
    long N = n * n;
    std::vector<long> dist(N, -1);
    std::vector<long> prev(N, -1), pdig(N, -1);
    std::queue<long> q;
    for (long s = 0; s < n; ++s) {
        dist[s * n + s] = 0;
        q.push(s * n + s);
    }
    // reverse BFS from the diagonal
    std::vector<std::vector<std::pair<long, int>>> rev(N);
    for (long u = 0; u < n; ++u)
        for (long w = 0; w < n; ++w)
            for (int r = 0; r < A.p; ++r)
                rev[static_cast<long>(A.step(u, r)) * n + A.step(w, r)].push_back(
                    {u * n + w, r});
    while (!q.empty()) {
        long x = q.front();
        q.pop();
        for (auto& [y, d] : rev[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                prev[y] = x;
                pdig[y] = d;
                q.push(y);
            }
    }
    for (long x = 0; x < N; ++x)
        if (dist[x] < 0) {
            res.synchronizing = false;
            res.obstruction = "pair (" + std::to_string(x / n + 1) + "," +
                              std::to_string(x % n + 1) + ") cannot be merged";
            return res;
        }
    res.synchronizing = true;
    // greedy word: repeatedly merge the current state set
    std::vector<uint32_t> cur(n);
    for (long s = 0; s < n; ++s) cur[s] = static_cast<uint32_t>(s);
    std::string word;  // walk order
    auto apply = [&](int d) {
        for (auto& s : cur) s = A.step(s, d);
        std::sort(cur.begin(), cur.end());
        cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    };
    int guard = 0;
    while (cur.size() > 1) {
        if (guard++ > 100000) throw error(errc::internal, "greedy synchronization stalled");
        long x = static_cast<long>(cur[0]) * n + cur[1];
        while (dist[x] > 0) {
            int d = pdig[x];
            word.push_back(static_cast<char>('0' + d));
            apply(d);
            x = prev[x];
        }
    }
    std::reverse(word.begin(), word.end());  // display convention: read right to left
    res.word = word;
    if (!verify_sync_word(A, res.word))
        throw error(errc::internal, "constructed word does not synchronize");
    return res;
}

bool verify_sync_word(const Dfao& A, const std::string& word) {
    std::set<uint32_t> ends;
    for (long s = 0; s < A.states(); ++s) {
        uint32_t x = static_cast<uint32_t>(s);
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            int d = *it - '0';
            if (d < 0 || d >= A.p) throw error(errc::domain, "bad digit in word");
            x = A.step(x, d);
        }
        ends.insert(x);
    }
    return ends.size() == 1;
}

}
