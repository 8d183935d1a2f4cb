#include "dfao.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace nott {

namespace {

std::vector<uint32_t> reachable_order(const Dfao& A) {
    std::vector<uint32_t> order;
    std::vector<char> seen(A.label.size(), 0);
    std::queue<uint32_t> q;
    q.push(A.start);
    seen[A.start] = 1;
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop();
        order.push_back(s);
        for (int r = 0; r < A.p; ++r) {
            uint32_t u = A.step(s, r);
            if (!seen[u]) {
                seen[u] = 1;
                q.push(u);
            }
        }
    }
    return order;
}

}  // namespace

std::vector<Violation> validate(const Dfao& A) {
    std::vector<Violation> v;
    if (!fp_is_prime(A.p)) v.push_back({"p is not prime"});
    long n = A.states();
    if (n == 0) {
        v.push_back({"no states"});
        return v;
    }
    if (A.start >= A.label.size()) v.push_back({"start state out of range"});
    if (A.next.size() != static_cast<size_t>(n) * A.p) {
        v.push_back({"transition table is not states*p"});
        return v;
    }
    for (auto u : A.next)
        if (u >= A.label.size()) {
            v.push_back({"transition target out of range"});
            return v;
        }
    for (auto l : A.label)
        if (l >= A.p) v.push_back({"label not in F_p"});
    // accessibility
    if (A.start < A.label.size()) {
        auto order = reachable_order(A);
        if (static_cast<long>(order.size()) != n)
            v.push_back({"inaccessible states: " + std::to_string(n - order.size()) + " unreachable"});
    }
    // leading zeros invariance
    for (long s = 0; s < n; ++s)
        if (A.label[A.step(s, 0)] != A.label[s]) {
            v.push_back({"leading zeros invariance fails at state " + std::to_string(s + 1)});
            break;
        }
    return v;
}

bool is_valid(const Dfao& A) { return validate(A).empty(); }

Dfao prune(const Dfao& A) {
    auto order = reachable_order(A);
    std::vector<uint32_t> newid(A.label.size(), UINT32_MAX);
    for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<uint32_t>(i);
    Dfao B;
    B.p = A.p;
    B.start = 0;
    B.label.resize(order.size());
    B.next.resize(order.size() * A.p);
    for (size_t i = 0; i < order.size(); ++i) {
        B.label[i] = A.label[order[i]];
        for (int r = 0; r < A.p; ++r) B.next[i * A.p + r] = newid[A.step(order[i], r)];
    }
    return B;
}

int coeff_at(const Dfao& A, unsigned long long k) {
    uint32_t s = A.start;
    while (k > 0) {
        s = A.step(s, static_cast<int>(k % A.p));
        k /= A.p;
    }
    return A.label[s];
}

TruncSeries series_prefix(const Dfao& A, long n) {
    TruncSeries out(A.p, n);
    for (long k = 0; k < n; ++k) out.set_coeff(k, coeff_at(A, static_cast<unsigned long long>(k)));
    return out;
}

Dfao canonical_form(const Dfao& A) { return prune(A); }

Dfao minimize(const Dfao& A) {
    Dfao B = prune(A);
    long n = B.states();
    std::vector<uint32_t> cls(n);
    for (long s = 0; s < n; ++s) cls[s] = B.label[s];
    size_t classes = 0;
    {
        std::set<uint32_t> distinct(cls.begin(), cls.end());
        classes = distinct.size();
    }
    for (;;) {
        // signature = (class, class of successors)
        std::map<std::vector<uint32_t>, uint32_t> sig2id;
        std::vector<uint32_t> next_cls(n);
        for (long s = 0; s < n; ++s) {
            std::vector<uint32_t> sig;
            sig.reserve(B.p + 1);
            sig.push_back(cls[s]);
            for (int r = 0; r < B.p; ++r) sig.push_back(cls[B.step(s, r)]);
            auto [it, _] = sig2id.emplace(std::move(sig), static_cast<uint32_t>(sig2id.size()));
            next_cls[s] = it->second;
        }
        if (sig2id.size() == classes) {
            cls = std::move(next_cls);
            break;
        }
        classes = sig2id.size();
        cls = std::move(next_cls);
    }
    Dfao Q;
    Q.p = B.p;
    Q.label.resize(classes);
    Q.next.resize(classes * B.p);
    for (long s = 0; s < n; ++s) {
        Q.label[cls[s]] = B.label[s];
        for (int r = 0; r < B.p; ++r) Q.next[cls[s] * B.p + r] = cls[B.step(s, r)];
    }
    Q.start = cls[B.start];
    return canonical_form(Q);
}

bool equal_series(const Dfao& A, const Dfao& B) {
    if (A.p != B.p) throw error(errc::domain, "comparing automata over different alphabets");
    return minimize(A) == minimize(B);
}

Dfao add_series(const Dfao& A, const Dfao& B) {
    if (A.p != B.p) throw error(errc::domain, "adding automata over different alphabets");
    int p = A.p;
    std::unordered_map<uint64_t, uint32_t> id;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    auto key = [&](uint32_t a, uint32_t b) { return (static_cast<uint64_t>(a) << 32) | b; };
    auto intern = [&](uint32_t a, uint32_t b) {
        auto [it, fresh] = id.emplace(key(a, b), static_cast<uint32_t>(pairs.size()));
        if (fresh) pairs.emplace_back(a, b);
        return it->second;
    };
    Dfao C;
    C.p = p;
    C.start = intern(A.start, B.start);
    for (size_t i = 0; i < pairs.size(); ++i) {  // pairs grows while iterating
        auto [a, b] = pairs[i];
        C.label.push_back(static_cast<uint8_t>(fp_add(p, A.label[a], B.label[b])));
        for (int r = 0; r < p; ++r) C.next.push_back(intern(A.step(a, r), B.step(b, r)));
    }
    return minimize(C);
}

Dfao shift_by(const Dfao& A, long m) {
    if (m <= 0) throw error(errc::domain, "shift_by needs m >= 1");
    int p = A.p;
    // transducer state: remaining amount c to subtract from the unread digits.
    // step on digit d: e = d - (c mod p) borrowed into e in [0,p); feed e to A.
    // c sticks at 1 on zero input exactly when k < m.
    std::map<std::pair<uint32_t, long>, uint32_t> id;
    std::vector<std::pair<uint32_t, long>> sts;
    auto intern = [&](uint32_t a, long c) {
        auto [it, fresh] = id.emplace(std::make_pair(a, c), static_cast<uint32_t>(sts.size()));
        if (fresh) sts.emplace_back(a, c);
        return it->second;
    };
    Dfao C;
    C.p = p;
    C.start = intern(A.start, m);
    for (size_t i = 0; i < sts.size(); ++i) {
        auto [a, c] = sts[i];
        // label: feed zeros until c resolves to 0 (label of the A-walk end) or
        // sticks (k < m: coefficient 0)
        {
            uint32_t aw = a;
            long cw = c;
            int lab = -1;
            for (int guard = 0; guard < 128; ++guard) {
                if (cw == 0) {
                    lab = A.label[aw];
                    break;
                }
                int e = static_cast<int>((p - (cw % p)) % p);
                long cn = cw / p + (e != 0 ? 1 : 0);
                if (e == 0 && cn == cw) {  // cannot happen; guard
                    break;
                }
                if (cn == cw && e != 0) {  // stuck borrowing: k < m
                    lab = 0;
                    break;
                }
                aw = A.step(aw, e);
                cw = cn;
            }
            if (lab < 0) throw error(errc::internal, "shift transducer did not resolve");
            C.label.push_back(static_cast<uint8_t>(lab));
        }
        for (int d = 0; d < p; ++d) {
            int cm = static_cast<int>(c % p);
            int e;
            long cn;
            if (d >= cm) {
                e = d - cm;
                cn = c / p;
            } else {
                e = d - cm + p;
                cn = c / p + 1;
            }
            C.next.push_back(intern(A.step(a, e), cn));
        }
    }
    return minimize(C);
}

Dfao mul_by_binomial(const Dfao& A, long m) { return add_series(A, shift_by(A, m)); }

Dfao poly_automaton(const FpPoly& f) {
    int p = f.p();
    // state = exponents (with their coefficients) still matching the digits read
    using State = std::vector<std::pair<long, int>>;
    std::map<State, uint32_t> id;
    std::vector<State> sts;
    auto intern = [&](State v) {
        auto [it, fresh] = id.emplace(std::move(v), static_cast<uint32_t>(sts.size()));
        if (fresh) sts.push_back(it->first);
        return it->second;
    };
    State all;
    for (long e = 0; e <= f.deg(); ++e)
        if (f.coeff(e)) all.emplace_back(e, f.coeff(e));
    Dfao C;
    C.p = p;
    C.start = intern(all);
    for (size_t i = 0; i < sts.size(); ++i) {
        State cur = sts[i];
        int lab = 0;
        for (auto& [e, c] : cur)
            if (e == 0) lab = c;  // the exponent equal to the value read so far
        C.label.push_back(static_cast<uint8_t>(lab));
        for (int r = 0; r < p; ++r) {
            State nxt;
            for (auto& [e, c] : cur)
                if (e % p == r) nxt.emplace_back(e / p, c);
            C.next.push_back(intern(std::move(nxt)));
        }
    }
    return minimize(C);
}

Dfao automaton_of_t(int p) { return poly_automaton(FpPoly::monomial(p, 1)); }

std::string print_dfao(const Dfao& A) {
    std::ostringstream os;
    os << "p=" << A.p << "\n";
    os << "states=" << A.states() << "\n";
    for (long s = 0; s < A.states(); ++s) {
        os << int(A.label[s]);
        for (int r = 0; r < A.p; ++r) os << " " << (A.step(s, r) + 1);
        os << "\n";
    }
    return os.str();
}

Dfao parse_dfao(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw error(errc::parse, "automaton parse error at line " + std::to_string(lineno) + ": " + what);
    };
    Dfao A;
    long nstates = -1;
    long seen = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments and blank lines
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        if (nstates < 0) {
            if (line.rfind("p=", a) == a) {
                A.p = std::stoi(line.substr(a + 2));
                continue;
            }
            if (line.rfind("states=", a) == a) {
                nstates = std::stol(line.substr(a + 7));
                if (nstates <= 0) fail("states must be positive");
                A.label.reserve(nstates);
                A.next.reserve(nstates * A.p);
                continue;
            }
            fail("expected p= or states= header");
        }
        std::istringstream ls(line);
        long lab;
        if (!(ls >> lab)) fail("expected label");
        if (lab < 0 || lab >= A.p) fail("label out of range");
        A.label.push_back(static_cast<uint8_t>(lab));
        for (int r = 0; r < A.p; ++r) {
            long tgt;
            if (!(ls >> tgt)) fail("expected " + std::to_string(A.p) + " transition targets");
            if (tgt < 1 || tgt > nstates) fail("target out of range");
            A.next.push_back(static_cast<uint32_t>(tgt - 1));
        }
        long extra;
        if (ls >> extra) fail("trailing fields");
        ++seen;
    }
    ++lineno;
    if (nstates < 0) fail("missing header");
    if (seen != nstates) fail("expected " + std::to_string(nstates) + " state lines, got " + std::to_string(seen));
    A.start = 0;
    return A;
}

Dfao read_dfao_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_dfao(ss.str());
}

void write_dfao_file(const Dfao& A, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw error(errc::io, "cannot open " + path + " for writing");
    f << print_dfao(A);
}

std::string dfao_dot(const Dfao& A) {
    std::ostringstream os;
    os << "digraph dfao {\n  rankdir=LR;\n  init [shape=point];\n";
    for (long s = 0; s < A.states(); ++s)
        os << "  s" << (s + 1) << " [shape=circle,label=\"" << (s + 1) << ":" << int(A.label[s])
           << "\"];\n";
    os << "  init -> s" << (A.start + 1) << ";\n";
    for (long s = 0; s < A.states(); ++s)
        for (int r = 0; r < A.p; ++r)
            os << "  s" << (s + 1) << " -> s" << (A.step(s, r) + 1) << " [label=\"" << r << "\"];\n";
    os << "}\n";
    return os.str();
}

}
