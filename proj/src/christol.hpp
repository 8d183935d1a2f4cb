#pragma once

#include "dfao.hpp"
#include "ratfn.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nott {

// Directed graph of an automaton before output labels are assigned.
struct OrbitGraph {
    int p = 2;
    uint32_t start = 0;
    std::vector<uint32_t> next;  // next[s*p + r]
    long states() const { return static_cast<long>(next.size()) / p; }
    uint32_t step(uint32_t s, int r) const { return next[s * p + r]; }
};

Dfao with_labels(const OrbitGraph& g, const std::vector<uint8_t>& labels);

// Orbit closure of s0 under the maps Lambda_r, worklist order FIFO.
// Space requirements: Elem, int p() const, Elem s0() const,
// Elem apply(int r, const Elem&) const, std::string encode(const Elem&) const.
template <class Space>
struct Orbit {
    OrbitGraph graph;
    std::vector<typename Space::Elem> elems;
};

template <class Space>
Orbit<Space> build_graph(const Space& sp, long cap = 1'000'000) {
    Orbit<Space> out;
    out.graph.p = sp.p();
    std::unordered_map<std::string, uint32_t> id;
    out.elems.push_back(sp.s0());
    id.emplace(sp.encode(out.elems[0]), 0);
    out.graph.start = 0;
    for (size_t i = 0; i < out.elems.size(); ++i) {
        for (int r = 0; r < sp.p(); ++r) {
            auto nxt = sp.apply(r, out.elems[i]);
            auto k = sp.encode(nxt);
            auto [it, fresh] = id.emplace(std::move(k), static_cast<uint32_t>(out.elems.size()));
            if (fresh) {
                out.elems.push_back(std::move(nxt));
                if (static_cast<long>(out.elems.size()) > cap)
                    throw error(errc::limit, "orbit exceeds configured cap");
            }
            out.graph.next.push_back(it->second);
        }
    }
    return out;
}

// A finite F_p-space given by explicit matrices acting on row vectors.
struct MatrixSpace {
    using Elem = std::vector<uint8_t>;
    int p_ = 2;
    std::vector<std::vector<std::vector<uint8_t>>> mats;  // mats[r][row][col]
    Elem start;

    int p() const { return p_; }
    Elem s0() const { return start; }
    Elem apply(int r, const Elem& v) const;
    std::string encode(const Elem& v) const { return std::string(v.begin(), v.end()); }
};

// Ore form sum B_i X^{p^i} with B_0 != 0.
struct OreForm {
    std::vector<FpPoly> B;  // index i = coefficient of X^{p^i}
    long dprime() const { return static_cast<long>(B.size()) - 1; }
};

// Computes an Ore polynomial whose solution set contains the F_p-span of the
// roots of F, by finding the first F_p(t)-linear dependency among X^{p^i} mod F.
// Applies Cartier descent until B_0 != 0.
OreForm to_ore_form(const BiPoly& F);

// Operator space of an Ore form: tuples (D_0..D_{d'-1}) of polynomials of
// degree <= N, s0 = B_0 X, Lambda_r per the Cartier-operator formula.
struct OreSpace {
    using Elem = std::vector<FpPoly>;
    int p_;
    long N = 0;  // degree bound
    std::vector<FpPoly> B;
    std::vector<FpPoly> P;  // P[k] = B_k * B_0^{p^k - 2}, k = 1..d'

    int p() const { return p_; }
    long dim() const { return (N + 1) * (static_cast<long>(B.size()) - 1); }
    Elem s0() const;
    Elem apply(int r, const Elem& v) const;
    std::string encode(const Elem& v) const;
};
OreSpace ore_space(const OreForm& G, int p);

// Direct vertex labels for the Ore route from the Laurent prefix of seed/B_0;
// requires ord B_0 >= 1.
std::vector<uint8_t> ore_labels(const OreSpace& sp, const std::vector<OreSpace::Elem>& elems,
                                const BiPoly& F, const TruncSeries& seed);

// Operator space for the Furstenberg diagonal method (non-singular case).
struct DiagonalSpace {
    using Elem = BiPoly;
    int p_;
    long dt = 0, dx = 0;  // degree bounds of V
    BiPoly P, Q, Qpow;    // Qpow = Q^{p-1}

    int p() const { return p_; }
    long dim() const { return (dt + 1) * (dx + 1); }
    Elem s0() const { return P; }
    Elem apply(int r, const Elem& v) const;
    std::string encode(const Elem& v) const;
    int label(const Elem& v) const { return v.coeff_x(0).coeff(0); }
};
// Requires G non-singular: G(0,0) = 0 and dG/dX(0,0) != 0.
DiagonalSpace diagonal_space(const BiPoly& G);

// Assigns labels by walking base-p expansions and reading Hensel coefficients;
// value_cap bounds the integers whose expansions are walked.
std::vector<uint8_t> hensel_labels(const OrbitGraph& g, const BiPoly& F, const TruncSeries& seed,
                                   unsigned long long value_cap = 1ull << 20);

enum class Method { ore, diagonal, both };

struct SolveOptions {
    Method method = Method::diagonal;
    long series_prec = 200;
    long orbit_cap = 1'000'000;
    bool check_labels_by_hensel = false;  // cross-check when the value cap allows
};

struct Solution {
    Dfao automaton;
    TruncSeries series;
};

// Full solver: Hensel seeds matching the constraint, one minimized automaton
// per seed. method = both builds by both routes and requires equal_series.
std::vector<Solution> solve(const BiPoly& F, const SeriesPrefix& constraint,
                            const SolveOptions& opt = {});

// Single-seed versions (seed must extend to a root).
Dfao solve_ore(const BiPoly& F, const TruncSeries& seed, const SolveOptions& opt = {});
Dfao diagonal_solve(const BiPoly& F, const TruncSeries& seed, const SolveOptions& opt = {});

// Automaton of the unique root extending a (long) known prefix, bypassing the
// seed enumeration; detects polynomial roots exactly and short-circuits them.
Solution solve_seeded(const BiPoly& F, const TruncSeries& prefix, const SolveOptions& opt = {});

}
