#include "christol.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace nott {

Dfao with_labels(const OrbitGraph& g, const std::vector<uint8_t>& labels) {
    if (static_cast<long>(labels.size()) != g.states())
        throw error(errc::domain, "label count mismatch");
    Dfao A;
    A.p = g.p;
    A.start = g.start;
    A.label = labels;
    A.next = g.next;
    return A;
}

MatrixSpace::Elem MatrixSpace::apply(int r, const Elem& v) const {
    const auto& M = mats.at(r);
    size_t n = v.size();
    Elem out(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (!v[i]) continue;
        for (size_t j = 0; j < n; ++j)
            if (M[i][j]) out[j] = static_cast<uint8_t>((out[j] + v[i] * M[i][j]) % p_);
    }
    return out;
}

// ------------------------------------------------------------------- Ore form

namespace {

// Rows of polynomials with dependency tracking over the originally inserted
// rows; elimination is fraction-free by cross-multiplication.
struct PolyRowSpace {
    int p;
    struct Row {
        std::vector<FpPoly> v;
        std::vector<FpPoly> combo;
        long pivot;
    };
    std::vector<Row> rows;
    long inserted = 0;

    static void reduce_content(std::vector<FpPoly>& v, std::vector<FpPoly>& combo) {
        FpPoly g = FpPoly::zero(v.empty() ? 2 : v.front().p());
        for (const auto& f : v) {
            if (f.is_zero()) continue;
            g = gcd(g, f);
            if (g.deg() == 0) break;
        }
        if (g.deg() <= 0) return;
        for (const auto& f : combo) {
            if (f.is_zero()) continue;
            g = gcd(g, f);
            if (g.deg() == 0) return;
        }
        for (auto& f : v)
            if (!f.is_zero()) f = f.exact_div(g);
        for (auto& f : combo)
            if (!f.is_zero()) f = f.exact_div(g);
    }

    // nullopt when independent (row stored); else combination over inserted rows
    std::optional<std::vector<FpPoly>> insert(std::vector<FpPoly> v) {
        std::vector<FpPoly> combo(inserted + 1, FpPoly::zero(p));
        combo[inserted] = FpPoly::one(p);
        ++inserted;
        for (auto& row : rows) {
            if (row.pivot >= static_cast<long>(v.size()) || v[row.pivot].is_zero()) continue;
            FpPoly a = row.v[row.pivot];
            FpPoly b = v[row.pivot];
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = v[j] * a - (j < row.v.size() ? row.v[j] : FpPoly::zero(p)) * b;
            combo.resize(std::max(combo.size(), row.combo.size()), FpPoly::zero(p));
            for (size_t j = 0; j < combo.size(); ++j)
                combo[j] = combo[j] * a - (j < row.combo.size() ? row.combo[j] : FpPoly::zero(p)) * b;
            reduce_content(v, combo);
        }
        long piv = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                piv = static_cast<long>(j);
                break;
            }
        if (piv < 0) return combo;
        rows.push_back(Row{std::move(v), std::move(combo), piv});
        return std::nullopt;
    }
};

std::vector<FpPoly> bipoly_to_vec(const BiPoly& g, long d) {
    std::vector<FpPoly> v;
    v.reserve(d);
    for (long i = 0; i < d; ++i) v.push_back(g.coeff_x(i));
    return v;
}

}  // namespace

OreForm to_ore_form(const BiPoly& F_in) {
    int p = F_in.p();
    if (F_in.is_zero()) throw error(errc::domain, "Ore form of zero polynomial");
    BiPoly F = F_in.strip_x_power();
    long d = F.deg_x();
    if (d < 1) throw error(errc::domain, "Ore form needs a nonconstant polynomial");
    {
        bool insep = F.derivative_x().is_zero();
        if (insep) throw error(errc::domain, "polynomial is inseparable (a p-th power in X)");
    }
    const FpPoly& ad = F.lead_x();

    // X^{p^j} mod F as numerator polynomial with denominator ad^{e_j}
    BiPoly cur = BiPoly::var_x(p);
    if (d == 1) cur = BiPoly::from_t(-F.coeff_x(0));  // X = -a_0 / a_1, denominator exponent 1
    long cur_e = (d == 1) ? 1 : 0;

    PolyRowSpace space{p, {}, 0};
    std::vector<long> es;
    std::optional<std::vector<FpPoly>> dep;
    for (long j = 0; j <= d; ++j) {
        es.push_back(cur_e);
        dep = space.insert(bipoly_to_vec(cur, std::max<long>(d, 1)));
        if (dep) break;
        // Frobenius then reduce mod F
        BiPoly nxt = cur.frobenius();
        cur_e *= p;
        while (nxt.deg_x() >= d) {
            FpPoly u = nxt.lead_x();
            long k = nxt.deg_x() - d;
            nxt = nxt.mul_fp(ad) - F.mul_fp(u).shift_x(k);
            ++cur_e;
        }
        cur = nxt;
    }
    if (!dep) throw error(errc::internal, "no dependency among X^{p^i} up to i = deg F");

    // X^{p^i} = n_i / ad^{e_i} mod F and sum combo_i n_i = 0, so the relation
    // among the powers themselves is sum (combo_i ad^{e_i}) X^{p^i} = 0 mod F
    std::vector<FpPoly> B = *dep;
    for (size_t i = 0; i < B.size(); ++i)
        if (!B[i].is_zero() && es[i] > 0) B[i] = B[i] * ad.pow(es[i]);

    auto strip = [&](std::vector<FpPoly>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        FpPoly g = FpPoly::zero(p);
        for (const auto& f : v) {
            if (f.is_zero()) continue;
            g = gcd(g, f);
            if (g.deg() == 0) break;
        }
        if (g.deg() > 0)
            for (auto& f : v)
                if (!f.is_zero()) f = f.exact_div(g);
        if (!v.empty() && !v.back().is_zero()) {
            int u = fp_inv(p, v.back().lc());
            for (auto& f : v) f = f.scaled(u);
        }
    };
    strip(B);

    // Cartier descent until B_0 is nonzero: from sum_{i>=1} B_i s^{p^i} = 0
    // derive sum_i C_r(B_i) s^{p^{i-1}} = 0 for each digit r.
    while (!B.empty() && B[0].is_zero()) {
        std::vector<FpPoly> best;
        for (int r = 0; r < p; ++r) {
            std::vector<FpPoly> cand;
            cand.reserve(B.size() - 1);
            for (size_t i = 1; i < B.size(); ++i) cand.push_back(B[i].cartier(r));
            bool nz = std::any_of(cand.begin(), cand.end(),
                                  [](const FpPoly& f) { return !f.is_zero(); });
            if (nz) {
                best = std::move(cand);
                break;
            }
        }
        if (best.empty()) throw error(errc::internal, "Cartier descent produced zero relation");
        B = std::move(best);
        strip(B);
    }
    if (B.size() < 2) throw error(errc::internal, "degenerate Ore form");
    OreForm G;
    G.B = std::move(B);
    return G;
}

OreSpace ore_space(const OreForm& G, int p) {
    if (G.B.empty() || G.B[0].is_zero()) throw error(errc::domain, "Ore form needs B_0 != 0");
    OreSpace sp;
    sp.p_ = p;
    sp.B = G.B;
    long dprime = G.dprime();
    long degB0 = sp.B[0].deg();
    long N = degB0;
    for (long i = 1; i <= dprime; ++i) {
        if (sp.B[i].is_zero()) continue;
        // ceil((deg B_i + (p^i - 2) deg B_0) / (p - 1)) - 1
        long pi = 1;
        for (long k = 0; k < i; ++k) pi *= p;
        long num = sp.B[i].deg() + (pi - 2) * degB0;
        long bound = (num + (p - 1) - 1) / (p - 1) - 1;
        N = std::max(N, bound);
    }
    sp.N = N;
    sp.P.assign(1, FpPoly::zero(p));  // index 0 unused
    for (long k = 1; k <= dprime; ++k) {
        long pk = 1;
        for (long i = 0; i < k; ++i) pk *= p;
        sp.P.push_back(sp.B[k].is_zero() ? FpPoly::zero(p) : sp.B[k] * sp.B[0].pow(pk - 2));
    }
    return sp;
}

OreSpace::Elem OreSpace::s0() const {
    Elem v(B.size() - 1, FpPoly::zero(p_));
    v[0] = B[0];
    return v;
}

OreSpace::Elem OreSpace::apply(int r, const Elem& v) const {
    long dprime = static_cast<long>(B.size()) - 1;
    Elem out(dprime, FpPoly::zero(p_));
    const FpPoly& D0 = v[0];
    for (long k = 1; k < dprime; ++k) {
        FpPoly arg = v[k];
        if (!D0.is_zero() && !P[k].is_zero()) arg = arg - D0 * P[k];
        out[k - 1] = out[k - 1] + arg.cartier(r);
    }
    if (!D0.is_zero() && !P[dprime].is_zero())
        out[dprime - 1] = out[dprime - 1] - (D0 * P[dprime]).cartier(r);
    for (auto& f : out)
        if (f.deg() > N) throw error(errc::internal, "Ore operator left the degree-bounded space");
    return out;
}

std::string OreSpace::encode(const Elem& v) const {
    std::string s;
    for (const auto& f : v) {
        uint32_t n = static_cast<uint32_t>(f.coeffs().size());
        s.append(reinterpret_cast<const char*>(&n), 4);
        s.append(reinterpret_cast<const char*>(f.coeffs().data()), f.coeffs().size());
    }
    return s;
}

std::vector<uint8_t> ore_labels(const OreSpace& sp, const std::vector<OreSpace::Elem>& elems,
                                const BiPoly& F, const TruncSeries& seed) {
    int p = sp.p_;
    const FpPoly& B0 = sp.B[0];
    long ell = B0.ord();
    if (ell < 1) throw error(errc::domain, "direct Ore labels need ord B_0 >= 1");
    // seed/B_0 = b_1 t^{-(ell-1)} + ... + b_ell + O(t); b_j = coeff of t^{j-ell}
    TruncSeries root = seed;
    if (root.precision() < ell + 1) root = hensel_root(F, seed, ell + 1);
    TruncSeries unit(p, ell + 1);
    for (long i = 0; i + ell <= B0.deg() && i <= ell; ++i) unit.set_coeff(i, B0.coeff(i + ell));
    TruncSeries lau = root.truncated(ell + 1) * unit.invert_unit();
    // b_j for 1 <= j <= ell is the coefficient of t^{j} in root/(B0/t^ell) / t^... :
    // root/B0 = (root * unit^{-1}) / t^ell, so b_j = coeff of t^{j} in lau... (j - ell + ell)
    std::vector<int> b(ell + 1, 0);
    for (long j = 1; j <= ell; ++j) b[j] = lau.coeff(j);
    std::vector<uint8_t> labels;
    labels.reserve(elems.size());
    for (const auto& e : elems) {
        int acc = 0;
        long pk = 1;
        for (size_t k = 0; k < e.size(); ++k) {
            const FpPoly& Dk = e[k];
            for (long i = 0; i <= Dk.deg(); i += pk) {
                if (i % pk != 0) continue;
                int c = Dk.coeff(i);
                if (!c) continue;
                long idx = ell - i / pk;
                if (idx >= 1 && idx <= ell) acc = (acc + c * b[idx]) % p;
            }
            pk *= p;
        }
        labels.push_back(static_cast<uint8_t>(acc));
    }
    return labels;
}

// ------------------------------------------------------------------- diagonal

DiagonalSpace::Elem DiagonalSpace::apply(int r, const Elem& v) const {
    BiPoly out = (v * Qpow).cartier(r);
    if (out.deg_x() > dx || out.deg_t() > dt)
        throw error(errc::internal, "diagonal operator left the degree-bounded space");
    return out;
}

std::string DiagonalSpace::encode(const Elem& v) const {
    std::string s;
    for (long i = 0; i <= v.deg_x(); ++i) {
        const auto& c = v.coeff_x(i).coeffs();
        uint32_t n = static_cast<uint32_t>(c.size());
        s.append(reinterpret_cast<const char*>(&n), 4);
        s.append(reinterpret_cast<const char*>(c.data()), c.size());
    }
    return s;
}

DiagonalSpace diagonal_space(const BiPoly& G) {
    int p = G.p();
    int c = G.coeff_x(1).coeff(0);  // dG/dX at (0,0)
    if (G.coeff_x(0).coeff(0) != 0 || c == 0)
        throw error(errc::domain, "diagonal method needs a non-singular polynomial");
    int cinv = fp_inv(p, c);
    BiPoly sub = G.subst_tx_x();  // G(tX, X)
    // P = c^{-1} X dG/dX(tX, X); Q = c^{-1} X^{-1} G(tX, X)
    BiPoly P = G.derivative_x().subst_tx_x().shift_x(1).scaled(cinv);
    if (sub.ord_x() < 1) throw error(errc::internal, "G(tX,X) not divisible by X");
    BiPoly Q = sub.strip_x_power().scaled(cinv);
    if (sub.ord_x() > 1) Q = Q.shift_x(sub.ord_x() - 1);
    DiagonalSpace sp;
    sp.p_ = p;
    sp.P = P;
    sp.Q = Q;
    sp.Qpow = Q.pow(p - 1);
    sp.dt = std::max(P.deg_t(), Q.deg_t());
    sp.dx = std::max(P.deg_x(), Q.deg_x());
    return sp;
}

// --------------------------------------------------------------- label oracle

std::vector<uint8_t> hensel_labels(const OrbitGraph& g, const BiPoly& F, const TruncSeries& seed,
                                   unsigned long long value_cap) {
    long n = g.states();
    // minimal word per vertex by BFS, digits ascending; value of a word is
    // sum w_i p^i, trailing zeros allowed (leading-zeros invariance makes the
    // coefficient at that value the correct label regardless)
    std::vector<unsigned long long> value(n, ~0ull);
    std::vector<char> seen(n, 0);
    const unsigned long long big = value_cap + 1;  // sentinel place value
    std::queue<std::pair<uint32_t, std::pair<unsigned long long, unsigned long long>>> q;
    q.push({g.start, {0, 1}});  // (value so far, p^length)
    seen[g.start] = 1;
    value[g.start] = 0;
    unsigned long long maxval = 0;
    while (!q.empty()) {
        auto [s, vp] = q.front();
        q.pop();
        auto [val, pl] = vp;
        for (int r = 0; r < g.p; ++r) {
            uint32_t u = g.step(s, r);
            if (seen[u]) continue;
            // a zero digit leaves the value; its label is still a_val by invariance
            unsigned long long nv = val + static_cast<unsigned long long>(r) * pl;
            if (r > 0 && (pl >= big || nv > value_cap))
                throw error(errc::limit, "vertex only addressable beyond the search cap");
            seen[u] = 1;
            value[u] = nv;
            maxval = std::max(maxval, nv);
            q.push({u, {nv, pl >= big ? big : std::min(pl * g.p, big)}});
        }
    }
    TruncSeries root = hensel_root(F, seed, static_cast<long>(maxval) + 1);
    std::vector<uint8_t> labels(n, 0);
    for (long s = 0; s < n; ++s) labels[s] = static_cast<uint8_t>(root.coeff(value[s]));
    return labels;
}

// ------------------------------------------------------------------ the solver

namespace {

// local Hensel data of a root: mu = ord dF/dX(t, root)
long root_derivative_ord(const BiPoly& F, const TruncSeries& root) {
    TruncSeries d = eval_poly(F.derivative_x(), root);
    auto o = d.ord();
    if (!o) throw error(errc::domain, "dF/dX vanishes on the root to working precision");
    return *o;
}

Dfao diagonal_solve_inner(const BiPoly& F, const TruncSeries& seed, const SolveOptions& opt) {
    int p = F.p();
    // special case: non-singular F and the seed is the unique root with s(0) = 0
    bool nonsing = !F.is_zero() && F.coeff_x(0).coeff(0) == 0 && F.coeff_x(1).coeff(0) != 0;
    if (nonsing && seed.coeff(0) == 0) {
        DiagonalSpace sp = diagonal_space(F);
        auto orb = build_graph(sp, opt.orbit_cap);
        std::vector<uint8_t> labels;
        labels.reserve(orb.elems.size());
        for (const auto& e : orb.elems) labels.push_back(static_cast<uint8_t>(sp.label(e)));
        return minimize(with_labels(orb.graph, labels));
    }
    // general case: shift to a non-singular equation around the root. The
    // shift exponent is the local 2*mu + 1 with mu = ord dF/dX(t, root); this
    // is the same Hensel argument as the global ord-of-resultant shift but
    // keeps the shifted equation small.
    TruncSeries root = seed;
    long mu = -1;
    for (long guess = std::max<long>(root.precision(), 32);; guess *= 2) {
        if (root.precision() < guess) root = hensel_root(F, seed, guess);
        try {
            mu = root_derivative_ord(F, root);
            break;
        } catch (const error&) {
            if (guess > 1 << 20) throw;
        }
    }
    long mshift = 2 * mu + 1;
    if (root.precision() < mshift + 1) root = hensel_root(F, seed, mshift + 1);
    FpPoly q = root.poly_prefix(mshift + 1);
    // G = t^{-s} F(t, t^m X + q), s = m + ord dF/dX(t, q)
    BiPoly shift_arg = BiPoly::monomial(p, mshift, 1) + BiPoly::from_t(q);
    BiPoly G = F.subst_x(shift_arg);
    FpPoly dq = F.derivative_x().eval_x(q);
    if (dq.is_zero() || dq.ord() != mu)
        throw error(errc::internal, "derivative order at the shift point is off");
    long s = mshift + mu;
    // divide every coefficient by t^s
    std::vector<FpPoly> rows;
    for (long i = 0; i <= G.deg_x(); ++i) {
        const FpPoly& cc = G.coeff_x(i);
        if (cc.is_zero()) {
            rows.push_back(cc);
            continue;
        }
        if (cc.ord() < s) throw error(errc::internal, "shifted equation not divisible by t^s");
        rows.push_back(FpPoly(p, std::vector<uint8_t>(cc.coeffs().begin() + s, cc.coeffs().end())));
    }
    BiPoly Gs(p, std::move(rows));
    // tau is the unique root of Gs with tau(0) = 0; sigma = q + t^m tau
    TruncSeries tau_seed(p, 1);
    Dfao Atau = diagonal_solve_inner(Gs, tau_seed, opt);
    Dfao Aq = poly_automaton(q);
    Dfao shifted = shift_by(Atau, mshift);
    return minimize(add_series(Aq, shifted));
}

}  // namespace

Dfao diagonal_solve(const BiPoly& F, const TruncSeries& seed, const SolveOptions& opt) {
    return diagonal_solve_inner(F, seed, opt);
}

Dfao solve_ore(const BiPoly& F, const TruncSeries& seed, const SolveOptions& opt) {
    OreForm G = to_ore_form(F);
    OreSpace sp = ore_space(G, F.p());
    auto orb = build_graph(sp, opt.orbit_cap);
    std::vector<uint8_t> labels;
    if (!sp.B[0].is_zero() && sp.B[0].ord() >= 1) {
        labels = ore_labels(sp, orb.elems, F, seed);
    } else {
        labels = hensel_labels(orb.graph, F, seed);
    }
    Dfao A = minimize(with_labels(orb.graph, labels));
    return A;
}

Solution solve_seeded(const BiPoly& F_in, const TruncSeries& prefix, const SolveOptions& opt) {
    if (F_in.is_zero()) throw error(errc::domain, "solve of zero polynomial");
    BiPoly F = F_in;
    if (F.ord_x() > 0) F = F.strip_x_power();
    bool flagged = false;
    BiPoly Fs = squarefree_part_x(F, &flagged);
    if (flagged)
        throw error(errc::domain, "equation has an inseparable part that cannot be extracted");
    long prec = std::max<long>(opt.series_prec, prefix.precision());
    TruncSeries series = hensel_root(Fs, prefix, prec);
    // polynomial roots are recognized exactly and built directly
    {
        long last = -1;
        for (long i = 0; i < series.precision(); ++i)
            if (series.coeff(i)) last = i;
        if (last + 1 <= series.precision() / 2) {
            FpPoly q = series.poly_prefix(last + 1);
            if (Fs.eval_x(q).is_zero()) {
                Dfao A = poly_automaton(q);
                return {A, TruncSeries::from_poly(q, opt.series_prec)};
            }
        }
    }
    Dfao A = (opt.method == Method::ore) ? solve_ore(Fs, series, opt)
                                         : diagonal_solve(Fs, series, opt);
    if (opt.method == Method::both) {
        Dfao B = solve_ore(Fs, series, opt);
        if (!equal_series(A, B)) throw error(errc::internal, "ore and diagonal routes disagree");
    }
    if (series_prefix(A, series.precision()) != series)
        throw error(errc::internal, "solver output does not match the Hensel root");
    return {std::move(A), series.truncated(opt.series_prec)};
}

std::vector<Solution> solve(const BiPoly& F_in, const SeriesPrefix& constraint,
                            const SolveOptions& opt) {
    if (F_in.is_zero()) throw error(errc::domain, "solve of zero polynomial");
    int p = F_in.p();
    std::vector<Solution> out;
    BiPoly F = F_in;
    // the zero series is a root exactly when X | F
    if (F.ord_x() > 0) {
        bool zero_ok = true;
        for (auto c : constraint.coeffs)
            if (c) zero_ok = false;
        if (zero_ok) {
            Dfao Z;
            Z.p = p;
            Z.start = 0;
            Z.label = {0};
            Z.next.assign(p, 0);
            out.push_back({Z, TruncSeries(p, opt.series_prec)});
        }
        F = F.strip_x_power();
    }
    bool flagged = false;
    BiPoly Fs = squarefree_part_x(F, &flagged);
    if (flagged)
        throw error(errc::domain, "equation has an inseparable part that cannot be extracted");
    if (Fs.deg_x() < 1) return out;
    long m = hensel_discriminant_ord(Fs);
    auto seeds = truncated_solutions(Fs, 2 * m, constraint);
    for (const auto& q : seeds) {
        TruncSeries seed = TruncSeries::from_poly(q, 2 * m + 1);
        TruncSeries series;
        try {
            series = hensel_root(Fs, seed, std::max<long>(opt.series_prec, constraint.len()));
        } catch (const error& e) {
            if (e.code == errc::domain) continue;  // spurious truncated solution
            throw;
        }
        // the constraint may pin more coefficients than the seed length
        {
            bool ok = true;
            for (long i = 0; i < std::min(constraint.len(), series.precision()); ++i)
                if (series.coeff(i) != constraint.coeffs[i]) ok = false;
            if (!ok) continue;
        }
        series = series.truncated(opt.series_prec);
        Dfao A;
        switch (opt.method) {
            case Method::ore:
                A = solve_ore(Fs, series, opt);
                break;
            case Method::diagonal:
                A = diagonal_solve(Fs, series, opt);
                break;
            case Method::both: {
                A = diagonal_solve(Fs, series, opt);
                Dfao B = solve_ore(Fs, series, opt);
                if (!equal_series(A, B))
                    throw error(errc::internal, "ore and diagonal routes disagree");
                break;
            }
        }
        // solver soundness: the automaton reproduces the Hensel expansion
        if (series_prefix(A, series.precision()) != series)
            throw error(errc::internal, "solver output does not match the Hensel root");
        out.push_back({std::move(A), std::move(series)});
    }
    return out;
}

}
