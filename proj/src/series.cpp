#include "series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nott {

TruncSeries::TruncSeries(int p, std::vector<uint8_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    fp_check_prime(p);
    for (auto& x : c_) x = static_cast<uint8_t>(x % p);
}

TruncSeries TruncSeries::from_poly(const FpPoly& f, long precision) {
    TruncSeries s(f.p(), precision);
    for (long i = 0; i < precision && i <= f.deg(); ++i) s.c_[i] = static_cast<uint8_t>(f.coeff(i));
    return s;
}

TruncSeries TruncSeries::identity(int p, long precision) {
    TruncSeries s(p, precision);
    if (precision > 1) s.c_[1] = 1;
    return s;
}

int TruncSeries::coeff(long i) const {
    if (i < 0 || i >= precision()) throw error(errc::domain, "coefficient beyond precision");
    return c_[i];
}

void TruncSeries::set_coeff(long i, int v) {
    if (i < 0 || i >= precision()) throw error(errc::domain, "coefficient beyond precision");
    v %= p_;
    if (v < 0) v += p_;
    c_[i] = static_cast<uint8_t>(v);
}

bool TruncSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint8_t x) { return x == 0; });
}

std::optional<long> TruncSeries::ord() const {
    for (long i = 0; i < precision(); ++i)
        if (c_[i]) return i;
    return std::nullopt;
}

TruncSeries TruncSeries::truncated(long precision) const {
    if (precision > this->precision()) throw error(errc::domain, "cannot extend series precision");
    TruncSeries s(p_, precision);
    std::copy(c_.begin(), c_.begin() + precision, s.c_.begin());
    return s;
}

FpPoly TruncSeries::poly_prefix(long len) const {
    if (len > precision()) throw error(errc::domain, "prefix beyond precision");
    return FpPoly(p_, std::vector<uint8_t>(c_.begin(), c_.begin() + len));
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    long n = std::min(a.precision(), b.precision());
    TruncSeries r(a.p_, n);
    for (long i = 0; i < n; ++i) r.c_[i] = static_cast<uint8_t>(fp_add(a.p_, a.c_[i], b.c_[i]));
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    long n = std::min(a.precision(), b.precision());
    TruncSeries r(a.p_, n);
    for (long i = 0; i < n; ++i) r.c_[i] = static_cast<uint8_t>(fp_sub(a.p_, a.c_[i], b.c_[i]));
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    long n = std::min(a.precision(), b.precision());
    TruncSeries r(a.p_, n);
    for (long i = 0; i < n; ++i) {
        if (!a.c_[i]) continue;
        int ai = a.c_[i];
        long lim = n - i;
        for (long j = 0; j < lim; ++j)
            if (b.c_[j]) r.c_[i + j] = static_cast<uint8_t>((r.c_[i + j] + ai * b.c_[j]) % a.p_);
    }
    return r;
}

TruncSeries TruncSeries::invert_unit() const {
    if (precision() == 0) throw error(errc::domain, "empty series");
    if (c_[0] == 0) throw error(errc::domain, "inversion of a non-unit series");
    TruncSeries r(p_, precision());
    int u = fp_inv(p_, c_[0]);
    r.c_[0] = static_cast<uint8_t>(u);
    for (long k = 1; k < precision(); ++k) {
        int acc = 0;
        for (long i = 1; i <= k; ++i)
            if (c_[i] && r.c_[k - i]) acc = (acc + c_[i] * r.c_[k - i]) % p_;
        r.c_[k] = static_cast<uint8_t>(fp_mul(p_, u, fp_neg(p_, acc)));
    }
    return r;
}

std::string TruncSeries::print() const {
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < precision(); ++i) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) os << int(c_[0]);
        else {
            if (c_[i] != 1) os << int(c_[i]) << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    os << "+O(t^" << precision() << ")";
    return os.str();
}

TruncSeries eval_poly(const BiPoly& F, const TruncSeries& s) {
    TruncSeries r(s.p(), s.precision());
    for (long i = F.deg_x(); i >= 0; --i) {
        r = r * s + TruncSeries::from_poly(F.coeff_x(i), s.precision());
    }
    return r;
}

TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner) {
    long n = std::min(outer.precision(), inner.precision());
    if (n > 0 && inner.coeff(0) != 0)
        throw error(errc::domain, "composition requires inner constant term 0");
    TruncSeries in = inner.truncated(n);
    TruncSeries r(outer.p(), n);
    for (long i = n - 1; i >= 0; --i) {
        r = r * in;
        if (outer.coeff(i)) r.set_coeff(0, fp_add(outer.p(), r.coeff(0), outer.coeff(i)));
    }
    return r;
}

TruncSeries comp_inverse(const TruncSeries& s) {
    long n = s.precision();
    if (n < 2 || s.coeff(0) != 0 || s.coeff(1) != 1)
        throw error(errc::domain, "compositional inverse needs s = t + O(t^2)");
    // formal derivative of s
    TruncSeries ds(s.p(), n);
    for (long i = 1; i < n; ++i) ds.set_coeff(i - 1, fp_mul(s.p(), s.coeff(i), static_cast<int>(i % s.p())));
    TruncSeries r = TruncSeries::identity(s.p(), n);
    // Newton iteration, precision doubling
    for (long prec = 2; prec < 2 * n; prec *= 2) {
        long P = std::min(prec, n);
        TruncSeries rp = r.truncated(P);
        TruncSeries e = compose(s.truncated(P), rp) - TruncSeries::identity(s.p(), P);
        if (e.is_zero() && P == n) break;
        TruncSeries corr = e * compose(ds.truncated(P), rp).invert_unit();
        r = rp - corr;
        if (P == n) break;
        // re-extend to full precision for the next round
        TruncSeries ext(s.p(), n);
        for (long i = 0; i < P; ++i) ext.set_coeff(i, r.coeff(i));
        r = ext;
    }
    return r;
}

std::optional<long> depth(const TruncSeries& s) {
    auto o = (s - TruncSeries::identity(s.p(), s.precision())).ord();
    if (!o) return std::nullopt;
    return *o - 1;
}

// ----------------------------------------------------------------- text format

namespace {

struct SeriesParser {
    const std::string& s;
    size_t i = 0;
    int p;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw error(errc::parse, "series parse error at offset " + std::to_string(i) + ": " + what);
    }
    long integer() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 100000000) fail("integer too large");
            ++i;
        }
        return v;
    }
    // one term: c, t, t^k, c*t^k, or O(t^k) which sets *oterm
    void term(std::vector<std::pair<long, int>>& coeffs, long* oterm) {
        skip();
        if (i < s.size() && s[i] == 'O') {
            ++i;
            if (!eat('(')) fail("expected '(' after O");
            skip();
            if (i >= s.size() || s[i] != 't') fail("expected t in O-term");
            ++i;
            long k = 1;
            if (eat('^')) k = integer();
            if (!eat(')')) fail("expected ')'");
            if (*oterm >= 0) fail("duplicate O-term");
            *oterm = k;
            return;
        }
        int c = 1;
        long e = 0;
        bool have_num = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = static_cast<int>(integer() % p);
            have_num = true;
            if (eat('*')) {
                skip();
                if (i >= s.size() || s[i] != 't') fail("expected t after '*'");
            }
        }
        skip();
        if (i < s.size() && s[i] == 't') {
            ++i;
            e = 1;
            if (eat('^')) e = integer();
        } else if (!have_num) {
            fail("expected term");
        }
        coeffs.emplace_back(e, c);
    }
};

}  // namespace

TruncSeries parse_series(const std::string& text, int p) {
    SeriesParser P{text, 0, p};
    std::vector<std::pair<long, int>> terms;
    long oterm = -1;
    P.term(terms, &oterm);
    while (P.eat('+')) P.term(terms, &oterm);
    P.skip();
    if (P.i != text.size()) P.fail("trailing input");
    long prec = oterm;
    if (prec < 0) {
        prec = 1;
        for (auto& [e, c] : terms) prec = std::max(prec, e + 1);
    }
    TruncSeries s(p, prec);
    for (auto& [e, c] : terms) {
        if (e >= prec) throw error(errc::parse, "series term beyond the O-term");
        s.set_coeff(e, fp_add(p, s.coeff(e), c));
    }
    return s;
}

bool SeriesPrefix::matches(const FpPoly& q) const {
    for (long i = 0; i < len(); ++i)
        if (q.coeff(i) != coeffs[i]) return false;
    return true;
}

SeriesPrefix SeriesPrefix::parse(const std::string& text, int p) {
    if (text == "none" || text.empty()) return none(p);
    TruncSeries s = parse_series(text, p);
    SeriesPrefix pre{p, {}};
    pre.coeffs.assign(s.coeffs().begin(), s.coeffs().end());
    return pre;
}

std::string SeriesPrefix::print() const {
    TruncSeries s(p, std::vector<uint8_t>(coeffs));
    return s.print();
}

// ------------------------------------------------------------- Hensel machinery

namespace {

// binomial coefficients mod p for small n
int binom_mod(int p, long n, long k) {
    // Lucas
    int r = 1;
    while (n > 0 || k > 0) {
        long nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // small Pascal
        long num = 1, den = 1;
        for (long j = 0; j < kd; ++j) {
            num = (num * ((nd - j) % p)) % p;
            den = (den * ((j + 1) % p)) % p;
        }
        r = static_cast<int>((r * num % p) * fp_inv(p, static_cast<int>(den % p)) % p);
        n /= p;
        k /= p;
    }
    return r;
}

// incremental evaluation state for F(t, s): powers of s, value E, derivative D
struct EvalState {
    const BiPoly* F;
    long W;  // working precision
    std::vector<TruncSeries> pw;
    TruncSeries E, D;

    EvalState(const BiPoly& f, const TruncSeries& s, long work_prec)
        : F(&f), W(work_prec), E(f.p(), work_prec), D(f.p(), work_prec) {
        int p = f.p();
        long d = f.deg_x();
        pw.reserve(d + 1);
        pw.push_back(TruncSeries::from_poly(FpPoly::one(p), W));
        TruncSeries sw(p, W);
        for (long i = 0; i < std::min(W, s.precision()); ++i) sw.set_coeff(i, s.coeff(i));
        for (long i = 1; i <= d; ++i) pw.push_back(pw.back() * sw);
        recompute();
    }

    void recompute() {
        int p = F->p();
        E = TruncSeries(p, W);
        D = TruncSeries(p, W);
        for (long i = 0; i <= F->deg_x(); ++i) {
            const FpPoly& fi = F->coeff_x(i);
            if (fi.is_zero()) continue;
            add_fp_times(E, fi, pw[i]);
            int im = static_cast<int>(i % p);
            if (im && i >= 1) add_fp_times(D, fi.scaled(im), pw[i - 1]);
        }
    }

    // acc += f(t) * s, truncated
    static void add_fp_times(TruncSeries& acc, const FpPoly& f, const TruncSeries& s) {
        int p = acc.p();
        long W = acc.precision();
        for (long a = 0; a <= f.deg(); ++a) {
            int fa = f.coeff(a);
            if (!fa) continue;
            long lim = W - a;
            for (long j = 0; j < lim; ++j) {
                int sj = s.coeff(j);
                if (sj) acc.set_coeff(a + j, (acc.coeff(a + j) + fa * sj) % p);
            }
        }
    }

    // set coefficient k of s to c (previously 0); updates pw, E, D
    void bump(long k, int c) {
        int p = F->p();
        long d = F->deg_x();
        std::vector<TruncSeries> delta(d + 1, TruncSeries(p, 0));
        for (long i = d; i >= 1; --i) {
            TruncSeries di(p, W);
            bool any = false;
            int cj = 1;
            for (long j = 1; j <= i; ++j) {
                cj = fp_mul(p, cj, c);
                if (static_cast<long>(j) * k >= W) break;
                int b = binom_mod(p, i, j);
                if (!b) continue;
                int scal = fp_mul(p, b, cj);
                // di += scal * t^{jk} * pw[i-j]
                long off = j * k;
                const TruncSeries& low = pw[i - j];
                for (long a = 0; a + off < W; ++a) {
                    int v = low.coeff(a);
                    if (v) {
                        di.set_coeff(a + off, (di.coeff(a + off) + scal * v) % p);
                        any = true;
                    }
                }
            }
            if (any) {
                delta[i] = di;
                pw[i] = pw[i] + di;
            }
        }
        for (long i = 1; i <= d; ++i) {
            if (delta[i].precision() == 0) continue;
            const FpPoly& fi = F->coeff_x(i);
            if (!fi.is_zero()) add_fp_times(E, fi, delta[i]);
            if (i + 1 <= d) {
                const FpPoly& fi1 = F->coeff_x(i + 1);
                int im = static_cast<int>((i + 1) % p);
                if (im && !fi1.is_zero()) add_fp_times(D, fi1.scaled(im), delta[i]);
            }
        }
    }
};

}  // namespace

long hensel_discriminant_ord(const BiPoly& F) {
    BiPoly d = F.derivative_x();
    if (d.is_zero()) throw error(errc::domain, "inseparable polynomial has zero X-derivative");
    FpPoly res = resultant_x(F, d);
    if (res.is_zero()) throw error(errc::domain, "polynomial is not squarefree in X");
    return res.ord();
}

TruncSeries hensel_root(const BiPoly& F, const TruncSeries& seed, long precision) {
    int p = F.p();
    long L = seed.precision();
    if (L < 1) throw error(errc::domain, "empty seed");
    long W = std::max(precision, L);
    TruncSeries s(p, W);
    for (long i = 0; i < L; ++i) s.set_coeff(i, seed.coeff(i));

    // find mu = ord dF/dX(t, seed) with a first pass, then size the state so
    // that index k + mu is visible for every lifted coefficient
    EvalState st(F, s, W + 64);
    auto mo = st.D.ord();
    if (!mo) throw error(errc::domain, "dF/dX vanishes on the seed to working precision");
    long mu = *mo;
    if (mu + 1 > L)
        throw error(errc::domain, "seed shorter than the Hensel threshold (need ord dF/dX + 1 terms)");
    if (W + mu + 1 > st.E.precision()) st = EvalState(F, s, W + mu + 1);
    for (long i = 0; i < L + mu; ++i)
        if (st.E.coeff(i))
            throw error(errc::domain,
                        "seed not liftable: residual is nonzero at index " + std::to_string(i));
    int dinv = fp_inv(p, st.D.coeff(mu));
    for (long k = L; k < precision; ++k) {
        int e = st.E.coeff(k + mu);
        if (e) {
            int c = fp_mul(p, fp_neg(p, e), dinv);
            s.set_coeff(k, c);
            st.bump(k, c);
            if (st.D.coeff(mu) == 0) throw error(errc::internal, "derivative order shifted");
        }
    }
    return s.truncated(precision);
}

std::vector<FpPoly> truncated_solutions(const BiPoly& F, long bound_2m, const SeriesPrefix& constraint) {
    int p = F.p();
    long W = bound_2m + 1;
    std::vector<FpPoly> out;
    if (F.is_zero()) throw error(errc::domain, "truncated_solutions of zero polynomial");
    long node_budget = 4'000'000;

    struct Dfs {
        const BiPoly& F;
        const SeriesPrefix& cons;
        long W;
        int p;
        std::vector<FpPoly>& out;
        long& budget;

        // Coefficients of the residual E below k + min(ord dF/dX, k) cannot be
        // changed by digits at positions >= k, so they must already vanish.
        bool viable(long k, const EvalState& st) const {
            long mu = k;
            for (long i = 0; i < std::min(k, st.D.precision()); ++i)
                if (st.D.coeff(i)) {
                    mu = i;
                    break;
                }
            long bound = std::min(k + std::min(mu, k), st.E.precision());
            for (long i = 0; i < bound; ++i)
                if (st.E.coeff(i)) return false;
            return true;
        }

        void run(long k, TruncSeries& s, EvalState& st) {
            if (--budget < 0) throw error(errc::limit, "truncated_solutions search budget exhausted");
            if (k >= W) {
                out.push_back(s.poly_prefix(W));
                return;
            }
            for (int c = 0; c < p; ++c) {
                if (k < cons.len() && cons.coeffs[k] != c) continue;
                if (c == 0) {
                    if (viable(k + 1, st)) run(k + 1, s, st);
                } else {
                    EvalState st2 = st;
                    st2.bump(k, c);
                    if (!viable(k + 1, st2)) continue;
                    TruncSeries s2 = s;
                    s2.set_coeff(k, c);
                    run(k + 1, s2, st2);
                }
            }
        }
    };

    TruncSeries s(p, W);
    EvalState st(F, s, W);
    Dfs dfs{F, constraint, W, p, out, node_budget};
    dfs.run(0, s, st);
    std::sort(out.begin(), out.end(),
              [](const FpPoly& a, const FpPoly& b) { return a.coeffs() < b.coeffs(); });
    return out;
}

}
