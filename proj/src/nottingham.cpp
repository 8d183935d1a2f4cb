#include "nottingham.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nott {

namespace {
const FpPoly& chk2(const FpPoly& f) {
    if (f.p() != 2) throw error(errc::domain, "Witt arithmetic is implemented in characteristic 2");
    return f;
}
}  // namespace

WittVec WittVec::zero(int n) {
    if (n != 2 && n != 3) throw error(errc::domain, "Witt length must be 2 or 3");
    return WittVec{std::vector<FpPoly>(n, FpPoly::zero(2))};
}

WittVec WittVec::one(int n) {
    WittVec w = zero(n);
    w.a[0] = FpPoly::one(2);
    return w;
}

WittVec WittVec::constants(std::vector<int> comps) {
    WittVec w = zero(static_cast<int>(comps.size()));
    for (size_t i = 0; i < comps.size(); ++i) w.a[i] = FpPoly::constant(2, comps[i]);
    return w;
}

bool WittVec::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const FpPoly& f) { return f.is_zero(); });
}

WittVec operator+(const WittVec& x, const WittVec& y) {
    if (x.len() != y.len()) throw error(errc::domain, "Witt length mismatch");
    const auto& a = x.a;
    const auto& b = y.a;
    chk2(a[0]);
    chk2(b[0]);
    WittVec r = WittVec::zero(x.len());
    r.a[0] = a[0] + b[0];
    r.a[1] = a[1] + b[1] + a[0] * b[0];
    if (x.len() == 3) {
        // a2 + b2 + a1 b1 + a0 a1 b0 + a0 b0 b1 + a0^3 b0 + a0 b0^3
        r.a[2] = a[2] + b[2] + a[1] * b[1] + a[0] * a[1] * b[0] + a[0] * b[0] * b[1] +
                 a[0] * a[0] * a[0] * b[0] + a[0] * b[0] * b[0] * b[0];
    }
    return r;
}

WittVec operator*(const WittVec& x, const WittVec& y) {
    if (x.len() != y.len()) throw error(errc::domain, "Witt length mismatch");
    const auto& a = x.a;
    const auto& b = y.a;
    chk2(a[0]);
    chk2(b[0]);
    WittVec r = WittVec::zero(x.len());
    r.a[0] = a[0] * b[0];
    r.a[1] = a[0] * a[0] * b[1] + a[1] * b[0] * b[0];
    if (x.len() == 3) {
        // a1^2 b1^2 + a0^4 b2 + a2 b0^4 + a0^2 a1 b0^2 b1
        FpPoly a0_2 = a[0] * a[0], b0_2 = b[0] * b[0];
        r.a[2] = a[1] * a[1] * b[1] * b[1] + a0_2 * a0_2 * b[2] + a[2] * b0_2 * b0_2 +
                 a0_2 * a[1] * b0_2 * b[1];
    }
    return r;
}

WittVec WittVec::operator-() const {
    // solve a + x = 0 componentwise; for n = 2 this is the printed
    // -(a0, a1) = (a0, a1 + a0^2)
    WittVec x = zero(len());
    x.a[0] = a[0];
    x.a[1] = a[1] + a[0] * x.a[0];
    if (len() == 3)
        x.a[2] = a[2] + a[1] * x.a[1] + a[0] * a[1] * x.a[0] + a[0] * x.a[0] * x.a[1] +
                 a[0] * a[0] * a[0] * x.a[0] + a[0] * x.a[0] * x.a[0] * x.a[0];
    return x;
}

WittVec WittVec::frobenius() const {
    WittVec r = zero(len());
    for (int i = 0; i < len(); ++i) r.a[i] = a[i] * a[i];
    return r;
}

WittVec WittVec::wp() const { return frobenius() - *this; }

BreakData lower_to_upper(const std::vector<long>& lower, int p) {
    BreakData d;
    d.lower = lower;
    long pk = 1;
    for (size_t i = 0; i < lower.size(); ++i) {
        if (i == 0) {
            d.upper.push_back(lower[0]);
            continue;
        }
        pk *= p;
        long diff = lower[i] - lower[i - 1];
        if (diff % pk != 0)
            throw error(errc::domain, "lower break sequence does not convert integrally");
        d.upper.push_back(d.upper.back() + diff / pk);
    }
    return d;
}

BreakData upper_to_lower(const std::vector<long>& upper, int p) {
    BreakData d;
    d.upper = upper;
    long pk = 1;
    for (size_t i = 0; i < upper.size(); ++i) {
        if (i == 0) {
            d.lower.push_back(upper[0]);
            continue;
        }
        pk *= p;
        d.lower.push_back(d.lower.back() + pk * (upper[i] - upper[i - 1]));
    }
    return d;
}

BreakData ks_breaks(const std::vector<std::pair<long, WittVec>>& terms, int n) {
    if (terms.empty()) throw error(errc::domain, "empty Witt data");
    bool unit = false;
    for (const auto& [i, w] : terms) {
        if (i <= 0 || i % 2 == 0) throw error(errc::domain, "indices must be odd and positive");
        if (w.len() < n) throw error(errc::domain, "Witt vector shorter than n");
        if (!w.a[0].is_zero()) unit = true;
        for (const auto& comp : w.a)
            if (comp.deg() > 0) throw error(errc::domain, "ks_breaks needs constant Witt vectors");
    }
    if (!unit)
        throw error(errc::domain, "not suitable: no term has a unit Witt vector (beta_0 = 0)");
    std::vector<long> upper;
    for (int j = 1; j <= n; ++j) {
        // rho_j of the truncation to length j: (1/p) max i * ord(a_i in W_j)
        long best = -1;
        for (const auto& [i, w] : terms) {
            int v = -1;
            for (int k = 0; k < j; ++k)
                if (!w.a[k].is_zero()) {
                    v = k;
                    break;
                }
            if (v < 0) continue;  // truncation is zero
            long ord = 1;
            for (int k = 0; k < j - v; ++k) ord *= 2;  // 2^{j-v}
            best = std::max(best, i * ord);
        }
        if (best < 0 || best % 2 != 0)
            throw error(errc::domain, "not suitable at truncation level " + std::to_string(j));
        upper.push_back(best / 2);
    }
    BreakData d = upper_to_lower(upper, 2);
    return d;
}

BiPoly klopsch_equation(long m) {
    // (t^m + 1) X^m + t^m
    std::vector<uint8_t> tm1(m + 1, 0);
    tm1[0] = 1;
    tm1[m] = 1;
    return BiPoly::monomial(2, 0, m).mul_fp(FpPoly(2, tm1)) + BiPoly::monomial(2, m, 0);
}

TruncSeries klopsch(long m, long precision) {
    if (m <= 0 || m % 2 == 0) throw error(errc::domain, "klopsch needs odd positive m");
    TruncSeries seed(2, m + 2);
    seed.set_coeff(1, 1);
    seed.set_coeff(m + 1, 1);
    return hensel_root(klopsch_equation(m), seed, precision);
}

bool SupportPattern::matches(unsigned long long k) const {
    // base-2 string of k, maybe empty for k = 0
    std::string s;
    for (unsigned long long x = k; x > 0; x >>= 1) s.push_back(static_cast<char>('0' + (x & 1)));
    std::reverse(s.begin(), s.end());
    // match v_r w_r^* ... v_1 w_1^* v_0 greedily with backtracking over block counts
    // positions: blocks from the left are v_r, w_r*, ..., v_1, w_1*, v_0
    long r = rank();
    std::vector<size_t> stack;  // current position per block index (simple DFS)
    // recursive lambda over block = r down to 0
    std::function<bool(long, size_t)> go = [&](long blk, size_t pos) -> bool {
        if (blk == 0) {
            return s.compare(pos, std::string::npos, v[0]) == 0 && pos + v[0].size() == s.size();
        }
        // v[blk] then w[blk]^l
        if (s.compare(pos, v[blk].size(), v[blk]) != 0) return false;
        size_t q = pos + v[blk].size();
        for (;;) {
            if (go(blk - 1, q)) return true;
            if (s.compare(q, w[blk].size(), w[blk]) != 0) return false;
            q += w[blk].size();
            if (q > s.size()) return false;
        }
    };
    return go(r, 0);
}

std::string SupportPattern::print() const {
    std::ostringstream os;
    for (long b = rank(); b >= 1; --b) os << v[b] << "(" << w[b] << ")*";
    os << v[0];
    return os.str();
}

SparseRep sparse_rep(long m, long precision) {
    SparseRep out;
    out.series = TruncSeries(2, precision);
    auto setbit = [&](long e) {
        if (e < precision) out.series.set_coeff(e, 1 ^ out.series.coeff(e));
    };
    long mu = -1;
    bool plus = false;
    if (m == 1) {
        mu = 1;
    } else {
        // m = 3 fits both shapes; the 2^mu - 1 family is the one used for it
        for (long u = 2; u < 62 && mu < 0; ++u)
            if ((1l << u) - 1 == m) mu = u;
        for (long u = 1; u < 62 && mu < 0; ++u)
            if ((1l << u) + 1 == m) {
                mu = u;
                plus = true;
            }
        if (mu < 0) throw error(errc::domain, "sparse_rep needs m = 2^mu - 1 or 2^mu + 1");
    }
    if (m == 1) {
        // t + sum_{k>=2} (t^{2^k-2} + t^{2^k-1})
        setbit(1);
        for (long k = 2; (1l << k) - 2 < precision + 2; ++k) {
            setbit((1l << k) - 2);
            setbit((1l << k) - 1);
        }
        out.patterns.push_back(SupportPattern{{"1"}, {""}});
        out.patterns.push_back(SupportPattern{{"10", ""}, {"", "1"}});
        out.patterns.push_back(SupportPattern{{"11", ""}, {"", "1"}});
        out.equation = parse_poly("(t*X)^2+t*X+X+t");
    } else if (!plus) {
        // exponents 1 and the numbers with base-2 expansion 1 0^{mu-1} (1 0^{mu-2})^l 0
        setbit(1);
        std::string head = "1" + std::string(mu - 1, '0');
        std::string rep = "1" + std::string(mu - 2, '0');
        for (std::string word = head;; word += rep) {
            // value of word + trailing "0"
            unsigned long long val = 0;
            bool over = false;
            for (char c : word + "0") {
                val = val * 2 + (c - '0');
                if (val > static_cast<unsigned long long>(precision) * 2) {
                    over = true;
                    break;
                }
            }
            if (over) break;
            setbit(static_cast<long>(val));
        }
        out.patterns.push_back(SupportPattern{{"1"}, {""}});
        out.patterns.push_back(SupportPattern{{"0", head}, {"", rep}});
        // (tX)^{2^{mu-1}} + X + t
        out.equation = parse_poly("(t*X)^" + std::to_string((m + 1) / 2) + "+X+t");
    } else {
        // support m(l-1)+1 where l's base-2 expansion has at most mu ones, all
        // at distinct positions mod mu
        for (long l = 1;; ++l) {
            long e = m * (l - 1) + 1;
            if (e >= precision) break;
            int ones = 0;
            bool ok = true;
            std::vector<char> used(mu, 0);
            for (int b = 0; b < 62; ++b)
                if (l & (1l << b)) {
                    ++ones;
                    if (used[b % mu]) ok = false;
                    used[b % mu] = 1;
                }
            if (ok && ones <= mu && ones >= 1) setbit(e);
        }
        // (tX)^{m-1} + X^{m-2} + t^{m-2}
        out.equation = parse_poly("(t*X)^" + std::to_string(m - 1) + "+X^" + std::to_string(m - 2) +
                                  "+t^" + std::to_string(m - 2));
    }
    // cross-validate against the Hensel root of the symmetric equation
    TruncSeries seed(2, m + 2);
    seed.set_coeff(1, 1);
    seed.set_coeff(m + 1, 1);
    TruncSeries root = hensel_root(out.equation, seed, precision);
    if (root != out.series)
        throw error(errc::internal,
                    "sparse representative closed form disagrees with the equation root");
    return out;
}

Order4Class13 recognize_order4_13(const TruncSeries& s) {
    if (s.precision() < 6) throw error(errc::domain, "recognizer needs precision >= 6");
    if (s.coeff(0) != 0 || s.coeff(1) != 1 || s.coeff(2) != 1 || s.coeff(3) != 0)
        throw error(errc::domain, "series is not of the order-4 (1,3) normal shape");
    return (s.coeff(4) == s.coeff(5)) ? Order4Class13::CS : Order4Class13::CS_cube;
}

namespace {

// chi o s o chi^{-1}, the conjugation direction of the order-8 normal form steps
TruncSeries conj_by(const TruncSeries& s, const TruncSeries& chi) {
    return compose(compose(chi, s), comp_inverse(chi));
}

TruncSeries chi_map(int p, long prec, long k) {
    TruncSeries c = TruncSeries::identity(p, prec);
    if (k < prec) c.set_coeff(k, 1);
    return c;
}

}  // namespace

std::pair<int, int> normalize_order8(const TruncSeries& s_in) {
    if (s_in.precision() < 12) throw error(errc::domain, "normalize_order8 needs precision >= 12");
    TruncSeries s = s_in;
    long P = s.precision();
    if (s.coeff(0) != 0 || s.coeff(1) != 1 || s.coeff(2) != 1 || s.coeff(3) != 0 ||
        s.coeff(5) == s.coeff(7))
        throw error(errc::domain, "series is not of the order-8 (1,3,11) shape");
    // Steps I-V: conjugate by chi_k exactly when the targeted coefficient is 1
    if (s.coeff(5)) s = conj_by(s, chi_map(2, P, 3));
    if (s.coeff(6)) s = conj_by(s, chi_map(2, P, 5));
    if (s.coeff(9)) s = conj_by(s, chi_map(2, P, 2));
    if (s.coeff(8)) s = conj_by(s, chi_map(2, P, 6));
    if (s.coeff(10)) s = conj_by(s, chi_map(2, P, 4));
    // normal form t + t^2 + b4 t^4 + t^7 + b11 t^11 + O(t^12)
    for (long i : {3l, 5l, 6l, 8l, 9l, 10l})
        if (s.coeff(i)) throw error(errc::internal, "normal form not reached");
    if (!s.coeff(7)) throw error(errc::internal, "normal form not reached");
    return {s.coeff(4), s.coeff(11)};
}

BiPoly phi_twist(const BiPoly& F) {
    int p = F.p();
    long h = F.deg_t();
    FpPoly t1 = FpPoly(p, {1, 1});  // t + 1
    std::vector<FpPoly> rows;
    for (long i = 0; i <= F.deg_x(); ++i) {
        const FpPoly& c = F.coeff_x(i);
        FpPoly acc = FpPoly::zero(p);
        for (long j = 0; j <= c.deg(); ++j)
            if (c.coeff(j))
                acc = acc + FpPoly::monomial(p, j, c.coeff(j)) * t1.pow(h - j);
        rows.push_back(acc);
    }
    return BiPoly(p, std::move(rows));
}

TruncSeries phi_series(int p, long precision) {
    // t/(t+1) = t + t^2 + t^3 + ... in characteristic 2; general p: t/(1+t) alt
    TruncSeries denom(p, precision);
    denom.set_coeff(0, 1);
    if (precision > 1) denom.set_coeff(1, 1);
    return TruncSeries::identity(p, precision) * denom.invert_unit();
}

TruncSeries conjugate(const TruncSeries& s, const TruncSeries& c) {
    return compose(compose(comp_inverse(c), s), c);
}

// ------------------------------------------------------------- closed forms

namespace {

void xor_bit(TruncSeries& s, long e) {
    if (e >= 0 && e < s.precision()) s.set_coeff(e, s.coeff(e) ^ 1);
}

// sum of t^{num_e} / (t+1)^{den_e} terms, truncated
void add_rational_term(TruncSeries& s, long num_e, long den_e) {
    long N = s.precision();
    if (num_e >= N) return;
    // (1+t)^{-den_e} = (1+t)^{2^K - den_e} / (1+t)^{2^K} with 2^K >= den_e + N
    long K = 1;
    while ((1l << K) < den_e + N) ++K;
    long pos = (1l << K) - den_e;
    // numerator (1+t)^{pos} truncated; binomials mod 2 by Lucas
    TruncSeries t1(2, N);
    for (long j = 0; j < N; ++j)
        if ((j & pos) == j) t1.set_coeff(j, 1);
    // divide by (1+t)^{2^K} = 1 + t^{2^K}: over the first N < 2^K terms it is 1
    TruncSeries term(2, N);
    for (long j = 0; j + num_e < N; ++j) term.set_coeff(j + num_e, t1.coeff(j));
    TruncSeries sum = s + term;
    s = sum;
}

}  // namespace

TruncSeries closed_form(const std::string& name, long N) {
    TruncSeries s(2, N);
    if (name == "sigma_CS") {
        xor_bit(s, 1);
        xor_bit(s, 2);
        for (long k = 0; (6l << k) < N; ++k)
            for (long l = 0; l < (1l << k) && (6l << k) + 2 * l < N; ++l)
                xor_bit(s, (6l << k) + 2 * l);
        return s;
    }
    if (name == "sigma_CS3") {
        for (long k = 0; 3 * (1l << k) - 2 < N; ++k) xor_bit(s, 3 * (1l << k) - 2);
        for (long k = 0; 4 * (1l << k) - 2 < N; ++k) xor_bit(s, 4 * (1l << k) - 2);
        return s;
    }
    if (name == "sigma_CS2") {
        xor_bit(s, 1);
        for (long k = 0; (4l << k) < N; ++k)
            for (long l = 0; l < (1l << k) && (4l << k) + 2 * l < N; ++l)
                xor_bit(s, (4l << k) + 2 * l);
        return s;
    }
    if (name == "sigma_J") {
        // sum_{k>=0} t^{2^k} / (t+1)^{3*2^k - 1}
        for (long k = 0; (1l << k) < N; ++k) add_rational_term(s, 1l << k, 3 * (1l << k) - 1);
        return s;
    }
    if (name == "sigma_J3") {
        // sum_{k>=0} t^{2*2^k - 1} / (t+1)^{3*2^k - 2}
        for (long k = 0; (2l << k) - 1 < N; ++k)
            add_rational_term(s, (2l << k) - 1, 3 * (1l << k) - 2);
        return s;
    }
    // The four Table-3 streams. All exponent families are monotone in every
    // index, so each loop breaks when its smallest continuation passes N.
    auto pw = [](long k) { return 1l << k; };
    if (name == "sigma_T1") {
        xor_bit(s, 1);
        for (long k = 2; pw(k) - 2 < N && k < 62; ++k) {
            xor_bit(s, pw(k) - 2);
            xor_bit(s, 2 * pw(k) - 1);
            xor_bit(s, 4 * pw(k) - 5);
        }
        for (long k = 2; pw(k) * (pw(2) - 3) + 1 < N && k < 60; ++k)
            for (long l = 2; k + l < 62 && pw(k) * (pw(l) - 3) + 1 < N; ++l)
                xor_bit(s, pw(k) * (pw(l) - 3) + 1);
        return s;
    }
    if (name == "sigma_T2") {
        xor_bit(s, 1);
        xor_bit(s, 2);
        for (long k = 3; pw(k) - 4 < N && k < 62; ++k) {
            xor_bit(s, pw(k) - 4);
            xor_bit(s, pw(k) - 3);
            xor_bit(s, pw(k) - 1);
            xor_bit(s, 4 * pw(k) - 6);
            xor_bit(s, 4 * pw(k) - 5);
            xor_bit(s, 8 * pw(k) - 22);
            xor_bit(s, 8 * pw(k) - 21);
        }
        for (long k = 3; pw(k) * (pw(3) - 6) + 2 < N && k < 60; ++k)
            for (long l = 3; k + l < 62 && pw(k) * (pw(l) - 6) + 2 < N; ++l) {
                xor_bit(s, pw(k) * (pw(l) - 6) + 2);
                xor_bit(s, pw(k) * (pw(l) - 6) + 3);
            }
        for (long k = 2; pw(k + 2) * (pw(2) - 3) + 2 * pw(k) - 2 < N && k < 58; ++k)
            for (long l = 2; k + l < 60 && pw(k + l) * (pw(2) - 3) + 2 * pw(k) - 2 < N; ++l)
                for (long mm = 2; k + l + mm < 62 && pw(k + l) * (pw(mm) - 3) + 2 * pw(k) - 2 < N;
                     ++mm) {
                    long e = pw(k + l) * (pw(mm) - 3) + 2 * pw(k) - 2;
                    xor_bit(s, e);
                    xor_bit(s, e + 1);
                }
        return s;
    }
    if (name == "sigma_T3" || name == "sigma_T4") {
        if (name == "sigma_T3") {
            xor_bit(s, 1);
            xor_bit(s, 8);
            xor_bit(s, 44);
            for (long k = 2; pw(k) - 2 < N && k < 62; ++k) {
                xor_bit(s, pw(k) - 2);
                xor_bit(s, 3 * pw(k) - 2);
                xor_bit(s, 8 * pw(k) - 4);
                xor_bit(s, 8 * pw(k) + 4);
                xor_bit(s, 8 * pw(k) + 20);
                xor_bit(s, 16 * pw(k) + 44);
                xor_bit(s, 24 * pw(k) - 4);
            }
            for (long k = 2; pw(k) * (pw(2) + 3) - 2 < N && k < 58; ++k)
                for (long l = 2; k + l < 60 && pw(k) * (pw(l) + 3) - 2 < N; ++l) {
                    xor_bit(s, pw(k) * (pw(l) + 3) - 2);
                    xor_bit(s, 4 * pw(k) * (pw(l) + 2) + 4);
                    xor_bit(s, 8 * pw(k) * (pw(l) + 3) - 4);
                    xor_bit(s, 8 * pw(k) * (pw(l) + 2) + 12);
                }
        } else {
            xor_bit(s, 1);
            xor_bit(s, 4);
            xor_bit(s, 8);
            xor_bit(s, 20);
            for (long k = 2; pw(k) - 2 < N && k < 62; ++k) {
                xor_bit(s, pw(k) - 2);
                xor_bit(s, 8 * pw(k) - 4);
                xor_bit(s, 8 * pw(k) + 20);
                xor_bit(s, 16 * pw(k) + 12);
                xor_bit(s, 16 * pw(k) + 44);
            }
            for (long k = 2; pw(k) * (pw(2) + 1) - 2 < N && k < 58; ++k)
                for (long l = 2; k + l < 60 && pw(k) * (pw(l) + 1) - 2 < N; ++l) {
                    xor_bit(s, pw(k) * (pw(l) + 1) - 2);
                    xor_bit(s, 8 * pw(k) * (pw(l) + 1) - 4);
                    xor_bit(s, 4 * pw(k) * (pw(l) + 2) + 4);
                    xor_bit(s, 8 * pw(k) * (pw(l) + 2) + 12);
                    xor_bit(s, pw(k) * (pw(l) + 3) - 2);
                    xor_bit(s, 8 * pw(k) * (pw(l) + 3) - 4);
                }
        }
        // the shared triple sum of T3 and T4
        for (long k = 2; pw(k + 2) * (pw(1) + 1) + pw(k) - 2 < N && k < 56; ++k)
            for (long l = 2; k + l < 58 && pw(k + l) * (pw(1) + 1) + pw(k) - 2 < N; ++l)
                for (long mm = 1; k + l + mm < 62 && pw(k + l) * (pw(mm) + 1) + pw(k) - 2 < N;
                     ++mm) {
                    xor_bit(s, pw(k + l) * (pw(mm) + 1) + pw(k) - 2);
                    xor_bit(s, 8 * pw(k + l) * (pw(mm) + 1) + 8 * pw(k) - 4);
                }
        return s;
    }
    if (name.rfind("sigma_S", 0) == 0) {
        long m = std::stol(name.substr(7));
        return sparse_rep(m, N).series;
    }
    throw error(errc::domain, "no closed form named " + name);
}

bool has_closed_form(const std::string& name) {
    static const char* names[] = {"sigma_CS", "sigma_CS2", "sigma_CS3", "sigma_J", "sigma_J3",
                                  "sigma_T1", "sigma_T2", "sigma_T3", "sigma_T4"};
    for (auto* n : names)
        if (name == n) return true;
    return name.rfind("sigma_S", 0) == 0;
}

}
