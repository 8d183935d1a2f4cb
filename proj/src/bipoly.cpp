#include "bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace nott {

BiPoly::BiPoly(int p, std::vector<FpPoly> coeffs_by_x) : p_(p), cx_(std::move(coeffs_by_x)) {
    fp_check_prime(p);
    for (const auto& c : cx_)
        if (c.p() != p) throw error(errc::domain, "mixed moduli");
    trim();
}

BiPoly BiPoly::from_t(FpPoly f) {
    BiPoly r(f.p());
    if (!f.is_zero()) r.cx_.push_back(std::move(f));
    return r;
}

BiPoly BiPoly::monomial(int p, long et, long ex, int c) {
    BiPoly r(p);
    FpPoly m = FpPoly::monomial(p, et, c);
    if (m.is_zero()) return r;
    r.cx_.assign(static_cast<size_t>(ex) + 1, FpPoly::zero(p));
    r.cx_.back() = std::move(m);
    return r;
}

void BiPoly::trim() {
    while (!cx_.empty() && cx_.back().is_zero()) cx_.pop_back();
}

long BiPoly::deg_t() const {
    long d = -1;
    for (const auto& c : cx_) d = std::max(d, c.deg());
    return d;
}

long BiPoly::ord_x() const {
    if (is_zero()) throw error(errc::domain, "ord_x of zero polynomial");
    long i = 0;
    while (cx_[i].is_zero()) ++i;
    return i;
}

const FpPoly& BiPoly::coeff_x(long i) const {
    if (i >= 0 && i < static_cast<long>(cx_.size())) return cx_[i];
    static const FpPoly zeros[] = {FpPoly(2), FpPoly(3), FpPoly(5), FpPoly(7)};
    for (const auto& z : zeros)
        if (z.p() == p_) return z;
    throw error(errc::domain, "modulus above 7 is not supported");
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.p_);
    r.cx_.resize(std::max(a.cx_.size(), b.cx_.size()), FpPoly::zero(a.p_));
    for (size_t i = 0; i < r.cx_.size(); ++i) r.cx_[i] = a.coeff_x(i) + b.coeff_x(i);
    r.trim();
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.p_);
    r.cx_.resize(std::max(a.cx_.size(), b.cx_.size()), FpPoly::zero(a.p_));
    for (size_t i = 0; i < r.cx_.size(); ++i) r.cx_[i] = a.coeff_x(i) - b.coeff_x(i);
    r.trim();
    return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.cx_.assign(a.cx_.size() + b.cx_.size() - 1, FpPoly::zero(a.p_));
    for (size_t i = 0; i < a.cx_.size(); ++i) {
        if (a.cx_[i].is_zero()) continue;
        for (size_t j = 0; j < b.cx_.size(); ++j) {
            if (b.cx_[j].is_zero()) continue;
            r.cx_[i + j] = r.cx_[i + j] + a.cx_[i] * b.cx_[j];
        }
    }
    r.trim();
    return r;
}

BiPoly BiPoly::operator-() const {
    BiPoly r(p_);
    r.cx_.reserve(cx_.size());
    for (const auto& c : cx_) r.cx_.push_back(-c);
    return r;
}

BiPoly BiPoly::scaled(int s) const {
    BiPoly r(p_);
    r.cx_.reserve(cx_.size());
    for (const auto& c : cx_) r.cx_.push_back(c.scaled(s));
    r.trim();
    return r;
}

BiPoly BiPoly::mul_fp(const FpPoly& f) const {
    BiPoly r(p_);
    if (f.is_zero()) return r;
    r.cx_.reserve(cx_.size());
    for (const auto& c : cx_) r.cx_.push_back(c * f);
    r.trim();
    return r;
}

BiPoly BiPoly::shift_x(long k) const {
    if (is_zero() || k == 0) return *this;
    BiPoly r(p_);
    r.cx_.assign(cx_.size() + static_cast<size_t>(k), FpPoly::zero(p_));
    for (size_t i = 0; i < cx_.size(); ++i) r.cx_[i + k] = cx_[i];
    return r;
}

BiPoly BiPoly::pow(long e) const {
    if (e < 0) throw error(errc::domain, "negative exponent");
    BiPoly r = one(p_), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

BiPoly BiPoly::exact_div(const BiPoly& d) const {
    if (d.is_zero()) throw error(errc::domain, "division by zero polynomial");
    BiPoly q(p_), r = *this;
    if (r.is_zero()) return q;
    if (r.deg_x() < d.deg_x()) throw error(errc::not_exact, "bivariate division not exact");
    q.cx_.assign(r.deg_x() - d.deg_x() + 1, FpPoly::zero(p_));
    while (!r.is_zero() && r.deg_x() >= d.deg_x()) {
        FpPoly f = r.lead_x().exact_div(d.lead_x());
        long k = r.deg_x() - d.deg_x();
        q.cx_[k] = f;
        r = r - d.mul_fp(f).shift_x(k);
        if (!r.is_zero() && r.deg_x() >= d.deg_x() + k)
            throw error(errc::internal, "bivariate division did not reduce degree");
    }
    if (!r.is_zero()) throw error(errc::not_exact, "bivariate division not exact");
    q.trim();
    return q;
}

BiPoly BiPoly::derivative_x() const {
    BiPoly r(p_);
    if (cx_.size() <= 1) return r;
    r.cx_.assign(cx_.size() - 1, FpPoly::zero(p_));
    for (size_t i = 1; i < cx_.size(); ++i) r.cx_[i - 1] = cx_[i].scaled(static_cast<int>(i % p_));
    r.trim();
    return r;
}

BiPoly BiPoly::derivative_t() const {
    BiPoly r(p_);
    r.cx_.reserve(cx_.size());
    for (const auto& c : cx_) r.cx_.push_back(c.derivative());
    r.trim();
    return r;
}

BiPoly BiPoly::cartier(int r) const {
    if (r < 0 || r >= p_) throw error(errc::domain, "cartier digit out of range");
    BiPoly out(p_);
    for (size_t j = r; j < cx_.size(); j += p_) {
        FpPoly c = cx_[j].cartier(r);
        if (c.is_zero()) continue;
        size_t k = (j - r) / p_;
        if (out.cx_.size() <= k) out.cx_.resize(k + 1, FpPoly::zero(p_));
        out.cx_[k] = std::move(c);
    }
    out.trim();
    return out;
}

BiPoly BiPoly::frobenius() const {
    BiPoly r(p_);
    if (is_zero()) return r;
    r.cx_.assign(static_cast<size_t>(deg_x()) * p_ + 1, FpPoly::zero(p_));
    for (size_t i = 0; i < cx_.size(); ++i)
        if (!cx_[i].is_zero()) r.cx_[i * p_] = cx_[i].frobenius();
    r.trim();
    return r;
}

FpPoly BiPoly::content_t() const {
    FpPoly g = FpPoly::zero(p_);
    for (const auto& c : cx_) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.deg() == 0) return FpPoly::one(p_);
    }
    return g;
}

BiPoly BiPoly::primitive_part() const {
    if (is_zero()) return *this;
    FpPoly c = content_t();
    BiPoly r(p_);
    r.cx_.reserve(cx_.size());
    for (const auto& f : cx_) r.cx_.push_back(f.is_zero() ? f : f.exact_div(c));
    // normalize so the leading X-coefficient is monic
    int u = fp_inv(p_, r.cx_.back().lc());
    return r.scaled(u);
}

BiPoly BiPoly::strip_x_power() const {
    if (is_zero()) return *this;
    long k = ord_x();
    if (k == 0) return *this;
    BiPoly r(p_);
    r.cx_.assign(cx_.begin() + k, cx_.end());
    return r;
}

BiPoly BiPoly::subst_x(const BiPoly& g) const {
    BiPoly r(p_);
    for (size_t i = cx_.size(); i-- > 0;) r = r * g + from_t(cx_[i]);
    return r;
}

BiPoly BiPoly::subst_t(const BiPoly& g) const {
    BiPoly r(p_);
    BiPoly x = var_x(p_);
    for (size_t i = 0; i < cx_.size(); ++i) {
        if (cx_[i].is_zero()) continue;
        // Horner in t for the coefficient of X^i
        BiPoly c(p_);
        const auto& tc = cx_[i].coeffs();
        for (size_t j = tc.size(); j-- > 0;) {
            c = c * g;
            if (tc[j]) c = c + from_t(FpPoly::constant(p_, tc[j]));
        }
        r = r + c.shift_x(i);
    }
    return r;
}

BiPoly BiPoly::subst_tx_x() const {
    // t^a X^b -> t^a X^{a+b}
    BiPoly r(p_);
    for (size_t b = 0; b < cx_.size(); ++b) {
        const auto& tc = cx_[b].coeffs();
        for (size_t a = 0; a < tc.size(); ++a)
            if (tc[a]) r = r + monomial(p_, a, a + b, tc[a]);
    }
    return r;
}

FpPoly BiPoly::eval_x(const FpPoly& v) const {
    FpPoly r = FpPoly::zero(p_);
    for (size_t i = cx_.size(); i-- > 0;) r = r * v + cx_[i];
    return r;
}

BiPoly BiPoly::swap_vars() const {
    BiPoly r(p_);
    std::vector<FpPoly> rows;
    for (size_t b = 0; b < cx_.size(); ++b) {
        const auto& tc = cx_[b].coeffs();
        for (size_t a = 0; a < tc.size(); ++a) {
            if (!tc[a]) continue;
            if (rows.size() <= a) rows.resize(a + 1, FpPoly::zero(p_));
            rows[a] = rows[a] + FpPoly::monomial(p_, b, tc[a]);
        }
    }
    return BiPoly(p_, std::move(rows));
}

// ---------------------------------------------------------------- text format

namespace {

struct Parser {
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
        throw error(errc::parse, "polynomial parse error at offset " + std::to_string(i) + ": " + what);
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

    BiPoly expr() {
        BiPoly r = term();
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    BiPoly term() {
        BiPoly r = factor();
        while (eat('*')) r = r * factor();
        return r;
    }
    BiPoly factor() {
        BiPoly a = atom();
        if (eat('^')) {
            long e = integer();
            if (e > 4096) fail("exponent too large");
            a = a.pow(e);
        }
        return a;
    }
    BiPoly atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            BiPoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 't') {
            ++i;
            return BiPoly::var_t(p);
        }
        if (c == 'X' || c == 'x') {
            ++i;
            return BiPoly::var_x(p);
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return BiPoly::from_t(FpPoly::constant(p, static_cast<int>(integer() % p)));
        fail("unexpected character");
    }
};

std::string print_fp(const FpPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = f.deg(); i >= 0; --i) {
        int c = f.coeff(i);
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace

BiPoly parse_poly(const std::string& text, int p) {
    Parser P{text, 0, p};
    BiPoly r = P.expr();
    P.skip();
    if (P.i != text.size()) P.fail("trailing input");
    return r;
}

std::string BiPoly::print() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = deg_x(); i >= 0; --i) {
        const FpPoly& c = coeff_x(i);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << print_fp(c);
            continue;
        }
        if (!c.is_one()) {
            bool multi = c.term_count() > 1;
            if (multi) os << "(" << print_fp(c) << ")";
            else os << print_fp(c);
            os << "*";
        }
        os << "X";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

// ------------------------------------------------------------ gcd, squarefree

namespace {

// primitive pseudo-remainder sequence
BiPoly prem(const BiPoly& a, const BiPoly& b) {
    // lc(b)^(deg a - deg b + 1) * a mod b, computed incrementally
    BiPoly r = a;
    const FpPoly& lb = b.lead_x();
    while (!r.is_zero() && r.deg_x() >= b.deg_x()) {
        long k = r.deg_x() - b.deg_x();
        FpPoly lr = r.lead_x();
        r = r.mul_fp(lb) - b.mul_fp(lr).shift_x(k);
    }
    return r;
}

}  // namespace

BiPoly gcd_x(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    BiPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.deg_x() < y.deg_x()) std::swap(x, y);
    while (!y.is_zero()) {
        if (y.deg_x() == 0) return BiPoly::one(a.p());
        BiPoly r = prem(x, y);
        x = std::move(y);
        y = r.is_zero() ? r : r.primitive_part();
    }
    return x;
}

BiPoly squarefree_part_x(const BiPoly& f, bool* flagged) {
    if (flagged) *flagged = false;
    if (f.is_zero()) return f;
    int p = f.p();
    BiPoly d = f.derivative_x();
    if (d.is_zero()) {
        // f = g(t, X^p); extract only when f is literally a p-th power
        bool ok = true;
        std::vector<FpPoly> roots;
        for (long i = 0; i <= f.deg_x(); i += p) {
            const FpPoly& c = f.coeff_x(i);
            if (!c.is_zero() && !c.is_pth_power()) {
                ok = false;
                break;
            }
            roots.push_back(c.is_zero() ? c : c.pth_root());
        }
        if (!ok) {
            if (flagged) *flagged = true;
            return f;
        }
        return squarefree_part_x(BiPoly(p, std::move(roots)), flagged);
    }
    BiPoly g = gcd_x(f, d);
    if (g.deg_x() == 0) return f;
    // g is primitive; divide in F_p(t)[X] by clearing the content that the
    // division introduces
    BiPoly q = f.mul_fp(g.lead_x().pow(f.deg_x() - g.deg_x() + 1));
    // pseudo-division is exact here up to content
    BiPoly quot(p);
    {
        BiPoly r = q;
        std::vector<FpPoly> qc(r.deg_x() - g.deg_x() + 1, FpPoly::zero(p));
        while (!r.is_zero() && r.deg_x() >= g.deg_x()) {
            FpPoly fq = r.lead_x().exact_div(g.lead_x());
            long k = r.deg_x() - g.deg_x();
            qc[k] = fq;
            r = r - g.mul_fp(fq).shift_x(k);
        }
        if (!r.is_zero()) throw error(errc::internal, "squarefree division not exact");
        quot = BiPoly(p, std::move(qc));
    }
    return quot.primitive_part();
}

BiPoly radical_x(const BiPoly& f, bool* flagged) {
    if (flagged) *flagged = false;
    if (f.is_zero() || f.deg_x() <= 0) return f;
    int p = f.p();
    BiPoly d = f.derivative_x();
    if (d.is_zero()) {
        bool ok = true;
        std::vector<FpPoly> roots;
        for (long i = 0; i <= f.deg_x(); i += p) {
            const FpPoly& c = f.coeff_x(i);
            if (!c.is_zero() && !c.is_pth_power()) {
                ok = false;
                break;
            }
            roots.push_back(c.is_zero() ? c : c.pth_root());
        }
        if (!ok) {
            if (flagged) *flagged = true;
            return f;
        }
        return radical_x(BiPoly(p, std::move(roots)), flagged);
    }
    BiPoly w = squarefree_part_x(f, flagged);  // distinct factors with multiplicity != 0 mod p
    BiPoly g = gcd_x(f, d);
    // strip every w-factor from g; the leftover is the multiplicity-0-mod-p part
    BiPoly h = g;
    for (;;) {
        BiPoly u = gcd_x(h, w);
        if (u.deg_x() <= 0) break;
        h = h.mul_fp(u.lead_x().pow(h.deg_x() - u.deg_x() + 1));
        // exact division in F_p[t][X] after pseudo-scaling
        BiPoly q(p);
        {
            std::vector<FpPoly> qc(h.deg_x() - u.deg_x() + 1, FpPoly::zero(p));
            BiPoly r = h;
            while (!r.is_zero() && r.deg_x() >= u.deg_x()) {
                FpPoly fq = r.lead_x().exact_div(u.lead_x());
                long k = r.deg_x() - u.deg_x();
                qc[k] = fq;
                r = r - u.mul_fp(fq).shift_x(k);
            }
            if (!r.is_zero()) throw error(errc::internal, "radical division not exact");
            q = BiPoly(p, std::move(qc));
        }
        h = q.primitive_part();
    }
    if (h.deg_x() <= 0) return w;
    bool sub = false;
    BiPoly rh = radical_x(h, &sub);
    if (sub && flagged) *flagged = true;
    return (w * rh).primitive_part();
}

// ------------------------------------------------------------------ resultants

namespace {

// Bareiss fraction-free determinant over an exact domain.
template <typename T>
T bareiss_det(std::vector<std::vector<T>>& m, const T& one_elt, const T& zero_elt) {
    size_t n = m.size();
    if (n == 0) return one_elt;
    T prev = one_elt;
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == zero_elt) {
            size_t s = k + 1;
            while (s < n && m[s][k] == zero_elt) ++s;
            if (s == n) return zero_elt;
            std::swap(m[k], m[s]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                T v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = v.exact_div(prev);
            }
            m[i][k] = zero_elt;
        }
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace

namespace {

// reinterpret a univariate polynomial as a polynomial in X
BiPoly as_x_poly(const FpPoly& f) {
    std::vector<FpPoly> rows;
    rows.reserve(f.deg() + 1);
    for (long i = 0; i <= f.deg(); ++i) rows.push_back(FpPoly::constant(f.p(), f.coeff(i)));
    return BiPoly(f.p(), std::move(rows));
}

}  // namespace

BiPoly resultant_y(const BiPoly& A, const BiPoly& B) {
    if (A.is_zero() || B.is_zero()) throw error(errc::domain, "resultant of zero polynomial");
    int p = A.p();
    // A(t, Y) with Y in the X slot; B(Y, X) with Y in the t slot
    long n = A.deg_x();
    long m = B.deg_t();
    if (n < 1 || m < 1) throw error(errc::domain, "resultant needs degree >= 1 in Y");
    // Y-coefficients of B, each a polynomial in X
    BiPoly Bsw = B.swap_vars();  // coeff_x(j) = (coefficient of Y^j) written in t
    size_t N = static_cast<size_t>(n + m);
    std::vector<std::vector<BiPoly>> M(N, std::vector<BiPoly>(N, BiPoly::zero(p)));
    for (long r = 0; r < m; ++r)
        for (long i = 0; i <= n; ++i) M[r][r + n - i] = BiPoly::from_t(A.coeff_x(i));
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) M[m + r][r + m - j] = as_x_poly(Bsw.coeff_x(j));
    return bareiss_det(M, BiPoly::one(p), BiPoly::zero(p));
}

FpPoly resultant_x(const BiPoly& A, const BiPoly& B) {
    if (A.is_zero() || B.is_zero()) throw error(errc::domain, "resultant of zero polynomial");
    int p = A.p();
    long n = A.deg_x(), m = B.deg_x();
    if (n < 1 && m < 1) throw error(errc::domain, "resultant needs degree >= 1");
    if (n < 1) return A.coeff_x(0).pow(m);
    if (m < 1) return B.coeff_x(0).pow(n);
    size_t N = static_cast<size_t>(n + m);
    std::vector<std::vector<FpPoly>> M(N, std::vector<FpPoly>(N, FpPoly::zero(p)));
    for (long r = 0; r < m; ++r)
        for (long i = 0; i <= n; ++i) M[r][r + n - i] = A.coeff_x(i);
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) M[m + r][r + m - j] = B.coeff_x(j);
    return bareiss_det(M, FpPoly::one(p), FpPoly::zero(p));
}

// ------------------------------------------------------------------- rationals

Rational make_rational(long num, long den) {
    if (den == 0) throw error(errc::domain, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den == 0 ? 1 : den};
}

std::string print_rational(const Rational& r) {
    std::ostringstream os;
    os << r.num;
    if (r.den != 1) os << "/" << r.den;
    return os.str();
}

NewtonSlopes newton_slopes(const BiPoly& F, Place place) {
    if (F.is_zero()) throw error(errc::domain, "newton slopes of zero polynomial");
    NewtonSlopes out;
    out.roots_at_zero = F.ord_x();
    // points (i, v(a_i)) for nonzero coefficients, i from ord_x up
    std::vector<std::pair<long, long>> pts;
    for (long i = out.roots_at_zero; i <= F.deg_x(); ++i) {
        const FpPoly& c = F.coeff_x(i);
        if (c.is_zero()) continue;
        long v = (place == Place::t) ? c.ord() : -c.deg();
        pts.emplace_back(i, v);
    }
    // lower convex hull left to right
    std::vector<std::pair<long, long>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a..pt
            if ((b.second - a.second) * (pt.first - a.first) <
                (pt.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        long dx = hull[k + 1].first - hull[k].first;
        long dy = hull[k + 1].second - hull[k].second;
        out.slopes.emplace_back(make_rational(-dy, dx), dx);
    }
    std::sort(out.slopes.begin(), out.slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}
