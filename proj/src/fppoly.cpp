#include "fppoly.hpp"

#include <algorithm>

namespace nott {

FpPoly::FpPoly(int p, std::vector<uint8_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    fp_check_prime(p);
    for (auto& x : c_) x = static_cast<uint8_t>(x % p);
    trim();
}

FpPoly FpPoly::constant(int p, int c) {
    FpPoly f(p);
    c %= p;
    if (c < 0) c += p;
    if (c != 0) f.c_.push_back(static_cast<uint8_t>(c));
    return f;
}

FpPoly FpPoly::monomial(int p, long e, int c) {
    FpPoly f(p);
    c %= p;
    if (c < 0) c += p;
    if (c != 0) {
        f.c_.assign(static_cast<size_t>(e) + 1, 0);
        f.c_.back() = static_cast<uint8_t>(c);
    }
    return f;
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long FpPoly::ord() const {
    if (is_zero()) throw error(errc::domain, "ord of zero polynomial");
    long i = 0;
    while (c_[i] == 0) ++i;
    return i;
}

size_t FpPoly::term_count() const {
    size_t n = 0;
    for (auto x : c_) n += (x != 0);
    return n;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = static_cast<uint8_t>(fp_add(a.p_, a.coeff(i), b.coeff(i)));
    r.trim();
    return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = static_cast<uint8_t>(fp_sub(a.p_, a.coeff(i), b.coeff(i)));
    r.trim();
    return r;
}

FpPoly FpPoly::operator-() const {
    FpPoly r(p_);
    r.c_ = c_;
    for (auto& x : r.c_) x = static_cast<uint8_t>(fp_neg(p_, x));
    return r;
}

namespace {

// Packed GF(2) convolution: for each set bit of a, xor a word-shifted copy of b.
void mul2_packed(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b,
                 std::vector<uint8_t>& out) {
    size_t na = a.size(), nb = b.size();
    size_t nwords = (nb + 63) / 64;
    std::vector<uint64_t> bw(nwords, 0);
    for (size_t i = 0; i < nb; ++i)
        if (b[i]) bw[i >> 6] |= uint64_t(1) << (i & 63);
    size_t rn = na + nb - 1;
    std::vector<uint64_t> rw((rn + 63) / 64 + 1, 0);
    for (size_t i = 0; i < na; ++i) {
        if (!a[i]) continue;
        size_t w = i >> 6, s = i & 63;
        if (s == 0) {
            for (size_t j = 0; j < nwords; ++j) rw[w + j] ^= bw[j];
        } else {
            for (size_t j = 0; j < nwords; ++j) {
                rw[w + j] ^= bw[j] << s;
                rw[w + j + 1] ^= bw[j] >> (64 - s);
            }
        }
    }
    out.assign(rn, 0);
    for (size_t i = 0; i < rn; ++i)
        out[i] = static_cast<uint8_t>((rw[i >> 6] >> (i & 63)) & 1);
}

}  // namespace

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    // iterate over the sparser operand
    const FpPoly& s = (a.term_count() <= b.term_count()) ? a : b;
    const FpPoly& d = (&s == &a) ? b : a;
    if (a.p_ == 2) {
        mul2_packed(s.c_, d.c_, r.c_);
        r.trim();
        return r;
    }
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < s.c_.size(); ++i) {
        int si = s.c_[i];
        if (!si) continue;
        for (size_t j = 0; j < d.c_.size(); ++j)
            if (d.c_[j]) r.c_[i + j] = static_cast<uint8_t>((r.c_[i + j] + si * d.c_[j]) % a.p_);
    }
    r.trim();
    return r;
}

void FpPoly::mul_add_shifted(const FpPoly& a, int scalar, long shift) {
    scalar %= p_;
    if (scalar < 0) scalar += p_;
    if (scalar == 0 || a.is_zero()) return;
    size_t need = a.c_.size() + static_cast<size_t>(shift);
    if (c_.size() < need) c_.resize(need, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i]) c_[i + shift] = static_cast<uint8_t>((c_[i + shift] + scalar * a.c_[i]) % p_);
    trim();
}

FpPoly FpPoly::scaled(int s) const {
    s %= p_;
    if (s < 0) s += p_;
    FpPoly r(p_);
    if (s == 0) return r;
    r.c_ = c_;
    if (s != 1)
        for (auto& x : r.c_) x = static_cast<uint8_t>((x * s) % p_);
    return r;
}

FpPoly FpPoly::shifted(long k) const {
    if (is_zero() || k == 0) return *this;
    FpPoly r(p_);
    r.c_.assign(c_.size() + static_cast<size_t>(k), 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
    return r;
}

FpPoly FpPoly::pow(long e) const {
    if (e < 0) throw error(errc::domain, "negative exponent");
    FpPoly r = one(p_), base = *this;
    // peel off factors of p first: f^p is a cheap coefficient spread
    while (e > 0) {
        if (e % p_ == 0) {
            base = base.frobenius();
            e /= p_;
            continue;
        }
        break;
    }
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(fp_inv(p_, lc()));
}

std::pair<FpPoly, FpPoly> FpPoly::divrem(const FpPoly& d) const {
    if (d.is_zero()) throw error(errc::domain, "division by zero polynomial");
    FpPoly q(p_), r = *this;
    if (r.deg() < d.deg()) return {q, r};
    q.c_.assign(r.deg() - d.deg() + 1, 0);
    int dinv = fp_inv(p_, d.lc());
    for (long i = r.deg(); i >= d.deg(); --i) {
        int c = r.coeff(i);
        if (c == 0) continue;
        int f = fp_mul(p_, c, dinv);
        q.c_[i - d.deg()] = static_cast<uint8_t>(f);
        r.mul_add_shifted(d, fp_neg(p_, f), i - d.deg());
    }
    q.trim();
    return {q, r};
}

FpPoly FpPoly::exact_div(const FpPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw error(errc::not_exact, "polynomial division is not exact");
    return q;
}

bool FpPoly::divides(const FpPoly& f) const {
    if (is_zero()) return f.is_zero();
    return f.divrem(*this).second.is_zero();
}

FpPoly FpPoly::derivative() const {
    FpPoly r(p_);
    if (c_.size() <= 1) return r;
    r.c_.assign(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = static_cast<uint8_t>((c_[i] * (i % p_)) % p_);
    r.trim();
    return r;
}

FpPoly FpPoly::cartier(int r) const {
    if (r < 0 || r >= p_) throw error(errc::domain, "cartier digit out of range");
    FpPoly out(p_);
    for (size_t i = r; i < c_.size(); i += p_)
        if (c_[i]) {
            size_t j = (i - r) / p_;
            if (out.c_.size() <= j) out.c_.resize(j + 1, 0);
            out.c_[j] = c_[i];
        }
    out.trim();
    return out;
}

FpPoly FpPoly::frobenius() const {
    FpPoly r(p_);
    if (is_zero()) return r;
    r.c_.assign(static_cast<size_t>(deg()) * p_ + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) r.c_[i * p_] = c_[i];  // c^p = c in F_p
    return r;
}

bool FpPoly::is_pth_power() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] && i % p_ != 0) return false;
    return true;
}

FpPoly FpPoly::pth_root() const {
    if (!is_pth_power()) throw error(errc::domain, "not a p-th power");
    FpPoly r(p_);
    if (is_zero()) return r;
    r.c_.assign(c_.size() / p_ + 1, 0);
    for (size_t i = 0; i < c_.size(); i += p_) r.c_[i / p_] = c_[i];
    r.trim();
    return r;
}

int FpPoly::eval(int x) const {
    int v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = (v * x + c_[i]) % p_;
    return v;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x.divrem(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly squarefree_part(const FpPoly& f) {
    if (f.is_zero()) return f;
    FpPoly d = f.derivative();
    if (d.is_zero()) {
        // f = g(t^p) = g~^p over F_p; recurse on the p-th root
        return squarefree_part(f.pth_root());
    }
    return f.exact_div(gcd(f, d));
}

namespace {

// x^(e) mod f by repeated squaring, e given as p^k
FpPoly pow_t_mod(const FpPoly& f, long e) {
    int p = f.p();
    FpPoly r = FpPoly::one(p);
    FpPoly base = FpPoly::monomial(p, 1).divrem(f).second;
    while (e > 0) {
        if (e & 1) r = (r * base).divrem(f).second;
        e >>= 1;
        if (e) base = (base * base).divrem(f).second;
    }
    return r;
}

// Berlekamp splitting of a squarefree monic polynomial into irreducible factors.
void berlekamp_squarefree(const FpPoly& f, std::vector<FpPoly>& out) {
    int p = f.p();
    long n = f.deg();
    if (n <= 1) {
        if (n == 1) out.push_back(f);
        return;
    }
    // Q[i] = t^(p*i) mod f, as rows; kernel of (Q - I) spans the Berlekamp subalgebra
    std::vector<std::vector<uint8_t>> M(n, std::vector<uint8_t>(n, 0));
    FpPoly tp = pow_t_mod(f, p);  // t^p mod f
    FpPoly cur = FpPoly::one(p);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            int v = cur.coeff(j);
            if (i == j) v = fp_sub(p, v, 1);
            M[j][i] = static_cast<uint8_t>(v);  // column i = cur - e_i
        }
        cur = (cur * tp).divrem(f).second;
    }
    // kernel basis by Gaussian elimination
    std::vector<long> pivot_col(n, -1);
    long rank = 0;
    for (long col = 0; col < n && rank < n; ++col) {
        long piv = -1;
        for (long row = rank; row < n; ++row)
            if (M[row][col]) { piv = row; break; }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        int inv = fp_inv(p, M[rank][col]);
        for (long j = 0; j < n; ++j) M[rank][j] = static_cast<uint8_t>((M[rank][j] * inv) % p);
        for (long row = 0; row < n; ++row) {
            if (row == rank || !M[row][col]) continue;
            int c = M[row][col];
            for (long j = 0; j < n; ++j)
                M[row][j] = static_cast<uint8_t>(fp_sub(p, M[row][j], fp_mul(p, c, M[rank][j])));
        }
        pivot_col[rank++] = col;
    }
    if (rank == n - 1) {  // kernel dimension 1: only constants, f is irreducible
        out.push_back(f);
        return;
    }
    // find a kernel vector that is not a constant polynomial
    std::vector<uint8_t> v(n, 0);
    for (long col = 1; col < n; ++col) {
        bool is_pivot = false;
        for (long r = 0; r < rank; ++r) is_pivot |= (pivot_col[r] == col);
        if (is_pivot) continue;
        std::fill(v.begin(), v.end(), 0);
        v[col] = 1;
        for (long r = 0; r < rank; ++r)
            v[pivot_col[r]] = static_cast<uint8_t>(fp_neg(p, M[r][col]));
        break;
    }
    FpPoly w(p, std::vector<uint8_t>(v.begin(), v.end()));
    // split by gcd(f, w - c) for each c; every part is a proper factor
    for (int c = 0; c < p; ++c) {
        FpPoly g = gcd(f, w - FpPoly::constant(p, c));
        if (g.deg() >= 1 && g.deg() < f.deg()) berlekamp_squarefree(g, out);
    }
}

}  // namespace

FpFactorization factor_univariate(const FpPoly& f) {
    if (f.is_zero()) throw error(errc::domain, "factor of zero polynomial");
    FpFactorization res;
    res.unit = f.lc();
    FpPoly rest = f.monic();
    // squarefree_part only drops factors whose multiplicity is 0 mod p, so loop
    std::vector<FpPoly> irr;
    while (rest.deg() > 0) {
        std::vector<FpPoly> found;
        berlekamp_squarefree(squarefree_part(rest).monic(), found);
        for (const auto& g : found) {
            int mult = 0;
            while (g.divides(rest)) {
                rest = rest.exact_div(g);
                ++mult;
            }
            for (int k = 0; k < mult; ++k) irr.push_back(g);
        }
    }
    std::sort(irr.begin(), irr.end(), [](const FpPoly& a, const FpPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    for (size_t i = 0; i < irr.size();) {
        size_t j = i;
        while (j < irr.size() && irr[j] == irr[i]) ++j;
        res.factors.emplace_back(irr[i], static_cast<int>(j - i));
        i = j;
    }
    return res;
}

bool is_irreducible(const FpPoly& f) {
    if (f.deg() <= 0) return false;
    auto fac = factor_univariate(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<FpPoly> monic_divisors(const FpPoly& f, size_t cap) {
    auto fac = factor_univariate(f);
    std::vector<FpPoly> divs{FpPoly::one(f.p())};
    for (const auto& [g, mult] : fac.factors) {
        size_t base = divs.size();
        FpPoly gp = g;
        for (int e = 1; e <= mult; ++e) {
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * gp);
                if (divs.size() > cap) throw error(errc::limit, "too many divisors");
            }
            if (e < mult) gp = gp * g;
        }
    }
    return divs;
}

}
