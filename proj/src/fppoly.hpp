#pragma once

#include "fp.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace nott {

// Dense univariate polynomial over F_p in the variable t.
// Invariant: coefficient vector is trimmed (no trailing zeros); all entries < p.
class FpPoly {
public:
    FpPoly() : p_(2) {}
    explicit FpPoly(int p) : p_(p) { fp_check_prime(p); }
    FpPoly(int p, std::vector<uint8_t> coeffs);

    static FpPoly zero(int p) { return FpPoly(p); }
    static FpPoly one(int p) { return constant(p, 1); }
    static FpPoly constant(int p, int c);
    static FpPoly monomial(int p, long e, int c = 1);

    int p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    long deg() const { return static_cast<long>(c_.size()) - 1; }  // deg(0) = -1
    long ord() const;                                              // t-adic valuation; ord(0) throws
    int coeff(long i) const { return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : 0; }
    int lc() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint8_t>& coeffs() const { return c_; }
    size_t term_count() const;
    bool is_monomial() const { return term_count() == 1; }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    FpPoly operator-() const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    FpPoly scaled(int s) const;
    FpPoly shifted(long k) const;  // * t^k
    FpPoly pow(long e) const;
    FpPoly monic() const;

    // divrem by nonzero divisor; exact_div additionally requires zero remainder
    std::pair<FpPoly, FpPoly> divrem(const FpPoly& d) const;
    FpPoly exact_div(const FpPoly& d) const;
    bool divides(const FpPoly& f) const;

    FpPoly derivative() const;
    FpPoly cartier(int r) const;         // picks exponents = r mod p, divides them by p
    FpPoly frobenius() const;            // f(t) |-> f(t)^p = f(t^p)
    bool is_pth_power() const;           // all exponents divisible by p
    FpPoly pth_root() const;             // inverse of frobenius (requires is_pth_power)

    int eval(int x) const;               // at a point of F_p

    void mul_add_shifted(const FpPoly& a, int scalar, long shift);  // *this += scalar * t^shift * a

private:
    void trim();

    int p_;
    std::vector<uint8_t> c_;
};

FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly squarefree_part(const FpPoly& f);  // f / gcd(f, f'), with p-th power fallback

// Distinct irreducible factors with multiplicities, leading unit returned separately.
struct FpFactorization {
    int unit;
    std::vector<std::pair<FpPoly, int>> factors;
};
FpFactorization factor_univariate(const FpPoly& f);
bool is_irreducible(const FpPoly& f);

// All monic divisors of f (from its factorization); count capped.
std::vector<FpPoly> monic_divisors(const FpPoly& f, size_t cap = 1 << 16);

}
