#pragma once

#include "bipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nott {

// Power series over F_p known modulo t^precision.
class TruncSeries {
public:
    TruncSeries() : p_(2) {}
    TruncSeries(int p, long precision) : p_(p), c_(static_cast<size_t>(precision), 0) {
        fp_check_prime(p);
    }
    TruncSeries(int p, std::vector<uint8_t> coeffs);

    static TruncSeries from_poly(const FpPoly& f, long precision);
    static TruncSeries identity(int p, long precision);  // the series t

    int p() const { return p_; }
    long precision() const { return static_cast<long>(c_.size()); }
    int coeff(long i) const;
    void set_coeff(long i, int v);
    const std::vector<uint8_t>& coeffs() const { return c_; }
    bool is_zero() const;
    std::optional<long> ord() const;  // nullopt when 0 mod t^precision
    TruncSeries truncated(long precision) const;
    FpPoly poly_prefix(long len) const;

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    bool operator==(const TruncSeries& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    TruncSeries invert_unit() const;  // requires a(0) != 0
    std::string print() const;

private:
    int p_;
    std::vector<uint8_t> c_;
};

// F(t, s(t)) mod t^precision(s)
TruncSeries eval_poly(const BiPoly& F, const TruncSeries& s);
// outer(inner(t)); requires inner(0) = 0
TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner);
// r with compose(s, r) = t; requires s = t + O(t^2)
TruncSeries comp_inverse(const TruncSeries& s);
// ord(s - t) - 1; nullopt when s = t to its precision
std::optional<long> depth(const TruncSeries& s);

// Series text: "t+t^2+t^4+O(t^8)"; the O-term is the precision.
TruncSeries parse_series(const std::string& text, int p = 2);

// A constraint prefix: coefficients 0..len-1 are pinned.
struct SeriesPrefix {
    int p = 2;
    std::vector<uint8_t> coeffs;  // size = len
    long len() const { return static_cast<long>(coeffs.size()); }
    bool matches(const FpPoly& q) const;
    static SeriesPrefix parse(const std::string& text, int p = 2);  // "t+O(t^2)"
    static SeriesPrefix none(int p) { return SeriesPrefix{p, {}}; }
    std::string print() const;
};

// t-valuation of Res_X(F, dF/dX); the Hensel threshold m of the solver ops.
long hensel_discriminant_ord(const BiPoly& F);

// The unique root of F extending the seed prefix, to the requested precision.
// seed must satisfy F(t, seed) = O(t^{len + m'}) where m' = ord dF/dX(t, seed).
TruncSeries hensel_root(const BiPoly& F, const TruncSeries& seed, long precision);

// All polynomials q of degree <= bound_2m with F(t, q) = O(t^{bound_2m + 1})
// matching the constraint, by digit DFS with early pruning.
std::vector<FpPoly> truncated_solutions(const BiPoly& F, long bound_2m, const SeriesPrefix& constraint);

}
