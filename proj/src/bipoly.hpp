#pragma once

#include "fppoly.hpp"

#include <string>
#include <vector>

namespace nott {

// Bivariate polynomial over F_p in (t, X), stored as X-coefficients.
// Invariant: no trailing zero X-coefficients.
class BiPoly {
public:
    BiPoly() : p_(2) {}
    explicit BiPoly(int p) : p_(p) { fp_check_prime(p); }
    BiPoly(int p, std::vector<FpPoly> coeffs_by_x);

    static BiPoly zero(int p) { return BiPoly(p); }
    static BiPoly one(int p) { return from_t(FpPoly::one(p)); }
    static BiPoly from_t(FpPoly f);                       // polynomial in t only
    static BiPoly monomial(int p, long et, long ex, int c = 1);
    static BiPoly var_x(int p) { return monomial(p, 0, 1); }
    static BiPoly var_t(int p) { return monomial(p, 1, 0); }

    int p() const { return p_; }
    bool is_zero() const { return cx_.empty(); }
    long deg_x() const { return static_cast<long>(cx_.size()) - 1; }
    long deg_t() const;
    long ord_x() const;  // multiplicity of the root X = 0; throws on zero
    const FpPoly& coeff_x(long i) const;
    const FpPoly& lead_x() const { return coeff_x(deg_x()); }
    const std::vector<FpPoly>& coeffs_by_x() const { return cx_; }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly operator-() const;
    bool operator==(const BiPoly& o) const { return p_ == o.p_ && cx_ == o.cx_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly scaled(int s) const;
    BiPoly mul_fp(const FpPoly& f) const;
    BiPoly shift_x(long k) const;  // * X^k
    BiPoly pow(long e) const;

    BiPoly exact_div(const BiPoly& d) const;  // division in F_p[t][X], must be exact
    BiPoly derivative_x() const;
    BiPoly derivative_t() const;
    BiPoly cartier(int r) const;  // same digit r in both variables
    BiPoly frobenius() const;     // F^p: exponents of both variables times p

    FpPoly content_t() const;       // gcd of the X-coefficients
    BiPoly primitive_part() const;  // divided by content_t
    BiPoly strip_x_power() const;   // divided by X^{ord_x}

    BiPoly subst_x(const BiPoly& g) const;       // F(t, g(t,X))
    BiPoly subst_t(const BiPoly& g) const;       // F(g(t,X), X)
    BiPoly subst_tx_x() const;                   // F(tX, X)
    FpPoly eval_x(const FpPoly& v) const;        // F(t, v(t))
    BiPoly swap_vars() const;                    // F(X, t)

    std::string print() const;

private:
    void trim();

    int p_;
    std::vector<FpPoly> cx_;
};

BiPoly parse_poly(const std::string& text, int p = 2);

// gcd in F_p(t)[X] scaled to a primitive polynomial in F_p[t][X]
BiPoly gcd_x(const BiPoly& a, const BiPoly& b);
// f / gcd(f, df/dX); if df/dX = 0, extracts the X^p-substructure when every
// t-coefficient is a p-th power, otherwise returns f and sets *flagged
BiPoly squarefree_part_x(const BiPoly& f, bool* flagged = nullptr);
// product of the distinct irreducible X-factors (keeps factors whose
// multiplicity is divisible by p, which squarefree_part_x drops)
BiPoly radical_x(const BiPoly& f, bool* flagged = nullptr);

// Res_Y(A(t,Y), B(Y,X)): A's X-slot and B's t-slot are the eliminated variable.
BiPoly resultant_y(const BiPoly& A, const BiPoly& B);
// Resultant in X of two polynomials in F_p[t][X]
FpPoly resultant_x(const BiPoly& A, const BiPoly& B);

struct Rational {
    long num = 0, den = 1;  // reduced, den > 0
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
};
Rational make_rational(long num, long den);
std::string print_rational(const Rational& r);

enum class Place { t, t_inverse };

struct NewtonSlopes {
    std::vector<std::pair<Rational, long>> slopes;  // (minus-slope, multiplicity), ascending slope
    long roots_at_zero = 0;                         // X = 0 roots, reported separately
};
NewtonSlopes newton_slopes(const BiPoly& F, Place place);

}
