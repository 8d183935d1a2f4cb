#pragma once

#include "series.hpp"

#include <string>
#include <vector>

namespace nott {

// Witt vector of length 2 or 3 over a commutative F_2-algebra; components are
// polynomials (constants are degree-0 polys). Arithmetic is the printed
// char-2 formulas for W_2 and W_3.
struct WittVec {
    std::vector<FpPoly> a;  // length 2 or 3, entries over F_2

    static WittVec zero(int n);
    static WittVec one(int n);
    static WittVec constants(std::vector<int> comps);  // entries in F_2

    int len() const { return static_cast<int>(a.size()); }
    bool is_zero() const;

    friend WittVec operator+(const WittVec& x, const WittVec& y);
    friend WittVec operator*(const WittVec& x, const WittVec& y);
    WittVec operator-() const;
    friend WittVec operator-(const WittVec& x, const WittVec& y) { return x + (-y); }
    bool operator==(const WittVec& o) const { return a == o.a; }

    WittVec frobenius() const;
    WittVec wp() const;  // Frobenius - Id
};

struct BreakData {
    std::vector<long> lower;
    std::vector<long> upper;
};

// Kanesaka-Sekiguchi: upper breaks of the generator attached to
// beta = sum a_i (z^{-i},0,..,0); indices i odd, some a_i a unit.
BreakData ks_breaks(const std::vector<std::pair<long, WittVec>>& terms, int n);

BreakData lower_to_upper(const std::vector<long>& lower, int p = 2);
BreakData upper_to_lower(const std::vector<long>& upper, int p = 2);

// Klopsch's series t / (1+t^m)^{1/m} of order 2 and depth m (m odd).
TruncSeries klopsch(long m, long precision);
BiPoly klopsch_equation(long m);

// Patterns of a simple sparse set: base-2 strings v_r w_r^{l_r} ... v_1 w_1^{l_1} v_0.
struct SupportPattern {
    std::vector<std::string> v;  // v[0..r]
    std::vector<std::string> w;  // w[1..r] at indices 1..r; w[0] unused
    long rank() const { return static_cast<long>(w.size()) - 1; }
    bool matches(unsigned long long k) const;
    std::string print() const;
};

// Sparse representative of the order-2 class of depth m = 2^mu +- 1 (Prop-8.6
// closed forms); the pattern list is empty for the 2^mu + 1 family.
struct SparseRep {
    TruncSeries series;
    std::vector<SupportPattern> patterns;
    BiPoly equation;  // the symmetric equation whose Hensel root it is
};
SparseRep sparse_rep(long m, long precision);

enum class Order4Class13 { CS, CS_cube };
// Lemma-5.1 recognizer for order 4, breaks (1,3): a4 = a5 <=> conjugate to CS.
Order4Class13 recognize_order4_13(const TruncSeries& s);

// Prop-6.3 normal form for order 8, breaks (1,3,11): five conditional
// conjugations, then read (b4, b11).
std::pair<int, int> normalize_order8(const TruncSeries& s);

// (t+1)^{deg_t F} * F(t/(t+1), X)
BiPoly phi_twist(const BiPoly& F);
// the twist t -> t/(t+1) as a series
TruncSeries phi_series(int p, long precision);
// c^{-1} o s o c
TruncSeries conjugate(const TruncSeries& s, const TruncSeries& c);

// Closed-form coefficient streams of the catalog series, by name:
// sigma_CS, sigma_CS2, sigma_CS3, sigma_J, sigma_J3, sigma_T1..sigma_T4,
// sigma_S1, sigma_S<m>.
TruncSeries closed_form(const std::string& name, long precision);
bool has_closed_form(const std::string& name);

}
