#pragma once

#include "fppoly.hpp"

namespace nott {

// Reduced rational function over F_p(t): monic denominator, gcd(num, den) = 1.
class RatFn {
public:
    RatFn() : num_(FpPoly::zero(2)), den_(FpPoly::one(2)) {}
    explicit RatFn(FpPoly n) : num_(std::move(n)), den_(FpPoly::one(num_.p())) {}
    RatFn(FpPoly n, FpPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFn zero(int p) { return RatFn(FpPoly::zero(p)); }
    static RatFn one(int p) { return RatFn(FpPoly::one(p)); }

    int p() const { return num_.p(); }
    bool is_zero() const { return num_.is_zero(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw error(errc::domain, "division by zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn operator-() const { return RatFn(-num_, den_); }
    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn inverse() const {
        if (is_zero()) throw error(errc::domain, "inverse of zero");
        return RatFn(den_, num_);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw error(errc::domain, "zero denominator");
        if (num_.is_zero()) {
            den_ = FpPoly::one(p());
            return;
        }
        FpPoly g = gcd(num_, den_);
        if (g.deg() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
        int u = fp_inv(p(), den_.lc());
        num_ = num_.scaled(u);
        den_ = den_.scaled(u);
    }

    FpPoly num_, den_;
};

}
