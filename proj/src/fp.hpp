#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nott {

enum class errc { parse, domain, not_exact, limit, io, internal };

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Arithmetic in F_p for a small prime p. Everything in this project carries p
// at runtime; p = 2 is the exercised default.
inline int fp_add(int p, int a, int b) { int s = a + b; return s >= p ? s - p : s; }
inline int fp_sub(int p, int a, int b) { int s = a - b; return s < 0 ? s + p : s; }
inline int fp_neg(int p, int a) { return a == 0 ? 0 : p - a; }
inline int fp_mul(int p, int a, int b) { return (a * b) % p; }

inline int fp_inv(int p, int a) {
    if (a % p == 0) throw error(errc::domain, "division by zero in F_p");
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    throw error(errc::internal, "fp_inv: modulus not prime?");
}

inline int fp_pow(int p, int a, long e) {
    int r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = fp_mul(p, r, a);
        a = fp_mul(p, a, a);
        e >>= 1;
    }
    return r;
}

inline bool fp_is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void fp_check_prime(int p) {
    if (!fp_is_prime(p)) throw error(errc::domain, "modulus " + std::to_string(p) + " is not prime");
}

}
