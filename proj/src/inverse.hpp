#pragma once

#include "christol.hpp"

namespace nott {

// Equation recovered from an automaton, certified by re-solving: the witness
// automaton is equal_series to the source.
struct CertifiedEquation {
    BiPoly F;
    Dfao witness;
};

struct GuessOptions {
    long dmax = 16, hmax = 16;
    long sample_len = 4096;  // M
    long series_prec = 200;
};

// Hermite-Pade style search for F(t, sigma) = 0 on a doubling schedule,
// certified via solve + equal_series.
CertifiedEquation guess_equation(const Dfao& A, const GuessOptions& opt = {});

// One resultant-elimination step n times: returns an equation for the
// 2^n-th compositional power together with its truncated series.
std::pair<BiPoly, TruncSeries> compose_power(const BiPoly& F, const TruncSeries& seed, int n);

struct OrderResult {
    bool finite = false;
    int log2_order = 0;        // order = 2^log2_order when finite
    bool certified = false;    // exact certificate vs. truncated filter only
    long filter_precision = 0; // precision of the truncated evidence
};

struct OrderOptions {
    int nmax = 4;
    long filter_prec = 256;
    long deep_filter_prec = 512;  // evidence tier for equations of X-degree > 4
    bool force_certify = false;
};

// Compositional order 2^n by truncated filter plus, for deg_X <= 4 equations,
// the exact resultant/solve certificate against the 3-state automaton of t.
OrderResult exact_order(const Dfao& A, const OrderOptions& opt = {});

// Lower break sequence (b_0 .. b_{n-1}), b_i = depth of sigma^{2^i}.
std::vector<long> break_sequence(const Dfao& A, int n, long start_prec = 256);
std::vector<long> break_sequence_series(TruncSeries s, int n);

}
