#pragma once

#include "inverse.hpp"

namespace nott {

struct SearchConfig {
    int max_states = 5;     // N <= 6
    int order_log2 = 2;     // n <= 3: search for order 2^n
    long prefilter = 256;
    bool certify = true;
    int workers = 1;
};

struct SearchStats {
    unsigned long long generated = 0;   // canonical labeled tables inspected
    unsigned long long lz_ok = 0;       // passed structural constraints
    unsigned long long dedup = 0;       // distinct minimal automata
    unsigned long long prefiltered = 0; // passed the truncated-composition filter
    unsigned long long certified = 0;
};

struct SearchResult {
    std::vector<Dfao> automata;  // minimal, canonical, sorted
    SearchStats stats;
};

// All minimal leading-zeros-invariant 2-automata on at most max_states states
// whose series has exact compositional order 2^n.
SearchResult enumerate_finite_order(const SearchConfig& cfg);

}
