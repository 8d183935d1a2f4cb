#pragma once

#include "series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nott {

// DFAO over input alphabet {0..p-1} with output labels in F_p, LSB-first input.
// Well-formed automata satisfy: every state accessible from start, p outgoing
// edges per state, and label(delta(s,0)) = label(s) (leading zeros invariance).
struct Dfao {
    int p = 2;
    uint32_t start = 0;
    std::vector<uint8_t> label;
    std::vector<uint32_t> next;  // next[s*p + r]

    long states() const { return static_cast<long>(label.size()); }
    uint32_t step(uint32_t s, int r) const { return next[s * p + r]; }

    bool operator==(const Dfao& o) const {
        return p == o.p && start == o.start && label == o.label && next == o.next;
    }
};

struct Violation {
    std::string what;
};

// The three well-formedness conditions; prune removes inaccessible states first.
std::vector<Violation> validate(const Dfao& A);
Dfao prune(const Dfao& A);
bool is_valid(const Dfao& A);

int coeff_at(const Dfao& A, unsigned long long k);
TruncSeries series_prefix(const Dfao& A, long n);

// Moore refinement; result is canonically numbered by BFS from start.
Dfao minimize(const Dfao& A);
// BFS renumbering only (digit order 0 < 1 < ... < p-1)
Dfao canonical_form(const Dfao& A);
bool equal_series(const Dfao& A, const Dfao& B);

Dfao add_series(const Dfao& A, const Dfao& B);
Dfao shift_by(const Dfao& A, long m);         // t^m * series
Dfao mul_by_binomial(const Dfao& A, long m);  // (t^m + 1) * series

// minimal automaton of a polynomial (finite support)
Dfao poly_automaton(const FpPoly& f);
// the 3-state minimal automaton of the series t
Dfao automaton_of_t(int p);

// file codec: "p=<prime>" / "states=<N>" / N lines "<label> <to0> <to1> ...",
// 1-based targets, state 1 is the start
std::string print_dfao(const Dfao& A);
Dfao parse_dfao(const std::string& text);
Dfao read_dfao_file(const std::string& path);
void write_dfao_file(const Dfao& A, const std::string& path);

std::string dfao_dot(const Dfao& A);

}
