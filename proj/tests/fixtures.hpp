#pragma once

#include "catalog.hpp"

#include <functional>
#include <random>

// Hand transcriptions of the small figures, used as independent cross-checks
// of the solver and the shipped fixture files.
namespace fixtures {

using namespace nott;

inline Dfao fig1_klopsch3() {
    Dfao A;
    A.p = 2;
    A.start = 0;
    A.label = {0, 0, 0, 1, 1, 0};
    A.next = {1, 3, 0, 2, 2, 2, 4, 2, 3, 5, 2, 4};
    return A;
}

inline Dfao fig2_sigma_min() {
    Dfao A;
    A.p = 2;
    A.start = 0;
    A.label = {0, 1, 1, 1, 0};
    A.next = {0, 1, 2, 4, 2, 1, 1, 3, 4, 3};
    return A;
}

inline Dfao fig4_cs2() {
    Dfao A;
    A.p = 2;
    A.start = 0;
    A.label = {0, 0, 1, 0, 1, 1, 0};
    A.next = {1, 5, 3, 1, 4, 1, 3, 2, 4, 2, 5, 6, 6, 6};
    return A;
}

// random valid DFAO: random transitions, labels repaired to satisfy the
// leading-zeros invariance, then pruned
inline Dfao random_dfao(std::mt19937_64& rng, int states, int p = 2) {
    Dfao A;
    A.p = p;
    A.start = 0;
    std::uniform_int_distribution<uint32_t> st(0, states - 1);
    std::uniform_int_distribution<int> lab(0, p - 1);
    A.label.resize(states);
    for (auto& l : A.label) l = static_cast<uint8_t>(lab(rng));
    A.next.resize(static_cast<size_t>(states) * p);
    for (auto& t : A.next) t = st(rng);
    // leading-zeros invariance forces one label per component of s -> delta(s,0)
    std::vector<int> uf(states);
    for (int s = 0; s < states; ++s) uf[s] = s;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (int s = 0; s < states; ++s) {
        int a = find(s), b = find(static_cast<int>(A.next[s * p + 0]));
        if (a != b) uf[a] = b;
    }
    for (int s = 0; s < states; ++s) A.label[s] = A.label[find(s)];
    return prune(A);
}

inline std::string catalog_dir() { return default_catalog_dir(); }

}  // namespace fixtures
