#pragma once

#include "christol.hpp"
#include "nottingham.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nott {

// witness for non-sparseness: a co-accessible vertex with two distinct
// equal-length closed walks
struct TiedWitness {
    uint32_t vertex = 0;
    std::string access;        // digits start -> vertex, walk order
    std::string walk1, walk2;  // equal-length closed walks at the vertex
    std::string to_one;        // path from the vertex to a 1-labeled state
};

std::vector<uint32_t> tied_vertices(const Dfao& A);
std::optional<TiedWitness> tied_witness(const Dfao& A, uint32_t v);

struct SparseResult {
    bool sparse = false;
    long rank = -1;  // for sparse automata
    std::optional<TiedWitness> witness;
};
SparseResult is_sparse(const Dfao& A);
std::vector<SupportPattern> decompose_sparse(const Dfao& A, size_t cap = 100000);

// #{ k <= N : a_k = 1 } by digit dynamic programming
unsigned long long counting_function(const Dfao& A, unsigned long long N);

// Prop-10.1 witness: walks w2 w1^l w0 from the start always reach the same
// vertex whose two children automata split sparse/non-sparse.
struct HatSWitness {
    std::string w2, w1, w0;
    int digit = 0;  // the child automaton A_digit is the non-sparse one
};

enum class Verdict { yes, no, inconclusive };

struct HatSResult {
    Verdict verdict = Verdict::inconclusive;
    long m = 0;  // positive arm: least m with (t^m+1) sigma sparse
    std::optional<HatSWitness> witness;
    long mmax = 0;
};
HatSResult hatS_test(const Dfao& A, long mmax = 64);

// replay a stored witness row; returns the reached vertex when it verifies
bool replay_hatS_witness(const Dfao& A, const HatSWitness& w);

struct FieldCertificate {
    std::string test;    // "odd-degree", "cubic-resolvent", "integrality", "kummer"
    std::string detail;  // replayable data
    bool not_qs = false;
    bool not_sparse = false;
};
std::vector<FieldCertificate> field_tests(const BiPoly& F);

std::string print_slopes(const NewtonSlopes& ns);

enum class Level { S, hatS, QS, notQS, inconclusive };

struct ClassReport {
    Level level = Level::inconclusive;
    SparseResult sparse;
    HatSResult hatS;
    Verdict in_qs = Verdict::inconclusive;
    std::string qs_how;  // which certificate settled QS
    std::vector<FieldCertificate> certs;
    HatSResult twist_hatS;  // combinatorial arm on sigma o phi, when attempted
    bool twist_attempted = false;
    std::vector<std::pair<unsigned long long, unsigned long long>> counting_samples;
};

struct ClassifyOptions {
    long mmax = 64;
    long series_prec = 200;
    bool try_twist = true;
};
ClassReport classify_hierarchy(const Dfao& A, const BiPoly* F = nullptr,
                               const ClassifyOptions& opt = {});
std::string print_report(const ClassReport& r);
std::string level_name(Level l);

struct SyncResult {
    std::vector<uint32_t> absorbing;
    bool synchronizing = false;
    std::string word;         // read right to left, per the text convention
    std::string obstruction;  // why not, when not synchronizing
};
SyncResult sync_analysis(const Dfao& A);
// walks the word right to left from every state; true iff one end state
bool verify_sync_word(const Dfao& A, const std::string& word);

}
