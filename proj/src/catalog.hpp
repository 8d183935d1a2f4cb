#pragma once

#include "classify.hpp"
#include "enumerate.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nott {

// One catalog series: equation, seed and the expectations the drivers check.
// Stored as key = value data files under the catalog directory.
struct CatalogEntry {
    std::string name;
    BiPoly equation;
    SeriesPrefix seed;
    Method method = Method::diagonal;
    long order = 0;                 // compositional order (0 = unchecked)
    std::vector<long> breaks;       // lower break sequence
    long states = -1;               // expected minimal state count (-1 = unchecked)
    long states_reported = -1;      // computed and reported, not asserted
    std::string cls;                // S | hatS | QS | notQS | "" (unchecked)
    long rank = -1;                 // expected sparseness rank for class S
    long hatS_m = -1;               // expected positive-arm m for class hatS
    std::string closed_form;        // name of the coefficient stream, if any
    long closed_form_prec = 200;
    std::string fixture;            // automaton file in <catalog>/automata
    std::string sync_word;          // expected word, read right to left
    long sync_absorbing = -1;       // expected absorbing count when not synchronizing
    std::optional<HatSWitness> witness;  // stored in the text's orientation
    std::optional<std::pair<int, int>> normalize;  // (b4, b11) for order-8 entries
    std::string raw_path;
};

std::string default_catalog_dir();
std::vector<CatalogEntry> load_catalog(const std::string& dir = "");
std::optional<CatalogEntry> load_entry(const std::string& name, const std::string& dir = "");

struct VerifyItem {
    std::string what;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string name;
    bool pass = true;
    std::vector<VerifyItem> items;
    double seconds = 0;
};

struct VerifyOptions {
    long series_prec = 200;
    long mmax = 64;
    bool classify = true;
    std::string catalog_dir;  // for fixtures
};

VerifyReport catalog_verify(const CatalogEntry& e, const VerifyOptions& opt = {});
std::vector<VerifyReport> catalog_verify_all(const std::vector<CatalogEntry>& entries,
                                             const VerifyOptions& opt = {}, int workers = 1);
std::string print_verify(const VerifyReport& r);

// Rmk-7.2 state counts: solve (t^m+1)X^m + t^m directly, minimize, count.
std::vector<long> klopsch_state_counts(const std::vector<long>& ms);

// Table-12 rows are written as base-2 strings read right to left; this turns
// them into walk-order words for the replayer.
HatSWitness witness_to_walk_order(const HatSWitness& text_form);

}
