#pragma once

// The set of commutators K(G) = { [x,y] : x,y in G }, membership tests with
// witness extraction, and the covering question: is every element of the
// derived subgroup a product of at most two commutators?

#include <optional>
#include <utility>
#include <vector>

#include "pgc/structure.hpp"

namespace pgc {

struct CommutatorSummary {
    std::vector<u64> k;              // K(G), sorted codes
    std::vector<u64> gamma2;         // derived subgroup, sorted codes
    std::vector<u64> gamma2_minus_k; // ascending; empty iff equal
    bool equal = false;
};

// K(G) by one conjugacy sweep: for each class C and x in C the translate
// x^-1 C is exactly { [x,y] : y in G }.  Every produced code is checked to lie
// in gamma2.  With early_stop the sweep aborts once K has covered gamma2
// (useful when only the equal flag matters).
CommutatorSummary commutator_set(const PcPresentation& P, const Subgroup& gamma2,
                                 bool early_stop = false);
CommutatorSummary commutator_set(const PcPresentation& P);

// { [x,y] : y in G } for one fixed x, sorted codes
std::vector<u64> x_commutators(const PcPresentation& P, const Elt& x);

bool is_commutator(const PcPresentation& P, const Elt& g);

struct CommutatorWitness {
    Elt x, y; // [x,y] = g with x code-least, then y code-least given x
};
std::optional<CommutatorWitness> commutator_witness(const PcPresentation& P, const Elt& g);

struct WidthReport {
    int width = 1; // 1, 2, or 3 (3 means "at least 3")
    std::optional<u64> deep_element;                 // least code needing more than one factor
    std::optional<std::pair<u64, u64>> pair_witness; // two K-codes multiplying to deep_element
};

// width of gamma2 over K, capped at 3
WidthReport two_commutator_width(const PcPresentation& P, const CommutatorSummary& S);
WidthReport two_commutator_width(const PcPresentation& P);

} // namespace pgc
