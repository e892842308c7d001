#pragma once

// Named group constructions, central quotients, and amalgamated central
// products.  Every catalog entry builds a consistent power-commutator
// presentation for the parameters its constraints admit.

#include <optional>
#include <string>
#include <vector>

#include "pgc/pcpres.hpp"

namespace pgc {

struct CatalogParams {
    int p = 0;
    std::optional<int> r, s, t; // T2_9 parameters; r doubles as the
                                // non-residue override where one is allowed
    std::optional<int> n;       // generator count for the free builder
};

struct CatalogEntry {
    std::string name;
    std::string params;      // accepted parameters, human-readable
    std::string constraints; // validity conditions on the parameters
    std::string notes;       // headline invariants of the built group
    PcPresentation (*build)(const CatalogParams&);
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry* catalog_find(const std::string& name); // nullptr if absent
// throws ConstraintError for unknown names or invalid parameters
PcPresentation catalog_build(const std::string& name, const CatalogParams& params);

// The "socle" of a presentation: the longest suffix of central generators
// with trivial power tails (an elementary abelian central subgroup).
// Returns the first generator index of the suffix (n when empty).
int socle_start(const PcPresentation& P);

// Quotient by the central subgroup generated by the given words.  Each word
// must collect into the socle; the quotient presentation keeps the surviving
// generators in order.  Throws Error("...not central...") when a word's value
// fails to be central, Error("...socle...") when it is central but involves a
// generator outside the socle.
PcPresentation central_quotient(const PcPresentation& P, const std::vector<Word>& kill);

// Amalgamated central product (A x B) / <a phi(a)^-1>: each amalgamation
// identifies a central generator of A with a central word of B of the same
// order.  Generators are re-ordered (non-central block first, then the
// central blocks) so the identified elements land in the socle.  An empty
// amalgamation list gives the direct product.
struct Amalgamation {
    int a_gen;   // generator index in A, must be central
    Word b_word; // word in B's generators, must collect to a central element
};
PcPresentation central_product(const PcPresentation& A, const PcPresentation& B,
                               const std::vector<Amalgamation>& amalg);

} // namespace pgc
