#pragma once

// Subgroup machinery and structural invariants: lower central series, center,
// centralizers, conjugacy classes, breadth, conjugate type, Frattini rank,
// omega/agemo subgroups and exponents.

#include <functional>
#include <vector>

#include "pgc/pcpres.hpp"

namespace pgc {

struct Subgroup {
    std::vector<u64> codes; // sorted element codes; empty when full is set
    std::vector<Elt> gens;  // a generating set
    bool full = false;      // the whole group, elements not materialized
    u64 order = 1;

    bool contains(u64 code) const;
};

// log_p of a p-power; error if v is not a power of p
int logp(u64 v, int p);

Subgroup trivial_subgroup();
Subgroup full_group(const PcPresentation& P);

// subgroup generated by gens (breadth-first closure)
Subgroup closure(const PcPresentation& P, const std::vector<Elt>& gens);

// smallest normal subgroup containing gens
Subgroup normal_closure(const PcPresentation& P, const std::vector<Elt>& gens);

// gamma_1 = G >= gamma_2 >= ... down to the trivial subgroup (last entry);
// gamma_{k+1} is the normal closure of commutators of gamma_k generators with
// the pc generators, and containment [gamma_k, G] <= gamma_{k+1} is re-checked
// elementwise on every materialized term
std::vector<Subgroup> lower_central_series(const PcPresentation& P);

int nilpotency_class(const std::vector<Subgroup>& series);

Subgroup center(const PcPresentation& P);

// elements commuting with x, computed coset-by-coset modulo the center
Subgroup centralizer(const PcPresentation& P, const Elt& x);

struct ConjClass {
    u64 rep_code; // lex-least element of the class
    u64 size;
};

struct ClassData {
    std::vector<ConjClass> classes;
    std::vector<u64> conjugate_type; // distinct class sizes, ascending
    int max_breadth = 0;             // log_p of the largest class size
    bool completed = true;           // false when a callback aborted the sweep
};

// orbit enumeration under conjugation by the pc generators, one global sweep;
// cb (when given) receives every class as (representative, full orbit) and
// returns false to abort the sweep early
using ClassCallback = std::function<bool(const Elt& rep, const std::vector<Elt>& orbit)>;
ClassData conjugacy_classes(const PcPresentation& P, const ClassCallback& cb = nullptr);

int breadth(const PcPresentation& P, const Elt& x); // log_p |class of x|
int group_breadth(const PcPresentation& P);

int frattini_rank(const PcPresentation& P); // d with |G : Phi(G)| = p^d

Subgroup omega1(const PcPresentation& P, const Subgroup& H); // <x in H : x^p = 1>
Subgroup mho1(const PcPresentation& P, const Subgroup& H);   // <x^p : x in H>
u64 exponent(const PcPresentation& P, const Subgroup& H);
bool is_abelian(const PcPresentation& P, const Subgroup& H);
bool is_elementary_abelian(const PcPresentation& P, const Subgroup& H);

// greedy small generating set for a materialized element list
std::vector<Elt> small_generating_set(const PcPresentation& P, const std::vector<u64>& codes);

} // namespace pgc
