#pragma once

// Alternating bilinear model of class-2 stem groups.  For G of class exactly 2
// with Z(G) = gamma_2(G) and both G/Z and gamma_2 elementary abelian,
// commutation descends to an alternating bilinear map
//     B : V x V -> W,   V = G/Z,  W = gamma_2,
// and questions about commutators (which elements are single commutators,
// class sizes, distinguished generating sets, isoclinism of stems) become
// finite linear algebra over F_p.

#include <optional>
#include <vector>

#include "pgc/fp.hpp"
#include "pgc/pcpres.hpp"

namespace pgc {

struct AltBilinearMap {
    int p = 0;
    int dv = 0; // dim V
    int dw = 0; // dim W
    // table[pair_index(i,j)] = B(e_i, e_j) for i < j; the other values follow
    // from B(v,v) = 0 and B(u,v) = -B(v,u)
    std::vector<fp::Vec> table;

    int pair_index(int i, int j) const; // requires i < j
    fp::Vec at(int i, int j) const;     // any i, j
    fp::Vec apply(const fp::Vec& u, const fp::Vec& v) const;
    fp::Mat slice(const fp::Vec& v) const; // dw x dv matrix of B(v, .)

    u64 v_count() const; // p^dv
    u64 w_count() const; // p^dw
    // mixed-radix codes, first coordinate most significant (same convention
    // as element codes, so sorted code lists line up with element order)
    fp::Vec v_decode(u64 c) const;
    fp::Vec w_decode(u64 c) const;
    u64 v_code(const fp::Vec& v) const;
    u64 w_code(const fp::Vec& w) const;
};

struct BilinearModel {
    AltBilinearMap map;
    std::vector<int> v_gens; // pc generators projecting to the V basis
    std::vector<int> w_gens; // pc generators forming the W basis (a suffix)
};

// Builds the model.  Requires: nilpotency class exactly 2, Z = gamma_2
// elementary abelian, G/Z elementary abelian, and gamma_2 spanned by a suffix
// of the pc generators.  Throws HypothesisError naming the failed condition.
BilinearModel extract_bilinear(const PcPresentation& P);

// group element with W-coordinates w under the model's basis
Elt model_lift(const PcPresentation& P, const BilinearModel& M, const fp::Vec& w);
// W-coordinates of a gamma_2 element (error if g lies outside the W span)
fp::Vec model_coords(const PcPresentation& P, const BilinearModel& M, const Elt& g);

// {B(u,v) : u, v in V} as sorted w-codes; in the model's coordinates this is
// exactly the commutator set K(G)
std::vector<u64> image_codes(const AltBilinearMap& B);

// rank of the linear map B(v, .); equals the breadth of any lift of v
int slice_rank(const AltBilinearMap& B, const fp::Vec& v);
// sorted ranks over all non-zero v (p^dv - 1 entries); pseudo-isometry invariant
std::vector<int> slice_rank_spectrum(const AltBilinearMap& B);
// distinct {p^rank : v != 0} with 1 adjoined, ascending; equals the conjugate
// type of any group realizing B
std::vector<u64> conjugate_type_from_B(const AltBilinearMap& B);

struct Quadruple {
    fp::Vec v1, v2, v3, v4;
};

// Searches for a basis (v1,v2,v3,v4) of V with B(v1,v2) = 0 = B(v3,v4); such a
// quadruple lifts to a generating set {x1,x2,x3,x4} of G with [x1,x2] = 1 =
// [x3,x4].  Exhaustive: v1 runs over projective representatives, v2 over
// ker B(v1,.), then (v3,v4) likewise, with a final span check.  Requires
// dv = 4 (ConstraintError otherwise); throws BudgetError when the number of
// examined candidates would exceed the budget.
std::optional<Quadruple> hyperbolic_quadruple_search(const AltBilinearMap& B,
                                                     u64 budget = 100000000ULL);

u64 gl_order(int d, int p); // |GL(d,p)|, saturating at the u64 maximum

// True iff some phi in GL(V) induces theta in GL(W) with
// theta(B1(u,v)) = B2(phi u, phi v) for all u, v — for stem groups this is
// exactly isoclinism.  Shape mismatch raises ConstraintError; |GL(dv,p)|
// above the budget raises BudgetError carrying the required count.  Image
// size and slice-rank spectrum are compared first (both are invariants), so
// mismatched maps return false without enumeration.
bool pseudo_isometry(const AltBilinearMap& B1, const AltBilinearMap& B2,
                     u64 budget = 100000000ULL);

} // namespace pgc
