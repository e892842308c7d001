#pragma once

// Case classification for the two characterization theorems.  Given a
// consistent presentation, check the standing hypotheses (parity of p, center
// inside the derived subgroup, derived subgroup elementary abelian of order
// p^4), decide which structural case predicts K(G) != gamma_2(G), and confirm
// the prediction against the brute-force commutator set.  A small suite of
// supporting single-group lemmas is checked alongside.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pgc/commutators.hpp"
#include "pgc/structure.hpp"

namespace pgc {

// invariants computed once and shared by every check on the same group
struct GroupFacts {
    u64 order = 1;
    std::vector<Subgroup> lower_central; // gamma_1 down to the trivial term
    int nil_class = 0;
    Subgroup centre;
    ClassData classes;
};

GroupFacts group_facts(const PcPresentation& P);

// second term of the lower central series (trivial for abelian groups)
const Subgroup& gamma2_of(const GroupFacts& F);

struct HypothesisCheck {
    std::string name; // stable identifier, e.g. "center_in_gamma2"
    bool pass = false;
    std::string observed; // the value actually found, human-readable
};

struct HypothesisRecord {
    char theorem = 'A';
    std::vector<HypothesisCheck> checks;

    bool all_pass() const;
    const HypothesisCheck* find(const std::string& name) const; // nullptr if absent
    std::string first_failure() const; // "name (observed)"; empty when all pass
};

// Hypotheses evaluated independently; failures are recorded, never thrown.
// theorem 'A': p odd, Z <= gamma_2, |gamma_2| = p^4, gamma_2 elementary
// abelian.  theorem 'B': the same with p = 2 (so |gamma_2| = 16).
HypothesisRecord check_hypotheses(const PcPresentation& P, char theorem);
HypothesisRecord check_hypotheses(const PcPresentation& P, char theorem, const GroupFacts& F);

enum class TheoremCase { none, A1, A2, A3a, A3b, B1, B2a, B2b, undetermined };

const char* case_name(TheoremCase c);

struct CaseEvidence {
    std::vector<std::string> notes; // classification trail, one line per step
    // case 3a / 2a witness: non-central element whose centralizer has index p
    std::optional<Elt> breadth_one;
    // generating set with [x1,x2] = 1 = [x3,x4] (its existence refutes 3b / 2b)
    std::optional<std::array<Elt, 4>> quadruple;
    // filled when K != gamma_2; the theorems assert width <= 2
    std::optional<WidthReport> width;
};

struct TheoremClassification {
    char theorem = 'A';
    HypothesisRecord hypotheses;
    TheoremCase kase = TheoremCase::none;
    bool predicted_unequal = false;
    bool brute_force_unequal = false;
    bool agree = false; // predicted_unequal == brute_force_unequal
    CommutatorSummary commutators; // exact K(G) backing the brute-force flag
    CaseEvidence evidence;
};

// Decide the case from (order, class, |Z|, conjugate type, breadth-1 element,
// quadruple search), then cross-check against the commutator set.  Throws
// HypothesisError when the theorem's hypotheses fail.  A BudgetError from the
// quadruple search or the pseudo-isometry scan is caught: the case becomes
// undetermined and the classification degrades to brute force alone (then
// predicted_unequal mirrors brute_force_unequal and agree is vacuously true).
TheoremClassification classify_theorem_A(const PcPresentation& P, u64 budget = 100000000ULL);
TheoremClassification classify_theorem_A(const PcPresentation& P, const GroupFacts& F,
                                         u64 budget = 100000000ULL);

// Case B1 is decided by pseudo-isometry of the commutation bilinear map
// against the order-2^9 base model (the r = s = t = 0 member of the T2_9
// family); cases B2a / B2b as in Theorem A at order 2^8.
TheoremClassification classify_theorem_B(const PcPresentation& P, u64 budget = 100000000ULL);
TheoremClassification classify_theorem_B(const PcPresentation& P, const GroupFacts& F,
                                         u64 budget = 100000000ULL);

char pick_theorem(const PcPresentation& P); // 'B' when p = 2, 'A' otherwise

TheoremClassification classify(const PcPresentation& P, char theorem,
                               u64 budget = 100000000ULL);

enum class LemmaStatus { pass, fail, not_applicable };

const char* status_name(LemmaStatus s);

struct LemmaResult {
    std::string id;
    LemmaStatus status = LemmaStatus::not_applicable;
    std::string detail;
};

// Checks every supporting invariant that applies to the given group; the
// result always lists all six checks, with not_applicable where the
// hypotheses of a check fail.
//
//   pth_powers_central            {x^p} <= Z(G) when gamma_2 is elementary
//                                 abelian of order p^4 (p >= 5 always, p = 3
//                                 only up to class 3)
//   center_meet_gamma2_not_maximal  at class >= 4 the subgroup Z meet gamma_2
//                                 has index != p in gamma_2
//   breadth_at_least_three        |gamma_2| = p^4 forces an element with
//                                 centralizer of index >= p^3
//   gamma2_p3_all_commutators     gamma_2 elementary abelian of order p^3
//                                 forces K(G) = gamma_2(G)
//   breadth_three_characterization  for odd p, b(G) = 3 iff one of three
//                                 center/derived-subgroup conditions holds
//   order_p_quotient_width_two    a central order-p subgroup H <= gamma_2 with
//                                 K(G/H) = gamma_2(G/H) forces width <= 2
std::vector<LemmaResult> lemma_suite(const PcPresentation& P);
std::vector<LemmaResult> lemma_suite(const PcPresentation& P, const GroupFacts& F);

} // namespace pgc
