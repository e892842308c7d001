#include "pgc/verifier.hpp"

#include <algorithm>
#include <map>

#include "pgc/bilinear.hpp"
#include "pgc/catalog.hpp"
#include "pgc/fp.hpp"

namespace pgc {

namespace {

u64 ipow(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// "5^4" for proper powers, "5" and "1" verbatim
std::string pow_str(u64 v, int p) {
    if (v == 1) return "1";
    int k = logp(v, p);
    if (k == 1) return std::to_string(p);
    return std::to_string(p) + "^" + std::to_string(k);
}

std::string type_str(const std::vector<u64>& t) {
    std::string s = "{";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(t[i]);
    }
    return s + "}";
}

} // namespace

GroupFacts group_facts(const PcPresentation& P) {
    GroupFacts F;
    F.order = P.group_order();
    F.lower_central = lower_central_series(P);
    F.nil_class = nilpotency_class(F.lower_central);
    F.centre = center(P);
    F.classes = conjugacy_classes(P);
    return F;
}

const Subgroup& gamma2_of(const GroupFacts& F) {
    static const Subgroup trivial = trivial_subgroup();
    return F.lower_central.size() >= 2 ? F.lower_central[1] : trivial;
}

bool HypothesisRecord::all_pass() const {
    for (const HypothesisCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

const HypothesisCheck* HypothesisRecord::find(const std::string& name) const {
    for (const HypothesisCheck& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string HypothesisRecord::first_failure() const {
    for (const HypothesisCheck& c : checks)
        if (!c.pass) return c.name + " (" + c.observed + ")";
    return "";
}

namespace {

HypothesisRecord build_record(const PcPresentation& P, char theorem, const Subgroup& g2,
                              const Subgroup& Z) {
    if (theorem != 'A' && theorem != 'B')
        throw ConstraintError(std::string("unknown theorem '") + theorem + "', expected A or B");
    HypothesisRecord rec;
    rec.theorem = theorem;
    int p = P.p;

    if (theorem == 'A')
        rec.checks.push_back({"p_odd", p >= 3, "p = " + std::to_string(p)});
    else
        rec.checks.push_back({"p_is_2", p == 2, "p = " + std::to_string(p)});

    {
        bool ok = true;
        std::string obs;
        if (Z.order > g2.order) {
            ok = false;
            obs = "|Z| = " + pow_str(Z.order, p) + " exceeds |gamma2| = " + pow_str(g2.order, p);
        } else {
            std::optional<u64> outside;
            for (u64 c : Z.codes)
                if (!g2.contains(c)) {
                    outside = c;
                    break;
                }
            ok = !outside;
            obs = ok ? "|Z| = " + pow_str(Z.order, p) + ", contained in gamma2"
                     : "central element " + P.show(P.decode(*outside)) + " lies outside gamma2";
        }
        rec.checks.push_back({"center_in_gamma2", ok, obs});
    }

    rec.checks.push_back({"gamma2_order_p4", g2.order == ipow(p, 4),
                          "|gamma2| = " + pow_str(g2.order, p)});

    {
        bool ab = is_abelian(P, g2);
        u64 ex = exponent(P, g2);
        std::string obs =
            ab ? "abelian of exponent " + std::to_string(ex) : "gamma2 is not abelian";
        rec.checks.push_back({"gamma2_elem_abelian", ab && ex <= u64(p), obs});
    }
    return rec;
}

[[noreturn]] void throw_hypothesis_failure(char theorem, const HypothesisRecord& rec) {
    std::string msg = std::string("theorem ") + theorem + " hypotheses fail: " +
                      rec.first_failure();
    const HypothesisCheck* c = rec.find("center_in_gamma2");
    if (c && !c->pass)
        msg += "; the classification covers stem groups only (Z(G) <= gamma2(G))";
    throw HypothesisError(msg);
}

// shared tail: brute-force cross-check, agreement flag, width clause
void finish_classification(const PcPresentation& P, const Subgroup& g2,
                           TheoremClassification& C) {
    C.commutators = commutator_set(P, g2, /*early_stop=*/true);
    C.brute_force_unequal = !C.commutators.equal;
    if (C.kase == TheoremCase::undetermined) {
        C.predicted_unequal = C.brute_force_unequal;
        C.agree = true;
        C.evidence.notes.push_back("case undetermined: prediction taken from brute force");
    } else {
        C.predicted_unequal = (C.kase != TheoremCase::none);
        C.agree = (C.predicted_unequal == C.brute_force_unequal);
    }
    if (C.brute_force_unequal) {
        C.evidence.width = two_commutator_width(P, C.commutators);
        C.evidence.notes.push_back(
            "brute force: " + std::to_string(C.commutators.k.size()) + " of " +
            std::to_string(g2.order) + " derived-subgroup elements are commutators; width " +
            std::to_string(C.evidence.width->width));
    } else {
        C.evidence.notes.push_back("brute force: every element of gamma2 is a commutator");
    }
}

// witness for case 3a / 2a: a representative of a conjugacy class of size p,
// re-checked against the centralizer order
Elt breadth_one_witness(const PcPresentation& P, const GroupFacts& F) {
    for (const ConjClass& c : F.classes.classes)
        if (c.size == u64(P.p)) {
            Elt x = P.decode(c.rep_code);
            if (centralizer(P, x).order * u64(P.p) != F.order)
                throw Error("breadth-1 witness " + P.show(x) +
                            " failed the centralizer index cross-check");
            return x;
        }
    throw Error("no conjugacy class of size p despite the conjugate type containing p");
}

// Runs the generating-quadruple search in the bilinear model and stores either
// the found quadruple (lifted and re-verified in the group) or its absence.
// Returns true when the group admits a generating set {x1,x2,x3,x4} with
// [x1,x2] = 1 = [x3,x4]; BudgetError propagates to the caller.
bool quadruple_decision(const PcPresentation& P, TheoremClassification& C, u64 budget) {
    BilinearModel M = extract_bilinear(P);
    C.evidence.notes.push_back(
        "generating-set search runs in the bilinear model: commutators factor through G/Z "
        "and generation modulo the Frattini subgroup is spanning of V");
    std::optional<Quadruple> q = hyperbolic_quadruple_search(M.map, budget);
    if (!q) return false;

    std::array<fp::Vec, 4> vs = {q->v1, q->v2, q->v3, q->v4};
    fp::Mat rows(vs.begin(), vs.end());
    if (fp::rank(rows, P.p) != 4)
        throw Error("quadruple does not span V");
    std::array<Elt, 4> xs;
    for (int k = 0; k < 4; ++k) {
        Elt x;
        for (int i = 0; i < M.map.dv; ++i)
            if (vs[k][i]) P.rmul_gen(x, M.v_gens[i], vs[k][i]);
        xs[k] = x;
    }
    if (!P.is_identity(P.commutator(xs[0], xs[1])) ||
        !P.is_identity(P.commutator(xs[2], xs[3])))
        throw Error("lifted quadruple fails its commutator relations");
    C.evidence.quadruple = xs;
    C.evidence.notes.push_back("generating set " + P.show(xs[0]) + ", " + P.show(xs[1]) +
                               ", " + P.show(xs[2]) + ", " + P.show(xs[3]) +
                               " has [x1,x2] = 1 = [x3,x4]");
    return true;
}

} // namespace

HypothesisRecord check_hypotheses(const PcPresentation& P, char theorem) {
    std::vector<Subgroup> lcs = lower_central_series(P);
    static const Subgroup trivial = trivial_subgroup();
    const Subgroup& g2 = lcs.size() >= 2 ? lcs[1] : trivial;
    return build_record(P, theorem, g2, center(P));
}

HypothesisRecord check_hypotheses(const PcPresentation& P, char theorem, const GroupFacts& F) {
    return build_record(P, theorem, gamma2_of(F), F.centre);
}

const char* case_name(TheoremCase c) {
    switch (c) {
    case TheoremCase::none: return "none";
    case TheoremCase::A1: return "A1";
    case TheoremCase::A2: return "A2";
    case TheoremCase::A3a: return "A3a";
    case TheoremCase::A3b: return "A3b";
    case TheoremCase::B1: return "B1";
    case TheoremCase::B2a: return "B2a";
    case TheoremCase::B2b: return "B2b";
    case TheoremCase::undetermined: return "undetermined";
    }
    return "?";
}

TheoremClassification classify_theorem_A(const PcPresentation& P, u64 budget) {
    return classify_theorem_A(P, group_facts(P), budget);
}

TheoremClassification classify_theorem_A(const PcPresentation& P, const GroupFacts& F,
                                         u64 budget) {
    TheoremClassification C;
    C.theorem = 'A';
    C.hypotheses = check_hypotheses(P, 'A', F);
    if (!C.hypotheses.all_pass()) throw_hypothesis_failure('A', C.hypotheses);

    const Subgroup& g2 = gamma2_of(F);
    u64 p = u64(P.p);
    C.evidence.notes.push_back("order " + pow_str(F.order, P.p) + ", class " +
                               std::to_string(F.nil_class) + ", |Z| = " +
                               pow_str(F.centre.order, P.p) + ", conjugate type " +
                               type_str(F.classes.conjugate_type));

    if (F.nil_class == 4 && F.order == ipow(p, 6)) {
        if (F.centre.order == p * p) {
            C.kase = TheoremCase::A1;
            C.evidence.notes.push_back("order p^6, class 4, |Z| = p^2: case A1");
        } else {
            C.evidence.notes.push_back("order p^6 at class 4 but |Z| != p^2: no case");
        }
    } else if (F.nil_class == 3 && F.order == ipow(p, 7)) {
        if (F.centre.order == p * p * p) {
            C.kase = TheoremCase::A2;
            C.evidence.notes.push_back("order p^7, class 3, |Z| = p^3: case A2");
        } else {
            C.evidence.notes.push_back("order p^7 at class 3 but |Z| != p^3: no case");
        }
    } else if (F.nil_class == 2 && F.order == ipow(p, 8)) {
        const std::vector<u64>& type = F.classes.conjugate_type;
        bool has_breadth_one =
            std::find(type.begin(), type.end(), p) != type.end();
        if (has_breadth_one) {
            C.evidence.breadth_one = breadth_one_witness(P, F);
            C.kase = TheoremCase::A3a;
            C.evidence.notes.push_back("non-central element " +
                                       P.show(*C.evidence.breadth_one) +
                                       " has centralizer of index p: case A3a");
        } else if (type == std::vector<u64>{1, p * p, p * p * p}) {
            try {
                if (!quadruple_decision(P, C, budget)) {
                    C.kase = TheoremCase::A3b;
                    C.evidence.notes.push_back(
                        "conjugate type {1, p^2, p^3} and no generating set with "
                        "[x1,x2] = 1 = [x3,x4]: case A3b");
                } else {
                    C.evidence.notes.push_back("conjugate type {1, p^2, p^3} but a generating "
                                               "quadruple exists: no case");
                }
            } catch (const BudgetError& e) {
                C.kase = TheoremCase::undetermined;
                C.evidence.notes.push_back("quadruple search needs " +
                                           std::to_string(e.required) +
                                           " candidates, over the budget of " +
                                           std::to_string(budget));
            }
        } else {
            C.evidence.notes.push_back(
                "class-2 case: no breadth-1 element and conjugate type != {1, p^2, p^3}: "
                "no case");
        }
    } else {
        C.evidence.notes.push_back("order/class matches no case");
    }

    finish_classification(P, g2, C);
    return C;
}

TheoremClassification classify_theorem_B(const PcPresentation& P, u64 budget) {
    return classify_theorem_B(P, group_facts(P), budget);
}

TheoremClassification classify_theorem_B(const PcPresentation& P, const GroupFacts& F,
                                         u64 budget) {
    TheoremClassification C;
    C.theorem = 'B';
    C.hypotheses = check_hypotheses(P, 'B', F);
    if (!C.hypotheses.all_pass()) throw_hypothesis_failure('B', C.hypotheses);

    const Subgroup& g2 = gamma2_of(F);
    C.evidence.notes.push_back("order " + pow_str(F.order, 2) + ", class " +
                               std::to_string(F.nil_class) + ", |Z| = " +
                               pow_str(F.centre.order, 2) + ", conjugate type " +
                               type_str(F.classes.conjugate_type));

    if (F.nil_class == 2 && F.order == 512) {
        // |G/Z| = 2^5 here, the shape of the base model; compare bilinear maps
        BilinearModel MG = extract_bilinear(P);
        CatalogParams base;
        base.p = 2; // r = s = t defaulted to 0
        BilinearModel MT = extract_bilinear(catalog_build("T2_9", base));
        C.evidence.notes.push_back("comparing the commutation map with the order-2^9 base model");
        try {
            bool iso = pseudo_isometry(MG.map, MT.map, budget);
            if (iso) {
                if (image_codes(MG.map).size() != image_codes(MT.map).size() ||
                    slice_rank_spectrum(MG.map) != slice_rank_spectrum(MT.map))
                    throw Error("pseudo-isometry verdict incoherent: image size or "
                                "slice-rank spectrum differs");
                C.kase = TheoremCase::B1;
                C.evidence.notes.push_back("pseudo-isometric to the base model: case B1");
            } else {
                C.evidence.notes.push_back("not pseudo-isometric to the base model: no case");
            }
        } catch (const BudgetError& e) {
            C.kase = TheoremCase::undetermined;
            C.evidence.notes.push_back("pseudo-isometry scan needs " +
                                       std::to_string(e.required) +
                                       " transformations, over the budget of " +
                                       std::to_string(budget));
        }
    } else if (F.nil_class == 2 && F.order == 256) {
        const std::vector<u64>& type = F.classes.conjugate_type;
        bool has_breadth_one = std::find(type.begin(), type.end(), u64(2)) != type.end();
        if (has_breadth_one) {
            C.evidence.breadth_one = breadth_one_witness(P, F);
            C.kase = TheoremCase::B2a;
            C.evidence.notes.push_back("non-central element " +
                                       P.show(*C.evidence.breadth_one) +
                                       " has centralizer of index 2: case B2a");
        } else if (type == std::vector<u64>{1, 4, 8}) {
            try {
                if (!quadruple_decision(P, C, budget)) {
                    C.kase = TheoremCase::B2b;
                    C.evidence.notes.push_back(
                        "conjugate type {1, 4, 8} and no generating set with "
                        "[x1,x2] = 1 = [x3,x4]: case B2b");
                } else {
                    C.evidence.notes.push_back("conjugate type {1, 4, 8} but a generating "
                                               "quadruple exists: no case");
                }
            } catch (const BudgetError& e) {
                C.kase = TheoremCase::undetermined;
                C.evidence.notes.push_back("quadruple search needs " +
                                           std::to_string(e.required) +
                                           " candidates, over the budget of " +
                                           std::to_string(budget));
            }
        } else {
            C.evidence.notes.push_back(
                "class-2 case: no breadth-1 element and conjugate type != {1, 4, 8}: no case");
        }
    } else {
        C.evidence.notes.push_back("order/class matches no case");
    }

    finish_classification(P, g2, C);
    return C;
}

char pick_theorem(const PcPresentation& P) { return P.p == 2 ? 'B' : 'A'; }

TheoremClassification classify(const PcPresentation& P, char theorem, u64 budget) {
    if (theorem == 'A') return classify_theorem_A(P, budget);
    if (theorem == 'B') return classify_theorem_B(P, budget);
    throw ConstraintError(std::string("unknown theorem '") + theorem + "', expected A or B");
}

const char* status_name(LemmaStatus s) {
    switch (s) {
    case LemmaStatus::pass: return "pass";
    case LemmaStatus::fail: return "fail";
    case LemmaStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

namespace {

// Does some central subgroup H of order p give a quotient G/H whose center
// has index exactly p^3?  Uses [x,G] = x^{-1} (class of x): the preimage of
// Z(G/H) is the union of the classes whose translate set lands inside H.
bool small_center_quotient_exists(const PcPresentation& P, const GroupFacts& F) {
    int p = P.p;
    // aggregate classes of size <= p by their translate set [x,G]
    std::map<std::vector<u64>, u64> weight;
    conjugacy_classes(P, [&](const Elt& rep, const std::vector<Elt>& orbit) {
        if (orbit.size() <= u64(p)) {
            Elt ri = P.inverse(rep);
            std::vector<u64> t;
            t.reserve(orbit.size());
            for (const Elt& o : orbit) {
                Elt x = ri;
                P.rmul_elt(x, o);
                t.push_back(P.code(x));
            }
            std::sort(t.begin(), t.end());
            weight[t] += orbit.size();
        }
        return true;
    });

    // distinct order-p subgroups of the center, as sorted code lists
    std::vector<std::vector<u64>> subs;
    for (u64 c : F.centre.codes) {
        if (c == 0) continue;
        Elt z = P.decode(c);
        if (P.element_order(z) != u64(p)) continue;
        std::vector<u64> h;
        Elt cur;
        for (int k = 0; k < p; ++k) {
            h.push_back(P.code(cur));
            P.rmul_elt(cur, z);
        }
        std::sort(h.begin(), h.end());
        if (std::find(subs.begin(), subs.end(), h) == subs.end()) subs.push_back(h);
    }

    u64 target = F.order / ipow(p, 3); // |preimage of Z(G/H)| for index p^3
    for (const std::vector<u64>& h : subs) {
        u64 pre = 0;
        for (const auto& [t, w] : weight)
            if (std::includes(h.begin(), h.end(), t.begin(), t.end())) pre += w;
        if (pre == target) return true;
    }
    return false;
}

} // namespace

std::vector<LemmaResult> lemma_suite(const PcPresentation& P) {
    return lemma_suite(P, group_facts(P));
}

std::vector<LemmaResult> lemma_suite(const PcPresentation& P, const GroupFacts& F) {
    std::vector<LemmaResult> out;
    const Subgroup& g2 = gamma2_of(F);
    int p = P.p;
    u64 p3 = ipow(p, 3), p4 = ipow(p, 4);
    bool g2_ea = is_elementary_abelian(P, g2);

    {
        LemmaResult r{"pth_powers_central", LemmaStatus::not_applicable, ""};
        if (g2.order != p4 || !g2_ea)
            r.detail = "gamma2 is not elementary abelian of order p^4 (|gamma2| = " +
                       pow_str(g2.order, p) + ")";
        else if (p == 2)
            r.detail = "no claim at p = 2";
        else if (p == 3 && F.nil_class > 3)
            r.detail = "no claim at p = 3 and class " + std::to_string(F.nil_class);
        else {
            r.status = LemmaStatus::pass;
            r.detail = "checked " + std::to_string(F.order) + " p-th powers, all central";
            for (u64 c = 0; c < F.order; ++c) {
                Elt xp = P.power_elt(P.decode(c), p);
                if (!F.centre.contains(P.code(xp))) {
                    r.status = LemmaStatus::fail;
                    r.detail = P.show(P.decode(c)) + "^" + std::to_string(p) + " = " +
                               P.show(xp) + " is not central";
                    break;
                }
            }
        }
        out.push_back(r);
    }

    {
        LemmaResult r{"center_meet_gamma2_not_maximal", LemmaStatus::not_applicable, ""};
        if (F.nil_class < 4)
            r.detail = "class " + std::to_string(F.nil_class) + " < 4";
        else {
            u64 meet = 0;
            for (u64 c : F.centre.codes)
                if (g2.contains(c)) ++meet;
            u64 index = g2.order / meet;
            r.status = index != u64(p) ? LemmaStatus::pass : LemmaStatus::fail;
            r.detail = "|gamma2 : Z meet gamma2| = " + pow_str(index, p);
        }
        out.push_back(r);
    }

    {
        LemmaResult r{"breadth_at_least_three", LemmaStatus::not_applicable, ""};
        if (g2.order != p4)
            r.detail = "|gamma2| = " + pow_str(g2.order, p) + " != p^4";
        else {
            r.status = F.classes.max_breadth >= 3 ? LemmaStatus::pass : LemmaStatus::fail;
            r.detail = "b(G) = " + std::to_string(F.classes.max_breadth);
        }
        out.push_back(r);
    }

    {
        LemmaResult r{"gamma2_p3_all_commutators", LemmaStatus::not_applicable, ""};
        if (g2.order != p3 || !g2_ea)
            r.detail = "gamma2 is not elementary abelian of order p^3 (|gamma2| = " +
                       pow_str(g2.order, p) + ")";
        else {
            CommutatorSummary S = commutator_set(P, g2, /*early_stop=*/true);
            r.status = S.equal ? LemmaStatus::pass : LemmaStatus::fail;
            r.detail = std::to_string(S.k.size()) + " of " + std::to_string(g2.order) +
                       " derived-subgroup elements are commutators";
        }
        out.push_back(r);
    }

    {
        LemmaResult r{"breadth_three_characterization", LemmaStatus::not_applicable, ""};
        if (p == 2)
            r.detail = "stated for odd p";
        else if (F.nil_class < 2)
            r.detail = "abelian";
        else {
            bool left = F.classes.max_breadth == 3;
            u64 zindex = F.order / F.centre.order;
            std::string matched;
            if (g2.order == p3 && zindex >= p4)
                matched = "|gamma2| = p^3 and |G:Z| >= p^4";
            else if (zindex == p4 && g2.order >= p4)
                matched = "|G:Z| = p^4 and |gamma2| >= p^4";
            else if (g2.order == p4 && small_center_quotient_exists(P, F))
                matched = "|gamma2| = p^4 and some order-p quotient has central index p^3";
            bool right = !matched.empty();
            r.status = left == right ? LemmaStatus::pass : LemmaStatus::fail;
            r.detail = "b(G) = " + std::to_string(F.classes.max_breadth) + "; " +
                       (right ? "holds: " + matched : "no condition holds");
        }
        out.push_back(r);
    }

    {
        LemmaResult r{"order_p_quotient_width_two", LemmaStatus::not_applicable, ""};
        int s = socle_start(P);
        int dim = P.n - s;
        std::vector<Word> cands;
        for (u64 v = 1; v < ipow(p, dim); ++v) {
            Word w;
            fp::Vec coord(dim, 0);
            u64 rest = v;
            for (int i = dim - 1; i >= 0; --i) {
                coord[i] = int(rest % p);
                rest /= p;
            }
            int lead = 0;
            while (coord[lead] == 0) ++lead;
            if (coord[lead] != 1) continue; // one representative per subgroup
            for (int i = 0; i < dim; ++i)
                if (coord[i]) w.push_back({s + i, coord[i]});
            if (!g2.contains(P.code(P.collect(w)))) continue;
            cands.push_back(w);
        }
        if (cands.empty())
            r.detail = "no central order-p subgroup of gamma2 inside the socle";
        else {
            bool found = false;
            for (const Word& w : cands) {
                PcPresentation Q = central_quotient(P, {w});
                std::vector<Subgroup> lcsQ = lower_central_series(Q);
                static const Subgroup trivial = trivial_subgroup();
                const Subgroup& g2q = lcsQ.size() >= 2 ? lcsQ[1] : trivial;
                if (!commutator_set(Q, g2q, /*early_stop=*/true).equal) continue;
                WidthReport W = two_commutator_width(P);
                r.status = W.width <= 2 ? LemmaStatus::pass : LemmaStatus::fail;
                r.detail = "K(G/H) = gamma2(G/H) for H = <" + P.show(P.collect(w)) +
                           ">; width in G = " + std::to_string(W.width);
                found = true;
                break;
            }
            if (!found)
                r.detail = "none of " + std::to_string(cands.size()) +
                           " order-p central quotients has full commutator coverage";
        }
        out.push_back(r);
    }

    return out;
}

} // namespace pgc
