#include "pgc/commutators.hpp"

#include <algorithm>
#include <unordered_set>

namespace pgc {

namespace {

Subgroup derived_subgroup(const PcPresentation& P) {
    std::vector<Elt> comms;
    for (int j = 1; j < P.n; ++j)
        for (int i = 0; i < j; ++i) {
            const Elt& t = P.comm_tail(j, i);
            if (!P.is_identity(t)) comms.push_back(t);
        }
    return normal_closure(P, comms);
}

} // namespace

CommutatorSummary commutator_set(const PcPresentation& P, const Subgroup& gamma2,
                                 bool early_stop) {
    std::unordered_set<u64> k;
    k.reserve(gamma2.order);
    k.insert(0);
    std::optional<u64> escaped; // commutator found outside gamma2 (engine bug)
    std::vector<Elt> inv_gens;
    for (int i = 0; i < P.n; ++i) inv_gens.push_back(P.inverse(P.gen(i)));
    std::vector<Elt> fresh; // inserted but not yet closed under conjugation
    auto add = [&](const Elt& t) {
        u64 tc = P.code(t);
        if (!k.insert(tc).second) return true;
        if (!gamma2.contains(tc)) {
            escaped = tc;
            return false;
        }
        fresh.push_back(t);
        return true;
    };
    // [x^g, y] = [x, y^(g^-1)]^g, so K is the conjugation closure of the sets
    // rep^-1 * class taken over one representative per class
    conjugacy_classes(P, [&](const Elt& rep, const std::vector<Elt>& orbit) {
        if (orbit.size() == 1) return true; // central element: only contributes id
        Elt xi = P.inverse(rep);
        for (const Elt& v : orbit) {
            Elt t = xi;
            P.rmul_elt(t, v);
            if (!add(t)) return false;
        }
        while (!fresh.empty()) {
            Elt t = fresh.back();
            fresh.pop_back();
            for (int i = 0; i < P.n; ++i) {
                Elt y = inv_gens[i];
                P.rmul_elt(y, t);
                P.rmul_gen(y, i, 1);
                if (!add(y)) return false;
            }
        }
        if (early_stop && k.size() == gamma2.order) return false;
        return true;
    });
    if (escaped)
        throw Error("commutator with code " + std::to_string(*escaped) +
                    " lies outside the derived subgroup");
    CommutatorSummary S;
    S.k.assign(k.begin(), k.end());
    std::sort(S.k.begin(), S.k.end());
    if (gamma2.full) {
        u64 N = P.group_order();
        S.gamma2.resize(N);
        for (u64 c = 0; c < N; ++c) S.gamma2[c] = c;
    } else {
        S.gamma2 = gamma2.codes;
    }
    std::set_difference(S.gamma2.begin(), S.gamma2.end(), S.k.begin(), S.k.end(),
                        std::back_inserter(S.gamma2_minus_k));
    S.equal = S.gamma2_minus_k.empty();
    return S;
}

CommutatorSummary commutator_set(const PcPresentation& P) {
    return commutator_set(P, derived_subgroup(P));
}

std::vector<u64> x_commutators(const PcPresentation& P, const Elt& x) {
    std::vector<Elt> inv_gens;
    for (int i = 0; i < P.n; ++i) inv_gens.push_back(P.inverse(P.gen(i)));
    std::unordered_set<u64> seen;
    std::vector<Elt> orbit;
    seen.insert(P.code(x));
    orbit.push_back(x);
    for (size_t oi = 0; oi < orbit.size(); ++oi) {
        Elt v = orbit[oi];
        for (int i = 0; i < P.n; ++i) {
            Elt y = inv_gens[i];
            P.rmul_elt(y, v);
            P.rmul_gen(y, i, 1);
            if (seen.insert(P.code(y)).second) orbit.push_back(y);
        }
    }
    Elt xi = P.inverse(x);
    std::vector<u64> out;
    out.reserve(orbit.size());
    for (const Elt& v : orbit) {
        Elt t = xi;
        P.rmul_elt(t, v);
        out.push_back(P.code(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// orbit of x with BFS parents; returns a conjugator w with x^w = target, if any
std::optional<Elt> conjugator_to(const PcPresentation& P, const Elt& x, const Elt& target) {
    struct Node {
        Elt elt;
        int parent;
        int gen;
    };
    std::vector<Elt> inv_gens;
    for (int i = 0; i < P.n; ++i) inv_gens.push_back(P.inverse(P.gen(i)));
    std::unordered_set<u64> seen;
    std::vector<Node> nodes;
    seen.insert(P.code(x));
    nodes.push_back({x, -1, -1});
    u64 want = P.code(target);
    int found = (P.code(x) == want) ? 0 : -1;
    for (size_t oi = 0; oi < nodes.size() && found < 0; ++oi) {
        Elt v = nodes[oi].elt;
        for (int i = 0; i < P.n; ++i) {
            Elt y = inv_gens[i];
            P.rmul_elt(y, v);
            P.rmul_gen(y, i, 1);
            u64 yc = P.code(y);
            if (seen.insert(yc).second) {
                nodes.push_back({y, static_cast<int>(oi), i});
                if (yc == want) {
                    found = static_cast<int>(nodes.size()) - 1;
                    break;
                }
            }
        }
    }
    if (found < 0) return std::nullopt;
    std::vector<int> path; // generator indices from root to the hit
    for (int at = found; at > 0; at = nodes[at].parent) path.push_back(nodes[at].gen);
    std::reverse(path.begin(), path.end());
    Elt w = P.identity();
    for (int g : path) P.rmul_gen(w, g, 1); // x^(ab) = (x^a)^b
    return w;
}

} // namespace

bool is_commutator(const PcPresentation& P, const Elt& g) {
    if (P.is_identity(g)) return true;
    u64 N = P.group_order();
    if (N > (u64(1) << 31)) throw Error("is_commutator: group too large to enumerate");
    for (u64 c = 0; c < N; ++c) {
        Elt x = P.decode(c);
        Elt xg = x;
        P.rmul_elt(xg, g);
        if (conjugator_to(P, x, xg)) return true;
    }
    return false;
}

std::optional<CommutatorWitness> commutator_witness(const PcPresentation& P, const Elt& g) {
    u64 N = P.group_order();
    if (N > (u64(1) << 31)) throw Error("commutator_witness: group too large to enumerate");
    for (u64 c = 0; c < N; ++c) {
        Elt x = P.decode(c);
        Elt xg = x;
        P.rmul_elt(xg, g);
        std::optional<Elt> w = conjugator_to(P, x, xg);
        if (!w) continue;
        // all solutions of [x,y] = g form the coset centralizer(x) * w
        Subgroup cent = centralizer(P, x);
        u64 best = ~u64(0);
        Elt besty = *w;
        for (u64 zc : cent.codes) {
            Elt y = P.decode(zc);
            P.rmul_elt(y, *w);
            u64 yc = P.code(y);
            if (yc < best) {
                best = yc;
                besty = y;
            }
        }
        if (!(P.commutator(x, besty) == g)) throw Error("commutator witness verification failed");
        return CommutatorWitness{x, besty};
    }
    return std::nullopt;
}

WidthReport two_commutator_width(const PcPresentation& P, const CommutatorSummary& S) {
    WidthReport R;
    if (S.equal) return R; // width 1
    R.width = 2;
    std::unordered_set<u64> kset(S.k.begin(), S.k.end());
    bool first_missing = true;
    for (u64 mc : S.gamma2_minus_k) {
        Elt t = P.decode(mc);
        std::optional<std::pair<u64, u64>> pair;
        for (u64 kc : S.k) {
            // t = k * k' requires k' = k^-1 t in K
            Elt rest = P.inverse(P.decode(kc));
            P.rmul_elt(rest, t);
            u64 rc = P.code(rest);
            if (kset.count(rc)) {
                pair = {kc, rc};
                break;
            }
        }
        if (!pair) {
            R.width = 3;
            R.deep_element = mc;
            R.pair_witness.reset();
            return R;
        }
        if (first_missing) {
            R.deep_element = mc;
            R.pair_witness = pair;
            first_missing = false;
        }
    }
    return R;
}

WidthReport two_commutator_width(const PcPresentation& P) {
    return two_commutator_width(P, commutator_set(P));
}

} // namespace pgc
