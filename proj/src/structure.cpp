#include "pgc/structure.hpp"

#include <algorithm>
#include <unordered_set>

namespace pgc {

bool Subgroup::contains(u64 code) const {
    if (full) return true;
    return std::binary_search(codes.begin(), codes.end(), code);
}

int logp(u64 v, int p) {
    int k = 0;
    while (v > 1) {
        if (v % static_cast<u64>(p) != 0)
            throw Error("logp: " + std::to_string(v) + " is not a power of " + std::to_string(p));
        v /= static_cast<u64>(p);
        ++k;
    }
    return k;
}

Subgroup trivial_subgroup() {
    Subgroup s;
    s.codes = {0};
    s.order = 1;
    return s;
}

Subgroup full_group(const PcPresentation& P) {
    Subgroup s;
    s.full = true;
    s.order = P.group_order();
    for (int i = 0; i < P.n; ++i) s.gens.push_back(P.gen(i));
    return s;
}

Subgroup closure(const PcPresentation& P, const std::vector<Elt>& gens) {
    std::unordered_set<u64> seen;
    std::vector<Elt> queue;
    Elt id = P.identity();
    seen.insert(P.code(id));
    queue.push_back(id);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Elt x = queue[qi]; // copy: queue may reallocate
        for (const Elt& g : gens) {
            Elt y = x;
            P.rmul_elt(y, g);
            if (seen.insert(P.code(y)).second) queue.push_back(y);
        }
    }
    Subgroup s;
    s.codes.assign(seen.begin(), seen.end());
    std::sort(s.codes.begin(), s.codes.end());
    s.order = s.codes.size();
    s.gens = gens;
    return s;
}

Subgroup normal_closure(const PcPresentation& P, const std::vector<Elt>& gens) {
    std::vector<Elt> work = gens;
    Subgroup H;
    for (;;) {
        H = closure(P, work);
        std::unordered_set<u64> inside(H.codes.begin(), H.codes.end());
        std::vector<Elt> missing;
        std::unordered_set<u64> missing_codes;
        for (u64 c : H.codes) {
            Elt x = P.decode(c);
            for (int i = 0; i < P.n; ++i) {
                Elt y = P.conjugate(x, P.gen(i));
                u64 yc = P.code(y);
                if (!inside.count(yc) && missing_codes.insert(yc).second) missing.push_back(y);
            }
        }
        if (missing.empty()) break;
        work.insert(work.end(), missing.begin(), missing.end());
    }
    H.gens = small_generating_set(P, H.codes);
    return H;
}

std::vector<Subgroup> lower_central_series(const PcPresentation& P) {
    std::vector<Subgroup> series;
    series.push_back(full_group(P));
    std::vector<Elt> prev_gens = series.back().gens;
    while (series.back().order > 1) {
        std::vector<Elt> comms;
        std::unordered_set<u64> comm_codes;
        for (const Elt& x : prev_gens) {
            for (int i = 0; i < P.n; ++i) {
                Elt c = P.commutator(x, P.gen(i));
                u64 cc = P.code(c);
                if (cc != 0 && comm_codes.insert(cc).second) comms.push_back(c);
            }
        }
        if (comms.empty()) {
            series.push_back(trivial_subgroup());
            break;
        }
        series.push_back(normal_closure(P, comms));
        prev_gens = series.back().gens;
    }
    // containment re-check [gamma_k, G] <= gamma_{k+1} on materialized terms
    for (size_t k = 1; k + 1 < series.size(); ++k) {
        const Subgroup& nxt = series[k + 1];
        for (u64 c : series[k].codes) {
            Elt x = P.decode(c);
            for (int i = 0; i < P.n; ++i) {
                Elt cm = P.commutator(x, P.gen(i));
                if (!nxt.contains(P.code(cm)))
                    throw Error("lower central series containment check failed at term " +
                                std::to_string(k + 1));
            }
        }
    }
    return series;
}

int nilpotency_class(const std::vector<Subgroup>& series) {
    // series runs G = gamma_1 > ... > gamma_{c+1} = 1
    return static_cast<int>(series.size()) - 1;
}

namespace {

constexpr u64 kScanLimit = u64(1) << 31;

void require_scannable(const PcPresentation& P, const char* what) {
    if (P.group_order() > kScanLimit)
        throw Error(std::string(what) + ": group too large to enumerate");
}

} // namespace

Subgroup center(const PcPresentation& P) {
    require_scannable(P, "center");
    u64 N = P.group_order();
    std::vector<u64> codes;
    for (u64 c = 0; c < N; ++c) {
        Elt x = P.decode(c);
        bool central = true;
        for (int i = 0; i < P.n && central; ++i) {
            Elt a = x;
            P.rmul_gen(a, i, 1);
            Elt b = P.gen(i);
            P.rmul_elt(b, x);
            central = (a == b);
        }
        if (central) codes.push_back(c);
    }
    Subgroup s;
    s.codes = std::move(codes); // ascending by construction
    s.order = s.codes.size();
    s.gens = small_generating_set(P, s.codes);
    return s;
}

Subgroup centralizer(const PcPresentation& P, const Elt& x) {
    require_scannable(P, "centralizer");
    u64 N = P.group_order();
    Subgroup Z = center(P);
    std::vector<bool> visited(N, false);
    std::vector<u64> codes;
    for (u64 c = 0; c < N; ++c) {
        if (visited[c]) continue;
        Elt t = P.decode(c);
        // commuting with x is constant on cosets of the center
        std::vector<u64> coset;
        coset.reserve(Z.order);
        for (u64 zc : Z.codes) {
            Elt y = t;
            P.rmul_elt(y, P.decode(zc));
            u64 yc = P.code(y);
            visited[yc] = true;
            coset.push_back(yc);
        }
        if (P.is_identity(P.commutator(x, t)))
            codes.insert(codes.end(), coset.begin(), coset.end());
    }
    std::sort(codes.begin(), codes.end());
    Subgroup s;
    s.codes = std::move(codes);
    s.order = s.codes.size();
    s.gens = small_generating_set(P, s.codes);
    return s;
}

ClassData conjugacy_classes(const PcPresentation& P, const ClassCallback& cb) {
    require_scannable(P, "conjugacy_classes");
    u64 N = P.group_order();
    std::vector<Elt> inv_gens;
    for (int i = 0; i < P.n; ++i) inv_gens.push_back(P.inverse(P.gen(i)));
    std::vector<bool> visited(N, false);
    ClassData data;
    u64 total = 0;
    u64 max_size = 1;
    std::vector<Elt> orbit;
    for (u64 c = 0; c < N; ++c) {
        if (visited[c]) continue;
        orbit.clear();
        orbit.push_back(P.decode(c));
        visited[c] = true;
        for (size_t oi = 0; oi < orbit.size(); ++oi) {
            Elt x = orbit[oi]; // copy: orbit may reallocate
            for (int i = 0; i < P.n; ++i) {
                Elt y = inv_gens[i];
                P.rmul_elt(y, x);
                P.rmul_gen(y, i, 1);
                u64 yc = P.code(y);
                if (!visited[yc]) {
                    visited[yc] = true;
                    orbit.push_back(y);
                }
            }
        }
        u64 sz = orbit.size();
        data.classes.push_back({c, sz});
        total += sz;
        max_size = std::max(max_size, sz);
        if (cb && !cb(orbit[0], orbit)) {
            data.completed = false;
            break;
        }
    }
    if (data.completed && total != N) throw Error("conjugacy class sweep lost elements");
    std::vector<u64> sizes;
    for (const ConjClass& cl : data.classes) sizes.push_back(cl.size);
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    data.conjugate_type = std::move(sizes);
    data.max_breadth = logp(max_size, P.p);
    return data;
}

int breadth(const PcPresentation& P, const Elt& x) {
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
    return logp(orbit.size(), P.p);
}

int group_breadth(const PcPresentation& P) {
    return conjugacy_classes(P).max_breadth;
}

int frattini_rank(const PcPresentation& P) {
    std::vector<Elt> gens;
    for (int j = 1; j < P.n; ++j)
        for (int i = 0; i < j; ++i) {
            const Elt& t = P.comm_tail(j, i);
            if (!P.is_identity(t)) gens.push_back(t);
        }
    for (int i = 0; i < P.n; ++i) {
        const Elt& t = P.power[i]; // g_i^p as an element
        if (!P.is_identity(t)) gens.push_back(t);
    }
    Subgroup phi = normal_closure(P, gens);
    return P.n - logp(phi.order, P.p);
}

namespace {

// stream over the elements of H (codes when materialized, everything when full)
template <typename F>
void for_each_element(const PcPresentation& P, const Subgroup& H, F&& f) {
    if (H.full) {
        u64 N = P.group_order();
        if (N > kScanLimit) throw Error("subgroup scan: group too large to enumerate");
        for (u64 c = 0; c < N; ++c) f(P.decode(c));
    } else {
        for (u64 c : H.codes) f(P.decode(c));
    }
}

// greedy closure of the candidate elements produced by the scan
template <typename F>
Subgroup greedy_span(const PcPresentation& P, const Subgroup& H, F&& candidate) {
    std::vector<Elt> gens;
    Subgroup cur = trivial_subgroup();
    std::unordered_set<u64> inside(cur.codes.begin(), cur.codes.end());
    for_each_element(P, H, [&](const Elt& x) {
        Elt y = candidate(x);
        if (!inside.count(P.code(y))) {
            gens.push_back(y);
            cur = closure(P, gens);
            inside = std::unordered_set<u64>(cur.codes.begin(), cur.codes.end());
        }
    });
    cur.gens = small_generating_set(P, cur.codes);
    return cur;
}

} // namespace

Subgroup omega1(const PcPresentation& P, const Subgroup& H) {
    return greedy_span(P, H, [&](const Elt& x) {
        return P.is_identity(P.power_elt(x, P.p)) ? x : P.identity();
    });
}

Subgroup mho1(const PcPresentation& P, const Subgroup& H) {
    return greedy_span(P, H, [&](const Elt& x) { return P.power_elt(x, P.p); });
}

u64 exponent(const PcPresentation& P, const Subgroup& H) {
    u64 e = 1;
    for_each_element(P, H, [&](const Elt& x) { e = std::max(e, P.element_order(x)); });
    return e;
}

bool is_abelian(const PcPresentation& P, const Subgroup& H) {
    const std::vector<Elt>& g = H.gens;
    for (size_t a = 0; a < g.size(); ++a)
        for (size_t b = a + 1; b < g.size(); ++b)
            if (!P.is_identity(P.commutator(g[a], g[b]))) return false;
    return true;
}

bool is_elementary_abelian(const PcPresentation& P, const Subgroup& H) {
    if (!is_abelian(P, H)) return false;
    for (const Elt& g : H.gens)
        if (!P.is_identity(P.power_elt(g, P.p))) return false;
    return true;
}

std::vector<Elt> small_generating_set(const PcPresentation& P, const std::vector<u64>& codes) {
    std::vector<Elt> gens;
    std::unordered_set<u64> inside;
    inside.insert(0);
    for (u64 c : codes) {
        if (inside.count(c)) continue;
        gens.push_back(P.decode(c));
        Subgroup cur = closure(P, gens);
        inside = std::unordered_set<u64>(cur.codes.begin(), cur.codes.end());
    }
    return gens;
}

} // namespace pgc
