#include "pgc/bilinear.hpp"

#include <algorithm>

#include "pgc/structure.hpp"

namespace pgc {

namespace {

fp::Vec zero_vec(int d) { return fp::Vec(d, 0); }

void add_scaled(fp::Vec& acc, const fp::Vec& v, int c, int p) {
    for (size_t t = 0; t < acc.size(); ++t)
        acc[t] = fp::norm(acc[t] + i64(c) * v[t], p);
}

bool is_zero(const fp::Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

} // namespace

int AltBilinearMap::pair_index(int i, int j) const {
    // row-major upper triangle: (0,1), (0,2), ..., (0,dv-1), (1,2), ...
    return i * dv - i * (i + 1) / 2 + (j - i - 1);
}

fp::Vec AltBilinearMap::at(int i, int j) const {
    if (i == j) return zero_vec(dw);
    if (i < j) return table[pair_index(i, j)];
    fp::Vec v = table[pair_index(j, i)];
    for (int& x : v) x = fp::norm(-x, p);
    return v;
}

fp::Vec AltBilinearMap::apply(const fp::Vec& u, const fp::Vec& v) const {
    fp::Vec acc = zero_vec(dw);
    for (int i = 0; i < dv; ++i)
        for (int j = i + 1; j < dv; ++j) {
            int c = fp::norm(i64(u[i]) * v[j] - i64(u[j]) * v[i], p);
            if (c != 0) add_scaled(acc, table[pair_index(i, j)], c, p);
        }
    return acc;
}

fp::Mat AltBilinearMap::slice(const fp::Vec& v) const {
    // column j is B(v, e_j) = sum_i v_i B(e_i, e_j)
    fp::Mat m(dw, zero_vec(dv));
    for (int j = 0; j < dv; ++j)
        for (int i = 0; i < dv; ++i) {
            if (v[i] == 0 || i == j) continue;
            const fp::Vec& cell = table[pair_index(std::min(i, j), std::max(i, j))];
            int sign = i < j ? 1 : -1;
            for (int t = 0; t < dw; ++t)
                m[t][j] = fp::norm(m[t][j] + i64(sign) * v[i] * cell[t], p);
        }
    return m;
}

u64 AltBilinearMap::v_count() const {
    u64 c = 1;
    for (int i = 0; i < dv; ++i) c *= u64(p);
    return c;
}

u64 AltBilinearMap::w_count() const {
    u64 c = 1;
    for (int i = 0; i < dw; ++i) c *= u64(p);
    return c;
}

fp::Vec AltBilinearMap::v_decode(u64 c) const {
    fp::Vec v(dv);
    for (int i = dv - 1; i >= 0; --i) {
        v[i] = int(c % u64(p));
        c /= u64(p);
    }
    return v;
}

fp::Vec AltBilinearMap::w_decode(u64 c) const {
    fp::Vec w(dw);
    for (int i = dw - 1; i >= 0; --i) {
        w[i] = int(c % u64(p));
        c /= u64(p);
    }
    return w;
}

u64 AltBilinearMap::v_code(const fp::Vec& v) const {
    u64 c = 0;
    for (int i = 0; i < dv; ++i) c = c * u64(p) + u64(v[i]);
    return c;
}

u64 AltBilinearMap::w_code(const fp::Vec& w) const {
    u64 c = 0;
    for (int i = 0; i < dw; ++i) c = c * u64(p) + u64(w[i]);
    return c;
}

BilinearModel extract_bilinear(const PcPresentation& P) {
    auto series = lower_central_series(P);
    int cls = nilpotency_class(series);
    if (cls != 2)
        throw HypothesisError("bilinear model needs nilpotency class exactly 2, got class " +
                              std::to_string(cls));
    const Subgroup& gamma2 = series[1];
    Subgroup Z = center(P);
    if (Z.order != gamma2.order || Z.codes != gamma2.codes)
        throw HypothesisError("bilinear model needs Z(G) = gamma_2(G); orders " +
                              std::to_string(Z.order) + " vs " + std::to_string(gamma2.order));
    if (!is_elementary_abelian(P, gamma2))
        throw HypothesisError("bilinear model needs gamma_2(G) elementary abelian");

    BilinearModel M;
    M.map.p = P.p;
    M.map.dw = logp(gamma2.order, P.p);
    M.map.dv = P.n - M.map.dw;

    for (int i = 0; i < P.n; ++i) {
        if (gamma2.contains(P.code(P.gen(i))))
            M.w_gens.push_back(i);
        else
            M.v_gens.push_back(i);
    }
    if (int(M.w_gens.size()) != M.map.dw || M.w_gens != [&] {
            std::vector<int> suffix;
            for (int i = M.map.dv; i < P.n; ++i) suffix.push_back(i);
            return suffix;
        }())
        throw HypothesisError("bilinear model needs gamma_2 spanned by a suffix of the pc generators");
    {
        std::vector<Elt> wg;
        for (int i : M.w_gens) wg.push_back(P.gen(i));
        if (closure(P, wg).order != gamma2.order)
            throw HypothesisError("bilinear model needs gamma_2 spanned by a suffix of the pc generators");
    }
    // exponent-p quotient: it is enough that every pc generator's p-th power
    // is central, since (xy)^p = x^p y^p [y,x]^{p(p-1)/2} in class 2
    for (int i : M.v_gens)
        if (!gamma2.contains(P.code(P.power[i])))
            throw HypothesisError("bilinear model needs G/Z(G) elementary abelian; generator " +
                                  P.labels[i] + " has a p-th power outside the center");

    int dv = M.map.dv, dw = M.map.dw;
    for (int a = 0; a < dv; ++a)
        for (int b = a + 1; b < dv; ++b) {
            Elt c = P.commutator(P.gen(M.v_gens[a]), P.gen(M.v_gens[b]));
            M.map.table.push_back(model_coords(P, M, c));
        }

    // stem condition: the pairwise commutators must span all of W
    fp::Mat rows = M.map.table;
    if (rows.empty()) rows.push_back(zero_vec(dw));
    if (fp::rank(rows, P.p) != dw)
        throw HypothesisError("bilinear model needs gamma_2 generated by the basis commutators");
    return M;
}

Elt model_lift(const PcPresentation& P, const BilinearModel& M, const fp::Vec& w) {
    Elt g;
    for (size_t t = 0; t < M.w_gens.size(); ++t)
        g.e[M.w_gens[t]] = std::uint8_t(fp::norm(w[t], P.p));
    return g;
}

fp::Vec model_coords(const PcPresentation& P, const BilinearModel& M, const Elt& g) {
    fp::Vec w(M.w_gens.size(), 0);
    for (size_t t = 0; t < M.w_gens.size(); ++t) w[t] = g.e[M.w_gens[t]];
    if (model_lift(P, M, w) != g)
        throw Error("element " + P.show(g) + " lies outside the model's W span");
    return w;
}

std::vector<u64> image_codes(const AltBilinearMap& B) {
    std::vector<bool> hit(B.w_count(), false);
    hit[0] = true;
    u64 nv = B.v_count();
    for (u64 cu = 1; cu < nv; ++cu) {
        fp::Vec u = B.v_decode(cu);
        for (u64 cv = cu + 1; cv < nv; ++cv) {
            fp::Vec w = B.apply(u, B.v_decode(cv));
            u64 c = B.w_code(w);
            if (!hit[c]) {
                hit[c] = true;
                // the image is closed under negation: B(v,u) = -B(u,v)
                for (int& x : w) x = fp::norm(-x, B.p);
                hit[B.w_code(w)] = true;
            }
        }
    }
    std::vector<u64> out;
    for (u64 c = 0; c < hit.size(); ++c)
        if (hit[c]) out.push_back(c);
    return out;
}

int slice_rank(const AltBilinearMap& B, const fp::Vec& v) {
    if (is_zero(v)) return 0;
    return fp::rank(B.slice(v), B.p);
}

std::vector<int> slice_rank_spectrum(const AltBilinearMap& B) {
    std::vector<int> ranks;
    u64 nv = B.v_count();
    ranks.reserve(nv - 1);
    for (u64 c = 1; c < nv; ++c) ranks.push_back(slice_rank(B, B.v_decode(c)));
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

std::vector<u64> conjugate_type_from_B(const AltBilinearMap& B) {
    std::vector<u64> sizes{1};
    u64 nv = B.v_count();
    for (u64 c = 1; c < nv; ++c) {
        int r = slice_rank(B, B.v_decode(c));
        u64 s = 1;
        for (int i = 0; i < r; ++i) s *= u64(B.p);
        sizes.push_back(s);
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

namespace {

// all vectors of the row space of basis, excluding zero
std::vector<fp::Vec> span_nonzero(const fp::Mat& basis, int d, int p) {
    std::vector<fp::Vec> out;
    u64 count = 1;
    for (size_t i = 0; i < basis.size(); ++i) count *= u64(p);
    for (u64 c = 1; c < count; ++c) {
        fp::Vec v(d, 0);
        u64 rest = c;
        for (size_t i = basis.size(); i-- > 0;) {
            int coef = int(rest % u64(p));
            rest /= u64(p);
            if (coef != 0) add_scaled(v, basis[i], coef, p);
        }
        if (!is_zero(v)) out.push_back(v);
    }
    return out;
}

int stack_rank(const std::vector<const fp::Vec*>& rows, int p) {
    fp::Mat m;
    for (const fp::Vec* r : rows) m.push_back(*r);
    return fp::rank(m, p);
}

} // namespace

std::optional<Quadruple> hyperbolic_quadruple_search(const AltBilinearMap& B, u64 budget) {
    if (B.dv != 4)
        throw ConstraintError("hyperbolic quadruple search needs dim V = 4, got " +
                              std::to_string(B.dv));
    int p = B.p;
    u64 work = 0;
    auto charge = [&](u64 amount) {
        work += amount;
        if (work > budget)
            throw BudgetError(work, "hyperbolic quadruple search exceeded its work budget");
    };

    // projective representatives: first non-zero coordinate equal to 1
    std::vector<fp::Vec> proj;
    for (u64 c = 1; c < B.v_count(); ++c) {
        fp::Vec v = B.v_decode(c);
        int lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) proj.push_back(v);
    }
    // non-zero kernel vectors of B(v, .), cached per projective representative
    std::vector<std::vector<fp::Vec>> kers(proj.size());
    std::vector<char> have(proj.size(), 0);
    auto kernel_of = [&](size_t idx) -> const std::vector<fp::Vec>& {
        if (!have[idx]) {
            kers[idx] = span_nonzero(fp::kernel_basis(B.slice(proj[idx]), p), B.dv, p);
            have[idx] = 1;
        }
        return kers[idx];
    };

    for (size_t i1 = 0; i1 < proj.size(); ++i1) {
        const fp::Vec& v1 = proj[i1];
        charge(1);
        for (const fp::Vec& v2 : kernel_of(i1)) {
            if (stack_rank({&v1, &v2}, p) != 2) continue;
            for (size_t i3 = 0; i3 < proj.size(); ++i3) {
                const fp::Vec& v3 = proj[i3];
                charge(1);
                if (stack_rank({&v1, &v2, &v3}, p) != 3) continue;
                const auto& ker3 = kernel_of(i3);
                charge(ker3.size());
                for (const fp::Vec& v4 : ker3)
                    if (stack_rank({&v1, &v2, &v3, &v4}, p) == 4)
                        return Quadruple{v1, v2, v3, v4};
            }
        }
    }
    return std::nullopt;
}

u64 gl_order(int d, int p) {
    unsigned __int128 pd = 1;
    for (int i = 0; i < d; ++i) pd *= unsigned(p);
    unsigned __int128 acc = 1;
    unsigned __int128 pi = 1;
    const unsigned __int128 cap = ~u64(0);
    for (int i = 0; i < d; ++i) {
        unsigned __int128 term = pd - pi;
        if (acc > cap / term) return ~u64(0); // saturate
        acc *= term;
        pi *= unsigned(p);
    }
    return u64(acc);
}

namespace {

// incremental echelon of theta-constraints: rows [w1 | w2] of width 2*dw,
// reduced on the w1 half; a row with zero w1 part and non-zero w2 part is a
// contradiction (theta would not be well defined)
struct ThetaEchelon {
    int dw, p;
    std::vector<fp::Vec> rows; // each of length 2*dw, leading pivot normalized
    std::vector<int> pivots;   // pivot column (< dw) per row

    // returns false on contradiction; true otherwise (row absorbed or inserted)
    bool add(fp::Vec row) {
        for (size_t r = 0; r < rows.size(); ++r) {
            int c = row[pivots[r]];
            if (c != 0) add_scaled(row, rows[r], fp::norm(-c, p), p);
        }
        int lead = -1;
        for (int c = 0; c < dw; ++c)
            if (row[c] != 0) {
                lead = c;
                break;
            }
        if (lead < 0) {
            for (int c = dw; c < 2 * dw; ++c)
                if (row[c] != 0) return false;
            return true; // redundant constraint
        }
        int iv = fp::inv(row[lead], p);
        for (int& x : row) x = fp::mul(x, iv, p);
        rows.push_back(std::move(row));
        pivots.push_back(lead);
        return true;
    }
};

} // namespace

bool pseudo_isometry(const AltBilinearMap& B1, const AltBilinearMap& B2, u64 budget) {
    if (B1.p != B2.p || B1.dv != B2.dv || B1.dw != B2.dw)
        throw ConstraintError("pseudo-isometry needs matching p and dimensions");
    u64 required = gl_order(B1.dv, B1.p);
    if (required > budget)
        throw BudgetError(required, "pseudo-isometry search needs |GL(" + std::to_string(B1.dv) +
                                        "," + std::to_string(B1.p) + ")| = " +
                                        std::to_string(required) + " > budget " +
                                        std::to_string(budget));

    // image size and slice-rank spectrum are invariants; mismatch decides "no"
    if (image_codes(B1).size() != image_codes(B2).size()) return false;
    if (slice_rank_spectrum(B1) != slice_rank_spectrum(B2)) return false;

    int p = B1.p, dv = B1.dv, dw = B1.dw;
    u64 nv = B1.v_count();
    // theta is pinned exactly on the span of B1's basis values; an invertible
    // extension to all of W exists iff the right-hand sides reach equal rank
    int lhs_rank = B1.table.empty() ? 0 : fp::rank(B1.table, p);

    std::vector<fp::Vec> phi;                 // chosen images phi(e_0..e_{k-1})
    std::vector<fp::Vec> indep;               // echelon basis of their span
    ThetaEchelon theta{dw, p, {}, {}};
    std::vector<size_t> indep_marks, theta_marks;

    // reduce v against indep; empty result means dependent
    auto reduce = [&](fp::Vec v) {
        for (const fp::Vec& b : indep) {
            int lead = 0;
            while (b[lead] == 0) ++lead;
            if (v[lead] != 0) add_scaled(v, b, fp::norm(-v[lead], p), p);
        }
        return v;
    };

    std::function<bool()> dfs = [&]() -> bool {
        int k = int(phi.size());
        if (k == dv) {
            fp::Mat rhs;
            for (int i = 0; i < dv; ++i)
                for (int j = i + 1; j < dv; ++j)
                    rhs.push_back(B2.apply(phi[i], phi[j]));
            int r = rhs.empty() ? 0 : fp::rank(rhs, p);
            return r == lhs_rank;
        }
        for (u64 c = 1; c < nv; ++c) {
            fp::Vec cand = B2.v_decode(c);
            fp::Vec red = reduce(cand);
            if (is_zero(red)) continue; // phi must stay invertible
            indep_marks.push_back(indep.size());
            theta_marks.push_back(theta.rows.size());
            int lead = 0;
            while (red[lead] == 0) ++lead;
            int iv = fp::inv(red[lead], p);
            for (int& x : red) x = fp::mul(x, iv, p);
            indep.push_back(std::move(red));
            phi.push_back(std::move(cand));

            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                fp::Vec row = B1.at(i, k);
                fp::Vec rhs = B2.apply(phi[i], phi[k]);
                row.insert(row.end(), rhs.begin(), rhs.end());
                ok = theta.add(std::move(row));
            }
            if (ok && dfs()) return true;

            phi.pop_back();
            indep.resize(indep_marks.back());
            theta.rows.resize(theta_marks.back());
            theta.pivots.resize(theta_marks.back());
            indep_marks.pop_back();
            theta_marks.pop_back();
        }
        return false;
    };
    return dfs();
}

} // namespace pgc
