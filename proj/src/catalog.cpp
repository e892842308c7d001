#include "pgc/catalog.hpp"

#include <algorithm>

#include "pgc/fp.hpp"

namespace pgc {

namespace {

int need_prime(const CatalogParams& q, const char* entry) {
    if (!fp::is_prime(q.p))
        throw ConstraintError(std::string(entry) + ": p must be prime, got " +
                              std::to_string(q.p));
    return q.p;
}

int need_odd_prime(const CatalogParams& q, const char* entry) {
    int p = need_prime(q, entry);
    if (p < 3) throw ConstraintError(std::string(entry) + ": p must be odd, got 2");
    return p;
}

int need_prime_at_least_5(const CatalogParams& q, const char* entry) {
    int p = need_prime(q, entry);
    if (p < 5)
        throw ConstraintError(std::string(entry) + ": p must be at least 5, got " +
                              std::to_string(p));
    return p;
}

// the caller may override the default (least) non-residue through r
int nonresidue_param(const CatalogParams& q, int p, const char* entry) {
    if (!q.r) return fp::smallest_nonresidue(p);
    int r = *q.r;
    if (r < 1 || r >= p || fp::is_quadratic_residue(r, p))
        throw ConstraintError(std::string(entry) + ": r = " + std::to_string(r) +
                              " is not a quadratic non-residue mod " + std::to_string(p));
    return r;
}

int bit_param(std::optional<int> v, const char* entry, const char* which) {
    int x = v.value_or(0);
    if (x != 0 && x != 1)
        throw ConstraintError(std::string(entry) + ": " + which + " must be 0 or 1, got " +
                              std::to_string(x));
    return x;
}

PcPresentation build_heisenberg(const CatalogParams& q) {
    int p = need_prime(q, "heisenberg");
    PcPresentation P = PcPresentation::make(p, 3);
    P.labels = {"x", "y", "z"};
    P.set_comm(1, 0, 2, 1);
    P.init();
    return P;
}

PcPresentation build_extraspecial_p3(const CatalogParams& q) {
    int p = need_prime(q, "extraspecial_p3");
    PcPresentation P = PcPresentation::make(p, 3);
    P.labels = {"x", "y", "z"};
    P.set_comm(1, 0, 2, 1);
    P.set_power(0, 2, 1); // x has order p^2
    P.init();
    return P;
}

// pair position of (i,j), i < j, among (0,1), (0,2), ..., (n-2,n-1)
int pair_pos(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

PcPresentation build_free_class2(const CatalogParams& q) {
    int p = need_odd_prime(q, "free_class2_expp");
    int n = q.n.value_or(4);
    if (n < 2 || n > 4)
        throw ConstraintError("free_class2_expp: n must be between 2 and 4, got " +
                              std::to_string(n));
    int total = n + n * (n - 1) / 2;
    PcPresentation P = PcPresentation::make(p, total);
    const char* letters = "abcd";
    for (int i = 0; i < n; ++i)
        P.labels[i] = n == 4 ? std::string(1, letters[i]) : "x" + std::to_string(i + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int u = n + pair_pos(n, i, j);
            P.labels[u] = n == 4 ? std::string("u") + letters[i] + letters[j]
                                 : "u" + std::to_string(i + 1) + std::to_string(j + 1);
            P.set_comm(j, i, u, 1); // u_ij = [x_j, x_i]
        }
    P.init();
    return P;
}

PcPresentation build_f_mod_r(const CatalogParams& q) {
    need_odd_prime(q, "F_mod_R");
    CatalogParams fq = q;
    fq.n = 4;
    PcPresentation F = build_free_class2(fq);
    // kill [b,d] = ubd^-1 and [a,d] = uad^-1
    int ubd = 4 + pair_pos(4, 1, 3), uad = 4 + pair_pos(4, 0, 3);
    return central_quotient(F, {Word{{ubd, 1}}, Word{{uad, 1}}});
}

PcPresentation build_f_mod_r1(const CatalogParams& q) {
    int p = need_odd_prime(q, "F_mod_R1");
    int r = nonresidue_param(q, p, "F_mod_R1");
    CatalogParams fq = q;
    fq.n = 4;
    PcPresentation F = build_free_class2(fq);
    int uab = 4 + pair_pos(4, 0, 1), ucd = 4 + pair_pos(4, 2, 3);
    int uac = 4 + pair_pos(4, 0, 2), ubd = 4 + pair_pos(4, 1, 3);
    // [a,b][c,d] and [a,c][b,d]^r, written in the u_ij = [x_j,x_i] basis
    return central_quotient(
        F, {Word{{uab, -1}, {ucd, -1}}, Word{{uac, -1}, {ubd, -i64(r)}}});
}

PcPresentation build_class2_type_1_p3(const CatalogParams& q) {
    int p = need_odd_prime(q, "class2_type_1_p3");
    int r = nonresidue_param(q, p, "class2_type_1_p3");
    PcPresentation P = PcPresentation::make(p, 8);
    P.labels = {"a", "b", "c", "d", "m1", "m3", "m4", "m5"};
    // m1 = [a,b], m3 = [b,c], m4 = [a,d], m5 = [b,d];
    // defining relations [c,d] = [a,b]^-1 and [a,c] = [b,d]^-r
    P.set_comm(1, 0, 4, p - 1);
    P.set_comm(2, 0, 7, r);
    P.set_comm(2, 1, 5, p - 1);
    P.set_comm(3, 0, 6, p - 1);
    P.set_comm(3, 1, 7, p - 1);
    P.set_comm(3, 2, 4, 1);
    P.init();
    return P;
}

PcPresentation build_phi23(const CatalogParams& q) {
    int p = need_prime_at_least_5(q, "phi23");
    PcPresentation P = PcPresentation::make(p, 6);
    P.labels = {"a", "a1", "a2", "a3", "a4", "g"};
    P.set_comm(1, 0, 2, 1); // [a1, a] = a2
    P.set_comm(2, 0, 3, 1); // [a2, a] = a3
    P.set_comm(3, 0, 4, 1); // [a3, a] = a4
    P.set_comm(2, 1, 5, p - 1); // [a1, a2] = g
    P.set_power(0, 5, 1);       // a^p = g
    P.init();
    return P;
}

PcPresentation build_phi40(const CatalogParams& q) {
    int p = need_prime_at_least_5(q, "phi40");
    PcPresentation P = PcPresentation::make(p, 6);
    P.labels = {"a1", "a2", "b", "b1", "b2", "g"};
    P.set_comm(1, 0, 2, p - 1); // [a1, a2] = b
    P.set_comm(2, 0, 3, 1);     // [b, a1] = b1
    P.set_comm(2, 1, 4, 1);     // [b, a2] = b2
    P.set_comm(3, 1, 5, 1);     // [b1, a2] = g
    P.set_comm(4, 0, 5, 1);     // [b2, a1] = g
    P.init();
    return P;
}

PcPresentation build_phi41(const CatalogParams& q) {
    int p = need_prime_at_least_5(q, "phi41");
    int nu = nonresidue_param(q, p, "phi41");
    PcPresentation P = PcPresentation::make(p, 6);
    P.labels = {"a1", "a2", "b", "b1", "b2", "g"};
    P.set_comm(1, 0, 2, p - 1); // [a1, a2] = b
    P.set_comm(2, 0, 3, 1);     // [b, a1] = b1
    P.set_comm(2, 1, 4, 1);     // [b, a2] = b2
    P.set_comm(3, 1, 5, 1);     // [b1, a2] = g
    P.set_comm(4, 0, 5, 1);     // [b2, a1] = g
    P.set_comm(3, 0, 5, p - 1); // [a1, b1] = g
    P.set_comm(4, 1, 5, nu);    // [a2, b2] = g^-nu
    P.set_power(0, 5, 1);       // a1^p = g
    P.init();
    return P;
}

void class37_base(PcPresentation& P) {
    P.labels = {"a1", "a2", "a3", "a4", "a5", "a6", "g"};
    P.set_comm(1, 0, 3, 1); // [a2, a1] = a4
}

PcPresentation build_class3_p7_1(const CatalogParams& q) {
    int p = need_odd_prime(q, "class3_p7_1");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(2, 0, 4, 1); // [a3, a1] = a5
    P.set_comm(2, 1, 5, 1); // [a3, a2] = a6
    P.set_comm(3, 1, 6, 1); // [a4, a2] = g
    P.set_comm(4, 2, 6, 1); // [a5, a3] = g
    P.set_comm(4, 1, 6, 1); // [a5, a2] = g
    P.set_comm(5, 0, 6, 1); // [a6, a1] = g
    P.set_power(0, 6, 1);   // a1^p = g
    P.init();
    return P;
}

PcPresentation build_class3_p7_2(const CatalogParams& q) {
    int p = need_odd_prime(q, "class3_p7_2");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(2, 0, 4, 1); // [a3, a1] = a5
    P.set_comm(3, 0, 5, 1); // [a4, a1] = a6
    P.set_comm(4, 0, 6, 1); // [a5, a1] = g
    P.init();
    return P;
}

PcPresentation build_class3_p7_3(const CatalogParams& q) {
    int p = need_odd_prime(q, "class3_p7_3");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(2, 0, 4, 1); // [a3, a1] = a5
    P.set_comm(2, 1, 5, 1); // [a3, a2] = a6
    P.set_comm(3, 1, 6, 1); // [a4, a2] = g
    P.set_comm(4, 2, 6, 1); // [a5, a3] = g
    P.set_power(0, 6, 1);   // a1^p = g
    P.init();
    return P;
}

PcPresentation build_class3_p7_4(const CatalogParams& q) {
    int p = need_odd_prime(q, "class3_p7_4");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(2, 0, 4, 1); // [a3, a1] = a5
    P.set_comm(2, 1, 5, 1); // [a3, a2] = a6
    P.set_comm(3, 0, 6, 1); // [a4, a1] = g
    P.init();
    return P;
}

PcPresentation build_class3_p7_5(const CatalogParams& q) {
    int p = need_odd_prime(q, "class3_p7_5");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(2, 0, 4, 1); // [a3, a1] = a5
    P.set_comm(3, 0, 5, 1); // [a4, a1] = a6
    P.set_comm(3, 1, 6, 1); // [a4, a2] = g
    P.init();
    return P;
}

PcPresentation build_class4_p7_1(const CatalogParams& q) {
    int p = need_odd_prime(q, "class4_p7_1");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(3, 0, 4, 1); // [a4, a1] = a5
    P.set_comm(3, 1, 5, 1); // [a4, a2] = a6
    P.set_comm(3, 2, 6, 1); // [a4, a3] = g
    P.set_comm(4, 0, 6, 1); // [a5, a1] = g
    P.set_comm(5, 1, 6, 1); // [a6, a2] = g
    P.set_comm(2, 0, 6, 1); // [a3, a1] = g
    P.init();
    // these relations never pass the overlap test: [[a2,a1],a3] = g while the
    // other two Jacobi terms vanish, so the displayed group collapses; the
    // failure is surfaced instead of silently repairing the table
    P.require_consistent();
    return P;
}

PcPresentation build_class4_p7_2(const CatalogParams& q) {
    int p = need_prime_at_least_5(q, "class4_p7_2");
    PcPresentation P = PcPresentation::make(p, 7);
    class37_base(P);
    P.set_comm(3, 0, 4, 1); // [a4, a1] = a5
    P.set_comm(3, 1, 5, 1); // [a4, a2] = a6
    P.set_comm(2, 1, 6, 1); // [a3, a2] = g
    P.set_comm(4, 0, 6, 1); // [a5, a1] = g
    P.set_power(0, 6, 1);   // a1^p = g
    P.init();
    return P;
}

PcPresentation build_t2_9(const CatalogParams& q) {
    if (q.p != 0 && q.p != 2)
        throw ConstraintError("T2_9: the construction lives at p = 2, got p = " +
                              std::to_string(q.p));
    int r = bit_param(q.r, "T2_9", "r");
    int s = bit_param(q.s, "T2_9", "s");
    int t = bit_param(q.t, "T2_9", "t");
    PcPresentation P = PcPresentation::make(2, 9);
    P.labels = {"v1", "v2", "v3", "v4", "v5", "w", "w1", "w2", "w3"};
    // w = [v4,v3] = [v5,v3], w1 = [v4,v1], w2 = [v5,v2], w3 = [v5,v4],
    // [v4,v2] = [v5,v1] = 1, parameters [v2,v1] = w^r, [v3,v1] = w^t,
    // [v3,v2] = w^s
    if (r) P.set_comm(1, 0, 5, r);
    if (t) P.set_comm(2, 0, 5, t);
    if (s) P.set_comm(2, 1, 5, s);
    P.set_comm(3, 0, 6, 1);
    P.set_comm(3, 2, 5, 1);
    P.set_comm(4, 1, 7, 1);
    P.set_comm(4, 2, 5, 1);
    P.set_comm(4, 3, 8, 1);
    P.init();
    return P;
}

const std::vector<CatalogEntry> kEntries = {
    {"heisenberg", "p", "p prime",
     "extraspecial of order p^3 and exponent p (dihedral of order 8 at p = 2); class 2, |Z| = p",
     build_heisenberg},
    {"extraspecial_p3", "p", "p prime",
     "extraspecial of order p^3 with a generator of order p^2 (quaternion-free type); class 2, |Z| = p",
     build_extraspecial_p3},
    {"free_class2_expp", "p, n (default 4)", "p odd prime; 2 <= n <= 4",
     "largest class-2 exponent-p group on n generators; order p^(n(n+1)/2) with commutator "
     "generators u_ij = [x_j, x_i]",
     build_free_class2},
    {"F_mod_R", "p", "p odd prime",
     "free class-2 exponent-p group on a,b,c,d modulo <[b,d],[a,d]>; order p^8, class 2; "
     "[a,b][c,d] is not a commutator and d has a conjugacy class of size p",
     build_f_mod_r},
    {"F_mod_R1", "p, r (optional non-residue)", "p odd prime; r a quadratic non-residue mod p",
     "free class-2 exponent-p group on a,b,c,d modulo <[a,b][c,d], [a,c][b,d]^r>; order p^8, "
     "class 2, conjugate type {1, p^3}; every derived-subgroup element is a commutator",
     build_f_mod_r1},
    {"class2_type_1_p3", "p, r (optional non-residue)",
     "p odd prime; r a quadratic non-residue mod p",
     "order p^8, class 2, conjugate type {1, p^3}: [c,d] = [a,b]^-1, [a,c] = [b,d]^-r; every "
     "derived-subgroup element is a commutator; isoclinic to F_mod_R1",
     build_class2_type_1_p3},
    {"phi23", "p", "p prime, p >= 5",
     "order p^6, class 4, |Z| = p^2, derived subgroup elementary abelian of order p^4; "
     "a4*g and its powers are not commutators",
     build_phi23},
    {"phi40", "p", "p prime, p >= 5",
     "order p^6, class 4, |Z| = p, derived subgroup elementary abelian of order p^4; every "
     "derived-subgroup element is a commutator",
     build_phi40},
    {"phi41", "p, r (optional non-residue)", "p prime, p >= 5; r a quadratic non-residue mod p",
     "order p^6, class 4, |Z| = p, derived subgroup elementary abelian of order p^4, a1^p = g; "
     "every derived-subgroup element is a commutator",
     build_phi41},
    {"class3_p7_1", "p", "p odd prime",
     "order p^7, class 3, |Z| = p, |gamma_3| = p, derived subgroup elementary abelian of order "
     "p^4; every derived-subgroup element is a commutator",
     build_class3_p7_1},
    {"class3_p7_2", "p", "p odd prime",
     "order p^7, class 3, |Z| = p^2, |gamma_3| = p^2, derived subgroup elementary abelian of "
     "order p^4; every derived-subgroup element is a commutator",
     build_class3_p7_2},
    {"class3_p7_3", "p", "p odd prime",
     "order p^7, class 3, |Z| = p^2, |gamma_3| = p, derived subgroup elementary abelian of "
     "order p^4; every derived-subgroup element is a commutator",
     build_class3_p7_3},
    {"class3_p7_4", "p", "p odd prime",
     "order p^7, class 3, |Z| = p^3, |gamma_3| = p, derived subgroup elementary abelian of "
     "order p^4; the derived subgroup contains non-commutators",
     build_class3_p7_4},
    {"class3_p7_5", "p", "p odd prime",
     "order p^7, class 3, |Z| = p^3, |gamma_3| = p^2, derived subgroup elementary abelian of "
     "order p^4; the derived subgroup contains non-commutators",
     build_class3_p7_5},
    {"class4_p7_1", "p", "p odd prime; inconsistent as printed for every p",
     "advertised as order p^7, class 4, |Z| = p, but the relation table fails the "
     "associativity overlap (a3, a2, a1) at every prime: [[a2,a1],a3] = g with both other "
     "Jacobi terms trivial, so the presented group collapses; the builder surfaces this "
     "instead of guessing a repair",
     build_class4_p7_1},
    {"class4_p7_2", "p", "p prime, p >= 5 (the power overlap a2 * a1^p fails at p = 3)",
     "order p^7, class 4, |Z| = p^2, derived subgroup elementary abelian of order p^4; every "
     "derived-subgroup element is a commutator",
     build_class4_p7_2},
    {"T2_9", "r, s, t (each 0 or 1, default 0)", "r, s, t in {0, 1}; p fixed at 2",
     "special group of order 2^9 with Z = derived subgroup of order 16; parameters set "
     "[v2,v1] = w^r, [v3,v2] = w^s, [v3,v1] = w^t; exactly (0,0,0) has a non-commutator in "
     "the derived subgroup, namely [v4,v1][v4,v3][v5,v2]",
     build_t2_9},
};

} // namespace

const std::vector<CatalogEntry>& catalog_entries() { return kEntries; }

const CatalogEntry* catalog_find(const std::string& name) {
    for (const auto& e : kEntries)
        if (e.name == name) return &e;
    return nullptr;
}

PcPresentation catalog_build(const std::string& name, const CatalogParams& params) {
    const CatalogEntry* e = catalog_find(name);
    if (!e) throw ConstraintError("unknown catalog entry '" + name + "'");
    return e->build(params);
}

int socle_start(const PcPresentation& P) {
    int m = P.n;
    while (m > 0) {
        int i = m - 1;
        bool ok = P.is_identity(P.power[i]);
        for (int j = i + 1; j < P.n && ok; ++j) ok = P.is_identity(P.comm_tail(j, i));
        for (int k = 0; k < i && ok; ++k) ok = P.is_identity(P.comm_tail(i, k));
        if (!ok) break;
        m = i;
    }
    return m;
}

PcPresentation central_quotient(const PcPresentation& P, const std::vector<Word>& kill) {
    int m = socle_start(P);
    int d = P.n - m;

    fp::Mat rows;
    for (const Word& w : kill) {
        Elt x = P.collect(w);
        if (P.is_identity(x)) continue;
        for (int i = 0; i < P.n; ++i)
            if (!P.is_identity(P.commutator(x, P.gen(i))))
                throw Error("central_quotient: killed word " + P.show(x) + " is not central");
        for (int i = 0; i < m; ++i)
            if (x.e[i] != 0)
                throw Error("central_quotient: killed word " + P.show(x) +
                            " lies outside the designated central socle");
        fp::Vec row(d);
        for (int t = 0; t < d; ++t) row[t] = x.e[m + t];
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return P;

    auto R = fp::rref(rows, P.p);
    std::vector<bool> removed(P.n, false);
    for (int r = 0; r < R.rank; ++r) removed[m + R.pivots[r]] = true;

    std::vector<int> to_new(P.n, -1);
    int nn = 0;
    for (int i = 0; i < P.n; ++i)
        if (!removed[i]) to_new[i] = nn++;

    // rewrite a normal-form tail modulo the killed subgroup: substitute each
    // pivot generator by the non-pivot part of its rref row, negated
    auto rewrite = [&](const Elt& t) {
        Elt out;
        for (int i = 0; i < P.n; ++i)
            if (!removed[i]) out.e[to_new[i]] = t.e[i];
        for (int r = 0; r < R.rank; ++r) {
            int e = t.e[m + R.pivots[r]];
            if (e == 0) continue;
            for (int c = 0; c < d; ++c) {
                if (c == R.pivots[r] || R.reduced[r][c] == 0) continue;
                int idx = to_new[m + c];
                out.e[idx] =
                    std::uint8_t(fp::norm(out.e[idx] - i64(e) * R.reduced[r][c], P.p));
            }
        }
        return out;
    };

    PcPresentation Q = PcPresentation::make(P.p, nn);
    for (int i = 0; i < P.n; ++i)
        if (!removed[i]) Q.labels[to_new[i]] = P.labels[i];
    for (int i = 0; i < P.n; ++i) {
        if (removed[i]) continue;
        Q.power[to_new[i]] = rewrite(P.power[i]);
        for (int j = i + 1; j < P.n; ++j) {
            if (removed[j]) continue;
            Q.comm_tail(to_new[j], to_new[i]) = rewrite(P.comm_tail(j, i));
        }
    }
    Q.init();
    Q.require_consistent();
    return Q;
}

PcPresentation central_product(const PcPresentation& A, const PcPresentation& B,
                               const std::vector<Amalgamation>& amalg) {
    if (A.p != B.p)
        throw ConstraintError("central_product: factors have different primes " +
                              std::to_string(A.p) + " and " + std::to_string(B.p));

    auto central_gen = [](const PcPresentation& P, int i) {
        for (int j = i + 1; j < P.n; ++j)
            if (!P.is_identity(P.comm_tail(j, i))) return false;
        for (int k = 0; k < i; ++k)
            if (!P.is_identity(P.comm_tail(i, k))) return false;
        return true;
    };

    // layout: non-central A gens, non-central B gens, central A, central B --
    // relative order within each factor is preserved, so tails stay ascending
    std::vector<int> mapA(A.n), mapB(B.n);
    int pos = 0;
    for (int phase = 0; phase < 2; ++phase) {
        for (int i = 0; i < A.n; ++i)
            if (central_gen(A, i) == (phase == 1)) mapA[i] = pos++;
        for (int i = 0; i < B.n; ++i)
            if (central_gen(B, i) == (phase == 1)) mapB[i] = pos++;
    }

    PcPresentation C = PcPresentation::make(A.p, A.n + B.n);
    bool clash = false;
    for (const auto& la : A.labels)
        clash = clash || std::find(B.labels.begin(), B.labels.end(), la) != B.labels.end();
    for (int i = 0; i < A.n; ++i) C.labels[mapA[i]] = A.labels[i];
    for (int i = 0; i < B.n; ++i) C.labels[mapB[i]] = B.labels[i] + (clash ? "_2" : "");

    auto transplant = [&](const Elt& t, const std::vector<int>& map) {
        Elt out;
        for (size_t i = 0; i < map.size(); ++i) out.e[map[i]] = t.e[i];
        return out;
    };
    for (int i = 0; i < A.n; ++i) {
        C.power[mapA[i]] = transplant(A.power[i], mapA);
        for (int j = i + 1; j < A.n; ++j) {
            const Elt& t = A.comm_tail(j, i);
            if (!A.is_identity(t)) C.comm_tail(mapA[j], mapA[i]) = transplant(t, mapA);
        }
    }
    for (int i = 0; i < B.n; ++i) {
        C.power[mapB[i]] = transplant(B.power[i], mapB);
        for (int j = i + 1; j < B.n; ++j) {
            const Elt& t = B.comm_tail(j, i);
            if (!B.is_identity(t)) C.comm_tail(mapB[j], mapB[i]) = transplant(t, mapB);
        }
    }
    C.init();
    if (amalg.empty()) return C;

    std::vector<Word> kill;
    for (const auto& am : amalg) {
        if (am.a_gen < 0 || am.a_gen >= A.n)
            throw ConstraintError("central_product: no generator " + std::to_string(am.a_gen) +
                                  " in the left factor");
        if (!central_gen(A, am.a_gen) || !A.is_identity(A.power[am.a_gen]))
            throw ConstraintError("central_product: amalgamated generator " +
                                  A.labels[am.a_gen] + " is not central of order p");
        Elt bval = B.collect(am.b_word);
        for (int i = 0; i < B.n; ++i)
            if (!B.is_identity(B.commutator(bval, B.gen(i))))
                throw ConstraintError("central_product: amalgamation image " + B.show(bval) +
                                      " is not central");
        if (B.element_order(bval) != A.element_order(A.gen(am.a_gen)))
            throw ConstraintError(
                "central_product: amalgamated orders differ (" +
                std::to_string(A.element_order(A.gen(am.a_gen))) + " vs " +
                std::to_string(B.element_order(bval)) + ")");
        Word w{{mapA[am.a_gen], 1}};
        for (auto it = am.b_word.rbegin(); it != am.b_word.rend(); ++it)
            w.push_back({mapB[it->first], -it->second});
        kill.push_back(std::move(w));
    }
    return central_quotient(C, kill);
}

} // namespace pgc
