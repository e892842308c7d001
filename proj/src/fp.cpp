#include "pgc/fp.hpp"

#include <algorithm>

namespace pgc::fp {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; (i64)d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int norm(i64 a, int p) {
    i64 r = a % p;
    if (r < 0) r += p;
    return (int)r;
}

int add(int a, int b, int p) { return norm((i64)a + b, p); }
int sub(int a, int b, int p) { return norm((i64)a - b, p); }
int mul(int a, int b, int p) { return norm((i64)a * b, p); }

int pow(int a, i64 e, int p) {
    if (e < 0) throw Error("fp::pow: negative exponent");
    i64 base = norm(a, p), r = 1;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return (int)r;
}

int inv(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw Error("fp::inv: zero is not invertible");
    return pow(a, p - 2, p); // Fermat; p prime
}

bool is_quadratic_residue(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw Error("is_quadratic_residue: argument is zero mod p");
    if (p == 2) return true; // F_2* = {1}
    return pow(a, (p - 1) / 2, p) == 1;
}

int smallest_nonresidue(int p) {
    if (p == 2) throw Error("smallest_nonresidue: undefined for p = 2");
    for (int nu = 2; nu < p; ++nu)
        if (!is_quadratic_residue(nu, p)) return nu;
    throw Error("smallest_nonresidue: none found (p not an odd prime?)");
}

std::vector<int> solve_quadratic(int a, int b, int c, int p) {
    a = norm(a, p); b = norm(b, p); c = norm(c, p);
    if (a == 0 && b == 0 && c == 0) throw Error("solve_quadratic: all-zero polynomial");
    std::vector<int> roots;
    if (a == 0) {
        if (b != 0) roots.push_back(mul(sub(0, c, p), inv(b, p), p));
        // b == 0, c != 0: no roots
        return roots;
    }
    if (p == 2) throw Error("solve_quadratic: requires odd p");
    int disc = sub(mul(b, b, p), mul(4, mul(a, c, p), p), p);
    if (disc == 0) {
        roots.push_back(mul(sub(0, b, p), inv(mul(2, a, p), p), p));
        return roots;
    }
    if (!is_quadratic_residue(disc, p)) return roots;
    int s = 0; // p is tiny here; scan for the square root
    for (int x = 1; x < p; ++x)
        if (mul(x, x, p) == disc) { s = x; break; }
    int d = inv(mul(2, a, p), p);
    roots.push_back(mul(add(sub(0, b, p), s, p), d, p));
    roots.push_back(mul(sub(sub(0, b, p), s, p), d, p));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

RrefResult rref(const Mat& m, int p) {
    RrefResult res;
    res.reduced = m;
    Mat& a = res.reduced;
    if (a.empty()) return res;
    const int rows = (int)a.size(), cols = (int)a[0].size();
    for (auto& row : a) {
        if ((int)row.size() != cols) throw Error("rref: ragged matrix");
        for (auto& x : row) x = norm(x, p);
    }
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        int s = inv(a[r][c], p);
        for (int j = c; j < cols; ++j) a[r][j] = mul(a[r][j], s, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            int f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j], p), p);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank(const Mat& m, int p) { return rref(m, p).rank; }

std::optional<Vec> solve(const Mat& m, const Vec& b, int p) {
    if (m.size() != b.size()) throw Error("solve: size mismatch");
    if (m.empty()) return Vec{};
    const int cols = (int)m[0].size();
    Mat aug = m;
    for (size_t i = 0; i < m.size(); ++i) aug[i].push_back(b[i]);
    RrefResult r = rref(aug, p);
    for (int i = 0; i < r.rank; ++i)
        if (r.pivots[i] == cols) return std::nullopt; // pivot in augmentation column
    Vec x(cols, 0);
    for (int i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced[i][cols];
    return x;
}

Mat kernel_basis(const Mat& m, int p) {
    if (m.empty()) return {};
    const int cols = (int)m[0].size();
    RrefResult r = rref(m, p);
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivots) is_pivot[c] = true;
    Mat basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols, 0);
        v[c] = 1;
        for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = sub(0, r.reduced[i][c], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec mat_vec(const Mat& m, const Vec& v, int p) {
    Vec out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw Error("mat_vec: size mismatch");
        i64 acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc += (i64)m[i][j] * v[j];
        out[i] = norm(acc, p);
    }
    return out;
}

} // namespace pgc::fp
