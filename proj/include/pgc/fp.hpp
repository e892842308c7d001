#pragma once

// Exact arithmetic and linear/quadratic algebra over the prime field F_p.
// Residues are least non-negative; everything is integer arithmetic.

#include <optional>
#include <vector>

#include "pgc/common.hpp"

namespace pgc::fp {

bool is_prime(int p);

// least non-negative residue of a mod p
int norm(i64 a, int p);

int add(int a, int b, int p);
int sub(int a, int b, int p);
int mul(int a, int b, int p);
int pow(int a, i64 e, int p); // e >= 0
int inv(int a, int p);        // error on a == 0 (mod p)

// true iff a is a non-zero square mod p; error on a == 0 (Euler's criterion)
bool is_quadratic_residue(int a, int p);

// least nu >= 2 with nu not a square mod p; error for p = 2
int smallest_nonresidue(int p);

// all x in F_p with a x^2 + b x + c = 0, sorted; error when a=b=c=0; p odd
std::vector<int> solve_quadratic(int a, int b, int c, int p);

using Vec = std::vector<int>;
using Mat = std::vector<Vec>; // row-major, rectangular

struct RrefResult {
    int rank = 0;
    Mat reduced;
    std::vector<int> pivots; // pivot column per non-zero row
};

// reduced row-echelon form; row space preserved
RrefResult rref(const Mat& m, int p);

int rank(const Mat& m, int p);

// one solution of m x = b, or nullopt when inconsistent
std::optional<Vec> solve(const Mat& m, const Vec& b, int p);

// rows form a basis of the null space of m
Mat kernel_basis(const Mat& m, int p);

Vec mat_vec(const Mat& m, const Vec& v, int p);

} // namespace pgc::fp
