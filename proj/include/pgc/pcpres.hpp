#pragma once

// Power-commutator presentations and collection to normal form.
//
// A presentation has generators g_1..g_n, all of relative order p, with
//   g_i^p        = power[i]   (a normal word in generators of index > i)
//   [g_j, g_i]   = comm[j][i] (j > i; a normal word in generators of index > j)
// Omitted tails are trivial.  Collection from the left rewrites any word to
// the unique normal form g_1^{e_1} ... g_n^{e_n}; after consistency_check
// succeeds the presentation defines a group of order exactly p^n.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgc/common.hpp"

namespace pgc {

constexpr int kMaxGens = 32;

// exponent vector in normal form; entries beyond n stay zero
struct Elt {
    std::array<std::uint8_t, kMaxGens> e{};

    friend bool operator==(const Elt& a, const Elt& b) { return a.e == b.e; }
    friend bool operator!=(const Elt& a, const Elt& b) { return a.e != b.e; }
    friend bool operator<(const Elt& a, const Elt& b) { return a.e < b.e; }
};

// free-group word: (generator index, exponent) pairs, exponents arbitrary
using Word = std::vector<std::pair<int, i64>>;

struct ConsistencyFailure {
    std::string overlap; // which overlap relation failed, human-readable
    Elt lhs, rhs;        // the two differing normal forms
};

struct PcPresentation {
    int p = 0;
    int n = 0;
    std::vector<std::string> labels; // size n
    std::vector<Elt> power;          // power[i] = tail of g_i^p, support > i
    std::vector<Elt> comm;           // comm[j*n+i] = tail of [g_j,g_i], j > i, support > j

    // -- construction ------------------------------------------------------
    static PcPresentation make(int p, int n); // trivial tails, default labels
    Elt& comm_tail(int j, int i);             // j > i
    const Elt& comm_tail(int j, int i) const;
    void set_comm(int j, int i, int gen, int exp); // single-generator tail helper
    void set_power(int i, int gen, int exp);
    // validates shape (prime p, tail supports, exponent ranges) and builds
    // the internal caches; must be called after any mutation, throws Error
    void init();

    // -- element basics ----------------------------------------------------
    Elt identity() const { return Elt{}; }
    Elt gen(int i) const;
    bool is_identity(const Elt& a) const { return a == Elt{}; }
    u64 group_order() const; // p^n (error if it would overflow)
    u64 code(const Elt& a) const;       // mixed-radix rank, e_1 most significant
    Elt decode(u64 c) const;            // inverse of code
    std::string show(const Elt& a) const; // "a*b^2" using labels; "id" for identity

    // -- collection and arithmetic ----------------------------------------
    Elt collect(const Word& w) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inverse(const Elt& a) const;
    Elt power_elt(const Elt& a, i64 k) const;
    Elt commutator(const Elt& x, const Elt& y) const; // x^-1 y^-1 x y
    Elt conjugate(const Elt& x, const Elt& g) const;  // g^-1 x g
    u64 element_order(const Elt& a) const;
    // multiply a by g_i^e in place (the collection primitive)
    void rmul_gen(Elt& a, int i, i64 e) const;
    void rmul_elt(Elt& a, const Elt& b) const;

    // -- consistency -------------------------------------------------------
    // checks all overlap relations; nullopt means consistent
    std::optional<ConsistencyFailure> consistency_check() const;
    void require_consistent() const; // throws HypothesisError on failure

  private:
    std::vector<std::uint8_t> comm_nt_;  // comm_nt_[j*n+i]: tail [g_j,g_i] nontrivial
    std::vector<std::uint8_t> power_nt_; // power_nt_[i]: power tail nontrivial
    bool ready_ = false;
};

// .pcp document format. Line-based; 1-based generator indices:
//   format_version 1
//   p 5
//   ngens 6
//   labels a a1 a2 a3 a4 g
//   power 1 -> 6^1
//   comm 2 1 -> 3^1
// Tail words are space-separated k^e terms with strictly ascending k and
// 0 < e < p; trivial tails are omitted.  '#' starts a full-line comment.
// serialize_pcp emits the canonical form (fixed key order, sorted tails),
// so parse followed by serialize is byte-identical on canonical documents.
PcPresentation parse_pcp(const std::string& text);
std::string serialize_pcp(const PcPresentation& pres);

} // namespace pgc
