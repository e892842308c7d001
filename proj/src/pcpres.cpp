#include "pgc/pcpres.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pgc/fp.hpp"

namespace pgc {

// ---------------------------------------------------------------- construction

PcPresentation PcPresentation::make(int p, int n) {
    PcPresentation pres;
    pres.p = p;
    pres.n = n;
    pres.labels.resize(n);
    for (int i = 0; i < n; ++i) pres.labels[i] = "g" + std::to_string(i + 1);
    pres.power.assign(n, Elt{});
    pres.comm.assign((size_t)n * n, Elt{});
    return pres;
}

Elt& PcPresentation::comm_tail(int j, int i) {
    if (!(j > i && i >= 0 && j < n)) throw Error("comm_tail: need n > j > i >= 0");
    return comm[(size_t)j * n + i];
}

const Elt& PcPresentation::comm_tail(int j, int i) const {
    if (!(j > i && i >= 0 && j < n)) throw Error("comm_tail: need n > j > i >= 0");
    return comm[(size_t)j * n + i];
}

void PcPresentation::set_comm(int j, int i, int gen, int exp) {
    comm_tail(j, i).e[gen] = (std::uint8_t)fp::norm(exp, p);
}

void PcPresentation::set_power(int i, int gen, int exp) {
    if (i < 0 || i >= n) throw Error("set_power: generator out of range");
    power[i].e[gen] = (std::uint8_t)fp::norm(exp, p);
}

void PcPresentation::init() {
    if (!fp::is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    if (n < 1 || n > kMaxGens)
        throw Error("generator count " + std::to_string(n) + " out of range [1, " +
                    std::to_string(kMaxGens) + "]");
    if ((int)labels.size() != n) throw Error("labels: expected " + std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) {
        if (labels[i].empty() || !std::isalpha((unsigned char)labels[i][0]))
            throw Error("label '" + labels[i] + "' must start with a letter");
        for (char c : labels[i])
            if (!std::isalnum((unsigned char)c) && c != '_')
                throw Error("label '" + labels[i] + "' contains invalid character");
        for (int j = 0; j < i; ++j)
            if (labels[i] == labels[j]) throw Error("duplicate label '" + labels[i] + "'");
    }
    if ((int)power.size() != n || comm.size() != (size_t)n * n)
        throw Error("tail tables have wrong shape");

    auto check_tail = [&](const Elt& t, int min_excl, const std::string& what) {
        for (int k = 0; k < kMaxGens; ++k) {
            if (!t.e[k]) continue;
            if (k >= n) throw Error(what + " references generator beyond ngens");
            if (k <= min_excl)
                throw Error(what + " references g" + std::to_string(k + 1) +
                            ": tails may only use higher-index generators");
            if (t.e[k] >= p) throw Error(what + " has exponent >= p");
        }
    };
    for (int i = 0; i < n; ++i)
        check_tail(power[i], i, "power tail of g" + std::to_string(i + 1));
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            check_tail(comm_tail(j, i), j,
                       "tail of [g" + std::to_string(j + 1) + ",g" + std::to_string(i + 1) + "]");

    comm_nt_.assign((size_t)n * n, 0);
    power_nt_.assign(n, 0);
    for (int i = 0; i < n; ++i) power_nt_[i] = power[i] != Elt{} ? 1 : 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) comm_nt_[(size_t)j * n + i] = comm_tail(j, i) != Elt{} ? 1 : 0;
    ready_ = true;
}

// ---------------------------------------------------------------- basics

Elt PcPresentation::gen(int i) const {
    if (i < 0 || i >= n) throw Error("gen: index out of range");
    Elt a;
    a.e[i] = 1;
    return a;
}

u64 PcPresentation::group_order() const {
    u64 r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > (u64)1 << 62) throw Error("group order exceeds 2^62");
        r *= (u64)p;
    }
    return r;
}

u64 PcPresentation::code(const Elt& a) const {
    u64 c = 0;
    for (int i = 0; i < n; ++i) c = c * p + a.e[i];
    return c;
}

Elt PcPresentation::decode(u64 c) const {
    Elt a;
    for (int i = n - 1; i >= 0; --i) {
        a.e[i] = (std::uint8_t)(c % p);
        c /= p;
    }
    return a;
}

std::string PcPresentation::show(const Elt& a) const {
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (!a.e[i]) continue;
        if (!s.empty()) s += "*";
        s += labels[i];
        if (a.e[i] > 1) s += "^" + std::to_string((int)a.e[i]);
    }
    return s.empty() ? "id" : s;
}

// ---------------------------------------------------------------- collection

// Multiply the normal form a by g_i^e on the right.  Core rewriting step:
// with m the highest blocking syllable (a.e[m] > 0, [g_m,g_i] nontrivial) and
// B the syllables above m (all commuting with g_i),
//   u A g_m^{am} B g_i^e  =  u A g_m^{am-1} g_i g_m T_{m,i} B g_i^{e-1},
// which is applied with the suffix stripped and re-multiplied.
void PcPresentation::rmul_gen(Elt& a, int i, i64 e) const {
    if (e == 0) return;
    if (e < 0 || e >= p) {
        i64 q = e >= 0 ? e / p : -((-e + p - 1) / p); // floor division
        int r = (int)(e - q * p);                     // in [0, p)
        rmul_gen(a, i, r);
        if (q != 0 && power_nt_[i]) {
            // g_i^e = g_i^r (g_i^p)^q and g_i^p commutes with g_i
            Elt tq = power_elt(power[i], q);
            rmul_elt(a, tq);
        }
        return;
    }
    for (;;) {
        int m = -1;
        for (int k = n - 1; k > i; --k)
            if (a.e[k] && comm_nt_[(size_t)k * n + i]) { m = k; break; }
        if (m < 0) {
            // g_i commutes with the whole suffix
            int total = a.e[i] + (int)e;
            if (total < p) {
                a.e[i] = (std::uint8_t)total;
                return;
            }
            a.e[i] = (std::uint8_t)(total - p);
            if (!power_nt_[i]) return;
            // insert the power tail right after g_i, before the suffix
            int idx[kMaxGens], val[kMaxGens], cnt = 0;
            for (int k = i + 1; k < n; ++k)
                if (a.e[k]) { idx[cnt] = k; val[cnt] = a.e[k]; a.e[k] = 0; ++cnt; }
            rmul_elt(a, power[i]);
            for (int t = 0; t < cnt; ++t) rmul_gen(a, idx[t], val[t]);
            return;
        }
        // strip the commuting part above the blocking syllable
        int idx[kMaxGens], val[kMaxGens], cnt = 0;
        for (int k = m + 1; k < n; ++k)
            if (a.e[k]) { idx[cnt] = k; val[cnt] = a.e[k]; a.e[k] = 0; ++cnt; }
        a.e[m] -= 1;
        rmul_gen(a, i, 1);
        rmul_gen(a, m, 1);
        rmul_elt(a, comm[(size_t)m * n + i]);
        for (int t = 0; t < cnt; ++t) rmul_gen(a, idx[t], val[t]);
        if (e == 1) return;
        e -= 1;
    }
}

void PcPresentation::rmul_elt(Elt& a, const Elt& b) const {
    for (int k = 0; k < n; ++k)
        if (b.e[k]) rmul_gen(a, k, b.e[k]);
}

Elt PcPresentation::collect(const Word& w) const {
    Elt a;
    for (const auto& [g, e] : w) {
        if (g < 0 || g >= n) throw Error("collect: generator index out of range");
        rmul_gen(a, g, e);
    }
    return a;
}

Elt PcPresentation::mul(const Elt& a, const Elt& b) const {
    Elt r = a;
    rmul_elt(r, b);
    return r;
}

Elt PcPresentation::inverse(const Elt& a) const {
    Elt r;
    for (int k = n - 1; k >= 0; --k)
        if (a.e[k]) rmul_gen(r, k, -(i64)a.e[k]);
    return r;
}

Elt PcPresentation::power_elt(const Elt& a, i64 k) const {
    if (k < 0) return power_elt(inverse(a), -k);
    Elt base = a, r;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

Elt PcPresentation::commutator(const Elt& x, const Elt& y) const {
    Elt r = inverse(x);
    rmul_elt(r, inverse(y));
    rmul_elt(r, x);
    rmul_elt(r, y);
    return r;
}

Elt PcPresentation::conjugate(const Elt& x, const Elt& g) const {
    Elt r = inverse(g);
    rmul_elt(r, x);
    rmul_elt(r, g);
    return r;
}

u64 PcPresentation::element_order(const Elt& a) const {
    Elt x = a;
    u64 ord = 1;
    while (!is_identity(x)) {
        x = power_elt(x, p);
        ord *= p;
        if (ord > group_order()) throw Error("element_order: runaway (inconsistent presentation?)");
    }
    return ord;
}

// ---------------------------------------------------------------- consistency

std::optional<ConsistencyFailure> PcPresentation::consistency_check() const {
    if (!ready_) throw Error("presentation not initialized");
    auto fail = [&](std::string what, const Elt& l, const Elt& r) {
        return ConsistencyFailure{std::move(what), l, r};
    };
    auto gname = [&](int i) { return labels[i]; };
    // g_k (g_j g_i) = (g_k g_j) g_i for k > j > i
    for (int k = 2; k < n; ++k)
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i) {
                Elt lhs = mul(gen(k), mul(gen(j), gen(i)));
                Elt rhs = mul(mul(gen(k), gen(j)), gen(i));
                if (lhs != rhs)
                    return fail("associativity overlap (" + gname(k) + ", " + gname(j) + ", " +
                                    gname(i) + ")",
                                lhs, rhs);
            }
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            // g_j^p g_i = g_j^{p-1} (g_j g_i)
            Elt jp = gen(j);
            jp.e[j] = (std::uint8_t)(p - 1);
            Elt lhs = mul(power[j], gen(i));
            Elt rhs = mul(jp, mul(gen(j), gen(i)));
            if (lhs != rhs)
                return fail("power overlap " + gname(j) + "^p * " + gname(i), lhs, rhs);
            // g_j g_i^p = (g_j g_i) g_i^{p-1}
            Elt ip = gen(i);
            ip.e[i] = (std::uint8_t)(p - 1);
            lhs = mul(gen(j), power[i]);
            rhs = mul(mul(gen(j), gen(i)), ip);
            if (lhs != rhs)
                return fail("power overlap " + gname(j) + " * " + gname(i) + "^p", lhs, rhs);
        }
    // g_i g_i^p = g_i^p g_i
    for (int i = 0; i < n; ++i) {
        Elt lhs = mul(gen(i), power[i]);
        Elt rhs = mul(power[i], gen(i));
        if (lhs != rhs) return fail("power overlap " + gname(i) + " with its own p-th power", lhs, rhs);
    }
    return std::nullopt;
}

void PcPresentation::require_consistent() const {
    if (auto f = consistency_check())
        throw HypothesisError("inconsistent presentation: " + f->overlap + " gives " + show(f->lhs) +
                              " != " + show(f->rhs));
}

// ---------------------------------------------------------------- .pcp format

namespace {

struct Tok {
    std::string text;
    int col; // 1-based
};

std::vector<Tok> tokenize(const std::string& line) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
        if (i >= line.size()) break;
        size_t j = i;
        while (j < line.size() && !std::isspace((unsigned char)line[j])) ++j;
        out.push_back({line.substr(i, j - i), (int)i + 1});
        i = j;
    }
    return out;
}

int parse_int(const Tok& t, int lineno, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(t.text, &pos);
        if (pos != t.text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(lineno, t.col, "expected integer for " + what + ", got '" + t.text + "'");
    }
}

} // namespace

PcPresentation parse_pcp(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    int fmt = -1, p = -1, ngens = -1;
    std::vector<std::string> labels;
    // collected tail lines, applied after p/ngens are known
    struct TailLine {
        bool is_power;
        int j, i; // i unused for power
        std::vector<std::pair<int, int>> terms;
        int lineno, col;
    };
    std::vector<TailLine> tails;
    bool seen_labels = false;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '#') continue;
        const std::string& key = toks[0].text;
        auto need = [&](size_t k) {
            if (toks.size() != k)
                throw ParseError(lineno, toks[0].col,
                                 "'" + key + "' expects " + std::to_string(k - 1) + " argument(s)");
        };
        if (key == "format_version") {
            need(2);
            if (fmt != -1) throw ParseError(lineno, toks[0].col, "duplicate format_version");
            fmt = parse_int(toks[1], lineno, "format_version");
            if (fmt != 1)
                throw ParseError(lineno, toks[1].col, "unsupported format_version " + toks[1].text);
        } else if (key == "p") {
            need(2);
            if (p != -1) throw ParseError(lineno, toks[0].col, "duplicate p");
            p = parse_int(toks[1], lineno, "p");
            if (!fp::is_prime(p))
                throw ParseError(lineno, toks[1].col, "modulus " + toks[1].text + " is not prime");
        } else if (key == "ngens") {
            need(2);
            if (ngens != -1) throw ParseError(lineno, toks[0].col, "duplicate ngens");
            ngens = parse_int(toks[1], lineno, "ngens");
            if (ngens < 1 || ngens > kMaxGens)
                throw ParseError(lineno, toks[1].col, "ngens out of range [1, " +
                                                          std::to_string(kMaxGens) + "]");
        } else if (key == "labels") {
            if (seen_labels) throw ParseError(lineno, toks[0].col, "duplicate labels");
            seen_labels = true;
            for (size_t t = 1; t < toks.size(); ++t) labels.push_back(toks[t].text);
        } else if (key == "power" || key == "comm") {
            bool is_power = key == "power";
            size_t fixed = is_power ? 2 : 3; // index arguments before '->'
            if (toks.size() < fixed + 1 || toks[fixed].text != "->")
                throw ParseError(lineno, toks[0].col,
                                 "'" + key + "' line must read '" + key +
                                     (is_power ? " i -> ..." : " j i -> ..."));
            TailLine tl;
            tl.is_power = is_power;
            tl.lineno = lineno;
            tl.col = toks[0].col;
            tl.j = parse_int(toks[1], lineno, "generator index");
            tl.i = is_power ? 0 : parse_int(toks[2], lineno, "generator index");
            if (toks.size() == fixed + 1)
                throw ParseError(lineno, toks[fixed].col, "empty tail (omit the line instead)");
            for (size_t t = fixed + 1; t < toks.size(); ++t) {
                const std::string& term = toks[t].text;
                size_t caret = term.find('^');
                if (caret == std::string::npos || caret == 0 || caret + 1 >= term.size())
                    throw ParseError(lineno, toks[t].col, "tail term '" + term + "' must be k^e");
                Tok kt{term.substr(0, caret), toks[t].col};
                Tok et{term.substr(caret + 1), toks[t].col + (int)caret + 1};
                tl.terms.emplace_back(parse_int(kt, lineno, "tail generator"),
                                      parse_int(et, lineno, "tail exponent"));
            }
            tails.push_back(std::move(tl));
        } else {
            throw ParseError(lineno, toks[0].col, "unknown key '" + key + "'");
        }
    }

    if (fmt == -1) throw ParseError(lineno, 1, "missing format_version");
    if (p == -1) throw ParseError(lineno, 1, "missing p");
    if (ngens == -1) throw ParseError(lineno, 1, "missing ngens");

    PcPresentation pres = PcPresentation::make(p, ngens);
    if (seen_labels) {
        if ((int)labels.size() != ngens)
            throw ParseError(lineno, 1, "labels: expected " + std::to_string(ngens) + " entries, got " +
                                            std::to_string(labels.size()));
        pres.labels = labels;
    }

    auto build_tail = [&](const TailLine& tl, int min_excl) {
        Elt tail;
        int prev = min_excl; // 0-based bound; file indices are 1-based
        for (auto [k, e] : tl.terms) {
            if (k < 1 || k > ngens)
                throw ParseError(tl.lineno, tl.col, "tail generator g" + std::to_string(k) +
                                                        " out of range");
            if (k - 1 <= min_excl)
                throw ParseError(tl.lineno, tl.col,
                                 "tail references g" + std::to_string(k) +
                                     ": tails may only use higher-index generators");
            if (k - 1 <= prev && prev != min_excl)
                throw ParseError(tl.lineno, tl.col, "tail terms must have strictly ascending indices");
            if (e < 1 || e >= p)
                throw ParseError(tl.lineno, tl.col, "tail exponent " + std::to_string(e) +
                                                        " out of range [1, p)");
            tail.e[k - 1] = (std::uint8_t)e;
            prev = k - 1;
        }
        return tail;
    };

    std::vector<bool> seen_power(ngens, false);
    std::vector<bool> seen_comm((size_t)ngens * ngens, false);
    for (const auto& tl : tails) {
        if (tl.is_power) {
            int i = tl.j;
            if (i < 1 || i > ngens)
                throw ParseError(tl.lineno, tl.col, "power index g" + std::to_string(i) + " out of range");
            if (seen_power[i - 1])
                throw ParseError(tl.lineno, tl.col, "duplicate power entry for g" + std::to_string(i));
            seen_power[i - 1] = true;
            pres.power[i - 1] = build_tail(tl, i - 1);
        } else {
            int j = tl.j, i = tl.i;
            if (j < 1 || j > ngens || i < 1 || i > ngens)
                throw ParseError(tl.lineno, tl.col, "commutator indices out of range");
            if (j <= i)
                throw ParseError(tl.lineno, tl.col,
                                 "comm j i requires j > i (tails store [g_j, g_i] with j > i)");
            if (seen_comm[(size_t)(j - 1) * ngens + (i - 1)])
                throw ParseError(tl.lineno, tl.col, "duplicate comm entry (" + std::to_string(j) + ", " +
                                                        std::to_string(i) + ")");
            seen_comm[(size_t)(j - 1) * ngens + (i - 1)] = true;
            pres.comm_tail(j - 1, i - 1) = build_tail(tl, j - 1);
        }
    }

    try {
        pres.init();
    } catch (const Error& err) {
        throw ParseError(lineno, 1, err.what());
    }
    return pres;
}

std::string serialize_pcp(const PcPresentation& pres) {
    std::ostringstream out;
    out << "format_version 1\n";
    out << "p " << pres.p << "\n";
    out << "ngens " << pres.n << "\n";
    out << "labels";
    for (const auto& l : pres.labels) out << " " << l;
    out << "\n";
    auto write_tail = [&](const Elt& t) {
        for (int k = 0; k < pres.n; ++k)
            if (t.e[k]) out << " " << (k + 1) << "^" << (int)t.e[k];
        out << "\n";
    };
    for (int i = 0; i < pres.n; ++i) {
        if (pres.power[i] == Elt{}) continue;
        out << "power " << (i + 1) << " ->";
        write_tail(pres.power[i]);
    }
    for (int j = 1; j < pres.n; ++j)
        for (int i = 0; i < j; ++i) {
            if (pres.comm_tail(j, i) == Elt{}) continue;
            out << "comm " << (j + 1) << " " << (i + 1) << " ->";
            write_tail(pres.comm_tail(j, i));
        }
    return out.str();
}

} // namespace pgc
