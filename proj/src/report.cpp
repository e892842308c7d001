#include "pgc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "pgc/commutators.hpp"
#include "pgc/structure.hpp"

namespace pgc {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string factored(u64 order, int p) {
    int k = 0;
    for (u64 v = order; v > 1; v /= (u64)p) ++k;
    if (k == 0) return "1";
    if (k == 1) return std::to_string(p);
    return std::to_string(p) + "^" + std::to_string(k);
}

// Witness rendering for commutator values.  Generator pairs in index order
// take precedence over the canonical code-least witness, so a simple
// commutator renders as "[a,b]" rather than through some equivalent pair of
// deep elements.
struct WitnessTable {
    struct Cand {
        u64 code;
        std::string text;
    };
    const PcPresentation& P;
    std::vector<Cand> gen_pairs;

    explicit WitnessTable(const PcPresentation& pres) : P(pres) {
        for (int i = 0; i < P.n; ++i)
            for (int j = i + 1; j < P.n; ++j) {
                u64 c = P.code(P.commutator(P.gen(i), P.gen(j)));
                if (c) gen_pairs.push_back({c, "[" + P.labels[i] + "," + P.labels[j] + "]"});
            }
    }

    std::string text_for(u64 code) const {
        for (const auto& g : gen_pairs)
            if (g.code == code) return g.text;
        auto w = commutator_witness(P, P.decode(code));
        if (!w) return "?"; // not a commutator; callers only pass K-codes
        return "[" + P.show(w->x) + "," + P.show(w->y) + "]";
    }
};

// z in gamma2 \ K as a product of two commutators, first match in a fixed
// order (generator pairs, then K ascending)
std::string two_product(const PcPresentation& P, const CommutatorSummary& S,
                        const WitnessTable& wt, u64 z) {
    Elt ze = P.decode(z);
    auto in_k = [&](u64 c) { return std::binary_search(S.k.begin(), S.k.end(), c); };
    auto attempt = [&](u64 c1) -> std::string {
        Elt rest = P.inverse(P.decode(c1));
        P.rmul_elt(rest, ze);
        u64 c2 = P.code(rest);
        if (!c2 || !in_k(c2)) return "";
        return wt.text_for(c1) + wt.text_for(c2);
    };
    for (const auto& g : wt.gen_pairs)
        if (auto s = attempt(g.code); !s.empty()) return s;
    for (u64 c1 : S.k)
        if (c1)
            if (auto s = attempt(c1); !s.empty()) return s;
    return "(no product of two commutators)";
}

ordered_json json_u64_list(const std::vector<u64>& v) {
    ordered_json a = ordered_json::array();
    for (u64 x : v) a.push_back(x);
    return a;
}

} // namespace

InputIdentity catalog_identity(const std::string& name, const CatalogParams& q) {
    InputIdentity id;
    id.source = "catalog";
    id.name = name;
    id.detail["p"] = q.p;
    if (q.r) id.detail["r"] = *q.r;
    if (q.s) id.detail["s"] = *q.s;
    if (q.t) id.detail["t"] = *q.t;
    if (q.n) id.detail["n"] = *q.n;
    return id;
}

std::string fnv1a64_hex(const std::string& bytes) {
    u64 h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

InputIdentity file_identity(const std::string& basename, const std::string& bytes) {
    InputIdentity id;
    id.source = "file";
    id.name = basename;
    id.detail["digest"] = "fnv1a64:" + fnv1a64_hex(bytes);
    return id;
}

AnalysisReport analyze(const PcPresentation& P, const InputIdentity& id,
                       const ReportOptions& opt) {
    AnalysisReport R;
    ordered_json& b = R.body;
    b["format_version"] = kReportFormatVersion;

    ordered_json in;
    in["source"] = id.source;
    in["name"] = id.name;
    for (const auto& [k, v] : id.detail.items()) in[k] = v;
    b["input"] = in;

    auto t0 = Clock::now();
    GroupFacts F = group_facts(P);
    R.timings.facts = since(t0);

    ordered_json g;
    g["p"] = P.p;
    g["generators"] = P.n;
    g["order"] = F.order;
    g["order_factored"] = factored(F.order, P.p);
    g["nilpotency_class"] = F.nil_class;
    g["center_order"] = F.centre.order;
    ordered_json lco = ordered_json::array();
    for (const auto& s : F.lower_central) lco.push_back(s.order);
    g["lower_central_orders"] = lco;
    g["conjugate_type"] = json_u64_list(F.classes.conjugate_type);
    g["max_breadth"] = F.classes.max_breadth;
    g["frattini_rank"] = frattini_rank(P);
    b["group"] = g;

    // run the classification first when requested: its commutator sweep is
    // exact in both outcomes, so the commutators section can reuse it
    std::optional<TheoremClassification> C;
    ordered_json cls;
    if (opt.theorem) {
        auto t1 = Clock::now();
        HypothesisRecord H = check_hypotheses(P, opt.theorem, F);
        cls["theorem"] = std::string(1, opt.theorem);
        ordered_json hyps = ordered_json::array();
        for (const auto& c : H.checks) {
            ordered_json h;
            h["name"] = c.name;
            h["pass"] = c.pass;
            h["observed"] = c.observed;
            hyps.push_back(h);
        }
        cls["hypotheses"] = hyps;
        cls["hypotheses_pass"] = H.all_pass();
        if (H.all_pass()) {
            C = opt.theorem == 'A' ? classify_theorem_A(P, F, opt.budget)
                                   : classify_theorem_B(P, F, opt.budget);
            cls["case"] = case_name(C->kase);
            cls["predicted_unequal"] = C->predicted_unequal;
            cls["brute_force_unequal"] = C->brute_force_unequal;
            cls["agree"] = C->agree;
            cls["notes"] = C->evidence.notes;
            ordered_json ev;
            if (C->evidence.breadth_one) ev["breadth_one"] = P.show(*C->evidence.breadth_one);
            if (C->evidence.quadruple) {
                ordered_json q = ordered_json::array();
                for (const Elt& x : *C->evidence.quadruple) q.push_back(P.show(x));
                ev["quadruple"] = q;
            }
            if (C->evidence.width) {
                ordered_json w;
                w["width"] = C->evidence.width->width;
                if (C->evidence.width->deep_element)
                    w["deep_element"] = P.show(P.decode(*C->evidence.width->deep_element));
                if (C->evidence.width->pair_witness) {
                    auto [a, bb] = *C->evidence.width->pair_witness;
                    w["pair"] = {P.show(P.decode(a)), P.show(P.decode(bb))};
                }
                ev["width"] = w;
            }
            if (!ev.empty()) cls["evidence"] = ev;
        } else {
            R.hypotheses_failed = true;
            cls["error"] = std::string("theorem ") + opt.theorem +
                           " hypotheses fail: " + H.first_failure();
        }
        R.timings.classification = since(t1);
    }

    auto t2 = Clock::now();
    CommutatorSummary S;
    WidthReport W;
    if (C) {
        S = C->commutators;
        W = C->evidence.width ? *C->evidence.width : two_commutator_width(P, S);
    } else {
        S = commutator_set(P, gamma2_of(F));
        W = two_commutator_width(P, S);
    }
    ordered_json cm;
    cm["k_size"] = S.k.size();
    cm["gamma2_size"] = S.gamma2.size();
    cm["equal"] = S.equal;
    cm["width"] = W.width;
    cm["width_at_most_two"] = W.width <= 2;
    if (opt.witnesses) {
        WitnessTable wt(P);
        ordered_json nc = ordered_json::array();
        ordered_json prods = ordered_json::array();
        for (u64 z : S.gamma2_minus_k) {
            nc.push_back(P.show(P.decode(z)));
            ordered_json pr;
            pr["element"] = P.show(P.decode(z));
            pr["product"] = two_product(P, S, wt, z);
            prods.push_back(pr);
        }
        cm["non_commutators"] = nc;
        cm["two_commutator_products"] = prods;
    }
    b["commutators"] = cm;
    R.timings.commutators = since(t2);

    if (opt.theorem) b["classification"] = cls;

    if (opt.lemmas) {
        auto t3 = Clock::now();
        ordered_json ls = ordered_json::array();
        for (const auto& r : lemma_suite(P, F)) {
            ordered_json l;
            l["id"] = r.id;
            l["status"] = status_name(r.status);
            l["detail"] = r.detail;
            ls.push_back(l);
        }
        b["lemmas"] = ls;
        R.timings.lemmas = since(t3);
    }
    return R;
}

std::string render_json(const AnalysisReport& R) { return R.body.dump(2) + "\n"; }

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

void render_array_line(std::ostream& out, const char* key, const ordered_json& arr) {
    out << key << ":";
    for (const auto& v : arr) out << " " << v.dump();
    out << "\n";
}

} // namespace

std::string render_text(const AnalysisReport& R) {
    const ordered_json& b = R.body;
    std::ostringstream out;
    out << "format_version: " << b["format_version"].get<int>() << "\n";

    const auto& in = b["input"];
    out << "input: " << in["source"].get<std::string>() << " " << in["name"].get<std::string>();
    std::vector<std::string> extras;
    for (const auto& [k, v] : in.items())
        if (k != "source" && k != "name") extras.push_back(k + " = " + v.dump());
    if (!extras.empty()) {
        out << " (";
        for (size_t i = 0; i < extras.size(); ++i) out << (i ? ", " : "") << extras[i];
        out << ")";
    }
    out << "\n";

    const auto& g = b["group"];
    out << "order: " << g["order"].get<u64>() << " (" << g["order_factored"].get<std::string>()
        << ")\n";
    out << "p: " << g["p"].get<int>() << "\n";
    out << "generators: " << g["generators"].get<int>() << "\n";
    out << "nilpotency_class: " << g["nilpotency_class"].get<int>() << "\n";
    out << "center_order: " << g["center_order"].get<u64>() << "\n";
    render_array_line(out, "lower_central_orders", g["lower_central_orders"]);
    render_array_line(out, "conjugate_type", g["conjugate_type"]);
    out << "max_breadth: " << g["max_breadth"].get<int>() << "\n";
    out << "frattini_rank: " << g["frattini_rank"].get<int>() << "\n";

    const auto& cm = b["commutators"];
    out << "k_size: " << cm["k_size"].get<u64>() << "\n";
    out << "gamma2_size: " << cm["gamma2_size"].get<u64>() << "\n";
    out << "k_equals_gamma2: " << yes_no(cm["equal"].get<bool>()) << "\n";
    out << "width: " << cm["width"].get<int>() << "\n";
    out << "width_at_most_two: " << yes_no(cm["width_at_most_two"].get<bool>()) << "\n";
    if (cm.contains("non_commutators"))
        for (const auto& z : cm["non_commutators"])
            out << "non_commutator: " << z.get<std::string>() << "\n";
    if (cm.contains("two_commutator_products"))
        for (const auto& pr : cm["two_commutator_products"])
            out << "product: " << pr["element"].get<std::string>() << " = "
                << pr["product"].get<std::string>() << "\n";

    if (b.contains("classification")) {
        const auto& c = b["classification"];
        out << "theorem: " << c["theorem"].get<std::string>() << "\n";
        for (const auto& h : c["hypotheses"])
            out << "hypothesis: " << h["name"].get<std::string>() << " "
                << (h["pass"].get<bool>() ? "pass" : "fail") << " ("
                << h["observed"].get<std::string>() << ")\n";
        out << "hypotheses_pass: " << yes_no(c["hypotheses_pass"].get<bool>()) << "\n";
        if (c.contains("error")) {
            out << "error: " << c["error"].get<std::string>() << "\n";
        } else {
            out << "case: " << c["case"].get<std::string>() << "\n";
            out << "predicted_unequal: " << yes_no(c["predicted_unequal"].get<bool>()) << "\n";
            out << "brute_force_unequal: " << yes_no(c["brute_force_unequal"].get<bool>())
                << "\n";
            out << "agree: " << yes_no(c["agree"].get<bool>()) << "\n";
            for (const auto& n : c["notes"]) out << "note: " << n.get<std::string>() << "\n";
            if (c.contains("evidence")) {
                const auto& ev = c["evidence"];
                if (ev.contains("breadth_one"))
                    out << "evidence_breadth_one: " << ev["breadth_one"].get<std::string>()
                        << "\n";
                if (ev.contains("quadruple")) {
                    out << "evidence_quadruple:";
                    for (const auto& x : ev["quadruple"]) out << " " << x.get<std::string>();
                    out << "\n";
                }
                if (ev.contains("width")) {
                    const auto& w = ev["width"];
                    out << "evidence_width: " << w["width"].get<int>() << "\n";
                    if (w.contains("deep_element"))
                        out << "evidence_deep_element: " << w["deep_element"].get<std::string>()
                            << "\n";
                    if (w.contains("pair"))
                        out << "evidence_pair: " << w["pair"][0].get<std::string>() << " "
                            << w["pair"][1].get<std::string>() << "\n";
                }
            }
        }
    }

    if (b.contains("lemmas"))
        for (const auto& l : b["lemmas"])
            out << "lemma: " << l["id"].get<std::string>() << " "
                << l["status"].get<std::string>() << " (" << l["detail"].get<std::string>()
                << ")\n";
    return out.str();
}

} // namespace pgc
