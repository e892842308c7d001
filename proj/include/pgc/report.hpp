#pragma once

// Machine-readable analysis reports.  A report's canonical body is an ordered
// JSON document that is byte-identical across runs for the same input: it
// contains no timestamps, no pointers, and every list is emitted in a fixed
// order.  Phase timings ride along in the AnalysisReport struct for
// diagnostics but are never rendered into the body.

#include <json.hpp>

#include <string>

#include "pgc/catalog.hpp"
#include "pgc/verifier.hpp"

namespace pgc {

inline constexpr int kReportFormatVersion = 1;

struct ReportOptions {
    char theorem = 0;       // 0 = skip classification, otherwise 'A' or 'B'
    bool witnesses = false; // list non-commutators and two-commutator products
    bool lemmas = false;    // append the lemma suite
    u64 budget = 100000000ULL;
};

struct PhaseTimings {
    double facts = 0;          // conjugacy classes, centre, lower central series
    double commutators = 0;    // K(G) sweep and width
    double classification = 0; // hypothesis checks and case analysis
    double lemmas = 0;
};

struct AnalysisReport {
    nlohmann::ordered_json body;
    PhaseTimings timings;
    bool hypotheses_failed = false; // classification was requested but the
                                    // group is outside the theorem's scope
};

// where the presentation came from; part of the body but not of the
// round-trip comparison (a rebuilt file reports source "file")
struct InputIdentity {
    std::string source; // "catalog" or "file"
    std::string name;   // entry name or file basename
    nlohmann::ordered_json detail;
};

InputIdentity catalog_identity(const std::string& name, const CatalogParams& q);
InputIdentity file_identity(const std::string& basename, const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// P must be consistent (require_consistent has been called by the builder or
// the parser path)
AnalysisReport analyze(const PcPresentation& P, const InputIdentity& id,
                       const ReportOptions& opt);

std::string render_json(const AnalysisReport& R); // indented dump of the body
std::string render_text(const AnalysisReport& R); // flat "key: value" lines

} // namespace pgc
