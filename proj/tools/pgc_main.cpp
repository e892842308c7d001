// pgc: analyze power-commutator presentations of finite p-groups.
//
//   pgc analyze  (--catalog NAME [--p P ...] | --file F.pcp) [--theorem A|B]
//                [--witnesses] [--budget N] [--report text|json] [-o PATH]
//   pgc verify   same inputs; picks the theorem from the prime and appends
//                the lemma suite
//   pgc batch    DIR [-o PATH] [--jobs N] [--theorem ...] — one JSON line per
//                .pcp file plus a summary line
//   pgc catalog  list | build NAME [--p P ...] [-o PATH]
//
// Exit codes: 0 success, 1 usage error, 2 parse/consistency/constraint or
// hypothesis failure.  Progress and timings go to stderr; stdout carries only
// the report.

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pgc/catalog.hpp"
#include "pgc/report.hpp"

namespace fs = std::filesystem;
using namespace pgc;

namespace {

struct InputFlags {
    std::string catalog_name;
    std::string file_path;
    int p = 0;
    int r = -1, s = -1, t = -1, n = -1;
};

void add_param_flags(CLI::App* cmd, InputFlags& in) {
    cmd->add_option("--p", in.p, "prime for catalog entries");
    cmd->add_option("--r", in.r, "entry parameter r")->check(CLI::Range(0, 1));
    cmd->add_option("--s", in.s, "entry parameter s")->check(CLI::Range(0, 1));
    cmd->add_option("--t", in.t, "entry parameter t")->check(CLI::Range(0, 1));
    cmd->add_option("--n", in.n, "generator count for the free builder");
}

void add_input_flags(CLI::App* cmd, InputFlags& in) {
    auto* grp = cmd->add_option_group("input", "what to analyze");
    grp->add_option("--catalog", in.catalog_name, "catalog entry name");
    grp->add_option("--file", in.file_path, "power-commutator presentation file (.pcp)");
    grp->require_option(1);
    add_param_flags(cmd, in);
}

CatalogParams to_params(const InputFlags& in) {
    CatalogParams q;
    q.p = in.p;
    if (in.r >= 0) q.r = in.r;
    if (in.s >= 0) q.s = in.s;
    if (in.t >= 0) q.t = in.t;
    if (in.n >= 0) q.n = in.n;
    return q;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << text;
}

std::pair<PcPresentation, InputIdentity> load_input(const InputFlags& in) {
    if (!in.catalog_name.empty()) {
        CatalogParams q = to_params(in);
        return {catalog_build(in.catalog_name, q), catalog_identity(in.catalog_name, q)};
    }
    std::string bytes = read_file(in.file_path);
    PcPresentation P = parse_pcp(bytes);
    P.require_consistent();
    return {P, file_identity(fs::path(in.file_path).filename().string(), bytes)};
}

void report_timings(const std::string& name, const AnalysisReport& R) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << name << ": facts " << R.timings.facts << "s, commutators " << R.timings.commutators
       << "s";
    if (R.timings.classification > 0) ss << ", classification " << R.timings.classification << "s";
    if (R.timings.lemmas > 0) ss << ", lemmas " << R.timings.lemmas << "s";
    std::cerr << ss.str() << "\n";
}

int run_report(const InputFlags& in, const ReportOptions& opt, const std::string& format,
               const std::string& out_path, bool auto_theorem) {
    auto [P, id] = load_input(in);
    ReportOptions o = opt;
    if (auto_theorem) o.theorem = pick_theorem(P);
    AnalysisReport R = analyze(P, id, o);
    report_timings(id.name, R);
    write_output(format == "json" ? render_json(R) : render_text(R), out_path);
    if (R.hypotheses_failed) {
        std::cerr << "error: " << R.body["classification"]["error"].get<std::string>() << "\n";
        return 2;
    }
    return 0;
}

int run_batch(const std::string& dir, const ReportOptions& opt, const std::string& out_path,
              unsigned jobs) {
    if (!fs::is_directory(dir)) throw Error("'" + dir + "' is not a readable directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pcp") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<std::string> lines(files.size());
    std::atomic<size_t> next{0}, equal{0}, unequal{0}, failed{0}, done{0};
    std::mutex log_mx;

    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < files.size();) {
            const std::string base = files[i].filename().string();
            std::string verdict;
            try {
                std::string bytes = read_file(files[i].string());
                PcPresentation P = parse_pcp(bytes);
                P.require_consistent();
                AnalysisReport R = analyze(P, file_identity(base, bytes), opt);
                lines[i] = R.body.dump();
                if (R.body["commutators"]["equal"].get<bool>()) {
                    ++equal;
                    verdict = "equal";
                } else {
                    ++unequal;
                    verdict = "unequal";
                }
            } catch (const std::exception& ex) {
                nlohmann::ordered_json err;
                err["format_version"] = kReportFormatVersion;
                err["input"] = {{"source", "file"}, {"name", base}};
                err["error"] = ex.what();
                lines[i] = err.dump();
                ++failed;
                verdict = "failed";
            }
            size_t d = ++done;
            std::lock_guard<std::mutex> lk(log_mx);
            std::cerr << "[" << d << "/" << files.size() << "] " << base << ": " << verdict
                      << "\n";
        }
    };

    unsigned nw = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
    nw = std::min<unsigned>(nw, std::max<size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream out;
    for (const auto& l : lines) out << l << "\n";
    nlohmann::ordered_json sum;
    sum["summary"] = {{"files", files.size()},
                      {"equal", equal.load()},
                      {"unequal", unequal.load()},
                      {"failed", failed.load()}};
    out << sum.dump() << "\n";
    write_output(out.str(), out_path);
    return 0;
}

int run_catalog_list() {
    for (const auto& e : catalog_entries()) {
        std::cout << e.name << "\n";
        std::cout << "  params: " << e.params << "\n";
        std::cout << "  constraints: " << e.constraints << "\n";
        std::cout << "  notes: " << e.notes << "\n";
    }
    return 0;
}

int run_catalog_build(const std::string& name, const InputFlags& in,
                      const std::string& out_path) {
    PcPresentation P = catalog_build(name, to_params(in));
    write_output(serialize_pcp(P), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite p-group commutator analysis over power-commutator presentations"};
    app.require_subcommand(1);

    InputFlags in;
    ReportOptions opt;
    std::string theorem, format = "text", out_path, batch_dir, build_name;
    unsigned jobs = 0;

    auto add_report_flags = [&](CLI::App* cmd, bool with_theorem) {
        if (with_theorem)
            cmd->add_option("--theorem", theorem, "classify against one theorem (A or B)")
                ->check(CLI::IsMember({"A", "B"}));
        cmd->add_flag("--witnesses", opt.witnesses,
                      "list non-commutators and two-commutator products");
        cmd->add_option("--budget", opt.budget, "cap on search-space sizes before degrading");
        cmd->add_option("--report", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("-o,--output", out_path, "write the report to a file");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "analyze one presentation");
    add_input_flags(analyze_cmd, in);
    add_report_flags(analyze_cmd, true);

    auto* verify_cmd =
        app.add_subcommand("verify", "analyze, classify by the prime, and run the lemma suite");
    add_input_flags(verify_cmd, in);
    add_report_flags(verify_cmd, false);

    auto* batch_cmd = app.add_subcommand("batch", "analyze every .pcp file in a directory");
    batch_cmd->add_option("dir", batch_dir, "directory of .pcp files")->required();
    batch_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
    batch_cmd->add_option("--theorem", theorem, "classify each file against one theorem")
        ->check(CLI::IsMember({"A", "B"}));
    batch_cmd->add_flag("--witnesses", opt.witnesses,
                        "list non-commutators and two-commutator products");
    batch_cmd->add_option("--budget", opt.budget, "cap on search-space sizes before degrading");
    batch_cmd->add_option("-o,--output", out_path, "write the JSONL stream to a file");

    auto* catalog_cmd = app.add_subcommand("catalog", "list or build catalog entries");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "print every entry with its schema");
    auto* build_cmd = catalog_cmd->add_subcommand("build", "write one entry as .pcp");
    build_cmd->add_option("name", build_name, "catalog entry name")->required();
    add_param_flags(build_cmd, in);
    build_cmd->add_option("-o,--output", out_path, "write the presentation to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (!theorem.empty()) opt.theorem = theorem[0];
        if (analyze_cmd->parsed()) return run_report(in, opt, format, out_path, false);
        if (verify_cmd->parsed()) {
            opt.lemmas = true;
            return run_report(in, opt, format, out_path, true);
        }
        if (batch_cmd->parsed()) return run_batch(batch_dir, opt, out_path, jobs);
        if (list_cmd->parsed()) return run_catalog_list();
        if (build_cmd->parsed()) return run_catalog_build(build_name, in, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
