#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunResult {
    int rc = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PGC_BIN) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    RunResult r;
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, k);
    int st = pclose(f);
    r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool has_line(const std::string& text, const std::string& line) {
    return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("pgc_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return s;
}

} // namespace

TEST_CASE("analyze renders a text report with classification and witnesses") {
    auto r = run("analyze --catalog phi23 --p 5 --theorem A --witnesses");
    CHECK(r.rc == 0);
    CHECK(has_line(r.out, "format_version: 1"));
    CHECK(has_line(r.out, "input: catalog phi23 (p = 5)"));
    CHECK(has_line(r.out, "order: 15625 (5^6)"));
    CHECK(has_line(r.out, "nilpotency_class: 4"));
    CHECK(has_line(r.out, "center_order: 25"));
    CHECK(has_line(r.out, "k_size: 609"));
    CHECK(has_line(r.out, "gamma2_size: 625"));
    CHECK(has_line(r.out, "k_equals_gamma2: no"));
    CHECK(has_line(r.out, "width: 2"));
    CHECK(has_line(r.out, "width_at_most_two: yes"));
    CHECK(has_line(r.out, "non_commutator: a4*g"));
    CHECK(has_line(r.out, "hypothesis: p_odd pass (p = 5)"));
    CHECK(has_line(r.out, "hypotheses_pass: yes"));
    CHECK(has_line(r.out, "case: A1"));
    CHECK(has_line(r.out, "agree: yes"));

    auto fr = run("analyze --catalog F_mod_R --p 3 --theorem A --witnesses");
    CHECK(fr.rc == 0);
    CHECK(has_line(fr.out, "case: A3a"));
    CHECK(has_line(fr.out, "evidence_breadth_one: d"));
    CHECK(has_line(fr.out, "product: uab^2*ucd^2 = [a,b][c,d]"));
}

TEST_CASE("analyze emits parseable json with the advertised fields") {
    auto r = run("analyze --catalog T2_9 --p 2 --r 0 --s 0 --t 0 --theorem B --witnesses "
                 "--report json");
    CHECK(r.rc == 0);
    auto b = ordered_json::parse(r.out);
    CHECK(b["format_version"] == 1);
    CHECK(b["input"]["source"] == "catalog");
    CHECK(b["input"]["name"] == "T2_9");
    CHECK(b["input"]["p"] == 2);
    CHECK(b["input"]["r"] == 0);
    CHECK(b["group"]["order"] == 512);
    CHECK(b["group"]["order_factored"] == "2^9");
    CHECK(b["group"]["nilpotency_class"] == 2);
    CHECK(b["group"]["center_order"] == 16);
    CHECK(b["group"]["conjugate_type"] == ordered_json::array({1, 2, 4, 8}));
    CHECK(b["group"]["max_breadth"] == 3);
    CHECK(b["group"]["frattini_rank"] == 5);
    CHECK(b["commutators"]["k_size"] == 15);
    CHECK(b["commutators"]["gamma2_size"] == 16);
    CHECK(b["commutators"]["equal"] == false);
    CHECK(b["commutators"]["width"] == 2);
    CHECK(b["commutators"]["non_commutators"] == ordered_json::array({"w*w1*w2"}));
    CHECK(b["classification"]["theorem"] == "B");
    CHECK(b["classification"]["hypotheses_pass"] == true);
    CHECK(b["classification"]["case"] == "B1");
    CHECK(b["classification"]["predicted_unequal"] == true);
    CHECK(b["classification"]["brute_force_unequal"] == true);
    CHECK(b["classification"]["agree"] == true);
    CHECK(b["classification"]["evidence"]["width"]["deep_element"] == "w*w1*w2");
}

TEST_CASE("exit codes: 0 success, 1 usage, 2 domain failure") {
    CHECK(run("analyze --catalog heisenberg --p 3").rc == 0);
    CHECK(run("analyze --catalog heisenberg --p 3 --theorem A").rc == 2); // hypotheses fail
    CHECK(run("analyze --catalog phi23 --p 3").rc == 2);                  // constraint p >= 5
    CHECK(run("analyze --catalog no_such_entry --p 3").rc == 2);
    CHECK(run("analyze").rc == 1);                          // no input selected
    CHECK(run("analyze --catalog a --file b").rc == 1);     // both inputs selected
    CHECK(run("frobnicate").rc == 1);                       // unknown subcommand
    CHECK(run("analyze --catalog phi23 --p 5 --theorem C").rc == 1);
    CHECK(run("--help").rc == 0);
    CHECK(run("batch /no/such/dir").rc == 2);

    // hypothesis failure still prints the report with the record inline
    auto r = run("analyze --catalog heisenberg --p 3 --theorem A");
    CHECK(has_line(r.out, "hypothesis: gamma2_order_p4 fail (|gamma2| = 3)"));
    CHECK(has_line(r.out, "hypotheses_pass: no"));
    CHECK(has_line(r.out, "error: theorem A hypotheses fail: gamma2_order_p4 (|gamma2| = 3)"));
}

TEST_CASE("catalog list prints every entry with its constraint schema") {
    auto r = run("catalog list");
    CHECK(r.rc == 0);
    CHECK(has_line(r.out, "phi23"));
    CHECK(has_line(r.out, "  constraints: p prime, p >= 5"));
    CHECK(has_line(r.out, "T2_9"));
    CHECK(has_line(r.out, "heisenberg"));
    CHECK(has_line(r.out, "F_mod_R1"));
}

TEST_CASE("catalog build round-trips through a file byte-for-byte in analysis") {
    fs::path dir = scratch_dir();
    fs::path pcp = dir / "t000.pcp";
    CHECK(run("catalog build T2_9 --p 2 --r 0 --s 0 --t 0 -o " + pcp.string()).rc == 0);
    std::string text = slurp(pcp);
    CHECK(text.rfind("format_version 1\np 2\nngens 9\n", 0) == 0);

    auto from_file =
        run("analyze --file " + pcp.string() + " --theorem B --witnesses --report json");
    auto from_cat = run("analyze --catalog T2_9 --p 2 --r 0 --s 0 --t 0 --theorem B "
                        "--witnesses --report json");
    REQUIRE(from_file.rc == 0);
    REQUIRE(from_cat.rc == 0);
    auto bf = ordered_json::parse(from_file.out);
    auto bc = ordered_json::parse(from_cat.out);
    CHECK(bf["input"]["source"] == "file");
    CHECK(bf["input"]["name"] == "t000.pcp");
    std::string digest = bf["input"]["digest"].get<std::string>();
    CHECK(digest.rfind("fnv1a64:", 0) == 0);
    CHECK(digest.size() == 8 + 16);
    bf.erase("input");
    bc.erase("input");
    CHECK(bf == bc);

    // constraint violations surface as exit 2 from build as well
    CHECK(run("catalog build phi23 --p 3 -o " + (dir / "bad.pcp").string()).rc == 2);
    fs::remove_all(dir);
}

TEST_CASE("report output is deterministic across runs") {
    std::string cmd = "analyze --catalog F_mod_R1 --p 3 --theorem A --witnesses --report json";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    auto t1 = run("analyze --catalog class3_p7_4 --p 3 --theorem A --witnesses");
    auto t2 = run("analyze --catalog class3_p7_4 --p 3 --theorem A --witnesses");
    CHECK(t1.out == t2.out);
}

TEST_CASE("verify picks the theorem from the prime and appends the lemma suite") {
    auto r = run("verify --catalog phi23 --p 5");
    CHECK(r.rc == 0);
    CHECK(has_line(r.out, "theorem: A"));
    CHECK(has_line(r.out, "case: A1"));
    CHECK(has_line(r.out, "lemma: pth_powers_central pass (checked 15625 p-th powers, "
                          "all central)"));
    CHECK(has_line(r.out, "lemma: center_meet_gamma2_not_maximal pass "
                          "(|gamma2 : Z meet gamma2| = 5^2)"));

    auto b = run("verify --catalog T2_9 --p 2 --report json");
    CHECK(b.rc == 0);
    auto j = ordered_json::parse(b.out);
    CHECK(j["classification"]["theorem"] == "B");
    CHECK(j["classification"]["case"] == "B1");
    REQUIRE(j["lemmas"].size() == 6);
    CHECK(j["lemmas"][0]["id"] == "pth_powers_central");
    CHECK(j["lemmas"][0]["status"] == "not_applicable");
}

TEST_CASE("search budget degrades the case to undetermined through the cli") {
    auto r = run("analyze --catalog T2_9 --p 2 --theorem B --budget 1000");
    CHECK(r.rc == 0);
    CHECK(has_line(r.out, "case: undetermined"));
    CHECK(has_line(r.out, "agree: yes"));
}

TEST_CASE("batch analyzes a directory into a JSONL stream with a summary") {
    fs::path dir = scratch_dir() / "family";
    fs::create_directories(dir);
    for (int m = 0; m < 8; ++m) {
        std::string name = "t2_9_" + std::to_string(m >> 2 & 1) + std::to_string(m >> 1 & 1) +
                           std::to_string(m & 1);
        std::string cmd = "catalog build T2_9 --p 2 --r " + std::to_string(m >> 2 & 1) +
                          " --s " + std::to_string(m >> 1 & 1) + " --t " +
                          std::to_string(m & 1) + " -o " + (dir / (name + ".pcp")).string();
        REQUIRE(run(cmd).rc == 0);
    }

    auto r = run("batch " + dir.string() + " --jobs 4");
    CHECK(r.rc == 0);
    std::vector<ordered_json> lines;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(ordered_json::parse(line));
    REQUIRE(lines.size() == 9);
    // lines come out in sorted filename order; only the (0,0,0) member is unequal
    for (int m = 0; m < 8; ++m) {
        CAPTURE(m);
        CHECK(lines[m]["input"]["name"].get<std::string>().find("t2_9_") == 0);
        CHECK(lines[m]["commutators"]["equal"] == (m != 0));
        CHECK(lines[m]["commutators"]["gamma2_size"] == 16);
    }
    CHECK(lines[0]["input"]["name"] == "t2_9_000.pcp");
    CHECK(lines[8]["summary"]["files"] == 8);
    CHECK(lines[8]["summary"]["equal"] == 7);
    CHECK(lines[8]["summary"]["unequal"] == 1);
    CHECK(lines[8]["summary"]["failed"] == 0);

    // a malformed file is recorded inline and counted, never aborting the
    // batch; it sorts ahead of the t2_9 files
    std::ofstream(dir / "malformed.pcp") << "format_version 1\np 4\nngens 2\n";
    auto r2 = run("batch " + dir.string());
    CHECK(r2.rc == 0);
    lines.clear();
    std::istringstream in2(r2.out);
    for (std::string line; std::getline(in2, line);)
        if (!line.empty()) lines.push_back(ordered_json::parse(line));
    REQUIRE(lines.size() == 10);
    CHECK(lines[0]["input"]["name"] == "malformed.pcp");
    CHECK(lines[0].contains("error"));
    CHECK(lines[1]["input"]["name"] == "t2_9_000.pcp");
    CHECK(lines[9]["summary"]["files"] == 9);
    CHECK(lines[9]["summary"]["failed"] == 1);
    CHECK(lines[9]["summary"]["equal"] == 7);
    CHECK(lines[9]["summary"]["unequal"] == 1);

    // an empty directory yields just the zero summary
    fs::path empty = scratch_dir() / "empty";
    fs::create_directories(empty);
    auto r3 = run("batch " + empty.string());
    CHECK(r3.rc == 0);
    auto j3 = ordered_json::parse(r3.out);
    CHECK(j3["summary"]["files"] == 0);
    CHECK(j3["summary"]["equal"] == 0);
    CHECK(j3["summary"]["unequal"] == 0);
    CHECK(j3["summary"]["failed"] == 0);
    fs::remove_all(scratch_dir());
}
