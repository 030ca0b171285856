#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "stargale/io.hpp"
#include "support/fixtures.hpp"

using namespace stargale;
namespace st = stargale::testing;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / ("stargale_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

fs::path scratch_file(const std::string& stem, const std::string& content) {
    static int counter = 0;
    fs::path p = scratch_dir() / (stem + "_" + std::to_string(counter++) + ".json");
    std::ofstream out(p);
    out << content;
    return p;
}

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    const char* bin = std::getenv("STARGALE_CLI_BIN");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    fs::path dir = scratch_dir();
    fs::path in = dir / ("stdin_" + std::to_string(counter) + ".txt");
    fs::path out = dir / ("stdout_" + std::to_string(counter) + ".txt");
    fs::path err = dir / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    {
        std::ofstream f(in);
        f << stdin_text;
    }
    std::string cmd = std::string("\"") + bin + "\" " + args + " < \"" + in.string() + "\" > \"" +
                      out.string() + "\" 2> \"" + err.string() + "\"";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CliResult res;
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("STARGALE_FIXTURES_DIR");
    REQUIRE(dir != nullptr);
    return "\"" + (fs::path(dir) / name).string() + "\"";
}

Json parse_out(const CliResult& r) {
    REQUIRE(!r.out.empty());
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("gale subcommand emits the canonical transform", "[cli]") {
    CliResult r = run_cli("gale " + fixture("square.json"));
    REQUIRE(r.code == 0);
    Json j = parse_out(r);
    CHECK(j["verdicts"]["duality"]["value"] == true);
    CHECK(j["certificates"]["source_rank"] == 2);
    CHECK(j["certificates"]["gale_dim"] == 2);
    Json expect = Json::array({Json::array({"1", "0"}), Json::array({"0", "1"}),
                               Json::array({"1", "0"}), Json::array({"0", "1"})});
    CHECK(j["certificates"]["gale_vectors"] == expect);
    CHECK(j["certificates"]["duality_checked_exhaustively"] == true);

    Json fs_doc = j["certificates"]["facet_complement_fundamental_set"];
    CHECK(fs_doc["kind"] == "fundamental_set");
    CHECK(fs_doc["M"] == 2);
    CHECK(fs_doc["members"].size() == 4);
}

TEST_CASE("gale rejects rank-deficient input", "[cli]") {
    CliResult r = run_cli("gale " + fixture("rank_deficient.json"));
    CHECK(r.code == 2);
    CHECK(parse_out(r).contains("error"));
    CHECK(r.err.find("rank 1") != std::string::npos);
}

TEST_CASE("gale handles the basis edge case", "[cli]") {
    CliResult r = run_cli("gale " + fixture("basis.json"));
    REQUIRE(r.code == 0);
    Json j = parse_out(r);
    CHECK(j["certificates"]["gale_dim"] == 0);
    CHECK(j["certificates"]["gale_vectors"] == Json::array({Json::array(), Json::array()}));
}

TEST_CASE("check --starshaped on certified fixtures", "[cli]") {
    CHECK(run_cli("check " + fixture("square.json") + " --starshaped").code == 0);
    CHECK(run_cli("check " + fixture("pentagon_convex.json") + " --starshaped").code == 0);
    CHECK(run_cli("check " + fixture("pentagon_nonconvex.json") + " --starshaped").code == 0);
    CHECK(run_cli("check " + fixture("octahedron.json") + " --starshaped").code == 0);

    CliResult tri = run_cli("check " + fixture("triangle_zero_outside.json") + " --starshaped");
    REQUIRE(tri.code == 1);
    Json j = parse_out(tri);
    CHECK(j["verdicts"]["starshaped"]["value"] == false);
    Json witness = j["verdicts"]["starshaped"]["witness"];
    CHECK(witness["failing_condition"] == "Sep");
    CHECK(witness["sep"]["face_p"] == Json::array({2}));
    CHECK(witness["sep"]["face_q"] == Json::array({1, 3}));
}

TEST_CASE("check default battery matches the document kind", "[cli]") {
    CliResult sq = run_cli("check " + fixture("square.json"));
    REQUIRE(sq.code == 0);
    Json j = parse_out(sq);
    for (const char* name : {"simpl", "Sep", "pseudomanifold", "weakly_starshaped", "starshaped"})
        CHECK(j["verdicts"][name]["value"] == true);

    CliResult sys = run_cli("check " + fixture("square_system.json"));
    REQUIRE(sys.code == 0);
    Json js = parse_out(sys);
    for (const char* name : {"gen", "SE", "Imb", "bosio", "SEU", "SEU_minimal"})
        CHECK(js["verdicts"][name]["value"] == true);
    for (const auto& check : js["theorem_checks"]) CHECK(check["agree"] == true);

    CliResult tt = run_cli("check " + fixture("two_triangles.json"));
    REQUIRE(tt.code == 1);
    Json jt = parse_out(tt);
    CHECK(jt["verdicts"]["pseudomanifold"]["value"] == false);
    CHECK(jt["verdicts"]["pseudomanifold"]["witness"]["component_count"] == 2);
}

TEST_CASE("check gates flags by document kind", "[cli]") {
    CliResult wrong = run_cli("check " + fixture("two_triangles.json") + " --starshaped");
    CHECK(wrong.code == 2);
    CHECK(parse_out(wrong)["error"].get<std::string>().find("realization") !=
          std::string::npos);

    CHECK(run_cli("check " + fixture("square.json") + " --se").code == 2);
    CHECK(run_cli("check " + fixture("non_seu.json") + " --gen").code == 2);
}

TEST_CASE("check decides substitute conditions", "[cli]") {
    CliResult seu = run_cli("check " + fixture("non_seu.json") + " --se --seu");
    REQUIRE(seu.code == 1);
    Json j = parse_out(seu);
    CHECK(j["verdicts"]["SE"]["value"] == false);
    CHECK(j["verdicts"]["SE"]["witness"].contains("member"));
    CHECK(j["verdicts"]["SEU"]["value"] == false);

    CHECK(run_cli("check " + fixture("two_triangles.json") + " --pseudomanifold").code == 1);
    CHECK(run_cli("check " + fixture("path.json") + " --weakly-starshaped").code == 0);
    CHECK(run_cli("check " + fixture("path.json") + " --starshaped").code == 1);
}

TEST_CASE("check --crosscheck reports both characterizations", "[cli]") {
    CliResult r = run_cli("check " + fixture("square.json") + " --crosscheck");
    REQUIRE(r.code == 0);
    Json j = parse_out(r);
    CHECK(j["verdicts"]["crosscheck"]["value"] == true);
    CHECK(j["certificates"]["starshaped"] == true);
    CHECK(j["certificates"]["gale_side"] == true);
    for (const auto& check : j["theorem_checks"]) CHECK(check["agree"] == true);

    // Both sides false still counts as agreement, so the exit code is 0.
    CliResult tri = run_cli("check " + fixture("triangle_zero_outside.json") + " --crosscheck");
    CHECK(tri.code == 0);
    Json jt = parse_out(tri);
    CHECK(jt["certificates"]["starshaped"] == false);
    CHECK(jt["certificates"]["gale_side"] == false);
}

TEST_CASE("malformed input exits with code 2", "[cli]") {
    fs::path bad = scratch_file("bad", "{this is not json");
    CliResult r = run_cli("check \"" + bad.string() + "\"");
    CHECK(r.code == 2);
    CHECK(parse_out(r)["error"].get<std::string>().find("invalid JSON") != std::string::npos);

    CHECK(run_cli("check \"/nonexistent/file.json\"").code == 2);
}

TEST_CASE("check reads stdin when the input is -", "[cli]") {
    const char* dir = std::getenv("STARGALE_FIXTURES_DIR");
    REQUIRE(dir != nullptr);
    std::string doc = slurp(fs::path(dir) / "square.json");
    REQUIRE(!doc.empty());
    CliResult r = run_cli("check - --starshaped", doc);
    CHECK(r.code == 0);
}

TEST_CASE("center reports the kernel and a validated witness", "[cli]") {
    CliResult r = run_cli("center " + fixture("square.json") + " --seed 0,0");
    REQUIRE(r.code == 0);
    Json j = parse_out(r);
    CHECK(j["verdicts"]["kernel_nonempty"]["value"] == true);
    CHECK(j["certificates"]["halfspaces"].size() == 4);
    CHECK(j["certificates"]["witness"] == Json::array({"0", "0"}));
    CHECK(j["certificates"]["witness_margin"] == "1");
    CHECK(j["certificates"]["validated"] == true);

    // Default seed is the base point, the origin here.
    CliResult d = run_cli("center " + fixture("square.json"));
    REQUIRE(d.code == 0);
    CHECK(parse_out(d)["certificates"]["witness"] == Json::array({"0", "0"}));
}

TEST_CASE("center rejects non-centers and boundary seeds", "[cli]") {
    CliResult outside = run_cli("center " + fixture("triangle_zero_outside.json") + " --seed 0,0");
    CHECK(outside.code == 2);
    CHECK(outside.err.find("not a center") != std::string::npos);

    CliResult on_plane = run_cli("center " + fixture("square.json") + " --seed 1,0");
    CHECK(on_plane.code == 2);
    CHECK(on_plane.err.find("hyperplane") != std::string::npos);
}

TEST_CASE("rationalize rounds decimal noise back to integers", "[cli]") {
    CliResult r = run_cli("rationalize " + fixture("pentagon_decimal_noise.json"));
    REQUIRE(r.code == 0);
    Json doc = parse_out(r);
    CHECK(doc["kind"] == "realization");
    Json expect = Json::array({Json::array({4, 0}), Json::array({1, 1}), Json::array({0, 4}),
                               Json::array({-4, 1}), Json::array({1, -4})});
    CHECK(doc["points"] == expect);

    // The emitted document is itself checkable input.
    fs::path cleaned = scratch_file("cleaned", r.out);
    CHECK(run_cli("check \"" + cleaned.string() + "\" --starshaped").code == 0);
}

TEST_CASE("rationalize failure modes", "[cli]") {
    CHECK(run_cli("rationalize " + fixture("triangle_zero_outside.json")).code == 2);
    CHECK(run_cli("rationalize " + fixture("two_triangles.json")).code == 2);

    Realization tiny = scale_points(st::convex_pentagon(), st::q(1, 7));
    fs::path input =
        scratch_file("tiny", serialize_document(document_from_realization(tiny)));
    CliResult r = run_cli("rationalize \"" + input.string() + "\" --max-denominator 1");
    REQUIRE(r.code == 1);
    Json j = parse_out(r);
    CHECK(j["max_denominator"] == "1");
    CHECK(j.contains("best_margin"));
    CHECK(j.contains("best_margin_bound"));
}

TEST_CASE("decompose splits a disconnected family", "[cli]") {
    CliResult r = run_cli("decompose " + fixture("two_triangles.json"));
    REQUIRE(r.code == 0);
    Json j = parse_out(r);
    CHECK(j["verdicts"]["SEU"]["value"] == true);
    CHECK(j["certificates"]["part_count"] == 2);
    CHECK(j["certificates"]["already_minimal"] == false);
    REQUIRE(j["certificates"]["parts"].size() == 2);
    for (const auto& part : j["certificates"]["parts"]) {
        CHECK(part["kind"] == "fundamental_set");
        CHECK(part["members"].size() == 3);
    }
}

TEST_CASE("decompose on minimal and non-SEU inputs", "[cli]") {
    CliResult sq = run_cli("decompose " + fixture("square.json"));
    REQUIRE(sq.code == 0);
    Json j = parse_out(sq);
    CHECK(j["certificates"]["part_count"] == 1);
    CHECK(j["certificates"]["already_minimal"] == true);

    CliResult bad = run_cli("decompose " + fixture("non_seu.json"));
    REQUIRE(bad.code == 1);
    Json jb = parse_out(bad);
    CHECK(jb["verdicts"]["SEU"]["value"] == false);
    CHECK(jb["verdicts"]["SEU"]["witness"].contains("element"));
}

TEST_CASE("plot renders deterministic svg with kernel shading", "[cli]") {
    CliResult a = run_cli("plot " + fixture("pentagon_nonconvex.json"));
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("<svg", 0) == 0);
    CHECK(a.out.find("<polygon") != std::string::npos);
    CliResult b = run_cli("plot " + fixture("pentagon_nonconvex.json"));
    CHECK(a.out == b.out);

    // Not starshaped at the origin: still drawn, just without shading.
    CliResult tri = run_cli("plot " + fixture("triangle_zero_outside.json"));
    REQUIRE(tri.code == 0);
    CHECK(tri.out.rfind("<svg", 0) == 0);
    CHECK(tri.out.find("<polygon") == std::string::npos);

    CliResult oct = run_cli("plot " + fixture("octahedron.json"));
    CHECK(oct.code == 2);
    CHECK(oct.err.find("2-dimensional") != std::string::npos);
}

TEST_CASE("argument errors exit with code 2, help with 0", "[cli]") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("check --no-such-flag").code == 2);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("check --help").code == 0);
}
