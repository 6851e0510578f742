#include <doctest.h>

#include "sumdil/cli.hpp"
#include "sumdil/error.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sumdil;
using sumdil::cli::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(SUMDIL_SOURCE_DIR) + "/configs/" + name; }

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "sumdil_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json first_line(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return json::parse(line);
}

} // namespace

TEST_CASE("hconst for sqrt 2")
{
    auto r = call({"hconst", "--field", "t^2-2", "--dilate", "t"});
    CHECK(r.code == 0);
    CHECK(r.out.find("5.82842712") != std::string::npos);

    auto file = scratch("hconst.jsonl");
    REQUIRE(call({"--json", file.string(), "hconst", "--field", "t^2-2", "--dilate", "t"}).code == 0);
    json j = first_line(file);
    CHECK(j["command"] == "hconst");
    CHECK(j["h"]["lo"].get<std::string>().rfind("5.82842712", 0) == 0);
    CHECK(j["h"]["hi"].get<std::string>().rfind("5.82842712", 0) == 0);
}

TEST_CASE("hconst over the rationals is exact")
{
    auto file = scratch("q.jsonl");
    REQUIRE(call({"hconst", "--dilate", "-7/3", "--json", file.string()}).code == 0);
    CHECK(first_line(file)["exact"] == "10");
}

TEST_CASE("analyze the three by three family")
{
    auto file = scratch("analyze.jsonl");
    auto r = call({"analyze", "--mats", config("sec11.json"), "--json", file.string()});
    CHECK(r.code == 0);
    json j = first_line(file);
    CHECK(j["pre_commuting"] == false);
    CHECK(j["irreducible"] == "true");
    CHECK(j["coprime"] == "true");

    REQUIRE(call({"analyze", "--mats", config("sqrt2_companion.json"), "--json", file.string()}).code == 0);
    j = first_line(file);
    CHECK(j["pre_commuting"] == true);
    CHECK(j["coprime"] == "true");
    CHECK(j["h"]["lo"].get<std::string>().rfind("5.82842712", 0) == 0);

    REQUIRE(call({"analyze", "--mats", config("doubled_companion.json"), "--json", file.string()}).code == 0);
    CHECK(first_line(file)["coprime"] == "false");
}

TEST_CASE("periodic sumsets and lattice densities from configs")
{
    auto file = scratch("p.jsonl");
    REQUIRE(call({"sumset", "--periodic", config("periodic_23.json"), "--json", file.string()}).code == 0);
    CHECK(first_line(file)["density"] == "1/6");
    REQUIRE(call({"sumset", "--periodic", config("periodic_32.json"), "--json", file.string()}).code == 0);
    CHECK(first_line(file)["density"] == "2/3");

    REQUIRE(call({"ld", "--config", config("ld_example.json"), "--json", file.string()}).code == 0);
    json j = first_line(file);
    CHECK(j["heights"] == json::array({"3/4", "1/4", "0"}));
    CHECK(j["volume"] == "1/3");
    CHECK(j["projections"] == json::array({"3/4", "2/3"}));
}

TEST_CASE("point sumset and output file")
{
    auto out = scratch("sum.txt");
    auto r = call({"sumset", "--points", config("points_square.txt"), "--mats", config("dilate_2_3.json"), "--out",
                   out.string()});
    CHECK(r.code == 0);
    // {0,1,2} + 2{0,1,2} + 3{0,1,2} = [0, 12] in each coordinate
    CHECK(r.out.find("169") != std::string::npos);
    std::ifstream in(out);
    CHECK(read_points(in).size() == 169);
}

TEST_CASE("flags report the denominator norm")
{
    auto file = scratch("flags.jsonl");
    REQUIRE(call({"flags", "--field", "t^2-2", "--dilate", "t/2", "--n", "1", "--json", file.string()}).code == 0);
    json j = first_line(file);
    CHECK(j["denominator_norm"] == "2");
    CHECK(j["norm_agrees"] == true);
}

TEST_CASE("verify-cts interval case passes exactly")
{
    auto file = scratch("cts.jsonl");
    REQUIRE(call({"verify-cts", "--config", config("cts_interval.json"), "--json", file.string()}).code == 0);
    json j = first_line(file);
    CHECK(j["verdict"] == "PASS");
    CHECK(j["measured"] == "3");
    CHECK(j["bound"] == "3");
}

TEST_CASE("extremal table and csv")
{
    auto csv = scratch("ext.csv");
    auto r = call({"extremal", "--field", "t^2-2", "--dilate", "t", "--schedule", "4,8", "--csv", csv.string()});
    CHECK(r.code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("n,size_a,size_sum,ratio", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("json output is deterministic and thread independent")
{
    auto a = scratch("d1.jsonl"), b = scratch("d2.jsonl");
    std::vector<std::string> base{"extremal", "--field", "t^2-2", "--dilate", "t", "--schedule", "6,12"};
    auto with = [&](const std::filesystem::path& p, const char* threads) {
        auto args = base;
        args.insert(args.end(), {"--json", p.string(), "--threads", threads});
        return call(args).code;
    };
    REQUIRE(with(a, "1") == 0);
    REQUIRE(with(b, "4") == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(call({"regularize", "--N", "512", "--seed", "9", "--json", a.string()}).code == 0);
    REQUIRE(call({"regularize", "--N", "512", "--seed", "9", "--json", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("certified roots are cached")
{
    auto dir = scratch("cache");
    std::filesystem::remove_all(dir);
    setenv("SUMDIL_CACHE_DIR", dir.c_str(), 1);
    std::string s1, s2;
    auto sys = make_system("t^3-2", {"t"});
    auto h1 = cli::cached_h_constant(sys, 1e-9, &s1);
    auto h2 = cli::cached_h_constant(sys, 1e-9, &s2);
    unsetenv("SUMDIL_CACHE_DIR");
    CHECK(s1 == "stored");
    CHECK(s2 == "hit");
    CHECK(h2.h.overlaps(h1.h));
    CHECK(h2.h.width() <= 1e-9);
    std::string s3;
    cli::cached_h_constant(sys, 1e-9, &s3);
    CHECK(s3 == "off");
}

TEST_CASE("exit codes")
{
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    auto r = call({"hconst", "--dilate", "t", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(call({"hconst"}).code == 2);
    CHECK(call({"hconst", "--field", "t^2-4", "--dilate", "t"}).code == 2);
    CHECK(call({"ld", "--config", "/nonexistent.json"}).code == 2);
    CHECK(call({"sumset", "--points", config("points_square.txt"), "--mats", config("dilate_2_3.json"), "--cap", "10"})
              .code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("selftest passes")
{
    auto r = call({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("config decoding")
{
    CHECK(cli::ivec_from_json(json(3)) == IVec{3});
    CHECK(cli::lattice_from_json(json(4), 2) == IntegerLattice::scaled(2, 4));
    auto l = cli::lattice_from_json(json::parse("[[2, 1], [0, 3]]"), 2);
    CHECK(l.index() == 6);
    CHECK_THROWS_AS(cli::lattice_from_json(json::parse("[[1, 1], [2, 2]]"), 2), Error);
    CHECK_THROWS_AS(cli::lattice_from_json(json(0), 1), Error);
    auto p = cli::periodic_from_json(json::parse(R"({"period": 6, "residues": [0, 3]})"));
    CHECK(p.density() == Rat(1, 3));
    auto f = cli::flag_from_json(json::parse("[6, 2, 1]"), 1);
    CHECK(f.k() == 3);
    CHECK_THROWS_AS(cli::flag_from_json(json::parse("[2, 3]"), 1), Error);
    auto m = cli::int_matrix_from_json(json::parse(R"([[1, "123456789012345678901234567890"], [0, 1]])"));
    CHECK(m(0, 1) == Int("123456789012345678901234567890"));
    CHECK_THROWS_AS(cli::int_matrix_from_json(json::parse("[[1, 2], [3]]")), Error);
    auto shape = cli::shape_from_json(json::parse(R"([{"type": "box", "lo": [0, 0], "hi": [1, 1]},
                                                      {"type": "box", "lo": [0, 0], "hi": [0.5, 2]}])"),
                                      Rat(1, 4));
    CHECK(shape.count() == 16 + 16 - 8);
    CHECK_THROWS_AS(cli::shape_from_json(json::parse(R"({"type": "cone"})"), Rat(1, 4)), Error);
    auto e = cli::eigen_from_json(json::parse(R"([{"dim": 2, "scale": [1, 2], "angle": [0, 1]}])"));
    CHECK(e.dim() == 2);
    CHECK(cli::default_basis(NumberField(parse_upoly("t^2-5"))).provenance() == BasisProvenance::catalog);
    CHECK(cli::default_basis(NumberField(parse_upoly("t^3-2"))).provenance() == BasisProvenance::monogenic);
}
