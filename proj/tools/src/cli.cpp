#include "commands.hpp"

#include "sumdil/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <thread>

namespace sumdil::cli {

namespace {

void add_field_options(CLI::App* sub, FieldArgs& fa, bool need_dilate)
{
    sub->add_option("--field", fa.field, "defining polynomial in t (\"t\" for the rationals)");
    auto* d = sub->add_option("--dilate", fa.dilates, "dilate as a polynomial in t; repeat for several");
    if (need_dilate)
        d->required();
    sub->add_option("--basis", fa.basis, "integral basis elements, comma separated");
}

void emit(const Report& r, const std::string& json_path, const std::string& csv_path, std::ostream& out)
{
    print_human(r, out);
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f)
            fail_input("cannot write '" + json_path + "'");
        write_jsonl(r, f);
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f)
            fail_input("cannot write '" + csv_path + "'");
        write_csv(r, f);
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sums of dilates: constants, sumsets, lattice densities and continuous bounds", "sumdil"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string json_path, csv_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    app.add_option("--json", json_path, "write JSON lines to this file");
    app.add_option("--csv", csv_path, "write CSV to this file");
    app.add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized procedures");

    FieldArgs fa;
    double width = 1e-9;

    auto* hconst = app.add_subcommand("hconst", "certified growth constant of a dilate system");
    add_field_options(hconst, fa, true);
    hconst->add_option("--width", width, "target interval width");

    std::string mats_path;
    auto* analyze_cmd = app.add_subcommand("analyze", "verdicts for a family of integer matrices");
    analyze_cmd->add_option("--mats", mats_path, "JSON file with a list of square matrices")->required();
    analyze_cmd->add_option("--width", width, "target interval width");

    SumsetArgs sa;
    auto* sumset = app.add_subcommand("sumset", "sizes of linear, field or periodic sumsets");
    add_field_options(sumset, fa, false);
    sumset->add_option("--points", sa.points, "point file, one vector per line");
    sumset->add_option("--mats", sa.mats, "JSON file with the matrices L_0 .. L_k");
    sumset->add_option("--element", sa.elements, "field element of A; repeat");
    sumset->add_option("--periodic", sa.periodic, "JSON file with periodic sets and matrices");
    sumset->add_option("--out", sa.out, "write the sumset to this point file");
    sumset->add_option("--cap", sa.cap, "refuse sumsets larger than this");

    std::string schedule = "10,20,40", radii;
    std::int64_t witness = 0;
    auto* extremal = app.add_subcommand("extremal", "ratio |A + sum L_l A| / |A| on extremal sets");
    add_field_options(extremal, fa, true);
    extremal->add_option("--schedule", schedule, "comma separated n values");
    extremal->add_option("--radii", radii, "comma separated radii per embedding constraint");
    extremal->add_option("--witness", witness, "also build the lower-bound witness at this n");

    std::string config;
    auto* ld = app.add_subcommand("ld", "lattice density of a periodic set along a flag");
    ld->add_option("--config", config, "JSON file with set and flag")->required();

    std::string n_list;
    auto* flags = app.add_subcommand("flags", "ideal flags and the denominator norm");
    add_field_options(flags, fa, true);
    flags->add_option("--n", n_list, "comma separated n_1 .. n_k");

    RegularizeArgs ra;
    auto* regularize = app.add_subcommand("regularize", "regular decomposition of a dense set");
    add_field_options(regularize, fa, false);
    regularize->add_option("--N", ra.n, "side of the box [0, N)^d");
    regularize->add_option("--M", ra.m, "subdivision factor");
    regularize->add_option("--delta", ra.delta, "allowed loss, rational");
    regularize->add_option("--l", ra.l, "projection index");
    regularize->add_option("--tail", ra.tail, "comma separated n_{l+1} .. n_k");
    regularize->add_option("--max-level", ra.max_level, "deepest subdivision level");
    regularize->add_option("--density", ra.density, "density of the random set");
    regularize->add_option("--points", ra.points, "point file instead of a random set");

    std::int64_t resolution = 0;
    auto* cts = app.add_subcommand("verify-cts", "continuous bound on a voxel grid");
    cts->add_option("--config", config, "JSON file with shape and eigen blocks")->required();
    cts->add_option("--resolution", resolution, "cells per unit length (overrides h)");

    int repeat = 3;
    auto* bench = app.add_subcommand("bench", "time representative workloads");
    bench->add_option("--repeat", repeat, "repetitions, best time reported");

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (fa.dilates.empty() && (regularize->parsed() && fa.field == "t"))
        fa.dilates = {"3/2"};

    try {
        Report r;
        if (hconst->parsed())
            r = cmd_hconst(fa, width);
        else if (analyze_cmd->parsed())
            r = cmd_analyze(mats_path, width, seed);
        else if (sumset->parsed())
            r = cmd_sumset(sa, fa, threads);
        else if (extremal->parsed())
            r = cmd_extremal(fa, schedule, radii, threads, witness);
        else if (ld->parsed())
            r = cmd_ld(config);
        else if (flags->parsed())
            r = cmd_flags(fa, n_list);
        else if (regularize->parsed())
            r = cmd_regularize(ra, fa, seed);
        else if (cts->parsed())
            r = cmd_verify_cts(config, resolution);
        else if (bench->parsed())
            r = cmd_bench(threads, seed, repeat);
        else if (selftest->parsed())
            r = cmd_selftest(threads, seed);
        emit(r, json_path, csv_path, out);
        return r.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::input ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad config: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace sumdil::cli
