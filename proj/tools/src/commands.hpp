#pragma once

#include "sumdil/cli.hpp"
#include "sumdil/sumset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumdil::cli {

struct FieldArgs {
    std::string field = "t";
    std::vector<std::string> dilates;
    std::string basis;   // comma-separated elements; empty picks the default
};

struct SumsetArgs {
    std::string points, mats, periodic, out;
    std::vector<std::string> elements;
    std::uint64_t cap = default_point_cap;
};

struct RegularizeArgs {
    std::int64_t n = 4096;
    std::int64_t m = 2;
    std::string delta = "1/10";
    std::size_t l = 1;
    std::string tail;
    std::int64_t max_level = 64;
    double density = 0.5;
    std::string points;
};

Report cmd_hconst(const FieldArgs& fa, double width);
Report cmd_analyze(const std::string& mats_path, double width, std::uint64_t seed);
Report cmd_sumset(const SumsetArgs& s, const FieldArgs& fa, unsigned threads);
Report cmd_extremal(const FieldArgs& fa, const std::string& schedule, const std::string& radii, unsigned threads,
                    std::int64_t witness);
Report cmd_ld(const std::string& config);
Report cmd_flags(const FieldArgs& fa, const std::string& n_list);
Report cmd_regularize(const RegularizeArgs& g, const FieldArgs& fa, std::uint64_t seed);
Report cmd_verify_cts(const std::string& config, std::int64_t resolution);
Report cmd_bench(unsigned threads, std::uint64_t seed, int repeat);
Report cmd_selftest(unsigned threads, std::uint64_t seed);

} // namespace sumdil::cli
