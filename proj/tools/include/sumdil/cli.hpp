#pragma once

#include "sumdil/lattice_density.hpp"
#include "sumdil/matrix_analysis.hpp"
#include "sumdil/numfield.hpp"
#include "sumdil/symmetrize.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sumdil::cli {

using json = nlohmann::ordered_json;

// Exit codes: 0 success, 1 refusal or failed self-check, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One result: a flat summary plus an optional table.
struct Report {
    Report() = default;
    explicit Report(std::string name) : command(std::move(name)) {}

    std::string command;
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<json> rows;
    int exit_code = 0;
};

void print_human(const Report& r, std::ostream& out);
// JSON lines: the summary object, then one object per row.
void write_jsonl(const Report& r, std::ostream& out);
void write_csv(const Report& r, std::ostream& out);

// Config decoding.
IVec ivec_from_json(const json& j);
IntMatrix int_matrix_from_json(const json& j);
std::vector<IntMatrix> matrices_from_json(const json& j);
IntegerLattice lattice_from_json(const json& j, std::size_t dim);
PeriodicSet periodic_from_json(const json& j);
Flag flag_from_json(const json& j, std::size_t dim);
VoxelSet shape_from_json(const json& j, Rat h);
EigenStructure eigen_from_json(const json& j);
json read_json_file(const std::string& path);

// Catalog basis for t^2 - m with m squarefree, power basis otherwise.
IntegralBasis default_basis(const NumberField& k);

// H with the certified roots cached under $SUMDIL_CACHE_DIR when set.
HResult cached_h_constant(const DilateSystem& sys, double width, std::string* cache_state = nullptr);

json to_json(const Rat& r);
json to_json(const Interval& x, int digits = 20);

} // namespace sumdil::cli
