#include "sumdil/cli.hpp"

#include "sumdil/embeddings.hpp"
#include "sumdil/error.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sumdil::cli {

namespace {

Int int_from_json(const json& j)
{
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0)
            fail_input("bad integer '" + j.get<std::string>() + "'");
        return v;
    }
    fail_input("expected an integer, got " + j.dump());
}

std::vector<double> doubles(const json& j, const char* what)
{
    if (!j.is_array())
        fail_input(std::string(what) + " must be a list of numbers");
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number())
            fail_input(std::string(what) + " must be a list of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

std::string csv_cell(const json& v)
{
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string plain(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

} // namespace

json to_json(const Rat& r) { return to_string(r); }

json to_json(const Interval& x, int digits) { return json{{"lo", x.lo_str(digits)}, {"hi", x.hi_str(digits)}}; }

IVec ivec_from_json(const json& j)
{
    if (j.is_number_integer())
        return {j.get<std::int64_t>()};
    if (!j.is_array())
        fail_input("expected an integer vector, got " + j.dump());
    IVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            fail_input("expected an integer vector, got " + j.dump());
        v.push_back(x.get<std::int64_t>());
    }
    return v;
}

IntMatrix int_matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty())
        fail_input("matrix must be a non-empty list of rows");
    std::vector<std::vector<Int>> rows;
    for (const auto& row : j) {
        if (!row.is_array())
            fail_input("matrix rows must be lists");
        std::vector<Int> r;
        for (const auto& x : row)
            r.push_back(int_from_json(x));
        if (!rows.empty() && r.size() != rows[0].size())
            fail_input("matrix rows differ in length");
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
}

std::vector<IntMatrix> matrices_from_json(const json& j)
{
    const json& list = j.is_object() ? j.at("mats") : j;
    if (!list.is_array() || list.empty())
        fail_input("expected a non-empty list of matrices");
    std::vector<IntMatrix> out;
    for (const auto& m : list)
        out.push_back(int_matrix_from_json(m));
    return out;
}

// A scalar m means mZ^dim; otherwise a list of generating vectors.
IntegerLattice lattice_from_json(const json& j, std::size_t dim)
{
    if (j.is_number_integer()) {
        auto m = j.get<std::int64_t>();
        if (m <= 0)
            fail_input("lattice scale must be positive");
        return IntegerLattice::scaled(dim, m);
    }
    if (!j.is_array() || j.empty())
        fail_input("lattice must be a scale or a list of generators");
    std::vector<IVec> gens;
    for (const auto& g : j) {
        IVec v = ivec_from_json(g);
        if (v.size() != dim)
            fail_input("lattice generator has wrong dimension");
        gens.push_back(v);
    }
    IntegerLattice l = IntegerLattice::hnf(gens, dim);
    if (l.index() == 0)
        fail_input("lattice must have full rank");
    return l;
}

PeriodicSet periodic_from_json(const json& j)
{
    if (!j.is_object())
        fail_input("periodic set must be an object with period and residues");
    std::size_t dim = j.value("dim", std::size_t{1});
    IntegerLattice p = lattice_from_json(j.at("period"), dim);
    std::vector<IVec> pts;
    for (const auto& r : j.at("residues")) {
        IVec v = ivec_from_json(r);
        if (v.size() != dim)
            fail_input("residue has wrong dimension");
        pts.push_back(v);
    }
    return PeriodicSet(p, pts);
}

Flag flag_from_json(const json& j, std::size_t dim)
{
    if (!j.is_array() || j.empty())
        fail_input("flag must be a non-empty list of lattices, finest first");
    std::vector<IntegerLattice> chain;
    for (const auto& l : j)
        chain.push_back(lattice_from_json(l, dim));
    return Flag(chain);
}

VoxelSet shape_from_json(const json& j, Rat h)
{
    if (j.is_array()) {
        if (j.empty())
            fail_input("empty shape list");
        std::optional<VoxelSet> acc;
        for (const auto& part : j) {
            VoxelSet s = shape_from_json(part, h);
            acc = acc ? acc->unite(s) : s;
        }
        return *acc;
    }
    std::string type = j.at("type").get<std::string>();
    if (type == "box")
        return VoxelSet::box(doubles(j.at("lo"), "lo"), doubles(j.at("hi"), "hi"), h);
    if (type == "disk") {
        auto c = doubles(j.value("center", json::array({0.0, 0.0})), "center");
        if (c.size() != 2)
            fail_input("disk center has two coordinates");
        return VoxelSet::disk(c[0], c[1], j.at("radius").get<double>(), h);
    }
    if (type == "union")
        return shape_from_json(j.at("parts"), h);
    fail_input("unknown shape type '" + type + "'");
}

EigenStructure eigen_from_json(const json& j)
{
    EigenStructure e;
    for (const auto& b : j) {
        EigenBlock blk;
        blk.dim = b.value("dim", 1);
        blk.scale = doubles(b.at("scale"), "scale");
        blk.angle = b.contains("angle") ? doubles(b.at("angle"), "angle") : std::vector<double>(blk.scale.size(), 0.0);
        e.blocks.push_back(std::move(blk));
    }
    e.validate();
    return e;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail_input("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail_input("'" + path + "': " + e.what());
    }
}

IntegralBasis default_basis(const NumberField& k)
{
    const IntVec& f = k.int_poly();
    if (k.degree() == 1)
        return monogenic_basis(k);
    if (k.degree() == 2 && f[1] == 0 && f[2] == 1) {
        Int m = -f[0];
        if (!m.fits_slong_p())
            fail_input("quadratic parameter too large");
        return quadratic_basis(m.get_si());
    }
    if (!k.monic())
        fail_input("no catalog basis for this field; pass --basis");
    return monogenic_basis(k);
}

void print_human(const Report& r, std::ostream& out)
{
    std::size_t key_width = 0;
    for (const auto& [k, v] : r.summary.items())
        key_width = std::max(key_width, k.size());
    for (const auto& [k, v] : r.summary.items())
        out << std::left << std::setw(static_cast<int>(key_width)) << k << "  " << plain(v) << '\n';
    if (r.columns.empty())
        return;
    std::vector<std::size_t> w;
    for (const auto& c : r.columns)
        w.push_back(c.size());
    for (const auto& row : r.rows)
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            w[i] = std::max(w[i], plain(row.value(r.columns[i], json())).size());
    out << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << std::left << std::setw(static_cast<int>(w[i] + 2)) << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            out << std::left << std::setw(static_cast<int>(w[i] + 2)) << plain(row.value(r.columns[i], json()));
        out << '\n';
    }
}

void write_jsonl(const Report& r, std::ostream& out)
{
    json head = r.summary;
    head["command"] = r.command;
    out << head.dump() << '\n';
    for (const auto& row : r.rows)
        out << row.dump() << '\n';
}

void write_csv(const Report& r, std::ostream& out)
{
    if (r.columns.empty()) {
        bool first = true;
        for (const auto& [k, v] : r.summary.items()) {
            out << (first ? "" : ",") << csv_cell(k);
            first = false;
        }
        out << '\n';
        first = true;
        for (const auto& [k, v] : r.summary.items()) {
            out << (first ? "" : ",") << csv_cell(v);
            first = false;
        }
        out << '\n';
        return;
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << csv_cell(r.columns[i]);
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            out << (i ? "," : "") << csv_cell(row.value(r.columns[i], json()));
        out << '\n';
    }
}

namespace {

std::optional<std::filesystem::path> cache_dir()
{
    const char* d = std::getenv("SUMDIL_CACHE_DIR");
    if (!d || !*d)
        return std::nullopt;
    return std::filesystem::path(d);
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const IntVec& poly)
{
    std::string name = "roots";
    for (const auto& c : poly)
        name += "_" + c.get_str();
    for (auto& ch : name)
        if (ch == '-')
            ch = 'm';
    return dir / (name + ".json");
}

} // namespace

HResult cached_h_constant(const DilateSystem& sys, double width, std::string* cache_state)
{
    auto set_state = [&](const char* s) {
        if (cache_state)
            *cache_state = s;
    };
    auto dir = cache_dir();
    if (!dir) {
        set_state("off");
        return h_constant(sys, width);
    }
    const UPoly& f = sys.field.poly();
    auto file = cache_file(*dir, sys.field.int_poly());
    if (std::filesystem::exists(file)) {
        try {
            json c = read_json_file(file.string());
            std::vector<std::pair<std::string, std::string>> centers;
            for (const auto& z : c.at("centers"))
                centers.emplace_back(z.at(0).get<std::string>(), z.at(1).get<std::string>());
            auto e = certify_centers(f, centers, c.at("precision").get<mpfr_prec_t>());
            HResult h = h_constant(sys, e);
            if (h.h.width() <= width) {
                set_state("hit");
                return h;
            }
        } catch (const std::exception&) {
            // stale or foreign file: recompute
        }
    }
    for (double radius = 1e-12; radius > 1e-250; radius *= 1e-12) {
        auto e = certified_roots(f, radius);
        HResult h = h_constant(sys, e);
        if (h.h.width() > width)
            continue;
        json c{{"precision", e.precision}, {"centers", json::array()}};
        for (const auto& [re, im] : e.centers())
            c["centers"].push_back({re, im});
        std::error_code ec;
        std::filesystem::create_directories(*dir, ec);
        std::ofstream(file) << c.dump(1) << '\n';
        set_state("stored");
        return h;
    }
    set_state("miss");
    return h_constant(sys, width);
}

} // namespace sumdil::cli
