#include "commands.hpp"

#include "sumdil/dilate_const.hpp"
#include "sumdil/error.hpp"
#include "sumdil/sumset.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace sumdil::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s)
{
    std::vector<T> out;
    for (const auto& part : split(s, ',')) {
        std::istringstream in(part);
        T v{};
        if (!(in >> v) || !(in >> std::ws).eof())
            fail_input("bad list entry '" + part + "'");
        out.push_back(v);
    }
    return out;
}

struct Field {
    DilateSystem sys;
    IntegralBasis basis;
};

Field load_field(const FieldArgs& a)
{
    if (a.dilates.empty())
        fail_input("at least one --dilate is required");
    DilateSystem sys = make_system(a.field, a.dilates);
    if (a.basis.empty())
        return {sys, default_basis(sys.field)};
    std::vector<FieldElement> els;
    for (const auto& e : split(a.basis, ','))
        els.push_back(sys.field.parse(e));
    return {sys, IntegralBasis(sys.field, els, BasisProvenance::user)};
}

json dilate_list(const DilateSystem& sys)
{
    json d = json::array();
    for (const auto& x : sys.dilates)
        d.push_back(sys.field.to_string(x));
    return d;
}

const char* provenance(BasisProvenance p)
{
    switch (p) {
    case BasisProvenance::catalog:
        return "catalog";
    case BasisProvenance::monogenic:
        return "monogenic";
    default:
        return "user";
    }
}

json steps_json(const Flag& f)
{
    json s = json::array();
    s.push_back(to_i64(f.at(1).index()));
    for (auto m : f.steps())
        s.push_back(m);
    return s;
}

std::string format_double(double x, int digits = 12)
{
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

PointSet load_points(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail_input("cannot open '" + path + "'");
    return read_points(in);
}

} // namespace

Report cmd_hconst(const FieldArgs& fa, double width)
{
    Field f = load_field(fa);
    std::string cache;
    HResult h = cached_h_constant(f.sys, width, &cache);
    Report r{"hconst"};
    r.summary["field"] = fa.field;
    r.summary["dilates"] = dilate_list(f.sys);
    r.summary["ideal_norm_factor"] = to_string(h.ideal_norm_factor);
    r.summary["archimedean"] = to_json(h.archimedean);
    r.summary["h"] = to_json(h.h);
    if (h.exact_rational)
        r.summary["exact"] = to_json(*h.exact_rational);
    r.summary["width"] = format_double(h.h.width(), 3);
    r.summary["cache"] = cache;
    return r;
}

Report cmd_analyze(const std::string& mats_path, double width, std::uint64_t seed)
{
    MatrixFamily fam(matrices_from_json(read_json_file(mats_path)));
    AnalysisReport a = analyze(fam, width, seed);
    Report r{"analyze"};
    r.summary["d"] = fam.d;
    r.summary["k"] = fam.k();
    r.summary["pre_commuting"] = a.pre_commuting ? json(*a.pre_commuting) : json("unsupported");
    r.summary["pre_commuting_method"] = a.pre_commuting_method;
    r.summary["irreducible"] = to_string(a.irreducible.verdict);
    r.summary["irreducible_method"] = a.irreducible.method;
    if (a.coprime) {
        r.summary["coprime"] = to_string(a.coprime->verdict);
        r.summary["coprime_method"] = a.coprime->method;
    } else {
        r.summary["coprime"] = "unsupported";
    }
    if (a.recovered) {
        r.summary["recovered_field"] = a.recovered->system.field.poly().to_string("t");
        r.summary["recovered_dilates"] = dilate_list(a.recovered->system);
    }
    r.summary["det_form"] = a.g.to_string();
    if (a.h)
        r.summary["h"] = to_json(a.h->h);
    if (!a.h_note.empty())
        r.summary["h_note"] = a.h_note;
    return r;
}

Report cmd_sumset(const SumsetArgs& s, const FieldArgs& fa, unsigned threads)
{
    Report r{"sumset"};
    SumsetOptions opt;
    opt.threads = threads;
    opt.cap = s.cap;
    if (!s.periodic.empty()) {
        json cfg = read_json_file(s.periodic);
        std::vector<PeriodicSet> sets;
        for (const auto& p : cfg.at("sets"))
            sets.push_back(periodic_from_json(p));
        auto mats = matrices_from_json(cfg.at("mats"));
        PeriodicSet out = periodic_sumset(sets, mats);
        r.summary["period_index"] = to_string(out.period().index());
        json res = json::array();
        for (const auto& v : out.residues())
            res.push_back(v);
        r.summary["residues"] = res;
        r.summary["density"] = to_json(out.density());
        return r;
    }
    if (!s.elements.empty()) {
        Field f = load_field(fa);
        std::vector<FieldElement> a;
        for (const auto& e : s.elements)
            a.push_back(f.sys.field.parse(e));
        r.summary["size_a"] = a.size();
        r.summary["size_sum"] = field_sumset(a, f.sys, f.basis, opt);
        return r;
    }
    if (s.points.empty() || s.mats.empty())
        fail_input("sumset needs --points with --mats, --element with --dilate, or --periodic");
    PointSet a = load_points(s.points);
    auto mats = matrices_from_json(read_json_file(s.mats));
    PointSet sum = linear_sumset(a, mats, opt);
    r.summary["size_a"] = a.size();
    r.summary["size_sum"] = sum.size();
    r.summary["ratio"] = to_json(make_rat(Int(static_cast<unsigned long>(sum.size())),
                                          Int(static_cast<unsigned long>(std::max<std::size_t>(a.size(), 1)))));
    if (!s.out.empty()) {
        std::ofstream o(s.out);
        if (!o)
            fail_input("cannot write '" + s.out + "'");
        write_points(o, sum);
    }
    return r;
}

Report cmd_extremal(const FieldArgs& fa, const std::string& schedule, const std::string& radii, unsigned threads,
                    std::int64_t witness)
{
    Field f = load_field(fa);
    auto sched = parse_list<std::int64_t>(schedule);
    auto rad = radii.empty() ? std::vector<double>{} : parse_list<double>(radii);
    SumsetOptions opt;
    opt.threads = threads;
    auto rows = ratio_experiment(f.sys, f.basis, sched, rad, opt);
    Report r{"extremal"};
    r.columns = {"n", "size_a", "size_sum", "ratio", "h_lo", "h_hi", "gap", "margin", "lower_bound_ok"};
    bool monotone = true, bounds = true;
    double prev = INFINITY, last_ratio = 0, h_mid = 0;
    for (const auto& x : rows) {
        double ratio = x.ratio.get_d();
        h_mid = x.h_reference.mid_d();
        double gap = std::abs(ratio - h_mid);
        double lo = x.h_reference.lo_d(), size = static_cast<double>(x.size_a);
        bool ok = static_cast<double>(x.size_sum) >= lo * size - 3 * lo * std::sqrt(size);
        monotone = monotone && gap <= prev;
        bounds = bounds && ok;
        prev = gap;
        last_ratio = ratio;
        r.rows.push_back({{"n", x.n},
                          {"size_a", x.size_a},
                          {"size_sum", x.size_sum},
                          {"ratio", format_double(ratio)},
                          {"h_lo", x.h_reference.lo_str(12)},
                          {"h_hi", x.h_reference.hi_str(12)},
                          {"gap", format_double(gap, 6)},
                          {"margin", to_string(x.margin)},
                          {"lower_bound_ok", ok}});
    }
    r.summary["field"] = fa.field;
    r.summary["dilates"] = dilate_list(f.sys);
    r.summary["basis"] = provenance(f.basis.provenance());
    r.summary["gap_non_increasing"] = monotone;
    r.summary["lower_bound_all"] = bounds;
    if (!rows.empty())
        r.summary["final_relative_gap"] = format_double(std::abs(last_ratio - h_mid) / h_mid, 6);
    if (witness > 0) {
        auto w = h_lower_witness(f.sys, f.basis, witness);
        r.summary["witness_size"] = w.a.size();
        r.summary["witness_ratio"] = format_double(w.ratio.get_d());
    }
    return r;
}

Report cmd_ld(const std::string& config)
{
    json cfg = read_json_file(config);
    PeriodicSet a = periodic_from_json(cfg.at("set"));
    Flag f = flag_from_json(cfg.at("flag"), a.dim());
    StaircaseBody s = lattice_density(a, f);
    Report r{"ld"};
    r.summary["k"] = f.k();
    r.summary["steps"] = steps_json(f);
    json dims = json::array(), heights = json::array(), proj = json::array(), direct = json::array();
    for (auto m : s.dims)
        dims.push_back(m);
    for (const auto& h : s.heights)
        heights.push_back(to_json(h));
    for (std::size_t l = 1; l <= f.k(); ++l) {
        proj.push_back(to_json(projection(s, l)));
        direct.push_back(to_json(projection_direct(a, f, l)));
    }
    r.summary["dims"] = dims;
    r.summary["heights"] = heights;
    r.summary["volume"] = to_json(volume(s));
    r.summary["density_top"] = to_json(density(a, f.at(f.k())));
    r.summary["projections"] = proj;
    r.summary["projections_direct"] = direct;
    r.summary["compressed"] = s.compressed();
    return r;
}

Report cmd_flags(const FieldArgs& fa, const std::string& n_list)
{
    Field f = load_field(fa);
    std::vector<unsigned> n = n_list.empty() ? std::vector<unsigned>(f.sys.k(), 0) : parse_list<unsigned>(n_list);
    IdealFlags fl = flags_from_ideals(f.sys, f.basis, n);
    Int dn = denominator_norm(f.sys);
    Rat ideal_norm = denominator_ideal(f.sys, f.basis).norm();
    Report r{"flags"};
    r.summary["field"] = fa.field;
    r.summary["dilates"] = dilate_list(f.sys);
    r.summary["basis"] = provenance(f.basis.provenance());
    r.summary["denominator_norm"] = to_string(dn);
    r.summary["denominator_ideal_index"] = to_json(ideal_norm);
    r.summary["norm_agrees"] = Rat(dn) == ideal_norm;
    r.summary["flag_f_steps"] = steps_json(fl.f);
    r.summary["flag_g_steps"] = steps_json(fl.g);
    r.columns = {"l", "norm_a", "norm_b", "norm_c"};
    for (std::size_t l = 0; l < fl.a.size(); ++l)
        r.rows.push_back({{"l", l},
                          {"norm_a", to_json(fl.a[l].norm())},
                          {"norm_b", l == 0 ? json("-") : to_json(fl.b[l - 1].norm())},
                          {"norm_c", to_json(fl.c[l].norm())}});
    return r;
}

Report cmd_regularize(const RegularizeArgs& g, const FieldArgs& fa, std::uint64_t seed)
{
    Field f = load_field(fa);
    std::size_t d = static_cast<std::size_t>(f.sys.d());
    RegularityParams p;
    p.n_side = g.n;
    p.m = g.m;
    p.delta = parse_rat(g.delta);
    p.l = g.l;
    p.k = f.sys.k();
    p.tail = g.tail.empty() ? std::vector<unsigned>{} : parse_list<unsigned>(g.tail);
    p.max_level = g.max_level;
    PointSet a(d);
    if (!g.points.empty()) {
        a = load_points(g.points);
    } else {
        double cells = std::pow(static_cast<double>(g.n), static_cast<double>(d));
        if (g.n <= 0 || cells > 1 << 22)
            fail_input("grid [0, N)^d too large for a random set");
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(g.density);
        std::vector<std::int64_t> flat;
        IVec x(d, 0);
        for (;;) {
            if (coin(rng))
                flat.insert(flat.end(), x.begin(), x.end());
            std::size_t i = 0;
            while (i < d && ++x[i] == g.n) {
                x[i] = 0;
                ++i;
            }
            if (i == d)
                break;
        }
        a = PointSet::from_flat(d, std::move(flat));
    }
    auto fam = ideal_flag_family(f.sys, f.basis);
    auto out = regular_decomposition(a, fam, p);
    bool ok = check_decomposition(a, fam, p, out);
    Report r{"regularize"};
    r.summary["size_a"] = a.size();
    r.summary["size_kept"] = out.kept.size();
    r.summary["level"] = out.r;
    r.summary["cube_side"] = out.side;
    r.summary["cubes"] = out.cubes.size();
    r.summary["guarantees_hold"] = ok;
    json e = json::array();
    for (const auto& x : out.energy)
        e.push_back(to_json(x));
    r.summary["energy"] = e;
    if (!ok)
        r.exit_code = 1;
    return r;
}

Report cmd_verify_cts(const std::string& config, std::int64_t resolution)
{
    json cfg = read_json_file(config);
    Rat h = resolution > 0 ? make_rat(1, Int(static_cast<long>(resolution)))
                           : parse_rat(cfg.value("h", std::string("1/256")));
    VoxelSet a = shape_from_json(cfg.at("shape"), h);
    EigenStructure e = eigen_from_json(cfg.at("blocks"));
    std::vector<RealMatrix> maps;
    if (cfg.contains("maps")) {
        for (const auto& m : cfg.at("maps")) {
            RealMatrix rm{m.size(), {}};
            for (const auto& row : m)
                for (const auto& x : row)
                    rm.a.push_back(x.get<double>());
            maps.push_back(std::move(rm));
        }
    } else {
        maps = maps_from_structure(e);
    }
    CtsReport rep = verify_cts_bound(a, e, maps);
    Report r{"verify-cts"};
    r.summary["h"] = to_json(h);
    r.summary["cells_a"] = a.count();
    r.summary["measure_a"] = format_double(rep.measure_a);
    r.summary["measured"] = format_double(rep.measured);
    r.summary["bound"] = format_double(rep.bound);
    r.summary["budget"] = format_double(rep.budget);
    r.summary["relative_excess"] = format_double(rep.bound > 0 ? rep.measured / rep.bound - 1 : 0, 6);
    r.summary["cells_sum"] = rep.cells;
    r.summary["verdict"] = rep.pass ? "PASS" : "FAIL";
    return r;
}

Report cmd_bench(unsigned threads, std::uint64_t seed, int repeat)
{
    using clock = std::chrono::steady_clock;
    Report r{"bench"};
    r.columns = {"workload", "ms"};
    auto time = [&](const std::string& name, auto&& fn) {
        double best = INFINITY;
        for (int i = 0; i < std::max(repeat, 1); ++i) {
            auto t0 = clock::now();
            fn();
            best = std::min(best, std::chrono::duration<double, std::milli>(clock::now() - t0).count());
        }
        r.rows.push_back({{"workload", name}, {"ms", format_double(best, 4)}});
    };
    std::mt19937_64 rng(seed);
    time("hconst sqrt2", [] { h_constant(make_system("t^2-2", {"t"})); });
    time("hconst cbrt2", [] { h_constant(make_system("t^3-2", {"t"})); });
    std::vector<IVec> pts;
    std::uniform_int_distribution<std::int64_t> coord(-200, 200);
    for (int i = 0; i < 300; ++i)
        pts.push_back({coord(rng), coord(rng)});
    PointSet a(2, pts);
    auto sys = make_system("t^2-2", {"t"});
    auto mats = dilate_matrices(sys, quadratic_basis(2));
    SumsetOptions opt;
    opt.threads = threads;
    time("sumset 300 pts, sqrt2", [&] { linear_sumset(a, mats, opt); });
    time("extremal sqrt2 n=20", [&] { extremal_set(sys, quadratic_basis(2), 20); });
    PeriodicSet per(IntegerLattice::scaled(1, 12), {{0}, {1}, {3}, {9}});
    Flag fl({IntegerLattice::scaled(1, 3), IntegerLattice::scaled(1, 1)});
    time("lattice density example", [&] { lattice_density(per, fl); });
    VoxelSet disk = VoxelSet::disk(0, 0, 1, Rat(1, 128));
    EigenStructure e{{EigenBlock{2, {1.0, 1.0}, {0.0, 0.7}}}};
    time("disk rotation 256^2", [&] { verify_cts_bound(disk, e); });
    r.summary["threads"] = threads;
    r.summary["repeat"] = repeat;
    return r;
}

} // namespace sumdil::cli
