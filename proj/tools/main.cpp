// harper: command-line front end for the almost Mathieu toolkit.
//
// Subcommands: rotation, ids, gaps, butterfly, duality, localize, reduce, dichotomy.
// Every output starts with a provenance echo of the resolved parameters, so identical
// invocations produce byte-identical files.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "harper/duality.hpp"
#include "harper/gaps.hpp"
#include "harper/io.hpp"
#include "harper/localization.hpp"
#include "harper/reducibility.hpp"
#include "harper/rotation.hpp"
#include "harper/version.hpp"

namespace {

using namespace harper;

struct CommonOpts {
    std::string omega_spec = "golden";
    std::string out_path;
    std::string format = "csv";
};

Frequency resolve_omega(const std::string& spec) {
    if (spec == "golden") return Frequency::golden();
    return Frequency(std::stod(spec));
}

std::unique_ptr<std::ostream, void (*)(std::ostream*)> open_out(const std::string& path) {
    if (path.empty()) return {&std::cout, [](std::ostream*) {}};
    auto* f = new std::ofstream(path);
    if (!*f) {
        delete f;
        throw std::runtime_error("cannot open output file: " + path);
    }
    return {static_cast<std::ostream*>(f), [](std::ostream* os) { delete os; }};
}

Provenance base_provenance(const std::string& cmd, const CommonOpts& common) {
    Provenance p;
    p.add("toolkit", std::string("harper ") + kVersion);
    p.add("command", cmd);
    p.add("omega", common.omega_spec);
    return p;
}

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--omega", common.omega_spec, "frequency: 'golden' or a decimal in (0,1)");
    cmd->add_option("--out", common.out_path, "output file (default: stdout)");
    cmd->add_option("--format", common.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
}

void echo_header(std::ostream& os, const Provenance& prov) {
    os << "#";
    for (auto& [k, v] : prov.entries) os << " " << k << "=" << v;
    os << "\n";
}

std::vector<std::pair<std::string, std::string>> json_fields(const Provenance& prov) {
    std::vector<std::pair<std::string, std::string>> fields;
    for (auto& [k, v] : prov.entries) fields.emplace_back(k, json_quote(v));
    return fields;
}

// ---- rotation ----

struct RotationArgs {
    CommonOpts common;
    double a = 0.0, b = 1.0, phi = 0.0, tol = 1e-2;
    long long N = 1000000;
    int L = 10000;
};

int run_rotation(const RotationArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    RelationsReport rep =
        check_relations(CocycleParams(args.a, args.b, omega.value(), args.phi), args.N, args.L);
    auto out = open_out(args.common.out_path);
    Provenance prov = base_provenance("rotation", args.common);
    prov.add("a", args.a);
    prov.add("b", args.b);
    prov.add("phi", args.phi);
    prov.add("N", args.N);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("tol", args.tol);
    if (args.common.format == "json") {
        auto fields = json_fields(prov);
        fields.emplace_back("rot", format_double(rep.rot));
        fields.emplace_back("rho_f", format_double(rep.rho_f));
        fields.emplace_back("ids", format_double(rep.ids_value));
        fields.emplace_back("dev_rot_ids", format_double(rep.dev_rot_ids));
        fields.emplace_back("dev_rot_rhof", format_double(rep.dev_rot_rhof));
        write_json_record(*out, fields);
    } else {
        echo_header(*out, prov);
        *out << "rot,rho_f,ids,dev_rot_ids,dev_rot_rhof\n"
             << format_double(rep.rot) << "," << format_double(rep.rho_f) << ","
             << format_double(rep.ids_value) << "," << format_double(rep.dev_rot_ids) << ","
             << format_double(rep.dev_rot_rhof) << "\n";
    }
    return std::max(rep.dev_rot_ids, rep.dev_rot_rhof) > args.tol ? 2 : 0;
}

// ---- ids ----

struct IdsArgs {
    CommonOpts common;
    double b = 1.0, a_min = -3.0, a_max = 3.0;
    int L = 10000, phases = 16, na = 101;
};

int run_ids(const IdsArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    IdsEvaluator ev(args.b, omega.value(), args.L, args.phases);
    auto out = open_out(args.common.out_path);
    Provenance prov = base_provenance("ids", args.common);
    prov.add("b", args.b);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("phases", static_cast<long long>(args.phases));
    prov.add("a_min", args.a_min);
    prov.add("a_max", args.a_max);
    prov.add("na", static_cast<long long>(args.na));
    echo_header(*out, prov);
    *out << "a,ids\n";
    for (int i = 0; i < args.na; ++i) {
        double a = args.na == 1 ? args.a_min
                                : args.a_min + (args.a_max - args.a_min) * i / (args.na - 1);
        *out << format_double(a) << "," << format_double(ev(a)) << "\n";
    }
    return 0;
}

// ---- gaps ----

struct GapsArgs {
    CommonOpts common;
    double b = 1.0;
    long long kmax = 12;
    int L = 10000, top = 0;
    std::string sidecar;
};

int run_gaps(const GapsArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    GapSearchOptions opts;
    opts.L = args.L;
    GapScanResult res = scan_gaps(args.b, omega, args.kmax, opts);
    if (args.top > 0 && static_cast<size_t>(args.top) < res.gaps.size())
        res.gaps.resize(static_cast<size_t>(args.top));
    Provenance prov = base_provenance("gaps", args.common);
    prov.add("b", args.b);
    prov.add("kmax", args.kmax);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("top", static_cast<long long>(args.top));
    auto out = open_out(args.common.out_path);
    write_gap_csv(*out, res.gaps, prov);
    if (!res.failures.empty()) {
        std::ofstream side(args.sidecar.empty() ? "gaps_failures.log" : args.sidecar);
        for (auto& [k, msg] : res.failures) side << k << ": " << msg << "\n";
    }
    return 0;
}

// ---- butterfly ----

struct ButterflyArgs {
    CommonOpts common;
    double a_min = -3.0, a_max = 3.0, b_min = 0.0, b_max = 4.0;
    int na = 201, nb = 41, L = 2000, phases = 8;
};

int run_butterfly(const ButterflyArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    ButterflyGrid grid = butterfly_grid({args.a_min, args.a_max}, {args.b_min, args.b_max},
                                        args.na, args.nb, omega, args.L, args.phases);
    Provenance prov = base_provenance("butterfly", args.common);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("phases", static_cast<long long>(args.phases));
    auto out = open_out(args.common.out_path);
    write_grid(*out, grid, prov);
    return 0;
}

// ---- duality ----

struct DualityArgs {
    CommonOpts common;
    double b = 1.0, tol = 3e-3;
    int samples = 50;
    long long N = 1000000;
};

int run_duality(const DualityArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    double dev = verify_duality(args.b, args.samples, omega, args.N);
    auto out = open_out(args.common.out_path);
    Provenance prov = base_provenance("duality", args.common);
    prov.add("b", args.b);
    prov.add("samples", static_cast<long long>(args.samples));
    prov.add("N", args.N);
    prov.add("tol", args.tol);
    auto fields = json_fields(prov);
    fields.emplace_back("max_deviation", format_double(dev));
    write_json_record(*out, fields);
    return dev > args.tol ? 2 : 0;
}

// ---- localize ----

struct LocalizeArgs {
    CommonOpts common;
    double b = 4.0, phi = 0.0, win_lo = -0.5, win_hi = 0.5;
    int L = 2001;
    std::string dual_out;
};

int run_localize(const LocalizeArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    auto pairs = diagonalize_truncation(args.b, args.phi, omega, args.L,
                                        {args.win_lo, args.win_hi});
    Provenance prov = base_provenance("localize", args.common);
    prov.add("b", args.b);
    prov.add("phi", args.phi);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("window_lo", args.win_lo);
    prov.add("window_hi", args.win_hi);
    auto out = open_out(args.common.out_path);
    write_eigenpair_csv(*out, pairs, prov);
    if (!args.dual_out.empty()) {
        // dual residuals of the most interior localized pairs, one JSON record per line
        std::ofstream dual(args.dual_out);
        std::vector<const EigenPair*> sel;
        for (const auto& e : pairs)
            if (e.beta > 0.1) sel.push_back(&e);
        std::sort(sel.begin(), sel.end(), [](const EigenPair* x, const EigenPair* y) {
            return std::llabs(x->center) < std::llabs(y->center);
        });
        if (sel.size() > 3) sel.resize(3);
        for (const EigenPair* e : sel) {
            DualSolution ds = dual_solution(*e, args.b, omega);
            write_json_record(dual, {{"b", format_double(args.b)},
                                     {"omega", format_double(omega.value())},
                                     {"a_k", format_double(e->a)},
                                     {"residual", format_double(ds.residual)},
                                     {"L", std::to_string(args.L)}});
        }
    }
    return 0;
}

// ---- reduce ----

struct ReduceArgs {
    CommonOpts common;
    double b = 4.0;
    int L = 2001, eigen_index = 0;
    long long max_center = 2;
    std::string dump_z;
};

int run_reduce(const ReduceArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    Interval box = spectrum_bounds(args.b);
    auto pairs = diagonalize_truncation(args.b, 0.0, omega, args.L, {box.lo, box.hi});
    // interior, localized eigenpairs: these are the dual gap edges with low resonance
    // labels, the ones whose Floquet data is resolvable at this truncation
    std::vector<EigenPair> sel;
    for (auto& e : pairs)
        if (std::llabs(e.center) <= args.max_center && e.beta > 0.1) sel.push_back(std::move(e));
    std::sort(sel.begin(), sel.end(),
              [](const EigenPair& x, const EigenPair& y) { return x.a < y.a; });
    if (sel.empty() || args.eigen_index < 0 ||
        static_cast<size_t>(args.eigen_index) >= sel.size())
        throw std::runtime_error("reduce: eigen-index out of range of interior eigenpairs");
    const EigenPair& e = sel[static_cast<size_t>(args.eigen_index)];

    DualSolution ds = dual_solution(e, args.b, omega);
    auto [ad, bd] = ds.dual_point();
    Vec2TorusMap v = vec2_map_from_function(
        [&](double th) { return Vec2{ds.eval(th), ds.eval(th - 2 * M_PI * omega.value())}; },
        4096);
    FloquetResult fr = floquet_reduce(harper_cocycle_map(ad, bd), v, omega);

    auto out = open_out(args.common.out_path);
    Provenance prov = base_provenance("reduce", args.common);
    prov.add("b", args.b);
    prov.add("L", static_cast<long long>(args.L));
    prov.add("eigen_index", static_cast<long long>(args.eigen_index));
    prov.add("max_center", args.max_center);
    auto fields = json_fields(prov);
    fields.emplace_back("a_k", format_double(e.a));
    fields.emplace_back("dual_a", format_double(ad));
    fields.emplace_back("dual_b", format_double(bd));
    fields.emplace_back("c", format_double(fr.c));
    fields.emplace_back("residual", format_double(fr.residual));
    fields.emplace_back("degreeZ", std::to_string(fr.degreeZ));
    fields.emplace_back("M", std::to_string(fr.M));
    fields.emplace_back("collapsed", collapsed_test(fr) ? "true" : "false");
    fields.emplace_back("c_nonzero", std::fabs(fr.c) > 10.0 * fr.residual ? "true" : "false");
    write_json_record(*out, fields);
    if (!args.dump_z.empty()) {
        std::ofstream zf(args.dump_z);
        write_torus_map_entry(zf, "z11", fr.Z.e11);
        write_torus_map_entry(zf, "z12", fr.Z.e12);
        write_torus_map_entry(zf, "z21", fr.Z.e21);
        write_torus_map_entry(zf, "z22", fr.Z.e22);
    }
    return 0;
}

// ---- dichotomy ----

struct DichotomyArgs {
    CommonOpts common;
    double a = 0.0, b = 1.0;
    long long N = 1000000;
};

int run_dichotomy(const DichotomyArgs& args) {
    Frequency omega = resolve_omega(args.common.omega_spec);
    bool hyper = dichotomy_test_harper(args.a, args.b, omega, args.N);
    auto out = open_out(args.common.out_path);
    Provenance prov = base_provenance("dichotomy", args.common);
    prov.add("a", args.a);
    prov.add("b", args.b);
    prov.add("N", args.N);
    auto fields = json_fields(prov);
    fields.emplace_back("exponential_dichotomy", hyper ? "true" : "false");
    write_json_record(*out, fields);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harper: numerical toolkit for the almost Mathieu operator"};
    app.set_config("--config", "",
                   "plain-text key=value config with a [subcommand] section, merged under flags");
    app.require_subcommand(1);

    RotationArgs rot_args;
    auto* rotation = app.add_subcommand("rotation", "rotation numbers, IDS and their relations");
    add_common(rotation, rot_args.common);
    rotation->add_option("--a", rot_args.a);
    rotation->add_option("--b", rot_args.b);
    rotation->add_option("--phi", rot_args.phi);
    rotation->add_option("--N", rot_args.N);
    rotation->add_option("--L", rot_args.L);
    rotation->add_option("--tol", rot_args.tol, "deviation threshold for exit code 2");

    IdsArgs ids_args;
    auto* idsc = app.add_subcommand("ids", "integrated density of states on an a-grid");
    add_common(idsc, ids_args.common);
    idsc->add_option("--b", ids_args.b);
    idsc->add_option("--L", ids_args.L);
    idsc->add_option("--phases", ids_args.phases);
    idsc->add_option("--a-min", ids_args.a_min);
    idsc->add_option("--a-max", ids_args.a_max);
    idsc->add_option("--na", ids_args.na);

    GapsArgs gaps_args;
    auto* gaps = app.add_subcommand("gaps", "labelled spectral gaps, widest first");
    add_common(gaps, gaps_args.common);
    gaps->add_option("--b", gaps_args.b);
    gaps->add_option("--kmax", gaps_args.kmax);
    gaps->add_option("--L", gaps_args.L);
    gaps->add_option("--top", gaps_args.top, "keep only the widest `top` gaps");
    gaps->add_option("--failures", gaps_args.sidecar, "sidecar file for per-label failures");

    ButterflyArgs fly_args;
    auto* butterfly = app.add_subcommand("butterfly", "IDS grid over (a, b) for plotting");
    add_common(butterfly, fly_args.common);
    butterfly->add_option("--a-min", fly_args.a_min);
    butterfly->add_option("--a-max", fly_args.a_max);
    butterfly->add_option("--b-min", fly_args.b_min);
    butterfly->add_option("--b-max", fly_args.b_max);
    butterfly->add_option("--na", fly_args.na);
    butterfly->add_option("--nb", fly_args.nb);
    butterfly->add_option("--L", fly_args.L);
    butterfly->add_option("--phases", fly_args.phases);

    DualityArgs dual_args;
    auto* duality = app.add_subcommand("duality", "rotation-number duality check");
    add_common(duality, dual_args.common);
    duality->add_option("--b", dual_args.b);
    duality->add_option("--samples", dual_args.samples);
    duality->add_option("--N", dual_args.N);
    duality->add_option("--tol", dual_args.tol, "deviation threshold for exit code 2");

    LocalizeArgs loc_args;
    auto* localize = app.add_subcommand("localize", "eigenpairs and decay exponents");
    add_common(localize, loc_args.common);
    localize->add_option("--b", loc_args.b);
    localize->add_option("--phi", loc_args.phi);
    localize->add_option("--L", loc_args.L);
    localize->add_option("--window-lo", loc_args.win_lo);
    localize->add_option("--window-hi", loc_args.win_hi);
    localize->add_option("--dual-out", loc_args.dual_out,
                         "write dual-residual JSON records for the most interior pairs");

    ReduceArgs red_args;
    auto* reduce = app.add_subcommand("reduce", "Floquet reduction at a dual gap edge");
    add_common(reduce, red_args.common);
    reduce->add_option("--b", red_args.b);
    reduce->add_option("--L", red_args.L);
    reduce->add_option("--eigen-index", red_args.eigen_index,
                       "index into the interior eigenpairs, lowest eigenvalue first");
    reduce->add_option("--max-center", red_args.max_center);
    reduce->add_option("--dump-z", red_args.dump_z, "write the conjugation's coefficient table");

    DichotomyArgs dic_args;
    auto* dichotomy = app.add_subcommand("dichotomy", "exponential-dichotomy test at (a, b)");
    add_common(dichotomy, dic_args.common);
    dichotomy->add_option("--a", dic_args.a);
    dichotomy->add_option("--b", dic_args.b);
    dichotomy->add_option("--N", dic_args.N);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rotation->parsed()) return run_rotation(rot_args);
        if (idsc->parsed()) return run_ids(ids_args);
        if (gaps->parsed()) return run_gaps(gaps_args);
        if (butterfly->parsed()) return run_butterfly(fly_args);
        if (duality->parsed()) return run_duality(dual_args);
        if (localize->parsed()) return run_localize(loc_args);
        if (reduce->parsed()) return run_reduce(red_args);
        if (dichotomy->parsed()) return run_dichotomy(dic_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
