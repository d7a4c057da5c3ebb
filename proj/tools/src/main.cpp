#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace fs = std::filesystem;
using namespace slinv;
using namespace slinv::cli;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNonUnique = 4;

struct Flags {
    int grid = 128;
    int eigs = 40;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool strict = false;
    double reg = 0.0;
    std::string report = "report.json";
    int drop = 0;
    std::vector<double> omega{1e-3, 1e-2};
    int trials = 20;
    double band = 5.0;
    std::string basis = "legendre";
    int degree = -1;
};

struct Inputs {
    std::vector<std::string> paths;
    std::string bytes;

    json load(const std::string& path) {
        const std::string text = read_file(path);
        paths.push_back(path);
        bytes += text;
        bytes.push_back('\0');
        return parse_json(text, path);
    }
    std::string hash() const { return fnv1a_hex(bytes); }
};

json grid_json(const Grid& g) { return {{"cells", g.cells}, {"length", g.length}}; }

json meta(const std::string& command, const Inputs& in, const json& grid, const json& flags) {
    json inputs = json::array();
    for (const auto& p : in.paths) inputs.push_back(fs::path(p).filename().string());
    return {{"tool", "slinv"}, {"version", slinv::version}, {"command", command},
            {"inputs", inputs}, {"input_hash", in.hash()},         {"grid", grid},
            {"flags", flags}};
}

void emit(const Flags& fl, const std::string& name, const std::string& content) {
    fs::create_directories(fl.out);
    write_file((fs::path(fl.out) / name).string(), content);
}

SolveOptions solve_options(const Flags& fl) {
    SolveOptions so;
    so.reg = fl.reg;
    so.degree = fl.degree;
    if (fl.basis == "legendre")
        so.basis = BasisKind::legendre;
    else if (fl.basis == "nodal")
        so.basis = BasisKind::nodal;
    else
        throw SchemaError("--basis must be 'legendre' or 'nodal'");
    return so;
}

Subspectrum forward_spectrum(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const EntirePair& f, int count,
                             const Flags& fl) {
    EigenSearchOptions so;
    so.verify_tol = fl.tol;
    const DeltaFn delta = [&](cplx lambda) { return char_delta(sigma, pair, f, lambda, {}); };
    // rho_n grows like n / 2 for two-sided f and like n otherwise; the window widens until count is reached.
    double s_hi = (count / 2.0 + 3.0) * pi / sigma.length();
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Subspectrum s = find_eigenvalues(delta, -50.0, s_hi * s_hi, fl.band, count, so);
        if (s.size() >= count) return s;
        s_hi *= std::clamp((count + 2.0) / std::max(s.size(), 1), 1.2, 3.0);
    }
    throw RootLoss("could not locate " + std::to_string(count) + " eigenvalues");
}

double l2(const Grid& g, const CVec& v) { return std::sqrt((g.weights().array() * v.array().abs2()).sum()); }

// Relative errors of recovered Cauchy data against an oracle resampled on the same grid.
json oracle_errors(const CauchyData& rec, const Extraction& ex) {
    const CauchyData orc = CauchyData::from_series(rec.grid, *ex.data.J_series, *ex.data.G_series, ex.data.A);
    const CauchyErrors e = cauchy_difference(rec, orc);
    const double nj = l2(rec.grid, orc.J), ng = l2(rec.grid, orc.G);
    const double nu = std::sqrt(nj * nj + ng * ng + orc.A.squaredNorm());
    return {{"rel_u", nu > 0 ? e.u / nu : e.u},
            {"rel_J", nj > 0 ? e.J / nj : e.J},
            {"rel_G", ng > 0 ? e.G / ng : e.G},
            {"abs_A", e.A},
            {"oracle", {{"K", ex.K}, {"degree", ex.degree}, {"residual", ex.residual}, {"condition", ex.condition}}}};
}

json flags_json(const Flags& fl, std::initializer_list<const char*> keys) {
    json j;
    for (const std::string k : keys) {
        if (k == "grid") j[k] = fl.grid;
        if (k == "eigs") j[k] = fl.eigs;
        if (k == "tol") j[k] = fl.tol;
        if (k == "seed") j[k] = fl.seed;
        if (k == "strict") j[k] = fl.strict;
        if (k == "reg") j[k] = fl.reg;
        if (k == "drop") j[k] = fl.drop;
        if (k == "omega") j[k] = fl.omega;
        if (k == "trials") j[k] = fl.trials;
        if (k == "band") j[k] = fl.band;
        if (k == "basis") j[k] = fl.basis;
        if (k == "degree") j[k] = fl.degree;
    }
    return j;
}

int cmd_forward(const std::string& path, const Flags& fl) {
    Inputs in;
    const ProblemFile pf = parse_problem(in.load(path));
    if (!pf.sigma || !pf.pair || !pf.f) throw SchemaError("forward needs 'sigma', 'p1', 'p2' and 'f'");
    if (fl.eigs < 1) throw SchemaError("--eigs must be positive");
    const SigmaFunction& sigma = *pf.sigma;
    const Subspectrum spec = forward_spectrum(sigma, *pf.pair, *pf.f, fl.eigs, fl);
    const json m = meta("forward", in, grid_json(sigma.grid()), flags_json(fl, {"eigs", "tol", "band"}));

    json weyl_samples = json::array();
    for (int k = 0; k < 16; ++k) {
        const cplx lambda = std::pow(0.5 + 0.5 * k, 2) + cplx(0.0, 0.25);
        json row = {{"lambda", to_json(lambda)}};
        try {
            row["M"] = to_json(weyl(sigma, *pf.pair, lambda));
        } catch (const PoleProximity&) {
            row["M"] = nullptr;
        }
        weyl_samples.push_back(row);
    }
    json out = {{"meta", m},
                {"p", pf.p},
                {"f_kind", pf.f->kind},
                {"count", spec.size()},
                {"eigenvalues", to_json(spec.lambdas())},
                {"rhos", to_json(spec.rhos())},
                {"classes", to_json(spec.classify())},
                {"weyl_samples", weyl_samples}};
    emit(fl, "spectrum.json", dump(out));

    if (std::abs(sigma.length() - pi) < 1e-12) {
        const Extraction ex = extract_cauchy(sigma, *pf.pair);
        json c = {{"meta", m},
                  {"extraction", {{"K", ex.K}, {"degree", ex.degree}, {"residual", ex.residual}, {"condition", ex.condition}}},
                  {"data", to_json(ex.data)}};
        emit(fl, "cauchy.json", dump(c));
    } else {
        std::cerr << "note: sigma is not on [0, pi]; cauchy.json skipped\n";
    }
    return 0;
}

int finish_reconstruction(const Flags& fl, const json& m, const Reconstruction& rec, json report) {
    emit(fl, "cauchy_recovered.json", dump({{"meta", m}, {"data", to_json(rec.data)}}));
    emit(fl, fl.report, dump(report));
    if (rec.report.non_unique) {
        std::cerr << "NonUniqueWarning: moment system is incomplete (rows " << rec.report.rows << ", dimension "
                  << rec.report.dimension << ", sv ratio " << rec.report.sv_ratio << ")\n";
        if (fl.strict) return kExitNonUnique;
    }
    return 0;
}

int cmd_reconstruct(const std::string& path, const std::string& sub_path, const Flags& fl) {
    Inputs in;
    const ProblemFile pf = parse_problem(in.load(path));
    if (!pf.f) throw SchemaError("reconstruct needs 'f'");
    if (pf.p < 1) throw SchemaError("reconstruct needs 'p' or the pair 'p1', 'p2'");
    Subspectrum sub;
    if (!sub_path.empty())
        sub = parse_subspectrum(in.load(sub_path), sub_path);
    else if (pf.subspectrum)
        sub = *pf.subspectrum;
    else
        throw SchemaError("no subspectrum given (second file or 'subspectrum' field)");
    if (fl.eigs > 0 && sub.size() > fl.eigs) sub = sub.slice(0, fl.eigs);
    if (fl.grid < 16) throw SchemaError("--grid must be at least 16");
    const Grid grid(fl.grid, pi);
    ReconstructOptions ro;
    ro.solve = solve_options(fl);
    const Reconstruction rec = reconstruct(pf.p, *pf.f, sub, grid, ro);
    const json m = meta("reconstruct", in, grid_json(grid), flags_json(fl, {"eigs", "reg", "strict", "basis", "degree"}));
    json report = {{"meta", m}, {"p", pf.p}, {"f_kind", pf.f->kind}, {"report", to_json(rec.report)}};
    if (pf.sigma && pf.pair && std::abs(pf.sigma->length() - pi) < 1e-12)
        report["errors"] = oracle_errors(rec.data, extract_cauchy(*pf.sigma, *pf.pair));
    return finish_reconstruction(fl, m, rec, report);
}

int cmd_hl(const std::string& path, const Flags& fl) {
    Inputs in;
    const TwoSidedFile tf = parse_two_sided(in.load(path));
    const TwoSidedProblem& tp = tf.problem;
    if (fl.drop < 0) throw SchemaError("--drop must be nonnegative");
    if (fl.grid < 16) throw SchemaError("--grid must be at least 16");
    if (fl.eigs < 1) throw SchemaError("--eigs must be positive");
    Subspectrum spec;
    if (tf.spectrum) {
        spec = *tf.spectrum;
    } else {
        HlSearchOptions so;
        so.imag_band = fl.band;
        so.search.verify_tol = fl.tol;
        spec = hl_spectrum(tp, fl.eigs + fl.drop, so);
    }
    const Grid grid(fl.grid, pi);
    ReconstructOptions ro;
    ro.solve = solve_options(fl);
    const HlReconstruction hr = hl_reconstruct(tp.sigma_right(), tp.right, tp.p(), spec, fl.drop, grid, fl.eigs, ro);
    const json m = meta("hl", in, grid_json(grid),
                        flags_json(fl, {"eigs", "drop", "reg", "strict", "tol", "band", "basis", "degree"}));
    if (!tf.spectrum) emit(fl, "spectrum.json", dump({{"meta", m}, {"eigenvalues", to_json(spec.lambdas())}}));
    json report = {{"meta", m},
                   {"p", tp.p()},
                   {"r", tp.r()},
                   {"hl", {{"drop", hr.hl.drop}, {"guaranteed_drop", hr.hl.guaranteed_drop}, {"drop_exceeds_rule", hr.hl.drop_exceeds_rule}}},
                   {"report", to_json(hr.rec.report)},
                   {"errors", oracle_errors(hr.rec.data, extract_cauchy(tp.sigma_left(), tp.left))}};
    return finish_reconstruction(fl, m, hr.rec, report);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_stability(const std::string& path, const std::string& sub_path, const Flags& fl) {
    Inputs in;
    const ProblemFile pf = parse_problem(in.load(path));
    if (!pf.f || pf.p < 1) throw SchemaError("stability needs 'f' and 'p' (or the pair)");
    if (fl.trials < 1) throw SchemaError("--trials must be positive");
    if (fl.omega.empty()) throw SchemaError("--omega needs at least one level");
    Subspectrum base;
    if (!sub_path.empty())
        base = parse_subspectrum(in.load(sub_path), sub_path);
    else if (pf.subspectrum)
        base = *pf.subspectrum;
    else if (pf.sigma && pf.pair)
        base = forward_spectrum(*pf.sigma, *pf.pair, *pf.f, fl.eigs, fl);
    else
        throw SchemaError("stability needs a subspectrum or a problem with sigma to compute one");
    if (fl.eigs > 0 && base.size() > fl.eigs) base = base.slice(0, fl.eigs);
    const Grid grid(fl.grid, pi);
    ReconstructOptions ro;
    ro.solve = solve_options(fl);
    const StabilityResult res = stability_experiment(pf.p, *pf.f, base, grid, fl.omega, fl.trials, fl.seed, ro);
    const json m = meta("stability", in, grid_json(grid), flags_json(fl, {"eigs", "omega", "trials", "seed", "reg"}));

    std::ostringstream csv;
    csv << "# tool=slinv version=" << slinv::version << " command=stability\n";
    csv << "# input_hash=" << in.hash() << " grid_cells=" << grid.cells << " grid_length=" << fmt(grid.length)
        << " seed=" << fl.seed << " rows=" << base.size() << "\n";
    csv << "omega,trial,err_u,err_J,err_G,err_A,ok\n";
    for (const auto& r : res.rows)
        csv << fmt(r.omega) << ',' << r.trial << ',' << fmt(r.err.u) << ',' << fmt(r.err.J) << ',' << fmt(r.err.G) << ','
            << fmt(r.err.A) << ',' << (r.ok ? 1 : 0) << '\n';
    emit(fl, "stability.csv", csv.str());

    json levels = json::array();
    for (const auto& lv : res.levels)
        levels.push_back({{"omega", lv.omega}, {"median_ratio_u", lv.median_ratio_u}, {"failures", lv.failures}});
    json summary = {{"meta", m},
                    {"levels", levels},
                    {"ratio_spread", res.ratio_spread},
                    {"fitted_c", {{"u", res.fitted_c.u}, {"J", res.fitted_c.J}, {"G", res.fitted_c.G}, {"A", res.fitted_c.A}}}};
    emit(fl, "stability.json", dump(summary));
    return 0;
}

json basis_json(const BasisDiagnostics& d) {
    return {{"sizes", d.sizes}, {"conds", d.conds},         {"cond", d.cond},
            {"min_sv", d.min_sv}, {"max_sv", d.max_sv}, {"basis_like", d.basis_like},
            {"growth_ok", d.growth_ok}};
}

int cmd_diagnose(const std::string& path, const Flags& fl) {
    Inputs in;
    const json j = in.load(path);
    Subspectrum sub;
    std::optional<ProblemFile> pf;
    if (j.is_array()) {
        sub = parse_subspectrum(j, path);
    } else {
        if (j.contains("eigenvalues") && !j.contains("subspectrum")) {
            sub = parse_subspectrum(j, path);
        } else {
            pf = parse_problem(j);
            if (!pf->subspectrum) throw SchemaError(path + ": no subspectrum to diagnose");
            sub = *pf->subspectrum;
        }
    }
    if (fl.eigs > 0 && sub.size() > fl.eigs) sub = sub.slice(0, fl.eigs);
    const int p = pf ? pf->p : 0;
    const json m = meta("diagnose", in, grid_json(Grid(fl.grid, pi)), flags_json(fl, {"eigs", "grid"}));
    json out = {{"meta", m}, {"count", sub.size()}, {"classes", to_json(sub.classify())}};

    std::vector<cplx> tail(sub.rhos().begin() + std::min(p, sub.size()), sub.rhos().end());
    if (tail.size() >= 2) {
        out["sine_family"] = {{"interval", 2 * pi}, {"first_index", p + 1}, {"diagnostics", basis_json(basis_diagnostics(sine_gram(tail, 2 * pi)))}};
    }
    std::vector<cplx> xi(sub.rhos().begin(), sub.rhos().begin() + std::min(sub.size(), 60));
    out["xi_identity_residual"] = xi_identity_residual(xi);
    if (pf && pf->f && p > 0 && sub.classify().class_s) {
        const MomentSystem sys = build_moment_system(sub, *pf->f, p, Grid(fl.grid, pi));
        out["moment_family"] = basis_json(basis_diagnostics(moment_gram(sys)));
    }
    emit(fl, "diagnostics.json", dump(out));
    return 0;
}

json problem_json(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const json& f, const Subspectrum* sub) {
    json j = {{"sigma", to_json(sigma)}};
    j.update(to_json(pair, "p1", "p2"));
    j["f"] = f;
    if (sub) j["subspectrum"] = to_json(sub->lambdas());
    return j;
}

int cmd_corpus(const Flags& fl) {
    std::vector<CorpusProblem> all = corpus();
    for (auto& c : hl_corpus()) all.push_back(c);
    for (const auto& c : all) {
        const TwoSidedProblem& tp = c.problem;
        Subspectrum spec;
        if (fl.eigs > 0) spec = hl_spectrum(tp, fl.eigs);
        json two = {{"name", c.name}, {"sigma_full", to_json(tp.sigma_full)}};
        two.update(to_json(tp.left, "p1", "p2"));
        two.update(to_json(tp.right, "r1", "r2"));
        if (fl.eigs > 0) two["spectrum"] = to_json(spec.lambdas());
        emit(fl, c.name + ".two_sided.json", dump(two));

        json f = {{"kind", "hl_right_half"}, {"sigma", to_json(tp.sigma_right())}};
        f.update(to_json(tp.right, "r1", "r2"));
        json prob = problem_json(tp.sigma_left(), tp.left, f, fl.eigs > 0 ? &spec : nullptr);
        emit(fl, c.name + ".problem.json", dump(prob));
    }
    const BoundaryPolyPair neumann{{1.0}, {0.0}};
    emit(fl, "zero-dirichlet.problem.json",
         dump(problem_json(corpus_sigma("zero", 512, pi), neumann, {{"kind", "closed_form_dirichlet_right"}}, nullptr)));
    emit(fl, "step-neumann.problem.json",
         dump(problem_json(corpus_sigma("step", 512, pi), BoundaryPolyPair{{1.0}, {0.5}}, {{"kind", "closed_form_neumann_right"}}, nullptr)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse Sturm-Liouville problems with polynomial and entire boundary conditions"};
    app.set_version_flag("--version", std::string(slinv::version));
    app.require_subcommand(1);
    Flags fl;
    std::string input, second;

    auto add_out = [&](CLI::App* c) { c->add_option("--out", fl.out, "Output directory")->capture_default_str(); };
    auto add_solve = [&](CLI::App* c) {
        c->add_option("--grid", fl.grid, "Cells of the [0, pi] grid for the recovered data")->capture_default_str();
        c->add_option("--reg", fl.reg, "Tikhonov parameter")->capture_default_str();
        c->add_option("--basis", fl.basis, "legendre | nodal")->capture_default_str();
        c->add_option("--degree", fl.degree, "Legendre degree (negative: automatic)")->capture_default_str();
    };

    auto* fwd = app.add_subcommand("forward", "Eigenvalues, Weyl samples and Cauchy data of a problem");
    fwd->add_option("problem", input, "problem.json")->required();
    fwd->add_option("--eigs", fl.eigs, "Number of eigenvalues")->capture_default_str();
    fwd->add_option("--tol", fl.tol, "Residual tolerance for accepted eigenvalues")->capture_default_str();
    fwd->add_option("--band", fl.band, "Half-width of the Im(lambda) search band (0: real axis)")->capture_default_str();
    add_out(fwd);

    auto* rec = app.add_subcommand("reconstruct", "Recover Cauchy data from a subspectrum");
    rec->add_option("problem", input, "problem.json")->required();
    rec->add_option("subspectrum", second, "subspectrum.json (defaults to the problem's field)");
    rec->add_option("--eigs", fl.eigs, "Use at most this many eigenvalues (0: all)")->capture_default_str();
    rec->add_flag("--strict", fl.strict, "Exit with code 4 when the solution is not unique");
    rec->add_option("--report", fl.report, "Report file name")->capture_default_str();
    add_solve(rec);
    add_out(rec);

    auto* hl = app.add_subcommand("hl", "Half-interval reconstruction from the spectrum of a two-sided problem");
    hl->add_option("two_sided", input, "two_sided.json")->required();
    hl->add_option("--drop", fl.drop, "Eigenvalues removed from the start of the spectrum")->capture_default_str();
    hl->add_option("--eigs", fl.eigs, "Eigenvalues used after the drop")->capture_default_str();
    hl->add_option("--tol", fl.tol, "Residual tolerance for accepted eigenvalues")->capture_default_str();
    hl->add_option("--band", fl.band, "Half-width of the Im(lambda) search band")->capture_default_str();
    hl->add_flag("--strict", fl.strict, "Exit with code 4 when the solution is not unique");
    hl->add_option("--report", fl.report, "Report file name")->capture_default_str();
    add_solve(hl);
    add_out(hl);

    auto* st = app.add_subcommand("stability", "Noise experiment on the eigenvalues");
    st->add_option("problem", input, "problem.json")->required();
    st->add_option("subspectrum", second, "subspectrum.json (defaults to the problem's field)");
    st->add_option("--omega", fl.omega, "Noise levels")->delimiter(',')->capture_default_str();
    st->add_option("--trials", fl.trials, "Trials per level")->capture_default_str();
    st->add_option("--seed", fl.seed, "Random seed")->capture_default_str();
    st->add_option("--eigs", fl.eigs, "Eigenvalues used")->capture_default_str();
    st->add_option("--tol", fl.tol, "Residual tolerance when the spectrum is computed")->capture_default_str();
    st->add_option("--band", fl.band, "Search band when the spectrum is computed")->capture_default_str();
    add_solve(st);
    add_out(st);

    auto* dg = app.add_subcommand("diagnose", "Class flags, Gram conditioning and xi-identity residual");
    dg->add_option("input", input, "subspectrum.json or problem.json")->required();
    dg->add_option("--eigs", fl.eigs, "Use at most this many eigenvalues (0: all)")->capture_default_str();
    dg->add_option("--grid", fl.grid, "Grid for the moment-system Gram matrix")->capture_default_str();
    add_out(dg);

    auto* cp = app.add_subcommand("corpus", "Write the reference problems as input files");
    cp->add_option("--eigs", fl.eigs, "Eigenvalues stored with each problem (0: none)")->capture_default_str();
    add_out(cp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSchema;
    }

    try {
        if (*fwd) return cmd_forward(input, fl);
        if (*rec) return cmd_reconstruct(input, second, fl);
        if (*hl) return cmd_hl(input, fl);
        if (*st) return cmd_stability(input, second, fl);
        if (*dg) return cmd_diagnose(input, fl);
        if (*cp) return cmd_corpus(fl);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const NormalizationViolation& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const CommonRoot& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const DimensionMismatch& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const ParityMismatch& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const DuplicateEigenvalue& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
