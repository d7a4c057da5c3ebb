#include "slinv/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "slinv/parallel.hpp"
#include "slinv/quadrature.hpp"
#include "slinv/representation.hpp"

namespace slinv {

const char* to_string(BasisKind b) { return b == BasisKind::legendre ? "legendre" : "nodal"; }

int auto_degree(int rows, int p) { return std::clamp((rows - p) / 2 - 3, 0, 24); }

namespace {

// Rows of the design matrix in the orthonormal Legendre basis: entry k is (e_k-th coordinate) of v_n.
CMat legendre_design(const MomentSystem& sys, int L) {
    const int N = sys.size(), p = sys.p, D = 2 * (L + 1) + p;
    const double X = sys.grid.length;
    CMat B = CMat::Zero(N, D);
    if (sys.analytic) {
        double rmax = 0.0;
        for (const auto& r : sys.lambdas.rhos()) rmax = std::max(rmax, std::abs(r));
        const GaussRule rule = oscillatory_rule(L, rmax, X);
        const CMat P = legendre_basis(L, X, rule.nodes).cast<cplx>();
        for (int n = 0; n < N; ++n) {
            const cplx lam = sys.lambdas.lambda(n), rho = sys.lambdas.rho(n);
            const FValues f = sys.fvals[n];
            CVec k1(rule.nodes.size()), k2(rule.nodes.size());
            for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
                k1[j] = rule.weights[j] * f.f1 * v_kernel1(lam, rho, p, rule.nodes[j]);
                k2[j] = rule.weights[j] * f.f2 * v_kernel2(lam, rho, p, rule.nodes[j]);
            }
            B.row(n).segment(0, L + 1) = (P * k1).transpose();
            B.row(n).segment(L + 1, L + 1) = (P * k2).transpose();
            B.row(n).tail(p) = sys.vs[n].h.transpose();
        }
    } else {
        const RVec w = sys.grid.weights();
        const CMat P = (legendre_basis(L, X, sys.grid.points()) * w.asDiagonal()).cast<cplx>();
        for (int n = 0; n < N; ++n) {
            B.row(n).segment(0, L + 1) = (P * sys.vs[n].H1).transpose();
            B.row(n).segment(L + 1, L + 1) = (P * sys.vs[n].H2).transpose();
            B.row(n).tail(p) = sys.vs[n].h.transpose();
        }
    }
    return B;
}

// Rows in nodal coordinates scaled by sqrt of the quadrature weights.
CMat nodal_design(const MomentSystem& sys) {
    const int N = sys.size(), p = sys.p, n = sys.grid.nodes();
    const RVec sw = sys.grid.weights().cwiseSqrt();
    CMat B(N, 2 * n + p);
    for (int r = 0; r < N; ++r) {
        B.row(r).segment(0, n) = (sys.vs[r].H1.array() * sw.array()).matrix().transpose();
        B.row(r).segment(n, n) = (sys.vs[r].H2.array() * sw.array()).matrix().transpose();
        B.row(r).tail(p) = sys.vs[r].h.transpose();
    }
    return B;
}

}  // namespace

MomentSolution solve_moment(const MomentSystem& sys, const SolveOptions& opts) {
    const int N = sys.size();
    if (N == 0) throw InvalidArgument("moment system is empty");
    if (sys.ws.size() != N || sys.norms.size() != N) throw DimensionMismatch("moment system arrays differ in length");
    if (opts.reg < 0) throw InvalidArgument("regularization must be nonnegative");
    MomentSolution out;
    CMat B;
    if (opts.basis == BasisKind::legendre) {
        out.degree = opts.degree >= 0 ? opts.degree : auto_degree(N, sys.p);
        B = legendre_design(sys, out.degree);
    } else {
        B = nodal_design(sys);
    }
    CVec b = sys.ws;
    for (int n = 0; n < N; ++n) {
        B.row(n) /= sys.norms[n];
        b[n] /= sys.norms[n];
    }
    out.dimension = static_cast<int>(B.cols());
    out.underdetermined = N < out.dimension;

    Eigen::BDCSVD<CMat> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec s = svd.singularValues();
    out.singular_values = s;
    const double smax = s.size() ? s[0] : 0.0;
    const double smin = s.size() ? s[s.size() - 1] : 0.0;
    out.sv_ratio = smax > 0 ? smin / smax : 0.0;
    out.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
    out.rank_deficient = out.sv_ratio <= opts.rank_tol;
    if (out.rank_deficient && opts.throw_on_rank && opts.reg == 0.0)
        throw RankDeficient("normalized moment matrix is rank deficient (min/max singular value " +
                            std::to_string(out.sv_ratio) + ")");
    const CVec ub = svd.matrixU().adjoint() * b;
    CVec coef(s.size());
    out.rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > opts.rank_tol * smax) ++out.rank;
        if (opts.reg > 0)
            coef[i] = ub[i] * (s[i] / (s[i] * s[i] + opts.reg));
        else
            coef[i] = s[i] > opts.rank_tol * smax ? ub[i] / s[i] : cplx(0.0);
    }
    const CVec x = svd.matrixV() * coef;
    out.residual = (B * x - b).cwiseAbs().maxCoeff();

    const int p = sys.p;
    if (opts.basis == BasisKind::legendre) {
        const int L = out.degree;
        out.data = CauchyData::from_series(sys.grid, LegendreSeries{sys.grid.length, x.segment(0, L + 1)},
                                           LegendreSeries{sys.grid.length, x.segment(L + 1, L + 1)}, x.tail(p));
    } else {
        const int n = sys.grid.nodes();
        const RVec sw = sys.grid.weights().cwiseSqrt();
        out.data.grid = sys.grid;
        out.data.J = (x.segment(0, n).array() / sw.array()).matrix();
        out.data.G = (x.segment(n, n).array() / sw.array()).matrix();
        out.data.A = x.tail(p);
    }
    out.u = pack_u(out.data);
    return out;
}

cplx Reconstruction::weyl(cplx lambda) const {
    const DeltaPair d = deltas(lambda);
    if (std::abs(d.d1) <= 1e-12 * envelope(branch_sqrt(lambda), p))
        throw PoleProximity("lambda is within tolerance of a pole of the recovered Weyl function");
    return d.d0 / d.d1;
}

Reconstruction reconstruct(int p, const EntirePair& f, const Subspectrum& lambdas, const Grid& grid,
                           const ReconstructOptions& opts) {
    if (lambdas.empty()) throw InvalidArgument("subspectrum is empty");
    const MomentSystem sys = build_moment_system(lambdas, f, p, grid);
    SolveOptions so = opts.solve;
    so.throw_on_rank = false;
    const MomentSolution sol = solve_moment(sys, so);
    Reconstruction r;
    r.data = sol.data;
    r.u = sol.u;
    r.p = p;
    ReconstructReport& rep = r.report;
    rep.rows = sys.size();
    rep.dimension = sol.dimension;
    rep.rank = sol.rank;
    rep.degree = sol.degree;
    rep.basis = to_string(so.basis);
    rep.reg = so.reg;
    rep.residual = sol.residual;
    rep.condition = sol.condition;
    rep.sv_ratio = sol.sv_ratio;
    rep.underdetermined = sol.underdetermined;
    rep.non_unique = sol.underdetermined || sol.sv_ratio <= opts.nonunique_tol;
    rep.classes = lambdas.classify();
    for (const auto& fv : sys.fvals)
        if (std::abs(fv.f1) == 0.0 && std::abs(fv.f2) == 0.0) rep.f_common_zero_free = false;
    return r;
}

CauchyErrors cauchy_difference(const CauchyData& a, const CauchyData& b) {
    if (!(a.grid == b.grid) || a.p() != b.p()) throw DimensionMismatch("Cauchy data live on different grids or p");
    const RVec w = a.grid.weights();
    CauchyErrors e;
    const double dj = (w.array() * (a.J - b.J).array().abs2()).sum();
    const double dg = (w.array() * (a.G - b.G).array().abs2()).sum();
    const double da = (a.A - b.A).squaredNorm();
    e.J = std::sqrt(dj);
    e.G = std::sqrt(dg);
    e.A = a.p() ? (a.A - b.A).cwiseAbs().maxCoeff() : 0.0;
    e.u = std::sqrt(dj + dg + da);
    return e;
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

StabilityResult stability_experiment(int p, const EntirePair& f, const Subspectrum& base, const Grid& grid,
                                     const std::vector<double>& omegas, int trials, std::uint64_t seed,
                                     const ReconstructOptions& opts, unsigned threads) {
    if (trials < 1) throw InvalidArgument("stability experiment needs at least one trial");
    for (double o : omegas)
        if (!(o >= 0) || !std::isfinite(o)) throw InvalidArgument("noise levels must be finite and nonnegative");
    const Reconstruction ref = reconstruct(p, f, base, grid, opts);
    const int L = static_cast<int>(omegas.size());
    StabilityResult res;
    res.rows.resize(static_cast<size_t>(L) * trials);
    parallel_for(
        L * trials,
        [&](int idx) {
            const int level = idx / trials, trial = idx % trials;
            StabilityRow& row = res.rows[idx];
            row.omega = omegas[level];
            row.trial = trial;
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(trial)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> gauss;
            const int N = base.size();
            std::vector<cplx> eps(N);
            double norm2 = 0.0;
            for (auto& e : eps) {
                const double re = gauss(rng), im = gauss(rng);
                e = {re, im};
                norm2 += std::norm(e);
            }
            const double scale = row.omega > 0 ? row.omega / std::sqrt(norm2) : 0.0;
            std::vector<cplx> lam(N);
            for (int n = 0; n < N; ++n) {
                const cplx r = base.rho(n) + scale * eps[n];
                lam[n] = row.omega > 0 ? r * r : base.lambda(n);
            }
            try {
                const Reconstruction rec = reconstruct(p, f, Subspectrum(lam), grid, opts);
                row.err = cauchy_difference(rec.data, ref.data);
                row.non_unique = rec.report.non_unique;
            } catch (const Error& e) {
                row.ok = false;
                row.error = e.what();
            }
        },
        threads);

    double smallest = std::numeric_limits<double>::infinity();
    for (double o : omegas)
        if (o > 0) smallest = std::min(smallest, o);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int level = 0; level < L; ++level) {
        StabilityLevel lv;
        lv.omega = omegas[level];
        std::vector<double> ratios;
        for (int t = 0; t < trials; ++t) {
            const StabilityRow& row = res.rows[static_cast<size_t>(level) * trials + t];
            if (!row.ok) {
                ++lv.failures;
                continue;
            }
            if (lv.omega > 0) ratios.push_back(row.err.u / lv.omega);
            if (lv.omega == smallest) {
                res.fitted_c.u = std::max(res.fitted_c.u, row.err.u / lv.omega);
                res.fitted_c.J = std::max(res.fitted_c.J, row.err.J / lv.omega);
                res.fitted_c.G = std::max(res.fitted_c.G, row.err.G / lv.omega);
                res.fitted_c.A = std::max(res.fitted_c.A, row.err.A / lv.omega);
            }
        }
        lv.median_ratio_u = lv.omega > 0 ? median(ratios) : 0.0;
        if (lv.omega > 0 && !ratios.empty()) {
            lo = std::min(lo, lv.median_ratio_u);
            hi = std::max(hi, lv.median_ratio_u);
        }
        res.levels.push_back(lv);
    }
    res.ratio_spread = hi > 0 && lo > 0 ? hi / lo : 0.0;
    return res;
}

}  // namespace slinv
