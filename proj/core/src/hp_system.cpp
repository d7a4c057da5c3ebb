#include "slinv/hp_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "slinv/quadrature.hpp"
#include "slinv/representation.hpp"

namespace slinv {

namespace {

void check_p(int p) {
    if (p < 1) throw ParityMismatch("p must be a positive integer, got " + std::to_string(p));
}

cplx slot(cplx lambda, FValues f, int a) { return (a % 2 == 0 ? f.f1 : f.f2) * ipow(lambda, a / 2); }

// sinh(x L)/x and sin(x L)/x with their limits at x = 0.
double sinhc(double x, double L) { return std::abs(x) < 1e-8 ? L : std::sinh(x * L) / x; }
double sinc(double x, double L) { return std::abs(x) < 1e-8 ? L : std::sin(x * L) / x; }

}  // namespace

HpVector build_v(cplx lambda, FValues f, int p, const Grid& grid) {
    check_p(p);
    const cplx rho = branch_sqrt(lambda);
    HpVector v = HpVector::zero(grid, p);
    for (int j = 0; j < grid.nodes(); ++j) {
        const double t = grid.node(j);
        v.H1[j] = f.f1 * v_kernel1(lambda, rho, p, t);
        v.H2[j] = f.f2 * v_kernel2(lambda, rho, p, t);
    }
    for (int a = 0; a < p; ++a) v.h[a] = slot(lambda, f, a);
    return v;
}

HpVector build_v(cplx lambda, const EntirePair& f, int p, const Grid& grid) { return build_v(lambda, f(lambda), p, grid); }

cplx build_w(cplx lambda, FValues f, int p) {
    check_p(p);
    const cplx rho = branch_sqrt(lambda);
    return p % 2 ? f.f1 * v_kernel1(lambda, rho, p, pi) - f.f2 * v_kernel2(lambda, rho, p, pi)
                 : f.f1 * v_kernel1(lambda, rho, p, pi) + f.f2 * v_kernel2(lambda, rho, p, pi);
}

cplx build_w(cplx lambda, const EntirePair& f, int p) { return build_w(lambda, f(lambda), p); }

double v_norm(cplx lambda, FValues f, int p) {
    check_p(p);
    const cplx rho = branch_sqrt(lambda);
    const double a = rho.real(), b = rho.imag();
    const double sin2 = 0.5 * (sinhc(2 * b, pi) - sinc(2 * a, pi));
    const double cos2 = 0.5 * (sinhc(2 * b, pi) + sinc(2 * a, pi));
    const double r2 = std::norm(rho);
    double acc;
    if (p % 2)
        acc = std::norm(f.f1) * std::pow(r2, p) * sin2 + std::norm(f.f2) * std::pow(r2, p - 1) * cos2;
    else
        acc = std::norm(f.f1) * std::pow(r2, p) * cos2 + std::norm(f.f2) * std::pow(r2, p - 1) * sin2;
    for (int s = 0; s < p; ++s) acc += std::norm(slot(lambda, f, s));
    return std::sqrt(acc);
}

HpVector build_g(cplx lambda, cplx delta0, cplx delta1, int p, const Grid& grid) {
    return build_v(lambda, FValues{delta0, -delta1}, p, grid);
}

double moment_identity_check(const HpVector& u, cplx lambda, FValues f, int p, cplx delta) {
    const HpVector v = build_v(lambda, f, p, u.grid);
    const cplx lhs = hp_inner(u, v);
    const double num = std::abs(lhs - delta - build_w(lambda, f, p));
    const cplx rho = branch_sqrt(lambda);
    const double scale = std::abs(f.f1) * envelope(rho, p) + std::abs(f.f2) * envelope(rho, p - 1);
    return scale > 0 ? num / scale : num;
}

cplx moment_functional(const CauchyData& data, cplx lambda, FValues f, int p) {
    check_p(p);
    if (data.p() != p) throw DimensionMismatch("Cauchy data carries " + std::to_string(data.p()) + " constants, p = " + std::to_string(p));
    const cplx rho = branch_sqrt(lambda);
    cplx acc = 0.0;
    if (data.J_series && data.G_series) {
        const int deg = std::max(data.J_series->degree(), data.G_series->degree());
        const GaussRule rule = oscillatory_rule(deg, std::abs(rho), data.grid.length);
        const CVec J = data.J_series->sample(rule.nodes), G = data.G_series->sample(rule.nodes);
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
            const double t = rule.nodes[j];
            acc += rule.weights[j] * (J[j] * f.f1 * v_kernel1(lambda, rho, p, t) + G[j] * f.f2 * v_kernel2(lambda, rho, p, t));
        }
    } else {
        const RVec w = data.grid.weights();
        for (int j = 0; j < data.grid.nodes(); ++j) {
            const double t = data.grid.node(j);
            acc += w[j] * (data.J[j] * f.f1 * v_kernel1(lambda, rho, p, t) + data.G[j] * f.f2 * v_kernel2(lambda, rho, p, t));
        }
    }
    for (int a = 0; a < p; ++a) acc += data.A[a] * slot(lambda, f, a);
    return acc;
}

double moment_identity_check(const CauchyData& data, cplx lambda, FValues f, int p, cplx delta) {
    const cplx lhs = moment_functional(data, lambda, f, p);
    const double num = std::abs(lhs - delta - build_w(lambda, f, p));
    const cplx rho = branch_sqrt(lambda);
    const double scale = std::abs(f.f1) * envelope(rho, p) + std::abs(f.f2) * envelope(rho, p - 1);
    return scale > 0 ? num / scale : num;
}

MomentSystem build_moment_system(const Subspectrum& lambdas, const EntirePair& f, int p, const Grid& grid) {
    check_p(p);
    if (lambdas.empty()) throw InvalidArgument("subspectrum is empty");
    const SubspectrumReport cls = lambdas.classify();
    if (!cls.class_s)
        throw DuplicateEigenvalue("subspectrum has coincident eigenvalues (min separation " +
                                  std::to_string(cls.min_separation) + ")");
    MomentSystem sys;
    sys.grid = grid;
    sys.p = p;
    sys.parity = p % 2 ? Parity::odd : Parity::even;
    sys.lambdas = lambdas;
    sys.analytic = true;
    const int N = lambdas.size();
    sys.fvals.resize(N);
    sys.vs.resize(N);
    sys.ws.resize(N);
    sys.norms.resize(N);
    for (int n = 0; n < N; ++n) {
        const cplx l = lambdas.lambda(n);
        sys.fvals[n] = f(l);
        sys.vs[n] = build_v(l, sys.fvals[n], p, grid);
        sys.ws[n] = build_w(l, sys.fvals[n], p);
        sys.norms[n] = v_norm(l, sys.fvals[n], p);
        if (!(sys.norms[n] > 0))
            throw InvalidArgument("f1 and f2 vanish together at lambda_" + std::to_string(n + 1));
    }
    return sys;
}

MomentSystem moment_system_from_rows(std::vector<HpVector> vs, CVec ws) {
    if (vs.empty()) throw InvalidArgument("moment system needs at least one row");
    if (static_cast<Eigen::Index>(vs.size()) != ws.size()) throw DimensionMismatch("rows and right-hand side differ in length");
    MomentSystem sys;
    sys.grid = vs.front().grid;
    sys.p = vs.front().p();
    sys.parity = sys.p % 2 ? Parity::odd : Parity::even;
    sys.norms.resize(static_cast<Eigen::Index>(vs.size()));
    for (size_t n = 0; n < vs.size(); ++n) {
        if (!(vs[n].grid == sys.grid) || vs[n].p() != sys.p) throw DimensionMismatch("moment rows must share grid and p");
        sys.norms[static_cast<Eigen::Index>(n)] = hp_norm(vs[n]);
        if (!(sys.norms[static_cast<Eigen::Index>(n)] > 0)) throw InvalidArgument("moment row has zero norm");
    }
    sys.vs = std::move(vs);
    sys.ws = std::move(ws);
    return sys;
}

double xi_identity_residual(const std::vector<cplx>& rhos, int quad_nodes) {
    double rmax = 0.0;
    for (const auto& r : rhos) rmax = std::max(rmax, std::abs(r));
    const int n = quad_nodes > 0 ? quad_nodes : 64 + static_cast<int>(std::ceil(4.0 * rmax));
    const GaussRule full = gauss_legendre(2 * n, 0.0, 2 * pi);
    const GaussRule half = gauss_legendre(n, 0.0, pi);
    const int K = static_cast<int>(rhos.size());
    CMat s(K, full.nodes.size()), x1(K, half.nodes.size()), x2(K, half.nodes.size());
    for (int k = 0; k < K; ++k) {
        const cplx r = rhos[k];
        for (Eigen::Index j = 0; j < full.nodes.size(); ++j) s(k, j) = std::sin(r * full.nodes[j]);
        for (Eigen::Index j = 0; j < half.nodes.size(); ++j) {
            x1(k, j) = std::sin(r * half.nodes[j]) * std::cos(r * pi);
            x2(k, j) = -std::cos(r * half.nodes[j]) * std::sin(r * pi);
        }
    }
    const CMat lhs = s.conjugate() * full.weights.cast<cplx>().asDiagonal() * s.transpose();
    const CMat rhs = x1.conjugate() * half.weights.cast<cplx>().asDiagonal() * x1.transpose() +
                     x2.conjugate() * half.weights.cast<cplx>().asDiagonal() * x2.transpose();
    return (lhs - 2.0 * rhs).cwiseAbs().maxCoeff();
}

CMat moment_gram(const MomentSystem& sys) {
    const int N = sys.size();
    CMat G(N, N);
    for (int n = 0; n < N; ++n)
        for (int k = n; k < N; ++k) {
            const cplx g = hp_inner(sys.vs[n], sys.vs[k]);
            G(n, k) = g;
            G(k, n) = std::conj(g);
        }
    const RVec d = G.diagonal().real().cwiseSqrt();
    for (int n = 0; n < N; ++n)
        for (int k = 0; k < N; ++k) G(n, k) /= d[n] * d[k];
    return G;
}

CMat sine_gram(const std::vector<cplx>& rhos, double length) {
    double rmax = 0.0;
    for (const auto& r : rhos) rmax = std::max(rmax, std::abs(r));
    const GaussRule rule = oscillatory_rule(0, 2.0 * rmax, length);
    const int K = static_cast<int>(rhos.size());
    CMat s(K, rule.nodes.size());
    for (int k = 0; k < K; ++k)
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) s(k, j) = std::sin(rhos[k] * rule.nodes[j]);
    CMat G = s.conjugate() * rule.weights.cast<cplx>().asDiagonal() * s.transpose();
    const RVec d = G.diagonal().real().cwiseSqrt();
    for (int n = 0; n < K; ++n)
        for (int k = 0; k < K; ++k) G(n, k) /= d[n] * d[k];
    return G;
}

BasisDiagnostics basis_diagnostics(const CMat& gram, double cond_threshold, double growth_limit) {
    const int N = static_cast<int>(gram.rows());
    if (N < 2 || gram.cols() != N) throw InvalidArgument("basis diagnostics need a square Gram matrix of size >= 2");
    BasisDiagnostics d;
    for (int n = N; n >= 2; n /= 2) d.sizes.insert(d.sizes.begin(), n);
    for (int n : d.sizes) {
        Eigen::SelfAdjointEigenSolver<CMat> es(gram.topLeftCorner(n, n), Eigen::EigenvaluesOnly);
        const RVec ev = es.eigenvalues().cwiseAbs();
        const double lo = ev.minCoeff(), hi = ev.maxCoeff();
        d.conds.push_back(lo > 0 ? hi / lo : std::numeric_limits<double>::infinity());
        if (n == N) {
            d.min_sv = lo;
            d.max_sv = hi;
            d.cond = d.conds.back();
        }
    }
    d.basis_like = std::all_of(d.conds.begin(), d.conds.end(), [&](double c) { return c < cond_threshold; });
    d.growth_ok = true;
    for (size_t i = 1; i < d.conds.size(); ++i)
        if (d.conds[i] > (1.0 + growth_limit) * d.conds[i - 1]) d.growth_ok = false;
    return d;
}

double collinearity(const HpVector& g, const HpVector& v) {
    if (!(g.grid == v.grid) || g.p() != v.p()) throw DimensionMismatch("collinearity: vectors live in different spaces");
    const RVec w = g.grid.weights().cwiseSqrt();
    const int n = g.grid.nodes();
    CMat m(2, 2 * n + g.p());
    m.row(0) << (g.H1.array() * w.array()).matrix().transpose(), (g.H2.array() * w.array()).matrix().transpose(), g.h.transpose();
    m.row(1) << (v.H1.array() * w.array()).matrix().transpose(), (v.H2.array() * w.array()).matrix().transpose(), v.h.transpose();
    Eigen::JacobiSVD<CMat> svd(m);
    const RVec& s = svd.singularValues();
    return s[0] > 0 ? s[1] / s[0] : 0.0;
}

}  // namespace slinv
