#pragma once

#include <vector>

#include "slinv/model.hpp"

namespace slinv {

// v(t, lambda) for the parity branch of p.
HpVector build_v(cplx lambda, FValues f, int p, const Grid& grid);
HpVector build_v(cplx lambda, const EntirePair& f, int p, const Grid& grid);
// w(lambda) for the parity branch of p.
cplx build_w(cplx lambda, FValues f, int p);
cplx build_w(cplx lambda, const EntirePair& f, int p);
// Exact norm of v(., lambda) (closed-form integrals).
double v_norm(cplx lambda, FValues f, int p);
// Diagnostic g(t, lambda): v with (f1, f2) replaced by (Delta_0, -Delta_1).
HpVector build_g(cplx lambda, cplx delta0, cplx delta1, int p, const Grid& grid);

// |(u, v(., lambda)) - Delta(lambda) - w(lambda)| / scale.
double moment_identity_check(const HpVector& u, cplx lambda, FValues f, int p, cplx delta);
// (u, v(., lambda)) for u = pack_u(data); integrates the Legendre series by Gauss quadrature when present.
cplx moment_functional(const CauchyData& data, cplx lambda, FValues f, int p);
double moment_identity_check(const CauchyData& data, cplx lambda, FValues f, int p, cplx delta);

struct MomentSystem {
    Grid grid;
    int p = 0;
    Parity parity = Parity::odd;
    Subspectrum lambdas;
    std::vector<FValues> fvals;
    std::vector<HpVector> vs;
    CVec ws;
    RVec norms;
    // Rows are v(., lambda_n) with known (f1, f2); otherwise only the sampled rows are meaningful.
    bool analytic = false;

    int size() const { return static_cast<int>(vs.size()); }
};

MomentSystem build_moment_system(const Subspectrum& lambdas, const EntirePair& f, int p, const Grid& grid);
// System with arbitrary sampled rows.
MomentSystem moment_system_from_rows(std::vector<HpVector> vs, CVec ws);

// max over pairs |(sin rho_n t, sin rho_k t)_(0,2pi) - 2 (xi_n, xi_k)|, by Gauss quadrature.
double xi_identity_residual(const std::vector<cplx>& rhos, int quad_nodes = 0);

struct BasisDiagnostics {
    std::vector<int> sizes;
    std::vector<double> conds;
    double min_sv = 0.0;
    double max_sv = 0.0;
    double cond = 0.0;
    bool basis_like = false;
    bool growth_ok = false;
};

// Gram matrix of the normalized rows of a moment system.
CMat moment_gram(const MomentSystem& sys);
// Gram matrix of normalized sin(rho_n t) on (0, length).
CMat sine_gram(const std::vector<cplx>& rhos, double length);
// Conditioning of leading principal truncations (sizes doubling up to the full size).
BasisDiagnostics basis_diagnostics(const CMat& gram, double cond_threshold = 1e6, double growth_limit = 0.2);

// Second over first singular value of [g; v] under the H_p metric.
double collinearity(const HpVector& g, const HpVector& v);

}  // namespace slinv
