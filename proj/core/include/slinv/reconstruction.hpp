#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slinv/forward.hpp"
#include "slinv/hp_system.hpp"

namespace slinv {

enum class BasisKind { legendre, nodal };

const char* to_string(BasisKind b);

struct SolveOptions {
    double reg = 0.0;
    BasisKind basis = BasisKind::legendre;
    // Legendre degree per function; negative selects it from N and p.
    int degree = -1;
    double rank_tol = 1e-12;
    // Throw RankDeficient instead of returning the truncated minimum-norm solution.
    bool throw_on_rank = true;
};

struct MomentSolution {
    HpVector u;
    CauchyData data;
    RVec singular_values;
    double residual = 0.0;
    double condition = 0.0;
    double sv_ratio = 0.0;
    int dimension = 0;
    int rank = 0;
    int degree = -1;
    bool underdetermined = false;
    bool rank_deficient = false;
};

// Legendre degree chosen when SolveOptions::degree < 0.
int auto_degree(int rows, int p);

// Normalized (optionally Tikhonov-regularized) least squares for (u, v_n) = w_n.
MomentSolution solve_moment(const MomentSystem& system, const SolveOptions& opts = {});

struct ReconstructOptions {
    SolveOptions solve;
    double nonunique_tol = 1e-8;
};

struct ReconstructReport {
    int rows = 0;
    int dimension = 0;
    int rank = 0;
    int degree = -1;
    std::string basis;
    double reg = 0.0;
    double residual = 0.0;
    double condition = 0.0;
    double sv_ratio = 0.0;
    bool underdetermined = false;
    bool non_unique = false;
    bool f_common_zero_free = true;
    SubspectrumReport classes;
};

struct Reconstruction {
    CauchyData data;
    HpVector u;
    int p = 0;
    ReconstructReport report;

    DeltaPair deltas(cplx lambda) const { return deltas_from_cauchy(data, p, lambda); }
    cplx weyl(cplx lambda) const;
};

Reconstruction reconstruct(int p, const EntirePair& f, const Subspectrum& lambdas, const Grid& grid,
                           const ReconstructOptions& opts = {});

struct CauchyErrors {
    double u = 0.0;
    double J = 0.0;
    double G = 0.0;
    double A = 0.0;
};

// Absolute differences in the H_p norm, L2 norms of J and G, and max |A|.
CauchyErrors cauchy_difference(const CauchyData& a, const CauchyData& b);

struct StabilityRow {
    double omega = 0.0;
    int trial = 0;
    CauchyErrors err;
    bool ok = true;
    bool non_unique = false;
    std::string error;
};

struct StabilityLevel {
    double omega = 0.0;
    double median_ratio_u = 0.0;
    int failures = 0;
};

struct StabilityResult {
    std::vector<StabilityRow> rows;
    std::vector<StabilityLevel> levels;
    // max over trials at the smallest positive omega of err / omega.
    CauchyErrors fitted_c;
    // largest / smallest median ratio over the positive levels.
    double ratio_spread = 0.0;
};

// Perturbs rho_n by seeded complex Gaussian noise rescaled to each omega and reconstructs.
StabilityResult stability_experiment(int p, const EntirePair& f, const Subspectrum& base, const Grid& grid,
                                     const std::vector<double>& omegas, int trials, std::uint64_t seed,
                                     const ReconstructOptions& opts = {}, unsigned threads = 0);

}  // namespace slinv
