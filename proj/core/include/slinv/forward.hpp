#pragma once

#include <functional>

#include "slinv/model.hpp"
#include "slinv/ode.hpp"
#include "slinv/poly.hpp"
#include "slinv/sigma.hpp"

namespace slinv {

struct DeltaPair {
    cplx d0;
    cplx d1;
};

// Delta_j = p1 C^[j](pi) - p2 S^[j](pi).
DeltaPair char_pair(const SigmaFunction& sigma, const BoundaryPolyPair& pair, cplx lambda, const OdeOptions& opts = {});
// Delta = f1 Delta_1 + f2 Delta_0.
cplx char_delta(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const EntirePair& f, cplx lambda,
                const OdeOptions& opts = {});

// M = Delta_0 / Delta_1; throws PoleProximity near zeros of Delta_1.
cplx weyl(const SigmaFunction& sigma, const BoundaryPolyPair& pair, cplx lambda, double pole_tol = 1e-9,
          const OdeOptions& opts = {});

struct EigenSearchOptions {
    // Scan spacing in the signed variable s with lambda = s|s|.
    double scan_step = 0.02;
    double verify_tol = 1e-6;
    // Complex mode: scan steps per argument-principle cell.
    int cell_steps = 10;
    int max_newton = 60;
    double min_separation = 1e-10;
    unsigned threads = 0;
};

using DeltaFn = std::function<cplx(cplx)>;

// Zeros of delta with Re lambda in [re_lo, re_hi] and |Im lambda| <= imag_band, sorted by Re lambda.
// imag_band == 0 scans the real axis only (delta must be real there up to a constant phase).
// count <= 0 returns every zero found.
Subspectrum find_eigenvalues(const DeltaFn& delta, double re_lo, double re_hi, double imag_band, int count,
                             const EigenSearchOptions& opts = {});

// Winding number of delta around the rectangle [x0, x1] x [y0, y1].
int winding_number(const DeltaFn& delta, double x0, double x1, double y0, double y1);

struct ExtractOptions {
    int K = 100;
    int degree = 40;
    double cond_limit = 1e10;
    OdeOptions ode;
    unsigned threads = 0;
};

struct Extraction {
    CauchyData data;
    double residual = 0.0;
    double condition = 0.0;
    int K = 0;
    int degree = 0;
};

// Least-squares fit of the Cauchy data from samples of Delta_1, Delta_0 at rho in {k, k + 1/2}.
Extraction extract_cauchy(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const ExtractOptions& opts = {});

// Delta_0, Delta_1 from Cauchy data via the integral representations.
DeltaPair deltas_from_cauchy(const CauchyData& data, int p, cplx lambda);

}  // namespace slinv
