#pragma once

#include <utility>

#include "slinv/reconstruction.hpp"

namespace slinv {

// Problem on [0, 2 pi]: left pair at 0, right pair at 2 pi.
struct TwoSidedProblem {
    SigmaFunction sigma_full;
    BoundaryPolyPair left;
    BoundaryPolyPair right;

    int p() const { return left.p(); }
    int r() const { return right.p(); }
    // sigma on [0, pi] and on [pi, 2 pi] (the latter re-based to start at 0).
    SigmaFunction sigma_left() const;
    SigmaFunction sigma_right() const;
};

// (psi(pi), psi^[1](pi)) for psi(2 pi) = r1, psi^[1](2 pi) = -r2; sigma_right lives on [pi, 2 pi] re-based at 0.
std::pair<cplx, cplx> psi_mid(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, cplx lambda,
                              const OdeOptions& opts = {});

// f1 = -psi(pi), f2 = psi^[1](pi).
EntirePair hl_entire_pair(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, const OdeOptions& opts = {});

struct HlSearchOptions {
    double re_lo = -50.0;
    // Polynomial boundary conditions can produce non-real eigenvalues near the origin.
    double imag_band = 5.0;
    EigenSearchOptions search;
    OdeOptions ode;
};

// First `count` eigenvalues of the two-sided problem.
Subspectrum hl_spectrum(const TwoSidedProblem& problem, int count, const HlSearchOptions& opts = {});

struct HlReport {
    int drop = 0;
    int guaranteed_drop = 0;
    bool drop_exceeds_rule = false;
};

struct HlReconstruction {
    Reconstruction rec;
    HlReport hl;
};

// Left-half Cauchy data from the spectrum with the first `drop` eigenvalues removed; uses `rows`
// eigenvalues after the drop (all remaining when rows <= 0).
HlReconstruction hl_reconstruct(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, int p,
                                const Subspectrum& spectrum, int drop, const Grid& grid, int rows = 0,
                                const ReconstructOptions& opts = {});

}  // namespace slinv
