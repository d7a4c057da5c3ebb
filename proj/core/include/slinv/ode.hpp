#pragma once

#include <utility>

#include "slinv/sigma.hpp"
#include "slinv/types.hpp"

namespace slinv {

enum class Direction { forward, backward };

// Samples of (y, y^[1]) with y^[1] = y' - sigma y, indexed by grid node.
struct Trajectory {
    CVec y;
    CVec yq;
    cplx lambda;
    Direction direction = Direction::forward;
};

struct OdeOptions {
    // Target value of (|rho| + |sigma|) * substep.
    double theta = 0.1;
    int min_substeps = 1;
    int max_substeps = 1 << 14;
};

// 2x2 transfer matrix mapping (y, y^[1]) at 0 to the right endpoint, and its lambda-derivative.
struct Transfer {
    cplx t00 = 1.0, t01 = 0.0, t10 = 0.0, t11 = 1.0;
    cplx d00 = 0.0, d01 = 0.0, d10 = 0.0, d11 = 0.0;
};

// Fourth-order Magnus propagation of y' = y^[1] + sigma y, (y^[1])' = -sigma y^[1] - (sigma^2 + lambda) y.
Trajectory solve_cauchy(const SigmaFunction& sigma, cplx lambda, cplx y0, cplx yq0,
                        Direction direction = Direction::forward, const OdeOptions& opts = {});

// Endpoint transfer matrix over the whole interval; derivative filled when requested.
Transfer transfer(const SigmaFunction& sigma, cplx lambda, bool with_derivative = false, const OdeOptions& opts = {});

// S: (0, 1) initial data, C: (1, 0) initial data.
std::pair<Trajectory, Trajectory> fundamental_pair(const SigmaFunction& sigma, cplx lambda, const OdeOptions& opts = {});

enum class Which { S, C };

// d/dlambda of (y, y^[1]) along S or C.
Trajectory lambda_derivative(const SigmaFunction& sigma, cplx lambda, Which which, const OdeOptions& opts = {});

// Number of substeps used per sigma cell.
int substeps(const SigmaFunction& sigma, cplx lambda, const OdeOptions& opts);

}  // namespace slinv
