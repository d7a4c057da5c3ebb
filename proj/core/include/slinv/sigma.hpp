#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "slinv/types.hpp"

namespace slinv {

// Antiderivative sigma of the potential, sampled on a uniform grid.
// Piecewise linear between nodes; an interior node may carry a jump, in which
// case `samples` holds the right limit and `jumps` the left limit.
class SigmaFunction {
public:
    SigmaFunction() = default;
    SigmaFunction(Grid grid, CVec samples, std::map<int, cplx> jumps = {});

    static SigmaFunction zero(int cells, double length = pi);
    static SigmaFunction constant(int cells, cplx c, double length = pi);
    static SigmaFunction sampled(int cells, double length, const std::function<cplx(double)>& fn,
                                 const std::vector<int>& jump_nodes = {});
    // c_left on [0, x_k), c_right on [x_k, length], jump placed exactly at node k.
    static SigmaFunction step(int cells, int node, cplx c_left, cplx c_right, double length = pi);

    const Grid& grid() const { return grid_; }
    int cells() const { return grid_.cells; }
    double length() const { return grid_.length; }
    const CVec& samples() const { return samples_; }
    const std::map<int, cplx>& jumps() const { return jumps_; }

    cplx left_limit(int k) const;
    cplx right_limit(int k) const { return samples_[k]; }
    // Values at the two ends of cell k.
    std::pair<cplx, cplx> cell(int k) const { return {samples_[k], left_limit(k + 1)}; }
    cplx operator()(double x) const;
    double max_abs() const;
    bool is_real(double tol = 0.0) const;

    // L2 norm integrating the piecewise-linear interpolant cell by cell (trapezoid per cell).
    double l2_norm() const;
    // Norm of the sample vector under trapezoid weights.
    double sample_norm() const;

    // s -> -sigma(length - s): potential seen by the equation in reversed orientation.
    SigmaFunction reflected() const;
    // Restriction to nodes [k0, k1], re-based to start at 0.
    SigmaFunction restrict(int k0, int k1) const;

private:
    Grid grid_;
    CVec samples_;
    std::map<int, cplx> jumps_;
};

}  // namespace slinv
