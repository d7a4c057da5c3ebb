#pragma once

#include "slinv/types.hpp"

namespace slinv {

struct GaussRule {
    RVec nodes;
    RVec weights;
};

// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Values of the orthonormal Legendre basis phi_0..phi_L on [0, length] at points t.
// Row k holds phi_k.
Eigen::MatrixXd legendre_basis(int degree, double length, const RVec& t);

// Function on [0, length] stored as orthonormal Legendre coefficients.
struct LegendreSeries {
    double length = pi;
    CVec coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx operator()(double t) const;
    CVec sample(const RVec& t) const;
    double l2_norm() const { return coeffs.norm(); }
};

// Gauss rule on [0, length] accurate for polynomial degree `degree` times
// oscillations up to frequency `max_freq`.
GaussRule oscillatory_rule(int degree, double max_freq, double length);

}  // namespace slinv
