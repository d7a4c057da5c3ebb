#include "slinv/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace slinv {

Grid::Grid(int m, double len) : cells(m), length(len) {
    if (m < 1) throw InvalidArgument("grid needs at least one cell");
    if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("grid length must be positive");
}

RVec Grid::points() const {
    RVec t(nodes());
    for (int k = 0; k <= cells; ++k) t[k] = node(k);
    return t;
}

RVec Grid::trapezoid() const {
    RVec w = RVec::Constant(nodes(), step());
    w[0] *= 0.5;
    w[cells] *= 0.5;
    return w;
}

RVec Grid::weights() const {
    if (cells < 8) return trapezoid();
    RVec w = RVec::Constant(nodes(), step());
    const double c[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    for (int k = 0; k < 3; ++k) {
        w[k] = c[k] * step();
        w[cells - k] = c[k] * step();
    }
    return w;
}

cplx branch_sqrt(cplx lambda) {
    cplx r = std::sqrt(lambda);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() > 0.0)) r = -r;
    return r;
}

cplx sinc_rho(cplx rho, double x) {
    const cplx z = rho * x;
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return x * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
    }
    return std::sin(z) / rho;
}

double envelope(cplx rho, int k, double x) {
    return std::pow(1.0 + std::abs(rho), k) * std::exp(std::abs(rho.imag()) * x);
}

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidArgument("gauss_legendre needs n >= 1");
    GaussRule rule{RVec(n), RVec(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    rule.nodes = (rule.nodes.array() * rad + mid).matrix();
    rule.weights *= rad;
    return rule;
}

Eigen::MatrixXd legendre_basis(int degree, double length, const RVec& t) {
    Eigen::MatrixXd P(degree + 1, t.size());
    for (Eigen::Index j = 0; j < t.size(); ++j) {
        const double x = 2.0 * t[j] / length - 1.0;
        double p0 = 1.0, p1 = x;
        P(0, j) = 1.0;
        if (degree >= 1) P(1, j) = x;
        for (int k = 2; k <= degree; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            P(k, j) = p2;
            p0 = p1;
            p1 = p2;
        }
    }
    for (int k = 0; k <= degree; ++k) P.row(k) *= std::sqrt((2.0 * k + 1.0) / length);
    return P;
}

cplx LegendreSeries::operator()(double t) const {
    RVec x(1);
    x[0] = t;
    return sample(x)[0];
}

CVec LegendreSeries::sample(const RVec& t) const {
    if (coeffs.size() == 0) return CVec::Zero(t.size());
    const Eigen::MatrixXd P = legendre_basis(degree(), length, t);
    return P.transpose().cast<cplx>() * coeffs;
}

GaussRule oscillatory_rule(int degree, double max_freq, double length) {
    const int n = std::clamp(static_cast<int>(std::ceil(0.6 * max_freq * length + degree)) + 48, 32, 4000);
    return gauss_legendre(n, 0.0, length);
}

}  // namespace slinv
