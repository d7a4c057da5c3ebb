#include "slinv/sigma.hpp"

#include <cmath>

namespace slinv {

SigmaFunction::SigmaFunction(Grid grid, CVec samples, std::map<int, cplx> jumps)
    : grid_(grid), samples_(std::move(samples)), jumps_(std::move(jumps)) {
    if (grid_.cells < 16) throw InvalidArgument("sigma grid needs M >= 16");
    if (samples_.size() != grid_.nodes())
        throw DimensionMismatch("sigma samples: expected " + std::to_string(grid_.nodes()) + " values, got " +
                                std::to_string(samples_.size()));
    if (!samples_.allFinite()) throw InvalidArgument("sigma samples must be finite");
    for (const auto& [k, v] : jumps_) {
        if (k <= 0 || k >= grid_.cells) throw InvalidArgument("sigma jump must sit at an interior node");
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidArgument("sigma jump must be finite");
    }
}

SigmaFunction SigmaFunction::zero(int cells, double length) { return constant(cells, 0.0, length); }

SigmaFunction SigmaFunction::constant(int cells, cplx c, double length) {
    Grid g(cells, length);
    return SigmaFunction(g, CVec::Constant(g.nodes(), c));
}

SigmaFunction SigmaFunction::sampled(int cells, double length, const std::function<cplx(double)>& fn,
                                     const std::vector<int>& jump_nodes) {
    Grid g(cells, length);
    CVec s(g.nodes());
    for (int k = 0; k <= cells; ++k) s[k] = fn(g.node(k));
    std::map<int, cplx> jumps;
    const double eps = 1e-9 * g.step();
    for (int k : jump_nodes) {
        s[k] = fn(g.node(k) + eps);
        jumps[k] = fn(g.node(k) - eps);
    }
    return SigmaFunction(g, s, jumps);
}

SigmaFunction SigmaFunction::step(int cells, int node, cplx c_left, cplx c_right, double length) {
    Grid g(cells, length);
    CVec s(g.nodes());
    for (int k = 0; k <= cells; ++k) s[k] = k < node ? c_left : c_right;
    std::map<int, cplx> jumps;
    if (node > 0 && node < cells) jumps[node] = c_left;
    return SigmaFunction(g, s, jumps);
}

cplx SigmaFunction::left_limit(int k) const {
    auto it = jumps_.find(k);
    return it == jumps_.end() ? samples_[k] : it->second;
}

cplx SigmaFunction::operator()(double x) const {
    const double u = x / grid_.step();
    int k = static_cast<int>(std::floor(u));
    if (k < 0) k = 0;
    if (k >= grid_.cells) k = grid_.cells - 1;
    const double f = u - k;
    const auto [a, b] = cell(k);
    return a + (b - a) * f;
}

double SigmaFunction::max_abs() const {
    double m = samples_.cwiseAbs().maxCoeff();
    for (const auto& [k, v] : jumps_) m = std::max(m, std::abs(v));
    return m;
}

bool SigmaFunction::is_real(double tol) const {
    if (samples_.imag().cwiseAbs().maxCoeff() > tol) return false;
    for (const auto& [k, v] : jumps_)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

double SigmaFunction::l2_norm() const {
    double acc = 0.0;
    for (int k = 0; k < grid_.cells; ++k) {
        const auto [a, b] = cell(k);
        acc += 0.5 * grid_.step() * (std::norm(a) + std::norm(b));
    }
    return std::sqrt(acc);
}

double SigmaFunction::sample_norm() const {
    return std::sqrt((grid_.trapezoid().array() * samples_.array().abs2()).sum());
}

SigmaFunction SigmaFunction::reflected() const {
    const int M = grid_.cells;
    CVec s(grid_.nodes());
    std::map<int, cplx> jumps;
    for (int j = 0; j <= M; ++j) s[j] = -left_limit(M - j);
    for (const auto& [k, v] : jumps_) jumps[M - k] = -samples_[k];
    return SigmaFunction(grid_, s, jumps);
}

SigmaFunction SigmaFunction::restrict(int k0, int k1) const {
    if (k0 < 0 || k1 > grid_.cells || k1 - k0 < 16) throw InvalidArgument("invalid sigma restriction");
    Grid g(k1 - k0, (k1 - k0) * grid_.step());
    CVec s = samples_.segment(k0, k1 - k0 + 1);
    s[k1 - k0] = left_limit(k1);
    std::map<int, cplx> jumps;
    for (const auto& [k, v] : jumps_)
        if (k > k0 && k < k1) jumps[k - k0] = v;
    return SigmaFunction(g, s, jumps);
}

}  // namespace slinv
